#include "cubesplit/constructions.hpp"

#include "cubesplit/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <string>

namespace cubesplit {

namespace {

constexpr std::array q4_k3_rows{
    "*&0&0&0", "*&1&1&1",
    "0&*&0&1", "1&*&1&0",
    "0&1&*&0", "1&0&*&1",
    "0&0&1&*", "1&1&0&*",
};

constexpr std::array q8_k5_a_rows{
    "00&1*&00&**", "11&0*&11&**",
    "00&*1&10&**", "11&*0&01&**",
    "0*&01&00&**", "1*&10&11&**",
    "*0&10&01&**", "*1&01&10&**",
    "01&1*&0*&0*", "10&0*&1*&1*",
    "00&*0&1*&1*", "11&*1&0*&0*",
    "0*&10&1*&0*", "1*&01&0*&1*",
    "*0&00&0*&1*", "*1&11&1*&0*",
    "01&0*&*1&0*", "10&1*&*0&1*",
    "10&*1&*0&0*", "01&*0&*1&1*",
    "1*&10&*0&0*", "0*&01&*1&1*",
    "*1&00&*0&*0", "*0&11&*1&*1",
    "*0&00&**&00", "*1&11&**&11",
    "*0&0*&*1&01", "*1&1*&*0&10",
    "*0&*1&*1&00", "*1&*0&*0&11",
    "**&00&*0&01", "**&11&*1&10",
};

constexpr std::array q8_k5_b_rows{
    "*0&10& 00&**", "*1&01& 11&**",
    "1*&10& 10&**", "0*&01& 01&**",
    "00&*0& 10&**", "11&*1& 01&**",
    "00&0*& 00&**", "11&1*& 11&**",
    "*1&00& **&10", "*0&11& **&01",
    "1*&00& **&11", "0*&11& **&00",
    "01&*0& **&00", "10&*1& **&11",
    "10&0*& **&10", "01&1*& **&01",
    "*1&10& 0*&1*", "*0&01& 1*&0*",
    "1*&00& 1*&0*", "0*&11& 0*&1*",
    "11&*0& 0*&0*", "00&*1& 1*&1*",
    "10&0*& 0*&0*", "01&1*& 1*&1*",
    "*0&10& *1&*1", "*1&01& *0&*0",
    "0*&00& *1&*1", "1*&11& *0&*0",
    "00&*0& *1&*0", "11&*1& *0&*1",
    "01&0*& *0&*1", "10&1*& *1&*0",
};

template <std::size_t N>
Splitting from_rows(const std::array<const char*, N>& rows)
{
    std::vector<Face> faces;
    faces.reserve(N);
    for (const char* row : rows)
        faces.push_back(parse_face(row));
    return Splitting::from_faces(std::move(faces));
}

void require_antipodal_splitting(const Splitting& s, const char* who)
{
    if (!verify(s).is_antipodal_splitting())
        throw Error(ErrorCode::InputNotAntipodalSplitting, std::string(who) + ": input is not an antipodal splitting");
}

// Lexicographic order of the fixed symbols read in coordinate order; the
// faces must share their fixed positions.
bool fixed_word_less(const Face& x, const Face& y)
{
    const Mask diff = (x.values() ^ y.values()) & x.fixed();
    if (diff == 0)
        return false;
    return (x.values() & diff & (~diff + 1)) == 0;
}

bool next_choice(std::vector<std::size_t>& choice, std::size_t base)
{
    for (std::size_t c = choice.size(); c-- > 0;) {
        if (++choice[c] < base)
            return true;
        choice[c] = 0;
    }
    return false;
}

// Splits faces grouped by direction; every direction must hold exactly two
// faces. Directions keep the order in which they first appear.
ParallelHalves halves_by_direction(const Splitting& s)
{
    std::map<Mask, std::vector<std::size_t>> groups;
    std::vector<Mask> order;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(s.faces()[i].fixed());
        if (inserted)
            order.push_back(s.faces()[i].fixed());
        it->second.push_back(i);
    }
    ParallelHalves h;
    for (Mask dir : order) {
        const auto& idx = groups[dir];
        if (idx.size() != 2)
            throw Error(ErrorCode::InputNotAntipodalSplitting,
                "direction holds " + std::to_string(idx.size()) + " faces, expected 2");
        const Face& x = s.faces()[idx[0]];
        const Face& y = s.faces()[idx[1]];
        const bool x_first = !fixed_word_less(y, x);
        h.b0.push_back(x_first ? x : y);
        h.b1.push_back(x_first ? y : x);
    }
    return h;
}

Face append_symbols(const Face& f, std::string_view suffix)
{
    return parse_face(format_face(f) + std::string(suffix));
}

} // namespace

std::string_view to_string(SeedName name) noexcept
{
    switch (name) {
    case SeedName::Q4_K3: return "q4_k3";
    case SeedName::Q8_K5_A: return "q8_k5_a";
    case SeedName::Q8_K5_B: return "q8_k5_b";
    }
    return "?";
}

Splitting seed(SeedName name)
{
    switch (name) {
    case SeedName::Q4_K3: return from_rows(q4_k3_rows);
    case SeedName::Q8_K5_A: return from_rows(q8_k5_a_rows);
    case SeedName::Q8_K5_B: return from_rows(q8_k5_b_rows);
    }
    throw Error(ErrorCode::ParameterOutOfRange, "unknown seed");
}

Splitting pad(const Splitting& a)
{
    require_antipodal_splitting(a, "pad");
    if (a.ambient() + 1 > max_ambient)
        throw Error(ErrorCode::AmbientTooLarge, "pad beyond 63 coordinates");
    std::vector<Face> faces;
    faces.reserve(a.size());
    for (const auto& f : a.faces())
        faces.emplace_back(a.ambient() + 1, f.fixed(), f.values());
    return Splitting(a.ambient() + 1, a.k(), std::move(faces));
}

ParallelHalves split_halves(const Splitting& b)
{
    require_antipodal_splitting(b, "split_halves");
    if (b.k() == 0)
        throw Error(ErrorCode::InputNotAntipodalSplitting, "split_halves: the whole cube has no antipodal pair");
    return halves_by_direction(b);
}

Splitting product(const Splitting& a, const Splitting& b)
{
    const int n1 = a.ambient();
    const int n2 = b.ambient();
    if (n1 * n2 > max_ambient)
        throw Error(ErrorCode::AmbientTooLarge,
            "product ambient " + std::to_string(n1 * n2) + " exceeds 63");
    require_antipodal_splitting(a, "product");
    const ParallelHalves halves = split_halves(b);
    const std::size_t half = halves.b0.size();
    const int n = n1 * n2;
    const int k = a.k() * b.k();

    std::vector<Face> out;
    for (const auto& f : a.faces()) {
        std::vector<int> coords; // fixed coordinates of f, 0-based
        for (int i = 0; i < n1; ++i)
            if (f.fixed() >> i & 1)
                coords.push_back(i);
        std::vector<std::size_t> choice(coords.size(), 0);
        do {
            Mask fixed = 0;
            Mask values = 0;
            for (std::size_t c = 0; c < coords.size(); ++c) {
                const int i = coords[c];
                const Face& sub = (f.values() >> i & 1) ? halves.b1[choice[c]] : halves.b0[choice[c]];
                fixed |= sub.fixed() << (i * n2);
                values |= sub.values() << (i * n2);
            }
            out.emplace_back(n, fixed, values);
        } while (next_choice(choice, half));
    }
    return Splitting(n, k, std::move(out));
}

Splitting power_splitting(int t, int p)
{
    if (t < 0 || p < 0 || t + p < 1)
        throw Error(ErrorCode::ParameterOutOfRange, "power_splitting needs t, p >= 0 and t + p >= 1");
    const int exponent = 2 * t + 3 * p;
    if (exponent >= 6)
        throw Error(ErrorCode::AmbientTooLarge,
            "ambient 2^" + std::to_string(exponent) + " exceeds 63");
    std::vector<SeedName> factors(static_cast<std::size_t>(t), SeedName::Q4_K3);
    factors.insert(factors.end(), static_cast<std::size_t>(p), SeedName::Q8_K5_A);
    Splitting acc = seed(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = product(acc, seed(factors[i]));
    return acc;
}

namespace {

bool two_per_direction_admissible(int n, int k) { return 0 < k && k < n && n - 2 * k + 2 >= 0; }

} // namespace

Splitting two_per_direction(int n, int k)
{
    if (!two_per_direction_admissible(n, k) || n > max_ambient)
        throw Error(ErrorCode::ParameterOutOfRange,
            "two_per_direction needs 0 < k < n and n - 2k + 2 >= 0, got n=" + std::to_string(n)
                + " k=" + std::to_string(k));
    if (n == 2 && k == 1)
        return Splitting::from_faces({parse_face("0*"), parse_face("1*")});
    if (n == 3 && k == 2)
        return Splitting::from_faces({parse_face("00*"), parse_face("01*"), parse_face("1*0"), parse_face("1*1")});
    if (n == 4 && k == 3)
        return seed(SeedName::Q4_K3);

    if (two_per_direction_admissible(n - 1, k)) {
        const Splitting prev = two_per_direction(n - 1, k);
        std::vector<Face> faces;
        for (const auto& f : prev.faces())
            faces.push_back(append_symbols(f, "*"));
        return Splitting(n, k, std::move(faces));
    }
    const Splitting prev = two_per_direction(n - 2, k - 1);
    const ParallelHalves h = halves_by_direction(prev);
    std::vector<Face> faces;
    for (const auto& f : h.b0) {
        faces.push_back(append_symbols(f, "0*"));
        faces.push_back(append_symbols(f, "1*"));
    }
    for (const auto& f : h.b1) {
        faces.push_back(append_symbols(f, "*1"));
        faces.push_back(append_symbols(f, "*0"));
    }
    return Splitting(n, k, std::move(faces));
}

} // namespace cubesplit
