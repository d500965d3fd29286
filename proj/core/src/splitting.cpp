#include "cubesplit/splitting.hpp"

#include "cubesplit/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

namespace cubesplit {

Splitting::Splitting(int n, int k, std::vector<Face> faces) : n_(n), k_(k), faces_(std::move(faces))
{
    if (n < 1 || n > max_ambient)
        throw Error(ErrorCode::AmbientTooLarge, "ambient dimension " + std::to_string(n));
    if (k < 0 || k > n)
        throw Error(ErrorCode::ParameterOutOfRange, "codimension " + std::to_string(k) + " outside [0, n]");
    for (const auto& f : faces_) {
        if (f.ambient() != n)
            throw Error(ErrorCode::DimensionMismatch,
                "face " + format_face(f) + " does not live in dimension " + std::to_string(n));
        if (f.codimension() != k)
            throw Error(ErrorCode::DimensionMismatch,
                "face " + format_face(f) + " does not have codimension " + std::to_string(k));
    }
}

Splitting Splitting::from_faces(std::vector<Face> faces)
{
    if (faces.empty())
        throw Error(ErrorCode::EmptyPattern, "no faces");
    int n = faces.front().ambient();
    int k = faces.front().codimension();
    return Splitting(n, k, std::move(faces));
}

// ---------------------------------------------------------------------------
// verification

namespace {

struct CoverageScan {
    std::optional<Mask> uncovered;
    std::optional<Mask> doubled;
};

// Counts coverage multiplicity over the vertices whose top `prefix_bits`
// coordinates equal `chunk`.
CoverageScan scan_chunk(int n, std::span<const Face> faces, int prefix_bits, Mask chunk)
{
    const int low_bits = n - prefix_bits;
    const Mask prefix_mask = low_mask(n) & ~low_mask(low_bits);
    const Mask prefix_value = chunk << low_bits;
    std::vector<std::uint8_t> counts(std::size_t{1} << low_bits, 0);

    for (const auto& f : faces) {
        if ((f.values() ^ prefix_value) & f.fixed() & prefix_mask)
            continue;
        const Mask spread = f.free() & ~prefix_mask;
        const Mask base = f.values() & ~prefix_mask;
        Mask s = 0;
        do {
            auto& c = counts[static_cast<std::size_t>(base | s)];
            if (c < 2)
                ++c;
            s = (s - spread) & spread;
        } while (s != 0);
    }

    CoverageScan out;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        if (!out.uncovered && counts[v] == 0)
            out.uncovered = prefix_value | v;
        if (!out.doubled && counts[v] >= 2)
            out.doubled = prefix_value | v;
        if (out.uncovered && out.doubled)
            break;
    }
    return out;
}

void check_parallel_pairs(const Splitting& s, VerificationReport& report, std::optional<Witness>& pair_witness)
{
    const auto& faces = s.faces();
    std::vector<std::size_t> order(faces.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
        [&](std::size_t a, std::size_t b) { return faces[a].fixed() < faces[b].fixed(); });

    report.is_antipodal = true;
    for (std::size_t lo = 0; lo < order.size();) {
        std::size_t hi = lo;
        while (hi < order.size() && faces[order[hi]].fixed() == faces[order[lo]].fixed())
            ++hi;
        for (std::size_t i = lo; i < hi && report.is_antipodal; ++i)
            for (std::size_t j = i + 1; j < hi; ++j) {
                if (classify_pair(faces[order[i]], faces[order[j]]) != PairClass::Antipodal) {
                    report.is_antipodal = false;
                    Witness w;
                    w.kind = Witness::Kind::ParallelPair;
                    w.first = std::min(order[i], order[j]);
                    w.second = std::max(order[i], order[j]);
                    pair_witness = w;
                    break;
                }
            }
        if (!report.is_antipodal)
            break;
        lo = hi;
    }
}

std::optional<Mask> find_uncovered_rec(std::span<const Face> faces, std::vector<std::size_t>& live, Mask cube_fixed, Mask cube_values,
    std::uint64_t* work)
{
    if (work)
        ++*work;
    if (live.empty())
        return cube_values;
    for (std::size_t i : live)
        if ((faces[i].fixed() & ~cube_fixed) == 0)
            return std::nullopt;
    // The first live face does not contain the subcube, so it fixes an open coordinate.
    const Mask open = faces[live.front()].fixed() & ~cube_fixed;
    const Mask branch_bit = open & (~open + 1);
    for (Mask value : {Mask{0}, branch_bit}) {
        std::vector<std::size_t> next;
        next.reserve(live.size());
        for (std::size_t i : live)
            if (!(faces[i].fixed() & branch_bit) || ((faces[i].values() & branch_bit) == value))
                next.push_back(i);
        if (auto hit = find_uncovered_rec(faces, next, cube_fixed | branch_bit, cube_values | value, work))
            return hit;
    }
    return std::nullopt;
}

} // namespace

std::optional<Mask> find_uncovered(int n, std::span<const Face> faces, std::uint64_t* work)
{
    std::vector<std::size_t> live(faces.size());
    std::iota(live.begin(), live.end(), std::size_t{0});
    (void)n;
    return find_uncovered_rec(faces, live, 0, 0, work);
}

VerificationReport verify(const Splitting& s, const VerifyOptions& opts)
{
    const int n = s.ambient();
    const auto& faces = s.faces();
    VerifyMode mode = opts.mode;
    if (mode == VerifyMode::Auto)
        mode = n <= opts.auto_full_limit ? VerifyMode::FullEnumeration : VerifyMode::DisjointPlusVolume;

    VerificationReport report;
    report.method = mode;
    std::optional<Mask> uncovered;
    std::optional<Mask> doubled;

    if (mode == VerifyMode::FullEnumeration) {
        if (n > opts.full_enumeration_ceiling)
            throw Error(ErrorCode::AmbientTooLarge,
                "full enumeration over 2^" + std::to_string(n) + " vertices exceeds the ceiling 2^"
                    + std::to_string(opts.full_enumeration_ceiling));
        // At most 2^20 counters per chunk, at least one chunk per worker.
        int prefix_bits = std::max(0, n - 20);
        while (prefix_bits < n && (std::uint64_t{1} << prefix_bits) < opts.workers)
            ++prefix_bits;
        std::vector<CoverageScan> scans(std::size_t{1} << prefix_bits);
        detail::parallel_for(scans.size(), opts.workers,
            [&](std::size_t c) { scans[c] = scan_chunk(n, faces, prefix_bits, static_cast<Mask>(c)); });
        for (const auto& scan : scans) {
            if (!uncovered && scan.uncovered)
                uncovered = scan.uncovered;
            if (!doubled && scan.doubled)
                doubled = scan.doubled;
        }
        report.is_covering = !uncovered;
        report.is_exact_splitting = !uncovered && !doubled;
    }
    else {
        // Pairwise disjointness plus total volume 2^n.
        std::vector<std::optional<Mask>> first_overlap(faces.size());
        detail::parallel_for(faces.size(), opts.workers, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < faces.size(); ++j)
                if (!faces_disjoint(faces[i], faces[j])) {
                    first_overlap[i] = faces[i].values() | faces[j].values();
                    return;
                }
        });
        for (const auto& o : first_overlap)
            if (o) {
                doubled = o;
                break;
            }
        unsigned __int128 volume = 0;
        for (const auto& f : faces)
            volume += static_cast<unsigned __int128>(1) << f.dimension();
        const unsigned __int128 cube = static_cast<unsigned __int128>(1) << n;
        if (!doubled && volume == cube) {
            report.is_covering = true;
            report.is_exact_splitting = true;
        }
        else if (!doubled && volume < cube) {
            uncovered = find_uncovered(n, faces);
            report.is_covering = false;
        }
        else {
            uncovered = find_uncovered(n, faces);
            report.is_covering = !uncovered;
        }
    }

    std::optional<Witness> pair_witness;
    check_parallel_pairs(s, report, pair_witness);

    if (uncovered) {
        report.witness = Witness{Witness::Kind::Uncovered, Vertex{n, *uncovered}, 0, 0};
    }
    else if (doubled) {
        report.witness = Witness{Witness::Kind::DoublyCovered, Vertex{n, *doubled}, 0, 0};
    }
    else if (pair_witness) {
        report.witness = pair_witness;
    }
    return report;
}

// ---------------------------------------------------------------------------
// isometries

namespace {

void validate_isometry(int n, std::span<const int> perm, const Vertex& shift)
{
    if (static_cast<int>(perm.size()) != n)
        throw Error(ErrorCode::DimensionMismatch,
            "permutation of length " + std::to_string(perm.size()) + " for dimension " + std::to_string(n));
    if (shift.n != n)
        throw Error(ErrorCode::DimensionMismatch,
            "shift of length " + std::to_string(shift.n) + " for dimension " + std::to_string(n));
    Mask seen = 0;
    for (int p : perm) {
        if (p < 1 || p > n || (seen & coordinate_bit(p)))
            throw Error(ErrorCode::NotAPermutation, "not a permutation of 1.." + std::to_string(n));
        seen |= coordinate_bit(p);
    }
}

Mask permute_mask(Mask m, std::span<const int> perm)
{
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (m & coordinate_bit(perm[i]))
            out |= Mask{1} << i;
    return out;
}

Face apply_unchecked(const Face& f, std::span<const int> perm, Mask shift)
{
    Mask fixed = permute_mask(f.fixed(), perm);
    Mask values = permute_mask(f.values(), perm) ^ (shift & fixed);
    return Face(f.ambient(), fixed, values);
}

} // namespace

Isometry identity_isometry(int n)
{
    Isometry g;
    g.perm.resize(static_cast<std::size_t>(n));
    std::iota(g.perm.begin(), g.perm.end(), 1);
    g.shift = Vertex{n, 0};
    return g;
}

Face apply_isometry(const Face& f, const Isometry& g)
{
    validate_isometry(f.ambient(), g.perm, g.shift);
    return apply_unchecked(f, g.perm, g.shift.bits);
}

Splitting apply_isometry(const Splitting& s, std::span<const int> perm, const Vertex& shift)
{
    validate_isometry(s.ambient(), perm, shift);
    std::vector<Face> out;
    out.reserve(s.size());
    for (const auto& f : s.faces())
        out.push_back(apply_unchecked(f, perm, shift.bits));
    return Splitting(s.ambient(), s.k(), std::move(out));
}

Splitting apply_isometry(const Splitting& s, const Isometry& g) { return apply_isometry(s, g.perm, g.shift); }

// ---------------------------------------------------------------------------
// direction statistics

DirectionCounts direction_counts(const Splitting& s)
{
    DirectionCounts counts;
    for (const auto& f : s.faces())
        ++counts[f.free()];
    return counts;
}

bool all_even(const DirectionCounts& counts)
{
    return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

std::vector<std::uint64_t> weight_spectrum(const Face& a, int k)
{
    const int n = a.ambient();
    if (k < 1 || k > n)
        throw Error(ErrorCode::OutOfRange, "projection length " + std::to_string(k) + " outside [1, n]");
    const Mask head = low_mask(k);
    const int ones = std::popcount(a.values() & head);
    const int stars = std::popcount(a.free() & head);
    const int tail_free = std::popcount(a.free() & ~head);

    std::vector<std::uint64_t> z(static_cast<std::size_t>(k) + 1, 0);
    std::uint64_t binom = 1; // C(stars, j)
    for (int j = 0; j <= stars; ++j) {
        z[static_cast<std::size_t>(ones + j)] = binom << tail_free;
        binom = binom * static_cast<std::uint64_t>(stars - j) / static_cast<std::uint64_t>(j + 1);
    }
    return z;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

using Encoded = std::vector<std::pair<Mask, Mask>>;

// Colour refinement on coordinates using only which coordinates faces fix.
// Translations do not change fixed masks, so the colouring is invariant under
// the whole isometry group up to relabelling.
std::vector<int> refine_coordinates(int n, const std::vector<Face>& faces)
{
    std::vector<std::vector<int>> cofix(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (const auto& f : faces)
        for (int i = 0; i < n; ++i)
            if (f.fixed() >> i & 1)
                for (int j = 0; j < n; ++j)
                    if (f.fixed() >> j & 1)
                        ++cofix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    std::vector<int> color(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        color[static_cast<std::size_t>(i)] = cofix[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];

    auto relabel = [&](const std::vector<std::vector<int>>& sigs) {
        std::vector<std::vector<int>> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(sigs.size());
        for (std::size_t i = 0; i < sigs.size(); ++i)
            out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
        return std::pair{out, sorted.size()};
    };

    {
        std::vector<std::vector<int>> sigs;
        for (int c : color)
            sigs.push_back({c});
        color = relabel(sigs).first;
    }
    std::size_t classes = 0;
    for (;;) {
        std::vector<std::vector<int>> sigs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto& sig = sigs[static_cast<std::size_t>(i)];
            std::vector<std::pair<int, int>> around;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    around.emplace_back(color[static_cast<std::size_t>(j)], cofix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            std::sort(around.begin(), around.end());
            sig.push_back(color[static_cast<std::size_t>(i)]);
            for (auto [c, m] : around) {
                sig.push_back(c);
                sig.push_back(m);
            }
        }
        auto [next, count] = relabel(sigs);
        color = std::move(next);
        if (count == classes)
            break;
        classes = count;
    }
    return color;
}

// Lexicographically least sorted encoding over all translations. Groups of
// equal fixed mask are minimised in order; free translation bits of a group
// must zero some face of that group in any minimiser, so only those choices
// are branched on.
Encoded min_over_translations(std::vector<std::pair<Mask, Mask>> faces)
{
    std::sort(faces.begin(), faces.end());
    struct State {
        Mask determined;
        Mask shift;
        bool operator==(const State&) const = default;
    };
    std::vector<State> states{{0, 0}};
    Encoded result;
    result.reserve(faces.size());

    for (std::size_t lo = 0; lo < faces.size();) {
        std::size_t hi = lo;
        const Mask group = faces[lo].first;
        while (hi < faces.size() && faces[hi].first == group)
            ++hi;

        std::vector<Mask> best;
        std::vector<State> next_states;
        std::vector<Mask> values;
        for (const auto& st : states) {
            const Mask open = group & ~st.determined;
            std::vector<Mask> choices;
            if (open == 0)
                choices.push_back(0);
            else
                for (std::size_t i = lo; i < hi; ++i)
                    choices.push_back(faces[i].second & open);
            std::sort(choices.begin(), choices.end());
            choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
            for (Mask choice : choices) {
                const Mask shift = st.shift | choice;
                values.clear();
                for (std::size_t i = lo; i < hi; ++i)
                    values.push_back((faces[i].second ^ shift) & group);
                std::sort(values.begin(), values.end());
                State candidate{st.determined | group, shift};
                if (best.empty() || values < best) {
                    best = values;
                    next_states.assign(1, candidate);
                }
                else if (values == best
                    && std::find(next_states.begin(), next_states.end(), candidate) == next_states.end()) {
                    next_states.push_back(candidate);
                }
            }
        }
        for (Mask v : best)
            result.emplace_back(group, v);
        states = std::move(next_states);
        lo = hi;
    }
    return result;
}

} // namespace

CanonicalForm canonical_splitting(const Splitting& s, const CanonicalOptions& opts)
{
    const int n = s.ambient();
    const auto& faces = s.faces();
    const std::vector<int> color = refine_coordinates(n, faces);

    // Cells of equal colour, in colour order, occupy consecutive target slots.
    std::vector<std::vector<int>> cells;
    {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
            [&](int a, int b) { return color[static_cast<std::size_t>(a)] < color[static_cast<std::size_t>(b)]; });
        for (int c : order) {
            if (cells.empty() || color[static_cast<std::size_t>(cells.back().front())] != color[static_cast<std::size_t>(c)])
                cells.emplace_back();
            cells.back().push_back(c);
        }
    }
    unsigned __int128 total = 1;
    for (const auto& cell : cells)
        for (std::size_t i = 2; i <= cell.size(); ++i) {
            total *= i;
            if (total > opts.max_permutations)
                throw Error(ErrorCode::CanonicalizationBudgetExceeded,
                    "coordinate refinement leaves more than " + std::to_string(opts.max_permutations)
                        + " orderings");
        }

    Encoded best;
    bool have_best = false;
    std::vector<int> target(static_cast<std::size_t>(n)); // source coordinate -> target bit
    std::vector<std::pair<Mask, Mask>> image(faces.size());
    for (;;) {
        int slot = 0;
        for (const auto& cell : cells)
            for (int c : cell)
                target[static_cast<std::size_t>(c)] = slot++;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            Mask fixed = 0;
            Mask values = 0;
            for (int i = 0; i < n; ++i) {
                const Mask bit = Mask{1} << target[static_cast<std::size_t>(i)];
                if (faces[f].fixed() >> i & 1)
                    fixed |= bit;
                if (faces[f].values() >> i & 1)
                    values |= bit;
            }
            image[f] = {fixed, values};
        }
        Encoded enc = min_over_translations(image);
        if (!have_best || enc < best) {
            best = std::move(enc);
            have_best = true;
        }
        // Odometer over per-cell permutations.
        std::size_t c = 0;
        for (; c < cells.size(); ++c)
            if (std::next_permutation(cells[c].begin(), cells[c].end()))
                break;
        if (c == cells.size())
            break;
    }

    CanonicalForm out;
    auto put = [&](std::uint64_t x, int bytes) {
        for (int b = 0; b < bytes; ++b)
            out.push_back(static_cast<std::uint8_t>(x >> (8 * b)));
    };
    put(static_cast<std::uint64_t>(n), 1);
    put(static_cast<std::uint64_t>(s.k()), 1);
    put(best.size(), 4);
    for (auto [fixed, values] : best) {
        put(fixed, 8);
        put(values, 8);
    }
    return out;
}

} // namespace cubesplit
