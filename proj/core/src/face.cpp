#include "cubesplit/face.hpp"

#include "cubesplit/error.hpp"

#include <bit>

namespace cubesplit {

namespace {

bool is_separator(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '&' || c == '\r' || c == '\n' || c == ',';
}

void check_same_ambient(const Face& a, const Face& b)
{
    if (a.ambient() != b.ambient())
        throw Error(ErrorCode::DimensionMismatch,
            "faces of ambient " + std::to_string(a.ambient()) + " and " + std::to_string(b.ambient()));
}

} // namespace

Vertex parse_vertex(std::string_view text)
{
    Vertex v;
    for (char c : text) {
        if (is_separator(c))
            continue;
        if (c != '0' && c != '1')
            throw Error(ErrorCode::InvalidSymbol, std::string("vertex symbol '") + c + "'");
        if (v.n == max_ambient)
            throw Error(ErrorCode::AmbientTooLarge, "vertex longer than 63 coordinates");
        if (c == '1')
            v.bits |= Mask{1} << v.n;
        ++v.n;
    }
    if (v.n == 0)
        throw Error(ErrorCode::EmptyPattern, "empty vertex");
    return v;
}

std::string format_vertex(const Vertex& v)
{
    std::string out(static_cast<std::size_t>(v.n), '0');
    for (int i = 0; i < v.n; ++i)
        if ((v.bits >> i) & 1)
            out[static_cast<std::size_t>(i)] = '1';
    return out;
}

Face::Face(int n, Mask fixed, Mask values) : n_(n), fixed_(fixed), values_(values & fixed)
{
    if (n < 1 || n > max_ambient)
        throw Error(ErrorCode::AmbientTooLarge, "ambient dimension " + std::to_string(n) + " outside [1, 63]");
    if ((fixed & ~low_mask(n)) != 0)
        throw Error(ErrorCode::DimensionMismatch, "fixed mask exceeds ambient dimension");
}

int Face::dimension() const noexcept { return n_ - std::popcount(fixed_); }

char Face::symbol(int coordinate) const noexcept
{
    Mask bit = coordinate_bit(coordinate);
    if (!(fixed_ & bit))
        return '*';
    return (values_ & bit) ? '1' : '0';
}

Face parse_face(std::string_view text)
{
    int n = 0;
    Mask fixed = 0;
    Mask values = 0;
    for (char c : text) {
        if (is_separator(c))
            continue;
        if (c != '0' && c != '1' && c != '*')
            throw Error(ErrorCode::InvalidSymbol, std::string("face symbol '") + c + "'");
        if (n == max_ambient)
            throw Error(ErrorCode::AmbientTooLarge, "face longer than 63 coordinates");
        Mask bit = Mask{1} << n;
        if (c != '*')
            fixed |= bit;
        if (c == '1')
            values |= bit;
        ++n;
    }
    if (n == 0)
        throw Error(ErrorCode::EmptyPattern, "empty face pattern");
    return Face(n, fixed, values);
}

std::string format_face(const Face& f)
{
    std::string out;
    out.reserve(static_cast<std::size_t>(f.ambient()));
    for (int i = 1; i <= f.ambient(); ++i)
        out.push_back(f.symbol(i));
    return out;
}

std::optional<Face> intersect_faces(const Face& a, const Face& b)
{
    check_same_ambient(a, b);
    Mask common = a.fixed() & b.fixed();
    if ((a.values() ^ b.values()) & common)
        return std::nullopt;
    return Face(a.ambient(), a.fixed() | b.fixed(), a.values() | b.values());
}

bool faces_disjoint(const Face& a, const Face& b)
{
    return ((a.values() ^ b.values()) & a.fixed() & b.fixed()) != 0;
}

Face antipode(const Face& a) noexcept { return Face(a.ambient(), a.fixed(), ~a.values()); }

std::string_view to_string(PairClass c) noexcept
{
    switch (c) {
    case PairClass::Disjoint: return "DISJOINT";
    case PairClass::Intersecting: return "INTERSECTING";
    case PairClass::ParallelNonAntipodal: return "PARALLEL_NON_ANTIPODAL";
    case PairClass::Antipodal: return "ANTIPODAL";
    case PairClass::Equal: return "EQUAL";
    }
    return "?";
}

PairClass classify_pair(const Face& a, const Face& b)
{
    check_same_ambient(a, b);
    if (a == b)
        return PairClass::Equal;
    if (a.fixed() == b.fixed()) {
        if (b.values() == (~a.values() & a.fixed()))
            return PairClass::Antipodal;
        return PairClass::ParallelNonAntipodal;
    }
    return faces_disjoint(a, b) ? PairClass::Disjoint : PairClass::Intersecting;
}

int face_distance(const Face& a, const Face& b)
{
    check_same_ambient(a, b);
    return std::popcount((a.values() ^ b.values()) & a.fixed() & b.fixed());
}

} // namespace cubesplit
