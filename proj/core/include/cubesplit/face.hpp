#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cubesplit {

using Mask = std::uint64_t;

inline constexpr int max_ambient = 63;

// Coordinate i (1-based) lives in bit i-1.
constexpr Mask coordinate_bit(int coordinate) noexcept { return Mask{1} << (coordinate - 1); }

constexpr Mask low_mask(int n) noexcept { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// A vertex of the n-cube. Also used as a 2-coloring of n hypergraph vertices
/// and as a translation vector.
struct Vertex {
    int n = 0;
    Mask bits = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

Vertex parse_vertex(std::string_view text);
std::string format_vertex(const Vertex& v);

/// An axis-aligned subcube of Q_2^n written as a word over {0,1,*}.
///
/// Stored as two masks: `fixed` marks coordinates carrying 0 or 1 and
/// `values` holds those symbols (always a submask of `fixed`).
class Face {
public:
    Face() = default;
    Face(int n, Mask fixed, Mask values);

    int ambient() const noexcept { return n_; }
    Mask fixed() const noexcept { return fixed_; }
    Mask values() const noexcept { return values_; }
    Mask free() const noexcept { return low_mask(n_) & ~fixed_; }

    int dimension() const noexcept;
    int codimension() const noexcept { return n_ - dimension(); }

    bool contains(Mask vertex) const noexcept { return ((vertex ^ values_) & fixed_) == 0; }

    // Symbol at a 1-based coordinate: '0', '1' or '*'.
    char symbol(int coordinate) const noexcept;

    friend bool operator==(const Face&, const Face&) = default;
    friend auto operator<=>(const Face& a, const Face& b) noexcept
    {
        if (auto c = a.n_ <=> b.n_; c != 0)
            return c;
        if (auto c = a.fixed_ <=> b.fixed_; c != 0)
            return c;
        return a.values_ <=> b.values_;
    }

private:
    int n_ = 0;
    Mask fixed_ = 0;
    Mask values_ = 0;
};

/// Accepts the characters 0, 1 and *; whitespace and '&' are skipped so the
/// LaTeX-style tables can be pasted as they are.
Face parse_face(std::string_view text);
std::string format_face(const Face& f);

std::optional<Face> intersect_faces(const Face& a, const Face& b);
bool faces_disjoint(const Face& a, const Face& b);

Face antipode(const Face& a) noexcept;

enum class PairClass { Disjoint, Intersecting, ParallelNonAntipodal, Antipodal, Equal };

std::string_view to_string(PairClass c) noexcept;

PairClass classify_pair(const Face& a, const Face& b);

/// Number of coordinates where one face has 0 and the other has 1. Asterisks
/// contribute nothing.
int face_distance(const Face& a, const Face& b);

} // namespace cubesplit
