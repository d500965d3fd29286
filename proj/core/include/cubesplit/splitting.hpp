#pragma once

#include "cubesplit/face.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace cubesplit {

/// A list of faces of common ambient dimension and codimension. Duplicates are
/// allowed; verify() reports them as doubly covered.
class Splitting {
public:
    Splitting() = default;
    Splitting(int n, int k, std::vector<Face> faces);

    /// Infers k from the first face; an empty list is rejected.
    static Splitting from_faces(std::vector<Face> faces);

    int ambient() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    std::size_t size() const noexcept { return faces_.size(); }

    friend bool operator==(const Splitting&, const Splitting&) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Face> faces_;
};

enum class VerifyMode { Auto, FullEnumeration, DisjointPlusVolume };

struct VerifyOptions {
    VerifyMode mode = VerifyMode::Auto;
    int full_enumeration_ceiling = 28;
    int auto_full_limit = 24;
    unsigned workers = 1;
};

struct Witness {
    enum class Kind { Uncovered, DoublyCovered, ParallelPair };
    Kind kind = Kind::Uncovered;
    Vertex vertex{};
    // Indices into Splitting::faces(); meaningful for ParallelPair.
    std::size_t first = 0;
    std::size_t second = 0;
};

struct VerificationReport {
    bool is_covering = false;
    bool is_exact_splitting = false;
    bool is_antipodal = false;
    std::optional<Witness> witness;
    VerifyMode method = VerifyMode::FullEnumeration;

    bool is_antipodal_splitting() const noexcept { return is_exact_splitting && is_antipodal; }
};

VerificationReport verify(const Splitting& s, const VerifyOptions& opts = {});

inline VerificationReport verify(const Splitting& s, VerifyMode mode)
{
    VerifyOptions opts;
    opts.mode = mode;
    return verify(s, opts);
}

/// Some vertex of Q_2^n outside every face, or nothing if the faces cover the
/// cube. Branches on fixed coordinates instead of walking all 2^n vertices.
/// `work`, when given, is incremented once per branch node.
std::optional<Mask> find_uncovered(int n, std::span<const Face> faces, std::uint64_t* work = nullptr);

/// Coordinate permutation plus translation. `perm[i-1]` is the source
/// coordinate placed at coordinate i (both 1-based).
struct Isometry {
    std::vector<int> perm;
    Vertex shift;
};

Isometry identity_isometry(int n);
Face apply_isometry(const Face& f, const Isometry& g);
Splitting apply_isometry(const Splitting& s, const Isometry& g);
Splitting apply_isometry(const Splitting& s, std::span<const int> perm, const Vertex& shift);

using DirectionCounts = std::map<Mask, int>;

DirectionCounts direction_counts(const Splitting& s);
bool all_even(const DirectionCounts& counts);

/// z_i = number of vertices of `a` whose first k coordinates have weight i.
std::vector<std::uint64_t> weight_spectrum(const Face& a, int k);

using CanonicalForm = std::vector<std::uint8_t>;

struct CanonicalOptions {
    // Upper bound on coordinate orderings tried after refinement.
    std::uint64_t max_permutations = 4'000'000;
};

/// Equal for two splittings iff one is the image of the other under an
/// isometry. Treats the face list as a multiset.
CanonicalForm canonical_splitting(const Splitting& s, const CanonicalOptions& opts = {});

} // namespace cubesplit
