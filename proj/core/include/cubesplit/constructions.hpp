#pragma once

#include "cubesplit/splitting.hpp"

#include <string_view>
#include <vector>

namespace cubesplit {

enum class SeedName { Q4_K3, Q8_K5_A, Q8_K5_B };

std::string_view to_string(SeedName name) noexcept;

/// The three hand-built antipodal splittings: a 3-splitting of Q^4 and two
/// 5-splittings of Q^8, in their published row order (each face is followed
/// by its antipode).
Splitting seed(SeedName name);

/// Appends a free coordinate to every face.
Splitting pad(const Splitting& a);

/// Two halves of a splitting, neither containing two parallel faces.
struct ParallelHalves {
    std::vector<Face> b0;
    std::vector<Face> b1;
};

/// Halves of an antipodal splitting. In each antipodal pair the face whose
/// first fixed symbol is 0 goes to b0; pairs keep their input order.
ParallelHalves split_halves(const Splitting& b);

/// Substitutes faces of `b` into the coordinates of faces of `a`: a fixed 0
/// becomes any face of b0, a fixed 1 any face of b1, and * a block of
/// asterisks. All combinations are emitted, ordered by face of `a` and then
/// by the per-coordinate choice (first fixed coordinate most significant).
Splitting product(const Splitting& a, const Splitting& b);

/// Left-associated product of t copies of Q4_K3 followed by p copies of Q8_K5_A.
Splitting power_splitting(int t, int p);

/// A k-splitting of Q^n (n - 2k + 2 >= 0, 0 < k < n) with at most two faces in
/// every direction, built from the base cases (2,1), (3,2), (4,3) by the
/// doubling step (n,k) -> (n+2,k+1) and the padding step (n,k) -> (n+1,k).
/// Padding is preferred whenever its predecessor is admissible.
Splitting two_per_direction(int n, int k);

} // namespace cubesplit
