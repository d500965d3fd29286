#pragma once

#include "cubesplit/unitrade.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cubesplit {

/// All k-subsets of {1..n} in co-lex order (the coordinate order of indicator
/// vectors).
std::vector<Block> colex_subsets(int n, int k);

/// Dense GF(2) vector over a fixed number of coordinates.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const noexcept { return bits_; }
    bool test(std::size_t i) const noexcept { return words_[i / 64] >> (i % 64) & 1; }
    void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    BitVector& operator^=(const BitVector& o) noexcept;
    std::size_t count() const noexcept;
    bool none() const noexcept;

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Kernel basis of a GF(2) matrix given by rows, via Gauss-Jordan elimination
/// with pivots taken in increasing column order. Basis vector j has a 1 in the
/// j-th free column and 0 in every other free column.
struct Kernel {
    std::size_t columns = 0;
    std::size_t rank = 0;
    std::vector<std::size_t> free_columns;
    std::vector<BitVector> basis;
};

Kernel gf2_kernel(std::vector<BitVector> rows, std::size_t columns);
std::size_t gf2_rank(std::vector<BitVector> rows);

/// The space V(k, n) of k-unitrades on {1..n} as the kernel of the parity map
/// from k-subsets to (k-1)-subsets.
struct UnitradeSpace {
    int n = 0;
    int k = 0;
    std::vector<Block> columns; // co-lex k-subsets
    Kernel kernel;

    std::size_t dimension() const noexcept { return kernel.basis.size(); }
    std::vector<Unitrade> basis() const;
    BitVector indicator(const Unitrade& u) const;
    Unitrade unitrade(const BitVector& v) const;
    bool contains(const Unitrade& u) const;
};

struct SpaceLimits {
    // Largest C(n,k) accepted.
    std::uint64_t max_columns = std::uint64_t{1} << 20;
    // Largest rows * columns bit matrix accepted.
    std::uint64_t max_matrix_bits = std::uint64_t{1} << 31;
};

UnitradeSpace unitrade_space_basis(int n, int k, const SpaceLimits& limits = {});

inline constexpr int max_span_dimension = 26;

/// Every span element of exactly `weight` blocks, in Gray-code walk order.
std::vector<BitVector> span_elements_of_weight(const UnitradeSpace& space, std::size_t weight, unsigned workers = 1);

struct EquivalenceClass {
    Unitrade representative; // first member met in walk order
    std::uint64_t size = 0;
    std::size_t support_size = 0;
    std::vector<std::string> names;
};

struct EquivalenceClassReport {
    int n = 0;
    int k = 0;
    std::size_t weight = 0;
    std::size_t dimension = 0;
    std::uint64_t total = 0;
    std::vector<EquivalenceClass> classes;
};

/// Groups all weight-`weight` elements of V(k, n) into equivalence classes.
/// Throws SpanTooLarge when the dimension exceeds max_span_dimension.
EquivalenceClassReport enumerate_weight(int n, int k, std::size_t weight, unsigned workers = 1);

/// Labels for a unitrade: catalog names it is equivalent to, plus "W+W" or
/// "W+R" when it is a block-disjoint union of a W_k copy with a W_k or R_k copy.
std::vector<std::string> describe_unitrade(const Unitrade& u);

/// Block-disjoint decomposition into a W_k copy and a remainder.
struct WDecomposition {
    Unitrade w;
    Unitrade rest;
};
std::vector<WDecomposition> w_decompositions(const Unitrade& u);

} // namespace cubesplit
