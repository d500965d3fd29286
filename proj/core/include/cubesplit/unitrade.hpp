#pragma once

#include "cubesplit/face.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubesplit {

/// A subset of {1..63}; element e is bit e-1. Numeric order on blocks of equal
/// size is co-lexicographic order.
using Block = Mask;

Block make_block(std::initializer_list<int> elements);
std::vector<int> block_elements(Block b);
std::string format_block(Block b);

/// A set of k-subsets of {1..ground_n}, kept sorted in co-lex order.
class Unitrade {
public:
    Unitrade() = default;
    /// Rejects blocks of the wrong size, outside the ground set, or repeated.
    Unitrade(int ground_n, int k, std::vector<Block> blocks);

    int ground() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    bool empty() const noexcept { return blocks_.empty(); }
    bool contains(Block b) const;

    friend bool operator==(const Unitrade&, const Unitrade&) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Block> blocks_;
};

struct UnitradeCheck {
    bool valid = false;
    // Every covered (k-1)-subset lies in exactly two blocks.
    bool simple = false;
    // Smallest (co-lex) (k-1)-subset covered an odd number of times.
    std::optional<Block> violating;
};

UnitradeCheck is_unitrade(const Unitrade& u);

/// Symmetric difference of the block sets over the larger ground set.
Unitrade symmetric_difference(const Unitrade& a, const Unitrade& b);

/// Blocks containing `a`, with `a` removed.
Unitrade derived(const Unitrade& u, int a);

Mask support(const Unitrade& u);
std::vector<int> support_elements(const Unitrade& u);

/// Number of blocks containing each element 1..ground (index 0 unused).
std::vector<int> element_degrees(const Unitrade& u);

/// Image of `u` under element relabelling; `mapping[e]` is the image of e
/// (index 0 unused). The ground set grows to fit the largest image.
Unitrade relabel(const Unitrade& u, const std::vector<int>& mapping);

using Injection = std::vector<std::pair<int, int>>;

inline constexpr int max_equivalence_support = 12;

/// An injection from supp(a) carrying the blocks of `a` onto those of `b`,
/// found by backtracking with degree and pair-degree pruning.
std::optional<Injection> are_equivalent(const Unitrade& a, const Unitrade& b);

/// Lexicographically least relabelling of the support onto {1..s}, prefixed
/// by k and s. Equal exactly for equivalent unitrades.
std::vector<std::uint64_t> canonical_unitrade(const Unitrade& u);

/// Catalog of named unitrades.
enum class CatalogName { W, R5, P9, S12, E16, F16, H1, H2, H3 };

std::string_view to_string(CatalogName name) noexcept;
std::optional<CatalogName> parse_catalog_name(std::string_view text);

/// All k-subsets of {1..k+1}.
Unitrade w_unitrade(int k);
/// W_k on {1..k+1} xor W_k on {1..k, k+2}: the weight-2k unitrade.
Unitrade r_unitrade(int k);
/// Verbatim block lists; `k` only matters for CatalogName::W.
Unitrade catalog(CatalogName name, int k = 5);

} // namespace cubesplit
