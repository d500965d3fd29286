#pragma once

#include "cubesplit/splitting.hpp"
#include "cubesplit/unitrade.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubesplit {

constexpr int max_search_ambient = 10;

struct SearchOptions {
    // Put the pair {0..0 on coordinates 1..k, its antipode} first. Every
    // splitting has a pair through the zero vertex and a coordinate
    // permutation moves its direction to {1..k}, so nothing is lost up to
    // isometry.
    bool symmetry_break = true;
    std::optional<std::size_t> max_solutions;
    std::uint64_t budget_nodes = 0;   // 0 = unlimited
    double budget_seconds = 0.0;      // 0 = unlimited
    bool dedupe = false;              // keep one solution per canonical form
    unsigned workers = 1;
};

struct SearchOutcome {
    std::vector<Splitting> solutions;
    bool exhausted = false;
    std::uint64_t nodes_explored = 0;
};

/// Exact cover of Q^n by 2^(k-1) antipodal pairs of codimension-k faces,
/// at most one pair per direction.
SearchOutcome search_antipodal_splittings(int n, int k, const SearchOptions& opts = {});

struct Q8Classification {
    SearchOutcome outcome;
    std::size_t class_e = 0;
    std::size_t class_f = 0;
    std::size_t other = 0;
    std::vector<Unitrade> other_examples;
};

/// Searches antipodal 5-splittings of Q^8 and sorts them by the class of
/// their unitrade image. Symmetry breaking is forced on.
Q8Classification classify_q8_splittings(SearchOptions opts = {});

struct CycleReport {
    // Each cycle as its vertex sequence, starting at its smallest vertex.
    std::vector<std::vector<Mask>> cycles;
    int max_disjoint_family = 0;
    std::vector<std::size_t> disjoint_example;
};

/// Antipodal cycles of length 10 in Q^5 minus {00000, 11111}: every
/// direction is used by exactly two edges and these two are antipodal.
CycleReport antipodal_cycle_analysis_q5();

/// Cycle given as vertex words, e.g. "10000".
bool report_contains_cycle(const CycleReport& report, const std::vector<std::string>& cycle);

} // namespace cubesplit
