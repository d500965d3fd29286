#pragma once

#include "cubesplit/splitting.hpp"
#include "cubesplit/unitrade.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cubesplit {

/// k-uniform hypergraph on vertices {1..n} without repeated edges.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(int n, int k, std::vector<Block> edges);

    int vertex_count() const noexcept { return n_; }
    int uniformity() const noexcept { return k_; }
    const std::vector<Block>& edges() const noexcept { return edges_; }

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<Block> edges_;
};

/// One forbidden 2-coloring per edge, kept up to the antipodal flip: the
/// stored colors (bits on the edge's vertices) give 0 to the edge's smallest
/// vertex.
struct PhiAssignment {
    std::vector<Mask> colorings;

    friend bool operator==(const PhiAssignment&, const PhiAssignment&) = default;
};

/// Brings a coloring of `edge` to its representative (0 on the smallest vertex).
Mask normalize_phi(Block edge, Mask coloring) noexcept;

using FacePair = std::pair<Face, Face>;

/// Groups the faces of a splitting into antipodal pairs, in order of first
/// appearance of each direction. Throws InputNotAntipodalSplitting if some
/// direction does not hold exactly one antipodal pair.
std::vector<FacePair> antipodal_pairs(const Splitting& s);

/// One block per antipodal pair: its fixed coordinate positions.
Unitrade beta(const Splitting& s);

std::pair<Hypergraph, PhiAssignment> covering_to_hypergraph(const std::vector<FacePair>& pairs, int n);
std::vector<FacePair> hypergraph_to_faces(const Hypergraph& h, const PhiAssignment& phi);

bool coloring_avoids(const Vertex& f, const Hypergraph& h, const PhiAssignment& phi);

struct ColorabilityDecision {
    bool colorable = false;
    bool work_bound_hit = false;
    // Set when some Phi admits no avoiding coloring.
    std::optional<PhiAssignment> bad_phi;
    std::vector<FacePair> covering;
    std::uint64_t phi_checked = 0;
    std::uint64_t work = 0;
};

struct DecideOptions {
    // Branch nodes of the covering test summed over all Phi; 0 = unlimited.
    std::uint64_t budget = 0;
    // Phi-space exponent (k-1)*|E| accepted without override.
    int max_phi_bits = 40;
    bool override_phi_bits = false;
};

/// Tries every Phi (co-lex counter, first edge fastest) and stops at the
/// first one whose forbidden faces cover Q^n. Exponential in (k-1)|E|.
ColorabilityDecision decide_2dp(const Hypergraph& h, const DecideOptions& opts = {});

struct ProperColoring {
    bool colorable = false;
    std::optional<Vertex> witness;
};

ProperColoring is_proper_2colorable(const Hypergraph& h);

} // namespace cubesplit
