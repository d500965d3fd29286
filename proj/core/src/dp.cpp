#include "cubesplit/dp.hpp"

#include "cubesplit/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

namespace cubesplit {

Hypergraph::Hypergraph(int n, int k, std::vector<Block> edges) : n_(n), k_(k), edges_(std::move(edges))
{
    if (n < 1 || n > max_ambient)
        throw Error(ErrorCode::AmbientTooLarge, "vertex count " + std::to_string(n));
    if (k < 1 || k > n)
        throw Error(ErrorCode::ParameterOutOfRange, "uniformity " + std::to_string(k));
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (std::popcount(edges_[i]) != k)
            throw Error(ErrorCode::MixedBlockSize, "edge {" + format_block(edges_[i]) + "} is not a " + std::to_string(k) + "-set");
        if (edges_[i] & ~low_mask(n))
            throw Error(ErrorCode::OutOfRange, "edge {" + format_block(edges_[i]) + "} outside the vertex set");
        for (std::size_t j = 0; j < i; ++j)
            if (edges_[j] == edges_[i])
                throw Error(ErrorCode::DuplicateEdge, "edge {" + format_block(edges_[i]) + "} repeated");
    }
}

Mask normalize_phi(Block edge, Mask coloring) noexcept
{
    coloring &= edge;
    const Mask lowest = edge & (~edge + 1);
    return (coloring & lowest) ? (~coloring & edge) : coloring;
}

std::vector<FacePair> antipodal_pairs(const Splitting& s)
{
    std::map<Mask, std::vector<std::size_t>> groups;
    std::vector<Mask> order;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(s.faces()[i].fixed());
        if (inserted)
            order.push_back(s.faces()[i].fixed());
        it->second.push_back(i);
    }
    std::vector<FacePair> out;
    for (Mask dir : order) {
        const auto& idx = groups[dir];
        if (idx.size() != 2
            || classify_pair(s.faces()[idx[0]], s.faces()[idx[1]]) != PairClass::Antipodal)
            throw Error(ErrorCode::InputNotAntipodalSplitting, "a direction does not hold one antipodal pair");
        out.emplace_back(s.faces()[idx[0]], s.faces()[idx[1]]);
    }
    return out;
}

Unitrade beta(const Splitting& s)
{
    if (!verify(s).is_antipodal_splitting())
        throw Error(ErrorCode::InputNotAntipodalSplitting, "beta: input is not an antipodal splitting");
    std::vector<Block> blocks;
    for (const auto& [a, b] : antipodal_pairs(s))
        blocks.push_back(a.fixed());
    return Unitrade(s.ambient(), s.k(), std::move(blocks));
}

std::pair<Hypergraph, PhiAssignment> covering_to_hypergraph(const std::vector<FacePair>& pairs, int n)
{
    if (pairs.empty())
        throw Error(ErrorCode::ParameterOutOfRange, "no face pairs");
    const int k = pairs.front().first.codimension();
    std::vector<Block> edges;
    PhiAssignment phi;
    for (const auto& [a, b] : pairs) {
        if (a.ambient() != n || b.ambient() != n)
            throw Error(ErrorCode::DimensionMismatch, "face pair outside dimension " + std::to_string(n));
        if (classify_pair(a, b) != PairClass::Antipodal)
            throw Error(ErrorCode::NotAntipodalPair, format_face(a) + " and " + format_face(b) + " are not antipodal");
        if (a.codimension() != k)
            throw Error(ErrorCode::MixedBlockSize, "face pairs of different codimension");
        edges.push_back(a.fixed());
        phi.colorings.push_back(normalize_phi(a.fixed(), a.values()));
    }
    std::vector<Block> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw Error(ErrorCode::DuplicateEdge, "two pairs share direction {" + format_block(*dup) + "}");
    return {Hypergraph(n, k, std::move(edges)), std::move(phi)};
}

std::vector<FacePair> hypergraph_to_faces(const Hypergraph& h, const PhiAssignment& phi)
{
    if (phi.colorings.size() < h.edges().size())
        throw Error(ErrorCode::MissingPhiEntry,
            "Phi has " + std::to_string(phi.colorings.size()) + " entries for " + std::to_string(h.edges().size()) + " edges");
    std::vector<FacePair> out;
    out.reserve(h.edges().size());
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        const Face f(h.vertex_count(), h.edges()[i], phi.colorings[i]);
        out.emplace_back(f, antipode(f));
    }
    return out;
}

bool coloring_avoids(const Vertex& f, const Hypergraph& h, const PhiAssignment& phi)
{
    if (phi.colorings.size() < h.edges().size())
        throw Error(ErrorCode::MissingPhiEntry, "Phi does not cover every edge");
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        const Block e = h.edges()[i];
        const Mask diff = (f.bits ^ phi.colorings[i]) & e;
        if (diff == 0 || diff == e)
            return false;
    }
    return true;
}

namespace {

std::vector<Face> flatten(const std::vector<FacePair>& pairs)
{
    std::vector<Face> faces;
    faces.reserve(2 * pairs.size());
    for (const auto& [a, b] : pairs) {
        faces.push_back(a);
        faces.push_back(b);
    }
    return faces;
}

// Bits of the edge other than its smallest vertex, as a list of masks.
std::vector<Mask> free_phi_bits(Block edge)
{
    std::vector<Mask> bits;
    Block rest = edge & (edge - 1);
    while (rest) {
        bits.push_back(rest & (~rest + 1));
        rest &= rest - 1;
    }
    return bits;
}

Mask phi_from_counter(const std::vector<Mask>& bits, std::uint64_t counter)
{
    Mask out = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (counter >> i & 1)
            out |= bits[i];
    return out;
}

} // namespace

ColorabilityDecision decide_2dp(const Hypergraph& h, const DecideOptions& opts)
{
    const auto& edges = h.edges();
    const int per_edge = h.uniformity() - 1;
    const long long phi_bits = static_cast<long long>(per_edge) * static_cast<long long>(edges.size());
    if (phi_bits > opts.max_phi_bits && !opts.override_phi_bits)
        throw Error(ErrorCode::ParameterTooLarge,
            "Phi space 2^" + std::to_string(phi_bits) + " exceeds 2^" + std::to_string(opts.max_phi_bits));
    if (phi_bits > 62)
        throw Error(ErrorCode::ParameterTooLarge, "Phi space beyond 2^62");

    std::vector<std::vector<Mask>> bits;
    for (Block e : edges)
        bits.push_back(free_phi_bits(e));
    const std::uint64_t per_edge_count = std::uint64_t{1} << per_edge;

    ColorabilityDecision out;
    std::vector<std::uint64_t> counter(edges.size(), 0);
    PhiAssignment phi;
    phi.colorings.assign(edges.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            phi.colorings[i] = phi_from_counter(bits[i], counter[i]);
        ++out.phi_checked;
        auto pairs = hypergraph_to_faces(h, phi);
        const auto faces = flatten(pairs);
        const auto uncovered = find_uncovered(h.vertex_count(), faces, &out.work);
        if (!uncovered) {
            out.colorable = false;
            out.bad_phi = phi;
            out.covering = std::move(pairs);
            return out;
        }
        if (opts.budget != 0 && out.work > opts.budget) {
            out.work_bound_hit = true;
            return out;
        }
        std::size_t i = 0;
        for (; i < edges.size(); ++i) {
            if (++counter[i] < per_edge_count)
                break;
            counter[i] = 0;
        }
        if (i == edges.size())
            break;
    }
    out.colorable = true;
    return out;
}

ProperColoring is_proper_2colorable(const Hypergraph& h)
{
    if (h.vertex_count() > 28)
        throw Error(ErrorCode::AmbientTooLarge, "proper coloring search limited to 28 vertices");
    std::vector<Face> faces;
    for (Block e : h.edges()) {
        faces.emplace_back(h.vertex_count(), e, 0);
        faces.emplace_back(h.vertex_count(), e, e);
    }
    ProperColoring out;
    if (auto v = find_uncovered(h.vertex_count(), faces)) {
        out.colorable = true;
        out.witness = Vertex{h.vertex_count(), *v};
    }
    return out;
}

} // namespace cubesplit
