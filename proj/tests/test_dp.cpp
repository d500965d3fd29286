#include "oracle.hpp"

#include "cubesplit/constructions.hpp"
#include "cubesplit/dp.hpp"
#include "cubesplit/error.hpp"
#include "cubesplit/search.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cubesplit;

namespace {

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::ParseError;
}

FacePair pair_of(const char* a, const char* b) { return {parse_face(a), parse_face(b)}; }

Hypergraph q4_hypergraph() { return covering_to_hypergraph(antipodal_pairs(seed(SeedName::Q4_K3)), 4).first; }

// Exhaustive 2-DP check straight from the definition: for every Phi over all
// 2^k colorings per edge, look for a coloring that differs from phi_e and its
// complement on every edge.
bool brute_dp_colorable(const Hypergraph& h)
{
    const int n = h.vertex_count();
    const auto& edges = h.edges();
    std::vector<Mask> phi(edges.size(), 0);
    for (;;) {
        bool avoided = false;
        for (Mask f = 0; f < (Mask{1} << n) && !avoided; ++f) {
            bool ok = true;
            for (std::size_t i = 0; i < edges.size() && ok; ++i) {
                const Mask d = (f ^ phi[i]) & edges[i];
                ok = d != 0 && d != edges[i];
            }
            avoided = ok;
        }
        if (!avoided)
            return false;
        std::size_t i = 0;
        for (; i < edges.size(); ++i) {
            phi[i] = (phi[i] - edges[i]) & edges[i];
            if (phi[i] != 0)
                break;
        }
        if (i == edges.size())
            return true;
    }
}

} // namespace

TEST_SUITE("dp")
{
    TEST_CASE("hypergraph validation")
    {
        CHECK(code_of([] { Hypergraph(4, 2, {make_block({1, 2}), make_block({1, 2})}); }) == ErrorCode::DuplicateEdge);
        CHECK(code_of([] { Hypergraph(4, 2, {make_block({2})}); }) == ErrorCode::MixedBlockSize);
        CHECK(code_of([] { Hypergraph(3, 2, {make_block({2, 4})}); }) == ErrorCode::OutOfRange);
        CHECK(Hypergraph(4, 3, {}).edges().empty());
    }

    TEST_CASE("normalized Phi")
    {
        const Block e = make_block({2, 4, 5});
        CHECK(normalize_phi(e, make_block({2})) == make_block({4, 5}));
        CHECK(normalize_phi(e, make_block({4})) == make_block({4}));
        CHECK(normalize_phi(e, 0) == 0);
    }

    TEST_CASE("beta")
    {
        const Unitrade b4 = beta(seed(SeedName::Q4_K3));
        CHECK(b4 == w_unitrade(3));
        const Unitrade ba = beta(seed(SeedName::Q8_K5_A));
        const Unitrade bb = beta(seed(SeedName::Q8_K5_B));
        CHECK(ba.size() == 16);
        CHECK(bb.size() == 16);
        CHECK(are_equivalent(ba, catalog(CatalogName::E16)));
        CHECK(are_equivalent(bb, catalog(CatalogName::F16)));
        CHECK(!are_equivalent(ba, catalog(CatalogName::F16)));
        for (const Unitrade& u : {b4, ba, bb}) {
            CHECK(is_unitrade(u).valid);
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = i + 1; j < u.size(); ++j)
                    CHECK(std::popcount(u.blocks()[i] & u.blocks()[j]) >= 2);
        }
        const Splitting not_antipodal =
            Splitting::from_faces({parse_face("00*"), parse_face("01*"), parse_face("1*0"), parse_face("1*1")});
        CHECK(code_of([&] { beta(not_antipodal); }) == ErrorCode::InputNotAntipodalSplitting);
    }

    TEST_CASE("covering and hypergraph conversions")
    {
        const auto [h, phi] = covering_to_hypergraph(antipodal_pairs(seed(SeedName::Q4_K3)), 4);
        CHECK(h.vertex_count() == 4);
        CHECK(h.uniformity() == 3);
        CHECK(h.edges().size() == 4);

        const auto [h1, phi1] = covering_to_hypergraph({pair_of("00**", "11**")}, 4);
        CHECK(h1.edges() == std::vector<Block>{make_block({1, 2})});
        CHECK(phi1.colorings == std::vector<Mask>{0});

        const Hypergraph g(4, 2, {make_block({1, 3})});
        const auto faces = hypergraph_to_faces(g, PhiAssignment{{make_block({3})}});
        REQUIRE(faces.size() == 1);
        CHECK(format_face(faces[0].first) == "0*1*");
        CHECK(format_face(faces[0].second) == "1*0*");

        // Round trips.
        const auto back = hypergraph_to_faces(h, phi);
        const auto again = covering_to_hypergraph(back, 4);
        CHECK(again.first == h);
        CHECK(again.second == phi);
        std::vector<Face> all;
        for (const auto& [a, b] : back) {
            all.push_back(a);
            all.push_back(b);
        }
        CHECK(!find_uncovered(4, all));

        CHECK(code_of([] { covering_to_hypergraph({pair_of("00**", "10**")}, 4); }) == ErrorCode::NotAntipodalPair);
        CHECK(code_of([] { covering_to_hypergraph({pair_of("00**", "11**"), pair_of("01**", "10**")}, 4); })
            == ErrorCode::DuplicateEdge);
        CHECK(code_of([&] { hypergraph_to_faces(h, PhiAssignment{{0}}); }) == ErrorCode::MissingPhiEntry);
    }

    TEST_CASE("avoiding colorings")
    {
        const Hypergraph empty(3, 2, {});
        for (Mask f = 0; f < 8; ++f)
            CHECK(coloring_avoids(Vertex{3, f}, empty, PhiAssignment{}));
        const Hypergraph g(3, 2, {make_block({1, 2})});
        const PhiAssignment phi{{make_block({2})}};
        CHECK(!coloring_avoids(Vertex{3, make_block({2, 3})}, g, phi));
        CHECK(!coloring_avoids(Vertex{3, make_block({1})}, g, phi));
        CHECK(coloring_avoids(Vertex{3, 0}, g, phi));

        const auto [h, p] = covering_to_hypergraph(antipodal_pairs(seed(SeedName::Q4_K3)), 4);
        for (Mask f = 0; f < 16; ++f)
            CHECK(!coloring_avoids(Vertex{4, f}, h, p));

        // Avoiding means lying outside every face of the pairs.
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 50; ++trial) {
            const Hypergraph r(5, 3, {make_block({1, 2, 3}), make_block({2, 4, 5}), make_block({1, 3, 5})});
            PhiAssignment q;
            for (Block e : r.edges())
                q.colorings.push_back(normalize_phi(e, rng() & e));
            const auto pairs = hypergraph_to_faces(r, q);
            for (Mask f = 0; f < 32; ++f) {
                bool outside = true;
                for (const auto& [a, b] : pairs)
                    outside = outside && !a.contains(f) && !b.contains(f);
                CHECK(coloring_avoids(Vertex{5, f}, r, q) == outside);
            }
        }
    }

    TEST_CASE("deciding 2-DP-colorability")
    {
        const Hypergraph h = q4_hypergraph();
        const auto d = decide_2dp(h);
        CHECK(!d.colorable);
        CHECK(!d.work_bound_hit);
        REQUIRE(d.bad_phi);
        CHECK(d.phi_checked <= 256);
        std::vector<Face> faces;
        for (const auto& [a, b] : d.covering) {
            faces.push_back(a);
            faces.push_back(b);
        }
        CHECK(verify(Splitting(4, 3, faces), VerifyMode::FullEnumeration).is_covering);
        for (Mask f = 0; f < 16; ++f)
            CHECK(!coloring_avoids(Vertex{4, f}, h, *d.bad_phi));
        CHECK(!brute_dp_colorable(h));

        const Hypergraph one(2, 2, {make_block({1, 2})});
        CHECK(decide_2dp(one).colorable);
        CHECK(brute_dp_colorable(one));

        const Hypergraph none(3, 3, {});
        CHECK(decide_2dp(none).colorable);
    }

    TEST_CASE("decider agrees with the definition on random small hypergraphs")
    {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 4 + static_cast<int>(rng() % 2);
            const int k = 2 + static_cast<int>(rng() % 2);
            const auto all = [&] {
                std::vector<Block> out;
                for (Block b = 1; b < (Block{1} << n); ++b)
                    if (std::popcount(b) == k)
                        out.push_back(b);
                return out;
            }();
            std::vector<Block> pick = all;
            std::shuffle(pick.begin(), pick.end(), rng);
            pick.resize(1 + rng() % std::min<std::size_t>(5, pick.size()));
            const Hypergraph h(n, k, pick);
            CAPTURE(trial);
            CHECK(decide_2dp(h).colorable == brute_dp_colorable(h));
        }
    }

    TEST_CASE("deterministic witness and budget")
    {
        const Hypergraph h = q4_hypergraph();
        CHECK(decide_2dp(h).bad_phi == decide_2dp(h).bad_phi);
        DecideOptions tiny;
        tiny.budget = 1;
        const auto d = decide_2dp(h, tiny);
        CHECK(d.work_bound_hit);
        CHECK(!d.bad_phi);

        // 21 edges of size 3 need 42 bits of Phi.
        std::vector<Block> many;
        for (Block b = 1; many.size() < 21; ++b)
            if (std::popcount(b) == 3)
                many.push_back(b);
        CHECK(code_of([&] { decide_2dp(Hypergraph(7, 3, many)); }) == ErrorCode::ParameterTooLarge);
    }

    TEST_CASE("extremal decisions match the splitting search")
    {
        // With 2^(k-1) edges, non-colorability is the same as some Phi
        // turning the edges into an antipodal splitting.
        const auto found = search_antipodal_splittings(4, 3);
        REQUIRE(!found.solutions.empty());
        for (const Splitting& s : found.solutions) {
            const Hypergraph h = covering_to_hypergraph(antipodal_pairs(s), 4).first;
            CHECK(!decide_2dp(h).colorable);
        }
        // A 4-edge 3-uniform hypergraph on 5 vertices that is not the
        // complete one on four points is colorable.
        const Hypergraph other(5, 3, {make_block({1, 2, 3}), make_block({1, 2, 4}), make_block({1, 3, 4}), make_block({2, 3, 5})});
        CHECK(decide_2dp(other).colorable);
        CHECK(brute_dp_colorable(other));
    }

    TEST_CASE("proper colorability")
    {
        const Hypergraph q4 = q4_hypergraph();
        const auto p = is_proper_2colorable(q4);
        CHECK(p.colorable);
        REQUIRE(p.witness);
        for (Block e : q4.edges()) {
            const Mask c = p.witness->bits & e;
            CHECK(c != 0);
            CHECK(c != e);
        }
        CHECK(is_proper_2colorable(Hypergraph(3, 2, {})).colorable);
        CHECK(is_proper_2colorable(Hypergraph(2, 2, {make_block({1, 2})})).colorable);
        // A triangle is not properly 2-colorable.
        CHECK(!is_proper_2colorable(Hypergraph(3, 2, {make_block({1, 2}), make_block({2, 3}), make_block({1, 3})})).colorable);
        CHECK(code_of([] { is_proper_2colorable(Hypergraph(30, 2, {})); }) == ErrorCode::AmbientTooLarge);
    }
}
