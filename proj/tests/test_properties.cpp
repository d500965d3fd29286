// Invariants checked over everything the library can produce at test scale.

#include "oracle.hpp"

#include "cubesplit/constructions.hpp"
#include "cubesplit/dp.hpp"
#include "cubesplit/search.hpp"
#include "cubesplit/unitrade_space.hpp"

#include <doctest.h>

#include <algorithm>

using namespace cubesplit;

namespace {

struct Sample {
    std::string label;
    Splitting s;
    bool antipodal;
};

std::vector<Sample> produced_splittings()
{
    std::vector<Sample> out;
    const Splitting q4 = seed(SeedName::Q4_K3);
    out.push_back({"q4", q4, true});
    out.push_back({"q8a", seed(SeedName::Q8_K5_A), true});
    out.push_back({"q8b", seed(SeedName::Q8_K5_B), true});
    out.push_back({"pad q4", pad(q4), true});
    out.push_back({"pad pad q8b", pad(pad(seed(SeedName::Q8_K5_B))), true});
    out.push_back({"q4 x q4", product(q4, q4), true});
    out.push_back({"halves x q4", product(Splitting::from_faces({parse_face("0*"), parse_face("1*")}), q4), true});
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {5, 3}, {6, 4}, {8, 5}, {9, 4}, {12, 7}})
        out.push_back({"two per direction", two_per_direction(n, k), false});
    for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}, {6, 3}}) {
        SearchOptions o;
        o.max_solutions = 20;
        for (const Splitting& s : search_antipodal_splittings(n, k, o).solutions)
            out.push_back({"search", s, true});
    }
    SearchOptions o;
    o.budget_nodes = 3000;
    const auto q8 = search_antipodal_splittings(8, 5, o);
    for (std::size_t i = 0; i < q8.solutions.size(); i += 7)
        out.push_back({"search q8", q8.solutions[i], true});
    return out;
}

Isometry random_isometry(std::mt19937_64& rng, int n)
{
    Isometry g = identity_isometry(n);
    std::shuffle(g.perm.begin(), g.perm.end(), rng);
    g.shift.bits = rng() & low_mask(n);
    return g;
}

std::vector<Unitrade> w_copies(int n, int k)
{
    std::vector<Unitrade> out;
    for (Block set : colex_subsets(n, k + 1)) {
        std::vector<Block> blocks;
        for (Block rest = set; rest; rest &= rest - 1)
            blocks.push_back(set & ~(rest & (~rest + 1)));
        out.emplace_back(n, k, blocks);
    }
    return out;
}

} // namespace

TEST_SUITE("properties")
{
    TEST_CASE("splittings from every source")
    {
        std::mt19937_64 rng(1234);
        for (const Sample& sample : produced_splittings()) {
            CAPTURE(sample.label);
            const Splitting& s = sample.s;
            const auto full = verify(s);
            CHECK(full.is_exact_splitting);
            if (sample.antipodal)
                CHECK(full.is_antipodal);
            if (0 < s.k() && s.k() < s.ambient())
                CHECK(all_even(direction_counts(s)));
            if (s.ambient() <= 16) {
                const auto a = verify(s, VerifyMode::FullEnumeration);
                const auto b = verify(s, VerifyMode::DisjointPlusVolume);
                CHECK(a.is_exact_splitting == b.is_exact_splitting);
                CHECK(a.is_antipodal == b.is_antipodal);
                CHECK(a.is_covering == b.is_covering);
            }
            const Splitting moved = apply_isometry(s, random_isometry(rng, s.ambient()));
            const auto mv = verify(moved);
            CHECK(mv.is_exact_splitting == full.is_exact_splitting);
            CHECK(mv.is_antipodal == full.is_antipodal);
            if (!sample.antipodal)
                continue;
            const Unitrade u = beta(s);
            CHECK(u.size() == (std::size_t{1} << (s.k() - 1)));
            CHECK(is_unitrade(u).valid);
            for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = i + 1; j < u.size(); ++j)
                    CHECK(std::popcount(u.blocks()[i] & u.blocks()[j]) >= 2);
            if (support_elements(u).size() <= max_equivalence_support)
                CHECK(are_equivalent(beta(moved), u));
        }
    }

    TEST_CASE("unitrade space: closure and small weights")
    {
        std::mt19937_64 rng(77);
        const auto space = unitrade_space_basis(8, 5);
        auto random_element = [&] {
            BitVector v(space.columns.size());
            for (const auto& b : space.kernel.basis)
                if (rng() & 1)
                    v ^= b;
            return space.unitrade(v);
        };
        for (int trial = 0; trial < 100; ++trial) {
            const Unitrade a = random_element();
            const Unitrade b = random_element();
            CHECK(oracle::parity_ok(symmetric_difference(a, b)));
            for (int e = 1; e <= 8; ++e)
                CHECK(derived(symmetric_difference(a, b), e) == symmetric_difference(derived(a, e), derived(b, e)));
        }
        // k = 5 is odd: no odd weights, and nothing between 1 and 5.
        for (std::size_t w = 1; w <= 56; ++w)
            if (w % 2 == 1 || w < 6)
                CHECK(span_elements_of_weight(space, w, 4).empty());
    }

    TEST_CASE("weight k+1 elements are W copies")
    {
        for (auto [n, k] : std::vector<std::pair<int, int>>{{7, 4}, {8, 5}, {7, 3}}) {
            const auto space = unitrade_space_basis(n, k);
            for (std::size_t w = 1; w <= static_cast<std::size_t>(k); ++w)
                CHECK(span_elements_of_weight(space, w).empty());
            const auto elems = span_elements_of_weight(space, static_cast<std::size_t>(k) + 1);
            CHECK(elems.size() == colex_subsets(n, k + 1).size());
            for (const auto& v : elems)
                CHECK(are_equivalent(space.unitrade(v), w_unitrade(k)));
        }
    }

    TEST_CASE("weight 2k elements are sums of two W copies sharing one block")
    {
        const auto space = unitrade_space_basis(8, 5);
        const auto copies = w_copies(8, 5);
        const auto elems = span_elements_of_weight(space, 10, 4);
        CHECK(!elems.empty());
        for (const auto& v : elems) {
            const Unitrade u = space.unitrade(v);
            bool found = false;
            for (std::size_t i = 0; i < copies.size() && !found; ++i) {
                const Unitrade rest = symmetric_difference(u, copies[i]);
                if (rest.size() != 6)
                    continue;
                for (const Unitrade& w : copies)
                    if (w == rest && (support(w) & support(copies[i])) != 0)
                        found = true;
            }
            CHECK(found);
        }
    }

    TEST_CASE("weight 9 elements for k = 4 are P9")
    {
        // (8,4) has dimension 35, beyond the span walk; n = 6 and 7 are walked.
        for (int n : {6, 7}) {
            const auto report = enumerate_weight(n, 4, 9, 4);
            CHECK(report.total > 0);
            REQUIRE(report.classes.size() == 1);
            CHECK(are_equivalent(report.classes[0].representative, catalog(CatalogName::P9)));
        }
    }

    TEST_CASE("weight 16 elements have an element of degree 5 or 8")
    {
        const auto space = unitrade_space_basis(8, 5);
        const auto elems = span_elements_of_weight(space, 16, 4);
        CHECK(elems.size() == 5306);
        for (const auto& v : elems) {
            const auto deg = element_degrees(space.unitrade(v));
            CHECK(std::any_of(deg.begin() + 1, deg.end(), [](int d) { return d == 5 || d == 8; }));
        }
    }

    TEST_CASE("symmetry-broken search keeps every class found without it")
    {
        std::set<CanonicalForm> broken;
        std::set<CanonicalForm> full;
        SearchOptions o;
        o.symmetry_break = true;
        for (const Splitting& s : search_antipodal_splittings(4, 3, o).solutions)
            broken.insert(canonical_splitting(s));
        o.symmetry_break = false;
        for (const Splitting& s : search_antipodal_splittings(4, 3, o).solutions)
            full.insert(canonical_splitting(s));
        CHECK(std::includes(broken.begin(), broken.end(), full.begin(), full.end()));
        CHECK(broken.size() == full.size());

        // Same cross-check on Q5 3-splittings, which are padded Q4 ones.
        std::set<CanonicalForm> b5;
        std::set<CanonicalForm> f5;
        o.symmetry_break = true;
        for (const Splitting& s : search_antipodal_splittings(5, 3, o).solutions)
            b5.insert(canonical_splitting(s));
        o.symmetry_break = false;
        for (const Splitting& s : search_antipodal_splittings(5, 3, o).solutions)
            f5.insert(canonical_splitting(s));
        CHECK(b5 == f5);
    }
}
