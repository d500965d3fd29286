#include "oracle.hpp"

#include "cubesplit/constructions.hpp"
#include "cubesplit/dp.hpp"
#include "cubesplit/error.hpp"
#include "cubesplit/search.hpp"

#include <doctest.h>

#include <set>

using namespace cubesplit;

namespace {

SearchOptions with(bool sym, unsigned workers = 1)
{
    SearchOptions o;
    o.symmetry_break = sym;
    o.workers = workers;
    return o;
}

void check_solution(const Splitting& s, int n, int k)
{
    CHECK(s.ambient() == n);
    CHECK(s.k() == k);
    CHECK(s.size() == (std::size_t{1} << k));
    CHECK(verify(s, VerifyMode::FullEnumeration).is_antipodal_splitting());
    CHECK(oracle::is_exact(s));
    for (const auto& [dir, c] : direction_counts(s))
        CHECK(c == 2);
}

} // namespace

TEST_SUITE("search")
{
    TEST_CASE("Q4 3-splittings form one class")
    {
        const auto key = canonical_splitting(seed(SeedName::Q4_K3));
        for (bool sym : {true, false}) {
            const auto r = search_antipodal_splittings(4, 3, with(sym));
            CHECK(r.exhausted);
            REQUIRE(!r.solutions.empty());
            std::set<CanonicalForm> classes;
            for (const Splitting& s : r.solutions) {
                check_solution(s, 4, 3);
                classes.insert(canonical_splitting(s));
            }
            CHECK(classes == std::set<CanonicalForm>{key});
        }
        // Without symmetry breaking every splitting through the zero vertex
        // appears; there are more of them.
        CHECK(search_antipodal_splittings(4, 3, with(false)).solutions.size()
            > search_antipodal_splittings(4, 3, with(true)).solutions.size());
        SearchOptions dd = with(false);
        dd.dedupe = true;
        CHECK(search_antipodal_splittings(4, 3, dd).solutions.size() == 1);
    }

    TEST_CASE("unbroken search finds every antipodal 3-splitting of Q4")
    {
        // Count by brute force: choose one representative per direction
        // among the 4 directions and test the union.
        const auto r = search_antipodal_splittings(4, 3, with(false));
        std::size_t brute = 0;
        const std::vector<Block> dirs = {0b0111, 0b1011, 0b1101, 0b1110};
        std::vector<std::vector<Mask>> reps;
        for (Block dir : dirs) {
            // Representatives carry 0 on the smallest fixed coordinate.
            const Mask rest = dir & (dir - 1);
            std::vector<Mask> r;
            for (Mask v = 0;; v = (v - rest) & rest) {
                r.push_back(v);
                if (v == rest)
                    break;
            }
            reps.push_back(r);
        }
        for (int choice = 0; choice < 256; ++choice) {
            std::vector<Face> faces;
            for (std::size_t d = 0; d < 4; ++d) {
                faces.emplace_back(4, dirs[d], reps[d][static_cast<std::size_t>(choice >> (2 * d) & 3)]);
                faces.push_back(antipode(faces.back()));
            }
            brute += oracle::is_exact(Splitting(4, 3, faces));
        }
        // Only splittings that use every direction exist here (4 pairs, 4 directions).
        CHECK(r.solutions.size() == brute);
    }

    TEST_CASE("nonexistence")
    {
        for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 4}, {6, 5}, {7, 5}, {3, 2}, {5, 4}}) {
            CAPTURE(n);
            CAPTURE(k);
            const auto r = search_antipodal_splittings(n, k, with(true));
            CHECK(r.exhausted);
            CHECK(r.solutions.empty());
        }
        for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {5, 4}}) {
            const auto r = search_antipodal_splittings(n, k, with(false));
            CHECK(r.exhausted);
            CHECK(r.solutions.empty());
        }
    }

    TEST_CASE("existence for odd k")
    {
        for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {5, 3}, {6, 3}, {7, 3}}) {
            SearchOptions o = with(true);
            o.max_solutions = 3;
            const auto r = search_antipodal_splittings(n, k, o);
            REQUIRE(!r.solutions.empty());
            for (const Splitting& s : r.solutions)
                check_solution(s, n, k);
        }
    }

    TEST_CASE("errors")
    {
        CHECK_THROWS_AS(search_antipodal_splittings(11, 5), Error);
        CHECK_THROWS_AS(search_antipodal_splittings(5, 0), Error);
        CHECK_THROWS_AS(search_antipodal_splittings(5, 6), Error);
    }

    TEST_CASE("results do not depend on the worker count")
    {
        for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 3}, {6, 3}, {7, 5}}) {
            for (bool sym : {true, false}) {
                if (n == 7 && !sym)
                    continue;
                const auto base = search_antipodal_splittings(n, k, with(sym, 1));
                for (unsigned w : {2u, 7u}) {
                    const auto r = search_antipodal_splittings(n, k, with(sym, w));
                    CHECK(r.nodes_explored == base.nodes_explored);
                    CHECK(r.exhausted == base.exhausted);
                    CHECK(r.solutions == base.solutions);
                }
            }
        }
    }

    TEST_CASE("budgets replay the sequential order")
    {
        for (std::uint64_t budget : {1ull, 2ull, 5ull, 40ull, 1000ull}) {
            for (std::size_t max : {0ul, 1ul, 4ul}) {
                std::vector<SearchOutcome> runs;
                for (unsigned w : {1u, 3u}) {
                    SearchOptions o = with(true, w);
                    o.budget_nodes = budget;
                    if (max)
                        o.max_solutions = max;
                    runs.push_back(search_antipodal_splittings(6, 3, o));
                }
                CAPTURE(budget);
                CAPTURE(max);
                CHECK(runs[0].nodes_explored == runs[1].nodes_explored);
                CHECK(runs[0].solutions == runs[1].solutions);
                CHECK(runs[0].exhausted == runs[1].exhausted);
                CHECK(runs[0].nodes_explored <= budget);
            }
        }
        SearchOptions o;
        o.budget_nodes = 1;
        const auto r = search_antipodal_splittings(7, 5, o);
        CHECK(!r.exhausted);
        CHECK(r.nodes_explored == 1);
    }

    TEST_CASE("Q8 classification under a tiny budget")
    {
        SearchOptions o;
        o.budget_nodes = 1;
        const auto c = classify_q8_splittings(o);
        CHECK(!c.outcome.exhausted);
        CHECK(c.outcome.solutions.empty());
        CHECK(c.class_e + c.class_f + c.other == 0);
    }

    TEST_CASE("Q8 classification within a small budget")
    {
        SearchOptions o;
        o.budget_nodes = 20000;
        o.workers = 4;
        const auto c = classify_q8_splittings(o);
        CHECK(c.other == 0);
        CHECK(c.class_e + c.class_f == c.outcome.solutions.size());
        CHECK(c.class_e > 0);
        CHECK(c.class_f > 0);
        for (std::size_t i = 0; i < c.outcome.solutions.size(); i += 97)
            check_solution(c.outcome.solutions[i], 8, 5);
    }

    TEST_CASE("antipodal cycles of Q5")
    {
        const auto report = antipodal_cycle_analysis_q5();
        CHECK(!report.cycles.empty());
        CHECK(report.max_disjoint_family == 2);
        CHECK(report_contains_cycle(report,
            {"10000", "11000", "11010", "01010", "01011", "01111", "00111", "00101", "10101", "10100"}));
        std::set<std::set<std::pair<Mask, Mask>>> edge_sets;
        for (const auto& c : report.cycles) {
            CHECK(c.size() == 10);
            std::set<Mask> verts(c.begin(), c.end());
            CHECK(verts.size() == 10);
            CHECK(!verts.count(0));
            CHECK(!verts.count(31));
            std::set<std::pair<Mask, Mask>> edges;
            std::map<int, std::vector<std::pair<Mask, Mask>>> by_dir;
            for (std::size_t i = 0; i < c.size(); ++i) {
                const Mask a = c[i];
                const Mask b = c[(i + 1) % c.size()];
                REQUIRE(std::popcount(a ^ b) == 1);
                const auto e = std::minmax(a, b);
                edges.insert(e);
                by_dir[std::countr_zero(a ^ b)].push_back(e);
            }
            CHECK(by_dir.size() == 5);
            for (const auto& [dir, es] : by_dir) {
                REQUIRE(es.size() == 2);
                CHECK((es[0].first ^ 31) == es[1].second);
            }
            CHECK(edge_sets.insert(edges).second);
        }
        // The reported family is really disjoint.
        REQUIRE(report.disjoint_example.size() == 2);
        std::set<Mask> seen;
        for (std::size_t idx : report.disjoint_example)
            for (Mask v : report.cycles[idx])
                CHECK(seen.insert(v).second);
    }
}
