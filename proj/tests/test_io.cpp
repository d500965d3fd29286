#include "cubesplit/constructions.hpp"
#include "cubesplit/error.hpp"
#include "cubesplit/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace cubesplit;

TEST_SUITE("io")
{
    TEST_CASE("face files accept the published table layout")
    {
        std::istringstream in("# seed\n"
                              "n=4 k=3\n"
                              "*&0&0&0\n"
                              "*&1&1&1   # antipode\n"
                              "\n"
                              "0&*&0&1\r\n"
                              "1&*&1&0\n");
        const Splitting s = read_faces(in);
        CHECK(s.ambient() == 4);
        CHECK(s.k() == 3);
        CHECK(s.size() == 4);
        CHECK(format_face(s.faces()[2]) == "0*01");
    }

    TEST_CASE("face file header mismatch")
    {
        std::istringstream wrong_n("n=5 k=3\n*000\n");
        CHECK_THROWS_AS(read_faces(wrong_n), Error);
        std::istringstream wrong_k("n=4 k=2\n*000\n");
        CHECK_THROWS_AS(read_faces(wrong_k), Error);
        std::istringstream bad("n=4 k=3\n*0x0\n");
        CHECK_THROWS_AS(read_faces(bad), Error);
        std::istringstream mixed("*000\n*00\n");
        CHECK_THROWS_AS(read_faces(mixed), Error);
    }

    TEST_CASE("face files round trip")
    {
        for (auto name : {SeedName::Q4_K3, SeedName::Q8_K5_A, SeedName::Q8_K5_B}) {
            const Splitting s = seed(name);
            std::ostringstream out;
            write_faces(out, s);
            std::istringstream in(out.str());
            CHECK(read_faces(in) == s);
        }
        std::ostringstream out;
        write_faces(out, seed(SeedName::Q4_K3));
        CHECK(out.str() == "n=4 k=3\n*000\n*111\n0*01\n1*10\n01*0\n10*1\n001*\n110*\n");
    }

    TEST_CASE("unitrade files")
    {
        std::istringstream in("n=6 k=5\n1 2 3 4 5\n1 2 3 4 6 # comment\n1 2 3 5 6\n1 2 4 5 6\n1 3 4 5 6\n2 3 4 5 6\n");
        const Unitrade u = read_unitrade(in);
        CHECK(u == w_unitrade(5));
        std::ostringstream out;
        write_unitrade(out, catalog(CatalogName::E16));
        std::istringstream back(out.str());
        CHECK(read_unitrade(back) == catalog(CatalogName::E16));

        std::istringstream no_header("1 2 3\n");
        CHECK_THROWS_AS(read_unitrade(no_header), Error);
        std::istringstream out_of_range("n=3 k=2\n1 4\n");
        CHECK_THROWS_AS(read_unitrade(out_of_range), Error);
        std::istringstream repeated("n=3 k=2\n1 1\n");
        CHECK_THROWS_AS(read_unitrade(repeated), Error);
    }

    TEST_CASE("hypergraph and Phi files")
    {
        std::istringstream in("n=4 k=3\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
        const Hypergraph h = read_hypergraph(in);
        CHECK(h.edges().size() == 4);
        std::istringstream dup("n=4 k=2\n1 2\n1 2\n");
        try {
            read_hypergraph(dup);
            FAIL("duplicate accepted");
        }
        catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DuplicateEdge);
        }

        std::istringstream phi_in("0: 010\n1: 101\n2: 000\n3: 111\n");
        const PhiAssignment phi = read_phi(phi_in, h);
        // Entries are stored with 0 on the smallest vertex of each edge.
        CHECK(phi.colorings[0] == make_block({2}));
        CHECK(phi.colorings[1] == make_block({2}));
        CHECK(phi.colorings[2] == 0);
        CHECK(phi.colorings[3] == 0);
        std::ostringstream out;
        write_phi(out, h, phi);
        CHECK(out.str() == "0: 010\n1: 010\n2: 000\n3: 000\n");

        std::istringstream missing("0: 010\n");
        try {
            read_phi(missing, h);
            FAIL("missing entry accepted");
        }
        catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MissingPhiEntry);
        }
        std::istringstream short_bits("0: 01\n1: 010\n2: 000\n3: 000\n");
        CHECK_THROWS_AS(read_phi(short_bits, h), Error);
    }
}
