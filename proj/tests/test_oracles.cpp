#include <doctest.h>

#include "finsheaf/suites.hpp"

using namespace finsheaf;

TEST_CASE("simplicial oracle on known complexes") {
    CHECK(simplicial_cohomology_f2({{0, 1}, {1, 2}, {0, 2}}) == std::vector<std::size_t>{1, 1});
    CHECK(simplicial_cohomology_f2({{0, 1, 2}}) == std::vector<std::size_t>{1, 0, 0});
    CHECK(simplicial_cohomology_f2({{0}, {1}}) == std::vector<std::size_t>{2});
    // six-vertex projective plane: Z/2 torsion in H^2 shows up over F2
    CHECK(simplicial_cohomology_f2({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                                    {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}}) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("enumeration flatness oracle") {
    RingPtr Z4 = make_ring(FiniteRing::integers_mod(4));
    CHECK(flat_by_enumeration(FiniteModule::free(Z4, 2)));
    CHECK_FALSE(flat_by_enumeration(from_presentation(Z4, 1, {{Vec{2}}})));
    RingPtr Z6 = make_ring(FiniteRing::integers_mod(6));
    CHECK(flat_by_enumeration(from_presentation(Z6, 1, {{Vec{2}}})));
    // F2[x, y]/(x, y)^2 has the non-principal ideal (x, y)
    FiniteRing R;
    R.add = AbGroup{{2, 2, 2}};
    R.table = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}, {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}};
    R.one = {1, 0, 0};
    R.validate();
    CHECK_THROWS_AS(flat_by_enumeration(FiniteModule::free(make_ring(R), 1)), std::invalid_argument);
}

TEST_CASE("suites respect counts and seeds") {
    SuiteResult a = run_suite("resolutions", 7, 5), b = run_suite("resolutions", 7, 5);
    CHECK(a.pass);
    CHECK(a.summary == b.summary);
    CHECK(a.summary.find("5 standard") == 0);
    CHECK_THROWS(run_suite("nonsense", 1));
}
