#include <doctest.h>

#include "finsheaf/classify.hpp"
#include "finsheaf/fixtures.hpp"

using namespace finsheaf;

TEST_CASE("classification of the fixtures") {
    auto arrow = classify(fix_arrow());
    CHECK_FALSE(arrow.finite_space);
    REQUIRE(arrow.flatness_witness);
    CHECK(*arrow.flatness_witness == std::make_pair(std::size_t{0}, std::size_t{1}));

    auto pc = classify(fix_pc());
    CHECK(pc.finite_space);
    CHECK_FALSE(pc.semi_separated);
    CHECK(pc.semi_separated_witness == "(b) fails at p=a, q=b, p'=c");
    // U_a is a V with disjoint tops: O(U_c) (x) O_d = F2 but O(U_d cap U_c) = 0
    CHECK_FALSE(pc.schematic);
    CHECK(pc.schematic_witness == "U_a: (b) fails at p=a, q=c, p'=d");

    for (const auto& name : {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"}) {
        auto c = classify(fixture(name));
        CHECK_MESSAGE(c.semi_separated, name);
        CHECK(c.schematic);
    }
}

TEST_CASE("classification does not depend on the thread schedule") {
    for (int t = 0; t < 5; ++t) {
        auto c = classify(fix_s2());
        CHECK(c.semi_separated_witness == classify(fix_s2()).semi_separated_witness);
    }
}

TEST_CASE("schematic morphisms") {
    CHECK(is_schematic_morphism(RingedMap::identity(fix_wedge())));
    CHECK_FALSE(is_schematic_morphism(RingedMap::identity(fix_pc())));
    for (const auto& name : {"FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        SpacePtr pt = point_space(X->rings[0]);
        CHECK_MESSAGE(is_schematic_morphism(map_to_point(X, pt)), name);
    }
    SpacePtr A = fix_arrow();
    CHECK_THROWS_AS(is_schematic_morphism(RingedMap::identity(A)), SheafError);
}
