#include <doctest.h>

#include "finsheaf/poset.hpp"

using namespace finsheaf;

TEST_CASE("closure, covers and dimension") {
    Poset P = Poset::from_names({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"c", "d"}});
    CHECK(P.leq(0, 3));
    CHECK(P.covers(0, 2));
    CHECK_FALSE(P.covers(0, 3));
    CHECK(P.dimension() == 2);
    CHECK(P.hasse_edges().size() == 3);
    CHECK(P.minimal_points() == std::vector<std::size_t>{0, 1});
    CHECK(P.is_open(P.up_set(2)));
    CHECK_FALSE(P.is_open(P.down_set(2)));
}

TEST_CASE("cycles and unknown points are rejected") {
    CHECK_THROWS_AS(Poset::from_names({"a", "b"}, {{"a", "b"}, {"b", "a"}}), PosetError);
    CHECK_THROWS_AS(Poset::from_names({"a"}, {{"a", "z"}}), PosetError);
    CHECK_THROWS_AS(Poset::from_names({"a", "a"}, {}), PosetError);
}

TEST_CASE("chains are lexicographic and faces drop entries") {
    Poset P = Poset::from_names({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
    auto c1 = all_chains(P, 1);
    REQUIRE(c1.size() == 4);
    CHECK(c1[0].points == std::vector<std::size_t>{0, 2});
    CHECK(c1[3].points == std::vector<std::size_t>{1, 3});
    CHECK(all_chains(P, 2).empty());
    CHECK(chains(P, 0, P.up_set(2)).size() == 1);
    CHECK(face(ChainIndex{{0, 2, 5}}, 1).points == std::vector<std::size_t>{0, 5});
}

TEST_CASE("face poset of a triangle boundary") {
    Poset P = face_poset({{0, 1}, {1, 2}, {0, 2}});
    CHECK(P.size() == 6);
    CHECK(P.dimension() == 1);
    CHECK(order_complex(P).size() == 6);
}

TEST_CASE("covering model of the octahedron has six points") {
    // Vertices: 0:+x 1:-x 2:+y 3:-y 4:+z 5:-z.
    std::vector<std::vector<int>> tris;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) tris.push_back({x, y, z});
    Poset S = face_poset(tris);
    auto star = [&](int v) {
        OpenSet u = S.empty();
        for (std::size_t s = 0; s < S.size(); ++s) {
            const auto& nm = S.name(s);
            u[s] = nm.find(std::to_string(v)) != std::string::npos;
        }
        return u;
    };
    std::vector<OpenSet> cover{star(4), star(5), unite(star(2), unite(star(4), star(5))),
                               unite(star(3), unite(star(4), star(5))),
                               unite(star(0), unite(star(2), unite(star(3), unite(star(4), star(5))))),
                               unite(star(1), unite(star(2), unite(star(3), unite(star(4), star(5)))))};
    CoveringModel m = covering_model(S, cover);
    CHECK(m.space.size() == 6);
    CHECK(m.space.dimension() == 2);
    // Three levels of two incomparable points, each below both points of the next.
    std::size_t covers = m.space.hasse_edges().size();
    CHECK(covers == 8);
}
