#include "finsheaf/fixtures.hpp"

namespace finsheaf {

namespace {

SpacePtr constant_space(Poset P, i64 p) {
    auto X = RingedSpace::constant(std::move(P), make_ring(FiniteRing::integers_mod(p)));
    X.validate();
    return std::make_shared<const RingedSpace>(std::move(X));
}

SpacePtr two_point(i64 a, i64 b) {
    Poset P = Poset::from_names({"p", "q"}, {{"p", "q"}});
    auto Ra = make_ring(FiniteRing::integers_mod(a));
    auto Rb = a == b ? Ra : make_ring(FiniteRing::integers_mod(b));
    RingHom r = from_integers(Ra, Rb);
    return std::make_shared<const RingedSpace>(RingedSpace::from_hasse(std::move(P), {Ra, Rb}, {{{0, 1}, r}}));
}

}  // namespace

SpacePtr point_space(const RingPtr& R, const std::string& name) {
    auto X = RingedSpace::constant(Poset({name}, {}), R);
    return std::make_shared<const RingedSpace>(std::move(X));
}

RingedMap map_to_point(const SpacePtr& X, const SpacePtr& pt) {
    std::vector<RingHom> comp;
    for (std::size_t x = 0; x < X->size(); ++x) comp.push_back(from_integers(pt->rings[0], X->rings[x]));
    return RingedMap::to_point(X, pt, comp);
}

SpacePtr fix_pt() { return point_space(make_ring(FiniteRing::integers_mod(4))); }
SpacePtr fix_arrow() { return two_point(4, 2); }
SpacePtr fix_flat() { return two_point(6, 2); }
SpacePtr fix_flat4() { return two_point(4, 4); }

SpacePtr fix_wedge() { return constant_space(Poset::from_names({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}), 2); }

SpacePtr fix_pc() {
    return constant_space(Poset::from_names({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}}), 2);
}

S2Source s2_source() {
    // Vertices 0..5 are +x, -x, +y, -y, +z, -z; the eight faces of the octahedron.
    std::vector<std::vector<int>> tris;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5}) tris.push_back({x, y, z});
    S2Source s{face_poset(tris), {}};
    auto star = [&](std::vector<int> vs) {
        OpenSet u = s.faces.empty();
        for (std::size_t f = 0; f < s.faces.size(); ++f)
            for (int v : vs) {
                // A face contains v when its singleton lies below it.
                std::size_t sv = s.faces.index("{" + std::to_string(v) + "}");
                if (s.faces.leq(sv, f)) u[f] = true;
            }
        return u;
    };
    s.covering = {star({4}), star({5}), star({2, 4, 5}), star({3, 4, 5}), star({0, 2, 3, 4, 5}), star({1, 2, 3, 4, 5})};
    return s;
}

SpacePtr fix_s2() {
    S2Source s = s2_source();
    CoveringModel m = covering_model(s.faces, s.covering);
    return constant_space(m.space, 2);
}

SpacePtr fixture(const std::string& name) {
    if (name == "FIX-PT") return fix_pt();
    if (name == "FIX-ARROW") return fix_arrow();
    if (name == "FIX-FLAT") return fix_flat();
    if (name == "FIX-FLAT4") return fix_flat4();
    if (name == "FIX-WEDGE") return fix_wedge();
    if (name == "FIX-PC") return fix_pc();
    if (name == "FIX-S2") return fix_s2();
    throw SheafError("unknown fixture " + name);
}

std::vector<std::string> fixture_names() {
    return {"FIX-PT", "FIX-ARROW", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE", "FIX-PC", "FIX-S2"};
}

}  // namespace finsheaf
