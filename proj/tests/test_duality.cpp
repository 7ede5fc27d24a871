#include <doctest.h>

#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

namespace {

RingedMap to_point(const SpacePtr& X) { return map_to_point(X, point_space(X->rings[0])); }

}  // namespace

TEST_CASE("f_nabla of a map to a point") {
    SpacePtr W = fix_wedge();
    RingedMap f = to_point(W);
    SheafComplex N = SheafComplex::single(structure_sheaf(f.target));
    DualityData D = f_nabla(f, N);
    CHECK_NOTHROW(D.cx().validate());
    const CoskySum& t0 = D.term(0, 0);
    const CoskySum& t1 = D.term(1, 0);
    CHECK(t0.size() == 3);
    CHECK(t1.size() == 2);
    for (const auto& m : t0.mods) CHECK(m.group.order() == 2);
    for (const auto& m : t1.mods) CHECK(m.group.order() == 2);

    SpacePtr pt = fix_pt();
    SheafPtr A = random_sheaf(pt, *std::make_unique<Rng>(51));
    DualityData I = f_nabla(RingedMap::identity(pt), SheafComplex::single(A));
    CHECK(I.cx().at(0)->total_order() == A->total_order());
}

TEST_CASE("duality for a map to a point matches cohomology") {
    for (const auto& name : {"FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        RingedMap f = to_point(X);
        SheafComplex M = SheafComplex::single(structure_sheaf(X));
        SheafComplex N = SheafComplex::single(structure_sheaf(f.target));
        DualityReport r = duality_check(f, M, N, -2, 2);
        CHECK_MESSAGE(r.pass, r.message);
        // over a field Hom(R Gamma M, F2[i]) is dual to H^{-i}
        auto H = gamma_derived(M, 0, 2);
        for (int i = -2; i <= 2; ++i) {
            const BigInt expect = i <= 0 ? H[static_cast<std::size_t>(-i)].order() : BigInt(1);
            CHECK(r.lhs[static_cast<std::size_t>(i + 2)] == expect);
            CHECK(r.rhs[static_cast<std::size_t>(i + 2)] == expect);
        }
    }
}

TEST_CASE("duality on random pairs") {
    Rng rng(52);
    std::vector<RingedMap> maps;
    for (const auto& name : {"FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"}) maps.push_back(RingedMap::identity(fixture(name)));
    maps.push_back(to_point(fix_wedge()));
    maps.push_back(to_point(fix_flat()));
    maps.push_back(to_point(fix_flat4()));
    SpacePtr W = fix_wedge();
    maps.push_back(RingedMap::inclusion(open_subspace(W, W->poset.up_set(0))));
    for (const auto& f : maps) {
        for (int t = 0; t < 2; ++t) {
            SheafComplex M = SheafComplex::single(random_sheaf(f.source, rng));
            SheafComplex N = SheafComplex::single(random_sheaf(f.target, rng));
            DualityReport r = duality_check(f, M, N, -1, 1);
            CHECK_MESSAGE(r.pass, r.message);
            CHECK(r.complex_iso);
        }
    }
}

TEST_CASE("duality signs matter over Z/4") {
    // N = Z/2 has an infinite injective resolution by Z/4, so rows p = 0, 1 meet with Z/4 coefficients
    SpacePtr X = fix_flat4();
    RingedMap f = to_point(X);
    FiniteModule half = from_presentation(f.target->rings[0], 1, {{Vec{2}}});
    SheafComplex M = SheafComplex::single(structure_sheaf(X));
    SheafComplex N = SheafComplex::single(pushed_tilde(f.target, 0, half));
    DualityReport r = duality_check(f, M, N, -2, 2);
    CHECK(r.pass);
    CHECK(r.lhs == std::vector<BigInt>{1, 1, 2, 1, 1});

    // a chain a < b < c with constant Z/4 exercises rows p = 0, 1, 2
    RingPtr Z4 = fix_pt()->rings[0];
    SpacePtr C = std::make_shared<const RingedSpace>(RingedSpace::constant(Poset({"a", "b", "c"}, {{0, 1}, {1, 2}}), Z4));
    RingedMap g = to_point(C);
    DualityReport s = duality_check(g, SheafComplex::single(structure_sheaf(C)),
                                    SheafComplex::single(pushed_tilde(g.target, 0, from_presentation(Z4, 1, {{Vec{2}}}))), -2, 2);
    CHECK(s.pass);
    CHECK(s.complex_iso);
}

TEST_CASE("f^! along the identity resolves N") {
    Rng rng(53);
    SpacePtr X = fix_flat();
    SheafComplex N = SheafComplex::single(random_sheaf(X, rng));
    Shriek s = f_shriek(RingedMap::identity(X), N, 4);
    CHECK(s.reliable_lo == -1);
    CHECK(s.reliable_hi == 2);
    for (int i = s.reliable_lo; i <= s.reliable_hi; ++i)
        CHECK(cohomology(s.cx(), i).H->total_order() == cohomology(N, i).H->total_order());
}
