#include <doctest.h>

#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

TEST_CASE("standard resolution is a flasque quasi-isomorphic resolution") {
    Rng rng(21);
    for (const auto& name : fixture_names()) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafPtr M = random_sheaf(X, rng);
            Resolution R = standard(M);
            CHECK_NOTHROW(R.complex().validate());
            CHECK(R.augmentation.is_valid());
            CHECK_FALSE(R.failure());
            for (const auto& T : R.complex().terms) CHECK(is_flasque(*T));
            CHECK(R.complex().hi() <= static_cast<int>(X->poset.dimension()));
        }
    }
}

TEST_CASE("standard complex of constant F2 on the pseudo-circle") {
    SpacePtr X = fix_pc();
    Resolution R = standard(structure_sheaf(X));
    GroupComplex G = global_sections(R.complex());
    CHECK(G.at(0).order() == 16);
    CHECK(G.at(1).order() == 16);
    auto H = gamma_derived(SheafComplex::single(structure_sheaf(X)), 0, 3);
    CHECK(H[0].order() == 2);
    CHECK(H[1].order() == 2);
    CHECK(H[2].order() == 1);
    CHECK(H[3].order() == 1);
}

TEST_CASE("standard resolution of a point is the module itself") {
    SpacePtr X = fix_pt();
    Rng rng(22);
    SheafPtr M = random_sheaf(X, rng);
    Resolution R = standard(M);
    CHECK(R.complex().lo == 0);
    CHECK(R.complex().trimmed().hi() <= 0);
    CHECK(R.complex().at(0)->stalk[0].group == M->stalk[0].group);
}

TEST_CASE("standard resolution of a complex") {
    Rng rng(23);
    for (const auto& name : {"FIX-WEDGE", "FIX-ARROW", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        SheafPtr A = random_sheaf(X, rng), B = random_sheaf(X, rng);
        SheafComplex C{X, -1, {A, B}, {random_morphism(A, B, rng)}};
        Resolution R = standard(C);
        CHECK_NOTHROW(R.complex().validate());
        CHECK(R.augmentation.is_valid());
        CHECK_FALSE(R.failure());
    }
}

TEST_CASE("pushed standard complex has the cohomology of the pushforward") {
    Rng rng(24);
    for (const auto& name : {"FIX-WEDGE", "FIX-PC", "FIX-FLAT"}) {
        SpacePtr X = fixture(name);
        SpacePtr pt = point_space(X->rings[0]);
        if (name == std::string("FIX-FLAT")) pt = point_space(make_ring(FiniteRing::integers_mod(6)));
        RingedMap f = map_to_point(X, pt);
        SheafPtr M = random_sheaf(X, rng);
        SheafComplex A = push_derived(f, SheafComplex::single(M));
        Standard S = pushed_standard(f, SheafComplex::single(M));
        CHECK_NOTHROW(S.cx().validate());
        for (int n = 0; n <= 2; ++n)
            CHECK(cohomology(A, n).H->total_order() == cohomology(S.cx(), n).H->total_order());
    }
}

TEST_CASE("pseudo-Cech resolution on semi-separated fixtures") {
    Rng rng(25);
    for (const auto& name : {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"}) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafPtr M = random_qcoh(X, rng);
            Resolution R = pseudo_cech(M);
            CHECK_NOTHROW(R.complex().validate());
            CHECK(R.augmentation.is_valid());
            CHECK_FALSE(R.failure());
        }
    }
}

TEST_CASE("pseudo-Cech stalks on the wedge") {
    SpacePtr X = fix_wedge();
    Resolution R = pseudo_cech(structure_sheaf(X));
    const std::size_t c = X->poset.index("c");
    CHECK(R.complex().at(0)->stalk[c].group.order() == 8);
}

TEST_CASE("derived pushforward is functorial") {
    Rng rng(17);
    for (const auto& name : {"FIX-WEDGE", "FIX-PC", "FIX-FLAT"}) {
        SpacePtr X = fixture(name);
        RingedMap g = map_to_point(X, point_space(X->rings[0]));
        for (std::size_t x = 0; x < X->size(); ++x) {
            RingedMap f = RingedMap::inclusion(open_subspace(X, X->poset.up_set(x)));
            SheafComplex M = SheafComplex::single(random_sheaf(f.source, rng));
            SheafComplex A = push_derived(f, M);
            Resolution C = standard(A);
            // g_* f_* C.M -> g_* C.(f_* C.M) is a quasi-isomorphism since f_* C.M is flasque
            ComplexMorphism h = pushforward(g, C.augmentation, push_derived(compose(g, f), M), push_derived(g, A));
            CHECK(h.is_valid());
            CHECK_MESSAGE(is_quasi_iso(h), name);
        }
    }
}
