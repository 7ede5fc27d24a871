#include <doctest.h>

#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

TEST_CASE("chain holim unit is a quasi-isomorphism") {
    Rng rng(61);
    for (const auto& name : {"FIX-PT", "FIX-FLAT", "FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        SheafComplex N = random_complex(X, rng, false);
        ComplexMorphism u = chain_holim_unit(N);
        CHECK(u.is_valid());
        CHECK_MESSAGE(is_quasi_iso(u), name);
    }
}

TEST_CASE("D_qc coherator on the wedge") {
    Rng rng(62);
    SpacePtr X = fix_wedge();
    for (int t = 0; t < 3; ++t) {
        SheafComplex N = random_complex(X, rng, false);
        Coherator c = dqc_coherator(N);
        CHECK(c.split == "U = U_a, V = U_b");
        CHECK_NOTHROW(c.cx.validate());
        CHECK(c.to_source.forward.is_valid());
        CHECK(c.to_source.back.is_valid());
        CHECK(is_quasi_iso(c.to_source.back));
        CHECK(in_Dqc(c.cx));
        if (in_Dqc(N)) CHECK(is_quasi_iso(c.to_source.forward));
        for (int k = 0; k < 3; ++k) {
            SheafComplex M = SheafComplex::single(random_qcoh(X, rng));
            DerivedHom a = hom_derived(M, c.cx, -1, 1), b = hom_derived(M, N, -1, 1);
            for (std::size_t i = 0; i < a.groups.size(); ++i) CHECK(a.groups[i].order() == b.groups[i].order());
        }
    }
}

TEST_CASE("D_qc coherator trivial cases") {
    Rng rng(63);
    SpacePtr W = fix_wedge();
    SheafComplex O = SheafComplex::single(structure_sheaf(W));
    CHECK(is_quasi_iso(dqc_coherator(O).to_source.forward));
    SpacePtr P = fix_pt();
    SheafComplex N = SheafComplex::single(random_sheaf(P, rng));
    Coherator c = dqc_coherator(N);
    CHECK(is_quasi_iso(c.to_source.forward));
    CHECK_THROWS_AS(dqc_coherator(SheafComplex::single(structure_sheaf(fix_pc()))), SheafError);
}

TEST_CASE("coherator of a skyscraper on the wedge") {
    SpacePtr X = fix_wedge();
    SheafComplex N = SheafComplex::single(skyscraper(X, 2, FiniteModule::free(X->rings[2], 1)));
    REQUIRE_FALSE(in_Dqc(N));
    Coherator c = dqc_coherator(N);
    CHECK(in_Dqc(c.cx));
    CHECK_FALSE(is_quasi_iso(c.to_source.forward));
    SheafComplex O = SheafComplex::single(structure_sheaf(X));
    DerivedHom a = hom_derived(O, c.cx, -1, 2), b = hom_derived(O, N, -1, 2);
    std::vector<BigInt> got, want;
    for (std::size_t i = 0; i < a.groups.size(); ++i) {
        got.push_back(a.groups[i].order());
        want.push_back(b.groups[i].order());
    }
    CHECK(got == want);
    // only H^1(X, N) = F2 survives
    CHECK(got == std::vector<BigInt>{1, 1, 2, 1});
}

TEST_CASE("coherator with three minimal points") {
    Rng rng(64);
    RingPtr F2 = fix_wedge()->rings[0];
    SpacePtr X = std::make_shared<const RingedSpace>(
        RingedSpace::constant(Poset::from_names({"a", "b", "c", "d"}, {{"a", "d"}, {"b", "d"}, {"c", "d"}}), F2));
    for (int t = 0; t < 2; ++t) {
        SheafComplex N = random_complex(X, rng, false);
        Coherator c = dqc_coherator(N);
        CHECK(c.split == "U = U_a u U_b, V = U_c");
        CHECK(in_Dqc(c.cx));
        CHECK(is_quasi_iso(c.to_source.back));
        for (int k = 0; k < 2; ++k) {
            SheafComplex M = SheafComplex::single(random_qcoh(X, rng));
            DerivedHom a = hom_derived(M, c.cx, -1, 1), b = hom_derived(M, N, -1, 1);
            for (std::size_t i = 0; i < a.groups.size(); ++i) CHECK(a.groups[i].order() == b.groups[i].order());
        }
    }
}
