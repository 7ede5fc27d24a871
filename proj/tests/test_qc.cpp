#include <doctest.h>

#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

namespace {

const char* semi_separated[] = {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"};

bool is_iso(const SheafMorphism& f) {
    for (const auto& c : f.comp)
        if (!is_iso(c)) return false;
    return true;
}

}  // namespace

TEST_CASE("Qc of the standard complex is quasi-coherent and equals pseudo-Cech on qcoh input") {
    Rng rng(31);
    for (const char* name : semi_separated) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafComplex M = random_complex(X, rng, true);
            PieceBicomplex Q = qc_standard(M);
            CHECK_NOTHROW(Q.cx().validate());
            for (const auto& T : Q.cx().terms) CHECK(is_quasicoherent(*T));
            ComplexMorphism iso = qc_to_cech(Q, pseudo_cech_complex(M));
            CHECK(iso.is_valid());
            for (const auto& f : iso.f) CHECK_MESSAGE(is_iso(f), name);
        }
    }
}

TEST_CASE("qc of a module") {
    Rng rng(32);
    for (const char* name : semi_separated) {
        SpacePtr X = fixture(name);
        SheafPtr N = random_qcoh(X, rng);
        QcModule q = qc(N);
        CHECK(q.counit.is_valid());
        CHECK_MESSAGE(is_iso(q.counit), name);
    }
    // skyscraper Z/2 at q on FIX-FLAT is not quasi-coherent
    SpacePtr X = fix_flat();
    SheafPtr N = skyscraper(X, 1, FiniteModule::free(X->rings[1], 1));
    REQUIRE_FALSE(is_quasicoherent(*N));
    QcModule q = qc(N);
    CHECK(is_quasicoherent(*q.module));
    CHECK(q.counit.is_valid());
    for (int t = 0; t < 20; ++t) {
        SheafPtr M = random_qcoh(X, rng);
        CHECK(hom_group(M, q.module).sub.group.order() == hom_group(M, N).sub.group.order());
    }
    CHECK(qc(zero_sheaf(X)).module->is_zero());
    CHECK_THROWS_AS(qc(structure_sheaf(fix_pc())), SheafError);
}

TEST_CASE("Bokstedt-Neeman check") {
    Rng rng(33);
    int ran = 0;
    for (const char* name : semi_separated) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 4; ++t) {
            SheafComplex M = random_complex(X, rng, t % 2 == 0);
            if (!in_Dqc(M)) continue;
            ++ran;
            CheckReport r = bn_check(M);
            CHECK_MESSAGE(r.pass, name);
        }
    }
    CHECK(ran > 4);
    SpacePtr X = fix_flat();
    SheafPtr sky = skyscraper(X, 0, from_presentation(X->rings[0], 1, {{Vec{3}}}));
    CheckReport r = bn_check(SheafComplex::single(sky));
    CHECK(r.pass);
    CHECK(r.lines.size() == 2);
    CHECK(bn_check(SheafComplex::zero(X)).pass);
    CHECK_THROWS_AS(bn_check(SheafComplex::single(structure_sheaf(fix_pc()))), SheafError);
}

TEST_CASE("RQc vanishes above the dimension") {
    Rng rng(34);
    for (const char* name : semi_separated) {
        SpacePtr X = fixture(name);
        const int dim = static_cast<int>(X->poset.dimension());
        for (int t = 0; t < 3; ++t) {
            SheafComplex M = SheafComplex::single(random_sheaf(X, rng));
            QcDerived D = qc_derived(M);
            for (int i = dim + 1; i <= D.cx.hi(); ++i) CHECK(cohomology(D.cx, i).H->is_zero());
            CHECK(D.to_source.forward.is_valid());
        }
    }
}

TEST_CASE("R_qc f_* agrees with R f_*") {
    Rng rng(35);
    for (const char* name : {"FIX-WEDGE", "FIX-FLAT", "FIX-FLAT4"}) {
        SpacePtr X = fixture(name);
        SpacePtr pt = point_space(X->rings[0]);
        for (const RingedMap& f : {RingedMap::identity(X), map_to_point(X, pt)}) {
            for (int t = 0; t < 2; ++t) {
                SheafComplex M = random_complex(X, rng, true);
                CHECK_MESSAGE(rqc_check(f, M).pass, name);
            }
        }
    }
    SpacePtr W = fix_wedge();
    RingedMap f = map_to_point(W, point_space(W->rings[0]));
    SheafComplex A = rqc_push(f, SheafComplex::single(structure_sheaf(W)));
    CHECK(cohomology(A, 0).H->total_order() == 2);
    CHECK(cohomology(A, 1).H->is_zero());
}
