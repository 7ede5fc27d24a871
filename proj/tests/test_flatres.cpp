#include <doctest.h>

#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

namespace {

bool flat_qcoh_terms(const SheafComplex& F) {
    for (const auto& T : F.terms) {
        if (!is_quasicoherent(*T)) return false;
        for (const auto& s : T->stalk)
            if (!is_flat(s)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("flat quasi-coherent resolutions") {
    Rng rng(71);
    for (const auto& name : {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"}) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafPtr M = random_qcoh(X, rng);
            FlatResolution r = flat_qcoh_res(M);
            CHECK_NOTHROW(r.res.complex().validate());
            CHECK(r.res.augmentation.is_valid());
            CHECK_MESSAGE(flat_qcoh_terms(r.res.complex()), name);
            CHECK_FALSE(r.res.failure());
        }
    }
}

TEST_CASE("flat resolution examples") {
    SpacePtr X = fix_flat();
    FlatResolution o = flat_qcoh_res(structure_sheaf(X));
    CHECK(o.finite);
    CHECK(o.res.complex().terms.size() == 1);
    CHECK_FALSE(o.res.failure());

    // Z/2 over Z/4 has infinite flat dimension
    SpacePtr Y = fix_flat4();
    SheafPtr half = pushed_tilde(Y, 0, from_presentation(Y->rings[0], 1, {{Vec{2}}}));
    REQUIRE(is_quasicoherent(*half));
    FlatResolution h = flat_qcoh_res(half, 3);
    CHECK_FALSE(h.finite);
    CHECK(h.res.complex().lo < 0);
    CHECK(flat_qcoh_terms(h.res.complex()));
    CHECK_FALSE(h.res.failure());
    CHECK(h.res.reliable_lo == -1);

    CHECK_THROWS_AS(flat_qcoh_res(structure_sheaf(fix_pc())), SheafError);
    SheafPtr sky = skyscraper(X, 1, FiniteModule::free(X->rings[1], 1));
    CHECK_THROWS_AS(flat_qcoh_res(sky), SheafError);
}
