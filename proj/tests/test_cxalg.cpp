#include <doctest.h>

#include "finsheaf/cxalg.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

namespace {

// Identity, twice the identity, or a map onto a single sheaf in the top degree.
ComplexMorphism random_chain_map(const SheafComplex& C, Rng& rng) {
    switch (rng() % 3) {
        case 0: return identity(C);
        case 1: {
            ComplexMorphism f = identity(C);
            for (auto& c : f.f) c = scale(c, 2);
            return f;
        }
        default: {
            // Into a single term in the top degree, through the cokernel of the last differential.
            SheafPtr T = random_sheaf(C.space, rng);
            SheafMorphism pr = cokernel(C.diff(C.hi() - 1));
            SheafMorphism h = compose(random_morphism(pr.tgt, T, rng), pr);
            return {C, SheafComplex::single(T, C.hi()), C.hi(), {h}};
        }
    }
}

std::size_t count_chain_maps(const SheafComplex& M, const SheafComplex& N) {
    std::vector<SheafHomGroup> hs;
    std::vector<std::vector<Vec>> elems;
    for (int p = M.lo; p <= M.hi(); ++p) {
        hs.push_back(hom_group(M.at(p), N.at(p)));
        elems.push_back(enumerate(hs.back().sub.group));
    }
    std::size_t count = 0;
    std::vector<std::size_t> idx(hs.size(), 0);
    while (true) {
        ComplexMorphism f{M, N, M.lo, {}};
        for (std::size_t i = 0; i < hs.size(); ++i) f.f.push_back(hs[i].to_morphism(elems[i][idx[i]]));
        count += f.is_valid();
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == elems[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return count;
}

}  // namespace

TEST_CASE("random complexes satisfy d o d = 0 and shifts compose") {
    Rng rng(11);
    for (const auto& name : fixture_names()) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafComplex C = random_complex(X, rng, false);
            CHECK_NOTHROW(C.validate());
            SheafComplex S = shift(shift(C, 1), -1);
            CHECK(S.lo == C.lo);
            for (int n = C.lo; n < C.hi(); ++n) CHECK(equal(S.diff(n), C.diff(n)));
            CHECK_NOTHROW(shift(C, 1).validate());
        }
    }
}

TEST_CASE("cone of a chain map is acyclic exactly for quasi-isomorphisms") {
    Rng rng(12);
    for (const auto& name : {"FIX-ARROW", "FIX-WEDGE", "FIX-FLAT"}) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 4; ++t) {
            SheafComplex C = random_complex(X, rng, false);
            ComplexMorphism f = random_chain_map(C, rng);
            REQUIRE(f.is_valid());
            Cone K = cone(f);
            CHECK_NOTHROW(K.cx.validate());
            CHECK(K.from_target.is_valid());
            CHECK(K.to_shift.is_valid());
            CHECK(is_acyclic(K.cx) == is_quasi_iso(f));
            CHECK(is_acyclic(cone(identity(C)).cx));
        }
    }
}

TEST_CASE("total complex of a chain map as a two-row bicomplex") {
    Rng rng(13);
    SpacePtr X = fix_wedge();
    for (int t = 0; t < 4; ++t) {
        SheafComplex C = random_complex(X, rng, false);
        ComplexMorphism f = random_chain_map(C, rng);
        const SheafComplex& D = f.tgt;
        const int lo = std::min(C.lo, D.lo), hi = std::max(C.hi(), D.hi());
        Bicomplex B{X, 0, lo, {}, {}, {}};
        B.terms.resize(2);
        B.dh.resize(2);
        B.dv.resize(2);
        for (int q = lo; q <= hi; ++q) {
            B.terms[0].push_back(C.at(q));
            B.terms[1].push_back(D.at(q));
            B.dh[0].push_back(f.at(q));
            B.dv[0].push_back(C.diff(q));
            B.dv[1].push_back(D.diff(q));
        }
        Total T = total(B);
        CHECK_NOTHROW(T.cx.validate());
        // Tot is the cone shifted by one, so it is acyclic exactly when f is a quasi-isomorphism.
        CHECK(is_acyclic(T.cx) == is_quasi_iso(f));
        CHECK(T.index(B, 1, lo) == 1);
    }
}

TEST_CASE("hom complex: cycles in degree zero are chain maps") {
    Rng rng(14);
    for (const auto& name : {"FIX-ARROW", "FIX-PT"}) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafComplex M = random_complex(X, rng, false);
            SheafComplex N = random_complex(X, rng, false);
            N.lo = M.lo;
            HomComplex H = hom_complex(M, N, -3, 3);
            CHECK_NOTHROW(H.cx.validate());
            GroupCohomology z = cohomology(H.cx, 0);
            CHECK(z.cycles.group.order() == count_chain_maps(M, N));
            for (const Vec& x : enumerate(z.cycles.group, 256)) {
                auto fam = H.to_morphisms(0, z.cycles.incl.apply(x));
                CHECK(ComplexMorphism{M, N, M.lo, fam}.is_valid());
            }
        }
    }
}

TEST_CASE("in_Dqc agrees with quasi-coherent cohomology on flat spaces") {
    Rng rng(15);
    for (const auto& name : {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        CHECK_FALSE(flatness_failure(*X));
        for (int t = 0; t < 4; ++t) {
            SheafComplex C = random_complex(X, rng, t % 2 == 0);
            CHECK(in_Dqc(C) == cohomology_is_quasicoherent(C));
        }
    }
    SpacePtr A = fix_arrow();
    REQUIRE(flatness_failure(*A));
    CHECK_THROWS_AS(in_Dqc(SheafComplex::single(structure_sheaf(A))), SheafError);
}

TEST_CASE("global sections of a single sheaf") {
    Rng rng(16);
    SpacePtr X = fix_pc();
    for (int t = 0; t < 3; ++t) {
        SheafPtr M = random_sheaf(X, rng);
        GroupComplex G = global_sections(SheafComplex::single(M, 0));
        CHECK(cohomology(G, 0).H.order() == sections(*M, X->poset.whole()).sub.group.order());
    }
}
