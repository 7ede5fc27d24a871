#include <doctest.h>

#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

using namespace finsheaf;

namespace {

// Ext over a finite ring from a free resolution of A, built from generator sets alone.
std::vector<BigInt> ext_orders(const FiniteModule& A, const FiniteModule& B, int top) {
    const RingPtr& R = A.ring;
    const std::size_t n = R->rank();
    std::vector<ModHom> d;  // d[i]: F_i -> F_{i-1} (F_{-1} = A)
    FiniteModule cur = A;
    ModHom into_cur = ModHom::identity(A);
    for (int i = 0; i <= top + 1; ++i) {
        const std::size_t g = cur.rank();
        FiniteModule F = FiniteModule::free(R, g);
        ModHom e = ModHom::zero(F, cur);
        for (std::size_t l = 0; l < g; ++l) {
            Vec gen(g, 0);
            gen[l] = 1;
            for (std::size_t k = 0; k < n; ++k) e.f.m.set_col(l * n + k, cur.scalar(R->basis(k), gen));
        }
        ModHom de = compose(into_cur, e);
        d.push_back(de);
        ModHom K = kernel(de);
        cur = K.src;
        into_cur = K;
    }
    GroupComplex C{0, {}, {}};
    std::vector<HomModule> H;
    for (int i = 0; i <= top + 1; ++i) {
        H.push_back(hom_module(d[static_cast<std::size_t>(i)].src, B));
        C.terms.push_back(H.back().module.group);
    }
    for (int i = 0; i <= top; ++i) {
        const HomModule &a = H[static_cast<std::size_t>(i)], &b = H[static_cast<std::size_t>(i + 1)];
        const ModHom& di = d[static_cast<std::size_t>(i + 1)];
        C.d.push_back(hom_from_images(a.module.group, b.module.group, [&](std::size_t j) {
            Vec e(a.module.rank(), 0);
            e[j] = 1;
            return b.from_matrix(compose(a.to_hom(e).f, di.f).m);
        }));
    }
    std::vector<BigInt> out;
    for (int i = 0; i <= top; ++i) out.push_back(cohomology(C, i).H.order());
    return out;
}

}  // namespace

TEST_CASE("injective resolutions") {
    Rng rng(41);
    for (const auto& name : {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        const int dim = static_cast<int>(X->poset.dimension());
        for (int t = 0; t < 2; ++t) {
            SheafComplex M = random_complex(X, rng, false);
            InjectiveResolution I = inj_res(M, M.hi() + dim + 1);
            CHECK_NOTHROW(I.res.complex().validate());
            CHECK(I.res.augmentation.is_valid());
            CHECK_FALSE(I.res.failure());
            for (const auto& T : I.terms)
                for (const auto& E : T.mods) CHECK(is_injective_module(E));
        }
        CHECK_THROWS_AS(inj_res(SheafComplex::single(structure_sheaf(X)), dim), SheafError);
    }
    SpacePtr F2 = point_space(fix_wedge()->rings[0]);
    InjectiveResolution P = inj_res(SheafComplex::single(structure_sheaf(F2)), 1);
    CHECK(P.res.complex().terms.size() == 1);
    CHECK(P.res.reliable_hi == INT_MAX);

    SpacePtr X = fix_flat();
    InjectiveResolution O = inj_res(SheafComplex::single(structure_sheaf(X)), 4);
    CHECK_FALSE(O.res.failure());
}

TEST_CASE("derived Hom on a point is module Ext") {
    SpacePtr X = fix_pt();
    const RingPtr& R = X->rings[0];
    SheafPtr M = structure_sheaf(X);
    FiniteModule half = from_presentation(R, 1, {{Vec{2}}});
    SheafComplex Z2 = SheafComplex::single(skyscraper(X, 0, half));
    DerivedHom h = hom_derived(Z2, Z2, -1, 3);
    CHECK(h.groups[0].order() == 1);
    for (int i = 1; i <= 4; ++i) CHECK(h.groups[static_cast<std::size_t>(i)].order() == 2);
    CHECK(hom_derived(SheafComplex::single(M), Z2, 0, 2).groups[1].order() == 1);
    CHECK_THROWS_AS(hom_derived(Z2, Z2, 0, 3, 2), SheafError);
}

TEST_CASE("degree zero derived Hom is sheaf Hom") {
    Rng rng(42);
    for (const auto& name : {"FIX-FLAT", "FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        for (int t = 0; t < 3; ++t) {
            SheafPtr M = random_sheaf(X, rng), N = random_sheaf(X, rng);
            DerivedHom h = hom_derived(SheafComplex::single(M), SheafComplex::single(N), -1, 0);
            CHECK(h.groups[0].order() == 1);
            CHECK(h.groups[1].order() == hom_group(M, N).sub.group.order());
        }
    }
}

TEST_CASE("derived Hom on U_x agrees with Ext over the local ring") {
    Rng rng(43);
    for (const auto& name : {"FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE", "FIX-PC"}) {
        SpacePtr X = fixture(name);
        for (std::size_t x = 0; x < X->size(); ++x) {
            OpenSubspace U = open_subspace(X, X->poset.up_set(x));
            const RingPtr& R = X->rings[x];
            FiniteModule A = random_module(R, rng), B = random_module(R, rng);
            SheafComplex M = SheafComplex::single(tilde(U, A)), N = SheafComplex::single(tilde(U, B));
            DerivedHom h = hom_derived(M, N, 0, 2);
            std::vector<BigInt> ext = ext_orders(A, B, 2);
            for (int i = 0; i <= 2; ++i)
                CHECK_MESSAGE(h.groups[static_cast<std::size_t>(i)].order() == ext[static_cast<std::size_t>(i)], name);
        }
    }
}
