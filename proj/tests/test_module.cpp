#include <doctest.h>

#include <random>

#include "finsheaf/module.hpp"

using namespace finsheaf;

namespace {

RingPtr zn(i64 n) { return make_ring(FiniteRing::integers_mod(n)); }

// R / (r) as a cyclic module.
FiniteModule cyclic(const RingPtr& R, const Vec& r) { return from_presentation(R, 1, {{r}}); }

// Brute-force size of {m in M : r m = 0}.
std::size_t annihilated(const FiniteModule& M, const Vec& r) {
    std::size_t n = 0;
    for (const Vec& x : enumerate(M.group)) {
        Vec y = M.scalar(r, x);
        n += std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; });
    }
    return n;
}

BigInt ideal_order(const FiniteRing& R, const std::vector<Vec>& gens) {
    std::vector<Vec> cols;
    for (const Vec& g : gens)
        for (std::size_t k = 0; k < R.rank(); ++k) cols.push_back(R.multiply(R.basis(k), g));
    return subgroup(R.add, Mat::from_cols(cols, R.rank())).group.order();
}

}  // namespace

TEST_CASE("ring tables are validated") {
    CHECK_NOTHROW(make_ring(FiniteRing::truncated_poly(2, 3)));
    FiniteRing bad = FiniteRing::truncated_poly(2, 2);
    bad.table[0][1] = {1, 0};
    CHECK_THROWS_AS(make_ring(bad), RingError);
    FiniteRing nonunit = FiniteRing::integers_mod(4);
    nonunit.one = {2};
    CHECK_THROWS_AS(make_ring(nonunit), RingError);
}

TEST_CASE("ideal counts") {
    CHECK(ideals(*zn(12)).size() == 6);
    CHECK(ideals(*zn(7)).size() == 2);
    CHECK(ideals(*make_ring(FiniteRing::truncated_poly(2, 3))).size() == 4);
    // F2 x F2 as Z/2[t]/(t^2 - t): four ideals.
    FiniteRing p;
    p.name = "F2xF2";
    p.add.orders = {2, 2};
    p.table = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}};
    p.one = {1, 0};
    CHECK(ideals(*make_ring(p)).size() == 4);
}

TEST_CASE("ring maps") {
    auto z6 = zn(6), z2 = zn(2), z3 = zn(3);
    CHECK_NOTHROW(from_integers(z6, z2));
    CHECK_THROWS_AS(from_integers(z2, z3), RingError);
    RingHom bad{z6, z3, Mat::from_rows({{2}}, 1)};
    CHECK_THROWS_AS(bad.validate(), RingError);
}

TEST_CASE("presentations and cyclic modules") {
    auto R = zn(12);
    FiniteModule M = cyclic(R, {8});  // Z/12 / (8) = Z/4
    CHECK(M.group.invariants() == Vec{4});
    CHECK_NOTHROW(M.validate());
    auto P = make_ring(FiniteRing::truncated_poly(3, 3));
    FiniteModule N = from_presentation(P, 2, {{Vec{0, 1, 0}, Vec{1, 0, 0}}});
    CHECK(N.group.order() == 27);
    CHECK_NOTHROW(N.validate());
}

TEST_CASE("cyclic tensor products match R/(I+J)") {
    std::mt19937_64 rng(1);
    std::vector<RingPtr> rings{zn(12), zn(8), make_ring(FiniteRing::truncated_poly(2, 3))};
    for (int trial = 0; trial < 40; ++trial) {
        const auto& R = rings[trial % rings.size()];
        auto elems = R->elements();
        Vec r = elems[rng() % elems.size()], s = elems[rng() % elems.size()];
        Tensor T = tensor(cyclic(R, r), cyclic(R, s));
        CHECK_NOTHROW(T.module.validate());
        CHECK(T.module.group.order() * ideal_order(*R, {r, s}) == R->size());
    }
}

TEST_CASE("Hom(R/(r), M) is the r-torsion of M") {
    std::mt19937_64 rng(2);
    std::vector<RingPtr> rings{zn(12), make_ring(FiniteRing::truncated_poly(2, 3))};
    for (int trial = 0; trial < 30; ++trial) {
        const auto& R = rings[trial % rings.size()];
        auto elems = R->elements();
        Vec r = elems[rng() % elems.size()];
        FiniteModule M = direct_sum({cyclic(R, elems[rng() % elems.size()]), cyclic(R, elems[rng() % elems.size()])}, R).module;
        HomModule h = hom_module(cyclic(R, r), M);
        CHECK(h.module.group.order() == annihilated(M, r));
        for (const Vec& x : enumerate(h.module.group)) CHECK(h.to_hom(x).is_linear());
    }
}

TEST_CASE("kernels, cokernels and images of random maps are modules") {
    std::mt19937_64 rng(3);
    auto R = make_ring(FiniteRing::truncated_poly(2, 2));
    auto elems = R->elements();
    for (int trial = 0; trial < 30; ++trial) {
        FiniteModule A = direct_sum({cyclic(R, elems[rng() % 4]), cyclic(R, elems[rng() % 4])}, R).module;
        FiniteModule B = direct_sum({cyclic(R, elems[rng() % 4]), FiniteModule::free(R, 1)}, R).module;
        ModHom f = random_hom(A, B, rng);
        REQUIRE(f.is_linear());
        ModHom k = kernel(f), c = cokernel(f), i = image(f);
        CHECK_NOTHROW(k.src.validate());
        CHECK_NOTHROW(c.tgt.validate());
        CHECK(k.is_linear());
        CHECK(c.is_linear());
        CHECK(k.src.group.order() * i.src.group.order() == A.group.order());
        CHECK(compose(c, f).f.is_zero());
        ModHom back = factor_through(f, i);
        CHECK(back.is_linear());
    }
}

TEST_CASE("duals and injective embeddings") {
    std::vector<RingPtr> rings{zn(4), zn(12), make_ring(FiniteRing::truncated_poly(2, 3))};
    for (const auto& R : rings) {
        for (const Vec& r : R->elements()) {
            FiniteModule M = cyclic(R, r);
            FiniteModule D = dual(M);
            CHECK_NOTHROW(D.validate());
            CHECK(dual(D).act == M.act);
            ModHom e = injective_embedding(M);
            CHECK(e.is_linear());
            CHECK(is_injective(e.f));
            CHECK(is_injective_module(e.tgt));
        }
    }
    auto z4 = zn(4);
    ModHom e = injective_embedding(cyclic(z4, {2}));
    CHECK(e.f.m(0, 0) == 2);
    CHECK_FALSE(is_injective_module(cyclic(z4, {2})));
}

TEST_CASE("flatness") {
    auto z4 = zn(4), z6 = zn(6);
    CHECK_FALSE(is_flat(cyclic(z4, {2})));
    CHECK(is_flat(FiniteModule::free(z4, 2)));
    CHECK(is_flat(cyclic(z6, {2})));  // Z/2 is a direct factor of Z/6
    auto P = make_ring(FiniteRing::truncated_poly(2, 2));
    CHECK_FALSE(is_flat(cyclic(P, {0, 1})));
}

TEST_CASE("base change and coinduction") {
    auto z4 = zn(4), z2 = zn(2);
    RingHom phi = from_integers(z4, z2);
    BaseChange bc = base_change(FiniteModule::free(z4, 1), phi);
    CHECK(bc.module.group.invariants() == Vec{2});
    CHECK_NOTHROW(bc.module.validate());
    Coinduced c = coinduce(FiniteModule::free(z4, 1), phi);
    CHECK(c.module.group.invariants() == Vec{2});
    CHECK_NOTHROW(c.module.validate());
    // The adjoint of the identity Z/2 -> res Z/2 is an isomorphism Z/4 (x) Z/2 -> Z/2.
    FiniteModule B = FiniteModule::free(z2, 1);
    BaseChange bc2 = base_change(restrict_scalars(B, phi), phi);
    ModHom adj = base_change_adjoint(bc2, B, AbHom::identity(B.group));
    CHECK(adj.is_linear());
    CHECK(is_iso(adj.f));
}

TEST_CASE("isomorphism search") {
    auto R = zn(12);
    CHECK(is_isomorphic(cyclic(R, {4}), cyclic(R, {8})));
    CHECK_FALSE(is_isomorphic(cyclic(R, {4}), cyclic(R, {3})));
}
