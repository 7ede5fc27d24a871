#include <doctest.h>

#include <random>

#include "finsheaf/abgroup.hpp"
#include "finsheaf/zmod.hpp"

using namespace finsheaf;

namespace {

Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c, i64 n) {
    Mat m(r, c);
    for (auto& v : m.a) v = static_cast<i64>(rng() % static_cast<std::uint64_t>(n));
    return m;
}

// |{x in (Z/N)^c : A x = 0}| by brute force.
std::size_t brute_kernel_size(const Mat& A, i64 N) {
    std::size_t count = 0;
    Vec x(A.cols, 0);
    for (;;) {
        Vec y = mul(A, x, N);
        bool zero = true;
        for (i64 v : y) zero &= v == 0;
        count += zero;
        std::size_t i = 0;
        for (; i < x.size(); ++i) {
            if (++x[i] < N) break;
            x[i] = 0;
        }
        if (i == x.size()) return count;
    }
}

}  // namespace

TEST_CASE("smith form satisfies P A Q = D with invertible transforms") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const i64 N = std::vector<i64>{2, 4, 6, 8, 12, 30, 36}[trial % 7];
        const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        Mat A = random_mat(rng, r, c, N);
        SmithForm s = smith(A, N);
        Mat D = mul(mul(s.P, A, N), s.Q, N);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                i64 expect = i == j ? mod(s.diag[i], N) : 0;
                CHECK(D(i, j) == expect);
            }
        CHECK(mul(s.P, s.Pinv, N) == Mat::identity(r));
        CHECK(mul(s.Q, s.Qinv, N) == Mat::identity(c));
        for (i64 d : s.diag) CHECK(N % d == 0);
    }
}

TEST_CASE("parallel and serial smith agree") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Mat A = random_mat(rng, 70, 64, 12);
        SmithForm a = smith(A, 12), b = smith_serial(A, 12);
        CHECK(a.diag == b.diag);
        CHECK(a.P == b.P);
        CHECK(a.Q == b.Q);
    }
}

TEST_CASE("nullspace spans the brute-force kernel") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const i64 N = std::vector<i64>{4, 6, 9}[trial % 3];
        Mat A = random_mat(rng, 1 + rng() % 3, 1 + rng() % 3, N);
        Mat K = nullspace(A, N);
        Mat AK = mul(A, K, N);
        for (i64 v : AK.a) CHECK(v == 0);
        // The span of K inside (Z/N)^c has the brute-force size.
        Sub s = subgroup(AbGroup{Vec(A.cols, N)}, K);
        CHECK(s.group.order() == brute_kernel_size(A, N));
    }
}

TEST_CASE("solve finds solutions exactly when they exist") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const i64 N = 8;
        Mat A = random_mat(rng, 2, 2, N);
        Vec b{static_cast<i64>(rng() % 8), static_cast<i64>(rng() % 8)};
        bool exists = false;
        for (i64 x = 0; x < N && !exists; ++x)
            for (i64 y = 0; y < N && !exists; ++y)
                exists = mul(A, Vec{x, y}, N) == b;
        auto sol = solve(A, b, N);
        CHECK(sol.has_value() == exists);
        if (sol) CHECK(mul(A, *sol, N) == b);
    }
}

TEST_CASE("invariant factors") {
    CHECK(invariant_factors({2, 3}) == Vec{6});
    CHECK(invariant_factors({4, 2, 3}) == Vec{2, 12});
    CHECK(invariant_factors({}) == Vec{});
    CHECK(AbGroup{{6, 4}}.order() == 24);
}

TEST_CASE("quotient, kernel and cokernel orders") {
    // Z/4 -> Z/4, multiplication by 2: kernel and cokernel are Z/2.
    AbGroup z4{{4}};
    AbHom two{z4, z4, Mat::from_rows({{2}}, 1)};
    CHECK(kernel(two).group.invariants() == Vec{2});
    CHECK(cokernel(two).group.invariants() == Vec{2});
    CHECK(image(two).group.invariants() == Vec{2});
    CHECK_FALSE(is_injective(two));
    // Z/6 -> Z/2 + Z/3 is an isomorphism.
    AbHom crt{AbGroup{{6}}, AbGroup{{2, 3}}, Mat::from_rows({{1}, {1}}, 1)};
    CHECK(crt.well_defined());
    CHECK(is_iso(crt));
}

TEST_CASE("random homs: |ker| * |im| = |src| and factor_through inverts inclusion") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<i64> choices{2, 3, 4, 6, 8, 9, 12};
        AbGroup A, B;
        for (std::size_t i = 0; i < 1 + rng() % 3; ++i) A.orders.push_back(choices[rng() % choices.size()]);
        for (std::size_t i = 0; i < 1 + rng() % 3; ++i) B.orders.push_back(choices[rng() % choices.size()]);
        HomZ H(A, B);
        Vec c(H.group.rank());
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = static_cast<i64>(rng() % static_cast<std::uint64_t>(H.group.orders[k]));
        AbHom f{A, B, H.to_matrix(c)};
        REQUIRE(f.well_defined());
        CHECK(H.from_matrix(f.m) == c);
        Sub k = kernel(f), im = image(f);
        CHECK(k.group.order() * im.group.order() == A.order());
        CHECK(cokernel(f).group.order() * im.group.order() == B.order());
        CHECK(compose(f, k.incl).is_zero());
        AbHom back = factor_through(f, im.incl);
        CHECK(compose(im.incl, back).m == f.m);
        for (const Vec& x : enumerate(A)) {
            auto pre = preimage(f, f.apply(x));
            REQUIRE(pre.has_value());
            CHECK(f.apply(*pre) == f.apply(x));
        }
    }
}

TEST_CASE("Hom_Z(Z/4, Z/6) has order gcd = 2") {
    HomZ H(AbGroup{{4}}, AbGroup{{6}});
    CHECK(H.group.order() == 2);
    CHECK(H.to_matrix({1})(0, 0) == 3);
}
