#pragma once

// Dense linear algebra over Z/N.
//
// Every module handled by this library is a finite abelian group killed by
// some N, so all integer matrix algebra (Smith form, kernels, solving) can be
// carried out over Z/N with entries kept in [0, N). Unimodular integer
// transforms stay invertible mod N and no coefficient growth occurs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace finsheaf {

using i64 = std::int64_t;
using Vec = std::vector<i64>;

i64 gcd64(i64 a, i64 b);
i64 lcm64(i64 a, i64 b);
i64 mod(i64 a, i64 n);
/// Inverse of a modulo n; requires gcd(a, n) == 1.
i64 inv_mod(i64 a, i64 n);

/// Row-major dense integer matrix.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<i64> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    i64& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    i64 operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows);

    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);
    bool operator==(const Mat&) const = default;
};

Mat mul(const Mat& x, const Mat& y, i64 n);
Vec mul(const Mat& x, const Vec& v, i64 n);
Mat hcat(const Mat& x, const Mat& y);
Mat vcat(const Mat& x, const Mat& y);
/// Reduce row i modulo orders[i].
void reduce_rows(Mat& m, const Vec& orders);
void reduce(Vec& v, const Vec& orders);

/// Result of a Smith-type diagonalization P * A * Q = D over Z/N.
///
/// The diagonal entries are normalized to divisors of N (an entry N stands
/// for zero). They do not necessarily form a divisibility chain.
struct SmithForm {
    i64 modulus = 1;
    Vec diag;  // length min(rows, cols)
    Mat P, Pinv, Q, Qinv;
};

struct SmithOptions {
    bool want_p = true;
    bool want_q = true;
    bool parallel = true;
};

/// Diagonalize A over Z/N. The OpenMP path and the serial path perform the
/// same sequence of pivot choices and therefore return identical results.
SmithForm smith(const Mat& A, i64 N, SmithOptions opts = {});
inline SmithForm smith_serial(const Mat& A, i64 N, SmithOptions opts = {}) {
    opts.parallel = false;
    return smith(A, N, opts);
}

/// Generators (columns) of {x : A x = 0 mod N}.
Mat nullspace(const Mat& A, i64 N);

/// Some x with A x = b mod N, if one exists.
std::optional<Vec> solve(const Mat& A, const Vec& b, i64 N);

/// Below this many rows the elimination loops stay serial.
inline constexpr std::size_t kParallelRowThreshold = 48;

}  // namespace finsheaf
