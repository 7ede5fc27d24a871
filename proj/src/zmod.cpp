#include "finsheaf/zmod.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace finsheaf {

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

i64 lcm64(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

i64 mod(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

namespace {

// s*a + t*b = g = gcd(a, b) with a, b >= 0.
void ext_gcd(i64 a, i64 b, i64& g, i64& s, i64& t) {
    i64 old_r = a, r = b, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * ss; old_s = ss; ss = tmp;
        tmp = old_t - q * tt; old_t = tt; tt = tmp;
    }
    g = old_r; s = old_s; t = old_t;
}

// A unit u of Z/N with u * v = gcd(v, N) mod N.
i64 normalizing_unit(i64 v, i64 N) {
    i64 g = std::gcd(v, N);
    i64 np = N / g;
    i64 u0 = np == 1 ? 1 : inv_mod(mod(v / g, np), np);
    for (i64 k = 0;; ++k) {
        i64 u = u0 + k * np;
        if (std::gcd(u, N) == 1) return mod(u, N);
    }
}

}  // namespace

i64 inv_mod(i64 a, i64 n) {
    if (n == 1) return 0;
    i64 g, s, t;
    ext_gcd(mod(a, n), n, g, s, t);
    if (g != 1) throw std::domain_error("inv_mod: not a unit");
    return mod(s, n);
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rs, std::size_t c) {
    Mat m(rs.size(), c);
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rs[i].at(j);
    return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cs, std::size_t r) {
    Mat m(r, cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j) m.set_col(j, cs[j]);
    return m;
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v.at(i);
}

Mat mul(const Mat& x, const Mat& y, i64 n) {
    if (x.cols != y.rows) throw std::invalid_argument("mul: shape mismatch");
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            i64 xv = x(i, k);
            if (xv == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) = (z(i, j) + xv * y(k, j)) % n;
        }
    for (auto& v : z.a) v = mod(v, n);
    return z;
}

Vec mul(const Mat& x, const Vec& v, i64 n) {
    if (x.cols != v.size()) throw std::invalid_argument("mul: shape mismatch");
    Vec r(x.rows, 0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        i64 s = 0;
        for (std::size_t k = 0; k < x.cols; ++k) s = (s + x(i, k) * v[k]) % n;
        r[i] = mod(s, n);
    }
    return r;
}

Mat hcat(const Mat& x, const Mat& y) {
    if (x.rows != y.rows) throw std::invalid_argument("hcat: row mismatch");
    Mat z(x.rows, x.cols + y.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t j = 0; j < x.cols; ++j) z(i, j) = x(i, j);
        for (std::size_t j = 0; j < y.cols; ++j) z(i, x.cols + j) = y(i, j);
    }
    return z;
}

Mat vcat(const Mat& x, const Mat& y) {
    if (x.cols != y.cols) throw std::invalid_argument("vcat: column mismatch");
    Mat z(x.rows + y.rows, x.cols);
    std::copy(x.a.begin(), x.a.end(), z.a.begin());
    std::copy(y.a.begin(), y.a.end(), z.a.begin() + static_cast<std::ptrdiff_t>(x.a.size()));
    return z;
}

void reduce_rows(Mat& m, const Vec& orders) {
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = mod(m(i, j), orders[i]);
}

void reduce(Vec& v, const Vec& orders) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(v[i], orders[i]);
}

namespace {

class Smither {
public:
    Smither(const Mat& A, i64 N, SmithOptions o) : W(A), N(N), opt(o) {
        for (auto& v : W.a) v = mod(v, N);
        if (opt.want_p) { P = Mat::identity(W.rows); Pinv = P; }
        if (opt.want_q) { Q = Mat::identity(W.cols); Qinv = Q; }
    }

    SmithForm run() {
        const std::size_t r = std::min(W.rows, W.cols);
        SmithForm out;
        out.modulus = N;
        out.diag.assign(r, N);
        for (std::size_t t = 0; t < r; ++t) {
            if (!place_pivot(t)) break;
            reduce_pivot(t);
            i64 p = W(t, t);
            out.diag[t] = p == 0 ? N : std::gcd(p, N);
        }
        out.P = std::move(P); out.Pinv = std::move(Pinv);
        out.Q = std::move(Q); out.Qinv = std::move(Qinv);
        return out;
    }

private:
    Mat W;
    i64 N;
    SmithOptions opt;
    Mat P, Pinv, Q, Qinv;

    bool par(std::size_t n) const { return opt.parallel && n >= kParallelRowThreshold; }

    bool place_pivot(std::size_t t) {
        i64 best = 0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < W.rows; ++i)
            for (std::size_t j = t; j < W.cols; ++j) {
                i64 v = W(i, j);
                if (v == 0) continue;
                i64 g = std::gcd(v, N);
                if (best == 0 || g < best) { best = g; bi = i; bj = j; }
            }
        if (best == 0) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < W.cols; ++j) std::swap(W(i, j), W(k, j));
        if (opt.want_p) {
            for (std::size_t j = 0; j < P.cols; ++j) std::swap(P(i, j), P(k, j));
            for (std::size_t j = 0; j < Pinv.rows; ++j) std::swap(Pinv(j, i), Pinv(j, k));
        }
    }

    void swap_cols(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < W.rows; ++j) std::swap(W(j, i), W(j, k));
        if (opt.want_q) {
            for (std::size_t j = 0; j < Q.rows; ++j) std::swap(Q(j, i), Q(j, k));
            for (std::size_t j = 0; j < Qinv.cols; ++j) std::swap(Qinv(i, j), Qinv(k, j));
        }
    }

    void scale_row(std::size_t t, i64 u) {
        for (std::size_t j = 0; j < W.cols; ++j) W(t, j) = W(t, j) * u % N;
        if (opt.want_p) {
            i64 ui = inv_mod(u, N);
            for (std::size_t j = 0; j < P.cols; ++j) P(t, j) = P(t, j) * u % N;
            for (std::size_t j = 0; j < Pinv.rows; ++j) Pinv(j, t) = Pinv(j, t) * ui % N;
        }
    }

    // Rows (t, i) <- [[s, tc], [-y, x]] (rows t, i), determinant one.
    void gcd_rows(std::size_t t, std::size_t i) {
        i64 a = W(t, t), b = W(i, t), g, s, tc;
        ext_gcd(a, b, g, s, tc);
        i64 x = a / g, y = b / g;
        s = mod(s, N); tc = mod(tc, N);
        i64 xm = mod(x, N), ym = mod(-y, N);
        auto mix = [&](Mat& m) {
            for (std::size_t j = 0; j < m.cols; ++j) {
                i64 u = m(t, j), v = m(i, j);
                m(t, j) = (s * u + tc * v) % N;
                m(i, j) = (ym * u + xm * v) % N;
            }
        };
        mix(W);
        if (opt.want_p) {
            mix(P);
            i64 yy = mod(y, N), mt = mod(-tc, N);
            for (std::size_t j = 0; j < Pinv.rows; ++j) {
                i64 u = Pinv(j, t), v = Pinv(j, i);
                Pinv(j, t) = (xm * u + yy * v) % N;
                Pinv(j, i) = (mt * u + s * v) % N;
            }
        }
    }

    void gcd_cols(std::size_t t, std::size_t k) {
        i64 a = W(t, t), b = W(t, k), g, s, tc;
        ext_gcd(a, b, g, s, tc);
        i64 x = a / g, y = b / g;
        s = mod(s, N); tc = mod(tc, N);
        i64 xm = mod(x, N), ym = mod(-y, N);
        auto mix = [&](Mat& m) {
            for (std::size_t j = 0; j < m.rows; ++j) {
                i64 u = m(j, t), v = m(j, k);
                m(j, t) = (s * u + tc * v) % N;
                m(j, k) = (ym * u + xm * v) % N;
            }
        };
        mix(W);
        if (opt.want_q) {
            mix(Q);
            i64 yy = mod(y, N), mt = mod(-tc, N);
            for (std::size_t j = 0; j < Qinv.cols; ++j) {
                i64 u = Qinv(t, j), v = Qinv(k, j);
                Qinv(t, j) = (xm * u + yy * v) % N;
                Qinv(k, j) = (mt * u + s * v) % N;
            }
        }
    }

    // row_i -= c_i * row_t for every i > t.
    void eliminate_rows(std::size_t t, const Vec& c) {
        const std::size_t m = W.rows;
        const bool pp = par(m);
        auto sub = [&](Mat& X) {
#pragma omp parallel for schedule(static) if (pp)
            for (std::size_t i = t + 1; i < m; ++i) {
                i64 ci = c[i];
                if (ci == 0) continue;
                for (std::size_t j = 0; j < X.cols; ++j)
                    X(i, j) = mod(X(i, j) - ci * X(t, j), N);
            }
        };
        sub(W);
        if (opt.want_p) {
            sub(P);
            const std::size_t pr = Pinv.rows;
#pragma omp parallel for schedule(static) if (pp)
            for (std::size_t k = 0; k < pr; ++k) {
                i64 acc = Pinv(k, t);
                for (std::size_t i = t + 1; i < m; ++i)
                    if (c[i] != 0) acc = (acc + c[i] * Pinv(k, i)) % N;
                Pinv(k, t) = acc;
            }
        }
    }

    // col_j -= c_j * col_t for every j > t.
    void eliminate_cols(std::size_t t, const Vec& c) {
        const std::size_t n = W.cols;
        const bool pp = par(std::max(W.rows, n));
        auto sub = [&](Mat& X) {
#pragma omp parallel for schedule(static) if (pp)
            for (std::size_t i = 0; i < X.rows; ++i) {
                i64 xt = X(i, t);
                if (xt == 0) continue;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (c[j] != 0) X(i, j) = mod(X(i, j) - c[j] * xt, N);
            }
        };
        sub(W);
        if (opt.want_q) {
            sub(Q);
            const std::size_t qc = Qinv.cols;
#pragma omp parallel for schedule(static) if (pp)
            for (std::size_t k = 0; k < qc; ++k) {
                i64 acc = Qinv(t, k);
                for (std::size_t j = t + 1; j < n; ++j)
                    if (c[j] != 0) acc = (acc + c[j] * Qinv(j, k)) % N;
                Qinv(t, k) = acc;
            }
        }
    }

    void reduce_pivot(std::size_t t) {
        for (;;) {
            i64 v = W(t, t);
            if (v != std::gcd(v, N)) scale_row(t, normalizing_unit(v, N));
            const i64 g = W(t, t);

            bool dirty = false;
            for (std::size_t i = t + 1; i < W.rows; ++i)
                if (W(i, t) % g != 0) { gcd_rows(t, i); dirty = true; break; }
            if (dirty) continue;
            Vec c(W.rows, 0);
            bool any = false;
            for (std::size_t i = t + 1; i < W.rows; ++i) { c[i] = W(i, t) / g; any |= c[i] != 0; }
            if (any) eliminate_rows(t, c);

            for (std::size_t j = t + 1; j < W.cols; ++j)
                if (W(t, j) % g != 0) { gcd_cols(t, j); dirty = true; break; }
            if (dirty) continue;
            Vec d(W.cols, 0);
            any = false;
            for (std::size_t j = t + 1; j < W.cols; ++j) { d[j] = W(t, j) / g; any |= d[j] != 0; }
            if (any) eliminate_cols(t, d);
            return;
        }
    }
};

}  // namespace

SmithForm smith(const Mat& A, i64 N, SmithOptions opts) {
    if (N < 1) throw std::invalid_argument("smith: modulus must be positive");
    return Smither(A, N, opts).run();
}

Mat nullspace(const Mat& A, i64 N) {
    SmithForm s = smith(A, N, {.want_p = false, .want_q = true});
    const std::size_t n = A.cols, r = s.diag.size();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i) {
        i64 coef = 1;
        if (i < r) {
            coef = N / s.diag[i];
            if (coef == N) continue;  // diagonal unit: y_i must vanish
        }
        Vec g = s.Q.col(i);
        for (auto& x : g) x = mod(x * coef, N);
        gens.push_back(std::move(g));
    }
    return Mat::from_cols(gens, n);
}

std::optional<Vec> solve(const Mat& A, const Vec& b, i64 N) {
    SmithForm s = smith(A, N);
    Vec c = mul(s.P, b, N);
    const std::size_t r = s.diag.size();
    Vec y(A.cols, 0);
    for (std::size_t i = 0; i < A.rows; ++i) {
        if (i < r && s.diag[i] != N) {
            if (c[i] % s.diag[i] != 0) return std::nullopt;
            y[i] = c[i] / s.diag[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return mul(s.Q, y, N);
}

}  // namespace finsheaf
