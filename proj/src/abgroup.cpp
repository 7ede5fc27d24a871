#include "finsheaf/abgroup.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace finsheaf {

i64 AbGroup::exponent() const {
    i64 e = 1;
    for (i64 o : orders) e = lcm64(e, o);
    return e;
}

BigInt AbGroup::order() const {
    BigInt n = 1;
    for (i64 o : orders) n *= o;
    return n;
}

Vec invariant_factors(const Vec& orders) {
    // Split into prime powers, then assemble the chain from the largest down.
    std::map<i64, std::vector<i64>> by_prime;
    for (i64 o : orders) {
        i64 n = o;
        for (i64 p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            i64 q = 1;
            while (n % p == 0) { n /= p; q *= p; }
            by_prime[p].push_back(q);
        }
        if (n > 1) by_prime[n].push_back(n);
    }
    std::size_t len = 0;
    for (auto& [p, v] : by_prime) {
        std::sort(v.begin(), v.end(), std::greater<>());
        len = std::max(len, v.size());
    }
    Vec chain(len, 1);
    for (auto& [p, v] : by_prime)
        for (std::size_t k = 0; k < v.size(); ++k) chain[len - 1 - k] *= v[k];
    return chain;
}

Vec AbGroup::invariants() const { return invariant_factors(orders); }

AbGroup AbGroup::cyclic(i64 n) {
    if (n <= 1) return {};
    return {{n}};
}

AbGroup AbGroup::sum(const std::vector<AbGroup>& parts) {
    AbGroup g;
    for (const auto& p : parts) g.orders.insert(g.orders.end(), p.orders.begin(), p.orders.end());
    return g;
}

AbHom AbHom::zero(const AbGroup& s, const AbGroup& t) { return {s, t, Mat(t.rank(), s.rank())}; }

AbHom AbHom::identity(const AbGroup& g) { return {g, g, Mat::identity(g.rank())}; }

Vec AbHom::apply(const Vec& x) const {
    Vec y(tgt.rank(), 0);
    for (std::size_t i = 0; i < tgt.rank(); ++i) {
        i64 s = 0;
        for (std::size_t j = 0; j < src.rank(); ++j) s = (s + m(i, j) * x[j]) % tgt.orders[i];
        y[i] = mod(s, tgt.orders[i]);
    }
    return y;
}

bool AbHom::well_defined() const {
    if (m.rows != tgt.rank() || m.cols != src.rank()) return false;
    for (std::size_t j = 0; j < src.rank(); ++j)
        for (std::size_t i = 0; i < tgt.rank(); ++i)
            if (mod(m(i, j) * src.orders[j], tgt.orders[i]) != 0) return false;
    return true;
}

bool AbHom::is_zero() const {
    return std::all_of(m.a.begin(), m.a.end(), [](i64 v) { return v == 0; });
}

AbHom compose(const AbHom& g, const AbHom& f) {
    if (g.src.orders != f.tgt.orders) throw std::invalid_argument("compose: middle groups differ");
    AbHom r{f.src, g.tgt, Mat(g.tgt.rank(), f.src.rank())};
    for (std::size_t i = 0; i < g.tgt.rank(); ++i) {
        const i64 o = g.tgt.orders[i];
        for (std::size_t k = 0; k < g.src.rank(); ++k) {
            i64 gv = g.m(i, k);
            if (gv == 0) continue;
            for (std::size_t j = 0; j < f.src.rank(); ++j) r.m(i, j) = (r.m(i, j) + gv * f.m(k, j)) % o;
        }
    }
    return r;
}

AbHom add(const AbHom& f, const AbHom& g) {
    if (f.src.orders != g.src.orders || f.tgt.orders != g.tgt.orders)
        throw std::invalid_argument("add: hom types differ");
    AbHom r = f;
    for (std::size_t i = 0; i < r.m.rows; ++i)
        for (std::size_t j = 0; j < r.m.cols; ++j) r.m(i, j) = mod(f.m(i, j) + g.m(i, j), r.tgt.orders[i]);
    return r;
}

AbHom scale(const AbHom& f, i64 c) {
    AbHom r = f;
    for (std::size_t i = 0; i < r.m.rows; ++i)
        for (std::size_t j = 0; j < r.m.cols; ++j) r.m(i, j) = mod(f.m(i, j) * c, r.tgt.orders[i]);
    return r;
}

AbHom negate(const AbHom& f) { return scale(f, -1); }

AbHom hom_from_images(const AbGroup& src, const AbGroup& tgt, const std::function<Vec(std::size_t)>& image) {
    AbHom h = AbHom::zero(src, tgt);
    for (std::size_t j = 0; j < src.rank(); ++j) {
        Vec v = image(j);
        reduce(v, tgt.orders);
        h.m.set_col(j, v);
    }
    return h;
}

namespace {

Mat diag_of(const AbGroup& G) {
    Mat d(G.rank(), G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) d(i, i) = G.orders[i];
    return d;
}

}  // namespace

Quotient present(i64 N, std::size_t n, const Mat& rels, const AbGroup& ambient) {
    Quotient q;
    if (n == 0) {
        q.proj = AbHom::zero(ambient, {});
        q.lift = Mat(ambient.rank(), 0);
        return q;
    }
    SmithForm s = smith(rels, N, {.want_p = true, .want_q = false});
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        i64 d = i < s.diag.size() ? s.diag[i] : N;
        if (d > 1) { keep.push_back(i); q.group.orders.push_back(d); }
    }
    q.proj = AbHom::zero(ambient, q.group);
    q.lift = Mat(n, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            q.proj.m(k, j) = mod(s.P(keep[k], j), q.group.orders[k]);
            q.lift(j, k) = s.Pinv(j, keep[k]);
        }
    }
    if (!ambient.orders.empty()) reduce_rows(q.lift, ambient.orders);
    return q;
}

Quotient quotient(const AbGroup& G, const Mat& rels) {
    const i64 N = G.exponent();
    return present(N, G.rank(), hcat(diag_of(G), rels), G);
}

Sub subgroup(const AbGroup& G, const Mat& gens) {
    const i64 N = G.exponent();
    const std::size_t k = gens.cols;
    Sub out;
    if (k == 0 || G.rank() == 0) {
        out.incl = AbHom::zero({}, G);
        return out;
    }
    Mat big = hcat(gens, diag_of(G));
    Mat ns = nullspace(big, N);
    Mat rel(k, ns.cols);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < ns.cols; ++j) rel(i, j) = ns(i, j);
    AbGroup free_k{Vec(k, N)};
    Quotient q = present(N, k, rel, free_k);
    out.group = q.group;
    out.incl = AbHom::zero(out.group, G);
    Mat im = mul(gens, q.lift, N);
    reduce_rows(im, G.orders);
    out.incl.m = im;
    return out;
}

Sub kernel(const AbHom& h) {
    const i64 N = lcm64(h.src.exponent(), h.tgt.exponent());
    if (h.src.rank() == 0) return {{}, AbHom::zero({}, h.src)};
    Mat big = hcat(h.m, diag_of(h.tgt));
    Mat ns = nullspace(big, N);
    Mat gens(h.src.rank(), ns.cols);
    for (std::size_t i = 0; i < h.src.rank(); ++i)
        for (std::size_t j = 0; j < ns.cols; ++j) gens(i, j) = mod(ns(i, j), h.src.orders[i]);
    return subgroup(h.src, gens);
}

Sub image(const AbHom& h) { return subgroup(h.tgt, h.m); }

Quotient cokernel(const AbHom& h) { return quotient(h.tgt, h.m); }

bool is_injective(const AbHom& h) { return kernel(h).group.is_zero(); }
bool is_surjective(const AbHom& h) { return cokernel(h).group.is_zero(); }
bool is_iso(const AbHom& h) { return is_injective(h) && is_surjective(h); }

std::optional<Vec> preimage(const AbHom& h, const Vec& y) {
    if (h.tgt.rank() == 0) return Vec(h.src.rank(), 0);
    const i64 N = lcm64(h.src.exponent(), h.tgt.exponent());
    auto x = solve(hcat(h.m, diag_of(h.tgt)), y, N);
    if (!x) return std::nullopt;
    Vec r(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(h.src.rank()));
    reduce(r, h.src.orders);
    return r;
}

AbHom factor_through(const AbHom& g, const AbHom& incl) {
    AbHom f = AbHom::zero(g.src, incl.src);
    if (incl.src.rank() == 0 || g.src.rank() == 0) {
        if (!g.is_zero()) throw std::logic_error("factor_through: image not contained");
        return f;
    }
    const i64 N = lcm64(incl.src.exponent(), incl.tgt.exponent());
    // One factorization of the solve system serves all columns.
    Mat A = hcat(incl.m, diag_of(incl.tgt));
    SmithForm s = smith(A, N);
    const std::size_t r = s.diag.size();
    for (std::size_t j = 0; j < g.src.rank(); ++j) {
        Vec c = mul(s.P, g.m.col(j), N);
        Vec y(A.cols, 0);
        for (std::size_t i = 0; i < A.rows; ++i) {
            if (i < r && s.diag[i] != N) {
                if (c[i] % s.diag[i] != 0) throw std::logic_error("factor_through: image not contained");
                y[i] = c[i] / s.diag[i];
            } else if (c[i] != 0) {
                throw std::logic_error("factor_through: image not contained");
            }
        }
        Vec x = mul(s.Q, y, N);
        for (std::size_t i = 0; i < incl.src.rank(); ++i) f.m(i, j) = mod(x[i], incl.src.orders[i]);
    }
    return f;
}

HomZ::HomZ(const AbGroup& a, const AbGroup& b) : src(a), tgt(b) {
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j) {
            i64 g = gcd64(a.orders[j], b.orders[i]);
            if (g == 1) continue;
            group.orders.push_back(g);
            slot.emplace_back(i, j);
            step.push_back(b.orders[i] / g);
        }
}

Mat HomZ::to_matrix(const Vec& c) const {
    Mat m(tgt.rank(), src.rank());
    for (std::size_t k = 0; k < slot.size(); ++k)
        m(slot[k].first, slot[k].second) = mod(c[k] * step[k], tgt.orders[slot[k].first]);
    return m;
}

Vec HomZ::from_matrix(const Mat& m) const {
    Vec c(slot.size());
    for (std::size_t k = 0; k < slot.size(); ++k) {
        i64 v = mod(m(slot[k].first, slot[k].second), tgt.orders[slot[k].first]);
        if (v % step[k] != 0) throw std::logic_error("HomZ: matrix is not a homomorphism");
        c[k] = mod(v / step[k], group.orders[k]);
    }
    return c;
}

Vec tensor_orders(const AbGroup& A, const AbGroup& B) {
    Vec o;
    o.reserve(A.rank() * B.rank());
    for (i64 a : A.orders)
        for (i64 b : B.orders) o.push_back(gcd64(a, b));
    return o;
}

std::vector<Vec> enumerate(const AbGroup& G, std::size_t cap) {
    if (G.order() > cap) throw std::length_error("enumerate: group exceeds cap");
    std::vector<Vec> out;
    Vec x(G.rank(), 0);
    for (;;) {
        out.push_back(x);
        std::size_t i = 0;
        for (; i < x.size(); ++i) {
            if (++x[i] < G.orders[i]) break;
            x[i] = 0;
        }
        if (i == x.size()) break;
    }
    return out;
}

std::size_t element_index(const AbGroup& G, const Vec& x) {
    std::size_t idx = 0, radix = 1;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        idx += static_cast<std::size_t>(mod(x[i], G.orders[i])) * radix;
        radix *= static_cast<std::size_t>(G.orders[i]);
    }
    return idx;
}

std::string to_string(const BigInt& n) { return n.str(); }

}  // namespace finsheaf
