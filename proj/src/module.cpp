#include "finsheaf/module.hpp"

#include <algorithm>

namespace finsheaf {

namespace {

i64 modulus_of(const AbGroup& a, const AbGroup& b) { return std::max<i64>(1, lcm64(a.exponent(), b.exponent())); }

// g o m o f as a matrix, reduced by the target orders.
Mat sandwich(const Mat& g, const Mat& m, const Mat& f, const AbGroup& tgt, i64 N) {
    Mat r = mul(mul(g, m, N), f, N);
    reduce_rows(r, tgt.orders);
    return r;
}

Mat dual_matrix(const AbGroup& A, const AbGroup& B, const Mat& f) {
    // f: A -> B; the dual B^ -> A^ in character coordinates.
    Mat d(A.rank(), B.rank());
    for (std::size_t j = 0; j < A.rank(); ++j)
        for (std::size_t i = 0; i < B.rank(); ++i) {
            i64 v = mod(f(i, j), B.orders[i]);
            d(j, i) = mod(A.orders[j] * v / B.orders[i], A.orders[j]);
        }
    return d;
}

// R-span of the columns: all e_k * x.
Mat module_span(const FiniteModule& M, const Mat& gens) {
    std::vector<Vec> cols;
    const i64 N = std::max<i64>(1, M.group.exponent());
    for (std::size_t c = 0; c < gens.cols; ++c) {
        Vec x = gens.col(c);
        for (const Mat& a : M.act) {
            Vec y = mul(a, x, N);
            reduce(y, M.group.orders);
            cols.push_back(y);
        }
    }
    return Mat::from_cols(cols, M.rank());
}

struct QuotientModule {
    ModHom proj;
    Mat lift;
};

QuotientModule quotient_full(const FiniteModule& M, const Mat& gens) {
    Quotient q = quotient(M.group, module_span(M, gens));
    FiniteModule Q{M.ring, q.group, {}};
    const i64 N = std::max<i64>(1, M.group.exponent());
    for (const Mat& a : M.act) Q.act.push_back(sandwich(q.proj.m, a, q.lift, Q.group, N));
    return {ModHom{M, Q, q.proj}, q.lift};
}

FiniteModule sub_module(const FiniteModule& M, const Sub& s) {
    FiniteModule S{M.ring, s.group, {}};
    for (const Mat& a : M.act) S.act.push_back(factor_through(compose(AbHom{M.group, M.group, a}, s.incl), s.incl).m);
    return S;
}

}  // namespace

Mat FiniteModule::action(const Vec& r) const {
    Mat m(rank(), rank());
    const i64 N = std::max<i64>(1, group.exponent());
    for (std::size_t k = 0; k < act.size(); ++k) {
        if (r[k] == 0) continue;
        for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = (m.a[i] + r[k] % N * act[k].a[i]) % N;
    }
    reduce_rows(m, group.orders);
    return m;
}

Vec FiniteModule::scalar(const Vec& r, const Vec& x) const {
    Vec y = mul(action(r), x, std::max<i64>(1, group.exponent()));
    reduce(y, group.orders);
    return y;
}

void FiniteModule::validate() const {
    const FiniteRing& R = *ring;
    if (act.size() != R.rank()) throw ModuleError("module: one action matrix per ring generator expected");
    for (std::size_t k = 0; k < act.size(); ++k) {
        if (act[k].rows != rank() || act[k].cols != rank()) throw ModuleError("module: action matrix has the wrong shape");
        AbHom h{group, group, act[k]};
        if (!h.well_defined()) throw ModuleError("module: action is not additive");
        if (!scale(h, R.add.orders[k]).is_zero()) throw ModuleError("module: action ignores the ring's additive orders");
    }
    const i64 N = std::max<i64>(1, group.exponent());
    for (std::size_t i = 0; i < act.size(); ++i)
        for (std::size_t j = 0; j < act.size(); ++j) {
            Mat p = mul(act[i], act[j], N);
            reduce_rows(p, group.orders);
            if (p != action(R.table[i][j])) throw ModuleError("module: action is not multiplicative");
        }
    Mat id = Mat::identity(rank());
    reduce_rows(id, group.orders);
    if (action(R.one) != id) throw ModuleError("module: one does not act as the identity");
}

FiniteModule FiniteModule::zero(const RingPtr& R) {
    return {R, {}, std::vector<Mat>(R->rank(), Mat())};
}

FiniteModule FiniteModule::free(const RingPtr& R, std::size_t g) {
    FiniteModule F{R, {}, {}};
    for (std::size_t l = 0; l < g; ++l) F.group.orders.insert(F.group.orders.end(), R->add.orders.begin(), R->add.orders.end());
    const std::size_t n = R->rank();
    for (std::size_t k = 0; k < n; ++k) {
        Mat L = R->left_mult(R->basis(k));
        Mat a(g * n, g * n);
        for (std::size_t l = 0; l < g; ++l)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) a(l * n + i, l * n + j) = L(i, j);
        F.act.push_back(a);
    }
    return F;
}

bool ModHom::is_linear() const {
    if (!f.well_defined()) return false;
    for (std::size_t k = 0; k < src.act.size(); ++k)
        if (compose(f, AbHom{src.group, src.group, src.act[k]}).m != compose(AbHom{tgt.group, tgt.group, tgt.act[k]}, f).m)
            return false;
    return true;
}

ModHom ModHom::zero(const FiniteModule& a, const FiniteModule& b) { return {a, b, AbHom::zero(a.group, b.group)}; }

ModHom ModHom::identity(const FiniteModule& a) {
    AbHom id = AbHom::identity(a.group);
    reduce_rows(id.m, a.group.orders);
    return {a, a, id};
}

ModHom compose(const ModHom& g, const ModHom& f) { return {f.src, g.tgt, compose(g.f, f.f)}; }
ModHom add(const ModHom& f, const ModHom& g) { return {f.src, f.tgt, add(f.f, g.f)}; }
ModHom negate(const ModHom& f) { return {f.src, f.tgt, negate(f.f)}; }

FiniteModule from_presentation(const RingPtr& R, std::size_t g, const std::vector<std::vector<Vec>>& relations) {
    FiniteModule F = FiniteModule::free(R, g);
    std::vector<Vec> cols;
    for (const auto& rel : relations) {
        if (rel.size() != g) throw ModuleError("relation has the wrong number of entries");
        Vec x;
        for (const Vec& r : rel) {
            if (r.size() != R->rank()) throw ModuleError("relation entry is not a ring element");
            x.insert(x.end(), r.begin(), r.end());
        }
        reduce(x, F.group.orders);
        cols.push_back(x);
    }
    return quotient(F, Mat::from_cols(cols, F.rank())).tgt;
}

ModHom submodule(const FiniteModule& M, const Mat& gens) {
    Sub s = subgroup(M.group, module_span(M, gens));
    return {sub_module(M, s), M, s.incl};
}

ModHom quotient(const FiniteModule& M, const Mat& gens) { return quotient_full(M, gens).proj; }

ModHom kernel(const ModHom& f) {
    Sub s = kernel(f.f);
    return {sub_module(f.src, s), f.src, s.incl};
}

ModHom image(const ModHom& f) {
    Sub s = image(f.f);
    return {sub_module(f.tgt, s), f.tgt, s.incl};
}

ModHom cokernel(const ModHom& f) { return quotient_full(f.tgt, f.f.m).proj; }

Mat cokernel_lift(const ModHom& f) { return quotient_full(f.tgt, f.f.m).lift; }

ModHom factor_through(const ModHom& g, const ModHom& incl) { return {g.src, incl.src, factor_through(g.f, incl.f)}; }

ModHom factor_from(const ModHom& g, const ModHom& proj) {
    AbHom h = AbHom::zero(proj.tgt.group, g.tgt.group);
    for (std::size_t j = 0; j < proj.tgt.rank(); ++j) {
        Vec e(proj.tgt.rank(), 0);
        e[j] = 1;
        auto x = preimage(proj.f, e);
        if (!x) throw std::logic_error("factor_from: map is not surjective");
        h.m.set_col(j, g.f.apply(*x));
    }
    if (compose(h, proj.f).m != g.f.m) throw std::logic_error("factor_from: map does not vanish on the kernel");
    return {proj.tgt, g.tgt, h};
}

DirectSum direct_sum(const std::vector<FiniteModule>& parts, const RingPtr& R) {
    DirectSum d;
    d.module = FiniteModule::zero(R);
    std::vector<AbGroup> gs;
    for (const auto& p : parts) gs.push_back(p.group);
    d.module.group = AbGroup::sum(gs);
    const std::size_t n = d.module.rank();
    for (std::size_t k = 0; k < R->rank(); ++k) {
        Mat a(n, n);
        std::size_t off = 0;
        for (const auto& p : parts) {
            for (std::size_t i = 0; i < p.rank(); ++i)
                for (std::size_t j = 0; j < p.rank(); ++j) a(off + i, off + j) = p.act[k](i, j);
            off += p.rank();
        }
        d.module.act[k] = a;
    }
    std::size_t off = 0;
    for (const auto& p : parts) {
        ModHom in = ModHom::zero(p, d.module), pr = ModHom::zero(d.module, p);
        for (std::size_t i = 0; i < p.rank(); ++i) {
            in.f.m(off + i, i) = 1;
            pr.f.m(i, off + i) = 1;
        }
        d.inj.push_back(in);
        d.proj.push_back(pr);
        off += p.rank();
    }
    return d;
}

ModHom block_map(const DirectSum& a, const DirectSum& b, const std::vector<std::vector<std::optional<ModHom>>>& blocks) {
    ModHom h = ModHom::zero(a.module, b.module);
    std::size_t roff = 0;
    for (std::size_t i = 0; i < b.inj.size(); ++i) {
        std::size_t coff = 0;
        for (std::size_t j = 0; j < a.inj.size(); ++j) {
            if (blocks[i][j]) {
                const Mat& m = blocks[i][j]->f.m;
                for (std::size_t r = 0; r < m.rows; ++r)
                    for (std::size_t c = 0; c < m.cols; ++c) h.f.m(roff + r, coff + c) = m(r, c);
            }
            coff += a.inj[j].src.rank();
        }
        roff += b.inj[i].src.rank();
    }
    return h;
}

FiniteModule restrict_scalars(const FiniteModule& M, const RingHom& phi) {
    FiniteModule R{phi.src, M.group, {}};
    for (std::size_t k = 0; k < phi.src->rank(); ++k) R.act.push_back(M.action(phi.apply(phi.src->basis(k))));
    return R;
}

ModHom restrict_scalars(const ModHom& f, const RingHom& phi) {
    return {restrict_scalars(f.src, phi), restrict_scalars(f.tgt, phi), f.f};
}

Vec Tensor::pure(const Vec& a, const Vec& b) const {
    Vec v(left.rank() * right.rank());
    for (std::size_t i = 0; i < left.rank(); ++i)
        for (std::size_t j = 0; j < right.rank(); ++j) {
            const std::size_t c = i * right.rank() + j;
            v[c] = mod(a[i] * b[j], q.proj.src.orders[c]);
        }
    return q.proj.apply(v);
}

Tensor tensor(const FiniteModule& A, const FiniteModule& B) {
    Tensor T;
    T.left = A;
    T.right = B;
    const std::size_t na = A.rank(), nb = B.rank();
    AbGroup amb{tensor_orders(A.group, B.group)};
    std::vector<Vec> rels;
    for (std::size_t k = 0; k < A.act.size(); ++k)
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nb; ++j) {
                Vec v(na * nb, 0);
                for (std::size_t p = 0; p < na; ++p) v[p * nb + j] += A.act[k](p, i);
                for (std::size_t q = 0; q < nb; ++q) v[i * nb + q] -= B.act[k](q, j);
                reduce(v, amb.orders);
                rels.push_back(v);
            }
    T.q = quotient(amb, Mat::from_cols(rels, na * nb));
    T.module = FiniteModule{A.ring, T.q.group, {}};
    const i64 N = std::max<i64>(1, amb.exponent());
    for (std::size_t k = 0; k < A.act.size(); ++k) {
        Mat m(na * nb, na * nb);
        for (std::size_t p = 0; p < na; ++p)
            for (std::size_t i = 0; i < na; ++i)
                for (std::size_t j = 0; j < nb; ++j) m(p * nb + j, i * nb + j) = A.act[k](p, i);
        T.module.act.push_back(sandwich(T.q.proj.m, m, T.q.lift, T.module.group, N));
    }
    return T;
}

AbHom from_bilinear(const Tensor& T, const AbGroup& C, const std::function<Vec(std::size_t, std::size_t)>& beta) {
    const std::size_t na = T.left.rank(), nb = T.right.rank();
    Mat amb(C.rank(), na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            if (T.q.proj.src.orders[i * nb + j] > 1) amb.set_col(i * nb + j, beta(i, j));
    const i64 N = std::max<i64>(1, lcm64(C.exponent(), T.q.proj.src.exponent()));
    Mat m = mul(amb, T.q.lift, N);
    reduce_rows(m, C.orders);
    return {T.module.group, C, m};
}

ModHom tensor_maps(const Tensor& s, const Tensor& t, const ModHom& f, const ModHom& g) {
    auto beta = [&](std::size_t i, std::size_t j) {
        return t.pure(f.f.m.col(i), g.f.m.col(j));
    };
    return {s.module, t.module, from_bilinear(s, t.module.group, beta)};
}

BaseChange base_change(const FiniteModule& A, const RingHom& phi) {
    BaseChange bc;
    bc.phi = phi;
    const RingPtr& S = phi.tgt;
    FiniteModule Sres = restrict_scalars(FiniteModule::free(S, 1), phi);
    bc.t = tensor(A, Sres);
    bc.module = FiniteModule{S, bc.t.module.group, {}};
    ModHom idA = ModHom::identity(A);
    for (std::size_t l = 0; l < S->rank(); ++l) {
        ModHom ml{Sres, Sres, AbHom{Sres.group, Sres.group, S->left_mult(S->basis(l))}};
        bc.module.act.push_back(tensor_maps(bc.t, bc.t, idA, ml).f.m);
    }
    return bc;
}

ModHom base_change_adjoint(const BaseChange& bc, const FiniteModule& B, const AbHom& g) {
    const FiniteRing& S = *bc.phi.tgt;
    auto beta = [&](std::size_t i, std::size_t j) { return B.scalar(S.basis(j), g.m.col(i)); };
    return {bc.module, B, from_bilinear(bc.t, B.group, beta)};
}

ModHom base_change_map(const BaseChange& a, const BaseChange& b, const ModHom& f) {
    ModHom m = tensor_maps(a.t, b.t, f, ModHom::identity(a.t.right));
    return {a.module, b.module, m.f};
}

Mat HomModule::to_matrix(const Vec& x) const { return hz.to_matrix(incl.apply(x)); }

Vec HomModule::from_matrix(const Mat& m) const {
    auto x = preimage(incl, hz.from_matrix(m));
    if (!x) throw std::logic_error("HomModule: matrix is not a module map");
    return *x;
}

ModHom HomModule::to_hom(const Vec& x) const { return {a, b, AbHom{a.group, b.group, to_matrix(x)}}; }

HomModule hom_module(const FiniteModule& A, const FiniteModule& B) {
    HomModule h{FiniteModule::zero(A.ring), A, B, HomZ(A.group, B.group), {}};
    const std::size_t nh = h.hz.group.rank();
    const std::size_t na = A.rank(), nb = B.rank();
    AbGroup cons;
    for (std::size_t k = 0; k < A.act.size(); ++k)
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < na; ++j) cons.orders.push_back(B.group.orders[i]);
    AbHom c = AbHom::zero(h.hz.group, cons);
    const i64 N = modulus_of(A.group, B.group);
    for (std::size_t col = 0; col < nh; ++col) {
        Vec e(nh, 0);
        e[col] = 1;
        Mat phi = h.hz.to_matrix(e);
        for (std::size_t k = 0; k < A.act.size(); ++k) {
            Mat l = mul(B.act[k], phi, N), r = mul(phi, A.act[k], N);
            for (std::size_t i = 0; i < nb; ++i)
                for (std::size_t j = 0; j < na; ++j)
                    c.m((k * nb + i) * na + j, col) = mod(l(i, j) - r(i, j), B.group.orders[i]);
        }
    }
    Sub s = kernel(c);
    h.incl = s.incl;
    h.module.group = s.group;
    for (std::size_t k = 0; k < A.act.size(); ++k) {
        AbHom post = AbHom::zero(h.hz.group, h.hz.group);
        for (std::size_t col = 0; col < nh; ++col) {
            Vec e(nh, 0);
            e[col] = 1;
            post.m.set_col(col, h.hz.from_matrix(mul(B.act[k], h.hz.to_matrix(e), N)));
        }
        h.module.act[k] = factor_through(compose(post, s.incl), s.incl).m;
    }
    return h;
}

Coinduced coinduce(const FiniteModule& A, const RingHom& phi) {
    const RingPtr& S = phi.tgt;
    FiniteModule Sres = restrict_scalars(FiniteModule::free(S, 1), phi);
    Coinduced c{hom_module(Sres, A), FiniteModule{S, {}, {}}, phi};
    c.module.group = c.h.module.group;
    const i64 N = modulus_of(Sres.group, A.group);
    for (std::size_t l = 0; l < S->rank(); ++l) {
        Mat L = S->left_mult(S->basis(l));
        AbHom a = AbHom::zero(c.module.group, c.module.group);
        for (std::size_t x = 0; x < c.module.rank(); ++x) {
            Vec e(c.module.rank(), 0);
            e[x] = 1;
            Mat m = mul(c.h.to_matrix(e), L, N);
            reduce_rows(m, A.group.orders);
            a.m.set_col(x, c.h.from_matrix(m));
        }
        c.module.act.push_back(a.m);
    }
    return c;
}

FiniteModule dual(const FiniteModule& M) {
    FiniteModule D{M.ring, M.group, {}};
    for (const Mat& a : M.act) D.act.push_back(dual_matrix(M.group, M.group, a));
    return D;
}

ModHom dual(const ModHom& f) {
    return {dual(f.tgt), dual(f.src), AbHom{f.tgt.group, f.src.group, dual_matrix(f.src.group, f.tgt.group, f.f.m)}};
}

ModHom injective_embedding(const FiniteModule& M) {
    const RingPtr& R = M.ring;
    FiniteModule D = dual(M);
    std::vector<Vec> gens;
    for (std::size_t c = 0; c < D.rank(); ++c) {
        Vec e(D.rank(), 0);
        e[c] = 1;
        ModHom s = submodule(D, Mat::from_cols(gens, D.rank()));
        if (!preimage(s.f, e)) gens.push_back(e);
    }
    FiniteModule F = FiniteModule::free(R, gens.size());
    ModHom pi = ModHom::zero(F, D);
    const std::size_t n = R->rank();
    for (std::size_t l = 0; l < gens.size(); ++l)
        for (std::size_t k = 0; k < n; ++k) pi.f.m.set_col(l * n + k, D.scalar(R->basis(k), gens[l]));
    ModHom iota = dual(pi);
    return {M, iota.tgt, AbHom{M.group, iota.tgt.group, iota.f.m}};
}

bool is_flat(const FiniteModule& M) {
    const RingPtr& R = M.ring;
    FiniteModule Rm = FiniteModule::free(R, 1);
    for (const Sub& I : ideals(*R)) {
        ModHom inc = submodule(Rm, I.incl.m);
        Tensor T = tensor(inc.src, M);
        auto beta = [&](std::size_t i, std::size_t j) {
            Vec e(M.rank(), 0);
            e[j] = 1;
            return M.scalar(inc.f.m.col(i), e);
        };
        if (!is_injective(from_bilinear(T, M.group, beta))) return false;
    }
    return true;
}

bool is_injective_module(const FiniteModule& M) {
    const RingPtr& R = M.ring;
    FiniteModule Rm = FiniteModule::free(R, 1);
    HomModule full = hom_module(Rm, M);
    for (const Sub& I : ideals(*R)) {
        ModHom inc = submodule(Rm, I.incl.m);
        HomModule part = hom_module(inc.src, M);
        AbHom res = AbHom::zero(full.module.group, part.module.group);
        const i64 N = modulus_of(Rm.group, M.group);
        for (std::size_t x = 0; x < full.module.rank(); ++x) {
            Vec e(full.module.rank(), 0);
            e[x] = 1;
            Mat m = mul(full.to_matrix(e), inc.f.m, N);
            reduce_rows(m, M.group.orders);
            res.m.set_col(x, part.from_matrix(m));
        }
        if (!is_surjective(res)) return false;
    }
    return true;
}

bool is_isomorphic(const FiniteModule& A, const FiniteModule& B, std::size_t cap) {
    if (A.group.invariants() != B.group.invariants()) return false;
    if (A.is_zero()) return true;
    HomModule h = hom_module(A, B);
    for (const Vec& x : enumerate(h.module.group, cap))
        if (is_iso(AbHom{A.group, B.group, h.to_matrix(x)})) return true;
    return false;
}

}  // namespace finsheaf
