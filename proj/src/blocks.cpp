#include "finsheaf/derived.hpp"

namespace finsheaf {

namespace {

AbHom reduced_identity(const AbGroup& g) {
    AbHom h = AbHom::identity(g);
    reduce_rows(h.m, g.orders);
    return h;
}

void place(Mat& m, std::size_t r0, std::size_t c0, const Mat& x) {
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) m(r0 + i, c0 + j) += x(i, j);
}

}  // namespace

std::size_t CoskySum::offset(std::size_t p, std::size_t i) const {
    std::size_t o = 0;
    const Poset& P = space->poset;
    for (std::size_t k = 0; k < i; ++k)
        if (P.leq(p, anchor[k])) o += mods[k].rank();
    return o;
}

CoskySum cosky_sum(const SpacePtr& X, std::vector<std::size_t> anchor, std::vector<FiniteModule> mods) {
    std::vector<SheafPtr> parts;
    for (std::size_t i = 0; i < anchor.size(); ++i) parts.push_back(co_skyscraper(X, anchor[i], mods[i]));
    SheafSum s = direct_sum(X, parts);
    return {X, std::move(anchor), std::move(mods), std::move(s)};
}

SheafMorphism cosky_map(const CoskySum& a, const CoskySum& b, const std::vector<CoskyBlock>& blocks) {
    const Poset& P = a.space->poset;
    SheafMorphism h = SheafMorphism::zero(a.sheaf(), b.sheaf());
    for (const auto& blk : blocks) {
        if (!P.leq(b.anchor[blk.to], a.anchor[blk.from])) throw SheafError("cosky_map: anchors are not ordered");
        for (std::size_t p = 0; p < P.size(); ++p)
            if (P.leq(p, b.anchor[blk.to])) place(h.comp[p].m, b.offset(p, blk.to), a.offset(p, blk.from), blk.h.m);
    }
    for (auto& c : h.comp) reduce_rows(c.m, c.tgt.orders);
    return h;
}

SheafMorphism cosky_map_into(const SheafPtr& M, const CoskySum& b, const std::vector<std::optional<AbHom>>& h) {
    const Poset& P = M->space->poset;
    SheafMorphism f = SheafMorphism::zero(M, b.sheaf());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!h[i]) continue;
        for (std::size_t p = 0; p < P.size(); ++p)
            if (P.leq(p, b.anchor[i])) place(f.comp[p].m, b.offset(p, i), 0, compose(*h[i], M->r(p, b.anchor[i])).m);
    }
    for (auto& c : f.comp) reduce_rows(c.m, c.tgt.orders);
    return f;
}

SheafMorphism cosky_map_out(const CoskySum& a, const SheafPtr& N,
                            const std::function<std::optional<AbHom>(std::size_t, std::size_t)>& comp) {
    const Poset& P = a.space->poset;
    SheafMorphism f = SheafMorphism::zero(a.sheaf(), N);
    for (std::size_t p = 0; p < P.size(); ++p) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!P.leq(p, a.anchor[i])) continue;
            if (auto h = comp(p, i)) place(f.comp[p].m, 0, a.offset(p, i), h->m);
        }
        reduce_rows(f.comp[p].m, f.comp[p].tgt.orders);
    }
    return f;
}

Piece make_piece(const SheafPtr& F, const OpenSet& U) {
    const RingedSpace& X = *F->space;
    const std::size_t n = X.size();
    Piece pc{F, U, {}, nullptr};
    SheafModule S{F->space, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) {
        pc.sec.push_back(sections(*F, intersect(X.poset.up_set(p), U)));
        std::vector<RingHom> to;
        for (std::size_t w : pc.sec[p].points) to.push_back(X.r(p, w));
        S.stalk.push_back(sections_module(*F, pc.sec[p], X.rings[p], to));
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (X.poset.leq(p, q)) S.r(p, q) = restrict_sections(*F, pc.sec[p], pc.sec[q]);
    pc.sheaf = share(std::move(S));
    return pc;
}

SheafMorphism piece_map(const Piece& a, const Piece& b, const std::optional<SheafMorphism>& g) {
    if (!subset(b.U, a.U)) throw SheafError("piece_map: open sets are not nested");
    SheafMorphism h{a.sheaf, b.sheaf, {}};
    for (std::size_t p = 0; p < a.sec.size(); ++p) {
        if (!g) {
            h.comp.push_back(restrict_sections(*a.F, a.sec[p], b.sec[p]));
            continue;
        }
        Sections mid = sections(*a.F, intersect(a.F->space->poset.up_set(p), b.U));
        h.comp.push_back(compose(sections_map(*g, mid, b.sec[p]), restrict_sections(*a.F, a.sec[p], mid)));
    }
    return h;
}

SheafMorphism piece_unit(const SheafPtr& M, const Piece& b, const std::optional<SheafMorphism>& g) {
    SheafMorphism h{M, b.sheaf, {}};
    for (std::size_t p = 0; p < b.sec.size(); ++p) {
        const Sections& s = b.sec[p];
        AbHom amb = AbHom::zero(M->stalk[p].group, s.ambient);
        for (std::size_t k = 0; k < s.points.size(); ++k) {
            const std::size_t w = s.points[k];
            AbHom c = g ? compose(g->comp[w], M->r(p, w)) : M->r(p, w);
            place(amb.m, s.offsets[k], 0, c.m);
        }
        reduce_rows(amb.m, s.ambient.orders);
        h.comp.push_back(factor_through(amb, s.sub.incl));
    }
    return h;
}

TildeExt tilde_ext(const SpacePtr& X, std::size_t x, const FiniteModule& A) {
    const std::size_t n = X->size();
    const Poset& P = X->poset;
    TildeExt t{x, A, std::vector<std::optional<BaseChange>>(n), nullptr};
    SheafModule T{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t q = 0; q < n; ++q) {
        if (P.leq(x, q)) {
            t.bc[q] = base_change(A, X->r(x, q));
            T.stalk.push_back(t.bc[q]->module);
        } else {
            T.stalk.push_back(FiniteModule::zero(X->rings[q]));
        }
    }
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t q2 = 0; q2 < n; ++q2) {
            if (!P.leq(q, q2)) continue;
            if (!t.bc[q]) {
                T.r(q, q2) = AbHom::zero(T.stalk[q].group, T.stalk[q2].group);
                continue;
            }
            const RingHom& rq = X->r(q, q2);
            const FiniteRing& Oq = *X->rings[q];
            const BaseChange& tgt = *t.bc[q2];
            auto beta = [&](std::size_t i, std::size_t j) {
                Vec a(A.rank(), 0);
                a[i] = 1;
                return tgt.t.pure(a, rq.apply(Oq.basis(j)));
            };
            T.r(q, q2) = from_bilinear(t.bc[q]->t, T.stalk[q2].group, beta);
        }
    t.sheaf = share(std::move(T));
    return t;
}

SheafMorphism tilde_map(const TildeExt& a, const TildeExt& b, const AbHom& h) {
    const RingedSpace& X = *a.sheaf->space;
    SheafMorphism g = SheafMorphism::zero(a.sheaf, b.sheaf);
    for (std::size_t q = 0; q < X.size(); ++q) {
        if (!a.bc[q] || !b.bc[q]) continue;
        const BaseChange& tb = *b.bc[q];
        const Vec one = X.rings[q]->one;
        AbHom unit = hom_from_images(b.A.group, tb.module.group, [&](std::size_t i) {
            Vec e(b.A.rank(), 0);
            e[i] = 1;
            return tb.t.pure(e, one);
        });
        g.comp[q] = base_change_adjoint(*a.bc[q], tb.module, compose(unit, h)).f;
    }
    return g;
}

ModHom tilde_counit(const TildeExt& a) { return base_change_adjoint(*a.bc[a.x], a.A, reduced_identity(a.A.group)); }

ComplexMorphism total_map(const Bicomplex& A, const Total& TA, const Bicomplex& B, const Total& TB,
                          const std::function<std::optional<SheafMorphism>(int, int)>& block) {
    ComplexMorphism F{TA.cx, TB.cx, TA.cx.lo, {}};
    for (int n = TA.cx.lo; n <= TA.cx.hi(); ++n) {
        SheafMorphism h = SheafMorphism::zero(TA.cx.at(n), TB.cx.at(n));
        if (n >= TB.cx.lo && n <= TB.cx.hi()) {
            for (std::size_t i = 0; i < A.rows(); ++i) {
                const int p = A.p0 + static_cast<int>(i), q = n - p;
                if (q < A.q0 || q >= A.q0 + static_cast<int>(A.cols())) continue;
                if (p < B.p0 || p >= B.p0 + static_cast<int>(B.rows())) continue;
                if (q < B.q0 || q >= B.q0 + static_cast<int>(B.cols())) continue;
                auto b = block(p, q);
                if (!b) continue;
                const auto& sa = TA.sums[n - TA.cx.lo];
                const auto& sb = TB.sums[n - TB.cx.lo];
                h = add(h, compose(sb.inj[TB.index(B, p, q)], compose(*b, sa.proj[TA.index(A, p, q)])));
            }
        }
        F.f.push_back(h);
    }
    return F;
}

}  // namespace finsheaf
