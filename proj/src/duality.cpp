#include "internal.hpp"

namespace finsheaf {

using namespace detail;

namespace {

Vec unit_vec(std::size_t n, std::size_t j) {
    Vec e(n, 0);
    e[j] = 1;
    return e;
}

AbHom as_hom(const Coinduced& c, const Vec& e) { return {c.h.a.group, c.h.b.group, c.h.to_matrix(e)}; }

// e -> e o R for a ring map R into the ring the coinduced modules are taken along.
AbHom precompose_ring(const Coinduced& from, const Coinduced& to, const RingHom& R) {
    return hom_from_images(from.module.group, to.module.group, [&](std::size_t j) {
        return to.h.from_matrix(compose(as_hom(from, unit_vec(from.module.rank(), j)), R.additive()).m);
    });
}

// e -> g o e.
AbHom postcompose(const Coinduced& from, const Coinduced& to, const AbHom& g) {
    return hom_from_images(from.module.group, to.module.group, [&](std::size_t j) {
        return to.h.from_matrix(compose(g, as_hom(from, unit_vec(from.module.rank(), j))).m);
    });
}

// e -> e(b_k) for the k-th additive generator of the ring.
AbHom evaluation(const Coinduced& c, std::size_t k) {
    return hom_from_images(c.module.group, c.h.b.group,
                           [&](std::size_t j) { return as_hom(c, unit_vec(c.module.rank(), j)).m.col(k); });
}

AbHom rows_of(const AbHom& h, std::size_t off, const AbGroup& tgt) {
    AbHom out = AbHom::zero(h.src, tgt);
    for (std::size_t i = 0; i < tgt.rank(); ++i)
        for (std::size_t j = 0; j < h.src.rank(); ++j) out.m(i, j) = h.m(off + i, j);
    return out;
}

void place(Mat& m, std::size_t r0, std::size_t c0, const Mat& x) {
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) m(r0 + i, c0 + j) += x(i, j);
}

// Compatible families (e_q)_{q <= y}, e_q in Hom_{O_q}(O_x, N_q).
FamilyModule families(const RingedMap& f, const SheafModule& N, std::size_t x, std::size_t y) {
    const RingedSpace &X = *f.source, &Y = *f.target;
    const Poset& PY = Y.poset;
    FamilyModule F;
    F.x = x;
    F.y = y;
    std::vector<FiniteModule> parts;
    std::size_t o = 0;
    for (std::size_t q = 0; q < Y.size(); ++q) {
        if (!PY.leq(q, y)) continue;
        F.qs.push_back(q);
        F.co.push_back(coinduce(N.stalk[q], compose(f.comp[x], Y.r(q, f.assign[x]))));
        parts.push_back(F.co.back().module);
        F.off.push_back(std::exchange(o, o + parts.back().rank()));
    }
    F.ambient = direct_sum(parts, X.rings[x]);
    const AbGroup& amb = F.ambient.module.group;
    const std::size_t nb = X.rings[x]->rank();

    std::vector<AbHom> rows;
    AbGroup tgt;
    for (std::size_t k = 0; k < F.qs.size(); ++k) {
        const std::size_t q = F.qs[k];
        for (std::size_t q2 = 0; q2 < Y.size(); ++q2) {
            if (q2 == q || !PY.leq(q, q2)) continue;
            const auto k2 = std::find(F.qs.begin(), F.qs.end(), q2);
            for (std::size_t b = 0; b < nb; ++b) {
                AbHom c = compose(N.r(q, q2), compose(evaluation(F.co[k], b), F.ambient.proj[k].f));
                if (k2 != F.qs.end()) {
                    const auto j = static_cast<std::size_t>(k2 - F.qs.begin());
                    c = add(c, negate(compose(evaluation(F.co[j], b), F.ambient.proj[j].f)));
                }
                rows.push_back(c);
                tgt.orders.insert(tgt.orders.end(), c.tgt.orders.begin(), c.tgt.orders.end());
            }
        }
    }
    AbHom all = AbHom::zero(amb, tgt);
    std::size_t r0 = 0;
    for (const auto& c : rows) {
        place(all.m, r0, 0, c.m);
        r0 += c.tgt.rank();
    }
    reduce_rows(all.m, tgt.orders);
    F.incl = submodule(F.ambient.module, kernel(all).incl.m);
    return F;
}

}  // namespace

DualityData f_nabla(const RingedMap& f, const SheafComplex& I) {
    const SpacePtr& X = f.source;
    const int dim = static_cast<int>(X->poset.dimension());
    DualityData D;
    D.f = f;
    D.N = I;
    D.dim = dim;
    D.chains = chains_in(X->poset, X->poset.whole());
    const std::size_t rows = D.chains.size(), cols = I.terms.size();
    D.bi = empty_bicomplex(X, I.lo, rows, cols);
    D.bi.p0 = -dim;
    D.terms.assign(rows, {});
    D.fam.assign(rows, {});
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t p = static_cast<std::size_t>(dim) - i;
        for (std::size_t r = 0; r < cols; ++r) {
            std::vector<FamilyModule> fams;
            std::vector<std::size_t> anchor;
            std::vector<FiniteModule> mods;
            for (const auto& c : D.chains[p]) {
                fams.push_back(families(f, *I.terms[r], c.last(), f.assign[c.first()]));
                anchor.push_back(c.last());
                mods.push_back(fams.back().module());
            }
            D.terms[i].push_back(cosky_sum(X, std::move(anchor), std::move(mods)));
            D.fam[i].push_back(std::move(fams));
            D.bi.terms[i][r] = D.terms[i][r].sheaf();
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t p = static_cast<std::size_t>(dim) - i;
        for (std::size_t r = 0; r < cols; ++r) {
            if (i + 1 < rows) {
                std::vector<CoskyBlock> blocks;
                for (std::size_t ci = 0; ci < D.chains[p].size(); ++ci) {
                    const ChainIndex& c = D.chains[p][ci];
                    const FamilyModule& fc = D.fam[i][r][ci];
                    for (std::size_t k = 0; k <= p; ++k) {
                        const ChainIndex b = face(c, k);
                        const std::size_t bi = chain_pos(D.chains[p - 1], b);
                        const FamilyModule& fb = D.fam[i + 1][r][bi];
                        const RingHom& R = X->r(b.last(), c.last());
                        AbHom amb = AbHom::zero(fc.ambient.module.group, fb.ambient.module.group);
                        for (std::size_t k2 = 0; k2 < fb.qs.size(); ++k2) {
                            auto it = std::find(fc.qs.begin(), fc.qs.end(), fb.qs[k2]);
                            if (it == fc.qs.end()) continue;
                            const auto k1 = static_cast<std::size_t>(it - fc.qs.begin());
                            place(amb.m, fb.off[k2], fc.off[k1], precompose_ring(fc.co[k1], fb.co[k2], R).m);
                        }
                        reduce_rows(amb.m, amb.tgt.orders);
                        AbHom h = factor_through(compose(amb, fc.incl.f), fb.incl.f);
                        blocks.push_back({bi, ci, scale(h, sign(static_cast<int>(k)))});
                    }
                }
                D.bi.dh[i][r] = cosky_map(D.terms[i][r], D.terms[i + 1][r], blocks);
            }
            if (r + 1 < cols) {
                const SheafMorphism& d = I.d[r];
                std::vector<CoskyBlock> blocks;
                for (std::size_t ci = 0; ci < D.chains[p].size(); ++ci) {
                    const FamilyModule &a = D.fam[i][r][ci], &b = D.fam[i][r + 1][ci];
                    AbHom amb = AbHom::zero(a.ambient.module.group, b.ambient.module.group);
                    for (std::size_t k = 0; k < a.qs.size(); ++k)
                        place(amb.m, b.off[k], a.off[k], postcompose(a.co[k], b.co[k], d.comp[a.qs[k]]).m);
                    reduce_rows(amb.m, amb.tgt.orders);
                    blocks.push_back({ci, ci, factor_through(compose(amb, a.incl.f), b.incl.f)});
                }
                D.bi.dv[i][r] = cosky_map(D.terms[i][r], D.terms[i][r + 1], blocks);
            }
        }
    }
    D.tot = total(D.bi);
    return D;
}

Shriek f_shriek(const RingedMap& f, const SheafComplex& N, int d) {
    const int n = static_cast<int>(f.source->poset.dimension());
    InjectiveResolution I = inj_res(N, d);
    DualityData D = f_nabla(f, I.res.complex());
    return {std::move(D), std::move(I), N.lo - n, d - n - 1};
}

AbHom duality_iso(const DualityData& D, const Standard& S, const HomComplex& lhs, const HomComplex& rhs, int n) {
    const SheafComplex& F = D.cx();
    const SheafComplex& I = D.N;
    const AbGroup& A = lhs.cx.at(n);
    const auto& rparts = rhs.parts[static_cast<std::size_t>(n - rhs.cx.lo)];
    const auto& lparts = lhs.parts[static_cast<std::size_t>(n - lhs.cx.lo)];
    return hom_from_images(A, rhs.cx.at(n), [&](std::size_t j) {
        std::vector<SheafMorphism> G = lhs.to_morphisms(n, unit_vec(A.rank(), j));
        std::vector<SheafMorphism> out;
        for (const auto& [t, hg] : rparts) out.push_back(SheafMorphism::zero(S.cx().at(t), I.at(t + n)));
        for (std::size_t g = 0; g < lparts.size(); ++g) {
            const int r = lparts[g].first, deg = r + n;
            const SheafMorphism& Gr = G[g];
            for (int p = 0; p <= D.dim; ++p) {
                const int q = deg + p;
                if (q < I.lo || q > I.hi() || r < S.src.lo || r > S.src.hi()) continue;
                const SheafSum& fs = D.tot.sums[static_cast<std::size_t>(deg - F.lo)];
                const SheafMorphism Gp = compose(fs.proj[D.tot.index(D.bi, -p, q)], Gr);
                const CoskySum& term = D.term(p, q);
                const CoskySum& src = S.terms[static_cast<std::size_t>(p)][static_cast<std::size_t>(r - S.src.lo)];
                const SheafModule& Mr = *S.src.at(r);
                auto comp = [&](std::size_t y2, std::size_t i) -> std::optional<AbHom> {
                    const ChainIndex& c = D.chains[static_cast<std::size_t>(p)][i];
                    const FamilyModule& fam = D.family(p, q, i);
                    auto it = std::find(fam.qs.begin(), fam.qs.end(), y2);
                    if (it == fam.qs.end()) return std::nullopt;
                    const auto k = static_cast<std::size_t>(it - fam.qs.begin());
                    const std::size_t x = c.last();
                    const AbHom psi = rows_of(Gp.comp[x], term.offset(x, i), fam.module().group);
                    const Coinduced& co = fam.co[k];
                    const Vec& one = D.f.source->rings[x]->one;
                    return hom_from_images(Mr.stalk[x].group, I.at(q)->stalk[y2].group, [&](std::size_t m) {
                        Vec a = fam.incl.f.apply(psi.apply(unit_vec(Mr.stalk[x].rank(), m)));
                        Vec e(a.begin() + static_cast<std::ptrdiff_t>(fam.off[k]),
                              a.begin() + static_cast<std::ptrdiff_t>(fam.off[k] + co.module.rank()));
                        return as_hom(co, e).apply(one);
                    });
                };
                SheafMorphism phi = cosky_map_out(src, I.at(q), comp);
                const int t = p + r;
                const int ex = p * n + p * (p + 1) / 2;
                for (std::size_t u = 0; u < rparts.size(); ++u) {
                    if (rparts[u].first != t) continue;
                    const SheafSum& ss = S.tot.sums[static_cast<std::size_t>(t - S.tot.cx.lo)];
                    out[u] = add(out[u], scale(compose(phi, ss.proj[S.tot.index(S.bi, p, r)]), sign(ex)));
                }
            }
        }
        return rhs.from_morphisms(n, out);
    });
}

DualityReport duality_check(const RingedMap& f, const SheafComplex& M, const SheafComplex& N, int lo, int hi,
                            std::optional<int> depth) {
    const int dx = static_cast<int>(f.source->poset.dimension());
    const int dy = static_cast<int>(f.target->poset.dimension());
    const int mtop = M.empty() ? M.lo : M.hi();
    const int ntop = N.empty() ? N.lo : N.hi();
    const int need = hi + mtop + dx + 1;
    DualityReport rep;
    rep.lo = lo;
    rep.hi = hi;
    rep.depth = depth.value_or(std::max(need, ntop + dy + 1));
    if (rep.depth < need) throw SheafError("duality_check: depth too small for the window");

    InjectiveResolution I = inj_res(N, rep.depth);
    DualityData D = f_nabla(f, I.res.complex());
    Standard S = pushed_standard(f, M);
    HomComplex L = hom_complex(S.cx(), I.res.complex(), lo - 1, hi + 1);  // Hom(f_* C.M, I)
    HomComplex R = hom_complex(M, D.cx(), lo - 1, hi + 1);               // Hom(M, f^nabla I)

    std::vector<AbHom> theta;
    for (int n = lo - 1; n <= hi + 1; ++n) {
        theta.push_back(duality_iso(D, S, R, L, n));
        if (!is_iso(theta.back())) rep.complex_iso = false;
    }
    for (int n = lo - 1; n <= hi; ++n) {
        const auto k = static_cast<std::size_t>(n - lo + 1);
        AbHom a = compose(L.cx.diff(n), theta[k]), b = compose(theta[k + 1], R.cx.diff(n));
        if (!add(a, negate(b)).is_zero()) rep.complex_iso = false;
    }
    for (int i = lo; i <= hi; ++i) {
        GroupCohomology hl = cohomology(L.cx, i), hr = cohomology(R.cx, i);
        rep.lhs.push_back(hl.H.order());
        rep.rhs.push_back(hr.H.order());
        rep.bijective.push_back(is_iso(induced(theta, lo - 1, i, hr, hl)));
    }
    for (std::size_t k = 0; k < rep.lhs.size(); ++k)
        if (rep.lhs[k] != rep.rhs[k] || !rep.bijective[k]) rep.pass = false;
    if (!rep.complex_iso) rep.pass = false;
    rep.message = rep.pass ? "PASS" : (rep.complex_iso ? "FAIL: cohomology mismatch" : "FAIL: Theta is not an isomorphism of complexes");
    return rep;
}

}  // namespace finsheaf
