#include "internal.hpp"

#include "finsheaf/classify.hpp"

namespace finsheaf {

using namespace detail;

namespace {

// x -> F[x] with strict transition maps tau(x, y) for x < y.
struct Diagram {
    SpacePtr X;
    std::vector<SheafComplex> F;
    std::vector<std::optional<ComplexMorphism>> tau;  // x * n + y
    int lo = 0, hi = -1;

    const ComplexMorphism& t(std::size_t x, std::size_t y) const { return *tau[x * F.size() + y]; }
};

// Tot over chains c in Z of F[c_last]; the face dropping c_last applies tau.
struct Holim {
    OpenSet Z;
    std::vector<std::vector<ChainIndex>> chains;
    std::vector<std::vector<SheafSum>> sums;  // [p][n - lo]
    Bicomplex bi;
    Total tot;
};

Holim holim(const Diagram& D, const OpenSet& Z) {
    Holim H;
    H.Z = Z;
    H.chains = chains_in(D.X->poset, Z);
    const std::size_t rows = H.chains.size(), cols = static_cast<std::size_t>(D.hi - D.lo + 1);
    H.bi = empty_bicomplex(D.X, D.lo, rows, cols);
    H.sums.assign(rows, {});
    for (std::size_t p = 0; p < rows; ++p)
        for (int n = D.lo; n <= D.hi; ++n) {
            std::vector<SheafPtr> parts;
            for (const auto& c : H.chains[p]) parts.push_back(D.F[c.last()].at(n));
            H.sums[p].push_back(direct_sum(D.X, parts));
            H.bi.terms[p][static_cast<std::size_t>(n - D.lo)] = H.sums[p].back().sheaf;
        }
    for (std::size_t p = 0; p < rows; ++p)
        for (int n = D.lo; n <= D.hi; ++n) {
            const auto k = static_cast<std::size_t>(n - D.lo);
            if (p + 1 < rows) {
                std::vector<SumBlock> blocks;
                for (std::size_t i = 0; i < H.chains[p + 1].size(); ++i) {
                    const ChainIndex& c = H.chains[p + 1][i];
                    for (std::size_t f = 0; f <= p + 1; ++f) {
                        const std::size_t j = chain_pos(H.chains[p], face(c, f));
                        SheafMorphism m = f < p + 1 ? SheafMorphism::identity(D.F[c.last()].at(n))
                                                    : D.t(c.points[p], c.last()).at(n);
                        blocks.push_back({i, j, scale(m, sign(static_cast<int>(f)))});
                    }
                }
                H.bi.dh[p][k] = sparse_map(H.sums[p][k], H.sums[p + 1][k], blocks);
            }
            if (n < D.hi) {
                std::vector<SumBlock> blocks;
                for (std::size_t i = 0; i < H.chains[p].size(); ++i)
                    blocks.push_back({i, i, D.F[H.chains[p][i].last()].diff(n)});
                H.bi.dv[p][k] = sparse_map(H.sums[p][k], H.sums[p][k + 1], blocks);
            }
        }
    H.tot = total(H.bi);
    return H;
}

// Holim map from per-point maps g(x): A.F[x] -> B.F[x]; chains of b must be chains of a.
ComplexMorphism holim_map(const Holim& a, const Holim& b, const std::function<std::optional<SheafMorphism>(std::size_t, int)>& g) {
    auto block = [&](int p, int n) -> std::optional<SheafMorphism> {
        const auto pl = static_cast<std::size_t>(p);
        const auto k = static_cast<std::size_t>(n - a.bi.q0);
        std::vector<SumBlock> blocks;
        for (std::size_t i = 0; i < b.chains[pl].size(); ++i) {
            const ChainIndex& c = b.chains[pl][i];
            auto j = find_chain(a.chains[pl], c);
            if (!j) throw SheafError("holim_map: chain outside the source");
            if (auto h = g(c.last(), n)) blocks.push_back({i, *j, *h});
        }
        return sparse_map(a.sums[pl][k], b.sums[pl][k], blocks);
    };
    return total_map(a.bi, a.tot, b.bi, b.tot, block);
}

ComplexMorphism projection(const Diagram& D, const Holim& a, const Holim& b) {
    return holim_map(a, b, [&](std::size_t x, int n) { return std::optional(SheafMorphism::identity(D.F[x].at(n))); });
}

// N -> holim over Z of j_* C^.(N | U_x), through the augmentations at chains of length 0.
ComplexMorphism unit_into(const SheafComplex& N, const Diagram& G, const std::vector<Standard>& S, const Holim& H) {
    ComplexMorphism u{N, H.tot.cx, N.lo, {}};
    for (int r = N.lo; r <= N.hi(); ++r) {
        SheafMorphism h = SheafMorphism::zero(N.at(r), H.tot.cx.at(r));
        if (r >= G.lo && r <= G.hi) {
            const SheafSum& row = H.sums[0][static_cast<std::size_t>(r - G.lo)];
            const SheafSum& deg = H.tot.sums[static_cast<std::size_t>(r - H.tot.cx.lo)];
            const SheafMorphism into_row = deg.inj[H.tot.index(H.bi, 0, r)];
            for (std::size_t i = 0; i < H.chains[0].size(); ++i) {
                const Standard& s = S[H.chains[0][i].first()];
                const auto rl = static_cast<std::size_t>(r - s.src.lo);
                std::vector<std::optional<AbHom>> ids;
                for (const auto& c : s.chains[0]) ids.push_back(reduced_identity(N.at(r)->stalk[c.first()].group));
                SheafMorphism a = cosky_map_into(N.at(r), s.terms[0][rl], ids);
                const SheafSum& sd = s.tot.sums[static_cast<std::size_t>(r - s.tot.cx.lo)];
                a = compose(sd.inj[s.tot.index(s.bi, 0, r)], a);
                h = add(h, compose(into_row, compose(row.inj[i], a)));
            }
        }
        u.f.push_back(h);
    }
    return u;
}

struct Diagrams {
    Diagram G;  // j_* C^.(N | U_x)
    Diagram T;  // j_* C^.(tilde N_x on U_x)
    std::vector<Standard> SG, ST;
    std::vector<ComplexMorphism> eps;   // T[x] -> G[x]
};

Diagrams diagrams(const SheafComplex& N) {
    const SpacePtr& X = N.space;
    const Poset& P = X->poset;
    const std::size_t n = X->size();
    Diagrams out;
    out.G = {X, {}, std::vector<std::optional<ComplexMorphism>>(n * n), 0, -1};
    out.T = out.G;
    std::vector<std::vector<TildeExt>> tl(n);
    for (std::size_t x = 0; x < n; ++x) {
        SheafComplex Tx{X, N.lo, {}, {}};
        for (int r = N.lo; r <= N.hi(); ++r) {
            tl[x].push_back(tilde_ext(X, x, N.at(r)->stalk[x]));
            Tx.terms.push_back(tl[x].back().sheaf);
        }
        for (int r = N.lo; r < N.hi(); ++r) {
            const auto rl = static_cast<std::size_t>(r - N.lo);
            Tx.d.push_back(tilde_map(tl[x][rl], tl[x][rl + 1], N.diff(r).comp[x]));
        }
        out.SG.push_back(standard_on(N, P.up_set(x)));
        out.ST.push_back(standard_on(Tx, P.up_set(x)));
        out.G.F.push_back(out.SG.back().cx());
        out.T.F.push_back(out.ST.back().cx());
    }
    for (Diagram* D : {&out.G, &out.T}) {
        D->lo = INT_MAX;
        D->hi = INT_MIN;
        for (const auto& F : D->F) {
            if (F.empty()) continue;
            D->lo = std::min(D->lo, F.lo);
            D->hi = std::max(D->hi, F.hi());
        }
        if (D->lo > D->hi) D->lo = N.lo, D->hi = N.lo - 1;
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (!P.lt(x, y)) continue;
            out.G.tau[x * n + y] = standard_map(out.SG[x], out.SG[y], [&](std::size_t w, int r) -> std::optional<AbHom> {
                return reduced_identity(N.at(r)->stalk[w].group);
            });
            std::vector<SheafMorphism> tm;
            for (int r = N.lo; r <= N.hi(); ++r) {
                const auto rl = static_cast<std::size_t>(r - N.lo);
                tm.push_back(tilde_map(tl[x][rl], tl[y][rl], N.at(r)->r(x, y)));
            }
            out.T.tau[x * n + y] = standard_map(out.ST[x], out.ST[y], [&](std::size_t w, int r) -> std::optional<AbHom> {
                return tm[static_cast<std::size_t>(r - N.lo)].comp[w];
            });
        }
        out.eps.push_back(standard_map(out.ST[x], out.SG[x], [&](std::size_t w, int r) -> std::optional<AbHom> {
            const TildeExt& t = tl[x][static_cast<std::size_t>(r - N.lo)];
            return base_change_adjoint(*t.bc[w], N.at(r)->stalk[w], N.at(r)->r(x, w)).f;
        }));
    }
    return out;
}

// Fib(f)^n = A^n + B^{n-1}, the cone of f shifted by -1.
struct Fiber {
    SheafComplex cx;
    std::vector<SheafSum> sums;  // per degree from cx.lo
};

Fiber fiber(const ComplexMorphism& f) {
    Cone c = cone(f);
    SheafComplex s = shift(c.cx, -1);
    Fiber out{s, {}};
    for (int n = s.lo; n <= s.hi(); ++n) out.sums.push_back(direct_sum(s.space, {f.src.at(n), f.tgt.at(n - 1)}));
    return out;
}

// Direct sum of two complexes with the components of each degree kept.
struct Pair {
    SheafComplex cx;
    std::vector<SheafSum> sums;
};

Pair pair(const SheafComplex& A, const SheafComplex& B) {
    const int lo = std::min(A.lo, B.lo), hi = std::max(A.hi(), B.hi());
    Pair out{{A.space, lo, {}, {}}, {}};
    for (int n = lo; n <= hi; ++n) {
        out.sums.push_back(direct_sum(A.space, {A.at(n), B.at(n)}));
        out.cx.terms.push_back(out.sums.back().sheaf);
    }
    for (int n = lo; n < hi; ++n) {
        const auto k = static_cast<std::size_t>(n - lo);
        out.cx.d.push_back(block_map(out.sums[k], out.sums[k + 1], {{A.diff(n), std::nullopt}, {std::nullopt, B.diff(n)}}));
    }
    return out;
}

ComplexMorphism pair_map(const Pair& src, const ComplexMorphism& a, const ComplexMorphism& b, const SheafComplex& tgt) {
    ComplexMorphism f{src.cx, tgt, src.cx.lo, {}};
    for (int n = src.cx.lo; n <= src.cx.hi(); ++n) {
        const SheafSum& s = src.sums[static_cast<std::size_t>(n - src.cx.lo)];
        SheafMorphism h = add(compose(a.at(n), s.proj[0]), compose(b.at(n), s.proj[1]));
        h.src = s.sheaf;
        h.tgt = tgt.at(n);
        f.f.push_back(h);
    }
    return f;
}

ComplexMorphism pair_diag(const Pair& src, const ComplexMorphism& a, const ComplexMorphism& b, const Pair& tgt) {
    ComplexMorphism f{src.cx, tgt.cx, src.cx.lo, {}};
    for (int n = src.cx.lo; n <= src.cx.hi(); ++n) {
        const SheafSum& s = src.sums[static_cast<std::size_t>(n - src.cx.lo)];
        const SheafSum& t = tgt.sums[static_cast<std::size_t>(n - tgt.cx.lo)];
        f.f.push_back(block_map(s, t, {{a.at(n), std::nullopt}, {std::nullopt, b.at(n)}}));
    }
    return f;
}

ComplexMorphism fiber_map(const Fiber& a, const ComplexMorphism& top, const ComplexMorphism& bottom, const Fiber& b) {
    ComplexMorphism f{a.cx, b.cx, a.cx.lo, {}};
    for (int n = a.cx.lo; n <= a.cx.hi(); ++n) {
        SheafMorphism h = SheafMorphism::zero(a.cx.at(n), b.cx.at(n));
        if (n >= b.cx.lo && n <= b.cx.hi()) {
            const SheafSum& s = a.sums[static_cast<std::size_t>(n - a.cx.lo)];
            const SheafSum& t = b.sums[static_cast<std::size_t>(n - b.cx.lo)];
            h = block_map(s, t, {{top.at(n), std::nullopt}, {std::nullopt, bottom.at(n - 1)}});
            h.src = a.cx.at(n);
            h.tgt = b.cx.at(n);
        }
        f.f.push_back(h);
    }
    return f;
}

std::string names(const Poset& P, const std::vector<std::size_t>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " u U_" : "U_") + P.name(pts[i]);
    return s;
}

}  // namespace

ComplexMorphism chain_holim_unit(const SheafComplex& N) {
    Diagrams D = diagrams(N);
    Holim H = holim(D.G, N.space->poset.whole());
    return unit_into(N, D.G, D.SG, H);
}

Coherator dqc_coherator(const SheafComplex& N) {
    const SpacePtr& X = N.space;
    const Poset& P = X->poset;
    Classification c = classify(X);
    if (!c.schematic) throw SheafError("dqc_coherator: space is not schematic: " + c.schematic_witness);
    std::vector<std::size_t> mins = P.minimal_points();
    if (mins.size() == 1) {
        QcDerived q = qc_derived(N);
        return {q.cx, q.to_source, "minimum " + P.name(mins[0]) + ": RQc on the whole space"};
    }

    OpenSet U = P.empty(), V = P.up_set(mins.back());
    for (std::size_t i = 0; i + 1 < mins.size(); ++i) U = unite(U, P.up_set(mins[i]));
    const OpenSet W = intersect(U, V);

    Diagrams D = diagrams(N);
    Holim TU = holim(D.T, U), TV = holim(D.T, V), TW = holim(D.T, W);
    Holim GU = holim(D.G, U), GV = holim(D.G, V), GW = holim(D.G, W), GX = holim(D.G, P.whole());

    Pair T2 = pair(TU.tot.cx, TV.tot.cx), G2 = pair(GU.tot.cx, GV.tot.cx);
    ComplexMorphism phi = pair_map(T2, projection(D.T, TU, TW), negate(projection(D.T, TV, TW)), TW.tot.cx);
    ComplexMorphism gam = pair_map(G2, projection(D.G, GU, GW), negate(projection(D.G, GV, GW)), GW.tot.cx);
    Fiber FT = fiber(phi), FG = fiber(gam);

    auto eps = [&](const Holim& a, const Holim& b) {
        return holim_map(a, b, [&](std::size_t x, int n) -> std::optional<SheafMorphism> { return D.eps[x].at(n); });
    };
    ComplexMorphism top = pair_diag(T2, eps(TU, GU), eps(TV, GV), G2);
    ComplexMorphism forward = fiber_map(FT, top, eps(TW, GW), FG);

    ComplexMorphism unit = unit_into(N, D.G, D.SG, GX);
    ComplexMorphism back{N, FG.cx, N.lo, {}};
    ComplexMorphism uU = compose(projection(D.G, GX, GU), unit), uV = compose(projection(D.G, GX, GV), unit);
    for (int n = N.lo; n <= N.hi(); ++n) {
        SheafMorphism h = SheafMorphism::zero(N.at(n), FG.cx.at(n));
        if (n >= FG.cx.lo && n <= FG.cx.hi()) {
            const SheafSum& s = FG.sums[static_cast<std::size_t>(n - FG.cx.lo)];
            const SheafSum& g = G2.sums[static_cast<std::size_t>(n - G2.cx.lo)];
            SheafMorphism into = add(compose(g.inj[0], uU.at(n)), compose(g.inj[1], uV.at(n)));
            into.tgt = G2.cx.at(n);
            h = compose(s.inj[0], into);
            h.tgt = FG.cx.at(n);
        }
        back.f.push_back(h);
    }
    std::vector<std::size_t> rest(mins.begin(), mins.end() - 1);
    return {FT.cx, {forward, back}, "U = " + names(P, rest) + ", V = " + names(P, {mins.back()})};
}

}  // namespace finsheaf
