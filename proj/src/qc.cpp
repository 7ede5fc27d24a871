#include "finsheaf/classify.hpp"
#include "internal.hpp"

namespace finsheaf {

using namespace detail;

namespace {

void require_semi_separated(const SpacePtr& X, const char* what) {
    std::string w = semi_separated_failure(X);
    if (!w.empty()) throw SheafError(std::string(what) + ": space is not semi-separated: " + w);
}

void require_schematic(const SpacePtr& X, const char* what) {
    Classification c = classify(X);
    if (!c.schematic) throw SheafError(std::string(what) + ": space is not schematic: " + c.schematic_witness);
}

// Piece -> co-skyscraper summand i of b: the section's value at w, followed by `after`.
SheafMorphism eval_into(const Piece& pc, std::size_t w, const CoskySum& b, std::size_t i,
                        const std::optional<ModHom>& after) {
    AbHom h = evaluate(*pc.F, pc.sec[b.anchor[i]], w);
    if (after) h = compose(after->f, h);
    std::vector<std::optional<AbHom>> hs(b.size());
    hs[i] = h;
    return cosky_map_into(pc.sheaf, b, hs);
}

// Chain-by-chain evaluation at the last point from a piece bicomplex to the standard complex.
ComplexMorphism evaluate_last(const PieceBicomplex& Q, const Standard& C, bool counit) {
    if (Q.chains != C.chains) throw SheafError("evaluate_last: chain sets differ");
    auto block = [&](int p, int r) -> std::optional<SheafMorphism> {
        const auto pl = static_cast<std::size_t>(p), rl = static_cast<std::size_t>(r - Q.src.lo);
        const CoskySum& b = C.terms[pl][rl];
        const SheafSum& a = Q.sums[pl][rl];
        SheafMorphism h = SheafMorphism::zero(a.sheaf, b.sheaf());
        for (std::size_t i = 0; i < Q.chains[pl].size(); ++i) {
            const std::size_t x = Q.chains[pl][i].last();
            std::optional<ModHom> after;
            if (counit) after = tilde_counit(Q.tildes[rl][x]);
            h = add(h, compose(eval_into(Q.pieces[pl][rl][i], x, b, i, after), a.proj[i]));
        }
        return h;
    };
    return total_map(Q.bi, Q.tot, C.bi, C.tot, block);
}

}  // namespace

PieceBicomplex qc_standard(const SheafComplex& M) {
    const SpacePtr& X = M.space;
    const Poset& P = X->poset;
    PieceBicomplex B;
    B.src = M;
    B.chains = chains_in(P, P.whole());
    for (const auto& F : M.terms) {
        std::vector<TildeExt> row;
        for (std::size_t x = 0; x < X->size(); ++x) row.push_back(tilde_ext(X, x, F->stalk[x]));
        B.tildes.push_back(std::move(row));
    }
    B.pieces.assign(B.chains.size(), {});
    for (std::size_t p = 0; p < B.chains.size(); ++p)
        for (std::size_t r = 0; r < M.terms.size(); ++r) {
            std::vector<Piece> row;
            for (const auto& c : B.chains[p]) row.push_back(make_piece(B.tildes[r][c.last()].sheaf, P.up_set(c.last())));
            B.pieces[p].push_back(std::move(row));
        }
    assemble_pieces(
        B, X,
        [&](std::size_t p, std::size_t r, std::size_t j, std::size_t i, bool last) {
            const Piece &a = B.pieces[p][r][j], &b = B.pieces[p + 1][r][i];
            if (!last) return piece_map(a, b);
            const std::size_t x = B.chains[p][j].last(), y = B.chains[p + 1][i].last();
            return piece_map(a, b, tilde_map(B.tildes[r][x], B.tildes[r][y], M.terms[r]->r(x, y)));
        },
        [&](std::size_t p, std::size_t r, std::size_t i) {
            const std::size_t x = B.chains[p][i].last();
            SheafMorphism g = tilde_map(B.tildes[r][x], B.tildes[r + 1][x], M.d[r].comp[x]);
            return piece_map(B.pieces[p][r][i], B.pieces[p][r + 1][i], g);
        });
    return B;
}

ComplexMorphism qc_counit(const PieceBicomplex& Q, const Standard& C) { return evaluate_last(Q, C, true); }

ComplexMorphism cech_to_standard(const PieceBicomplex& K, const Standard& C) { return evaluate_last(K, C, false); }

ComplexMorphism qc_to_cech(const PieceBicomplex& Q, const PieceBicomplex& K) {
    const SpacePtr& X = Q.src.space;
    const Poset& P = X->poset;
    auto block = [&](int p, int r) -> std::optional<SheafMorphism> {
        const auto pl = static_cast<std::size_t>(p), rl = static_cast<std::size_t>(r - Q.src.lo);
        const SheafModule& M = *Q.src.terms[rl];
        std::vector<SumBlock> blocks;
        for (std::size_t i = 0; i < Q.chains[pl].size(); ++i) {
            const TildeExt& T = Q.tildes[rl][Q.chains[pl][i].last()];
            SheafMorphism g = SheafMorphism::zero(T.sheaf, K.src.terms[rl]);
            for (std::size_t w = 0; w < X->size(); ++w)
                if (P.leq(T.x, w)) g.comp[w] = base_change_adjoint(*T.bc[w], M.stalk[w], M.r(T.x, w)).f;
            blocks.push_back({i, i, piece_map(Q.pieces[pl][rl][i], K.pieces[pl][rl][i], g)});
        }
        return sparse_map(Q.sums[pl][rl], K.sums[pl][rl], blocks);
    };
    return total_map(Q.bi, Q.tot, K.bi, K.tot, block);
}

QcModule qc(const SheafPtr& N) {
    require_schematic(N->space, "qc");
    const SheafComplex M = SheafComplex::single(N, 0);
    PieceBicomplex Q = qc_standard(M);
    Standard C = standard_on(M, N->space->poset.whole());
    const SheafSum& q0 = Q.sums[0][0];
    SheafMorphism incl = Q.chains.size() > 1 ? kernel(Q.bi.dh[0][0]) : SheafMorphism::identity(q0.sheaf);
    SheafMorphism to_c0 = SheafMorphism::zero(q0.sheaf, C.terms[0][0].sheaf());
    for (std::size_t i = 0; i < Q.chains[0].size(); ++i) {
        const std::size_t x = Q.chains[0][i].last();
        to_c0 = add(to_c0, compose(eval_into(Q.pieces[0][0][i], x, C.terms[0][0], i, tilde_counit(Q.tildes[0][x])),
                                   q0.proj[i]));
    }
    std::vector<std::optional<AbHom>> h;
    for (const auto& c : C.chains[0]) h.push_back(reduced_identity(N->stalk[c.first()].group));
    SheafMorphism aug = cosky_map_into(N, C.terms[0][0], h);
    return {incl.src, factor_through(compose(to_c0, incl), aug)};
}

QcDerived qc_derived(const SheafComplex& M) {
    require_semi_separated(M.space, "qc_derived");
    PieceBicomplex Q = qc_standard(M);
    Resolution S = standard(M);
    Standard C = standard_on(M, M.space->poset.whole());
    return {Q.tot.cx, {qc_counit(Q, C), S.augmentation}};
}

CheckReport bn_check(const SheafComplex& M) {
    require_semi_separated(M.space, "bn_check");
    if (!in_Dqc(M)) throw SheafError("bn_check: complex is not in D_qc");
    CheckReport rep;
    PieceBicomplex Q = qc_standard(M);
    Standard C = standard_on(M, M.space->poset.whole());
    auto note = [&](const std::string& what, std::optional<int> fail) {
        if (fail) {
            rep.pass = false;
            if (!rep.failing_degree) rep.failing_degree = fail;
            rep.lines.push_back(what + ": FAIL in degree " + std::to_string(*fail));
        } else {
            rep.lines.push_back(what + ": quasi-isomorphism");
        }
    };
    note("counit Qc(C.M) -> C.M", quasi_iso_failure(qc_counit(Q, C)));
    bool qcoh = true;
    for (const auto& t : M.terms) qcoh = qcoh && is_quasicoherent(*t);
    if (qcoh) {
        Resolution K = pseudo_cech(M);
        ComplexMorphism iso = qc_to_cech(Q, pseudo_cech_complex(M));
        ComplexMorphism back{iso.tgt, iso.src, iso.lo, {}};
        for (const auto& f : iso.f) back.f.push_back(inverse(f));
        note("unit M -> Qc(C.M)", quasi_iso_failure(compose(back, K.augmentation)));
    }
    return rep;
}

SheafComplex rqc_push(const RingedMap& f, const SheafComplex& M) {
    require_semi_separated(f.source, "rqc_push");
    require_semi_separated(f.target, "rqc_push");
    if (std::string w = schematic_morphism_failure(f); !w.empty())
        throw SheafError("rqc_push: morphism is not schematic: " + w);
    for (const auto& t : M.terms)
        if (!is_quasicoherent(*t)) throw SheafError("rqc_push: complex is not degreewise quasi-coherent");
    return pushforward(f, pseudo_cech_complex(M).cx());
}

CheckReport rqc_check(const RingedMap& f, const SheafComplex& M) {
    SheafComplex A = rqc_push(f, M);
    PieceBicomplex K = pseudo_cech_complex(M);
    Standard C = standard_on(M, M.space->poset.whole());
    SheafComplex B = pushforward(f, C.cx());
    ComplexMorphism g = pushforward(f, cech_to_standard(K, C), A, B);
    CheckReport rep;
    rep.failing_degree = quasi_iso_failure(g);
    rep.pass = !rep.failing_degree;
    rep.lines.push_back(rep.pass ? "f_*(Cech M) -> f_*(C.M): quasi-isomorphism"
                                 : "f_*(Cech M) -> f_*(C.M): FAIL in degree " + std::to_string(*rep.failing_degree));
    return rep;
}

}  // namespace finsheaf
