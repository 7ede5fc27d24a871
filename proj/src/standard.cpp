#include "internal.hpp"

namespace finsheaf {

using namespace detail;

std::string to_string(ResolutionKind k) {
    switch (k) {
        case ResolutionKind::standard: return "standard";
        case ResolutionKind::pseudo_cech: return "pseudo_cech";
        case ResolutionKind::injective: return "injective";
        case ResolutionKind::flat_qcoh: return "flat_qcoh";
    }
    return "?";
}

const SheafComplex& Resolution::complex() const {
    return kind == ResolutionKind::flat_qcoh ? augmentation.src : augmentation.tgt;
}

std::optional<int> Resolution::failure() const {
    const ComplexMorphism& f = augmentation;
    const int a = std::max(std::min(f.src.lo, f.tgt.lo), reliable_lo);
    const int b = std::min(std::max(f.src.hi(), f.tgt.hi()), reliable_hi);
    for (int n = a; n <= b; ++n) {
        Cohomology x = cohomology(f.src, n), y = cohomology(f.tgt, n);
        SheafMorphism h = induced(f, n, x, y);
        for (const auto& c : h.comp)
            if (!is_iso(c)) return n;
    }
    return std::nullopt;
}

static Standard build_standard(const RingedMap& f, const SheafComplex& F, const OpenSet& U) {
    const RingedSpace& X = *f.source;
    Standard S;
    S.f = f;
    S.src = F;
    S.U = U;
    S.chains = chains_in(X.poset, U);
    const std::size_t rows = S.chains.size(), cols = F.terms.size();
    S.bi = empty_bicomplex(f.target, F.lo, rows, cols);
    S.terms.assign(rows, {});
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t r = 0; r < cols; ++r) {
            std::vector<std::size_t> anchor;
            std::vector<FiniteModule> mods;
            for (const auto& c : S.chains[p]) {
                anchor.push_back(f.assign[c.first()]);
                RingHom ring = compose(X.r(c.first(), c.last()), f.comp[c.first()]);
                mods.push_back(restrict_scalars(F.terms[r]->stalk[c.last()], ring));
            }
            S.terms[p].push_back(cosky_sum(f.target, std::move(anchor), std::move(mods)));
            S.bi.terms[p][r] = S.terms[p][r].sheaf();
        }
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t r = 0; r < cols; ++r) {
            const SheafModule& Fr = *F.terms[r];
            if (p + 1 < rows) {
                std::vector<CoskyBlock> blocks;
                for (std::size_t i = 0; i < S.chains[p + 1].size(); ++i) {
                    const ChainIndex& c = S.chains[p + 1][i];
                    for (std::size_t k = 0; k <= p + 1; ++k) {
                        ChainIndex b = face(c, k);
                        const std::size_t j = chain_pos(S.chains[p], b);
                        AbHom h = k < p + 1 ? reduced_identity(Fr.stalk[c.last()].group) : Fr.r(b.last(), c.last());
                        blocks.push_back({i, j, scale(h, sign(static_cast<int>(k)))});
                    }
                }
                S.bi.dh[p][r] = cosky_map(S.terms[p][r], S.terms[p + 1][r], blocks);
            }
            if (r + 1 < cols) {
                const SheafMorphism d = F.d[r];
                std::vector<CoskyBlock> blocks;
                for (std::size_t i = 0; i < S.chains[p].size(); ++i)
                    blocks.push_back({i, i, d.comp[S.chains[p][i].last()]});
                S.bi.dv[p][r] = cosky_map(S.terms[p][r], S.terms[p][r + 1], blocks);
            }
        }
    S.tot = total(S.bi);
    return S;
}

Standard standard_on(const SheafComplex& F, const OpenSet& U) {
    return build_standard(RingedMap::identity(F.space), F, U);
}

Standard pushed_standard(const RingedMap& f, const SheafComplex& M) { return build_standard(f, M, f.source->poset.whole()); }

Resolution standard(const SheafComplex& M) {
    Standard S = standard_on(M, M.space->poset.whole());
    auto into = [&](int r) {
        std::vector<std::optional<AbHom>> h;
        for (const auto& c : S.chains[0]) h.push_back(reduced_identity(M.at(r)->stalk[c.first()].group));
        return cosky_map_into(M.at(r), S.terms[0][static_cast<std::size_t>(r - M.lo)], h);
    };
    return {into_row0(M, S.bi, S.tot, into), ResolutionKind::standard};
}

Resolution standard(const SheafPtr& M) { return standard(SheafComplex::single(M, 0)); }

ComplexMorphism standard_map(const Standard& a, const Standard& b,
                             const std::function<std::optional<AbHom>(std::size_t, int)>& g) {
    auto block = [&](int p, int r) -> std::optional<SheafMorphism> {
        const auto pl = static_cast<std::size_t>(p);
        const CoskySum& ta = a.terms[pl][static_cast<std::size_t>(r - a.src.lo)];
        const CoskySum& tb = b.terms[pl][static_cast<std::size_t>(r - b.src.lo)];
        std::vector<CoskyBlock> blocks;
        for (std::size_t i = 0; i < b.chains[pl].size(); ++i) {
            const ChainIndex& c = b.chains[pl][i];
            auto j = find_chain(a.chains[pl], c);
            if (!j) throw SheafError("standard_map: chain outside the source open set");
            if (auto h = g(c.last(), r)) blocks.push_back({i, *j, *h});
        }
        return cosky_map(ta, tb, blocks);
    };
    return total_map(a.bi, a.tot, b.bi, b.tot, block);
}

ComplexMorphism standard_map(const ComplexMorphism& g, const Standard& a, const Standard& b) {
    return standard_map(a, b, [&](std::size_t w, int r) -> std::optional<AbHom> { return g.at(r).comp[w]; });
}

ComplexMorphism detail::into_row0(const SheafComplex& M, const Bicomplex& B, const Total& T,
                                  const std::function<SheafMorphism(int)>& into) {
    ComplexMorphism aug{M, T.cx, M.lo, {}};
    for (int r = M.lo; r <= M.hi(); ++r) {
        const SheafSum& s = T.sums[static_cast<std::size_t>(r - T.cx.lo)];
        aug.f.push_back(compose(s.inj[T.index(B, 0, r)], into(r)));
    }
    return aug;
}

// Pseudo-Cech complex.

void detail::assemble_pieces(PieceBicomplex& B, const SpacePtr& X,
                            const std::function<SheafMorphism(std::size_t, std::size_t, std::size_t, std::size_t, bool)>& face_map,
                            const std::function<SheafMorphism(std::size_t, std::size_t, std::size_t)>& vertical) {
    const std::size_t rows = B.chains.size(), cols = B.src.terms.size();
    B.bi = empty_bicomplex(X, B.src.lo, rows, cols);
    B.sums.assign(rows, {});
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t r = 0; r < cols; ++r) {
            std::vector<SheafPtr> parts;
            for (const auto& pc : B.pieces[p][r]) parts.push_back(pc.sheaf);
            B.sums[p].push_back(direct_sum(X, parts));
            B.bi.terms[p][r] = B.sums[p][r].sheaf;
        }
    for (std::size_t p = 0; p < rows; ++p)
        for (std::size_t r = 0; r < cols; ++r) {
            if (p + 1 < rows) {
                std::vector<SumBlock> blocks;
                for (std::size_t i = 0; i < B.chains[p + 1].size(); ++i) {
                    const ChainIndex& c = B.chains[p + 1][i];
                    for (std::size_t k = 0; k <= p + 1; ++k) {
                        const std::size_t j = chain_pos(B.chains[p], face(c, k));
                        blocks.push_back({i, j, scale(face_map(p, r, j, i, k == p + 1), sign(static_cast<int>(k)))});
                    }
                }
                B.bi.dh[p][r] = sparse_map(B.sums[p][r], B.sums[p + 1][r], blocks);
            }
            if (r + 1 < cols) {
                std::vector<SumBlock> blocks;
                for (std::size_t i = 0; i < B.chains[p].size(); ++i) blocks.push_back({i, i, vertical(p, r, i)});
                B.bi.dv[p][r] = sparse_map(B.sums[p][r], B.sums[p][r + 1], blocks);
            }
        }
    B.tot = total(B.bi);
}

PieceBicomplex pseudo_cech_complex(const SheafComplex& M) {
    const Poset& P = M.space->poset;
    PieceBicomplex B;
    B.src = M;
    B.chains = chains_in(P, P.whole());
    B.pieces.assign(B.chains.size(), {});
    for (std::size_t p = 0; p < B.chains.size(); ++p)
        for (const auto& F : M.terms) {
            std::vector<Piece> row;
            for (const auto& c : B.chains[p]) row.push_back(make_piece(F, P.up_set(c.last())));
            B.pieces[p].push_back(std::move(row));
        }
    assemble_pieces(
        B, M.space,
        [&](std::size_t p, std::size_t r, std::size_t j, std::size_t i, bool) {
            return piece_map(B.pieces[p][r][j], B.pieces[p + 1][r][i]);
        },
        [&](std::size_t p, std::size_t r, std::size_t i) {
            return piece_map(B.pieces[p][r][i], B.pieces[p][r + 1][i], M.d[r]);
        });
    return B;
}

Resolution pseudo_cech(const SheafComplex& M) {
    PieceBicomplex B = pseudo_cech_complex(M);
    auto into = [&](int r) {
        const auto rl = static_cast<std::size_t>(r - M.lo);
        SheafMorphism h = SheafMorphism::zero(M.at(r), B.sums[0][rl].sheaf);
        for (std::size_t i = 0; i < B.chains[0].size(); ++i)
            h = add(h, compose(B.sums[0][rl].inj[i], piece_unit(M.at(r), B.pieces[0][rl][i])));
        return h;
    };
    return {into_row0(M, B.bi, B.tot, into), ResolutionKind::pseudo_cech};
}

Resolution pseudo_cech(const SheafPtr& M) { return pseudo_cech(SheafComplex::single(M, 0)); }

std::vector<AbGroup> gamma_derived(const SheafComplex& M, int lo, int hi) {
    GroupComplex G = global_sections(standard(M).complex());
    std::vector<AbGroup> out;
    for (int i = lo; i <= hi; ++i) out.push_back(cohomology(G, i).H);
    return out;
}

SheafComplex push_derived(const RingedMap& f, const SheafComplex& M) { return pushforward(f, standard(M).complex()); }

std::vector<OpenSet> open_sets(const Poset& P) {
    const std::size_t n = P.size();
    if (n > 20) throw SheafError("open_sets: too many points");
    std::vector<OpenSet> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        OpenSet u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = (mask >> i) & 1;
        if (P.is_open(u)) out.push_back(u);
    }
    return out;
}

bool is_flasque(const SheafModule& M) {
    const Poset& P = M.space->poset;
    Sections all = sections(M, P.whole());
    for (const auto& V : open_sets(P))
        if (!is_surjective(restrict_sections(M, all, sections(M, V)))) return false;
    return true;
}

}  // namespace finsheaf
