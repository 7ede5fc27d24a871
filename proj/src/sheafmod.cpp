#include "finsheaf/sheafmod.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace finsheaf {

namespace {

AbHom reduced_identity(const AbGroup& g) {
    AbHom id = AbHom::identity(g);
    reduce_rows(id.m, g.orders);
    return id;
}

bool same_hom(const AbHom& a, const AbHom& b) {
    if (a.m.rows != b.m.rows || a.m.cols != b.m.cols) return false;
    for (std::size_t i = 0; i < a.m.rows; ++i)
        for (std::size_t j = 0; j < a.m.cols; ++j)
            if (mod(a.m(i, j) - b.m(i, j), a.tgt.orders[i]) != 0) return false;
    return true;
}

// Points sorted so that every point comes after all points above it.
std::vector<std::size_t> top_down(const Poset& P) {
    std::vector<std::size_t> order(P.size());
    std::vector<std::size_t> above(P.size(), 0);
    for (std::size_t p = 0; p < P.size(); ++p) {
        order[p] = p;
        for (std::size_t q = 0; q < P.size(); ++q) above[p] += P.lt(p, q);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return above[a] < above[b]; });
    return order;
}

std::string pair_name(const Poset& P, std::size_t p, std::size_t q) { return "(" + P.name(p) + ", " + P.name(q) + ")"; }

}  // namespace

const RingHom& RingedSpace::r(std::size_t p, std::size_t q) const {
    const auto& m = maps[p * size() + q];
    if (!m) throw SheafError("no ring map for " + pair_name(poset, p, q));
    return *m;
}

void RingedSpace::validate() const {
    const std::size_t n = size();
    if (rings.size() != n) throw SheafError("one ring per point expected");
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!poset.leq(p, q)) continue;
            const RingHom& h = r(p, q);
            if (!same_ring(h.src, rings[p]) || !same_ring(h.tgt, rings[q]))
                throw SheafError("ring map " + pair_name(poset, p, q) + " has the wrong rings");
            h.validate();
            if (p == q && !same_hom(h.additive(), reduced_identity(rings[p]->add)))
                throw SheafError("ring map at " + poset.name(p) + " is not the identity");
        }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t l = 0; l < n; ++l)
                if (poset.lt(p, q) && poset.lt(q, l) &&
                    !same_hom(compose(r(q, l), r(p, q)).additive(), r(p, l).additive()))
                    throw SheafError("ring maps are not functorial on " + poset.name(p) + " <= " + poset.name(q) +
                                     " <= " + poset.name(l));
}

RingedSpace RingedSpace::from_hasse(Poset P, std::vector<RingPtr> rings,
                                    const std::vector<std::pair<std::pair<std::size_t, std::size_t>, RingHom>>& edge_maps) {
    RingedSpace X{std::move(P), std::move(rings), {}};
    const std::size_t n = X.size();
    if (X.rings.size() != n) throw SheafError("one ring per point expected");
    X.maps.assign(n * n, std::nullopt);
    std::map<std::pair<std::size_t, std::size_t>, RingHom> given;
    for (const auto& [e, h] : edge_maps) {
        if (!X.poset.leq(e.first, e.second))
            throw SheafError("ring map given for non-comparable pair " + pair_name(X.poset, e.first, e.second));
        given.insert_or_assign(e, h);
    }
    for (std::size_t p : top_down(X.poset)) {
        X.maps[p * n + p] = RingHom::identity(X.rings[p]);
        for (std::size_t q = 0; q < n; ++q) {
            if (!X.poset.lt(p, q)) continue;
            if (auto it = given.find({p, q}); it != given.end()) {
                X.maps[p * n + q] = it->second;
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                auto it = given.find({p, c});
                if (it == given.end() || c == p || !X.poset.leq(c, q)) continue;
                X.maps[p * n + q] = compose(X.r(c, q), it->second);
                break;
            }
            if (!X.maps[p * n + q]) throw SheafError("missing ring map for " + pair_name(X.poset, p, q));
        }
    }
    X.validate();
    return X;
}

RingedSpace RingedSpace::constant(Poset P, const RingPtr& R) {
    const std::size_t n = P.size();
    RingedSpace X{std::move(P), std::vector<RingPtr>(n, R), {}};
    X.maps.assign(n * n, std::nullopt);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (X.poset.leq(p, q)) X.maps[p * n + q] = RingHom::identity(R);
    return X;
}

OpenSubspace open_subspace(const SpacePtr& X, const OpenSet& U) {
    if (!X->poset.is_open(U)) throw SheafError("subset is not open");
    auto [P, idx] = X->poset.restrict_to(U);
    RingedSpace S{std::move(P), {}, {}};
    const std::size_t m = idx.size();
    for (std::size_t i : idx) S.rings.push_back(X->rings[i]);
    S.maps.assign(m * m, std::nullopt);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (S.poset.leq(a, b)) S.maps[a * m + b] = X->r(idx[a], idx[b]);
    return {std::make_shared<const RingedSpace>(std::move(S)), X, U, idx};
}

bool SheafModule::is_zero() const {
    return std::all_of(stalk.begin(), stalk.end(), [](const FiniteModule& m) { return m.is_zero(); });
}

BigInt SheafModule::total_order() const {
    BigInt n = 1;
    for (const auto& m : stalk) n *= m.group.order();
    return n;
}

void SheafModule::validate() const {
    const RingedSpace& X = *space;
    const std::size_t n = X.size();
    if (stalk.size() != n || res.size() != n * n) throw SheafError("sheaf has the wrong number of stalks");
    for (std::size_t p = 0; p < n; ++p) {
        if (!same_ring(stalk[p].ring, X.rings[p]))
            throw SheafError("stalk at " + X.poset.name(p) + " is over the wrong ring");
        stalk[p].validate();
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!X.poset.leq(p, q)) continue;
            const AbHom& h = r(p, q);
            if (h.src.orders != stalk[p].group.orders || h.tgt.orders != stalk[q].group.orders || !h.well_defined())
                throw SheafError("restriction " + pair_name(X.poset, p, q) + " is not a group map between the stalks");
            if (p == q && !same_hom(h, reduced_identity(stalk[p].group)))
                throw SheafError("restriction at " + X.poset.name(p) + " is not the identity");
            ModHom lin{stalk[p], restrict_scalars(stalk[q], X.r(p, q)), h};
            if (!lin.is_linear()) throw SheafError("restriction " + pair_name(X.poset, p, q) + " is not linear");
        }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t l = 0; l < n; ++l)
                if (X.poset.lt(p, q) && X.poset.lt(q, l) && !same_hom(compose(r(q, l), r(p, q)), r(p, l)))
                    throw SheafError("restrictions are not functorial on " + X.poset.name(p) + " <= " +
                                     X.poset.name(q) + " <= " + X.poset.name(l));
}

SheafModule SheafModule::from_hasse(const SpacePtr& X, std::vector<FiniteModule> stalks,
                                    const std::vector<std::pair<std::pair<std::size_t, std::size_t>, AbHom>>& edge_maps) {
    const std::size_t n = X->size();
    SheafModule M{X, std::move(stalks), {}};
    if (M.stalk.size() != n) throw SheafError("one stalk per point expected");
    M.res.assign(n * n, AbHom{});
    std::vector<char> set(n * n, 0);
    std::map<std::pair<std::size_t, std::size_t>, AbHom> given;
    for (const auto& [e, h] : edge_maps) {
        if (!X->poset.leq(e.first, e.second))
            throw SheafError("restriction given for non-comparable pair " + pair_name(X->poset, e.first, e.second));
        AbHom g = h;
        g.src = M.stalk[e.first].group;
        g.tgt = M.stalk[e.second].group;
        if (g.m.rows != g.tgt.rank() || g.m.cols != g.src.rank())
            throw SheafError("restriction " + pair_name(X->poset, e.first, e.second) + " has the wrong shape");
        reduce_rows(g.m, g.tgt.orders);
        given.insert_or_assign(e, g);
    }
    for (std::size_t p : top_down(X->poset)) {
        M.r(p, p) = reduced_identity(M.stalk[p].group);
        for (std::size_t q = 0; q < n; ++q) {
            if (!X->poset.lt(p, q)) continue;
            if (auto it = given.find({p, q}); it != given.end()) {
                M.r(p, q) = it->second;
                set[p * n + q] = 1;
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                auto it = given.find({p, c});
                if (it == given.end() || c == p || !X->poset.leq(c, q)) continue;
                M.r(p, q) = compose(M.r(c, q), it->second);
                set[p * n + q] = 1;
                break;
            }
            // A zero stalk at either end needs no data.
            if (!set[p * n + q]) {
                if (M.stalk[p].is_zero() || M.stalk[q].is_zero())
                    M.r(p, q) = AbHom::zero(M.stalk[p].group, M.stalk[q].group);
                else
                    throw SheafError("missing restriction for " + pair_name(X->poset, p, q));
            }
        }
    }
    M.validate();
    return M;
}

SheafPtr share(SheafModule M) { return std::make_shared<const SheafModule>(std::move(M)); }

bool SheafMorphism::is_valid() const {
    const RingedSpace& X = *src->space;
    const std::size_t n = X.size();
    if (comp.size() != n) return false;
    for (std::size_t p = 0; p < n; ++p) {
        if (comp[p].src.orders != src->stalk[p].group.orders || comp[p].tgt.orders != tgt->stalk[p].group.orders)
            return false;
        if (!ModHom{src->stalk[p], tgt->stalk[p], comp[p]}.is_linear()) return false;
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (X.poset.lt(p, q) && !same_hom(compose(comp[q], src->r(p, q)), compose(tgt->r(p, q), comp[p])))
                return false;
    return true;
}

bool SheafMorphism::is_zero() const {
    return std::all_of(comp.begin(), comp.end(), [](const AbHom& h) { return h.is_zero(); });
}

SheafMorphism SheafMorphism::zero(const SheafPtr& a, const SheafPtr& b) {
    SheafMorphism f{a, b, {}};
    for (std::size_t p = 0; p < a->size(); ++p) f.comp.push_back(AbHom::zero(a->stalk[p].group, b->stalk[p].group));
    return f;
}

SheafMorphism SheafMorphism::identity(const SheafPtr& a) {
    SheafMorphism f{a, a, {}};
    for (std::size_t p = 0; p < a->size(); ++p) f.comp.push_back(reduced_identity(a->stalk[p].group));
    return f;
}

SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f) {
    SheafMorphism h{f.src, g.tgt, {}};
    for (std::size_t p = 0; p < f.comp.size(); ++p) h.comp.push_back(compose(g.comp[p], f.comp[p]));
    return h;
}

SheafMorphism add(const SheafMorphism& f, const SheafMorphism& g) {
    SheafMorphism h{f.src, f.tgt, {}};
    for (std::size_t p = 0; p < f.comp.size(); ++p) h.comp.push_back(add(f.comp[p], g.comp[p]));
    return h;
}

SheafMorphism scale(const SheafMorphism& f, i64 c) {
    SheafMorphism h{f.src, f.tgt, {}};
    for (const auto& a : f.comp) h.comp.push_back(scale(a, c));
    return h;
}

bool equal(const SheafMorphism& f, const SheafMorphism& g) {
    if (f.comp.size() != g.comp.size()) return false;
    for (std::size_t p = 0; p < f.comp.size(); ++p)
        if (!same_hom(f.comp[p], g.comp[p])) return false;
    return true;
}

SheafPtr zero_sheaf(const SpacePtr& X) {
    const std::size_t n = X->size();
    SheafModule M{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) M.stalk.push_back(FiniteModule::zero(X->rings[p]));
    return share(std::move(M));
}

SheafPtr structure_sheaf(const SpacePtr& X) {
    const std::size_t n = X->size();
    SheafModule M{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) M.stalk.push_back(FiniteModule::free(X->rings[p], 1));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (X->poset.leq(p, q)) M.r(p, q) = X->r(p, q).additive();
    return share(std::move(M));
}

SheafMorphism kernel(const SheafMorphism& f) {
    const SheafModule& A = *f.src;
    const std::size_t n = A.size();
    std::vector<ModHom> inc;
    SheafModule K{A.space, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) {
        inc.push_back(kernel(ModHom{A.stalk[p], f.tgt->stalk[p], f.comp[p]}));
        K.stalk.push_back(inc.back().src);
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (A.space->poset.leq(p, q)) K.r(p, q) = factor_through(compose(A.r(p, q), inc[p].f), inc[q].f);
    SheafMorphism out{share(std::move(K)), f.src, {}};
    for (const auto& i : inc) out.comp.push_back(i.f);
    return out;
}

SheafMorphism cokernel(const SheafMorphism& f) {
    const SheafModule& B = *f.tgt;
    const std::size_t n = B.size();
    std::vector<ModHom> pr;
    std::vector<Mat> lift;
    SheafModule C{B.space, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) {
        ModHom h{f.src->stalk[p], B.stalk[p], f.comp[p]};
        pr.push_back(cokernel(h));
        lift.push_back(cokernel_lift(h));
        C.stalk.push_back(pr.back().tgt);
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (B.space->poset.leq(p, q)) {
                AbHom l{C.stalk[p].group, B.stalk[p].group, lift[p]};
                C.r(p, q) = compose(pr[q].f, compose(B.r(p, q), l));
            }
    SheafMorphism out{f.tgt, share(std::move(C)), {}};
    for (const auto& p : pr) out.comp.push_back(p.f);
    return out;
}

SheafMorphism image(const SheafMorphism& f) {
    const SheafModule& B = *f.tgt;
    const std::size_t n = B.size();
    std::vector<ModHom> inc;
    SheafModule I{B.space, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) {
        inc.push_back(image(ModHom{f.src->stalk[p], B.stalk[p], f.comp[p]}));
        I.stalk.push_back(inc.back().src);
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (B.space->poset.leq(p, q)) I.r(p, q) = factor_through(compose(B.r(p, q), inc[p].f), inc[q].f);
    SheafMorphism out{share(std::move(I)), f.tgt, {}};
    for (const auto& i : inc) out.comp.push_back(i.f);
    return out;
}

SheafMorphism factor_through(const SheafMorphism& g, const SheafMorphism& incl) {
    SheafMorphism h{g.src, incl.src, {}};
    for (std::size_t p = 0; p < g.comp.size(); ++p) h.comp.push_back(factor_through(g.comp[p], incl.comp[p]));
    return h;
}

SheafMorphism factor_from(const SheafMorphism& g, const SheafMorphism& proj) {
    SheafMorphism h{proj.tgt, g.tgt, {}};
    for (std::size_t p = 0; p < g.comp.size(); ++p) {
        ModHom gp{g.src->stalk[p], g.tgt->stalk[p], g.comp[p]};
        ModHom pp{proj.src->stalk[p], proj.tgt->stalk[p], proj.comp[p]};
        h.comp.push_back(factor_from(gp, pp).f);
    }
    return h;
}

SheafSum direct_sum(const SpacePtr& X, const std::vector<SheafPtr>& parts) {
    const std::size_t n = X->size();
    SheafModule S{X, {}, std::vector<AbHom>(n * n)};
    std::vector<DirectSum> local;
    for (std::size_t p = 0; p < n; ++p) {
        std::vector<FiniteModule> ms;
        for (const auto& part : parts) ms.push_back(part->stalk[p]);
        local.push_back(direct_sum(ms, X->rings[p]));
        S.stalk.push_back(local.back().module);
    }
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!X->poset.leq(p, q)) continue;
            std::vector<std::vector<std::optional<ModHom>>> blocks(parts.size(),
                                                                   std::vector<std::optional<ModHom>>(parts.size()));
            for (std::size_t i = 0; i < parts.size(); ++i)
                blocks[i][i] = ModHom{parts[i]->stalk[p], parts[i]->stalk[q], parts[i]->r(p, q)};
            // block_map only reads matrices, so the module types of the blocks do not matter here.
            S.r(p, q) = block_map(local[p], local[q], blocks).f;
        }
    SheafSum out{share(std::move(S)), {}, {}};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        SheafMorphism in{parts[i], out.sheaf, {}}, pr{out.sheaf, parts[i], {}};
        for (std::size_t p = 0; p < n; ++p) {
            in.comp.push_back(local[p].inj[i].f);
            pr.comp.push_back(local[p].proj[i].f);
        }
        out.inj.push_back(in);
        out.proj.push_back(pr);
    }
    return out;
}

SheafMorphism block_map(const SheafSum& a, const SheafSum& b,
                        const std::vector<std::vector<std::optional<SheafMorphism>>>& blocks) {
    SheafMorphism h = SheafMorphism::zero(a.sheaf, b.sheaf);
    for (std::size_t i = 0; i < b.inj.size(); ++i)
        for (std::size_t j = 0; j < a.inj.size(); ++j)
            if (blocks[i][j]) h = add(h, compose(b.inj[i], compose(*blocks[i][j], a.proj[j])));
    return h;
}

ModHom tilde_restriction(const SheafModule& M, std::size_t p, std::size_t q) {
    BaseChange bc = base_change(M.stalk[p], M.space->r(p, q));
    return base_change_adjoint(bc, M.stalk[q], M.r(p, q));
}

std::optional<std::pair<std::size_t, std::size_t>> quasicoherence_failure(const SheafModule& M) {
    const std::size_t n = M.size();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (M.space->poset.lt(p, q) && !is_iso(tilde_restriction(M, p, q).f)) return std::make_pair(p, q);
    return std::nullopt;
}

bool is_quasicoherent(const SheafModule& M) { return !quasicoherence_failure(M); }

}  // namespace finsheaf

namespace finsheaf {

namespace {

std::vector<std::size_t> part_offsets(const SheafSum& s, std::size_t p) {
    std::vector<std::size_t> off;
    std::size_t o = 0;
    for (const auto& in : s.inj) {
        off.push_back(o);
        o += in.src->stalk[p].rank();
    }
    return off;
}

}  // namespace

SheafMorphism sparse_map(const SheafSum& a, const SheafSum& b, const std::vector<SumBlock>& blocks) {
    SheafMorphism h = SheafMorphism::zero(a.sheaf, b.sheaf);
    for (std::size_t p = 0; p < h.comp.size(); ++p) {
        auto oa = part_offsets(a, p), ob = part_offsets(b, p);
        Mat& m = h.comp[p].m;
        for (const auto& blk : blocks) {
            const Mat& x = blk.map.comp[p].m;
            for (std::size_t i = 0; i < x.rows; ++i)
                for (std::size_t j = 0; j < x.cols; ++j) m(ob[blk.to] + i, oa[blk.from] + j) += x(i, j);
        }
        reduce_rows(m, h.comp[p].tgt.orders);
    }
    return h;
}

SheafMorphism inverse(const SheafMorphism& f) {
    SheafMorphism g{f.tgt, f.src, {}};
    for (const auto& h : f.comp) {
        if (!is_iso(h)) throw SheafError("inverse of a morphism that is not an isomorphism");
        g.comp.push_back(hom_from_images(h.tgt, h.src, [&](std::size_t i) {
            Vec e(h.tgt.rank(), 0);
            e[i] = 1;
            return *preimage(h, e);
        }));
    }
    return g;
}

}  // namespace finsheaf
