// Sections, Hom groups, pushforward and pullback, and the standard sheaf constructions.

#include <algorithm>
#include <sstream>

#include "finsheaf/sheafmod.hpp"

namespace finsheaf {

namespace {

AbHom reduced_identity(const AbGroup& g) {
    AbHom id = AbHom::identity(g);
    reduce_rows(id.m, g.orders);
    return id;
}

// Block-diagonal hom between two sums of groups.
AbHom block_diag(const std::vector<AbHom>& blocks, const AbGroup& src, const AbGroup& tgt) {
    AbHom h = AbHom::zero(src, tgt);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.m.rows; ++i)
            for (std::size_t j = 0; j < b.m.cols; ++j) h.m(r + i, c + j) = b.m(i, j);
        r += b.m.rows;
        c += b.m.cols;
    }
    return h;
}

}  // namespace

std::size_t Sections::offset(std::size_t w) const {
    auto it = std::find(points.begin(), points.end(), w);
    if (it == points.end()) throw SheafError("point is not in the open set");
    return offsets[static_cast<std::size_t>(it - points.begin())];
}

AbHom evaluate(const SheafModule& M, const Sections& s, std::size_t w) {
    const std::size_t o = s.offset(w);
    AbHom pr = AbHom::zero(s.ambient, M.stalk[w].group);
    for (std::size_t i = 0; i < M.stalk[w].rank(); ++i) pr.m(i, o + i) = 1;
    return compose(pr, s.sub.incl);
}

Sections sections(const SheafModule& M, const OpenSet& U) {
    const Poset& P = M.space->poset;
    if (!P.is_open(U)) throw SheafError("sections over a set that is not open");
    Sections s;
    std::size_t off = 0;
    for (std::size_t w = 0; w < P.size(); ++w) {
        if (!U[w]) continue;
        s.points.push_back(w);
        s.offsets.push_back(off);
        s.ambient.orders.insert(s.ambient.orders.end(), M.stalk[w].group.orders.begin(), M.stalk[w].group.orders.end());
        off += M.stalk[w].rank();
    }
    // Compatibility on covering pairs inside U implies it on all pairs.
    AbGroup cons;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a : s.points)
        for (std::size_t b : s.points)
            if (P.covers(a, b)) {
                pairs.emplace_back(a, b);
                cons.orders.insert(cons.orders.end(), M.stalk[b].group.orders.begin(), M.stalk[b].group.orders.end());
            }
    AbHom c = AbHom::zero(s.ambient, cons);
    std::size_t row = 0;
    for (auto [a, b] : pairs) {
        const AbHom& r = M.r(a, b);
        const std::size_t oa = s.offset(a), ob = s.offset(b);
        for (std::size_t i = 0; i < r.m.rows; ++i) {
            for (std::size_t j = 0; j < r.m.cols; ++j) c.m(row + i, oa + j) = r.m(i, j);
            c.m(row + i, ob + i) = mod(c.m(row + i, ob + i) - 1, cons.orders[row + i]);
        }
        row += r.m.rows;
    }
    s.sub = kernel(c);
    return s;
}

FiniteModule sections_module(const SheafModule& M, const Sections& s, const RingPtr& R,
                             const std::vector<RingHom>& to_points) {
    FiniteModule G{R, s.sub.group, {}};
    for (std::size_t k = 0; k < R->rank(); ++k) {
        std::vector<AbHom> blocks;
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            const FiniteModule& Mw = M.stalk[s.points[i]];
            blocks.push_back({Mw.group, Mw.group, Mw.action(to_points[i].apply(R->basis(k)))});
        }
        AbHom a = block_diag(blocks, s.ambient, s.ambient);
        G.act.push_back(factor_through(compose(a, s.sub.incl), s.sub.incl).m);
    }
    return G;
}

AbHom restrict_sections(const SheafModule& M, const Sections& u, const Sections& v) {
    AbHom proj = AbHom::zero(u.ambient, v.ambient);
    for (std::size_t i = 0; i < v.points.size(); ++i) {
        const std::size_t w = v.points[i];
        const std::size_t ou = u.offset(w), ov = v.offsets[i];
        for (std::size_t j = 0; j < M.stalk[w].rank(); ++j) proj.m(ov + j, ou + j) = 1;
    }
    return factor_through(compose(proj, u.sub.incl), v.sub.incl);
}

AbHom sections_map(const SheafMorphism& f, const Sections& a, const Sections& b) {
    std::vector<AbHom> blocks;
    for (std::size_t w : a.points) blocks.push_back(f.comp[w]);
    AbHom amb = block_diag(blocks, a.ambient, b.ambient);
    return factor_through(compose(amb, a.sub.incl), b.sub.incl);
}

SheafMorphism SheafHomGroup::to_morphism(const Vec& x) const {
    Vec y = sub.incl.apply(x);
    SheafMorphism f{src, tgt, {}};
    std::size_t off = 0;
    for (std::size_t p = 0; p < local.size(); ++p) {
        const std::size_t r = local[p].module.rank();
        Vec part(y.begin() + static_cast<std::ptrdiff_t>(off), y.begin() + static_cast<std::ptrdiff_t>(off + r));
        f.comp.push_back({src->stalk[p].group, tgt->stalk[p].group, local[p].to_matrix(part)});
        off += r;
    }
    return f;
}

Vec SheafHomGroup::from_morphism(const SheafMorphism& f) const {
    Vec y;
    for (std::size_t p = 0; p < local.size(); ++p) {
        Vec part = local[p].from_matrix(f.comp[p].m);
        y.insert(y.end(), part.begin(), part.end());
    }
    auto x = preimage(sub.incl, y);
    if (!x) throw std::logic_error("from_morphism: not a morphism of sheaves");
    return *x;
}

SheafHomGroup hom_group(const SheafPtr& M, const SheafPtr& N) {
    const RingedSpace& X = *M->space;
    const std::size_t n = X.size();
    SheafHomGroup h{M, N, {}, {}, {}};
    std::vector<std::size_t> offs;
    for (std::size_t p = 0; p < n; ++p) {
        h.local.push_back(hom_module(M->stalk[p], N->stalk[p]));
        offs.push_back(h.ambient.rank());
        const auto& o = h.local.back().module.group.orders;
        h.ambient.orders.insert(h.ambient.orders.end(), o.begin(), o.end());
    }
    AbGroup cons;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> row_off;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            if (X.poset.covers(p, q)) {
                pairs.emplace_back(p, q);
                row_off.push_back(cons.rank());
                for (i64 o : N->stalk[q].group.orders)
                    for (std::size_t j = 0; j < M->stalk[p].rank(); ++j) cons.orders.push_back(o);
            }
    AbHom c = AbHom::zero(h.ambient, cons);
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        auto [p, q] = pairs[t];
        const std::size_t mp = M->stalk[p].rank();
        for (std::size_t side = 0; side < 2; ++side) {
            const std::size_t pt = side == 0 ? p : q;
            for (std::size_t col = 0; col < h.local[pt].module.rank(); ++col) {
                Vec e(h.local[pt].module.rank(), 0);
                e[col] = 1;
                AbHom f{M->stalk[pt].group, N->stalk[pt].group, h.local[pt].to_matrix(e)};
                // N.r o f_p - f_q o M.r
                AbHom d = side == 0 ? compose(N->r(p, q), f) : negate(compose(f, M->r(p, q)));
                for (std::size_t i = 0; i < d.m.rows; ++i)
                    for (std::size_t j = 0; j < mp; ++j) {
                        const std::size_t row = row_off[t] + i * mp + j;
                        c.m(row, offs[pt] + col) = mod(c.m(row, offs[pt] + col) + d.m(i, j), cons.orders[row]);
                    }
            }
        }
    }
    h.sub = kernel(c);
    return h;
}

void RingedMap::validate() const {
    const RingedSpace& X = *source;
    const RingedSpace& Y = *target;
    if (assign.size() != X.size() || comp.size() != X.size()) throw SheafError("map has the wrong number of points");
    for (std::size_t x = 0; x < X.size(); ++x) {
        if (assign[x] >= Y.size()) throw SheafError("map sends a point outside the target");
        if (!same_ring(comp[x].src, Y.rings[assign[x]]) || !same_ring(comp[x].tgt, X.rings[x]))
            throw SheafError("comparison ring map at " + X.poset.name(x) + " has the wrong rings");
        comp[x].validate();
    }
    MonotoneMap m{&X.poset, &Y.poset, assign};
    if (!m.is_monotone()) throw SheafError("map is not monotone");
    for (std::size_t x = 0; x < X.size(); ++x)
        for (std::size_t x2 = 0; x2 < X.size(); ++x2) {
            if (!X.poset.lt(x, x2)) continue;
            AbHom a = compose(comp[x2], Y.r(assign[x], assign[x2])).additive();
            AbHom b = compose(X.r(x, x2), comp[x]).additive();
            if (a.m != b.m)
                throw SheafError("comparison maps do not commute with restrictions on " + X.poset.name(x) + " <= " +
                                 X.poset.name(x2));
        }
}

RingedMap RingedMap::identity(const SpacePtr& X) {
    RingedMap f{X, X, {}, {}};
    for (std::size_t x = 0; x < X->size(); ++x) {
        f.assign.push_back(x);
        f.comp.push_back(RingHom::identity(X->rings[x]));
    }
    return f;
}

RingedMap RingedMap::to_point(const SpacePtr& X, const SpacePtr& pt, const std::vector<RingHom>& comp) {
    RingedMap f{X, pt, std::vector<std::size_t>(X->size(), 0), comp};
    f.validate();
    return f;
}

RingedMap RingedMap::inclusion(const OpenSubspace& U) {
    RingedMap f{U.space, U.parent, U.to_parent, {}};
    for (std::size_t x = 0; x < U.space->size(); ++x) f.comp.push_back(RingHom::identity(U.space->rings[x]));
    return f;
}

RingedMap compose(const RingedMap& g, const RingedMap& f) {
    RingedMap h{f.source, g.target, {}, {}};
    for (std::size_t x = 0; x < f.source->size(); ++x) {
        h.assign.push_back(g.assign[f.assign[x]]);
        h.comp.push_back(compose(f.comp[x], g.comp[f.assign[x]]));
    }
    return h;
}

std::vector<RingHom> ring_maps_over(const RingedMap& f, std::size_t y, const std::vector<std::size_t>& points) {
    std::vector<RingHom> out;
    for (std::size_t w : points) out.push_back(compose(f.comp[w], f.target->r(y, f.assign[w])));
    return out;
}

namespace {

std::vector<Sections> fiber_sections(const RingedMap& f, const SheafModule& M) {
    std::vector<Sections> out;
    for (std::size_t y = 0; y < f.target->size(); ++y)
        out.push_back(sections(M, preimage(f.assign, f.target->poset.up_set(y), f.source->size())));
    return out;
}

}  // namespace

SheafPtr pushforward(const RingedMap& f, const SheafModule& M) {
    const RingedSpace& Y = *f.target;
    const std::size_t n = Y.size();
    auto secs = fiber_sections(f, M);
    SheafModule P{f.target, {}, std::vector<AbHom>(n * n)};
    for (std::size_t y = 0; y < n; ++y)
        P.stalk.push_back(sections_module(M, secs[y], Y.rings[y], ring_maps_over(f, y, secs[y].points)));
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t y2 = 0; y2 < n; ++y2)
            if (Y.poset.leq(y, y2)) P.r(y, y2) = restrict_sections(M, secs[y], secs[y2]);
    return share(std::move(P));
}

SheafMorphism pushforward(const RingedMap& f, const SheafMorphism& g, const SheafPtr& src, const SheafPtr& tgt) {
    auto a = fiber_sections(f, *g.src), b = fiber_sections(f, *g.tgt);
    SheafMorphism h{src, tgt, {}};
    for (std::size_t y = 0; y < f.target->size(); ++y) h.comp.push_back(sections_map(g, a[y], b[y]));
    return h;
}

SheafMorphism pushforward(const RingedMap& f, const SheafMorphism& g) {
    return pushforward(f, g, pushforward(f, *g.src), pushforward(f, *g.tgt));
}

SheafPtr pullback(const RingedMap& f, const SheafModule& N) {
    const RingedSpace& X = *f.source;
    const std::size_t n = X.size();
    std::vector<BaseChange> bc;
    SheafModule P{f.source, {}, std::vector<AbHom>(n * n)};
    for (std::size_t x = 0; x < n; ++x) {
        bc.push_back(base_change(N.stalk[f.assign[x]], f.comp[x]));
        P.stalk.push_back(bc.back().module);
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            if (!X.poset.leq(x, x2)) continue;
            const AbHom& rn = N.r(f.assign[x], f.assign[x2]);
            const RingHom& rx = X.r(x, x2);
            const FiniteRing& Ox = *X.rings[x];
            auto beta = [&](std::size_t i, std::size_t j) { return bc[x2].t.pure(rn.m.col(i), rx.apply(Ox.basis(j))); };
            P.r(x, x2) = from_bilinear(bc[x].t, P.stalk[x2].group, beta);
        }
    return share(std::move(P));
}

SheafPtr restrict(const SheafModule& M, const OpenSubspace& U) {
    const std::size_t m = U.to_parent.size();
    SheafModule R{U.space, {}, std::vector<AbHom>(m * m)};
    for (std::size_t a = 0; a < m; ++a) R.stalk.push_back(M.stalk[U.to_parent[a]]);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            if (U.space->poset.leq(a, b)) R.r(a, b) = M.r(U.to_parent[a], U.to_parent[b]);
    return share(std::move(R));
}

SheafMorphism restrict(const SheafMorphism& f, const OpenSubspace& U) {
    SheafMorphism g{restrict(*f.src, U), restrict(*f.tgt, U), {}};
    for (std::size_t a : U.to_parent) g.comp.push_back(f.comp[a]);
    return g;
}

SheafPtr hom_sheaf(const SheafPtr& N, const SheafPtr& M) {
    const SpacePtr& X = N->space;
    const Poset& P = X->poset;
    const std::size_t n = X->size();
    std::vector<OpenSubspace> U;
    std::vector<SheafHomGroup> H;
    for (std::size_t x = 0; x < n; ++x) {
        U.push_back(open_subspace(X, P.up_set(x)));
        H.push_back(hom_group(restrict(*N, U[x]), restrict(*M, U[x])));
    }
    auto unit = [](const AbGroup& G, std::size_t j) {
        Vec e(G.rank(), 0);
        e[j] = 1;
        return e;
    };
    SheafModule S{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t x = 0; x < n; ++x) {
        const FiniteRing& R = *X->rings[x];
        const AbGroup& G = H[x].sub.group;
        FiniteModule mod{X->rings[x], G, {}};
        for (std::size_t k = 0; k < R.rank(); ++k) {
            AbHom act = hom_from_images(G, G, [&](std::size_t j) {
                SheafMorphism f = H[x].to_morphism(unit(G, j));
                for (std::size_t a = 0; a < f.comp.size(); ++a) {
                    const std::size_t w = U[x].to_parent[a];
                    const FiniteModule& Mw = M->stalk[w];
                    AbHom by{Mw.group, Mw.group, Mw.action(X->r(x, w).apply(R.basis(k)))};
                    f.comp[a] = compose(by, f.comp[a]);
                }
                return H[x].from_morphism(f);
            });
            mod.act.push_back(act.m);
        }
        S.stalk.push_back(std::move(mod));
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!P.leq(x, y)) continue;
            std::vector<std::size_t> at(n, 0);
            for (std::size_t a = 0; a < U[x].to_parent.size(); ++a) at[U[x].to_parent[a]] = a;
            S.r(x, y) = hom_from_images(S.stalk[x].group, S.stalk[y].group, [&](std::size_t j) {
                SheafMorphism f = H[x].to_morphism(unit(S.stalk[x].group, j));
                SheafMorphism g{H[y].src, H[y].tgt, {}};
                for (std::size_t w : U[y].to_parent) g.comp.push_back(f.comp[at[w]]);
                return H[y].from_morphism(g);
            });
        }
    return share(std::move(S));
}

SheafPtr tilde(const OpenSubspace& Ux, const FiniteModule& A) {
    const RingedSpace& S = *Ux.space;
    const std::size_t m = S.size();
    auto mins = S.poset.minimal_points();
    if (mins.size() != 1) throw SheafError("tilde needs an open set with a minimum");
    const std::size_t x = mins[0];
    if (!same_ring(A.ring, S.rings[x])) throw SheafError("tilde: module is over the wrong ring");
    std::vector<BaseChange> bc;
    SheafModule T{Ux.space, {}, std::vector<AbHom>(m * m)};
    for (std::size_t q = 0; q < m; ++q) {
        bc.push_back(base_change(A, S.r(x, q)));
        T.stalk.push_back(bc.back().module);
    }
    for (std::size_t q = 0; q < m; ++q)
        for (std::size_t q2 = 0; q2 < m; ++q2) {
            if (!S.poset.leq(q, q2)) continue;
            const RingHom& rq = S.r(q, q2);
            const FiniteRing& Oq = *S.rings[q];
            auto beta = [&](std::size_t i, std::size_t j) {
                Vec a(A.rank(), 0);
                a[i] = 1;
                return bc[q2].t.pure(a, rq.apply(Oq.basis(j)));
            };
            T.r(q, q2) = from_bilinear(bc[q].t, T.stalk[q2].group, beta);
        }
    return share(std::move(T));
}

SheafPtr pushed_tilde(const SpacePtr& X, std::size_t x, const FiniteModule& A) {
    OpenSubspace U = open_subspace(X, X->poset.up_set(x));
    return pushforward(RingedMap::inclusion(U), *tilde(U, A));
}

SheafPtr ext_by_zero(const SpacePtr& X, const OpenSet& U) {
    if (!X->poset.is_open(U)) throw SheafError("ext_by_zero: set is not open");
    const std::size_t n = X->size();
    SheafModule M{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p)
        M.stalk.push_back(U[p] ? FiniteModule::free(X->rings[p], 1) : FiniteModule::zero(X->rings[p]));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!X->poset.leq(p, q)) continue;
            M.r(p, q) = U[p] && U[q] ? X->r(p, q).additive() : AbHom::zero(M.stalk[p].group, M.stalk[q].group);
        }
    return share(std::move(M));
}

SheafPtr co_skyscraper(const SpacePtr& X, std::size_t x, const FiniteModule& A) {
    if (!same_ring(A.ring, X->rings[x])) throw SheafError("co_skyscraper: module is over the wrong ring");
    const std::size_t n = X->size();
    SheafModule M{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t q = 0; q < n; ++q)
        M.stalk.push_back(X->poset.leq(q, x) ? restrict_scalars(A, X->r(q, x)) : FiniteModule::zero(X->rings[q]));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            if (!X->poset.leq(p, q)) continue;
            M.r(p, q) = X->poset.leq(q, x) ? reduced_identity(A.group) : AbHom::zero(M.stalk[p].group, M.stalk[q].group);
        }
    return share(std::move(M));
}

SheafMorphism to_co_skyscraper(const SheafPtr& M, const SheafPtr& C, std::size_t x, const AbHom& h) {
    SheafMorphism f{M, C, {}};
    const Poset& P = M->space->poset;
    for (std::size_t q = 0; q < P.size(); ++q)
        f.comp.push_back(P.leq(q, x) ? compose(h, M->r(q, x)) : AbHom::zero(M->stalk[q].group, C->stalk[q].group));
    return f;
}

SheafPtr skyscraper(const SpacePtr& X, std::size_t q, const FiniteModule& A) {
    if (!same_ring(A.ring, X->rings[q])) throw SheafError("skyscraper: module is over the wrong ring");
    const std::size_t n = X->size();
    SheafModule M{X, {}, std::vector<AbHom>(n * n)};
    for (std::size_t p = 0; p < n; ++p) M.stalk.push_back(p == q ? A : FiniteModule::zero(X->rings[p]));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t p2 = 0; p2 < n; ++p2)
            if (X->poset.leq(p, p2))
                M.r(p, p2) = p == q && p2 == q ? reduced_identity(A.group) : AbHom::zero(M.stalk[p].group, M.stalk[p2].group);
    return share(std::move(M));
}

std::string describe(const SheafModule& M) {
    std::ostringstream os;
    for (std::size_t p = 0; p < M.size(); ++p) {
        os << M.space->poset.name(p) << ": [";
        auto inv = M.stalk[p].group.invariants();
        for (std::size_t i = 0; i < inv.size(); ++i) os << (i ? "," : "") << inv[i];
        os << "]" << (p + 1 < M.size() ? " " : "");
    }
    return os.str();
}

}  // namespace finsheaf
