#include "finsheaf/cxalg.hpp"

#include <algorithm>

namespace finsheaf {

namespace {

bool is_iso(const SheafMorphism& f) {
    return std::all_of(f.comp.begin(), f.comp.end(), [](const AbHom& h) { return finsheaf::is_iso(h); });
}

i64 sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

SheafPtr SheafComplex::at(int n) const {
    if (n < lo || n > hi()) return zero_sheaf(space);
    return terms[static_cast<std::size_t>(n - lo)];
}

SheafMorphism SheafComplex::diff(int n) const {
    if (n >= lo && n + 1 <= hi()) return d[static_cast<std::size_t>(n - lo)];
    return SheafMorphism::zero(at(n), at(n + 1));
}

bool SheafComplex::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const SheafPtr& t) { return t->is_zero(); });
}

void SheafComplex::validate() const {
    if (!terms.empty() && d.size() + 1 != terms.size()) throw SheafError("complex has the wrong number of differentials");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].src->stalk.size() != terms[i]->size() || !d[i].is_valid())
            throw SheafError("differential in degree " + std::to_string(lo + static_cast<int>(i)) + " is not a morphism");
        for (std::size_t p = 0; p < terms[i]->size(); ++p)
            if (d[i].comp[p].src.orders != terms[i]->stalk[p].group.orders ||
                d[i].comp[p].tgt.orders != terms[i + 1]->stalk[p].group.orders)
                throw SheafError("differential in degree " + std::to_string(lo + static_cast<int>(i)) +
                                 " has the wrong shape");
    }
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (!compose(d[i + 1], d[i]).is_zero())
            throw SheafError("d o d is not zero in degree " + std::to_string(lo + static_cast<int>(i)));
}

SheafComplex SheafComplex::single(const SheafPtr& M, int degree) { return {M->space, degree, {M}, {}}; }

SheafComplex SheafComplex::zero(const SpacePtr& X) { return {X, 0, {}, {}}; }

SheafComplex SheafComplex::trimmed() const {
    std::size_t a = 0, b = terms.size();
    while (a < b && terms[a]->is_zero()) ++a;
    while (b > a && terms[b - 1]->is_zero()) --b;
    if (a == b) return zero(space);
    SheafComplex out{space, lo + static_cast<int>(a), {}, {}};
    for (std::size_t i = a; i < b; ++i) out.terms.push_back(terms[i]);
    for (std::size_t i = a; i + 1 < b; ++i) out.d.push_back(d[i]);
    return out;
}

SheafMorphism ComplexMorphism::at(int n) const {
    const int k = n - lo;
    if (k >= 0 && k < static_cast<int>(f.size())) return f[static_cast<std::size_t>(k)];
    return SheafMorphism::zero(src.at(n), tgt.at(n));
}

bool ComplexMorphism::is_valid() const {
    const int a = std::min({src.lo, tgt.lo, lo}) - 1;
    const int b = std::max({src.hi(), tgt.hi(), lo + static_cast<int>(f.size()) - 1}) + 1;
    for (int n = a; n <= b; ++n) {
        SheafMorphism fn = at(n);
        if (!fn.is_valid()) return false;
        if (!equal(compose(at(n + 1), src.diff(n)), compose(tgt.diff(n), fn))) return false;
    }
    return true;
}

namespace {

std::pair<int, int> span(const ComplexMorphism& f, const ComplexMorphism& g) {
    int a = std::min({f.src.lo, f.tgt.lo, g.src.lo, g.tgt.lo});
    int b = std::max({f.src.hi(), f.tgt.hi(), g.src.hi(), g.tgt.hi()});
    return {a, b};
}

}  // namespace

ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f) {
    auto [a, b] = span(f, g);
    ComplexMorphism h{f.src, g.tgt, a, {}};
    for (int n = a; n <= b; ++n) h.f.push_back(compose(g.at(n), f.at(n)));
    return h;
}

ComplexMorphism identity(const SheafComplex& C) {
    ComplexMorphism h{C, C, C.lo, {}};
    for (const auto& t : C.terms) h.f.push_back(SheafMorphism::identity(t));
    return h;
}

ComplexMorphism single_map(const SheafMorphism& f, int degree) {
    return {SheafComplex::single(f.src, degree), SheafComplex::single(f.tgt, degree), degree, {f}};
}

ComplexMorphism augmentation(const SheafMorphism& f, const SheafComplex& C) {
    return {SheafComplex::single(f.src, 0), C, 0, {f}};
}

ComplexMorphism add(const ComplexMorphism& f, const ComplexMorphism& g) {
    auto [a, b] = span(f, g);
    ComplexMorphism h{f.src, f.tgt, a, {}};
    for (int n = a; n <= b; ++n) h.f.push_back(add(f.at(n), g.at(n)));
    return h;
}

ComplexMorphism negate(const ComplexMorphism& f) {
    ComplexMorphism h = f;
    for (auto& c : h.f) c = scale(c, -1);
    return h;
}

SheafComplex shift(const SheafComplex& C, int k) {
    SheafComplex out{C.space, C.lo - k, C.terms, C.d};
    if (k % 2 != 0)
        for (auto& m : out.d) m = scale(m, -1);
    return out;
}

Cone cone(const ComplexMorphism& f) {
    const SheafComplex &C = f.src, &D = f.tgt;
    const SpacePtr& X = D.space;
    const int a = std::min(C.lo - 1, D.lo), b = std::max(C.hi() - 1, D.hi());
    std::vector<SheafSum> sums;
    for (int n = a; n <= b + 1; ++n) sums.push_back(direct_sum(X, {C.at(n + 1), D.at(n)}));
    Cone out{{X, a, {}, {}}, {D, {}, D.lo, {}}, {}};
    for (int n = a; n <= b; ++n) {
        const SheafSum &s = sums[static_cast<std::size_t>(n - a)], &t = sums[static_cast<std::size_t>(n + 1 - a)];
        out.cx.terms.push_back(s.sheaf);
        if (n < b)
            out.cx.d.push_back(block_map(s, t, {{scale(C.diff(n + 1), -1), std::nullopt}, {f.at(n + 1), D.diff(n)}}));
    }
    out.from_target.tgt = out.cx;
    for (int n = D.lo; n <= D.hi(); ++n) out.from_target.f.push_back(sums[static_cast<std::size_t>(n - a)].inj[1]);
    SheafComplex C1 = shift(C, 1);
    out.to_shift = {out.cx, C1, a, {}};
    for (int n = a; n <= b; ++n) {
        SheafMorphism pr = sums[static_cast<std::size_t>(n - a)].proj[0];
        pr.tgt = C1.at(n);
        out.to_shift.f.push_back(pr);
    }
    return out;
}

std::size_t Total::index(const Bicomplex& B, int p, int q) const {
    const int pl = p - B.p0, ql = q - B.q0;
    const int pmin = std::max(0, pl + ql - (static_cast<int>(B.cols()) - 1));
    return static_cast<std::size_t>(pl - pmin);
}

Total total(const Bicomplex& B) {
    const int R = static_cast<int>(B.rows()), K = static_cast<int>(B.cols());
    Total out{{B.space, B.p0 + B.q0, {}, {}}, {}};
    if (R == 0 || K == 0) {
        out.cx = SheafComplex::zero(B.space);
        return out;
    }
    auto cell = [&](int p, int q) { return B.terms[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; };
    for (int nl = 0; nl <= R + K - 2; ++nl) {
        std::vector<SheafPtr> parts;
        for (int p = std::max(0, nl - (K - 1)); p <= std::min(nl, R - 1); ++p) parts.push_back(cell(p, nl - p));
        out.sums.push_back(direct_sum(B.space, parts));
        out.cx.terms.push_back(out.sums.back().sheaf);
    }
    for (int nl = 0; nl + 1 <= R + K - 2; ++nl) {
        const SheafSum &s = out.sums[static_cast<std::size_t>(nl)], &t = out.sums[static_cast<std::size_t>(nl + 1)];
        std::vector<std::vector<std::optional<SheafMorphism>>> blocks(t.inj.size(),
                                                                      std::vector<std::optional<SheafMorphism>>(s.inj.size()));
        const int smin = std::max(0, nl - (K - 1)), tmin = std::max(0, nl + 1 - (K - 1));
        for (int p = smin; p <= std::min(nl, R - 1); ++p) {
            const int q = nl - p;
            const auto j = static_cast<std::size_t>(p - smin);
            if (p + 1 < R)
                blocks[static_cast<std::size_t>(p + 1 - tmin)][j] = B.dh[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            if (q + 1 < K)
                blocks[static_cast<std::size_t>(p - tmin)][j] =
                    scale(B.dv[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)], sign(B.p0 + p));
        }
        out.cx.d.push_back(block_map(s, t, blocks));
    }
    return out;
}

Cohomology cohomology(const SheafComplex& C, int n) {
    SheafMorphism z = kernel(C.diff(n));
    SheafMorphism b = factor_through(C.diff(n - 1), z);
    SheafMorphism pr = cokernel(b);
    return {pr.tgt, z, pr};
}

SheafMorphism induced(const ComplexMorphism& f, int n, const Cohomology& a, const Cohomology& b) {
    SheafMorphism zz = factor_through(compose(f.at(n), a.cycles), b.cycles);
    return factor_from(compose(b.proj, zz), a.proj);
}

bool is_acyclic(const SheafComplex& C) {
    for (int n = C.lo; n <= C.hi(); ++n)
        if (!cohomology(C, n).H->is_zero()) return false;
    return true;
}

std::optional<int> quasi_iso_failure(const ComplexMorphism& f) {
    const int a = std::min(f.src.lo, f.tgt.lo), b = std::max(f.src.hi(), f.tgt.hi());
    for (int n = a; n <= b; ++n) {
        Cohomology x = cohomology(f.src, n), y = cohomology(f.tgt, n);
        if (!is_iso(induced(f, n, x, y))) return n;
    }
    return std::nullopt;
}

bool is_quasi_iso(const ComplexMorphism& f) { return !quasi_iso_failure(f); }

}  // namespace finsheaf

namespace finsheaf {

std::optional<std::pair<std::size_t, std::size_t>> flatness_failure(const RingedSpace& X) {
    for (std::size_t p = 0; p < X.size(); ++p)
        for (std::size_t q = 0; q < X.size(); ++q)
            if (X.poset.lt(p, q) && !is_flat(restrict_scalars(FiniteModule::free(X.rings[q], 1), X.r(p, q))))
                return std::make_pair(p, q);
    return std::nullopt;
}

namespace {

bool group_quasi_iso(const GroupComplex& A, const GroupComplex& B, const std::vector<AbHom>& f, int lo) {
    const int a = std::min(A.lo, B.lo), b = std::max(A.hi(), B.hi());
    for (int n = a; n <= b; ++n)
        if (!is_iso(induced(f, lo, n, cohomology(A, n), cohomology(B, n)))) return false;
    return true;
}

}  // namespace

bool in_Dqc(const SheafComplex& C) {
    const RingedSpace& X = *C.space;
    if (auto bad = flatness_failure(X))
        throw SheafError("restriction " + X.poset.name(bad->first) + " -> " + X.poset.name(bad->second) +
                         " is not flat");
    for (std::size_t p = 0; p < X.size(); ++p)
        for (std::size_t q = 0; q < X.size(); ++q) {
            if (!X.poset.lt(p, q)) continue;
            GroupComplex A{C.lo, {}, {}}, B{C.lo, {}, {}};
            std::vector<BaseChange> bc;
            std::vector<AbHom> f;
            for (int n = C.lo; n <= C.hi(); ++n) {
                const SheafModule& M = *C.at(n);
                bc.push_back(base_change(M.stalk[p], X.r(p, q)));
                A.terms.push_back(bc.back().module.group);
                B.terms.push_back(M.stalk[q].group);
                f.push_back(tilde_restriction(M, p, q).f);
            }
            for (int n = C.lo; n < C.hi(); ++n) {
                const auto i = static_cast<std::size_t>(n - C.lo);
                const SheafMorphism d = C.diff(n);
                ModHom dp{C.at(n)->stalk[p], C.at(n + 1)->stalk[p], d.comp[p]};
                A.d.push_back(base_change_map(bc[i], bc[i + 1], dp).f);
                B.d.push_back(d.comp[q]);
            }
            if (!group_quasi_iso(A, B, f, C.lo)) return false;
        }
    return true;
}

bool cohomology_is_quasicoherent(const SheafComplex& C) {
    for (int n = C.lo; n <= C.hi(); ++n)
        if (!is_quasicoherent(*cohomology(C, n).H)) return false;
    return true;
}

SheafComplex map_complex(const SheafComplex& C, const std::function<SheafPtr(const SheafPtr&)>& on_obj,
                         const std::function<SheafMorphism(const SheafMorphism&, const SheafPtr&, const SheafPtr&)>& on_mor) {
    SheafComplex out{nullptr, C.lo, {}, {}};
    for (const auto& t : C.terms) out.terms.push_back(on_obj(t));
    if (out.terms.empty()) return out;
    out.space = out.terms[0]->space;
    for (std::size_t i = 0; i < C.d.size(); ++i) out.d.push_back(on_mor(C.d[i], out.terms[i], out.terms[i + 1]));
    return out;
}

SheafComplex pushforward(const RingedMap& f, const SheafComplex& C) {
    SheafComplex out = map_complex(
        C, [&](const SheafPtr& M) { return pushforward(f, *M); },
        [&](const SheafMorphism& g, const SheafPtr& a, const SheafPtr& b) { return pushforward(f, g, a, b); });
    out.space = f.target;
    return out;
}

ComplexMorphism pushforward(const RingedMap& f, const ComplexMorphism& g, const SheafComplex& src,
                            const SheafComplex& tgt) {
    ComplexMorphism h{src, tgt, g.lo, {}};
    for (std::size_t i = 0; i < g.f.size(); ++i) {
        const int n = g.lo + static_cast<int>(i);
        h.f.push_back(pushforward(f, g.f[i], src.at(n), tgt.at(n)));
    }
    return h;
}

SheafComplex restrict(const SheafComplex& C, const OpenSubspace& U) {
    SheafComplex out = map_complex(
        C, [&](const SheafPtr& M) { return restrict(*M, U); },
        [&](const SheafMorphism& g, const SheafPtr& a, const SheafPtr& b) {
            SheafMorphism h = restrict(g, U);
            h.src = a;
            h.tgt = b;
            return h;
        });
    out.space = U.space;
    return out;
}

ComplexMorphism restrict(const ComplexMorphism& f, const SheafComplex& src, const SheafComplex& tgt,
                         const OpenSubspace& U) {
    ComplexMorphism h{src, tgt, f.lo, {}};
    for (std::size_t i = 0; i < f.f.size(); ++i) {
        const int n = f.lo + static_cast<int>(i);
        SheafMorphism g = restrict(f.f[i], U);
        g.src = src.at(n);
        g.tgt = tgt.at(n);
        h.f.push_back(g);
    }
    return h;
}

AbGroup GroupComplex::at(int n) const {
    if (n < lo || n > hi()) return AbGroup::zero();
    return terms[static_cast<std::size_t>(n - lo)];
}

AbHom GroupComplex::diff(int n) const {
    if (n >= lo && n + 1 <= hi()) return d[static_cast<std::size_t>(n - lo)];
    return AbHom::zero(at(n), at(n + 1));
}

void GroupComplex::validate() const {
    if (!terms.empty() && d.size() + 1 != terms.size()) throw SheafError("complex has the wrong number of differentials");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i].src.orders != terms[i].orders || d[i].tgt.orders != terms[i + 1].orders || !d[i].well_defined())
            throw SheafError("bad differential in degree " + std::to_string(lo + static_cast<int>(i)));
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (!compose(d[i + 1], d[i]).is_zero())
            throw SheafError("d o d is not zero in degree " + std::to_string(lo + static_cast<int>(i)));
}

GroupCohomology cohomology(const GroupComplex& C, int n) {
    Sub z = kernel(C.diff(n));
    AbHom b = factor_through(C.diff(n - 1), z.incl);
    Quotient q = quotient(z.group, b.m);
    return {q.group, z, q};
}

AbHom induced(const std::vector<AbHom>& f, int lo, int n, const GroupCohomology& a, const GroupCohomology& b) {
    const int k = n - lo;
    AbHom fn = (k >= 0 && k < static_cast<int>(f.size())) ? f[static_cast<std::size_t>(k)]
                                                           : AbHom::zero(a.cycles.incl.tgt, b.cycles.incl.tgt);
    AbHom zz = factor_through(compose(fn, a.cycles.incl), b.cycles.incl);
    AbHom lift{a.H, a.cycles.group, a.quot.lift};
    return compose(compose(b.quot.proj, zz), lift);
}

GroupComplex global_sections(const SheafComplex& C) {
    const OpenSet all = C.space->poset.whole();
    GroupComplex out{C.lo, {}, {}};
    std::vector<Sections> s;
    for (const auto& t : C.terms) {
        s.push_back(sections(*t, all));
        out.terms.push_back(s.back().sub.group);
    }
    for (std::size_t i = 0; i < C.d.size(); ++i) out.d.push_back(sections_map(C.d[i], s[i], s[i + 1]));
    return out;
}

}  // namespace finsheaf

namespace finsheaf {

std::vector<SheafMorphism> HomComplex::to_morphisms(int n, const Vec& x) const {
    const auto& ps = parts[static_cast<std::size_t>(n - cx.lo)];
    std::vector<SheafMorphism> out;
    std::size_t off = 0;
    for (const auto& [p, h] : ps) {
        const std::size_t r = h.sub.group.rank();
        out.push_back(h.to_morphism(Vec(x.begin() + static_cast<std::ptrdiff_t>(off),
                                        x.begin() + static_cast<std::ptrdiff_t>(off + r))));
        off += r;
    }
    return out;
}

Vec HomComplex::from_morphisms(int n, const std::vector<SheafMorphism>& fs) const {
    const auto& ps = parts[static_cast<std::size_t>(n - cx.lo)];
    Vec out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Vec v = ps[i].second.from_morphism(fs[i]);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

HomComplex hom_complex(const SheafComplex& M, const SheafComplex& N, int lo, int hi) {
    HomComplex H{{lo, {}, {}}, M, N, {}};
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::pair<int, SheafHomGroup>> ps;
        AbGroup g;
        for (int p = M.lo; p <= M.hi(); ++p) {
            if (p + n < N.lo || p + n > N.hi()) continue;
            ps.emplace_back(p, hom_group(M.at(p), N.at(p + n)));
            const auto& o = ps.back().second.sub.group.orders;
            g.orders.insert(g.orders.end(), o.begin(), o.end());
        }
        H.parts.push_back(std::move(ps));
        H.cx.terms.push_back(g);
    }
    for (int n = lo; n < hi; ++n) {
        const auto& src = H.parts[static_cast<std::size_t>(n - lo)];
        const auto& tgt = H.parts[static_cast<std::size_t>(n + 1 - lo)];
        const AbGroup &A = H.cx.terms[static_cast<std::size_t>(n - lo)], &B = H.cx.terms[static_cast<std::size_t>(n + 1 - lo)];
        auto delta = [&](std::size_t k) {
            Vec e(A.rank(), 0);
            e[k] = 1;
            auto fam = H.to_morphisms(n, e);
            auto find = [&](int p) -> const SheafMorphism* {
                for (std::size_t i = 0; i < src.size(); ++i)
                    if (src[i].first == p) return &fam[i];
                return nullptr;
            };
            std::vector<SheafMorphism> out;
            for (const auto& [p, h] : tgt) {
                SheafMorphism c = SheafMorphism::zero(M.at(p), N.at(p + n + 1));
                if (const SheafMorphism* f = find(p)) c = add(c, compose(N.diff(p + n), *f));
                if (const SheafMorphism* f = find(p + 1)) c = add(c, scale(compose(*f, M.diff(p)), -sign(n)));
                out.push_back(c);
            }
            return H.from_morphisms(n + 1, out);
        };
        H.cx.d.push_back(hom_from_images(A, B, delta));
    }
    return H;
}

}  // namespace finsheaf
