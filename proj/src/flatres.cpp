#include "internal.hpp"

#include "finsheaf/classify.hpp"

namespace finsheaf {

using namespace detail;

namespace {

struct Cover {
    SheafPtr P;  // sum of O^{U_x}
    SheafMorphism map;  // P -> K, surjective
};

// O^{U_x} -> K sending 1 to m in K_x.
SheafMorphism from_unit(const SheafPtr& F, std::size_t x, const SheafPtr& K, const Vec& m) {
    const RingedSpace& X = *K->space;
    SheafMorphism h = SheafMorphism::zero(F, K);
    for (std::size_t y = 0; y < X.size(); ++y) {
        if (!X.poset.leq(x, y)) continue;
        const Vec my = K->r(x, y).apply(m);
        h.comp[y] = hom_from_images(F->stalk[y].group, K->stalk[y].group,
                                    [&](std::size_t k) { return K->stalk[y].scalar(X.rings[y]->basis(k), my); });
    }
    return h;
}

// Generators chosen from the bottom up: at x, coordinate generators of K_x outside the span of those below.
Cover cover(const SheafPtr& K) {
    const SpacePtr& X = K->space;
    const Poset& Po = X->poset;
    std::vector<std::size_t> order(X->size()), below(X->size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
        for (std::size_t j = 0; j < X->size(); ++j) below[i] += Po.leq(j, i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });

    std::vector<std::pair<std::size_t, Vec>> gens;
    for (std::size_t x : order) {
        const FiniteModule& Kx = K->stalk[x];
        if (Kx.is_zero()) continue;
        std::vector<Vec> cols;
        for (const auto& [g, m] : gens)
            if (Po.leq(g, x)) cols.push_back(K->r(g, x).apply(m));
        auto span = [&] { return submodule(Kx, Mat::from_cols(cols, Kx.rank())).src.group.order(); };
        BigInt have = cols.empty() ? BigInt(1) : span();
        for (std::size_t j = 0; j < Kx.rank() && have < Kx.group.order(); ++j) {
            Vec e(Kx.rank(), 0);
            e[j] = 1;
            cols.push_back(e);
            const BigInt next = span();
            if (next > have) {
                gens.emplace_back(x, e);
                have = next;
            } else {
                cols.pop_back();
            }
        }
    }
    std::vector<SheafPtr> parts;
    for (const auto& g : gens) parts.push_back(ext_by_zero(X, Po.up_set(g.first)));
    SheafSum S = direct_sum(X, parts);
    SheafMorphism map = SheafMorphism::zero(S.sheaf, K);
    for (std::size_t i = 0; i < gens.size(); ++i)
        map = add(map, compose(from_unit(parts[i], gens[i].first, K, gens[i].second), S.proj[i]));
    return {S.sheaf, map};
}

}  // namespace

FlatResolution flat_qcoh_res(const SheafPtr& M, int max_length) {
    const SpacePtr& X = M->space;
    Classification cl = classify(X);
    if (!cl.semi_separated) throw SheafError("flat_qcoh_res: space is not semi-separated: " + cl.semi_separated_witness);
    if (!is_quasicoherent(*M)) throw SheafError("flat_qcoh_res: module is not quasi-coherent");
    const int dim = static_cast<int>(X->poset.dimension());

    // P^{-L} -> ... -> P^0 -> M with P^i sums of O^{U_x}
    Cover c = cover(M);
    std::vector<SheafPtr> terms{c.P};
    std::vector<SheafMorphism> ds;
    SheafMorphism K = kernel(c.map);
    bool finite = true;
    while (!K.src->is_zero()) {
        if (static_cast<int>(ds.size()) == max_length) {
            finite = false;
            break;
        }
        Cover next = cover(K.src);
        SheafMorphism d = compose(K, next.map);
        d.tgt = terms.back();
        ds.push_back(d);
        terms.push_back(next.P);
        K = kernel(d);
    }
    const int L = static_cast<int>(ds.size());
    if (!finite && L < dim) throw SheafError("flat_qcoh_res: length cap below the dimension");
    std::reverse(terms.begin(), terms.end());
    std::reverse(ds.begin(), ds.end());
    SheafComplex P{X, -L, terms, ds};

    PieceBicomplex Q = qc_standard(P);
    const SheafComplex& T = Q.cx();
    for (int n = 1; n <= T.hi(); ++n)
        if (!cohomology(T, n).H->is_zero()) throw SheafError("flat_qcoh_res: Qc(C P) has cohomology in positive degree");
    SheafMorphism Z0 = kernel(T.diff(0));

    SheafComplex F{X, std::min(T.lo, 0), {}, {}};
    for (int n = F.lo; n < 0; ++n) F.terms.push_back(T.at(n));
    F.terms.push_back(Z0.src);
    for (int n = F.lo; n < -1; ++n) F.d.push_back(T.diff(n));
    if (F.lo < 0) {
        SheafMorphism last = factor_through(T.diff(-1), Z0);
        last.src = F.at(-1);
        F.d.push_back(last);
    }

    // Z^0 -> Qc(C^0 P) -> C^0 P -> C^0 M lands in the image of M.
    Standard CP = standard_on(P, X->poset.whole());
    SheafComplex Mc = SheafComplex::single(M);
    Standard CM = standard_on(Mc, X->poset.whole());
    ComplexMorphism eps{P, Mc, 0, {c.map}};
    ComplexMorphism down = compose(standard_map(eps, CP, CM), qc_counit(Q, CP));
    Resolution SM = standard(M);
    SheafMorphism into = factor_through(compose(down.at(0), Z0), SM.augmentation.at(0));
    into.src = F.at(0);
    into.tgt = M;

    FlatResolution out;
    ComplexMorphism aug{F, Mc, F.lo, {}};
    for (int n = F.lo; n < 0; ++n) aug.f.push_back(SheafMorphism::zero(F.at(n), Mc.at(n)));
    aug.f.push_back(into);
    out.res = {aug, ResolutionKind::flat_qcoh};
    if (!finite) out.res.reliable_lo = -L + dim + 1;
    out.P = P;
    out.finite = finite;
    return out;
}

}  // namespace finsheaf
