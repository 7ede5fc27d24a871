#include "internal.hpp"

namespace finsheaf {

using namespace detail;

namespace {

// psi: A -> E with psi o incl = iota, where incl: K -> A and E is injective.
AbHom extend(const ModHom& incl, const ModHom& iota) {
    HomModule HA = hom_module(incl.tgt, iota.tgt), HK = hom_module(incl.src, iota.tgt);
    AbHom pre = hom_from_images(HA.module.group, HK.module.group, [&](std::size_t j) {
        Vec e(HA.module.rank(), 0);
        e[j] = 1;
        return HK.from_matrix(compose(HA.to_hom(e).f, incl.f).m);
    });
    auto x = preimage(pre, HK.from_matrix(iota.f.m));
    if (!x) throw SheafError("inj_res: extension to an injective module failed");
    return HA.to_hom(*x).f;
}

struct Embedding {
    CoskySum term;
    SheafMorphism map;  // P -> term, injective
};

// P into a sum of co-skyscrapers, choosing the injective at each point from the top down.
Embedding embed(const SheafPtr& P) {
    const RingedSpace& X = *P->space;
    const Poset& Po = X.poset;
    std::vector<std::size_t> order(X.size()), above(X.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
        for (std::size_t j = 0; j < X.size(); ++j) above[i] += Po.leq(i, j);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return above[a] < above[b]; });

    std::vector<std::size_t> anchor;
    std::vector<FiniteModule> mods;
    std::vector<AbHom> phi;
    for (std::size_t x : order) {
        const FiniteModule& Px = P->stalk[x];
        if (Px.group.order() == 1) continue;
        std::vector<FiniteModule> parts;
        std::vector<AbHom> rows;
        for (std::size_t i = 0; i < anchor.size(); ++i) {
            if (!Po.leq(x, anchor[i])) continue;
            parts.push_back(restrict_scalars(mods[i], X.r(x, anchor[i])));
            rows.push_back(compose(phi[i], P->r(x, anchor[i])));
        }
        DirectSum S = direct_sum(parts, X.rings[x]);
        ModHom to_sum = ModHom::zero(Px, S.module);
        for (std::size_t k = 0; k < rows.size(); ++k)
            to_sum.f = add(to_sum.f, compose(S.inj[k].f, rows[k]));
        ModHom K = kernel(to_sum);
        if (K.src.group.order() == 1) continue;
        ModHom iota = is_injective_module(K.src) ? ModHom::identity(K.src) : injective_embedding(K.src);
        anchor.push_back(x);
        mods.push_back(iota.tgt);
        phi.push_back(extend(K, iota));
    }
    CoskySum T = cosky_sum(P->space, anchor, mods);
    std::vector<std::optional<AbHom>> h(phi.begin(), phi.end());
    return {T, cosky_map_into(P, T, h)};
}

}  // namespace

InjectiveResolution inj_res(const SheafComplex& M, int d) {
    const SpacePtr& X = M.space;
    const int dim = static_cast<int>(X->poset.dimension());
    const int top = M.empty() ? M.lo : M.hi();
    if (d < top + dim + 1)
        throw SheafError("inj_res: depth " + std::to_string(d) + " below the minimum " + std::to_string(top + dim + 1));

    InjectiveResolution R;
    SheafComplex I{X, M.lo, {}, {}};
    ComplexMorphism alpha{M, I, M.lo, {}};
    bool exact = false;

    Embedding e = embed(M.at(M.lo));
    R.terms.push_back(e.term);
    I.terms.push_back(e.term.sheaf());
    alpha.f.push_back(e.map);
    SheafMorphism pi = SheafMorphism::identity(e.term.sheaf());  // I^n -> coker(I^{n-1} -> I^n)
    for (int n = M.lo; n < d; ++n) {
        SheafSum S = direct_sum(X, {pi.tgt, M.at(n + 1)});
        SheafMorphism in = add(compose(S.inj[0], compose(pi, alpha.f.back())), compose(S.inj[1], scale(M.diff(n), -1)));
        SheafMorphism q = cokernel(in);
        if (q.tgt->is_zero() && n + 1 > M.hi()) {
            exact = true;
            break;
        }
        Embedding next = embed(q.tgt);
        SheafMorphism to_next = compose(next.map, q);
        I.d.push_back(compose(to_next, compose(S.inj[0], pi)));
        alpha.f.push_back(compose(to_next, S.inj[1]));
        R.terms.push_back(next.term);
        I.terms.push_back(next.term.sheaf());
        pi = cokernel(I.d.back());
    }
    alpha.tgt = I;
    R.res = {alpha, ResolutionKind::injective};
    if (!exact) R.res.reliable_hi = d - 1;
    return R;
}

DerivedHom hom_derived(const SheafComplex& M, const SheafComplex& N, int lo, int hi, std::optional<int> depth) {
    const int dim = static_cast<int>(N.space->poset.dimension());
    const int mtop = M.empty() ? M.lo : M.hi();
    const int ntop = N.empty() ? N.lo : N.hi();
    const int need = hi + mtop + 1;
    const int d = depth.value_or(std::max(need, ntop + dim + 1));
    if (d < need)
        throw SheafError("hom_derived: window top " + std::to_string(hi) + " exceeds the reliable range at depth " +
                         std::to_string(d));
    InjectiveResolution I = inj_res(N, d);
    HomComplex H = hom_complex(M, I.res.complex(), lo - 1, hi + 1);
    DerivedHom out{lo, hi, {}, d};
    for (int i = lo; i <= hi; ++i) out.groups.push_back(cohomology(H.cx, i).H);
    return out;
}

}  // namespace finsheaf
