#include "finsheaf/classify.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "finsheaf/cxalg.hpp"

namespace finsheaf {

namespace {

i64 sign(std::size_t k) { return (k % 2 == 0) ? 1 : -1; }

std::string pt(const Poset& P, std::size_t p) { return P.name(p); }

std::vector<RingHom> maps_from(const RingedSpace& X, std::size_t p, const OpenSet& V) {
    std::vector<RingHom> to(X.size());
    for (std::size_t w = 0; w < X.size(); ++w)
        if (V[w]) to[w] = X.r(p, w);
    return to;
}

bool base_change_iso(const ModuleCohomology& a, const ModuleCohomology& b, const AbHom& h, const RingHom& phi) {
    BaseChange bc = base_change(a.H, phi);
    return is_iso(base_change_adjoint(bc, b.H, h).f);
}

// Runs checks indexed 0..n-1 (possibly in parallel) and returns the first failure in index order.
std::string first_failure(std::size_t n, const std::function<std::string(std::size_t)>& check) {
    std::vector<std::string> out(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < n; ++k) {
        try {
            out[k] = check(k);
        } catch (const std::exception& e) {
            out[k] = std::string("error: ") + e.what();
        }
    }
    for (auto& s : out)
        if (!s.empty()) return s;
    return {};
}

}  // namespace

ModuleCochains module_cochains(const RingedSpace& X, const OpenSet& V, const RingPtr& R, const std::vector<RingHom>& to) {
    ModuleCochains K;
    const std::size_t dim = X.poset.dimension();
    for (std::size_t i = 0; i <= dim; ++i) {
        K.chains.push_back(chains(X.poset, i, V));
        std::vector<FiniteModule> parts;
        K.offset.emplace_back();
        std::size_t o = 0;
        for (const auto& c : K.chains.back()) {
            K.offset.back().push_back(std::exchange(o, o + X.rings[c.last()]->rank()));
            parts.push_back(restrict_scalars(FiniteModule::free(X.rings[c.last()], 1), to[c.last()]));
        }
        K.C.push_back(direct_sum(parts, R).module);
    }
    for (std::size_t i = 0; i < dim; ++i) {
        const auto &src = K.chains[i], &tgt = K.chains[i + 1];
        const auto &so = K.offset[i], &to_off = K.offset[i + 1];
        AbHom d = AbHom::zero(K.C[i].group, K.C[i + 1].group);
        for (std::size_t ci = 0; ci < tgt.size(); ++ci) {
            const ChainIndex& c = tgt[ci];
            for (std::size_t k = 0; k <= i + 1; ++k) {
                ChainIndex b = face(c, k);
                auto it = std::lower_bound(src.begin(), src.end(), b);
                const auto bj = static_cast<std::size_t>(it - src.begin());
                const Mat blk = k < i + 1 ? Mat::identity(X.rings[c.last()]->rank()) : X.r(b.last(), c.last()).images;
                for (std::size_t r = 0; r < blk.rows; ++r)
                    for (std::size_t s = 0; s < blk.cols; ++s) d.m(to_off[ci] + r, so[bj] + s) += sign(k) * blk(r, s);
            }
        }
        reduce_rows(d.m, d.tgt.orders);
        K.d.push_back({K.C[i], K.C[i + 1], d});
    }
    return K;
}

ModuleCohomology module_cohomology(const ModuleCochains& K, std::size_t i) {
    const FiniteModule& Ci = K.C.at(i);
    ModHom d = i < K.d.size() ? K.d[i] : ModHom::zero(Ci, FiniteModule::zero(Ci.ring));
    ModHom z = kernel(d);
    ModHom b = i > 0 ? factor_through(K.d[i - 1], z) : ModHom::zero(FiniteModule::zero(Ci.ring), z.src);
    ModHom pr = cokernel(b);
    return {pr.tgt, z, pr, cokernel_lift(b)};
}

AbHom restriction_on_cohomology(const ModuleCochains& a, const ModuleCohomology& ha, const ModuleCochains& b,
                                const ModuleCohomology& hb, std::size_t i) {
    const auto &ca = a.chains[i], &cb = b.chains[i];
    AbHom proj = AbHom::zero(a.C[i].group, b.C[i].group);
    for (std::size_t k = 0; k < cb.size(); ++k) {
        auto it = std::lower_bound(ca.begin(), ca.end(), cb[k]);
        if (it == ca.end() || !(*it == cb[k])) throw SheafError("restriction_on_cohomology: open sets are not nested");
        const std::size_t oa = a.offset[i][static_cast<std::size_t>(it - ca.begin())];
        const std::size_t ob = b.offset[i][k];
        const std::size_t len = (k + 1 < cb.size() ? b.offset[i][k + 1] : b.C[i].rank()) - ob;
        for (std::size_t r = 0; r < len; ++r) proj.m(ob + r, oa + r) = 1;
    }
    AbHom z = factor_through(compose(proj, ha.cycles.f), hb.cycles.f);
    return hom_from_images(ha.H.group, hb.H.group, [&](std::size_t j) { return hb.proj.f.apply(z.apply(ha.lift.col(j))); });
}

std::string semi_separated_failure(const SpacePtr& X) {
    const Poset& P = X->poset;
    const std::size_t n = X->size(), dim = P.dimension();
    return first_failure(n * n, [&](std::size_t k) -> std::string {
        const std::size_t p = k / n, q = k % n;
        const OpenSet V = intersect(P.up_set(p), P.up_set(q));
        ModuleCochains K = module_cochains(*X, V, X->rings[p], maps_from(*X, p, V));
        for (std::size_t i = 1; i <= dim; ++i)
            if (!module_cohomology(K, i).H.is_zero())
                return "(a) H^" + std::to_string(i) + "(U_" + pt(P, p) + " cap U_" + pt(P, q) + ", O) != 0";
        ModuleCohomology h = module_cohomology(K, 0);
        for (std::size_t p2 = 0; p2 < n; ++p2) {
            if (!P.lt(p, p2)) continue;
            const OpenSet V2 = intersect(P.up_set(p2), P.up_set(q));
            ModuleCochains K2 = module_cochains(*X, V2, X->rings[p2], maps_from(*X, p2, V2));
            ModuleCohomology h2 = module_cohomology(K2, 0);
            if (!base_change_iso(h, h2, restriction_on_cohomology(K, h, K2, h2, 0), X->r(p, p2)))
                return "(b) fails at p=" + pt(P, p) + ", q=" + pt(P, q) + ", p'=" + pt(P, p2);
        }
        return {};
    });
}

Classification classify(const SpacePtr& X) {
    Classification c;
    c.flatness_witness = flatness_failure(*X);
    c.finite_space = !c.flatness_witness;
    if (!c.finite_space) {
        c.semi_separated_witness = c.schematic_witness = "not a finite space";
        return c;
    }
    c.semi_separated_witness = semi_separated_failure(X);
    c.semi_separated = c.semi_separated_witness.empty();
    for (std::size_t p = 0; p < X->size() && c.schematic_witness.empty(); ++p) {
        OpenSubspace U = open_subspace(X, X->poset.up_set(p));
        std::string w = semi_separated_failure(U.space);
        if (!w.empty()) c.schematic_witness = "U_" + X->poset.name(p) + ": " + w;
    }
    c.schematic = c.schematic_witness.empty();
    return c;
}

std::string schematic_morphism_failure(const RingedMap& f) {
    const RingedSpace &X = *f.source, &Y = *f.target;
    if (flatness_failure(X) || flatness_failure(Y)) throw SheafError("is_schematic_morphism: spaces must be finite spaces");
    const Poset &PX = X.poset, &PY = Y.poset;
    const std::size_t nx = X.size(), ny = Y.size(), dim = PX.dimension();
    auto V = [&](std::size_t x, std::size_t y) {
        return intersect(PX.up_set(x), preimage(f.assign, PY.up_set(y), nx));
    };
    auto over_y = [&](std::size_t y, const OpenSet& U) {
        std::vector<RingHom> to(nx);
        for (std::size_t w = 0; w < nx; ++w)
            if (U[w]) to[w] = compose(f.comp[w], Y.r(y, f.assign[w]));
        return to;
    };
    return first_failure(nx * ny, [&](std::size_t k) -> std::string {
        const std::size_t x = k / ny, y = k % ny;
        const OpenSet U = V(x, y);
        ModuleCochains KX = module_cochains(X, U, X.rings[x], maps_from(X, x, U));
        ModuleCochains KY = module_cochains(X, U, Y.rings[y], over_y(y, U));
        for (std::size_t i = 0; i <= dim; ++i) {
            ModuleCohomology hx = module_cohomology(KX, i), hy = module_cohomology(KY, i);
            for (std::size_t x2 = 0; x2 < nx; ++x2) {
                if (!PX.lt(x, x2)) continue;
                const OpenSet U2 = V(x2, y);
                ModuleCochains K2 = module_cochains(X, U2, X.rings[x2], maps_from(X, x2, U2));
                ModuleCohomology h2 = module_cohomology(K2, i);
                if (!base_change_iso(hx, h2, restriction_on_cohomology(KX, hx, K2, h2, i), X.r(x, x2)))
                    return "H^" + std::to_string(i) + " base change along x=" + PX.name(x) + " <= x'=" + PX.name(x2) +
                           " at y=" + PY.name(y);
            }
            for (std::size_t y2 = 0; y2 < ny; ++y2) {
                if (!PY.lt(y, y2)) continue;
                const OpenSet U2 = V(x, y2);
                ModuleCochains K2 = module_cochains(X, U2, Y.rings[y2], over_y(y2, U2));
                ModuleCohomology h2 = module_cohomology(K2, i);
                if (!base_change_iso(hy, h2, restriction_on_cohomology(KY, hy, K2, h2, i), Y.r(y, y2)))
                    return "H^" + std::to_string(i) + " base change along y=" + PY.name(y) + " <= y'=" + PY.name(y2) +
                           " at x=" + PX.name(x);
            }
        }
        return {};
    });
}

bool is_schematic_morphism(const RingedMap& f) { return schematic_morphism_failure(f).empty(); }

}  // namespace finsheaf
