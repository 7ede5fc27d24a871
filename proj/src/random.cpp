#include "finsheaf/random.hpp"

namespace finsheaf {

Vec random_element(const AbGroup& G, Rng& rng) {
    Vec x(G.rank());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<i64>(rng() % static_cast<std::uint64_t>(G.orders[i]));
    return x;
}

FiniteModule random_cyclic(const RingPtr& R, Rng& rng) {
    return from_presentation(R, 1, {{random_element(R->add, rng)}});
}

FiniteModule random_module(const RingPtr& R, Rng& rng) {
    if (rng() % 3 != 0) return random_cyclic(R, rng);
    return direct_sum({random_cyclic(R, rng), random_cyclic(R, rng)}, R).module;
}

SheafMorphism random_morphism(const SheafPtr& a, const SheafPtr& b, Rng& rng) {
    SheafHomGroup h = hom_group(a, b);
    return h.to_morphism(random_element(h.sub.group, rng));
}

namespace {

SheafPtr random_block(const SpacePtr& X, Rng& rng) {
    const std::size_t x = rng() % X->size();
    switch (rng() % 5) {
        case 0: return co_skyscraper(X, x, random_cyclic(X->rings[x], rng));
        case 1: return ext_by_zero(X, X->poset.up_set(x));
        case 2: return skyscraper(X, x, random_cyclic(X->rings[x], rng));
        case 3: return pushed_tilde(X, x, random_cyclic(X->rings[x], rng));
        default: return structure_sheaf(X);
    }
}

SheafPtr combine(const SheafPtr& a, const SheafPtr& b, Rng& rng) {
    SheafMorphism f = random_morphism(a, b, rng);
    switch (rng() % 3) {
        case 0: return kernel(f).src;
        case 1: return cokernel(f).tgt;
        default: return image(f).src;
    }
}

}  // namespace

SheafPtr random_sheaf(const SpacePtr& X, Rng& rng) {
    SheafPtr a = random_block(X, rng);
    if (rng() % 4 == 0) return a;
    SheafPtr b = random_block(X, rng);
    if (rng() % 3 == 0) b = direct_sum(X, {b, random_block(X, rng)}).sheaf;
    return combine(a, b, rng);
}

SheafPtr random_qcoh(const SpacePtr& X, Rng& rng) {
    auto block = [&]() -> SheafPtr {
        const std::size_t x = rng() % X->size();
        if (rng() % 3 == 0) return structure_sheaf(X);
        return pushed_tilde(X, x, random_cyclic(X->rings[x], rng));
    };
    SheafPtr a = block();
    SheafPtr out = a;
    if (rng() % 4 != 0) out = combine(a, block(), rng);
    if (!is_quasicoherent(*out)) out = is_quasicoherent(*a) ? a : structure_sheaf(X);
    return out;
}

SheafComplex random_complex(const SpacePtr& X, Rng& rng, bool qcoh) {
    auto pick = [&] { return qcoh ? random_qcoh(X, rng) : random_sheaf(X, rng); };
    SheafPtr A = pick(), B = pick(), C = pick();
    SheafMorphism f = random_morphism(A, B, rng);
    SheafMorphism pr = cokernel(f);
    SheafMorphism g = compose(random_morphism(pr.tgt, C, rng), pr);
    return {X, static_cast<int>(rng() % 3) - 1, {A, B, C}, {f, g}};
}

}  // namespace finsheaf
