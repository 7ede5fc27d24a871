#pragma once

// Seeded generators of modules, sheaves and morphisms for property suites.

#include <random>

#include "finsheaf/cxalg.hpp"

namespace finsheaf {

using Rng = std::mt19937_64;

/// R / (r) for a random element r.
FiniteModule random_cyclic(const RingPtr& R, Rng& rng);
/// Sum of one or two random cyclic modules.
FiniteModule random_module(const RingPtr& R, Rng& rng);
Vec random_element(const AbGroup& G, Rng& rng);
SheafMorphism random_morphism(const SheafPtr& a, const SheafPtr& b, Rng& rng);
/// Kernel, cokernel or image of a random map between sums of simple building blocks.
SheafPtr random_sheaf(const SpacePtr& X, Rng& rng);
/// Same idea with quasi-coherent blocks (O, pushed tildes); falls back to O when the result is not quasi-coherent.
SheafPtr random_qcoh(const SpacePtr& X, Rng& rng);
/// A -> B -> C starting in degree -1, 0 or 1; the second map factors through coker of the first.
SheafComplex random_complex(const SpacePtr& X, Rng& rng, bool qcoh);

}  // namespace finsheaf
