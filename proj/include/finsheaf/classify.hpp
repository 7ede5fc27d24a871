#pragma once

// Finite, semi-separated and schematic spaces and morphisms, through the
// cohomological criteria on intersections of minimal opens.

#include <optional>
#include <string>
#include <vector>

#include "finsheaf/sheafmod.hpp"

namespace finsheaf {

/// Cochains of O on an open V (chains of V), as modules over R acting through to(w) on O_w.
struct ModuleCochains {
    std::vector<std::vector<ChainIndex>> chains;
    std::vector<FiniteModule> C;
    std::vector<ModHom> d;  // d[i]: C[i] -> C[i + 1]
    std::vector<std::vector<std::size_t>> offset;  // coordinate offset of each chain in C[i]
};
ModuleCochains module_cochains(const RingedSpace& X, const OpenSet& V, const RingPtr& R,
                               const std::vector<RingHom>& to);

struct ModuleCohomology {
    FiniteModule H;
    ModHom cycles;  // Z -> C^i
    ModHom proj;    // Z -> H
    Mat lift;       // H generators -> Z
};
ModuleCohomology module_cohomology(const ModuleCochains& K, std::size_t i);
/// H^i(V) -> H^i(V') for V' inside V, induced by projection onto chains of V'.
AbHom restriction_on_cohomology(const ModuleCochains& a, const ModuleCohomology& ha, const ModuleCochains& b,
                                const ModuleCohomology& hb, std::size_t i);

struct Classification {
    bool finite_space = false, semi_separated = false, schematic = false;
    std::optional<std::pair<std::size_t, std::size_t>> flatness_witness;
    std::string semi_separated_witness;  // first failing condition
    std::string schematic_witness;
};
Classification classify(const SpacePtr& X);
/// Semi-separatedness through conditions (a) and (b); empty string when they hold.
std::string semi_separated_failure(const SpacePtr& X);

/// Both base-change maps on H^i(U_x cap f^{-1}(U_y), O_X) for i <= dim X; empty when they are isomorphisms.
std::string schematic_morphism_failure(const RingedMap& f);
bool is_schematic_morphism(const RingedMap& f);

}  // namespace finsheaf
