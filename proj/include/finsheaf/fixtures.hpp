#pragma once

// Named small ringed spaces used by the tests, the acceptance suite and the CLI.

#include <string>
#include <vector>

#include "finsheaf/sheafmod.hpp"

namespace finsheaf {

SpacePtr point_space(const RingPtr& R, const std::string& name = "*");
/// The map X -> (*, R) given by the canonical Z/m -> O_x style maps R -> O_x.
RingedMap map_to_point(const SpacePtr& X, const SpacePtr& pt);

SpacePtr fix_pt();       // one point, Z/4
SpacePtr fix_arrow();    // p < q, Z/4 -> Z/2
SpacePtr fix_flat();     // p < q, Z/6 -> Z/2
SpacePtr fix_flat4();    // p < q, Z/4 -> Z/4
SpacePtr fix_wedge();    // a, b < c, constant F2
SpacePtr fix_pc();       // a, b < c, d, constant F2
SpacePtr fix_s2();       // six-point model of the 2-sphere, constant F2

/// Face poset of the octahedron boundary and the covering whose finite model is the sphere fixture.
struct S2Source {
    Poset faces;
    std::vector<OpenSet> covering;
};
S2Source s2_source();

SpacePtr fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace finsheaf
