#pragma once

// Seeded verification suites and the independent oracles they compare against.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finsheaf/derived.hpp"

namespace finsheaf {

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::string summary;
    std::vector<std::string> witnesses;  // failures, or the reason a suite cannot pass
};

/// Suite names in their fixed order.
const std::vector<std::string>& suite_names();
/// count sets the number of seeded instances (0 keeps the defaults); depth is the injective resolution depth.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count = 0, std::optional<int> depth = {});

/// Group hom from a map on elements that is additive on coordinates.
AbHom transport(const AbGroup& A, const AbGroup& B, const std::function<Vec(const Vec&)>& f);
/// Extension-property search against the generators O^{U_x} (all fixture rings are principal ideal
/// rings, so a subsheaf of O^{U_x} is generated by one element per point). Returns a failing x.
std::optional<std::size_t> injectivity_failure(const SheafPtr& I);

/// dim over F2 of H^n of a simplicial complex given by maximal simplices, via integer Smith forms.
std::vector<std::size_t> simplicial_cohomology_f2(const std::vector<std::vector<int>>& maximal_simplices);
/// Flatness by enumeration: K_a = ann(a) M for every a, after checking that every ideal is principal.
/// Throws if the ring has a non-principal ideal.
bool flat_by_enumeration(const FiniteModule& M);

}  // namespace finsheaf
