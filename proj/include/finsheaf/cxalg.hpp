#pragma once

// Bounded complexes of sheaves and of abelian groups.
//
// Sign conventions, fixed once: shift negates the differential for odd
// shifts; cone(f)^n = C^{n+1} + D^n with d(c, e) = (-d c, f c + d e); the
// total complex of a bicomplex uses d = d_h + (-1)^p d_v; the Hom complex
// uses (delta f) = d o f - (-1)^n f o d.

#include <functional>
#include <optional>
#include <vector>

#include "finsheaf/sheafmod.hpp"

namespace finsheaf {

struct SheafComplex {
    SpacePtr space;
    int lo = 0;
    std::vector<SheafPtr> terms;
    std::vector<SheafMorphism> d;  // d[i]: terms[i] -> terms[i + 1]

    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    bool empty() const { return terms.empty(); }
    SheafPtr at(int n) const;
    /// d^n: C^n -> C^{n+1}, zero outside the stored range.
    SheafMorphism diff(int n) const;
    bool is_zero() const;
    void validate() const;

    static SheafComplex single(const SheafPtr& M, int degree = 0);
    static SheafComplex zero(const SpacePtr& X);
    /// Drops zero terms at both ends.
    SheafComplex trimmed() const;
};

struct ComplexMorphism {
    SheafComplex src, tgt;
    int lo = 0;
    std::vector<SheafMorphism> f;

    SheafMorphism at(int n) const;
    bool is_valid() const;
};
ComplexMorphism compose(const ComplexMorphism& g, const ComplexMorphism& f);
ComplexMorphism identity(const SheafComplex& C);
/// A single sheaf morphism viewed as a map of complexes concentrated in one degree.
ComplexMorphism single_map(const SheafMorphism& f, int degree = 0);
/// Map from a sheaf in degree 0 to a complex, given by a morphism into C^0.
ComplexMorphism augmentation(const SheafMorphism& f, const SheafComplex& C);
ComplexMorphism add(const ComplexMorphism& f, const ComplexMorphism& g);
ComplexMorphism negate(const ComplexMorphism& f);

SheafComplex shift(const SheafComplex& C, int k);
struct Cone {
    SheafComplex cx;
    ComplexMorphism from_target;  // D -> cone
    ComplexMorphism to_shift;     // cone -> C[1]
};
Cone cone(const ComplexMorphism& f);

/// Bounded bicomplex: terms[p][q] at (p0 + p, q0 + q); dh goes p -> p+1, dv goes q -> q+1,
/// squares commute.
struct Bicomplex {
    SpacePtr space;
    int p0 = 0, q0 = 0;
    std::vector<std::vector<SheafPtr>> terms;
    std::vector<std::vector<SheafMorphism>> dh;  // dh[p][q], valid for p + 1 < rows
    std::vector<std::vector<SheafMorphism>> dv;  // dv[p][q], valid for q + 1 < cols

    std::size_t rows() const { return terms.size(); }
    std::size_t cols() const { return terms.empty() ? 0 : terms[0].size(); }
};
/// Total complex with summands of each degree ordered by increasing p.
struct Total {
    SheafComplex cx;
    /// Summand (p, q) inclusion index within degree p + q.
    std::vector<SheafSum> sums;  // per total degree from cx.lo
    std::size_t index(const Bicomplex& B, int p, int q) const;
};
Total total(const Bicomplex& B);

struct Cohomology {
    SheafPtr H;
    SheafMorphism cycles;  // Z -> C^n
    SheafMorphism proj;    // Z -> H
};
Cohomology cohomology(const SheafComplex& C, int n);
/// H^n(f) between precomputed cohomologies.
SheafMorphism induced(const ComplexMorphism& f, int n, const Cohomology& a, const Cohomology& b);
bool is_acyclic(const SheafComplex& C);
/// Degree where H(f) fails to be an isomorphism, if any.
std::optional<int> quasi_iso_failure(const ComplexMorphism& f);
bool is_quasi_iso(const ComplexMorphism& f);

/// Flatness of every restriction ring map, with the first failing pair.
std::optional<std::pair<std::size_t, std::size_t>> flatness_failure(const RingedSpace& X);
/// Membership in D_qc via quasi-isomorphism of the base-changed restrictions.
/// Throws on spaces whose restriction maps are not flat.
bool in_Dqc(const SheafComplex& C);
bool cohomology_is_quasicoherent(const SheafComplex& C);

/// Applies a functor degreewise.
SheafComplex map_complex(const SheafComplex& C, const std::function<SheafPtr(const SheafPtr&)>& on_obj,
                         const std::function<SheafMorphism(const SheafMorphism&, const SheafPtr&, const SheafPtr&)>& on_mor);
SheafComplex pushforward(const RingedMap& f, const SheafComplex& C);
ComplexMorphism pushforward(const RingedMap& f, const ComplexMorphism& g, const SheafComplex& src, const SheafComplex& tgt);
SheafComplex restrict(const SheafComplex& C, const OpenSubspace& U);
ComplexMorphism restrict(const ComplexMorphism& f, const SheafComplex& src, const SheafComplex& tgt, const OpenSubspace& U);

// Complexes of abelian groups.

struct GroupComplex {
    int lo = 0;
    std::vector<AbGroup> terms;
    std::vector<AbHom> d;

    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    AbGroup at(int n) const;
    AbHom diff(int n) const;
    void validate() const;
};
struct GroupCohomology {
    AbGroup H;
    Sub cycles;
    Quotient quot;  // cycles -> H
};
GroupCohomology cohomology(const GroupComplex& C, int n);
AbHom induced(const std::vector<AbHom>& f, int lo, int n, const GroupCohomology& a, const GroupCohomology& b);
/// Gamma(X, C) as a complex of groups.
GroupComplex global_sections(const SheafComplex& C);

/// Hom complex with conversion between coordinates and families of morphisms.
struct HomComplex {
    GroupComplex cx;
    SheafComplex src, tgt;
    /// Per total degree: the component source degrees p and their hom groups Hom(M^p, N^{p+n}).
    std::vector<std::vector<std::pair<int, SheafHomGroup>>> parts;
    std::vector<SheafMorphism> to_morphisms(int n, const Vec& x) const;
    Vec from_morphisms(int n, const std::vector<SheafMorphism>& fs) const;
};
HomComplex hom_complex(const SheafComplex& M, const SheafComplex& N, int lo, int hi);

}  // namespace finsheaf
