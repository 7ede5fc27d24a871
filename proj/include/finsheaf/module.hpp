#pragma once

// Finite modules over finite commutative rings.
//
// A module is an abelian group together with the action matrices of the
// ring's additive generators. Presentations R^g / (relations) are converted
// to this form on input.

#include <functional>
#include <optional>
#include <vector>

#include "finsheaf/finring.hpp"

namespace finsheaf {

class ModuleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FiniteModule {
    RingPtr ring;
    AbGroup group;
    std::vector<Mat> act;  // act[k]: multiplication by e_k

    std::size_t rank() const { return group.rank(); }
    bool is_zero() const { return group.is_zero(); }
    /// Multiplication by a ring element.
    Mat action(const Vec& r) const;
    Vec scalar(const Vec& r, const Vec& x) const;
    void validate() const;

    static FiniteModule zero(const RingPtr& R);
    static FiniteModule free(const RingPtr& R, std::size_t g);
};

/// R-linear map; f is the underlying group hom.
struct ModHom {
    FiniteModule src, tgt;
    AbHom f;

    bool is_linear() const;
    static ModHom zero(const FiniteModule& a, const FiniteModule& b);
    static ModHom identity(const FiniteModule& a);
};

ModHom compose(const ModHom& g, const ModHom& f);
ModHom add(const ModHom& f, const ModHom& g);
ModHom negate(const ModHom& f);

/// R^g / R-span(relations); each relation is a vector of g ring elements.
FiniteModule from_presentation(const RingPtr& R, std::size_t g, const std::vector<std::vector<Vec>>& relations);
/// R-submodule generated by group elements (columns), with inclusion.
ModHom submodule(const FiniteModule& M, const Mat& gens);
/// M / R-span(gens) with projection.
ModHom quotient(const FiniteModule& M, const Mat& gens);
ModHom kernel(const ModHom& f);     // inclusion ker f -> src
ModHom image(const ModHom& f);      // inclusion im f -> tgt
ModHom cokernel(const ModHom& f);   // projection tgt -> coker f
/// Lift of the coordinate generators of a quotient, for cokernel maps.
Mat cokernel_lift(const ModHom& f);
/// incl o result = g; throws when im g is not inside im incl.
ModHom factor_through(const ModHom& g, const ModHom& incl);
/// result o proj = g; requires g to vanish on ker proj (proj surjective).
ModHom factor_from(const ModHom& g, const ModHom& proj);

struct DirectSum {
    FiniteModule module;
    std::vector<ModHom> inj, proj;
};
DirectSum direct_sum(const std::vector<FiniteModule>& parts, const RingPtr& R);
ModHom block_map(const DirectSum& a, const DirectSum& b, const std::vector<std::vector<std::optional<ModHom>>>& blocks);

/// M viewed over R through phi: R -> S.
FiniteModule restrict_scalars(const FiniteModule& M, const RingHom& phi);
ModHom restrict_scalars(const ModHom& f, const RingHom& phi);

struct Tensor {
    FiniteModule module;
    FiniteModule left, right;
    Quotient q;  // ambient (left x right coordinates) -> module
    /// a (x) b as an element of module.
    Vec pure(const Vec& a, const Vec& b) const;
};
/// Tensor over R with the R-action of the left factor.
Tensor tensor(const FiniteModule& A, const FiniteModule& B);
/// Induced map from a balanced bilinear map given on coordinate generators.
AbHom from_bilinear(const Tensor& T, const AbGroup& C, const std::function<Vec(std::size_t, std::size_t)>& beta);
ModHom tensor_maps(const Tensor& s, const Tensor& t, const ModHom& f, const ModHom& g);

/// A (x)_R S as an S-module.
struct BaseChange {
    Tensor t;
    FiniteModule module;  // over S
    RingHom phi;
};
BaseChange base_change(const FiniteModule& A, const RingHom& phi);
/// The S-map A (x) S -> B, a (x) s -> s g(a), for an R-map g: A -> res B.
ModHom base_change_adjoint(const BaseChange& bc, const FiniteModule& B, const AbHom& g);
ModHom base_change_map(const BaseChange& a, const BaseChange& b, const ModHom& f);

/// Hom_R(A, B) as an R-module, with conversion to matrices.
struct HomModule {
    FiniteModule module;
    FiniteModule a, b;
    HomZ hz;
    AbHom incl;  // module group -> hz.group
    Mat to_matrix(const Vec& x) const;
    Vec from_matrix(const Mat& m) const;
    ModHom to_hom(const Vec& x) const;
};
HomModule hom_module(const FiniteModule& A, const FiniteModule& B);

/// Hom_R(S, A) as an S-module for phi: R -> S.
struct Coinduced {
    HomModule h;
    FiniteModule module;  // over S, group = h.module.group
    RingHom phi;
};
Coinduced coinduce(const FiniteModule& A, const RingHom& phi);

/// Character module Hom_Z(M, Q/Z) and dual maps.
FiniteModule dual(const FiniteModule& M);
ModHom dual(const ModHom& f);

/// An injective module E with an embedding M -> E, E a power of the dual of R.
ModHom injective_embedding(const FiniteModule& M);
bool is_flat(const FiniteModule& M);
bool is_injective_module(const FiniteModule& M);
bool is_isomorphic(const FiniteModule& A, const FiniteModule& B, std::size_t cap = 1u << 14);

/// Random R-linear map between two modules via a random element of Hom_R.
template <class Rng>
ModHom random_hom(const FiniteModule& A, const FiniteModule& B, Rng& rng) {
    HomModule h = hom_module(A, B);
    Vec x(h.module.rank());
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = static_cast<i64>(rng() % static_cast<std::uint64_t>(h.module.group.orders[i]));
    return h.to_hom(x);
}

}  // namespace finsheaf
