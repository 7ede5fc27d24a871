#pragma once

// Sheaves of modules on finite ringed spaces, stored as poset
// representations: a module at each point and restrictions along p <= q.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finsheaf/module.hpp"
#include "finsheaf/poset.hpp"

namespace finsheaf {

class SheafError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RingedSpace {
    Poset poset;
    std::vector<RingPtr> rings;
    std::vector<std::optional<RingHom>> maps;  // dense over p * n + q, set when p <= q

    std::size_t size() const { return poset.size(); }
    const RingHom& r(std::size_t p, std::size_t q) const;
    /// Checks identities and r_ql o r_pq = r_pl on all triples.
    void validate() const;

    /// Closes ring maps given on covering pairs (composition along any chain)
    /// and validates the result.
    static RingedSpace from_hasse(Poset P, std::vector<RingPtr> rings,
                                  const std::vector<std::pair<std::pair<std::size_t, std::size_t>, RingHom>>& edge_maps);
    /// Same ring at every point, identity restrictions.
    static RingedSpace constant(Poset P, const RingPtr& R);
};
using SpacePtr = std::shared_ptr<const RingedSpace>;

struct OpenSubspace {
    SpacePtr space;
    SpacePtr parent;
    OpenSet set;
    std::vector<std::size_t> to_parent;
};
OpenSubspace open_subspace(const SpacePtr& X, const OpenSet& U);

struct SheafModule {
    SpacePtr space;
    std::vector<FiniteModule> stalk;
    std::vector<AbHom> res;  // dense over p * n + q; meaningful when p <= q

    std::size_t size() const { return stalk.size(); }
    const AbHom& r(std::size_t p, std::size_t q) const { return res[p * size() + q]; }
    AbHom& r(std::size_t p, std::size_t q) { return res[p * size() + q]; }
    bool is_zero() const;
    BigInt total_order() const;
    /// Functoriality and O_p-linearity of every restriction.
    void validate() const;

    /// Builds from restrictions given on covering pairs.
    static SheafModule from_hasse(const SpacePtr& X, std::vector<FiniteModule> stalks,
                                  const std::vector<std::pair<std::pair<std::size_t, std::size_t>, AbHom>>& edge_maps);
};
using SheafPtr = std::shared_ptr<const SheafModule>;
SheafPtr share(SheafModule M);

struct SheafMorphism {
    SheafPtr src, tgt;
    std::vector<AbHom> comp;

    bool is_valid() const;
    bool is_zero() const;
    static SheafMorphism zero(const SheafPtr& a, const SheafPtr& b);
    static SheafMorphism identity(const SheafPtr& a);
};
SheafMorphism compose(const SheafMorphism& g, const SheafMorphism& f);
SheafMorphism add(const SheafMorphism& f, const SheafMorphism& g);
SheafMorphism scale(const SheafMorphism& f, i64 c);
bool equal(const SheafMorphism& f, const SheafMorphism& g);

SheafPtr zero_sheaf(const SpacePtr& X);
SheafPtr structure_sheaf(const SpacePtr& X);

/// Stalkwise kernel (inclusion), cokernel (projection) and image (inclusion).
SheafMorphism kernel(const SheafMorphism& f);
SheafMorphism cokernel(const SheafMorphism& f);
SheafMorphism image(const SheafMorphism& f);
/// incl o result = g, stalkwise.
SheafMorphism factor_through(const SheafMorphism& g, const SheafMorphism& incl);
/// result o proj = g for a surjective proj.
SheafMorphism factor_from(const SheafMorphism& g, const SheafMorphism& proj);

struct SheafSum {
    SheafPtr sheaf;
    std::vector<SheafMorphism> inj, proj;
};
SheafSum direct_sum(const SpacePtr& X, const std::vector<SheafPtr>& parts);
/// Map between sums from blocks[i][j]: part j of a -> part i of b.
SheafMorphism block_map(const SheafSum& a, const SheafSum& b,
                        const std::vector<std::vector<std::optional<SheafMorphism>>>& blocks);
struct SumBlock {
    std::size_t to, from;
    SheafMorphism map;  // part `from` of a -> part `to` of b
};
/// Same as block_map for sparse block lists, placing matrices by coordinate offsets.
SheafMorphism sparse_map(const SheafSum& a, const SheafSum& b, const std::vector<SumBlock>& blocks);
/// Stalkwise inverse of an isomorphism.
SheafMorphism inverse(const SheafMorphism& f);

/// The map M_p (x) O_q -> M_q adjoint to r_pq.
ModHom tilde_restriction(const SheafModule& M, std::size_t p, std::size_t q);
/// First pair (p, q) at which quasi-coherence fails, if any.
std::optional<std::pair<std::size_t, std::size_t>> quasicoherence_failure(const SheafModule& M);
bool is_quasicoherent(const SheafModule& M);

/// Sections over an open U: compatible families inside the sum of the stalks
/// M_w, w in U (in point order).
struct Sections {
    std::vector<std::size_t> points;
    std::vector<std::size_t> offsets;
    AbGroup ambient;
    Sub sub;
    /// Coordinate block of point w inside the ambient sum.
    std::size_t offset(std::size_t w) const;
};
Sections sections(const SheafModule& M, const OpenSet& U);
/// Sections as a module over R through ring maps R -> O_w (one per point of U, compatible).
FiniteModule sections_module(const SheafModule& M, const Sections& s, const RingPtr& R,
                             const std::vector<RingHom>& to_points);
/// The restriction Gamma(U) -> Gamma(V) for V inside U.
AbHom restrict_sections(const SheafModule& M, const Sections& u, const Sections& v);
/// Value of a section at a point w of U.
AbHom evaluate(const SheafModule& M, const Sections& s, std::size_t w);
/// The map Gamma(U, M) -> Gamma(U, N) induced by a morphism.
AbHom sections_map(const SheafMorphism& f, const Sections& a, const Sections& b);

/// Hom_O(M, N) as an abelian group with conversion to morphisms.
struct SheafHomGroup {
    SheafPtr src, tgt;
    std::vector<HomModule> local;
    AbGroup ambient;
    Sub sub;
    SheafMorphism to_morphism(const Vec& x) const;
    Vec from_morphism(const SheafMorphism& f) const;
};
SheafHomGroup hom_group(const SheafPtr& M, const SheafPtr& N);

/// Morphism of finite ringed spaces; comp[x]: O_{Y, f(x)} -> O_{X, x}.
struct RingedMap {
    SpacePtr source, target;
    std::vector<std::size_t> assign;
    std::vector<RingHom> comp;

    void validate() const;
    static RingedMap identity(const SpacePtr& X);
    /// The canonical map to a one-point space whose ring maps to every O_x.
    static RingedMap to_point(const SpacePtr& X, const SpacePtr& pt, const std::vector<RingHom>& comp);
    static RingedMap inclusion(const OpenSubspace& U);
};
RingedMap compose(const RingedMap& g, const RingedMap& f);
/// Ring maps O_{Y,y} -> O_{X,w} for w in f^{-1}(U_y).
std::vector<RingHom> ring_maps_over(const RingedMap& f, std::size_t y, const std::vector<std::size_t>& points);

SheafPtr pushforward(const RingedMap& f, const SheafModule& M);
SheafMorphism pushforward(const RingedMap& f, const SheafMorphism& g, const SheafPtr& src, const SheafPtr& tgt);
SheafMorphism pushforward(const RingedMap& f, const SheafMorphism& g);
SheafPtr pullback(const RingedMap& f, const SheafModule& N);

/// Restriction to an open subspace and pushforward along its inclusion.
SheafPtr restrict(const SheafModule& M, const OpenSubspace& U);
SheafMorphism restrict(const SheafMorphism& f, const OpenSubspace& U);

/// Sheaf Hom: the stalk at x is Hom over U_x of the restrictions.
SheafPtr hom_sheaf(const SheafPtr& N, const SheafPtr& M);

/// tilde A on U_x, as a sheaf on the open subspace.
SheafPtr tilde(const OpenSubspace& Ux, const FiniteModule& A);
/// j_* tilde A for j: U_x -> X.
SheafPtr pushed_tilde(const SpacePtr& X, std::size_t x, const FiniteModule& A);
/// O restricted to U and extended by zero.
SheafPtr ext_by_zero(const SpacePtr& X, const OpenSet& U);
/// Stalk A (an O_x-module) at every q <= x, identity restrictions, zero elsewhere.
SheafPtr co_skyscraper(const SpacePtr& X, std::size_t x, const FiniteModule& A);
/// Morphism M -> co_skyscraper(x, A) corresponding to an O_x-map M_x -> A.
SheafMorphism to_co_skyscraper(const SheafPtr& M, const SheafPtr& C, std::size_t x, const AbHom& h);
/// A at q and zero elsewhere.
SheafPtr skyscraper(const SpacePtr& X, std::size_t q, const FiniteModule& A);

std::string describe(const SheafModule& M);

}  // namespace finsheaf
