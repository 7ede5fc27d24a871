#pragma once

// Resolutions and derived functors: the standard and pseudo-Cech resolutions,
// the quasi-coherator through its explicit product formula, injective
// resolutions, f^nabla / f^!, derived Hom groups, the D_qc coherator and
// quasi-coherent flat resolutions.

#include <climits>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finsheaf/cxalg.hpp"

namespace finsheaf {

// ---------------------------------------------------------------------------
// Building blocks

/// Sum of co-skyscrapers: summand i is co_skyscraper(anchor[i], mods[i]).
struct CoskySum {
    SpacePtr space;
    std::vector<std::size_t> anchor;
    std::vector<FiniteModule> mods;
    SheafSum sum;

    const SheafPtr& sheaf() const { return sum.sheaf; }
    std::size_t size() const { return anchor.size(); }
    /// Coordinate offset of summand i inside the stalk at p (p <= anchor[i]).
    std::size_t offset(std::size_t p, std::size_t i) const;
};
CoskySum cosky_sum(const SpacePtr& X, std::vector<std::size_t> anchor, std::vector<FiniteModule> mods);

/// Block from summand `from` of a to summand `to` of b. Needs anchor_b[to] <= anchor_a[from];
/// h is the underlying group map, linear over O at anchor_b[to].
struct CoskyBlock {
    std::size_t to, from;
    AbHom h;
};
SheafMorphism cosky_map(const CoskySum& a, const CoskySum& b, const std::vector<CoskyBlock>& blocks);
/// M -> b from O_{anchor_i}-maps h_i: M_{anchor_i} -> mods_i (missing entries are zero).
SheafMorphism cosky_map_into(const SheafPtr& M, const CoskySum& b, const std::vector<std::optional<AbHom>>& h);
/// a -> N with stalk components comp(p, i): mods_i -> N_p for p <= anchor_i.
SheafMorphism cosky_map_out(const CoskySum& a, const SheafPtr& N,
                            const std::function<std::optional<AbHom>(std::size_t, std::size_t)>& comp);

/// j_*(F|_U) with sections over U_p cap U cached for every p.
struct Piece {
    SheafPtr F;
    OpenSet U;
    std::vector<Sections> sec;
    SheafPtr sheaf;
};
Piece make_piece(const SheafPtr& F, const OpenSet& U);
/// a -> b for b.U inside a.U: restrict sections, then apply g (the identity when absent).
/// Only the components of g on points of b.U are used.
SheafMorphism piece_map(const Piece& a, const Piece& b, const std::optional<SheafMorphism>& g = std::nullopt);
/// M -> j_*(F|_U) adjoint to g: M -> F (the identity when absent).
SheafMorphism piece_unit(const SheafPtr& M, const Piece& b, const std::optional<SheafMorphism>& g = std::nullopt);

/// tilde(A) on U_x, extended by zero to X, with the base changes kept for maps.
struct TildeExt {
    std::size_t x = 0;
    FiniteModule A;
    std::vector<std::optional<BaseChange>> bc;  // set on U_x
    SheafPtr sheaf;
};
TildeExt tilde_ext(const SpacePtr& X, std::size_t x, const FiniteModule& A);
/// Map tilde(A) -> tilde(B) on U_y induced by an O_x-map h: A -> B (x <= y); zero off U_y.
SheafMorphism tilde_map(const TildeExt& a, const TildeExt& b, const AbHom& h);
/// The counit tilde(A)_x -> A.
ModHom tilde_counit(const TildeExt& a);

/// Totalized bicomplex of chain-indexed sums (rows: chain length, columns: degree of the input).
struct ChainBicomplex {
    std::vector<std::vector<ChainIndex>> chains;
    Bicomplex bi;
    Total tot;
    const SheafComplex& cx() const { return tot.cx; }
};

/// Map between totals of two bicomplexes with the same row/column ranges, from (p, q) blocks.
ComplexMorphism total_map(const Bicomplex& A, const Total& TA, const Bicomplex& B, const Total& TB,
                          const std::function<std::optional<SheafMorphism>(int, int)>& block);

// ---------------------------------------------------------------------------
// Resolutions

enum class ResolutionKind { standard, pseudo_cech, injective, flat_qcoh };
std::string to_string(ResolutionKind k);

struct Resolution {
    /// M -> R; for flat_qcoh the direction is R -> M.
    ComplexMorphism augmentation;
    ResolutionKind kind = ResolutionKind::standard;
    /// Degrees in which the augmentation is certified to be an isomorphism on cohomology.
    int reliable_lo = INT_MIN, reliable_hi = INT_MAX;

    const SheafComplex& complex() const;
    /// Checks the quasi-isomorphism inside the reliable window.
    std::optional<int> failure() const;
};

/// The standard complex j_*C^._U(F) pushed along f (chains of f.source inside U), with its
/// co-skyscraper structure: summand c of C^p F^r sits at f(c_0) with stalk F^r_{c_p}.
struct Standard : ChainBicomplex {
    RingedMap f;
    SheafComplex src;
    OpenSet U;
    std::vector<std::vector<CoskySum>> terms;  // [p][r - src.lo]
};
Standard standard_on(const SheafComplex& F, const OpenSet& U);
Standard pushed_standard(const RingedMap& f, const SheafComplex& M);
Resolution standard(const SheafComplex& M);
Resolution standard(const SheafPtr& M);
/// The map between standard complexes (both on the source space) induced by components g(w, r):
/// F^r_w -> G^r_w at the last point of each chain; chains of b must lie in a.U.
ComplexMorphism standard_map(const Standard& a, const Standard& b,
                             const std::function<std::optional<AbHom>(std::size_t, int)>& g);
/// C^.(g) for a chain map g.
ComplexMorphism standard_map(const ComplexMorphism& g, const Standard& a, const Standard& b);

/// Bicomplex of chain-indexed pieces (pseudo-Cech and Qc of the standard complex).
struct PieceBicomplex : ChainBicomplex {
    SheafComplex src;
    std::vector<std::vector<std::vector<Piece>>> pieces;  // [p][r - src.lo][chain]
    std::vector<std::vector<SheafSum>> sums;              // [p][r - src.lo]
    std::vector<std::vector<TildeExt>> tildes;            // Qc only: [r - src.lo][x]
};
PieceBicomplex pseudo_cech_complex(const SheafComplex& M);
Resolution pseudo_cech(const SheafComplex& M);
Resolution pseudo_cech(const SheafPtr& M);

/// Cohomology groups H^i(X, M) for i in [lo, hi].
std::vector<AbGroup> gamma_derived(const SheafComplex& M, int lo, int hi);
/// Rf_*M = f_*(C^.M).
SheafComplex push_derived(const RingedMap& f, const SheafComplex& M);
/// Surjectivity of Gamma(X) -> Gamma(V) for every open V.
bool is_flasque(const SheafModule& M);
/// Every nonempty open subset of X.
std::vector<OpenSet> open_sets(const Poset& P);

// ---------------------------------------------------------------------------
// Quasi-coherator (schematic spaces)

/// Qc(C^.M) via the product formula: summand c is j_*tilde(M_{c_p}) on U_{c_p}.
PieceBicomplex qc_standard(const SheafComplex& M);
/// The counit Qc(C^.M) -> C^.M.
ComplexMorphism qc_counit(const PieceBicomplex& Q, const Standard& C);
/// Qc(C^.M) -> pseudo-Cech, an isomorphism for quasi-coherent M.
ComplexMorphism qc_to_cech(const PieceBicomplex& Q, const PieceBicomplex& K);
/// Pseudo-Cech -> C^.M, evaluation at the last point.
ComplexMorphism cech_to_standard(const PieceBicomplex& K, const Standard& C);

struct QcModule {
    SheafPtr module;       // Qc(N)
    SheafMorphism counit;  // Qc(N) -> N
};
QcModule qc(const SheafPtr& N);

/// A morphism in D(X) as a roof: forward: A -> G and a quasi-isomorphism back: N -> G.
struct Roof {
    ComplexMorphism forward, back;
};
struct QcDerived {
    SheafComplex cx;  // RQc(M)
    Roof to_source;   // RQc(M) -> C^.M <- M
};
QcDerived qc_derived(const SheafComplex& M);

struct CheckReport {
    bool pass = true;
    std::optional<int> failing_degree;
    std::vector<std::string> lines;
};
/// Bokstedt-Neeman: Qc(C^.M) -> C^.M is a quasi-isomorphism, and for quasi-coherent M also
/// M -> Qc(C^.M) (through the pseudo-Cech complex).
CheckReport bn_check(const SheafComplex& M);
/// R_qc f_* M = f_*(pseudo-Cech of M).
SheafComplex rqc_push(const RingedMap& f, const SheafComplex& M);
/// Compares rqc_push with push_derived through C^. on the source.
CheckReport rqc_check(const RingedMap& f, const SheafComplex& M);

// ---------------------------------------------------------------------------
// Injective resolutions, f^nabla, f^!, duality

struct InjectiveResolution {
    Resolution res;
    std::vector<CoskySum> terms;  // per degree from res.complex().lo
};
/// Bounded-below injective resolution through degree d; d >= hi(M) + dim X + 1.
InjectiveResolution inj_res(const SheafComplex& M, int d);

/// Compatible families (e_q) in the sum of Hom_{O_{Y,q}}(O_{X,x}, N_q) over q <= y.
struct FamilyModule {
    std::size_t x = 0, y = 0;
    std::vector<std::size_t> qs;
    std::vector<Coinduced> co;
    std::vector<std::size_t> off;  // coordinate offset of each q-block in the ambient
    DirectSum ambient;
    ModHom incl;  // E -> ambient
    const FiniteModule& module() const { return incl.src; }
};

struct DualityData : ChainBicomplex {
    RingedMap f;
    SheafComplex N;
    int dim = 0;
    /// rows a = -p from -dim; terms[i][q - N.lo] for p = dim - i.
    std::vector<std::vector<CoskySum>> terms;
    std::vector<std::vector<std::vector<FamilyModule>>> fam;
    const CoskySum& term(int p, int q) const { return terms[dim - p][q - N.lo]; }
    const FamilyModule& family(int p, int q, std::size_t c) const { return fam[dim - p][q - N.lo][c]; }
};
DualityData f_nabla(const RingedMap& f, const SheafComplex& I);

struct Shriek {
    DualityData data;
    InjectiveResolution inj;
    int reliable_lo = 0, reliable_hi = 0;
    const SheafComplex& cx() const { return data.cx(); }
};
Shriek f_shriek(const RingedMap& f, const SheafComplex& N, int d);

struct DerivedHom {
    int lo = 0, hi = 0;
    std::vector<AbGroup> groups;  // Hom_D(M, N[i]) for i in [lo, hi]
    int depth = 0;
};
/// H^i of hom_complex(M, inj_res(N, d)); d defaults to the smallest depth certifying the window.
DerivedHom hom_derived(const SheafComplex& M, const SheafComplex& N, int lo, int hi, std::optional<int> depth = {});

struct DualityReport {
    bool pass = true;
    int lo = 0, hi = 0, depth = 0;
    std::vector<BigInt> lhs, rhs;  // |Hom(Rf_*M, N[i])|, |Hom(M, f^!N[i])|
    std::vector<bool> bijective;  // transported map on H^i
    bool complex_iso = true;      // Theta is an isomorphism of complexes commuting with delta
    std::string message;
};
DualityReport duality_check(const RingedMap& f, const SheafComplex& M, const SheafComplex& N, int lo, int hi,
                            std::optional<int> depth = {});

/// The isomorphism Hom^n(M, f^nabla I) -> Hom^n(f_* C^.M, I) in coordinates.
AbHom duality_iso(const DualityData& D, const Standard& S, const HomComplex& lhs, const HomComplex& rhs, int n);

// ---------------------------------------------------------------------------
// D_qc coherator and flat resolutions

struct Coherator {
    SheafComplex cx;  // N_qc
    Roof to_source;   // N_qc -> G <- N
    std::string split;  // description of the cover used
};
Coherator dqc_coherator(const SheafComplex& N);
/// N -> Tot over chains c of j_*C^._{U_{c_p}}(N|U_{c_p}).
ComplexMorphism chain_holim_unit(const SheafComplex& N);

struct FlatResolution {
    Resolution res;
    SheafComplex P;        // flat resolution by sums of O^{U_x}
    bool finite = true;    // false when P was cut at the length cap
};
FlatResolution flat_qcoh_res(const SheafPtr& M, int max_length = 4);

}  // namespace finsheaf
