#pragma once

// Finite abelian groups in coordinates: G = Z/o_0 + ... + Z/o_{k-1}.
// Homomorphisms are integer matrices acting on coordinate columns.

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finsheaf/zmod.hpp"

namespace finsheaf {

using BigInt = boost::multiprecision::cpp_int;

struct AbGroup {
    Vec orders;  // every entry >= 2

    std::size_t rank() const { return orders.size(); }
    bool is_zero() const { return orders.empty(); }
    i64 exponent() const;
    BigInt order() const;
    /// Canonical divisor chain d_1 | d_2 | ... (the Smith invariants).
    Vec invariants() const;
    bool operator==(const AbGroup&) const = default;

    static AbGroup zero() { return {}; }
    static AbGroup cyclic(i64 n);
    static AbGroup sum(const std::vector<AbGroup>& parts);
};

/// Canonical divisor chain of a finite abelian group given by cyclic orders.
Vec invariant_factors(const Vec& orders);

/// A homomorphism src -> tgt. m is tgt.rank() x src.rank(), row i reduced mod tgt.orders[i].
struct AbHom {
    AbGroup src, tgt;
    Mat m;

    static AbHom zero(const AbGroup& s, const AbGroup& t);
    static AbHom identity(const AbGroup& g);
    Vec apply(const Vec& x) const;
    /// Checks that every generator of src is sent to an element killed by its order.
    bool well_defined() const;
    bool is_zero() const;
};

AbHom compose(const AbHom& g, const AbHom& f);  // g o f
AbHom add(const AbHom& f, const AbHom& g);
AbHom scale(const AbHom& f, i64 c);
AbHom negate(const AbHom& f);

/// Builds a hom from the images of the source coordinate generators.
AbHom hom_from_images(const AbGroup& src, const AbGroup& tgt, const std::function<Vec(std::size_t)>& image);

/// G / <rels> with projection G -> Q and a set-theoretic (additive on coordinates) lift Q -> G.
struct Quotient {
    AbGroup group;
    AbHom proj;  // G -> Q
    Mat lift;    // rank G x rank Q; lift of the coordinate generators of Q
};

/// Z_N^n / (columns of rels), presented as a canonical group.
Quotient present(i64 N, std::size_t n, const Mat& rels, const AbGroup& ambient);

Quotient quotient(const AbGroup& G, const Mat& rels);

/// Subgroup generated by the columns of gens, with its inclusion.
struct Sub {
    AbGroup group;
    AbHom incl;  // S -> G, injective
};

Sub subgroup(const AbGroup& G, const Mat& gens);
Sub kernel(const AbHom& h);
Sub image(const AbHom& h);
Quotient cokernel(const AbHom& h);

bool is_injective(const AbHom& h);
bool is_surjective(const AbHom& h);
bool is_iso(const AbHom& h);

/// x with h(x) = y, if y lies in the image.
std::optional<Vec> preimage(const AbHom& h, const Vec& y);

/// The unique f with incl o f = g, requiring im g inside im incl (throws otherwise).
AbHom factor_through(const AbHom& g, const AbHom& incl);

/// Hom_Z(A, B) in coordinates: basis E_ij of order gcd(a_j, b_i).
struct HomZ {
    AbGroup src, tgt;
    AbGroup group;
    std::vector<std::pair<std::size_t, std::size_t>> slot;  // (i, j) per coordinate
    Vec step;                                                // b_i / gcd(a_j, b_i) per coordinate

    explicit HomZ(const AbGroup& a, const AbGroup& b);
    Mat to_matrix(const Vec& c) const;
    Vec from_matrix(const Mat& m) const;
};

/// Z-tensor of two groups with coordinate (i, j) at index i * B.rank() + j; orders gcd.
/// The result keeps order-one coordinates so that indexing stays rectangular.
Vec tensor_orders(const AbGroup& A, const AbGroup& B);

/// Elements of G in mixed-radix order; throws when |G| exceeds cap.
std::vector<Vec> enumerate(const AbGroup& G, std::size_t cap = 1u << 16);
std::size_t element_index(const AbGroup& G, const Vec& x);

std::string to_string(const BigInt& n);

}  // namespace finsheaf
