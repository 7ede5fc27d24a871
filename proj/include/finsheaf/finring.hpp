#pragma once

// Finite commutative unital rings, given by an additive group and the
// products of its coordinate generators.

#include <memory>
#include <string>
#include <vector>

#include "finsheaf/abgroup.hpp"

namespace finsheaf {

class RingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FiniteRing {
    std::string name;
    AbGroup add;
    std::vector<std::vector<Vec>> table;  // table[i][j] = e_i * e_j
    Vec one;

    std::size_t rank() const { return add.rank(); }
    BigInt size() const { return add.order(); }
    Vec multiply(const Vec& x, const Vec& y) const;
    Vec plus(const Vec& x, const Vec& y) const;
    Vec zero() const { return Vec(rank(), 0); }
    Vec basis(std::size_t k) const;
    /// Matrix of y -> x * y on the additive coordinates.
    Mat left_mult(const Vec& x) const;
    /// Throws RingError on a table that is not a commutative unital ring.
    void validate() const;
    std::vector<Vec> elements(std::size_t cap = 1u << 12) const;
    bool is_unit(const Vec& x) const;
    /// Characteristic: additive order of 1.
    i64 characteristic() const;

    static FiniteRing integers_mod(i64 n);
    /// (Z/p)[t]/(t^k) on the basis 1, t, ..., t^{k-1}.
    static FiniteRing truncated_poly(i64 p, std::size_t k);
    static FiniteRing zero_ring();
};

using RingPtr = std::shared_ptr<const FiniteRing>;
RingPtr make_ring(FiniteRing r);

/// Unital ring homomorphism; images is tgt.rank x src.rank.
struct RingHom {
    RingPtr src, tgt;
    Mat images;

    Vec apply(const Vec& x) const;
    AbHom additive() const { return {src->add, tgt->add, images}; }
    void validate() const;
    static RingHom identity(const RingPtr& r);
};

RingHom compose(const RingHom& g, const RingHom& f);  // g o f
bool same_ring(const RingPtr& a, const RingPtr& b);
/// Canonical map Z/m -> R when char R divides m.
RingHom from_integers(const RingPtr& zm, const RingPtr& r);

/// All ideals of R as additive subgroups (columns generate); throws past cap.
std::vector<Sub> ideals(const FiniteRing& R, std::size_t cap = 256);

}  // namespace finsheaf
