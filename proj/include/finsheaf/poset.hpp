#pragma once

// Finite posets as finite T0 spaces: p <= q iff U_p contains U_q, where
// U_p = {q : q >= p} is the smallest open set containing p.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace finsheaf {

using OpenSet = std::vector<bool>;  // indicator over point indices

class Poset {
public:
    Poset() = default;
    /// Builds the reflexive-transitive closure of the given relations and
    /// rejects cycles. Relations are pairs (p, q) meaning p <= q.
    Poset(std::vector<std::string> names, const std::vector<std::pair<std::size_t, std::size_t>>& relations);
    static Poset from_names(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& relations);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t p) const { return names_.at(p); }
    std::size_t index(const std::string& name) const;
    bool leq(std::size_t p, std::size_t q) const { return leq_[p * names_.size() + q]; }
    bool lt(std::size_t p, std::size_t q) const { return p != q && leq(p, q); }
    /// q covers p: p < q with nothing strictly between.
    bool covers(std::size_t p, std::size_t q) const;
    std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;

    OpenSet up_set(std::size_t p) const;
    OpenSet down_set(std::size_t p) const;
    OpenSet whole() const { return OpenSet(size(), true); }
    OpenSet empty() const { return OpenSet(size(), false); }
    bool is_open(const OpenSet& u) const;
    std::vector<std::size_t> minimal_points() const;
    std::size_t dimension() const;
    bool operator==(const Poset&) const = default;

    /// Full subposet on the given points, with the index map new -> old.
    std::pair<Poset, std::vector<std::size_t>> restrict_to(const OpenSet& u) const;

private:
    std::vector<std::string> names_;
    std::vector<char> leq_;
};

/// Strictly increasing chain x_0 < ... < x_i.
struct ChainIndex {
    std::vector<std::size_t> points;
    std::size_t length() const { return points.size() - 1; }
    std::size_t first() const { return points.front(); }
    std::size_t last() const { return points.back(); }
    bool operator==(const ChainIndex&) const = default;
    auto operator<=>(const ChainIndex&) const = default;
};

/// All chains of i+1 points whose first point lies in u, in lexicographic
/// order of point indices.
std::vector<ChainIndex> chains(const Poset& P, std::size_t i, const OpenSet& u);
std::vector<ChainIndex> all_chains(const Poset& P, std::size_t i);
/// Chain with entry k removed.
ChainIndex face(const ChainIndex& c, std::size_t k);

struct MonotoneMap {
    const Poset* source = nullptr;
    const Poset* target = nullptr;
    std::vector<std::size_t> assign;
    bool is_monotone() const;
};

OpenSet intersect(const OpenSet& a, const OpenSet& b);
OpenSet unite(const OpenSet& a, const OpenSet& b);
bool subset(const OpenSet& a, const OpenSet& b);
bool is_empty(const OpenSet& a);
std::size_t count(const OpenSet& a);
OpenSet preimage(const std::vector<std::size_t>& f, const OpenSet& target, std::size_t source_size);

/// Finite model of a covering: X = S / (U^s = U^{s'}), ordered by reverse inclusion
/// of U^s. Returns X and the quotient map as point indices of X.
struct CoveringModel {
    Poset space;
    std::vector<std::size_t> quotient;          // S point -> X point
    std::vector<OpenSet> neighborhoods;          // U^s per X point, as subsets of S
};
CoveringModel covering_model(const Poset& S, const std::vector<OpenSet>& covering);

/// Face poset of a simplicial complex given by maximal simplices (vertex ids):
/// faces ordered by inclusion, so the minimal open of a face is its open star.
Poset face_poset(const std::vector<std::vector<int>>& maximal_simplices);

/// Order complex: the maximal chains of P as simplices over point indices.
std::vector<std::vector<int>> order_complex(const Poset& P);

class PosetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace finsheaf
