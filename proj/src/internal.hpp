#pragma once

// Helpers shared by the resolution sources.

#include <algorithm>
#include <functional>

#include "finsheaf/derived.hpp"

namespace finsheaf::detail {

inline i64 sign(int k) { return (k % 2 == 0) ? 1 : -1; }

inline AbHom reduced_identity(const AbGroup& g) {
    AbHom h = AbHom::identity(g);
    reduce_rows(h.m, g.orders);
    return h;
}

inline std::optional<std::size_t> find_chain(const std::vector<ChainIndex>& cs, const ChainIndex& c) {
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || !(*it == c)) return std::nullopt;
    return static_cast<std::size_t>(it - cs.begin());
}

inline std::size_t chain_pos(const std::vector<ChainIndex>& cs, const ChainIndex& c) {
    if (auto i = find_chain(cs, c)) return *i;
    throw SheafError("chain is not indexed");
}

inline std::vector<std::vector<ChainIndex>> chains_in(const Poset& P, const OpenSet& U) {
    std::vector<std::vector<ChainIndex>> out;
    for (std::size_t p = 0; p <= P.dimension(); ++p) out.push_back(chains(P, p, U));
    return out;
}

inline Bicomplex empty_bicomplex(const SpacePtr& Y, int lo, std::size_t rows, std::size_t cols) {
    Bicomplex B{Y, 0, lo, {}, {}, {}};
    B.terms.assign(rows, std::vector<SheafPtr>(cols));
    B.dh.assign(rows, std::vector<SheafMorphism>(cols));
    B.dv.assign(rows, std::vector<SheafMorphism>(cols));
    return B;
}

/// Fills sums, differentials and the total of a piece bicomplex whose pieces are set.
/// face_map(p, r, j, i, last): piece j of row p -> piece i of row p + 1 (unsigned);
/// vertical(p, r, i): piece i of column r -> piece i of column r + 1.
void assemble_pieces(PieceBicomplex& B, const SpacePtr& X,
                     const std::function<SheafMorphism(std::size_t, std::size_t, std::size_t, std::size_t, bool)>& face_map,
                     const std::function<SheafMorphism(std::size_t, std::size_t, std::size_t)>& vertical);

/// Degreewise map into a total complex from a sheaf in degree r placed at (0, r).
ComplexMorphism into_row0(const SheafComplex& M, const Bicomplex& B, const Total& T,
                          const std::function<SheafMorphism(int)>& into);

}  // namespace finsheaf::detail
