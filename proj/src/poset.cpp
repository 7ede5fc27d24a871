#include "finsheaf/poset.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace finsheaf {

Poset::Poset(std::vector<std::string> names, const std::vector<std::pair<std::size_t, std::size_t>>& relations)
    : names_(std::move(names)) {
    const std::size_t n = names_.size();
    {
        std::set<std::string> seen(names_.begin(), names_.end());
        if (seen.size() != n) throw PosetError("duplicate point identifier");
    }
    leq_.assign(n * n, 0);
    for (std::size_t p = 0; p < n; ++p) leq_[p * n + p] = 1;
    for (auto [p, q] : relations) {
        if (p >= n || q >= n) throw PosetError("relation refers to an unknown point");
        leq_[p * n + q] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq_[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq_[k * n + j]) leq_[i * n + j] = 1;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q)
            if (leq_[p * n + q] && leq_[q * n + p])
                throw PosetError("relation is not antisymmetric: " + names_[p] + " and " + names_[q]);
}

Poset Poset::from_names(std::vector<std::string> names,
                        const std::vector<std::pair<std::string, std::string>>& relations) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = i;
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (const auto& [a, b] : relations) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) throw PosetError("unknown point identifier: " + a);
        if (ib == idx.end()) throw PosetError("unknown point identifier: " + b);
        rel.emplace_back(ia->second, ib->second);
    }
    return Poset(std::move(names), rel);
}

std::size_t Poset::index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw PosetError("unknown point identifier: " + name);
    return static_cast<std::size_t>(it - names_.begin());
}

bool Poset::covers(std::size_t p, std::size_t q) const {
    if (!lt(p, q)) return false;
    for (std::size_t r = 0; r < size(); ++r)
        if (lt(p, r) && lt(r, q)) return false;
    return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t p = 0; p < size(); ++p)
        for (std::size_t q = 0; q < size(); ++q)
            if (covers(p, q)) e.emplace_back(p, q);
    return e;
}

OpenSet Poset::up_set(std::size_t p) const {
    if (p >= size()) throw PosetError("unknown point");
    OpenSet u(size(), false);
    for (std::size_t q = 0; q < size(); ++q) u[q] = leq(p, q);
    return u;
}

OpenSet Poset::down_set(std::size_t p) const {
    OpenSet u(size(), false);
    for (std::size_t q = 0; q < size(); ++q) u[q] = leq(q, p);
    return u;
}

bool Poset::is_open(const OpenSet& u) const {
    for (std::size_t p = 0; p < size(); ++p)
        if (u[p])
            for (std::size_t q = 0; q < size(); ++q)
                if (leq(p, q) && !u[q]) return false;
    return true;
}

std::vector<std::size_t> Poset::minimal_points() const {
    std::vector<std::size_t> m;
    for (std::size_t p = 0; p < size(); ++p) {
        bool minimal = true;
        for (std::size_t q = 0; q < size(); ++q) minimal &= !lt(q, p);
        if (minimal) m.push_back(p);
    }
    return m;
}

std::size_t Poset::dimension() const {
    if (size() == 0) throw PosetError("dimension of the empty poset");
    // Longest chain ending at p, filled in an order compatible with <.
    std::vector<std::size_t> height(size(), 0);
    std::vector<std::size_t> order(size());
    for (std::size_t i = 0; i < size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        std::size_t da = 0, db = 0;
        for (std::size_t q = 0; q < size(); ++q) { da += lt(q, a); db += lt(q, b); }
        return da < db;
    });
    std::size_t best = 0;
    for (std::size_t p : order) {
        for (std::size_t q = 0; q < size(); ++q)
            if (lt(q, p)) height[p] = std::max(height[p], height[q] + 1);
        best = std::max(best, height[p]);
    }
    return best;
}

std::pair<Poset, std::vector<std::size_t>> Poset::restrict_to(const OpenSet& u) const {
    std::vector<std::size_t> keep;
    std::vector<std::string> nm;
    for (std::size_t p = 0; p < size(); ++p)
        if (u[p]) { keep.push_back(p); nm.push_back(names_[p]); }
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (i != j && leq(keep[i], keep[j])) rel.emplace_back(i, j);
    return {Poset(std::move(nm), rel), keep};
}

std::vector<ChainIndex> chains(const Poset& P, std::size_t i, const OpenSet& u) {
    std::vector<ChainIndex> out;
    std::vector<std::size_t> cur;
    std::function<void()> extend = [&] {
        if (cur.size() == i + 1) { out.push_back({cur}); return; }
        for (std::size_t q = 0; q < P.size(); ++q) {
            if (!P.lt(cur.back(), q)) continue;
            cur.push_back(q);
            extend();
            cur.pop_back();
        }
    };
    for (std::size_t p = 0; p < P.size(); ++p) {
        if (!u[p]) continue;
        cur.assign(1, p);
        extend();
    }
    return out;
}

std::vector<ChainIndex> all_chains(const Poset& P, std::size_t i) { return chains(P, i, P.whole()); }

ChainIndex face(const ChainIndex& c, std::size_t k) {
    ChainIndex f;
    for (std::size_t j = 0; j < c.points.size(); ++j)
        if (j != k) f.points.push_back(c.points[j]);
    return f;
}

bool MonotoneMap::is_monotone() const {
    for (std::size_t p = 0; p < source->size(); ++p)
        for (std::size_t q = 0; q < source->size(); ++q)
            if (source->leq(p, q) && !target->leq(assign[p], assign[q])) return false;
    return true;
}

OpenSet intersect(const OpenSet& a, const OpenSet& b) {
    OpenSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
    return r;
}

OpenSet unite(const OpenSet& a, const OpenSet& b) {
    OpenSet r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] || b[i];
    return r;
}

bool subset(const OpenSet& a, const OpenSet& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

bool is_empty(const OpenSet& a) { return std::none_of(a.begin(), a.end(), [](bool b) { return b; }); }

std::size_t count(const OpenSet& a) { return static_cast<std::size_t>(std::count(a.begin(), a.end(), true)); }

OpenSet preimage(const std::vector<std::size_t>& f, const OpenSet& target, std::size_t source_size) {
    OpenSet r(source_size, false);
    for (std::size_t p = 0; p < source_size; ++p) r[p] = target[f[p]];
    return r;
}

CoveringModel covering_model(const Poset& S, const std::vector<OpenSet>& covering) {
    const std::size_t n = S.size();
    for (const auto& u : covering) {
        if (u.size() != n) throw PosetError("covering member has the wrong size");
        if (!S.is_open(u)) throw PosetError("covering member is not open");
    }
    std::vector<OpenSet> us(n);
    for (std::size_t s = 0; s < n; ++s) {
        OpenSet acc = S.whole();
        bool covered = false;
        for (const auto& u : covering)
            if (u[s]) { acc = intersect(acc, u); covered = true; }
        if (!covered) throw PosetError("covering does not cover point " + S.name(s));
        us[s] = acc;
    }
    CoveringModel m;
    m.quotient.assign(n, 0);
    std::vector<std::string> names;
    for (std::size_t s = 0; s < n; ++s) {
        auto it = std::find(m.neighborhoods.begin(), m.neighborhoods.end(), us[s]);
        if (it == m.neighborhoods.end()) {
            m.quotient[s] = m.neighborhoods.size();
            m.neighborhoods.push_back(us[s]);
            names.push_back("[" + S.name(s) + "]");
        } else {
            m.quotient[s] = static_cast<std::size_t>(it - m.neighborhoods.begin());
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = 0; b < names.size(); ++b)
            if (a != b && subset(m.neighborhoods[b], m.neighborhoods[a])) rel.emplace_back(a, b);
    m.space = Poset(std::move(names), rel);
    return m;
}

Poset face_poset(const std::vector<std::vector<int>>& maximal_simplices) {
    if (maximal_simplices.empty()) throw PosetError("empty simplicial complex");
    std::set<std::vector<int>> maxes;
    for (auto s : maximal_simplices) {
        if (s.empty()) throw PosetError("empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PosetError("repeated vertex in simplex");
        if (!maxes.insert(s).second) throw PosetError("duplicate simplex");
    }
    std::set<std::vector<int>> faces;
    for (const auto& s : maxes) {
        const std::size_t k = s.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            std::vector<int> f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) f.push_back(s[i]);
            faces.insert(f);
        }
    }
    // Dimension first, then lexicographic, so vertices come first.
    std::vector<std::vector<int>> list(faces.begin(), faces.end());
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<std::string> names;
    for (const auto& f : list) {
        std::string nm = "{";
        for (std::size_t i = 0; i < f.size(); ++i) nm += (i ? "," : "") + std::to_string(f[i]);
        names.push_back(nm + "}");
    }
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t a = 0; a < list.size(); ++a)
        for (std::size_t b = 0; b < list.size(); ++b)
            if (a != b && std::includes(list[b].begin(), list[b].end(), list[a].begin(), list[a].end()))
                rel.emplace_back(a, b);
    return Poset(std::move(names), rel);
}

std::vector<std::vector<int>> order_complex(const Poset& P) {
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> cur;
    std::function<void()> extend = [&] {
        bool extended = false;
        for (std::size_t q = 0; q < P.size(); ++q)
            if (P.covers(cur.back(), q)) {
                extended = true;
                cur.push_back(q);
                extend();
                cur.pop_back();
            }
        if (!extended) out.emplace_back(cur.begin(), cur.end());
    };
    for (std::size_t p : P.minimal_points()) {
        cur.assign(1, p);
        extend();
    }
    return out;
}

}  // namespace finsheaf
