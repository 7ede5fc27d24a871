#include "finsheaf/finring.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace finsheaf {

Vec FiniteRing::plus(const Vec& x, const Vec& y) const {
    Vec z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = mod(x[i] + y[i], add.orders[i]);
    return z;
}

Vec FiniteRing::multiply(const Vec& x, const Vec& y) const {
    Vec z(rank(), 0);
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) {
            if (y[j] == 0) continue;
            const i64 c = x[i] * y[j];
            const Vec& e = table[i][j];
            for (std::size_t k = 0; k < rank(); ++k) z[k] = (z[k] + c % add.orders[k] * e[k]) % add.orders[k];
        }
    }
    return z;
}

Vec FiniteRing::basis(std::size_t k) const {
    Vec e(rank(), 0);
    e[k] = 1;
    return e;
}

Mat FiniteRing::left_mult(const Vec& x) const {
    Mat m(rank(), rank());
    for (std::size_t j = 0; j < rank(); ++j) m.set_col(j, multiply(x, basis(j)));
    return m;
}

void FiniteRing::validate() const {
    const std::size_t n = rank();
    for (i64 o : add.orders)
        if (o < 2) throw RingError("ring " + name + ": additive orders must be at least 2");
    if (table.size() != n || one.size() != n) throw RingError("ring " + name + ": table has the wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw RingError("ring " + name + ": table has the wrong shape");
        for (std::size_t j = 0; j < n; ++j) {
            const Vec& e = table[i][j];
            if (e.size() != n) throw RingError("ring " + name + ": table entry has the wrong length");
            for (std::size_t k = 0; k < n; ++k)
                if (e[k] < 0 || e[k] >= add.orders[k]) throw RingError("ring " + name + ": entry out of range");
            // o_i e_i = 0 forces o_i (e_i e_j) = 0.
            for (std::size_t k = 0; k < n; ++k)
                if (mod(e[k] * gcd64(add.orders[i], add.orders[j]), add.orders[k]) != 0)
                    throw RingError("ring " + name + ": multiplication is not well defined");
            if (table[j][i] != e) throw RingError("ring " + name + ": multiplication is not commutative");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (multiply(table[i][j], basis(k)) != multiply(basis(i), table[j][k]))
                    throw RingError("ring " + name + ": multiplication is not associative");
    for (std::size_t j = 0; j < n; ++j)
        if (multiply(one, basis(j)) != basis(j)) throw RingError("ring " + name + ": one is not a unit element");
}

std::vector<Vec> FiniteRing::elements(std::size_t cap) const { return enumerate(add, cap); }

bool FiniteRing::is_unit(const Vec& x) const {
    for (const Vec& y : elements())
        if (multiply(x, y) == one) return true;
    return false;
}

i64 FiniteRing::characteristic() const {
    i64 c = 1;
    for (std::size_t i = 0; i < rank(); ++i)
        if (one[i] != 0) c = lcm64(c, add.orders[i] / gcd64(one[i], add.orders[i]));
    return c;
}

FiniteRing FiniteRing::integers_mod(i64 n) {
    if (n < 1) throw RingError("Z/n needs n >= 1");
    if (n == 1) return zero_ring();
    FiniteRing r;
    r.name = "Z/" + std::to_string(n);
    r.add = AbGroup::cyclic(n);
    r.table = {{Vec{1}}};
    r.one = {1};
    return r;
}

FiniteRing FiniteRing::truncated_poly(i64 p, std::size_t k) {
    if (p < 2 || k == 0) throw RingError("truncated polynomial ring needs p >= 2 and k >= 1");
    FiniteRing r;
    r.name = "Z/" + std::to_string(p) + "[t]/t^" + std::to_string(k);
    r.add.orders.assign(k, p);
    r.table.assign(k, std::vector<Vec>(k, Vec(k, 0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i + j < k) r.table[i][j][i + j] = 1;
    r.one = Vec(k, 0);
    r.one[0] = 1;
    return r;
}

FiniteRing FiniteRing::zero_ring() {
    FiniteRing r;
    r.name = "0";
    return r;
}

RingPtr make_ring(FiniteRing r) {
    r.validate();
    return std::make_shared<const FiniteRing>(std::move(r));
}

Vec RingHom::apply(const Vec& x) const {
    Vec y = mul(images, x, std::max<i64>(1, lcm64(src->add.exponent(), tgt->add.exponent())));
    reduce(y, tgt->add.orders);
    return y;
}

void RingHom::validate() const {
    if (images.rows != tgt->rank() || images.cols != src->rank())
        throw RingError("ring map " + src->name + " -> " + tgt->name + " has the wrong shape");
    if (!additive().well_defined())
        throw RingError("ring map " + src->name + " -> " + tgt->name + " is not additive");
    if (apply(src->one) != tgt->one)
        throw RingError("ring map " + src->name + " -> " + tgt->name + " does not preserve one");
    for (std::size_t i = 0; i < src->rank(); ++i)
        for (std::size_t j = 0; j < src->rank(); ++j)
            if (apply(src->table[i][j]) != tgt->multiply(apply(src->basis(i)), apply(src->basis(j))))
                throw RingError("ring map " + src->name + " -> " + tgt->name + " is not multiplicative");
}

RingHom RingHom::identity(const RingPtr& r) { return {r, r, Mat::identity(r->rank())}; }

RingHom compose(const RingHom& g, const RingHom& f) {
    return {f.src, g.tgt, compose(g.additive(), f.additive()).m};
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a->add == b->add && a->table == b->table && a->one == b->one);
}

RingHom from_integers(const RingPtr& zm, const RingPtr& r) {
    RingHom h{zm, r, Mat(r->rank(), zm->rank())};
    if (zm->rank() == 1) h.images.set_col(0, r->one);
    h.validate();
    return h;
}

std::vector<Sub> ideals(const FiniteRing& R, std::size_t cap) {
    const auto elems = R.elements();
    const std::size_t n = elems.size();
    using Key = std::vector<bool>;
    auto members = [&](const std::vector<Vec>& gens) {
        // Additive closure of R * gens.
        Key in(n, false);
        std::deque<Vec> todo;
        Vec zero = R.zero();
        in[element_index(R.add, zero)] = true;
        todo.push_back(zero);
        std::vector<Vec> span;
        for (const Vec& g : gens)
            for (std::size_t k = 0; k < R.rank(); ++k) span.push_back(R.multiply(R.basis(k), g));
        while (!todo.empty()) {
            Vec x = todo.front();
            todo.pop_front();
            for (const Vec& s : span) {
                Vec y = R.plus(x, s);
                std::size_t idx = element_index(R.add, y);
                if (!in[idx]) { in[idx] = true; todo.push_back(y); }
            }
        }
        return in;
    };
    std::set<Key> seen;
    std::vector<std::vector<Vec>> found;
    std::deque<std::vector<Vec>> queue{{}};
    seen.insert(members({}));
    found.push_back({});
    while (!queue.empty()) {
        auto gens = queue.front();
        queue.pop_front();
        Key cur = members(gens);
        for (std::size_t e = 0; e < n; ++e) {
            if (cur[e]) continue;
            auto next = gens;
            next.push_back(elems[e]);
            Key k = members(next);
            if (seen.insert(k).second) {
                if (seen.size() > cap) throw std::length_error("ideals: more ideals than the cap allows");
                found.push_back(next);
                queue.push_back(next);
            }
        }
    }
    std::vector<Sub> out;
    for (const auto& gens : found) {
        std::vector<Vec> cols;
        for (const Vec& g : gens)
            for (std::size_t k = 0; k < R.rank(); ++k) cols.push_back(R.multiply(R.basis(k), g));
        out.push_back(subgroup(R.add, Mat::from_cols(cols, R.rank())));
    }
    return out;
}

}  // namespace finsheaf
