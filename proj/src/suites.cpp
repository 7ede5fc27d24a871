#include "finsheaf/suites.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "finsheaf/classify.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/random.hpp"

namespace finsheaf {

namespace {

Vec unit(const AbGroup& G, std::size_t j) {
    Vec e(G.rank(), 0);
    e[j] = 1;
    return e;
}

const std::vector<std::string> semi_separated = {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"};
const std::vector<std::string> with_pc = {"FIX-PT", "FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE", "FIX-PC"};

RingedMap to_point(const SpacePtr& X) { return map_to_point(X, point_space(X->rings[0])); }

SpacePtr constant(const Poset& P, i64 p) { return std::make_shared<const RingedSpace>(RingedSpace::constant(P, make_ring(FiniteRing::integers_mod(p)))); }

struct Tally {
    SuiteResult& r;
    void fail(const std::string& w) {
        r.pass = false;
        if (r.witnesses.size() < 8) r.witnesses.push_back(w);
    }
    void check(bool ok, const std::string& w) {
        if (!ok) fail(w);
    }
};

std::string instance(const std::string& space, int i) { return space + " #" + std::to_string(i); }

// ---------------------------------------------------------------------------

void resolutions(SuiteResult& r, Rng& rng, int count) {
    Tally t{r};
    const auto names = fixture_names();
    for (int i = 0; i < count; ++i) {
        const std::string& name = names[static_cast<std::size_t>(i) % names.size()];
        SpacePtr X = fixture(name);
        SheafPtr M = random_sheaf(X, rng);
        Resolution R = standard(M);
        if (auto d = R.failure()) t.fail(instance(name, i) + ": standard augmentation fails in degree " + std::to_string(*d));
        for (const auto& T : R.complex().terms) t.check(is_flasque(*T), instance(name, i) + ": standard term not flasque");
    }
    for (int i = 0; i < count; ++i) {
        const std::string& name = semi_separated[static_cast<std::size_t>(i) % semi_separated.size()];
        SpacePtr X = fixture(name);
        const int dim = static_cast<int>(X->poset.dimension());
        SheafPtr M = random_qcoh(X, rng);
        Resolution R = pseudo_cech(M);
        if (auto d = R.failure()) t.fail(instance(name, i) + ": pseudo-Cech augmentation fails in degree " + std::to_string(*d));
        if (dim == 0) continue;
        for (const auto& T : R.complex().terms)
            for (const auto& H : gamma_derived(SheafComplex::single(T), 1, dim))
                t.check(H.is_zero(), instance(name, i) + ": pseudo-Cech term has higher cohomology");
    }
    r.summary = std::to_string(count) + " standard resolutions, " + std::to_string(count) + " pseudo-Cech resolutions";
}

void cohomology_oracle(SuiteResult& r, Rng&, int) {
    Tally t{r};
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> cases = {{"FIX-PC", {1, 1}}, {"FIX-S2", {1, 0, 1}}};
    std::ostringstream s;
    for (const auto& [name, expect] : cases) {
        SpacePtr X = fixture(name);
        const int dim = static_cast<int>(X->poset.dimension());
        std::vector<AbGroup> H = gamma_derived(SheafComplex::single(structure_sheaf(X)), 0, dim);
        std::vector<std::size_t> oracle = simplicial_cohomology_f2(order_complex(X->poset));
        oracle.resize(H.size(), 0);
        s << name << ":";
        for (std::size_t n = 0; n < H.size(); ++n) {
            std::size_t k = 0;
            for (i64 d : H[n].invariants()) {
                t.check(d == 2, name + ": H^" + std::to_string(n) + " is not an F2-vector space");
                ++k;
            }
            s << " " << k;
            t.check(k == oracle[n], name + ": H^" + std::to_string(n) + " has dimension " + std::to_string(k) + ", oracle says " +
                                        std::to_string(oracle[n]));
            t.check(n >= expect.size() ? k == 0 : k == expect[n], name + ": H^" + std::to_string(n) + " differs from the expected value");
        }
        s << (name == "FIX-PC" ? "; " : "");
    }
    r.summary = "dimensions " + s.str();
}

// O^{U_y} -> O^{U_x} sending 1 to s in O_y.
SheafMorphism multiply_into(const SheafPtr& G, std::size_t y, const SheafPtr& Gx, const Vec& s) {
    const RingedSpace& X = *G->space;
    SheafMorphism h = SheafMorphism::zero(G, Gx);
    for (std::size_t w = 0; w < X.size(); ++w) {
        if (!X.poset.leq(y, w)) continue;
        const Vec sw = X.r(y, w).apply(s);
        h.comp[w] = AbHom{X.rings[w]->add, X.rings[w]->add, X.rings[w]->left_mult(sw)};
    }
    return h;
}

void standard_terms(SuiteResult& r, Rng& rng, int count) {
    Tally t{r};
    // Hom(N, pseudo-Cech term) against sections of the standard complex of Hom(N, M), chain by chain
    for (int n = 0; n < count; ++n) {
        const std::string& name = with_pc[static_cast<std::size_t>(n) % with_pc.size()];
        SpacePtr X = fixture(name);
        SheafPtr N = random_sheaf(X, rng), M = random_sheaf(X, rng);
        const auto i = static_cast<std::size_t>(rng() % (X->poset.dimension() + 1));
        PieceBicomplex K = pseudo_cech_complex(SheafComplex::single(M));
        GroupComplex G = global_sections(standard(hom_sheaf(N, M)).complex());
        const BigInt lhs = hom_group(N, K.sums[i][0].sheaf).sub.group.order();
        t.check(lhs == G.at(static_cast<int>(i)).order(), instance(name, n) + ": pseudo-Cech Hom count");
        for (std::size_t k = 0; k < K.chains[i].size(); ++k) {
            const Piece& pc = K.pieces[i][0][k];
            OpenSubspace U = open_subspace(X, pc.U);
            SheafHomGroup A = hom_group(N, pc.sheaf);
            SheafHomGroup B = hom_group(restrict(*N, U), restrict(*M, U));
            AbHom f = transport(A.sub.group, B.sub.group, [&](const Vec& v) {
                SheafMorphism g = A.to_morphism(v);
                SheafMorphism h{B.src, B.tgt, {}};
                for (std::size_t w : U.to_parent) h.comp.push_back(compose(evaluate(*M, pc.sec[w], w), g.comp[w]));
                return B.from_morphism(h);
            });
            t.check(is_iso(f), instance(name, n) + ": pseudo-Cech Hom map is not bijective");
        }
    }
    // Hom(N, C^i M) against Hom(N_{x_i}, M_{x_i}) per chain, bijection through co-skyscraper maps
    for (int n = 0; n < count; ++n) {
        const std::string& name = with_pc[static_cast<std::size_t>(n) % with_pc.size()];
        SpacePtr X = fixture(name);
        SheafPtr M = random_sheaf(X, rng), N = random_qcoh(X, rng);
        const auto i = static_cast<std::size_t>(rng() % (X->poset.dimension() + 1));
        Standard S = standard_on(SheafComplex::single(M), X->poset.whole());
        const CoskySum& T = S.terms[i][0];
        BigInt prod = 1;
        for (std::size_t k = 0; k < S.chains[i].size(); ++k) {
            const std::size_t x0 = S.chains[i][k].first(), xi = S.chains[i][k].last();
            HomModule h = hom_module(N->stalk[xi], M->stalk[xi]);
            prod *= h.module.group.order();
            const SheafPtr& C = T.sum.inj[k].src;
            SheafHomGroup B = hom_group(N, C);
            AbHom f = transport(h.module.group, B.sub.group, [&](const Vec& v) {
                return B.from_morphism(to_co_skyscraper(N, C, x0, compose(h.to_hom(v).f, N->r(x0, xi))));
            });
            t.check(is_iso(f), instance(name, n) + ": co-skyscraper Hom map is not bijective");
        }
        t.check(hom_group(N, T.sheaf()).sub.group.order() == prod, instance(name, n) + ": standard term Hom count");
    }
    // Qc of the standard term: the counit induces a bijection on Hom from quasi-coherent N
    for (int n = 0; n < count; ++n) {
        const std::string& name = semi_separated[static_cast<std::size_t>(n) % semi_separated.size()];
        SpacePtr X = fixture(name);
        SheafPtr M = random_sheaf(X, rng), N = random_qcoh(X, rng);
        SheafComplex Mc = SheafComplex::single(M);
        PieceBicomplex Q = qc_standard(Mc);
        Standard S = standard_on(Mc, X->poset.whole());
        ComplexMorphism eps = qc_counit(Q, S);
        for (int i = 0; i <= Q.cx().hi(); ++i) {
            t.check(is_quasicoherent(*Q.cx().at(i)), instance(name, n) + ": Qc term not quasi-coherent");
            SheafHomGroup A = hom_group(N, Q.cx().at(i)), B = hom_group(N, S.cx().at(i));
            AbHom f = transport(A.sub.group, B.sub.group, [&](const Vec& v) { return B.from_morphism(compose(eps.at(i), A.to_morphism(v))); });
            t.check(is_iso(f), instance(name, n) + ": Qc counit not bijective on Hom");
        }
    }
    // Qc(C^i M) is the pseudo-Cech term for quasi-coherent M
    for (int n = 0; n < count; ++n) {
        const std::string& name = semi_separated[static_cast<std::size_t>(n) % semi_separated.size()];
        SheafComplex M = SheafComplex::single(random_qcoh(fixture(name), rng));
        PieceBicomplex Q = qc_standard(M), K = pseudo_cech_complex(M);
        ComplexMorphism iso = qc_to_cech(Q, K);
        for (int i = 0; i <= Q.cx().hi(); ++i) {
            t.check(Q.cx().at(i)->total_order() == K.cx().at(i)->total_order(), instance(name, n) + ": Qc and pseudo-Cech orders");
            for (const auto& c : iso.at(i).comp) t.check(is_iso(c), instance(name, n) + ": Qc to pseudo-Cech not an isomorphism");
        }
    }
    // standard terms of injectives are injective
    int injectives = 0;
    for (const char* name : {"FIX-FLAT", "FIX-FLAT4", "FIX-WEDGE"}) {
        SpacePtr X = fixture(name);
        InjectiveResolution R = inj_res(SheafComplex::single(random_sheaf(X, rng)), static_cast<int>(X->poset.dimension()) + 1);
        for (const auto& T : R.terms) {
            SheafComplex C = standard(T.sheaf()).complex();
            for (int i = 0; i <= C.hi(); ++i, ++injectives)
                t.check(!injectivity_failure(C.at(i)), std::string(name) + ": standard term of an injective fails the extension search");
        }
    }
    SpacePtr W = fix_wedge();
    t.check(injectivity_failure(skyscraper(W, 2, FiniteModule::free(W->rings[2], 1))).has_value(), "extension search accepts a non-injective");
    // flat input gives flat standard terms after Qc
    int flats = 0;
    for (const auto& name : semi_separated) {
        SpacePtr X = fixture(name);
        std::vector<SheafPtr> parts;
        for (std::size_t x = 0; x < X->size(); ++x)
            for (std::uint64_t k = 1 + rng() % 2; k > 0; --k) parts.push_back(ext_by_zero(X, X->poset.up_set(x)));
        PieceBicomplex Q = qc_standard(SheafComplex::single(direct_sum(X, parts).sheaf));
        for (const auto& T : Q.cx().terms)
            for (const auto& s : T->stalk) {
                t.check(is_flat(s), name + ": Qc of a standard term of a flat module is not flat");
                ++flats;
            }
    }
    r.summary = std::to_string(count) + " instances for each Hom identity, " + std::to_string(injectives) + " injectivity searches, " +
                std::to_string(flats) + " flat stalks";
}

void bokstedt_neeman(SuiteResult& r, Rng& rng, int count) {
    Tally t{r};
    int ran = 0, qcoh = 0;
    for (int attempt = 0; ran < count && attempt < 20 * count; ++attempt) {
        const std::string& name = semi_separated[static_cast<std::size_t>(attempt) % semi_separated.size()];
        SheafComplex M = random_complex(fixture(name), rng, attempt % 2 == 0);
        if (!in_Dqc(M)) continue;
        CheckReport c = bn_check(M);
        t.check(c.pass, instance(name, ran) + ": Qc(C M) -> C M fails" + (c.failing_degree ? " in degree " + std::to_string(*c.failing_degree) : ""));
        bool all_qcoh = true;
        for (const auto& T : M.terms) all_qcoh = all_qcoh && is_quasicoherent(*T);
        if (all_qcoh) {
            QcDerived q = qc_derived(M);
            t.check(is_quasi_iso(q.to_source.forward) && is_quasi_iso(q.to_source.back), instance(name, ran) + ": RQc(M) is not M");
            ++qcoh;
        }
        ++ran;
    }
    t.check(ran == count, "only " + std::to_string(ran) + " D_qc complexes generated");
    r.summary = std::to_string(ran) + " D_qc complexes, " + std::to_string(qcoh) + " with quasi-coherent terms";
}

std::vector<std::pair<std::string, RingedMap>> push_maps() {
    std::vector<std::pair<std::string, RingedMap>> maps;
    for (const auto& name : semi_separated) {
        SpacePtr X = fixture(name);
        maps.emplace_back("id " + name, RingedMap::identity(X));
        if (X->size() > 1) maps.emplace_back(name + " -> point", to_point(X));
    }
    SpacePtr W = fix_wedge();
    maps.emplace_back("U_a -> FIX-WEDGE", RingedMap::inclusion(open_subspace(W, W->poset.up_set(0))));
    return maps;
}

void rqc_push_suite(SuiteResult& r, Rng& rng, int count) {
    Tally t{r};
    const auto maps = push_maps();
    for (int i = 0; i < count; ++i) {
        const auto& [name, f] = maps[static_cast<std::size_t>(i) % maps.size()];
        t.check(is_schematic_morphism(f), name + ": not schematic");
        SheafComplex M = random_complex(f.source, rng, true);
        CheckReport c = rqc_check(f, M);
        t.check(c.pass, instance(name, i) + ": R_qc f_* and R f_* differ" +
                            (c.failing_degree ? " in degree " + std::to_string(*c.failing_degree) : ""));
    }
    r.summary = std::to_string(count) + " complexes along " + std::to_string(maps.size()) + " schematic morphisms";
}

void duality_suite(SuiteResult& r, Rng& rng, int count, std::optional<int> depth) {
    Tally t{r};
    SpacePtr W = fix_wedge();
    std::vector<std::pair<std::string, RingedMap>> maps = {
        {"id FIX-WEDGE", RingedMap::identity(W)},
        {"FIX-WEDGE -> point", to_point(W)},
        {"FIX-PC -> point", to_point(fix_pc())},
        {"U_a -> FIX-WEDGE", RingedMap::inclusion(open_subspace(W, W->poset.up_set(0)))},
    };
    for (const auto& [name, f] : maps)
        for (int i = 0; i < count; ++i) {
            SheafComplex M = SheafComplex::single(random_sheaf(f.source, rng));
            SheafComplex N = SheafComplex::single(random_sheaf(f.target, rng));
            DualityReport d = duality_check(f, M, N, -2, 2, depth);
            bool bij = std::all_of(d.bijective.begin(), d.bijective.end(), [](bool b) { return b; });
            t.check(d.pass && d.complex_iso && bij && d.lhs == d.rhs, instance(name, i) + ": " + d.message);
        }
    r.summary = std::to_string(count) + " pairs for each of " + std::to_string(maps.size()) + " morphisms, window [-2, 2]";
}

void dqc_suite(SuiteResult& r, Rng& rng, int count) {
    Tally t{r};
    SpacePtr X = fix_pc();
    SheafComplex N = random_complex(X, rng, false);
    Coherator c;
    try {
        c = dqc_coherator(N);
    } catch (const SheafError& e) {
        t.fail(e.what());
        r.summary = "FIX-PC is rejected as not schematic";
        return;
    }
    t.check(in_Dqc(c.cx), "N_qc is not in D_qc");
    for (int i = 0; i < count; ++i) {
        SheafComplex M = SheafComplex::single(random_qcoh(X, rng));
        DerivedHom a = hom_derived(M, c.cx, -1, 1), b = hom_derived(M, N, -1, 1);
        for (std::size_t k = 0; k < a.groups.size(); ++k)
            t.check(a.groups[k].order() == b.groups[k].order(), "Hom counts differ, instance " + std::to_string(i));
    }
    r.summary = std::to_string(count) + " quasi-coherent test modules";
}

void enough_flats(SuiteResult& r, Rng& rng, int count) {
    Tally t{r};
    int truncated = 0;
    for (int i = 0; i < count; ++i) {
        const std::string& name = semi_separated[static_cast<std::size_t>(i) % semi_separated.size()];
        SheafPtr M = random_qcoh(fixture(name), rng);
        FlatResolution f = flat_qcoh_res(M);
        for (const auto& T : f.res.complex().terms) {
            t.check(is_quasicoherent(*T), instance(name, i) + ": term not quasi-coherent");
            for (const auto& s : T->stalk) t.check(is_flat(s), instance(name, i) + ": stalk not flat");
        }
        if (auto d = f.res.failure()) t.fail(instance(name, i) + ": augmentation fails in degree " + std::to_string(*d));
        truncated += !f.finite;
    }
    r.summary = std::to_string(count) + " modules, " + std::to_string(truncated) + " with a truncated flat resolution";
}

// every module on each abelian group of order <= 16 over Z/n; over F2[t]/(t^2), every t with t^2 = 0
std::vector<FiniteModule> small_modules(const RingPtr& R) {
    std::vector<FiniteModule> out;
    if (R->rank() == 1) {
        const i64 n = R->add.orders[0];
        std::vector<i64> divs;
        for (i64 d = 2; d <= n; ++d)
            if (n % d == 0) divs.push_back(d);
        std::vector<Vec> groups{{}};
        for (std::size_t at = 0; at < groups.size(); ++at) {
            const Vec g = groups[at];
            i64 size = 1;
            for (i64 o : g) size *= o;
            for (i64 d : divs)
                if (size * d <= 16 && (g.empty() || d >= g.back())) groups.push_back([&] { Vec h = g; h.push_back(d); return h; }());
        }
        for (const auto& g : groups) {
            FiniteModule M{R, AbGroup{g}, {Mat::identity(g.size())}};
            out.push_back(M);
        }
        return out;
    }
    for (std::size_t k = 0; k <= 4; ++k) {
        const std::size_t cells = k * k;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
            Mat T(k, k);
            for (std::size_t c = 0; c < cells; ++c) T(c / k, c % k) = static_cast<i64>(bits >> c & 1);
            bool square_zero = true;
            for (std::size_t a = 0; a < k && square_zero; ++a)
                for (std::size_t b = 0; b < k && square_zero; ++b) {
                    i64 s = 0;
                    for (std::size_t m = 0; m < k; ++m) s += T(a, m) * T(m, b);
                    square_zero = s % 2 == 0;
                }
            if (!square_zero) continue;
            out.push_back(FiniteModule{R, AbGroup{Vec(k, 2)}, {Mat::identity(k), T}});
        }
    }
    return out;
}

void flatness_oracle(SuiteResult& r, Rng&, int) {
    Tally t{r};
    FiniteRing dual;
    dual.name = "F2[t]/(t^2)";
    dual.add = AbGroup{{2, 2}};
    dual.table = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    dual.one = {1, 0};
    dual.validate();
    std::vector<RingPtr> rings = {make_ring(FiniteRing::integers_mod(4)), make_ring(FiniteRing::integers_mod(6)), make_ring(dual)};
    std::ostringstream s;
    for (const auto& R : rings) {
        int n = 0, flat = 0;
        for (const auto& M : small_modules(R)) {
            M.validate();
            const bool a = is_flat(M), b = flat_by_enumeration(M);
            std::ostringstream w;
            w << (R->name.empty() ? "ring" : R->name) << ": module with orders";
            for (i64 o : M.group.orders) w << " " << o;
            t.check(a == b, w.str() + (a ? " flat" : " not flat") + " but the enumeration disagrees");
            ++n;
            flat += b;
        }
        s << (s.tellp() ? ", " : "") << n << " modules over " << (R->name.empty() ? "Z/" + std::to_string(R->add.orders[0]) : R->name) << " ("
          << flat << " flat)";
    }
    r.summary = s.str();
}

bool same_poset_up_to_iso(const Poset& A, const Poset& B) {
    if (A.size() != B.size()) return false;
    std::vector<std::size_t> perm(A.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t p = 0; p < A.size() && ok; ++p)
            for (std::size_t q = 0; q < A.size() && ok; ++q) ok = A.leq(p, q) == B.leq(perm[p], perm[q]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

void model_builder(SuiteResult& r, Rng&, int) {
    Tally t{r};
    S2Source src = s2_source();
    CoveringModel m = covering_model(src.faces, src.covering);
    // two minimal points below two middle points below two maximal points, all cross relations
    Poset expected = Poset::from_names({"a0", "a1", "b0", "b1", "c0", "c1"},
                                       {{"a0", "b0"}, {"a0", "b1"}, {"a1", "b0"}, {"a1", "b1"}, {"b0", "c0"}, {"b0", "c1"}, {"b1", "c0"}, {"b1", "c1"}});
    t.check(same_poset_up_to_iso(m.space, expected), "covering model of the octahedron is not the six-point sphere");
    std::vector<bool> hit(m.space.size(), false);
    for (std::size_t s = 0; s < src.faces.size(); ++s) {
        OpenSet U = src.faces.whole();
        for (const auto& c : src.covering)
            if (c[s]) U = intersect(U, c);
        hit[m.quotient[s]] = true;
        t.check(m.neighborhoods[m.quotient[s]] == U, "face " + src.faces.name(s) + " lands on the wrong class");
        for (std::size_t s2 = 0; s2 < src.faces.size(); ++s2)
            if (src.faces.leq(s, s2)) t.check(m.space.leq(m.quotient[s], m.quotient[s2]), "quotient map is not continuous");
    }
    t.check(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }), "quotient map is not surjective");
    SpacePtr S = constant(m.space, 2);
    std::vector<AbGroup> hs = gamma_derived(SheafComplex::single(structure_sheaf(S)), 0, 2);
    t.check(hs[0].order() == 2 && hs[1].order() == 1 && hs[2].order() == 2, "model does not have the cohomology of the sphere");

    // face poset of the order complex of the pseudo-circle
    SpacePtr PC = fix_pc();
    Poset sd = face_poset(order_complex(PC->poset));
    SpacePtr SD = constant(sd, 2);
    std::vector<AbGroup> a = gamma_derived(SheafComplex::single(structure_sheaf(PC)), 0, 2);
    std::vector<AbGroup> b = gamma_derived(SheafComplex::single(structure_sheaf(SD)), 0, 2);
    for (std::size_t n = 0; n < a.size(); ++n)
        t.check(a[n] == b[n], "round trip changes H^" + std::to_string(n));
    r.summary = "sphere model with " + std::to_string(m.space.size()) + " points from " + std::to_string(src.faces.size()) +
                " faces; pseudo-circle subdivision has " + std::to_string(sd.size()) + " points";
}

// ---------------------------------------------------------------------------
// Oracles

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> A) {
    const std::size_t m = A.size(), n = m ? A[0].size() : 0;
    std::vector<BigInt> diag;
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        std::size_t pi = m, pj = n;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (A[i][j] != 0 && (pi == m || abs(A[i][j]) < abs(A[pi][pj]))) pi = i, pj = j;
        if (pi == m) break;
        std::swap(A[k], A[pi]);
        for (auto& row : A) std::swap(row[k], row[pj]);
        for (bool clean = false; !clean;) {
            clean = true;
            for (std::size_t i = k + 1; i < m; ++i) {
                if (A[i][k] == 0) continue;
                BigInt q = A[i][k] / A[k][k];
                for (std::size_t j = k; j < n; ++j) A[i][j] -= q * A[k][j];
                if (A[i][k] != 0) {
                    std::swap(A[k], A[i]);
                    clean = false;
                }
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (A[k][j] == 0) continue;
                BigInt q = A[k][j] / A[k][k];
                for (std::size_t i = k; i < m; ++i) A[i][j] -= q * A[i][k];
                if (A[k][j] != 0) {
                    for (auto& row : A) std::swap(row[k], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // the pivot must divide the rest
            for (std::size_t i = k + 1; i < m && clean; ++i)
                for (std::size_t j = k + 1; j < n && clean; ++j)
                    if (A[i][j] % A[k][k] != 0) {
                        for (std::size_t c = k; c < n; ++c) A[k][c] += A[i][c];
                        clean = false;
                    }
        }
        diag.push_back(abs(A[k][k]));
    }
    return diag;
}

}  // namespace

AbHom transport(const AbGroup& A, const AbGroup& B, const std::function<Vec(const Vec&)>& f) {
    return hom_from_images(A, B, [&](std::size_t j) { return f(unit(A, j)); });
}

std::optional<std::size_t> injectivity_failure(const SheafPtr& I) {
    const SpacePtr& X = I->space;
    const Poset& P = X->poset;
    for (std::size_t x = 0; x < X->size(); ++x) {
        const SheafPtr G = ext_by_zero(X, P.up_set(x));
        SheafHomGroup HG = hom_group(G, I);
        std::vector<std::size_t> pts;
        for (std::size_t y = 0; y < X->size(); ++y)
            if (P.leq(x, y)) pts.push_back(y);
        std::vector<std::vector<Vec>> elems;
        std::vector<SheafPtr> parts;
        for (std::size_t y : pts) {
            elems.push_back(X->rings[y]->elements());
            parts.push_back(ext_by_zero(X, P.up_set(y)));
        }
        SheafSum S = direct_sum(X, parts);
        std::vector<std::size_t> pick(pts.size(), 0);
        while (true) {
            SheafMorphism f = SheafMorphism::zero(S.sheaf, G);
            for (std::size_t k = 0; k < pts.size(); ++k)
                f = add(f, compose(multiply_into(parts[k], pts[k], G, elems[k][pick[k]]), S.proj[k]));
            SheafMorphism incl = image(f);
            SheafHomGroup HA = hom_group(incl.src, I);
            AbHom res = transport(HG.sub.group, HA.sub.group, [&](const Vec& v) { return HA.from_morphism(compose(HG.to_morphism(v), incl)); });
            if (!is_surjective(res)) return x;
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == elems[k].size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> simplicial_cohomology_f2(const std::vector<std::vector<int>>& maximal_simplices) {
    std::set<std::vector<int>> all;
    for (auto s : maximal_simplices) {
        std::sort(s.begin(), s.end());
        for (std::size_t mask = 1; mask < (std::size_t{1} << s.size()); ++mask) {
            std::vector<int> f;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask >> i & 1) f.push_back(s[i]);
            all.insert(f);
        }
    }
    std::vector<std::vector<std::vector<int>>> by_dim;
    for (const auto& f : all) {
        if (by_dim.size() < f.size()) by_dim.resize(f.size());
        by_dim[f.size() - 1].push_back(f);
    }
    // rank over F2 of the coboundary C^n -> C^{n+1}: odd Smith invariants of the integer matrix
    std::vector<std::size_t> rank(by_dim.size() + 1, 0);
    for (std::size_t n = 0; n + 1 < by_dim.size(); ++n) {
        std::map<std::vector<int>, std::size_t> col;
        for (std::size_t j = 0; j < by_dim[n].size(); ++j) col[by_dim[n][j]] = j;
        std::vector<std::vector<BigInt>> A(by_dim[n + 1].size(), std::vector<BigInt>(by_dim[n].size(), 0));
        for (std::size_t i = 0; i < by_dim[n + 1].size(); ++i)
            for (std::size_t k = 0; k < by_dim[n + 1][i].size(); ++k) {
                std::vector<int> f = by_dim[n + 1][i];
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
                A[i][col.at(f)] = k % 2 ? -1 : 1;
            }
        for (const auto& d : smith_diagonal(A)) rank[n + 1] += d % 2 != 0;
    }
    std::vector<std::size_t> h;
    for (std::size_t n = 0; n < by_dim.size(); ++n) h.push_back(by_dim[n].size() - rank[n + 1] - rank[n]);
    return h;
}

bool flat_by_enumeration(const FiniteModule& M) {
    const FiniteRing& R = *M.ring;
    auto enumerate = [](const Vec& orders) {
        std::vector<Vec> out{Vec(orders.size(), 0)};
        for (std::size_t i = 0; i < orders.size(); ++i) {
            std::vector<Vec> next;
            for (const auto& v : out)
                for (i64 c = 0; c < orders[i]; ++c) {
                    Vec w = v;
                    w[i] = c;
                    next.push_back(w);
                }
            out = next;
        }
        return out;
    };
    const std::vector<Vec> ring = enumerate(R.add.orders), mod = enumerate(M.group.orders);
    auto mul = [&](const Vec& a, const Vec& b) {
        Vec c(R.rank(), 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                for (std::size_t k = 0; k < c.size(); ++k) c[k] += a[i] * b[j] * R.table[i][j][k];
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = ((c[k] % R.add.orders[k]) + R.add.orders[k]) % R.add.orders[k];
        return c;
    };
    auto act = [&](const Vec& a, const Vec& m) {
        Vec out(m.size(), 0);
        for (std::size_t k = 0; k < a.size(); ++k)
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.size(); ++j) out[i] += a[k] * M.act[k](i, j) * m[j];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = ((out[i] % M.group.orders[i]) + M.group.orders[i]) % M.group.orders[i];
        return out;
    };
    auto is_zero = [](const Vec& v) { return std::all_of(v.begin(), v.end(), [](i64 c) { return c == 0; }); };
    auto plus = [](const Vec& a, const Vec& b, const Vec& orders) {
        Vec c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % orders[i];
        return c;
    };

    // every two-generated ideal is principal, so every ideal is
    auto principal = [&](const Vec& a) {
        std::set<Vec> I;
        for (const auto& r : ring) I.insert(mul(r, a));
        return I;
    };
    std::set<std::set<Vec>> principals;
    for (const auto& a : ring) principals.insert(principal(a));
    for (const auto& a : ring)
        for (const auto& b : ring) {
            std::set<Vec> I;
            for (const auto& r : ring)
                for (const auto& s : ring) I.insert(plus(mul(r, a), mul(s, b), R.add.orders));
            if (!principals.count(I)) throw std::invalid_argument("flat_by_enumeration: ring has a non-principal ideal");
        }

    // (a) (x) M = M / ann(a) M maps to M by m -> a m; it is injective iff ker(a) = ann(a) M
    for (const auto& a : ring) {
        std::set<Vec> ker, span{Vec(M.rank(), 0)};
        for (const auto& m : mod)
            if (is_zero(act(a, m))) ker.insert(m);
        std::vector<Vec> gens;
        for (const auto& b : ring)
            if (is_zero(mul(b, a)))
                for (const auto& m : mod) gens.push_back(act(b, m));
        std::vector<Vec> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<Vec> next;
            for (const auto& v : frontier)
                for (const auto& g : gens) {
                    Vec w = plus(v, g, M.group.orders);
                    if (span.insert(w).second) next.push_back(w);
                }
            frontier = std::move(next);
        }
        if (ker != span) return false;
    }
    return true;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"resolutions",     "cohomology-oracle", "standard-terms", "bokstedt-neeman",
                                                   "rqc-push",        "duality",           "dqc-coherator",  "enough-flats",
                                                   "flatness-oracle", "model-builder"};
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count, std::optional<int> depth) {
    SuiteResult r;
    r.name = name;
    const auto& names = suite_names();
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("unknown suite " + name);
    Rng rng(seed * 1000003 + static_cast<std::uint64_t>(it - names.begin()));
    auto n = [&](int def) { return count > 0 ? count : def; };
    if (name == "resolutions") resolutions(r, rng, n(100));
    if (name == "cohomology-oracle") cohomology_oracle(r, rng, 0);
    if (name == "standard-terms") standard_terms(r, rng, n(50));
    if (name == "bokstedt-neeman") bokstedt_neeman(r, rng, n(50));
    if (name == "rqc-push") rqc_push_suite(r, rng, n(25));
    if (name == "duality") duality_suite(r, rng, n(10), depth);
    if (name == "dqc-coherator") dqc_suite(r, rng, n(10));
    if (name == "enough-flats") enough_flats(r, rng, n(25));
    if (name == "flatness-oracle") flatness_oracle(r, rng, 0);
    if (name == "model-builder") model_builder(r, rng, 0);
    return r;
}

}  // namespace finsheaf
