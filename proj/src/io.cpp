#include "finsheaf/io.hpp"

#include <algorithm>
#include <set>

#include "finsheaf/fixtures.hpp"

namespace finsheaf {

namespace {

const std::set<std::string> task_kinds = {"classify", "cohomology",     "push",          "qc",        "rqc-push", "bn-check",
                                          "shriek",   "duality-check", "dqc-coherator", "flat-res",  "model",    "verify-suite"};

struct Ctx {
    const ParseOptions& opt;
    Workspace W;
};

Json mat_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols; ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

Mat mat_from(const Json& j, std::size_t rows, std::size_t cols, const std::string& path) {
    if (!j.is_array() || j.size() != rows) throw InputError(path, "expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InputError(path, "row " + std::to_string(i) + " should have " + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_number_integer()) throw InputError(path, "matrix entries must be integers");
            m(i, k) = j[i][k].get<i64>();
        }
    }
    return m;
}

Vec vec_from(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected a list of integers");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InputError(path, "expected integers");
        v.push_back(x.get<i64>());
    }
    return v;
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw InputError(path, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string str(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InputError(path, "expected a name");
    return j.get<std::string>();
}

bool ring_equal(const FiniteRing& a, const FiniteRing& b) {
    return a.add == b.add && a.table == b.table && a.one == b.one;
}

RingPtr ring_from(const Ctx& c, const Json& j, const std::string& path) {
    if (j.is_string()) {
        if (const RingPtr* r = c.W.rings.find(j.get<std::string>())) return *r;
        throw InputError(path, "unknown ring " + j.get<std::string>());
    }
    FiniteRing R;
    try {
        if (j.contains("mod")) {
            R = FiniteRing::integers_mod(j.at("mod").get<i64>());
        } else if (j.contains("poly")) {
            const Json& p = j.at("poly");
            R = FiniteRing::truncated_poly(field(p, "p", path).get<i64>(), field(p, "k", path).get<std::size_t>());
        } else {
            R.add = AbGroup{vec_from(field(j, "orders", path), path + ".orders")};
            const Json& pr = field(j, "products", path);
            const std::size_t n = R.add.rank();
            if (!pr.is_array() || pr.size() != n) throw InputError(path + ".products", "expected one row per generator");
            for (std::size_t a = 0; a < n; ++a) {
                std::vector<Vec> row;
                if (!pr[a].is_array() || pr[a].size() != n) throw InputError(path + ".products", "expected a square table");
                for (std::size_t b = 0; b < n; ++b) row.push_back(vec_from(pr[a][b], path + ".products"));
                R.table.push_back(row);
            }
            R.one = vec_from(field(j, "one", path), path + ".one");
            R.name = j.value("name", "");
        }
        R.validate();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
    if (R.size() > c.opt.max_ring_size)
        throw InputError(path, "ring has " + to_string(R.size()) + " elements, above the cap " + std::to_string(c.opt.max_ring_size));
    return make_ring(std::move(R));
}

Json ring_json(const FiniteRing& R) {
    Json j;
    j["orders"] = R.add.orders;
    Json pr = Json::array();
    for (const auto& row : R.table) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(v);
        pr.push_back(r);
    }
    j["products"] = pr;
    j["one"] = R.one;
    return j;
}

Vec element_from(const FiniteRing& R, const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
        Vec v = R.one;
        const i64 k = j.get<i64>();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const i64 o = R.add.orders[i];
            v[i] = ((v[i] * (k % o)) % o + o) % o;
        }
        return v;
    }
    Vec v = vec_from(j, path);
    if (v.size() != R.rank()) throw InputError(path, "ring element has the wrong length");
    return v;
}

FiniteModule module_from(const RingPtr& R, const Json& j, const std::string& path) {
    try {
        if (j.contains("zero")) return FiniteModule::zero(R);
        if (j.contains("free")) return FiniteModule::free(R, j.at("free").get<std::size_t>());
        if (j.contains("presentation")) {
            const Json& p = j.at("presentation");
            const auto g = field(p, "generators", path).get<std::size_t>();
            std::vector<std::vector<Vec>> rels;
            for (const auto& rel : p.value("relations", Json::array())) {
                if (!rel.is_array() || rel.size() != g) throw InputError(path, "each relation needs one entry per generator");
                std::vector<Vec> r;
                for (const auto& e : rel) r.push_back(element_from(*R, e, path + ".relations"));
                rels.push_back(r);
            }
            return from_presentation(R, g, rels);
        }
        FiniteModule M{R, AbGroup{vec_from(field(j, "orders", path), path + ".orders")}, {}};
        const Json& act = field(j, "act", path);
        if (!act.is_array() || act.size() != R->rank()) throw InputError(path + ".act", "expected one matrix per ring generator");
        for (const auto& a : act) M.act.push_back(mat_from(a, M.rank(), M.rank(), path + ".act"));
        M.validate();
        return M;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
}

std::size_t point(const Poset& P, const Json& j, const std::string& path) {
    const std::string s = str(j, path);
    for (std::size_t i = 0; i < P.size(); ++i)
        if (P.name(i) == s) return i;
    throw InputError(path, "unknown point " + s);
}

OpenSet open_from(const Poset& P, const Json& j, const std::string& path) {
    OpenSet u = P.empty();
    if (!j.is_array()) throw InputError(path, "expected a list of points");
    for (const auto& x : j) u[point(P, x, path)] = true;
    if (!P.is_open(u)) throw InputError(path, "set is not open");
    return u;
}

SpacePtr space_ref(const Ctx& c, const Json& j, const std::string& path) {
    const std::string s = str(j, path);
    if (const SpacePtr* X = c.W.spaces.find(s)) return *X;
    throw InputError(path, "unknown space " + s);
}

SpacePtr space_from(const Ctx& c, const Json& j, const std::string& path) {
    if (j.contains("fixture")) {
        try {
            return fixture(j.at("fixture").get<std::string>());
        } catch (const std::exception& e) {
            throw InputError(path, e.what());
        }
    }
    std::vector<std::string> names;
    for (const auto& p : field(j, "points", path)) names.push_back(str(p, path + ".points"));
    std::vector<std::pair<std::string, std::string>> rel;
    for (const auto& r : j.value("relations", Json::array())) {
        if (!r.is_array() || r.size() != 2) throw InputError(path + ".relations", "expected pairs of points");
        rel.emplace_back(str(r[0], path + ".relations"), str(r[1], path + ".relations"));
    }
    Poset P;
    try {
        P = Poset::from_names(names, rel);
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
    std::vector<RingPtr> rings;
    if (j.contains("ring")) {
        RingPtr R = ring_from(c, j.at("ring"), path + ".ring");
        rings.assign(P.size(), R);
    } else {
        const Json& rs = field(j, "rings", path);
        for (std::size_t p = 0; p < P.size(); ++p) {
            if (!rs.contains(P.name(p))) throw InputError(path + ".rings", "no ring for point " + P.name(p));
            rings.push_back(ring_from(c, rs.at(P.name(p)), path + ".rings." + P.name(p)));
        }
    }
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, RingHom>> edges;
    const Json maps = j.value("maps", Json::array());
    for (const auto& [p, q] : P.hasse_edges()) {
        std::optional<RingHom> h;
        for (const auto& m : maps) {
            if (point(P, field(m, "from", path + ".maps"), path + ".maps") != p ||
                point(P, field(m, "to", path + ".maps"), path + ".maps") != q)
                continue;
            h = RingHom{rings[p], rings[q], mat_from(field(m, "images", path + ".maps"), rings[q]->rank(), rings[p]->rank(), path + ".maps")};
        }
        if (!h) {
            try {
                h = rings[p] == rings[q] ? RingHom::identity(rings[p]) : from_integers(rings[p], rings[q]);
            } catch (const std::exception& e) {
                throw InputError(path + ".maps", "no map given for " + P.name(p) + " <= " + P.name(q) + ": " + e.what());
            }
        }
        edges.push_back({{p, q}, *h});
    }
    for (const auto& m : maps) {
        const std::size_t p = point(P, field(m, "from", path + ".maps"), path + ".maps");
        const std::size_t q = point(P, field(m, "to", path + ".maps"), path + ".maps");
        if (!P.covers(p, q)) throw InputError(path + ".maps", "maps are given on covering pairs only");
    }
    try {
        return std::make_shared<const RingedSpace>(RingedSpace::from_hasse(std::move(P), std::move(rings), edges));
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
}

SheafPtr sheaf_from(const Ctx& c, const Json& j, const std::string& path);

SheafPtr sheaf_ref(const Ctx& c, const Json& j, const std::string& path) {
    if (j.is_object()) return sheaf_from(c, j, path);
    const std::string s = str(j, path);
    if (const SheafPtr* M = c.W.sheaves.find(s)) return *M;
    throw InputError(path, "unknown sheaf " + s);
}

SheafPtr sheaf_from(const Ctx& c, const Json& j, const std::string& path) {
    SpacePtr X = space_ref(c, field(j, "space", path), path + ".space");
    const Poset& P = X->poset;
    const std::size_t n = X->size();
    try {
        if (j.contains("structure")) return structure_sheaf(X);
        if (j.contains("zero")) return zero_sheaf(X);
        if (j.contains("ext_by_zero")) return ext_by_zero(X, open_from(P, j.at("ext_by_zero"), path + ".ext_by_zero"));
        for (const char* kind : {"skyscraper", "tilde", "co_skyscraper"}) {
            if (!j.contains(kind)) continue;
            const Json& k = j.at(kind);
            const std::string kp = path + "." + kind;
            const std::size_t x = point(P, field(k, "point", kp), kp + ".point");
            FiniteModule A = module_from(X->rings[x], field(k, "module", kp), kp + ".module");
            if (std::string(kind) == "skyscraper") return skyscraper(X, x, A);
            if (std::string(kind) == "tilde") return pushed_tilde(X, x, A);
            return co_skyscraper(X, x, A);
        }
        SheafModule M{X, {}, std::vector<AbHom>(n * n)};
        const Json& st = field(j, "stalks", path);
        for (std::size_t p = 0; p < n; ++p) {
            if (!st.contains(P.name(p))) {
                M.stalk.push_back(FiniteModule::zero(X->rings[p]));
                continue;
            }
            M.stalk.push_back(module_from(X->rings[p], st.at(P.name(p)), path + ".stalks." + P.name(p)));
        }
        std::vector<char> given(n * n, 0);
        for (const auto& r : j.value("restrictions", Json::array())) {
            const std::string rp = path + ".restrictions";
            const std::size_t p = point(P, field(r, "from", rp), rp), q = point(P, field(r, "to", rp), rp);
            if (!P.lt(p, q)) throw InputError(rp, P.name(p) + " is not below " + P.name(q));
            M.r(p, q) = {M.stalk[p].group, M.stalk[q].group,
                         mat_from(field(r, "matrix", rp), M.stalk[q].rank(), M.stalk[p].rank(), rp + "." + P.name(p) + "." + P.name(q))};
            given[p * n + q] = 1;
        }
        // identities, then composites along covering pairs by increasing distance
        for (std::size_t p = 0; p < n; ++p) {
            M.r(p, p) = AbHom::identity(M.stalk[p].group);
            given[p * n + p] = 1;
        }
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    if (given[p * n + q] || !P.lt(p, q)) continue;
                    for (std::size_t m = 0; m < n; ++m) {
                        if (!P.covers(p, m) || !P.leq(m, q) || !given[m * n + q]) continue;
                        if (!given[p * n + m]) {
                            M.r(p, m) = AbHom::zero(M.stalk[p].group, M.stalk[m].group);
                            given[p * n + m] = 1;
                        }
                        M.r(p, q) = compose(M.r(m, q), M.r(p, m));
                        given[p * n + q] = 1;
                        changed = true;
                        break;
                    }
                }
        }
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
                if (P.lt(p, q) && !given[p * n + q]) M.r(p, q) = AbHom::zero(M.stalk[p].group, M.stalk[q].group);
        M.validate();
        return share(std::move(M));
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
}

SheafMorphism morphism_from(const SheafPtr& a, const SheafPtr& b, const Json& j, const std::string& path) {
    const Poset& P = a->space->poset;
    SheafMorphism f = SheafMorphism::zero(a, b);
    if (!j.is_object()) throw InputError(path, "expected matrices by point");
    for (const auto& [name, m] : j.items()) {
        const std::size_t p = point(P, Json(name), path);
        f.comp[p] = {a->stalk[p].group, b->stalk[p].group, mat_from(m, b->stalk[p].rank(), a->stalk[p].rank(), path + "." + name)};
    }
    if (!f.is_valid()) throw InputError(path, "not a morphism of sheaves");
    return f;
}

SheafComplex complex_from(const Ctx& c, const Json& j, const std::string& path) {
    if (j.contains("single")) {
        SheafPtr M = sheaf_ref(c, j.at("single"), path + ".single");
        return SheafComplex::single(M, j.value("degree", 0));
    }
    SpacePtr X = space_ref(c, field(j, "space", path), path + ".space");
    SheafComplex C{X, j.value("lo", 0), {}, {}};
    const Json& terms = field(j, "terms", path);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        SheafPtr T = sheaf_ref(c, terms[i], path + ".terms[" + std::to_string(i) + "]");
        if (T->space != X && !(T->space->poset == X->poset)) throw InputError(path + ".terms", "term on another space");
        C.terms.push_back(T);
    }
    const Json d = j.value("d", Json::array());
    if (!C.terms.empty() && d.size() + 1 != C.terms.size()) throw InputError(path + ".d", "expected one differential between consecutive terms");
    for (std::size_t i = 0; i < d.size(); ++i)
        C.d.push_back(morphism_from(C.terms[i], C.terms[i + 1], d[i], path + ".d[" + std::to_string(i) + "]"));
    try {
        C.validate();
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
    return C;
}

RingedMap map_from(Ctx& c, const std::string& name, const Json& j, const std::string& path) {
    try {
        if (j.contains("identity")) return RingedMap::identity(space_ref(c, j.at("identity"), path + ".identity"));
        if (j.contains("inclusion")) {
            const Json& k = j.at("inclusion");
            SpacePtr X = space_ref(c, field(k, "space", path), path + ".inclusion.space");
            OpenSubspace U = open_subspace(X, open_from(X->poset, field(k, "open", path), path + ".inclusion.open"));
            c.W.spaces.add(k.value("as", name + ".source"), U.space);
            return RingedMap::inclusion(U);
        }
        SpacePtr X = space_ref(c, field(j, "source", path), path + ".source");
        SpacePtr Y = space_ref(c, field(j, "target", path), path + ".target");
        if (j.value("to_point", false)) {
            if (Y->size() != 1) throw InputError(path, "target is not a point");
            std::vector<RingHom> comp;
            for (std::size_t x = 0; x < X->size(); ++x)
                comp.push_back(ring_equal(*Y->rings[0], *X->rings[x]) ? RingHom{Y->rings[0], X->rings[x], Mat::identity(X->rings[x]->rank())}
                                                                       : from_integers(Y->rings[0], X->rings[x]));
            return RingedMap::to_point(X, Y, comp);
        }
        RingedMap f{X, Y, {}, {}};
        const Json& as = field(j, "assign", path);
        const Json& comp = field(j, "comp", path);
        for (std::size_t x = 0; x < X->size(); ++x) {
            const std::string& xn = X->poset.name(x);
            if (!as.contains(xn)) throw InputError(path + ".assign", "no image for " + xn);
            const std::size_t y = point(Y->poset, as.at(xn), path + ".assign." + xn);
            f.assign.push_back(y);
            if (!comp.contains(xn)) throw InputError(path + ".comp", "no ring map at " + xn);
            f.comp.push_back({Y->rings[y], X->rings[x], mat_from(comp.at(xn), X->rings[x]->rank(), Y->rings[y]->rank(), path + ".comp." + xn)});
        }
        f.validate();
        return f;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(path, e.what());
    }
}

void check_refs(const Workspace& W, const Task& t, const std::string& path) {
    auto need = [&](const char* key, auto pred) {
        if (!t.params.contains(key)) return;
        const Json& v = t.params.at(key);
        if (!v.is_string() || !pred(v.get<std::string>())) throw InputError(path + "." + key, "dangling reference");
    };
    need("space", [&](const std::string& s) { return W.spaces.find(s) != nullptr; });
    need("map", [&](const std::string& s) { return W.maps.find(s) != nullptr; });
    need("sheaf", [&](const std::string& s) { return W.sheaves.find(s) != nullptr; });
    auto object = [&](const std::string& s) { return W.sheaves.find(s) || W.complexes.find(s); };
    need("complex", [&](const std::string& s) { return W.complexes.find(s) != nullptr; });
    need("M", object);
    need("N", object);
}

}  // namespace

Workspace parse_workspace(const Json& doc, const ParseOptions& opt) {
    Ctx c{opt, {}};
    if (doc.is_null()) return c.W;
    if (!doc.is_object()) throw InputError("$", "document must be an object");
    for (const auto& [k, v] : doc.items())
        if (k != "rings" && k != "spaces" && k != "sheaves" && k != "complexes" && k != "maps" && k != "tasks")
            throw InputError("$." + k, "unknown section");
    auto section = [&](const char* key) { return doc.contains(key) ? doc.at(key) : Json::object(); };
    {
        const Json sec = section("rings");
        for (const auto& [name, v] : sec.items()) c.W.rings.add(name, ring_from(c, v, "rings." + name));
    }
    {
        const Json sec = section("spaces");
        for (const auto& [name, v] : sec.items()) c.W.spaces.add(name, space_from(c, v, "spaces." + name));
    }
    // maps before sheaves so that inclusion sources can carry sheaves
    {
        const Json sec = section("maps");
        for (const auto& [name, v] : sec.items()) c.W.maps.add(name, map_from(c, name, v, "maps." + name));
    }
    {
        const Json sec = section("sheaves");
        for (const auto& [name, v] : sec.items()) c.W.sheaves.add(name, sheaf_from(c, v, "sheaves." + name));
    }
    {
        const Json sec = section("complexes");
        for (const auto& [name, v] : sec.items()) c.W.complexes.add(name, complex_from(c, v, "complexes." + name));
    }
    const Json tasks = doc.contains("tasks") ? doc.at("tasks") : Json::array();
    if (!tasks.is_array()) throw InputError("tasks", "expected a list");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const std::string path = "tasks[" + std::to_string(i) + "]";
        const Json& t = tasks[i];
        const std::string kind = str(field(t, "task", path), path + ".task");
        if (!task_kinds.count(kind)) throw InputError(path + ".task", "unknown task " + kind);
        Task task{t.value("name", kind + "#" + std::to_string(i)), kind, t};
        task.params.erase("task");
        task.params.erase("name");
        check_refs(c.W, task, path);
        c.W.tasks.push_back(std::move(task));
    }
    return c.W;
}

Workspace parse_workspace_text(const std::string& text, const ParseOptions& opt) {
    Json doc;
    try {
        doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? Json() : Json::parse(text, nullptr, true, true);
    } catch (const Json::parse_error& e) {
        throw InputError("$", std::string("syntax error: ") + e.what());
    }
    return parse_workspace(doc, opt);
}

Json to_json(const AbGroup& G) { return G.orders; }

Json to_json(const FiniteModule& M) {
    Json j;
    j["orders"] = M.group.orders;
    Json act = Json::array();
    for (const auto& a : M.act) act.push_back(mat_json(a));
    j["act"] = act;
    return j;
}

Json to_json(const SheafModule& M) {
    const Poset& P = M.space->poset;
    Json j;
    Json st = Json::object();
    for (std::size_t p = 0; p < M.size(); ++p)
        if (!M.stalk[p].is_zero()) st[P.name(p)] = to_json(M.stalk[p]);
    j["stalks"] = st;
    Json rs = Json::array();
    for (const auto& [p, q] : P.hasse_edges()) {
        if (M.stalk[p].is_zero() || M.stalk[q].is_zero()) continue;
        rs.push_back({{"from", P.name(p)}, {"to", P.name(q)}, {"matrix", mat_json(M.r(p, q).m)}});
    }
    j["restrictions"] = rs;
    return j;
}

Json serialize(const Workspace& W) {
    std::vector<std::pair<std::string, RingPtr>> rings;
    auto ring_name = [&](const RingPtr& R) {
        for (const auto& [k, v] : rings)
            if (v == R || ring_equal(*v, *R)) return k;
        std::string k = "ring" + std::to_string(rings.size());
        rings.emplace_back(k, R);
        return k;
    };
    for (const auto& [k, v] : W.rings.items) {
        bool dup = false;
        for (const auto& r : rings) dup = dup || r.first == k;
        if (!dup) rings.emplace_back(k, v);
    }
    auto space_name = [&](const SpacePtr& X) {
        for (const auto& [k, v] : W.spaces.items)
            if (v == X) return k;
        for (const auto& [k, v] : W.spaces.items)
            if (v->poset == X->poset) return k;
        throw InputError("serialize", "object on an undeclared space");
    };

    Json spaces = Json::object();
    for (const auto& [name, X] : W.spaces.items) {
        const Poset& P = X->poset;
        Json s;
        s["points"] = P.names();
        Json rel = Json::array();
        for (const auto& [p, q] : P.hasse_edges()) rel.push_back({P.name(p), P.name(q)});
        s["relations"] = rel;
        Json rs = Json::object();
        for (std::size_t p = 0; p < P.size(); ++p) rs[P.name(p)] = ring_name(X->rings[p]);
        s["rings"] = rs;
        Json maps = Json::array();
        for (const auto& [p, q] : P.hasse_edges())
            maps.push_back({{"from", P.name(p)}, {"to", P.name(q)}, {"images", mat_json(X->r(p, q).images)}});
        s["maps"] = maps;
        spaces[name] = s;
    }
    auto sheaf_json = [&](const SheafPtr& M) {
        Json j;
        j["space"] = space_name(M->space);
        const Json body = to_json(*M);
        for (const auto& [k, v] : body.items()) j[k] = v;
        return j;
    };
    Json sheaves = Json::object();
    for (const auto& [name, M] : W.sheaves.items) sheaves[name] = sheaf_json(M);
    Json complexes = Json::object();
    for (const auto& [name, C] : W.complexes.items) {
        Json j;
        j["space"] = space_name(C.space);
        j["lo"] = C.lo;
        Json terms = Json::array();
        for (const auto& T : C.terms) terms.push_back(sheaf_json(T));
        j["terms"] = terms;
        Json d = Json::array();
        for (const auto& f : C.d) {
            Json m = Json::object();
            for (std::size_t p = 0; p < f.comp.size(); ++p)
                if (!f.comp[p].is_zero()) m[C.space->poset.name(p)] = mat_json(f.comp[p].m);
            d.push_back(m);
        }
        j["d"] = d;
        complexes[name] = j;
    }
    Json maps = Json::object();
    for (const auto& [name, f] : W.maps.items) {
        Json j;
        j["source"] = space_name(f.source);
        j["target"] = space_name(f.target);
        Json as = Json::object(), comp = Json::object();
        for (std::size_t x = 0; x < f.source->size(); ++x) {
            as[f.source->poset.name(x)] = f.target->poset.name(f.assign[x]);
            comp[f.source->poset.name(x)] = mat_json(f.comp[x].images);
        }
        j["assign"] = as;
        j["comp"] = comp;
        maps[name] = j;
    }
    Json tasks = Json::array();
    for (const auto& t : W.tasks) {
        Json j;
        j["name"] = t.name;
        j["task"] = t.kind;
        for (const auto& [k, v] : t.params.items()) j[k] = v;
        tasks.push_back(j);
    }
    Json out;
    Json rj = Json::object();
    for (const auto& [k, v] : rings) rj[k] = ring_json(*v);
    out["rings"] = rj;
    out["spaces"] = spaces;
    out["maps"] = maps;
    out["sheaves"] = sheaves;
    out["complexes"] = complexes;
    out["tasks"] = tasks;
    return out;
}

namespace {

bool same_space(const RingedSpace& a, const RingedSpace& b) {
    if (!(a.poset == b.poset)) return false;
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (!ring_equal(*a.rings[p], *b.rings[p])) return false;
        for (std::size_t q = 0; q < a.size(); ++q)
            if (a.poset.leq(p, q) && !(a.r(p, q).images == b.r(p, q).images)) return false;
    }
    return true;
}

bool same_module(const FiniteModule& a, const FiniteModule& b) { return a.group == b.group && a.act == b.act; }

bool same_sheaf(const SheafModule& a, const SheafModule& b) {
    if (!same_space(*a.space, *b.space)) return false;
    const Poset& P = a.space->poset;
    for (std::size_t p = 0; p < a.size(); ++p) {
        if (!same_module(a.stalk[p], b.stalk[p])) return false;
        for (std::size_t q = 0; q < a.size(); ++q)
            if (P.leq(p, q) && !(a.r(p, q).m == b.r(p, q).m)) return false;
    }
    return true;
}

template <class T, class F>
bool same_named(const Named<T>& a, const Named<T>& b, F eq) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.items[i].first != b.items[i].first || !eq(a.items[i].second, b.items[i].second)) return false;
    return true;
}

}  // namespace

bool equal(const Workspace& a, const Workspace& b) {
    auto ring_eq = [](const RingPtr& x, const RingPtr& y) { return ring_equal(*x, *y); };
    auto space_eq = [](const SpacePtr& x, const SpacePtr& y) { return same_space(*x, *y); };
    auto sheaf_eq = [](const SheafPtr& x, const SheafPtr& y) { return same_sheaf(*x, *y); };
    auto cx_eq = [](const SheafComplex& x, const SheafComplex& y) {
        if (x.lo != y.lo || x.terms.size() != y.terms.size()) return false;
        for (std::size_t i = 0; i < x.terms.size(); ++i)
            if (!same_sheaf(*x.terms[i], *y.terms[i])) return false;
        for (std::size_t i = 0; i < x.d.size(); ++i)
            for (std::size_t p = 0; p < x.d[i].comp.size(); ++p)
                if (!(x.d[i].comp[p].m == y.d[i].comp[p].m)) return false;
        return true;
    };
    auto map_eq = [](const RingedMap& x, const RingedMap& y) {
        if (!same_space(*x.source, *y.source) || !same_space(*x.target, *y.target) || x.assign != y.assign) return false;
        for (std::size_t i = 0; i < x.comp.size(); ++i)
            if (!(x.comp[i].images == y.comp[i].images)) return false;
        return true;
    };
    if (a.tasks.size() != b.tasks.size()) return false;
    for (std::size_t i = 0; i < a.tasks.size(); ++i)
        if (a.tasks[i].name != b.tasks[i].name || a.tasks[i].kind != b.tasks[i].kind || a.tasks[i].params != b.tasks[i].params)
            return false;
    // serialization may add rings that only appear inside spaces
    for (const auto& [k, v] : a.rings.items)
        if (const RingPtr* w = b.rings.find(k); !w || !ring_eq(v, *w)) return false;
    return same_named(a.spaces, b.spaces, space_eq) && same_named(a.sheaves, b.sheaves, sheaf_eq) &&
           same_named(a.complexes, b.complexes, cx_eq) && same_named(a.maps, b.maps, map_eq);
}

}  // namespace finsheaf
