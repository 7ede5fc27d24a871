#include "finsheaf/cli.hpp"

#include <algorithm>
#include <sstream>

#include "finsheaf/classify.hpp"
#include "finsheaf/derived.hpp"
#include "finsheaf/fixtures.hpp"
#include "finsheaf/suites.hpp"

namespace finsheaf {

namespace {

std::string show(const Vec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

Json big(const BigInt& n) {
    if (n <= BigInt(INT64_MAX)) return static_cast<i64>(n);
    return to_string(n);
}

struct Params {
    const Workspace& W;
    const Task& t;

    bool has(const char* key) const { return t.params.contains(key); }
    std::string path(const char* key) const { return "tasks." + t.name + "." + key; }
    const Json& at(const char* key) const {
        if (!has(key)) throw InputError("tasks." + t.name, std::string("missing parameter \"") + key + "\"");
        return t.params.at(key);
    }
    int integer(const char* key, int def) const {
        if (!has(key)) return def;
        if (!t.params.at(key).is_number_integer()) throw InputError(path(key), "expected an integer");
        return t.params.at(key).get<int>();
    }
    std::string name(const char* key) const {
        const Json& v = at(key);
        if (!v.is_string()) throw InputError(path(key), "expected a name");
        return v.get<std::string>();
    }
    SpacePtr space(const char* key = "space") const {
        const std::string n = name(key);
        if (const SpacePtr* X = W.spaces.find(n)) return *X;
        throw InputError(path(key), "unknown space " + n);
    }
    const RingedMap& map(const char* key = "map") const {
        const std::string n = name(key);
        if (const RingedMap* f = W.maps.find(n)) return *f;
        throw InputError(path(key), "unknown map " + n);
    }
    SheafPtr sheaf(const char* key = "sheaf") const {
        const std::string n = name(key);
        if (const SheafPtr* M = W.sheaves.find(n)) return *M;
        throw InputError(path(key), "unknown sheaf " + n);
    }
    /// A sheaf (in degree 0) or a complex, under the first present key.
    SheafComplex object(std::initializer_list<const char*> keys) const {
        for (const char* key : keys) {
            if (!has(key)) continue;
            const std::string n = name(key);
            if (const SheafPtr* M = W.sheaves.find(n)) return SheafComplex::single(*M);
            if (const SheafComplex* C = W.complexes.find(n)) return *C;
            throw InputError(path(key), "unknown sheaf or complex " + n);
        }
        std::string want;
        for (const char* key : keys) want += std::string(want.empty() ? "" : " or ") + "\"" + key + "\"";
        throw InputError("tasks." + t.name, "missing parameter " + want);
    }
};

const std::initializer_list<const char*> object_keys = {"complex", "sheaf"};

Json stalks_json(const SheafModule& M) {
    Json j = Json::object();
    for (std::size_t p = 0; p < M.size(); ++p) j[M.space->poset.name(p)] = M.stalk[p].group.invariants();
    return j;
}

std::string stalks_line(const SheafModule& M) {
    std::string s;
    for (std::size_t p = 0; p < M.size(); ++p) s += (p ? " " : "") + M.space->poset.name(p) + "=" + show(M.stalk[p].group.invariants());
    return s;
}

// cohomology sheaves of C in [lo, hi], stalk invariants per point
void sheaf_table(TaskReport& r, const SheafComplex& C, int lo, int hi, const std::string& label) {
    Json rows = Json::array();
    for (int n = lo; n <= hi; ++n) {
        Cohomology H = cohomology(C, n);
        rows.push_back({{"degree", n}, {"stalks", stalks_json(*H.H)}});
        r.lines.push_back(label + "^" + std::to_string(n) + ": " + stalks_line(*H.H));
    }
    r.data["cohomology_sheaves"] = rows;
}

void expect(TaskReport& r, const Params& p) {
    if (!p.has("expect")) return;
    const Json& e = p.at("expect");
    if (!e.is_object()) throw InputError(p.path("expect"), "expected an object");
    for (const auto& [k, v] : e.items()) {
        if (!r.data.contains(k)) throw InputError(p.path("expect"), "the report has no field " + k);
        if (r.data.at(k) != v) {
            r.status = Status::fail;
            r.lines.push_back("expected " + k + " = " + v.dump() + ", got " + r.data.at(k).dump());
        }
    }
}

void pass_fail(TaskReport& r, bool ok) {
    r.data["pass"] = ok;
    if (!ok) r.status = Status::fail;
}

// ---------------------------------------------------------------------------

void classify_task(TaskReport& r, const Params& p) {
    if (p.has("map")) {
        const RingedMap& f = p.map();
        const std::string w = schematic_morphism_failure(f);
        r.data["schematic_morphism"] = w.empty();
        r.lines.push_back("schematic_morphism: " + std::string(w.empty() ? "true" : "false"));
        if (!w.empty()) {
            r.data["schematic_morphism_witness"] = w;
            r.lines.push_back("  witness: " + w);
        }
        if (!p.has("space")) return;
    }
    SpacePtr X = p.space();
    Classification c = classify(X);
    const Poset& P = X->poset;
    r.data["finite_space"] = c.finite_space;
    r.data["semi_separated"] = c.semi_separated;
    r.data["schematic"] = c.schematic;
    r.lines.push_back("finite_space: " + std::string(c.finite_space ? "true" : "false"));
    if (c.flatness_witness) {
        r.data["flatness_witness"] = {P.name(c.flatness_witness->first), P.name(c.flatness_witness->second)};
        r.lines.push_back("  witness: O_" + P.name(c.flatness_witness->first) + " -> O_" + P.name(c.flatness_witness->second) + " is not flat");
    }
    r.lines.push_back("semi_separated: " + std::string(c.semi_separated ? "true" : "false"));
    if (!c.semi_separated) {
        r.data["semi_separated_witness"] = c.semi_separated_witness;
        r.lines.push_back("  witness: " + c.semi_separated_witness);
    }
    r.lines.push_back("schematic: " + std::string(c.schematic ? "true" : "false"));
    if (!c.schematic) {
        r.data["schematic_witness"] = c.schematic_witness;
        r.lines.push_back("  witness: " + c.schematic_witness);
    }
}

void cohomology_task(TaskReport& r, const Params& p) {
    SheafComplex C = p.object(object_keys);
    const int dim = static_cast<int>(C.space->poset.dimension());
    const int lo = p.integer("lo", C.empty() ? 0 : C.lo), hi = p.integer("hi", C.empty() ? dim : C.hi() + dim);
    std::vector<AbGroup> H = gamma_derived(C, lo, hi);
    Json rows = Json::array();
    for (int n = lo; n <= hi; ++n) {
        const Vec d = H[static_cast<std::size_t>(n - lo)].invariants();
        rows.push_back({{"degree", n}, {"divisors", d}});
        r.lines.push_back("H^" + std::to_string(n) + " = " + show(d));
    }
    r.data["H"] = rows;
}

void push_task(TaskReport& r, const Params& p) {
    const RingedMap& f = p.map();
    SheafComplex M = p.object(object_keys);
    SheafComplex R = push_derived(f, M);
    sheaf_table(r, R, R.empty() ? 0 : R.lo, R.empty() ? -1 : R.hi(), "R f_*");
}

void qc_task(TaskReport& r, const Params& p) {
    SheafPtr N = p.sheaf();
    QcModule q = qc(N);
    r.data["stalks"] = stalks_json(*q.module);
    r.data["quasi_coherent"] = is_quasicoherent(*q.module);
    r.lines.push_back("Qc: " + stalks_line(*q.module));
}

void rqc_push_task(TaskReport& r, const Params& p) {
    const RingedMap& f = p.map();
    SheafComplex M = p.object(object_keys);
    CheckReport c = rqc_check(f, M);
    SheafComplex R = rqc_push(f, M);
    sheaf_table(r, R, R.lo, R.hi(), "R_qc f_*");
    for (const auto& l : c.lines) r.lines.push_back(l);
    if (c.failing_degree) r.data["failing_degree"] = *c.failing_degree;
    pass_fail(r, c.pass);
}

void bn_task(TaskReport& r, const Params& p) {
    CheckReport c = bn_check(p.object(object_keys));
    for (const auto& l : c.lines) r.lines.push_back(l);
    if (c.failing_degree) r.data["failing_degree"] = *c.failing_degree;
    pass_fail(r, c.pass);
}

int default_depth(const RingedMap& f, const SheafComplex& N) {
    return (N.empty() ? 0 : N.hi()) + static_cast<int>(f.target->poset.dimension() + f.source->poset.dimension()) + 1;
}

void shriek_task(TaskReport& r, const Params& p, const RunOptions& opt) {
    const RingedMap& f = p.map();
    SheafComplex N = p.object({"complex", "sheaf", "N"});
    const int d = p.integer("depth", opt.depth.value_or(default_depth(f, N)));
    Shriek s = f_shriek(f, N, d);
    r.data["depth"] = d;
    r.data["reliable"] = {s.reliable_lo, s.reliable_hi};
    r.lines.push_back("certified degrees [" + std::to_string(s.reliable_lo) + ", " + std::to_string(s.reliable_hi) + "]");
    const int lo = std::max(s.reliable_lo, s.cx().lo), hi = std::min(s.reliable_hi, s.cx().hi());
    sheaf_table(r, s.cx(), lo, hi, "f^!");
}

void duality_task(TaskReport& r, const Params& p, const RunOptions& opt) {
    const RingedMap& f = p.map();
    SheafComplex M = p.object({"M"}), N = p.object({"N"});
    const int lo = p.integer("lo", -2), hi = p.integer("hi", 2);
    std::optional<int> depth = opt.depth;
    if (p.has("depth")) depth = p.integer("depth", 0);
    DualityReport d = duality_check(f, M, N, lo, hi, depth);
    Json rows = Json::array();
    bool bij = true;
    for (int i = lo; i <= hi; ++i) {
        const auto k = static_cast<std::size_t>(i - lo);
        bij = bij && d.bijective[k];
        rows.push_back({{"degree", i}, {"lhs", big(d.lhs[k])}, {"rhs", big(d.rhs[k])}, {"bijective", static_cast<bool>(d.bijective[k])}});
        r.lines.push_back("i=" + std::to_string(i) + ": |Hom(Rf_*M, N[i])| = " + to_string(d.lhs[k]) + ", |Hom(M, f^!N[i])| = " +
                          to_string(d.rhs[k]) + (d.bijective[k] ? ", bijective" : ", not bijective"));
    }
    r.data["degrees"] = rows;
    r.data["complex_iso"] = d.complex_iso;
    r.data["depth"] = d.depth;
    if (!d.message.empty()) r.lines.push_back(d.message);
    pass_fail(r, d.pass && d.complex_iso && bij);
}

void dqc_task(TaskReport& r, const Params& p) {
    SheafComplex N = p.object(object_keys);
    Coherator c = dqc_coherator(N);
    r.data["split"] = c.split;
    r.lines.push_back("cover: " + c.split);
    const bool dqc = in_Dqc(c.cx), back = is_quasi_iso(c.to_source.back);
    r.data["in_Dqc"] = dqc;
    r.lines.push_back(std::string("N_qc in D_qc: ") + (dqc ? "true" : "false"));
    sheaf_table(r, c.cx, c.cx.lo, c.cx.hi(), "N_qc");
    pass_fail(r, dqc && back);
}

void flat_task(TaskReport& r, const Params& p) {
    SheafPtr M = p.sheaf();
    FlatResolution f = flat_qcoh_res(M, p.integer("max_length", 4));
    const SheafComplex& F = f.res.complex();
    bool flat = true;
    Json terms = Json::array();
    for (int n = F.lo; n <= F.hi(); ++n) {
        const SheafPtr& T = F.at(n);
        bool ok = is_quasicoherent(*T);
        for (const auto& s : T->stalk) ok = ok && is_flat(s);
        flat = flat && ok;
        terms.push_back({{"degree", n}, {"stalks", stalks_json(*T)}, {"flat_qcoh", ok}});
        r.lines.push_back("F^" + std::to_string(n) + ": " + stalks_line(*T) + (ok ? "" : " (not flat quasi-coherent)"));
    }
    r.data["terms"] = terms;
    r.data["finite"] = f.finite;
    if (!f.finite) {
        r.data["reliable_lo"] = f.res.reliable_lo;
        r.lines.push_back("resolution cut at the length cap; certified from degree " + std::to_string(f.res.reliable_lo));
    }
    const auto fail = f.res.failure();
    if (fail) r.lines.push_back("augmentation fails in degree " + std::to_string(*fail));
    pass_fail(r, flat && !fail);
}

void suite_task(TaskReport& r, const Params& p, const RunOptions& opt, std::size_t index) {
    std::vector<std::string> names;
    const std::string which = p.has("suite") ? p.name("suite") : "all";
    if (which == "all") {
        names = suite_names();
    } else {
        if (std::find(suite_names().begin(), suite_names().end(), which) == suite_names().end())
            throw InputError(p.path("suite"), "unknown suite " + which);
        names = {which};
    }
    std::vector<std::string> red;
    if (p.has("expect_red"))
        for (const auto& v : p.at("expect_red")) red.push_back(v.get<std::string>());
    Json rows = Json::array();
    bool ok = true;
    for (const auto& n : names) {
        SuiteResult s = run_suite(n, opt.seed + index, p.integer("count", 0), opt.depth);
        const bool expected_red = std::find(red.begin(), red.end(), n) != red.end();
        ok = ok && s.pass != expected_red;
        rows.push_back({{"suite", n}, {"pass", s.pass}, {"summary", s.summary}, {"witnesses", s.witnesses}});
        r.lines.push_back(std::string(s.pass ? "PASS " : "FAIL ") + n + ": " + s.summary);
        for (const auto& w : s.witnesses) r.lines.push_back("  " + w);
    }
    r.data["suites"] = rows;
    pass_fail(r, ok);
}

std::string status_word(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        case Status::input_error: return "ERROR";
    }
    return "";
}

}  // namespace

TaskReport run_model(const Json& params, const std::string& name) {
    TaskReport r{name, "model", Status::pass, Json::object(), {}};
    try {
        std::vector<std::vector<int>> simplices;
        std::vector<std::vector<int>> covering;
        Poset faces, space;
        std::vector<std::size_t> quotient;
        if (params.value("source", "") == "octahedron") {
            S2Source s = s2_source();
            CoveringModel m = covering_model(s.faces, s.covering);
            faces = s.faces;
            space = m.space;
            quotient = m.quotient;
        } else {
            if (!params.contains("simplices")) throw InputError(name, "missing parameter \"simplices\"");
            simplices = params.at("simplices").get<std::vector<std::vector<int>>>();
            faces = face_poset(simplices);
            space = faces;
            if (params.contains("covering")) {
                std::vector<OpenSet> cover;
                for (const auto& vs : params.at("covering")) {
                    OpenSet u = faces.empty();
                    for (int v : vs.get<std::vector<int>>()) {
                        const std::size_t sv = faces.index("{" + std::to_string(v) + "}");
                        for (std::size_t f = 0; f < faces.size(); ++f)
                            if (faces.leq(sv, f)) u[f] = true;
                    }
                    cover.push_back(u);
                }
                CoveringModel m = covering_model(faces, cover);
                space = m.space;
                quotient = m.quotient;
            }
        }
        const i64 p = params.value("mod", 2);
        if (p < 2) throw InputError(name + ".mod", "expected a modulus of at least 2");
        SpacePtr X = std::make_shared<const RingedSpace>(RingedSpace::constant(space, make_ring(FiniteRing::integers_mod(p))));
        r.data["faces"] = faces.size();
        r.data["points"] = space.names();
        Json rel = Json::array();
        for (const auto& [a, b] : space.hasse_edges()) rel.push_back({space.name(a), space.name(b)});
        r.data["relations"] = rel;
        r.lines.push_back(std::to_string(faces.size()) + " faces, model with " + std::to_string(space.size()) + " points");
        if (!quotient.empty()) {
            Json q = Json::object();
            for (std::size_t s = 0; s < faces.size(); ++s) q[faces.name(s)] = space.name(quotient[s]);
            r.data["quotient"] = q;
        }
        for (const auto& [a, b] : space.hasse_edges()) r.lines.push_back("  " + space.name(a) + " < " + space.name(b));
        const int dim = static_cast<int>(space.dimension());
        std::vector<AbGroup> H = gamma_derived(SheafComplex::single(structure_sheaf(X)), 0, dim);
        Json rows = Json::array();
        for (int n = 0; n <= dim; ++n) {
            const Vec d = H[static_cast<std::size_t>(n)].invariants();
            rows.push_back({{"degree", n}, {"divisors", d}});
            r.lines.push_back("H^" + std::to_string(n) + "(Z/" + std::to_string(p) + ") = " + show(d));
        }
        r.data["H"] = rows;
        Workspace W;
        W.spaces.add(name, X);
        r.data["workspace"] = serialize(W);
    } catch (const InputError& e) {
        r.status = Status::input_error;
        r.lines.push_back(std::string("input error: ") + e.what());
    } catch (const std::exception& e) {
        r.status = Status::input_error;
        r.lines.push_back(std::string("input error: ") + e.what());
    }
    return r;
}

TaskReport run_task(const Workspace& W, const Task& t, const RunOptions& opt, std::size_t index) {
    if (t.kind == "model") {
        TaskReport r = run_model(t.params, t.name);
        return r;
    }
    TaskReport r{t.name, t.kind, Status::pass, Json::object(), {}};
    Params p{W, t};
    try {
        if (t.kind == "classify") classify_task(r, p);
        else if (t.kind == "cohomology") cohomology_task(r, p);
        else if (t.kind == "push") push_task(r, p);
        else if (t.kind == "qc") qc_task(r, p);
        else if (t.kind == "rqc-push") rqc_push_task(r, p);
        else if (t.kind == "bn-check") bn_task(r, p);
        else if (t.kind == "shriek") shriek_task(r, p, opt);
        else if (t.kind == "duality-check") duality_task(r, p, opt);
        else if (t.kind == "dqc-coherator") dqc_task(r, p);
        else if (t.kind == "flat-res") flat_task(r, p);
        else if (t.kind == "verify-suite") suite_task(r, p, opt, index);
        else throw InputError("tasks." + t.name, "unknown task " + t.kind);
        expect(r, p);
    } catch (const InputError& e) {
        r.status = Status::input_error;
        r.lines.push_back(std::string("input error: ") + e.what());
    } catch (const std::exception& e) {
        // precondition failures from the engine carry their own reason
        r.status = Status::fail;
        r.data["error"] = e.what();
        r.lines.push_back(e.what());
    }
    return r;
}

std::vector<TaskReport> run_tasks(const Workspace& W, const RunOptions& opt) {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < W.tasks.size(); ++i)
        if (!opt.task || W.tasks[i].name == *opt.task) pick.push_back(i);
    if (opt.task && pick.empty()) throw InputError("--task", "no task named " + *opt.task);
    std::vector<TaskReport> out(pick.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < pick.size(); ++k) out[k] = run_task(W, W.tasks[pick[k]], opt, pick[k]);
    return out;
}

std::string render_text(const std::vector<TaskReport>& reports) {
    std::ostringstream s;
    for (const auto& r : reports) {
        s << "== " << r.name << " (" << r.kind << "): " << status_word(r.status) << "\n";
        for (const auto& l : r.lines) s << "  " << l << "\n";
    }
    return s.str();
}

std::string render_json(const std::vector<TaskReport>& reports) {
    Json out;
    Json tasks = Json::array();
    for (const auto& r : reports) {
        Json j;
        j["name"] = r.name;
        j["task"] = r.kind;
        j["status"] = status_word(r.status);
        j["result"] = r.data;
        tasks.push_back(j);
    }
    out["tasks"] = tasks;
    out["exit"] = exit_code(reports);
    return out.dump(2) + "\n";
}

int exit_code(const std::vector<TaskReport>& reports) {
    int code = 0;
    for (const auto& r : reports) code = std::max(code, static_cast<int>(r.status));
    return code;
}

std::vector<std::string> describe_workspace(const Workspace& W) {
    std::vector<std::string> out;
    for (const auto& [k, R] : W.rings.items) out.push_back("ring " + k + ": " + to_string(R->size()) + " elements");
    for (const auto& [k, X] : W.spaces.items) out.push_back("space " + k + ": " + std::to_string(X->size()) + " points, dimension " + std::to_string(X->poset.dimension()));
    for (const auto& [k, f] : W.maps.items) out.push_back("map " + k + ": " + std::to_string(f.source->size()) + " -> " + std::to_string(f.target->size()) + " points");
    for (const auto& [k, M] : W.sheaves.items) out.push_back("sheaf " + k + ": " + stalks_line(*M));
    for (const auto& [k, C] : W.complexes.items)
        out.push_back("complex " + k + ": degrees [" + std::to_string(C.lo) + ", " + std::to_string(C.hi()) + "]");
    for (const auto& t : W.tasks) out.push_back("task " + t.name + ": " + t.kind);
    return out;
}

}  // namespace finsheaf
