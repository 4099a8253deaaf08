// segrekit command-line driver. Every run prints one line per case and can
// write a JSON report (schema in docs/json_schema.md).

#include "CLI11.hpp"
#include "json.hpp"

#include "segrekit/corpus.hpp"
#include "segrekit/dsl.hpp"
#include "segrekit/hspm.hpp"
#include "segrekit/model.hpp"
#include "segrekit/oracle.hpp"
#include "segrekit/reflection.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace segrekit;
using nlohmann::json;

namespace {

struct Settings {
    int degree = 8;
    std::uint64_t seed = 1;
    int bracket_bound = 8;
    std::string json_path;
    std::vector<std::string> args;  // subject names and files, mixed
    int order = 2;                  // segre
    std::string from = "H";         // reconstruct
    int jet_order = 2;              // reconstruct --from jets on a map
    // set on the command line (or SEGREKIT_SEED); these beat file settings
    bool degree_given = false, seed_given = false, bound_given = false;
};

struct Case {
    std::string name;
    bool pass = false;
    json body;
};

std::vector<std::string> h_names(const SegrePreservingMap& h) {
    auto v = indexed_names("z", h.source.m);
    for (auto& s : indexed_names("w", h.source.d)) v.push_back(s);
    return v;
}
std::vector<std::string> ht_names(const SegrePreservingMap& h) {
    auto v = indexed_names("chi", h.source.m);
    for (auto& s : indexed_names("tau", h.source.d)) v.push_back(s);
    return v;
}

json series_list(const SeriesVec& v, const std::vector<std::string>& names) {
    json a = json::array();
    for (const auto& s : v) a.push_back(s.to_string(names));
    return a;
}

json map_json(const SegrePreservingMap& h) {
    return {{"H", series_list(h.H(), h_names(h))}, {"Htilde", series_list(h.Htilde(), ht_names(h))}};
}

// names that are files are loaded; the rest select subjects
struct Inputs {
    Workspace ws;
    std::vector<std::string> subjects;
};

Inputs load_inputs(Settings& st, bool with_corpus) {
    DslDocument doc;
    Inputs in;
    bool any_file = false;
    for (const auto& a : st.args) {
        if (!std::filesystem::is_regular_file(a)) {
            in.subjects.push_back(a);
            continue;
        }
        std::ifstream f(a);
        std::stringstream ss;
        ss << f.rdbuf();
        try {
            merge_into(doc, parse_document(ss.str()));
        } catch (const ParseError& e) {
            throw std::runtime_error(a + ":" + e.what());
        }
        any_file = true;
    }
    if (auto v = doc.setting("degree"); v && !st.degree_given) st.degree = static_cast<int>(*v);
    if (auto v = doc.setting("seed"); v && !st.seed_given) st.seed = static_cast<std::uint64_t>(*v);
    if (auto v = doc.setting("bracket_bound"); v && !st.bound_given) st.bracket_bound = static_cast<int>(*v);
    if (st.degree < 1 || st.degree > 20) throw std::runtime_error("degree setting out of range [1, 20]");
    // the built-in examples are addressable by name when no file is given
    if (with_corpus || !any_file) merge_into(doc, parse_document(corpus_source(st.seed)));
    in.ws = build_workspace(doc, st.degree);
    return in;
}

// exact name first, then case-insensitive
template <class M>
const typename M::mapped_type* find_named(const M& m, const std::string& name, std::string& resolved) {
    if (auto it = m.find(name); it != m.end()) return resolved = it->first, &it->second;
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    for (const auto& [k, v] : m)
        if (lower(k) == lower(name)) return resolved = k, &v;
    return nullptr;
}

Case missing(const std::string& name, const Workspace& ws, const char* what) {
    Case c{name, false, {}};
    if (auto it = ws.errors.find(name); it != ws.errors.end()) c.body["error"] = it->second;
    else c.body["error"] = std::string("unresolved reference: no ") + what + " named '" + name + "'";
    return c;
}

template <class M>
std::vector<std::string> all_names(const M& m) {
    std::vector<std::string> v;
    for (const auto& [k, _] : m) v.push_back(k);
    return v;
}

json inertia_json(const Inertia& i) { return json::array({i.plus, i.minus, i.zero}); }

// ------------------------------------------------------------------ analyze

Case analyze_case(const std::string& name, const GenericModel& M, const Settings& st) {
    Case c{name, true, {}};
    AnalysisOptions opt;
    opt.bracket_bound = st.bracket_bound;
    opt.seed = st.seed;
    try {
        AnalysisReport r = analyze(M, opt);
        json& b = c.body;
        b["m"] = M.m;
        b["d"] = M.d;
        b["finite_type"] = {{"order", r.finite_type.order ? json(*r.finite_type.order) : json(nullptr)},
                            {"bracket_bound", r.finite_type.bound},
                            {"reached", r.finite_type.reached},
                            {"span_dims", r.finite_type.span_dims}};
        b["nondegeneracy"] = {{"k", r.nondeg.k ? json(*r.nondeg.k) : json(nullptr)},
                              {"bound", r.nondeg.bound},
                              {"ranks", r.nondeg.ranks}};
        b["levi"] = r.levi ? inertia_json(*r.levi) : json(nullptr);
        if (r.segre)
            b["segre"] = {{"r", r.segre->r ? json(*r.segre->r) : json(nullptr)},
                          {"bound", r.segre->bound},
                          {"ranks", r.segre->ranks},
                          {"method", r.segre->method}};
        else
            b["segre"] = {{"error", r.segre_error}};
    } catch (const std::exception& e) {
        c.pass = false;
        c.body["error"] = e.what();
    }
    return c;
}

std::string analyze_line(const Case& c) {
    if (c.body.contains("error")) return c.body["error"].get<std::string>();
    const json& b = c.body;
    std::ostringstream os;
    auto opt = [](const json& j) { return j.is_null() ? std::string("none") : j.dump(); };
    os << "type order " << opt(b["finite_type"]["order"]) << ", k=" << opt(b["nondegeneracy"]["k"]);
    if (b["levi"].is_array())
        os << ", Levi (" << b["levi"][0] << "," << b["levi"][1] << "," << b["levi"][2] << ")";
    if (b["segre"].contains("r")) os << ", segre r=" << opt(b["segre"]["r"]);
    else os << ", segre: " << b["segre"]["error"].get<std::string>();
    return os.str();
}

// ------------------------------------------------------------------- verify

json verify_json(const SegrePreservingMap& h, bool& pass) {
    json b;
    VerifyResult v = hspm_verify(h);
    pass = v.pass;
    b["hspm"] = v.pass;
    if (!v.pass) {
        b["component"] = v.component;
        b["monomial"] = v.monomial;
        std::vector<std::string> names = h.source.names();
        b["residual"] = series_list(v.residual, names);
    }
    b["submersive"] = segre_submersive(h);
    json wit = json::array();
    for (const auto& w : condition_D_witnesses(h))
        wit.push_back({{"mu", w.mu}, {"nu", w.nu}, {"det_f", w.det_f.str()}, {"det_ft", w.det_ft.str()}});
    b["condition_D"] = {{"holds", !wit.empty()}, {"pairs", wit.size()}, {"witnesses", wit}};
    if (h.source.m == h.target.m && h.source.d == h.target.d) b["real_slice"] = real_slice_check(h);
    else b["real_slice"] = nullptr;
    return b;
}

Case verify_case(const std::string& name, const SegrePreservingMap& h) {
    Case c{name, false, {}};
    try {
        c.body = verify_json(h, c.pass);
    } catch (const std::exception& e) {
        c.body["error"] = e.what();
    }
    return c;
}

std::string verify_line(const Case& c) {
    const json& b = c.body;
    if (b.contains("error")) return b["error"].get<std::string>();
    std::ostringstream os;
    if (!b["hspm"].get<bool>())
        os << "residual component " << b["component"] << " at " << b["monomial"].get<std::string>() << "; ";
    os << "submersive " << (b["submersive"].get<bool>() ? "yes" : "no") << ", condition D pairs "
       << b["condition_D"]["pairs"] << ", real slice "
       << (b["real_slice"].is_null() ? "n/a" : b["real_slice"].get<bool>() ? "yes" : "no");
    return os.str();
}

// -------------------------------------------------------------------- segre

Case segre_case(const std::string& name, const GenericModel& M, int r) {
    Case c{name, false, {}};
    try {
        SegreMapping s = segre_map(M, r);
        std::vector<std::string> t;
        for (int j = 0; j < r; ++j)
            for (int i = 1; i <= M.m; ++i) t.push_back("t" + std::to_string(j) + "_" + std::to_string(i));
        bool stable = segre_stability(M, r);
        bool symmetric = true;
        for (const auto& x : segre_symmetric_restriction(M, r)) symmetric &= x.is_zero();
        c.pass = stable && symmetric;
        c.body = {{"order", r}, {"v", series_list(s.v, t)}, {"stable", stable}, {"symmetric_identity", symmetric}};
    } catch (const std::exception& e) {
        c.body["error"] = e.what();
    }
    return c;
}

// -------------------------------------------------------------- reconstruct

bool side_matches(const SeriesVec& got, const SeriesVec& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
        int cap = std::min(got[i].degree_cap(), want[i].degree_cap());
        if (with_cap(got[i], cap) != with_cap(want[i], cap)) return false;
    }
    return true;
}

Case reconstruct_case(const std::string& name, const Workspace& ws, const Settings& st) {
    Case c{name, false, {}};
    c.body["from"] = st.from;
    std::string resolved;
    const SegrePreservingMap* h = find_named(ws.maps, name, resolved);
    const JetsObject* jo = h ? nullptr : find_named(ws.jets, name, resolved);
    if (!h && !jo) return missing(name, ws, "map or jets");
    try {
        ReconstructionResult r;
        if (st.from == "H" || st.from == "Htilde") {
            if (!h) throw std::invalid_argument("--from " + st.from + " needs a map");
            KnownSide side = st.from == "H" ? KnownSide::H : KnownSide::Htilde;
            r = partner_reconstruct(h->source, h->target, side, side == KnownSide::H ? h->H() : h->Htilde());
            bool same = side == KnownSide::H ? side_matches(r.recovered.Htilde(), h->Htilde())
                                             : side_matches(r.recovered.H(), h->H());
            c.body["matches_input"] = same;
            c.pass = r.certified && same;
        } else {
            JetPair j = h ? jet_extract(*h, st.jet_order) : jo->jets;
            const GenericModel& S = h ? h->source : jo->source;
            const GenericModel& T = h ? h->target : jo->target;
            c.body["K"] = j.K;
            r = full_jet_reconstruct(S, T, j);
            c.pass = r.certified;
            if (h) {
                bool same = map_equal(r.recovered, *h);
                c.body["matches_input"] = same;
                c.pass = c.pass && same;
            }
        }
        c.body["method"] = r.method;
        c.body["certified"] = r.certified;
        if (!r.detail.empty()) c.body["detail"] = r.detail;
        c.body["map"] = map_json(r.recovered);
    } catch (const ReconstructionError& e) {
        c.body["error"] = e.what();
        c.body["kind"] = e.kind();
        // an undetermined problem gets the oracle's verdict as its certificate
        if (h && e.kind() == "not-well-posed" && st.from != "jets") {
            KnownSide side = st.from == "H" ? KnownSide::H : KnownSide::Htilde;
            OracleResult o = partner_oracle(h->source, h->target, side, side == KnownSide::H ? h->H() : h->Htilde(),
                                            st.degree);
            json alts = json::array();
            for (const auto& a : o.alternatives) alts.push_back(map_json(a));
            c.body["oracle"] = {{"verdict", to_string(o.verdict)}, {"degree", o.degree}, {"alternatives", alts},
                                {"detail", o.detail}};
        }
    } catch (const std::exception& e) {
        c.body["error"] = e.what();
    }
    return c;
}

// ------------------------------------------------------------------- corpus

std::vector<Case> corpus_cases(const Settings& st) {
    Workspace ws = build_workspace(parse_document(corpus_source(st.seed)), st.degree);
    std::vector<Case> out;
    for (const auto& [name, err] : ws.errors) out.push_back({name, false, {{"error", err}}});
    for (const auto& e : corpus_expectations(st.seed)) {
        auto it = ws.maps.find(e.map);
        if (it == ws.maps.end()) {
            if (!ws.errors.count(e.map)) out.push_back(missing(e.map, ws, "map"));
            continue;
        }
        Case c = verify_case(e.map, it->second);
        if (e.real_slice_applicable && !c.body.contains("error")) {
            c.body["real_slice_expected"] = e.real_slice;
            c.pass = c.pass && c.body["real_slice"] == json(e.real_slice);
        }
        out.push_back(std::move(c));
    }
    return out;
}

// ------------------------------------------------------------------- output

int finish(const std::string& command, std::vector<Case> cases, const Settings& st,
           std::string (*line)(const Case&)) {
    std::sort(cases.begin(), cases.end(), [](const Case& a, const Case& b) { return a.name < b.name; });
    bool all = true;
    json arr = json::array();
    for (const auto& c : cases) {
        all &= c.pass;
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
        std::string l = line(c);
        if (!l.empty()) std::cout << ": " << l;
        std::cout << "\n";
        json j = c.body;
        j["name"] = c.name;
        j["verdict"] = c.pass ? "pass" : "fail";
        arr.push_back(std::move(j));
    }
    if (!st.json_path.empty()) {
        json report = {{"command", command},
                       {"degree", st.degree},
                       {"seed", st.seed},
                       {"bracket_bound", st.bracket_bound},
                       {"pass", all},
                       {"cases", arr}};
        std::string text = report.dump(2) + "\n";
        if (st.json_path == "-") {
            std::cout << text;
        } else {
            std::ofstream f(st.json_path);
            f << text;
            if (!f) {
                std::cerr << "segrekit: cannot write " << st.json_path << "\n";
                return 2;
            }
        }
    }
    return all ? 0 : 1;
}

std::string error_or_empty(const Case& c) {
    return c.body.contains("error") ? c.body["error"].get<std::string>() : std::string();
}

std::string segre_line(const Case& c) {
    if (c.body.contains("error")) return error_or_empty(c);
    return std::string("stable ") + (c.body["stable"].get<bool>() ? "yes" : "no") + ", symmetric identity " +
           (c.body["symmetric_identity"].get<bool>() ? "yes" : "no");
}

std::string reconstruct_line(const Case& c) {
    const json& b = c.body;
    if (b.contains("error")) {
        std::string s = b["error"].get<std::string>();
        if (b.contains("oracle")) s += "; oracle: " + b["oracle"]["verdict"].get<std::string>();
        return s;
    }
    std::string s = b["method"].get<std::string>() + (b["certified"].get<bool>() ? ", certified" : ", not certified");
    if (b.contains("matches_input")) s += b["matches_input"].get<bool>() ? ", matches input" : ", differs from input";
    return s;
}

std::string corpus_line(const Case& c) {
    return c.body.contains("error") ? error_or_empty(c) : verify_line(c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segre preserving maps between generic submanifolds"};
    app.require_subcommand(1);
    Settings st;
    CLI::Option* deg = app.add_option("--degree", st.degree, "truncation degree D")->check(CLI::Range(1, 20));
    CLI::Option* seed = app.add_option("--seed", st.seed, "seed for sampled parameters")->envname("SEGREKIT_SEED");
    CLI::Option* bound = app.add_option("--bracket-bound", st.bracket_bound, "longest bracket tried for the type")
                             ->check(CLI::PositiveNumber);
    app.add_option("--json", st.json_path, "write the report here ('-' for stdout)");

    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->add_option("args", st.args, "subject names and DSL files");
        return s;
    };
    CLI::App* an = sub("analyze", "invariants of models");
    CLI::App* ve = sub("verify", "HSPM, submersion, condition D and real slice of maps");
    CLI::App* se = sub("segre", "Segre mappings with the stability and symmetric checks");
    se->add_option("--order", st.order, "Segre order r")->check(CLI::Range(1, 6));
    CLI::App* re = sub("reconstruct", "recover a map from one side or from jets");
    re->add_option("--from", st.from, "known data")->check(CLI::IsMember({"H", "Htilde", "jets"}));
    re->add_option("--jet-order", st.jet_order, "K for --from jets on a map")->check(CLI::PositiveNumber);
    CLI::App* co = sub("corpus", "run the built-in example suite");

    CLI11_PARSE(app, argc, argv);
    st.degree_given = deg->count() > 0;
    st.seed_given = seed->count() > 0;
    st.bound_given = bound->count() > 0;

    try {
        if (co->parsed()) return finish("corpus", corpus_cases(st), st, corpus_line);

        Inputs in = load_inputs(st, false);
        const Workspace& ws = in.ws;
        std::vector<Case> cases;
        std::string resolved;
        // declarations that failed to build are failures of a full listing
        if (in.subjects.empty())
            for (const auto& [name, err] : ws.errors) cases.push_back({name, false, {{"error", err}}});
        if (an->parsed()) {
            auto names = in.subjects.empty() ? all_names(ws.models) : in.subjects;
            for (const auto& n : names) {
                const GenericModel* M = find_named(ws.models, n, resolved);
                cases.push_back(M ? analyze_case(resolved, *M, st) : missing(n, ws, "model"));
            }
            return finish("analyze", cases, st, analyze_line);
        }
        if (ve->parsed()) {
            auto names = in.subjects.empty() ? all_names(ws.maps) : in.subjects;
            for (const auto& n : names) {
                const SegrePreservingMap* h = find_named(ws.maps, n, resolved);
                cases.push_back(h ? verify_case(resolved, *h) : missing(n, ws, "map"));
            }
            return finish("verify", cases, st, corpus_line);
        }
        if (se->parsed()) {
            auto names = in.subjects.empty() ? all_names(ws.models) : in.subjects;
            for (const auto& n : names) {
                const GenericModel* M = find_named(ws.models, n, resolved);
                cases.push_back(M ? segre_case(resolved, *M, st.order) : missing(n, ws, "model"));
            }
            return finish("segre", cases, st, segre_line);
        }
        if (re->parsed()) {
            auto names = in.subjects;
            if (names.empty()) names = st.from == "jets" && !ws.jets.empty() ? all_names(ws.jets) : all_names(ws.maps);
            for (const auto& n : names) cases.push_back(reconstruct_case(n, ws, st));
            return finish("reconstruct", cases, st, reconstruct_line);
        }
    } catch (const std::exception& e) {
        std::cerr << "segrekit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
