#include "logmoduli/cli.hpp"

#include "logmoduli/dimension.hpp"
#include "logmoduli/errors.hpp"
#include "logmoduli/lattice.hpp"
#include "logmoduli/numeric.hpp"
#include "logmoduli/obstruction.hpp"
#include "logmoduli/positivity.hpp"
#include "logmoduli/rt_process.hpp"
#include "logmoduli/tropical.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

namespace logmoduli {

namespace {

Json big(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return Json(static_cast<long long>(v));
    return Json(to_string(v));
}

Json big_row(const std::vector<BigInt>& r) {
    Json a = Json::array();
    for (const auto& x : r) a.push_back(big(x));
    return a;
}

Json labeled_row(const std::vector<BigInt>& r, const std::vector<std::string>& labels) {
    Json o = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) o[labels[i]] = big(r[i]);
    return o;
}

Json labeled_rows(const IntMatrix& m, const std::vector<std::string>& labels) {
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(labeled_row(m.row(r), labels));
    return a;
}

Json rational_row(const std::vector<Rational>& r) {
    Json a = Json::array();
    for (const auto& x : r) a.push_back(to_string(x));
    return a;
}

Json lattice_json(const LatticeMap& L) {
    Json j;
    j["t_labels"] = L.row_labels;
    j["d_labels"] = L.col_labels;
    Json m = Json::array();
    for (std::size_t r = 0; r < L.matrix.rows(); ++r) m.push_back(big_row(L.matrix.row(r)));
    j["matrix"] = std::move(m);
    j["rank"] = L.rank;
    j["kernel_rank"] = L.kernel_rank();
    j["cokernel_rank"] = L.cokernel_rank();
    j["kernel"] = labeled_rows(L.kernel, L.col_labels);
    j["characters"] = labeled_rows(L.characters, L.row_labels);
    Json t = Json::array();
    for (const auto& x : L.torsion()) t.push_back(big(x));
    j["torsion"] = std::move(t);
    return j;
}

Json violations_json(const ValidationReport& rep) {
    Json a = Json::array();
    auto vs = rep.violations;
    std::sort(vs.begin(), vs.end());
    for (const auto& v : vs) a.push_back({{"code", v.code}, {"element", v.element}, {"message", v.message}});
    return a;
}

Json class_json(const ObstructionClass& c) {
    Json j;
    Json raw = Json::object();
    for (std::size_t i = 0; i < c.labels.size(); ++i) raw[c.labels[i]] = to_string(c.raw[i]);
    j["raw"] = std::move(raw);
    Json chars = Json::array();
    for (std::size_t r = 0; r < c.basis.rows(); ++r)
        chars.push_back({{"character", labeled_row(c.basis.row(r), c.labels)}, {"value", to_string(c.values[r])}});
    j["characters"] = std::move(chars);
    j["trivial"] = c.is_trivial;
    return j;
}

std::optional<IntMatrix> supplied_characters(const GraphDocument& doc, const CliOptions& opts, const std::vector<std::string>& labels) {
    std::optional<CharacterRows> rows = doc.characters;
    if (opts.characters_path) rows = parse_characters(load_json_file(resolve_input(*opts.characters_path)));
    if (!rows) return std::nullopt;
    for (std::size_t k = 0; k < rows->size(); ++k)
        for (const auto& [label, e] : (*rows)[k])
            if (std::find(labels.begin(), labels.end(), label) == labels.end())
                throw InputError("unknown T coordinate '" + label + "'", "characters[" + std::to_string(k) + "]");
    return characters_from_maps(*rows, labels);
}

Json cmd_validate(const GraphDocument& doc, const CliOptions& opts, int& code) {
    const ValidationReport rep = validate_graph(doc.graph, opts.allow_multinode);
    Json j;
    j["valid"] = rep.valid();
    j["genus"] = rep.genus;
    j["violations"] = violations_json(rep);
    if (!rep.valid()) code = kExitViolation;
    return j;
}

Json cmd_decorate(const GraphDocument& doc, const CliOptions& opts, int& code) {
    const Graph& g = doc.graph;
    const DecorationResult d = solve_decorations(g, opts.bound);
    Json j;
    j["conserved"] = d.conserved;
    j["conservation_failures"] = d.conservation_failures;
    j["has_cycles"] = d.has_cycles;
    j["message"] = d.message;
    if (!d.particular.empty()) {
        Json p = Json::object();
        for (std::size_t e = 0; e < g.edges.size(); ++e) p[g.edges[e].id] = contact_to_json(d.particular[e]);
        j["particular"] = std::move(p);
        j["particular_admissible"] = d.particular_admissible;
    }
    if (d.has_cycles) {
        Json cb = Json::array();
        for (std::size_t i = 0; i < d.cycle_basis.size(); ++i) {
            Json per = Json::array();
            for (const auto& v : d.cycle_basis[i]) {
                Json o = Json::object();
                for (std::size_t e = 0; e < g.edges.size(); ++e)
                    if (v[e] != 0) o[g.edges[e].id] = v[e];
                per.push_back(std::move(o));
            }
            cb.push_back({{"divisor", static_cast<int>(i) + 1}, {"basis", std::move(per)}});
        }
        j["cycle_basis"] = std::move(cb);
    }
    j["enumerated"] = d.enumerated;
    Json sols = Json::array();
    for (const auto& s : d.solutions) {
        Json o = Json::object();
        for (std::size_t e = 0; e < g.edges.size(); ++e) o[g.edges[e].id] = contact_to_json(s[e]);
        sols.push_back(std::move(o));
    }
    j["solution_count"] = d.solutions.size();
    j["solutions"] = std::move(sols);
    if (!d.conserved || (d.enumerated && d.solutions.empty()) || (!d.has_cycles && d.solutions.empty())) code = kExitViolation;
    return j;
}

Json cmd_tropical(const GraphDocument& doc, const CliOptions&, int&) {
    const Graph& g = doc.graph;
    const TropicalResult t = tropical_feasible(g);
    Json j;
    j["feasible"] = t.feasible;
    j["equations"] = t.equation_labels;
    j["variables"] = t.variable_labels;
    if (t.witness) {
        Json lam = Json::object();
        for (std::size_t e = 0; e < g.edges.size(); ++e) lam[g.edges[e].id] = to_string(t.witness->lambda[e]);
        Json sl = Json::object();
        for (std::size_t v = 0; v < g.vertices.size(); ++v) sl[g.vertices[v].id] = rational_row(t.witness->slopes[v]);
        j["witness"] = {{"lambda", lam}, {"slopes", sl}};
    }
    if (!t.feasible) {
        j["certificate"] = rational_row(t.certificate);
        j["certificate_combination"] = rational_row(t.certificate_combination);
    }
    if (t.fourier_motzkin_agrees) j["fourier_motzkin_agrees"] = *t.fourier_motzkin_agrees;
    try {
        const ConeResult c = cone_sigma(g);
        Json rays = Json::array();
        for (const auto& r : c.rays) rays.push_back(big_row(r));
        j["cone"] = {{"dimension", c.dimension}, {"kernel_rank", c.kernel_rank}, {"rays", rays}, {"strictly_convex", c.strictly_convex}};
    } catch (const CapacityError& e) {
        j["cone"] = {{"skipped", e.what()}};
    }
    return j;
}

Json cmd_group(const GraphDocument& doc, const CliOptions&, int&) {
    const Graph& g = doc.graph;
    Json j;
    if (g.has_multinode()) {
        const MultinodeLattice ML = build_rho_multinode(g);
        j["multinode"] = ML.multinode_id;
        j["quotient"] = lattice_json(ML.quotient);
        j["extended"] = lattice_json(ML.extended);
        j["pulled_characters"] = labeled_rows(ML.pulled_characters, ML.extended.row_labels);
        j["kernel_rank"] = ML.quotient.kernel_rank();
        j["cokernel_rank"] = ML.quotient.cokernel_rank();
        return j;
    }
    const LatticeMap L = build_rho(g);
    j = lattice_json(L);
    j["dim_G"] = L.cokernel_rank();
    return j;
}

Json cmd_ob(const GraphDocument& doc, const CliOptions& opts, int& code) {
    const Graph& g = doc.graph;
    const SectionData data = doc.sections.value_or(SectionData{});
    Json j;
    ObstructionClass ob;
    if (g.has_multinode()) {
        const MultinodeLattice ML = build_rho_multinode(g);
        ob = compute_ob_multinode(g, data, supplied_characters(doc, opts, ML.extended.row_labels));
    } else {
        ob = compute_ob(g, data, supplied_characters(doc, opts, t_labels(g)));
    }
    j["ob"] = class_json(ob);
    if (doc.relation_ghost && !g.has_multinode()) {
        const RelationCheck rc = relation_check(g, *doc.relation_ghost, data, ob.basis);
        j["relation"] = {{"ghost", *doc.relation_ghost},
                         {"ob_bar", class_json(rc.ob_bar)},
                         {"o_v0", class_json(rc.o)},
                         {"o_v0_inverse", class_json(rc.o_display)},
                         {"lattices_agree", rc.lattices_agree},
                         {"holds", rc.holds}};
        if (!rc.holds) code = kExitViolation;
    }
    if (opts.expect_trivial && !ob.is_trivial) code = kExitViolation;
    return j;
}

Json cmd_dims(const GraphDocument& doc, const CliOptions& opts, int&) {
    const Graph& g = doc.graph;
    const long long f = opts.real_dimensions ? 2 : 1;
    Json j;
    j["units"] = opts.real_dimensions ? "real" : "complex";
    bool covers = false;
    for (const auto& v : g.vertices) covers = covers || (v.cover_degree && *v.cover_degree > 1);
    if (!g.has_multinode()) {
        const StratumDims s = stratum_dim(g);
        j["expected_dim"] = f * s.d_log;
        j["rank_K"] = s.rank_k;
        j["stratum_dim"] = f * s.via_kernel;
        j["stratum_dim_via_components"] = f * s.via_components;
        j["dim_G"] = f * s.dim_g;
        j["tropical_feasible"] = s.tropical_feasible;
    }
    if (covers) {
        const CoverStratum c = cover_stratum_dim(g);
        Json per = Json::object();
        for (const auto& [v, d] : c.per_vertex) per[v] = f * d;
        j["cover_stratum"] = {{"dimension", f * c.dimension}, {"dim_G", f * c.dim_g}, {"per_vertex", per}};
    }
    const QLedger led = edge_ledger(g);
    Json by = Json::object();
    for (const auto& [k, v] : led.by_stratum) by[k] = {{"half_edges", v.first}, {"nodes", v.second}};
    j["ledger"] = {{"half_edges", led.e_vec}, {"nodes", led.e}, {"by_stratum", by}};
    j["Q"] = q_quantity(g);
    return j;
}

Json verdict_json(const PositivityVerdict& v) {
    Json j;
    j["nef"] = v.nef;
    j["semi_positive"] = v.semi_positive;
    j["positive"] = v.positive;
    j["strongly_semi_positive"] = v.strongly_semi_positive;
    j["strongly_positive"] = v.strongly_positive;
    j["strongly_semi_positive_strict"] = v.strongly_semi_positive_strict;
    j["strongly_positive_strict"] = v.strongly_positive_strict;
    j["exemption_matters"] = v.exemption_matters;
    j["enumeration_agrees"] = v.enumeration_agrees;
    j["defaults_applied"] = v.defaults_applied;
    Json w = Json::array();
    for (const auto& x : v.witnesses)
        w.push_back({{"condition", x.condition},
                     {"family", x.family},
                     {"stratum", stratum_to_json(x.stratum)},
                     {"multiple", x.multiple},
                     {"c1_log", x.c1_log},
                     {"ell", x.ell},
                     {"delta", x.delta},
                     {"detail", x.detail}});
    j["witnesses"] = std::move(w);
    return j;
}

Json cmd_positivity(const GraphDocument& doc, const CliOptions&, int& code) {
    if (!doc.profile) throw MissingDataError("the positivity command needs a profile", "profile");
    const PositivityVerdict v = classify_pair(*doc.profile);
    if (!v.enumeration_agrees) code = kExitViolation;
    return verdict_json(v);
}

Json stage_json(const RtStage& s) {
    Json mult = Json::object();
    for (const auto& [k, d] : s.multiplicity) mult[k] = d;
    Json by = Json::object();
    for (const auto& [k, v] : s.ledger.by_stratum) by[k] = {{"half_edges", v.first}, {"nodes", v.second}};
    return {{"name", s.name},
            {"graph", graph_to_json(s.graph)},
            {"Q", s.q},
            {"genus", s.genus},
            {"multiplicity", mult},
            {"ledger", {{"half_edges", s.ledger.e_vec}, {"nodes", s.ledger.e}, {"by_stratum", by}}}};
}

Json cmd_rt(const GraphDocument& doc, const CliOptions&, int& code) {
    const ReductionTrace t = rt_reduce(doc.graph);
    Json j;
    Json stages = Json::array();
    for (const auto& s : t.stages) stages.push_back(stage_json(s));
    j["stages"] = std::move(stages);
    j["red_input_to_prime"] = t.red_input_to_prime;
    j["red_prime_to_double"] = t.red_prime_to_double;
    Json gh = Json::array();
    for (const auto& r : t.ghost_collapses) gh.push_back({{"ghosts", r.ghosts}, {"multinode", r.multinode}, {"delta_Q", r.delta}});
    j["ghost_collapses"] = std::move(gh);
    Json cv = Json::array();
    for (const auto& r : t.covers)
        cv.push_back({{"vertex", r.vertex},
                      {"degree", r.degree},
                      {"marked_before", r.k_before},
                      {"nodal_before", r.ell_before},
                      {"marked_after", r.k_after},
                      {"nodal_after", r.ell_after},
                      {"delta_Q", r.delta},
                      {"d_fiber", r.d_fiber}});
    j["covers"] = std::move(cv);
    j["genus_rise"] = t.genus_rise;
    j["dim_fiber"] = t.dim_fiber;
    const EdgeInvariantReport e = verify_edge_invariant(t);
    Json per = Json::object();
    for (const auto& [k, v] : e.per_stratum) per[k] = {v.first, v.second};
    j["edge_invariant"] = {{"holds", e.holds}, {"failing_strata", e.failing_strata}, {"per_stratum", per}};
    const TraceChecks c = check_trace(t);
    j["checks"] = {{"multiplicity_conserved", c.multiplicity_conserved},
                   {"genus_preserved", c.genus_preserved},
                   {"ghost_q_identity", c.ghost_q_identity},
                   {"cover_q_identity", c.cover_q_identity},
                   {"failures", c.failures}};
    if (!e.holds || !c.failures.empty()) code = kExitViolation;
    if (doc.cluster) {
        const ClusterClassification cc =
            classify_cluster(doc.graph, std::set<std::string>(doc.cluster->vertices.begin(), doc.cluster->vertices.end()), doc.cluster->nef);
        j["cluster"] = {{"type", cc.type},
                        {"delta_plus", cc.delta_plus},
                        {"external_nodes", cc.external_nodes},
                        {"external_marks", cc.external_marks},
                        {"bound_ok", cc.bound_ok},
                        {"infinite_chain", cc.infinite_chain}};
        if (!cc.bound_ok && cc.type != "not-a-cluster") code = kExitViolation;
    }
    return j;
}

using Handler = Json (*)(const GraphDocument&, const CliOptions&, int&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
    static const std::vector<std::pair<std::string, Handler>> h = {
        {"validate", cmd_validate}, {"decorate", cmd_decorate}, {"tropical", cmd_tropical}, {"group", cmd_group},
        {"ob", cmd_ob},             {"dims", cmd_dims},         {"positivity", cmd_positivity}, {"rt", cmd_rt},
    };
    return h;
}

bool needs_rt(const Graph& g) {
    if (std::all_of(g.vertices.begin(), g.vertices.end(), [](const Vertex& v) { return v.kind == VertexKind::ghost; })) return false;
    for (const auto& v : g.vertices)
        if (v.kind == VertexKind::ghost || (v.cover_degree && *v.cover_degree > 1) || v.image_label) return true;
    return false;
}

Json error_json(const std::string& kind, const std::string& message, const std::string& path) {
    Json e = {{"kind", kind}, {"message", message}};
    if (!path.empty()) e["path"] = path;
    return {{"error", e}};
}

// Runs `fn`, mapping library errors to a JSON error object and an exit code.
template <class F>
Json guarded(F&& fn, int& code) {
    try {
        return fn();
    } catch (const StructuralError& e) {
        code = std::max(code, kExitInput);
        return error_json("structural", e.what(), e.path());
    } catch (const InputError& e) {
        code = std::max(code, kExitInput);
        return error_json("input", e.what(), e.path());
    } catch (const InternalError& e) {
        code = std::max(code, kExitViolation);
        return error_json("internal", e.what(), "");
    }
}

Json run_report(const GraphDocument& doc, const CliOptions& opts, int& code) {
    Json j;
    const Graph& g = doc.graph;
    if (g.vertices.empty() && doc.profile) {
        j["positivity"] = guarded([&] { return cmd_positivity(doc, opts, code); }, code);
        return j;
    }
    int vcode = kExitOk;
    j["validate"] = guarded([&] { return cmd_validate(doc, opts, vcode); }, vcode);
    code = std::max(code, vcode);
    auto add = [&](const char* name, Handler h) {
        int c = kExitOk;
        j[name] = guarded([&] { return h(doc, opts, c); }, c);
        code = std::max(code, c);
    };
    add("group", cmd_group);
    if (vcode == kExitOk && !g.has_multinode()) {
        add("tropical", cmd_tropical);
        add("dims", cmd_dims);
    }
    if (doc.sections) add("ob", cmd_ob);
    if (doc.profile) add("positivity", cmd_positivity);
    if (vcode == kExitOk && !g.has_multinode() && needs_rt(g)) add("rt", cmd_rt);
    return j;
}

}  // namespace

const std::vector<std::string>& cli_commands() {
    static const std::vector<std::string> c = {"validate", "decorate", "tropical", "group", "ob", "dims", "positivity", "rt", "report"};
    return c;
}

std::string resolve_input(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv("LOGMODULI_FIXTURES")) {
        const fs::path p = fs::path(dir) / path;
        if (fs::exists(p)) return p.string();
    }
    return path;
}

Json run_document(const std::string& command, const GraphDocument& doc, const CliOptions& opts, int& exit_code) {
    exit_code = kExitOk;
    Json body;
    if (command == "report") {
        body = run_report(doc, opts, exit_code);
    } else {
        Handler h = nullptr;
        for (const auto& [name, fn] : handlers())
            if (name == command) h = fn;
        if (!h) throw InputError("unknown command '" + command + "'");
        body = guarded(
            [&] {
                // Profile-only documents parse without vertices; only positivity accepts them.
                if (command != "positivity") check_structure(doc.graph);
                return h(doc, opts, exit_code);
            },
            exit_code);
    }
    return {{"command", command}, {"result", body}};
}

std::string render_table(const Json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& prefix) {
        if (j.is_object() && !j.empty()) {
            for (auto it = j.begin(); it != j.end(); ++it) walk(*it, prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (j.is_array() && !j.empty() && !std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); })) {
            for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], prefix + "[" + std::to_string(i) + "]");
        } else {
            rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
        }
    };
    walk(report, "");
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::ostringstream out;
    for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    return out.str();
}

RunResult run(const std::string& command, const std::vector<std::string>& inputs, const CliOptions& opts) {
    RunResult res;
    const auto& cmds = cli_commands();
    if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
        res.exit_code = kExitInput;
        res.diagnostics = "unknown command '" + command + "'";
        res.output = error_json("usage", res.diagnostics, "").dump(2) + "\n";
        return res;
    }
    if (opts.format != "json" && opts.format != "table") {
        res.exit_code = kExitInput;
        res.diagnostics = "unknown format '" + opts.format + "'";
        res.output = error_json("usage", res.diagnostics, "").dump(2) + "\n";
        return res;
    }
    auto one = [&](const std::string& input) -> std::pair<Json, int> {
        int code = kExitOk;
        Json out = guarded(
            [&] {
                const GraphDocument doc = load_document(resolve_input(input));
                return run_document(command, doc, opts, code);
            },
            code);
        return {out, code};
    };
    std::vector<std::pair<Json, int>> results(inputs.size());
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opts.jobs));
    for (std::size_t start = 0; start < inputs.size(); start += jobs) {
        std::vector<std::future<std::pair<Json, int>>> batch;
        for (std::size_t i = start; i < std::min(inputs.size(), start + jobs); ++i)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, one, inputs[i]));
        for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
    }
    Json report;
    if (inputs.size() == 1) {
        report = results.front().first;
    } else {
        report = Json::array();
        for (std::size_t i = 0; i < inputs.size(); ++i) report.push_back({{"input", inputs[i]}, {"report", results[i].first}});
    }
    for (const auto& [j, c] : results) res.exit_code = std::max(res.exit_code, c);
    res.output = opts.format == "json" ? report.dump(2) + "\n" : render_table(report);
    return res;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Exact combinatorics of decorated dual graphs for log maps"};
    CliOptions opts;
    std::string command;
    std::vector<std::string> inputs;
    std::string characters;
    long long bound = -1;
    app.add_option("command", command, "validate | decorate | tropical | group | ob | dims | positivity | rt | report")->required();
    app.add_option("inputs", inputs, "input JSON files")->required();
    app.add_option("--format", opts.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--characters", characters, "character rows for ob (JSON list of label -> exponent maps)");
    app.add_option("--bound", bound, "entry bound for decoration enumeration")->check(CLI::NonNegativeNumber);
    app.add_flag("--expect-trivial", opts.expect_trivial, "exit 1 when ob is not trivial");
    app.add_flag("--allow-multinode", opts.allow_multinode, "accept multi-node edges in validate");
    app.add_flag("--real", opts.real_dimensions, "report real dimensions");
    app.add_option("--jobs", opts.jobs, "parallel jobs across input files")->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    if (!characters.empty()) opts.characters_path = characters;
    if (bound >= 0) opts.bound = bound;
    const RunResult r = run(command, inputs, opts);
    std::cout << r.output;
    if (!r.diagnostics.empty()) std::cerr << r.diagnostics << '\n';
    return r.exit_code;
}

}  // namespace logmoduli
