#include "logmoduli/json_io.hpp"

#include "logmoduli/errors.hpp"
#include "logmoduli/numeric.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace logmoduli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) throw InputError("expected an object", path.empty() ? "$" : path);
}

void require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError("expected an array", path);
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw InputError("unknown key '" + it.key() + "'", path.empty() ? "$" : path);
    }
}

const Json& member(const Json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing required key '") + key + "'", path.empty() ? "$" : path);
    return *it;
}

long long as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError("expected an integer", path);
    return j.get<long long>();
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InputError("expected a string", path);
    return j.get<std::string>();
}

std::string as_token(const Json& j, const std::string& path) {
    std::string s = as_string(j, path);
    if (s.empty()) throw InputError("identifiers must be non-empty", path);
    return s;
}

bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw InputError("expected a boolean", path);
    return j.get<bool>();
}

std::optional<std::string> opt_label(const Json& j, const std::string& path) {
    if (j.is_null()) return std::nullopt;
    return as_token(j, path);
}

std::vector<long long> int_list(const Json& j, const std::string& path) {
    require_array(j, path);
    std::vector<long long> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], at_index(path, i)));
    return out;
}

Stratum parse_stratum(const Json& j, int N, const std::string& path) {
    Stratum s;
    for (long long x : int_list(j, path)) {
        if (x < 1 || x > N) throw InputError("divisor index " + std::to_string(x) + " out of range 1.." + std::to_string(N), path);
        s.push_back(static_cast<int>(x - 1));
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("repeated divisor index", path);
    return s;
}

Json opt_to_json(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

Vertex parse_vertex(const Json& j, int N, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"id", "genus", "stratum", "c1_log", "dot", "kind", "image_label", "cover_degree", "base"});
    Vertex v;
    v.id = as_token(member(j, "id", path), join(path, "id"));
    if (j.contains("genus")) {
        const long long g = as_int(j["genus"], join(path, "genus"));
        if (g < 0) throw InputError("genus must be non-negative", join(path, "genus"));
        v.genus = static_cast<int>(g);
    }
    if (j.contains("stratum")) v.stratum = parse_stratum(j["stratum"], N, join(path, "stratum"));
    if (j.contains("c1_log")) v.c1_log = as_int(j["c1_log"], join(path, "c1_log"));
    v.dot = j.contains("dot") ? int_list(j["dot"], join(path, "dot")) : std::vector<long long>(static_cast<std::size_t>(N), 0);
    if (j.contains("kind")) v.kind = parse_vertex_kind(as_string(j["kind"], join(path, "kind")), join(path, "kind"));
    if (j.contains("image_label")) v.image_label = opt_label(j["image_label"], join(path, "image_label"));
    if (j.contains("cover_degree")) {
        const long long d = as_int(j["cover_degree"], join(path, "cover_degree"));
        if (d < 1) throw InputError("cover_degree must be positive", join(path, "cover_degree"));
        v.cover_degree = static_cast<int>(d);
    }
    if (j.contains("base")) {
        const std::string bp = join(path, "base");
        require_object(j["base"], bp);
        check_keys(j["base"], bp, {"c1_log", "dot"});
        Pairing p;
        p.c1_log = as_int(member(j["base"], "c1_log", bp), join(bp, "c1_log"));
        p.dot = int_list(member(j["base"], "dot", bp), join(bp, "dot"));
        if (static_cast<int>(p.dot.size()) != N) throw InputError("dot must have length N", join(bp, "dot"));
        v.base = p;
    }
    return v;
}

Edge parse_edge(const Json& j, int N, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"id", "ends", "stratum", "contact", "labels", "branches"});
    Edge e;
    e.id = as_token(member(j, "id", path), join(path, "id"));
    e.stratum = parse_stratum(member(j, "stratum", path), N, join(path, "stratum"));
    if (j.contains("branches")) {
        if (j.contains("ends") || j.contains("contact") || j.contains("labels"))
            throw InputError("a multi-node carries branches instead of ends, contact and labels", path);
        const std::string bp = join(path, "branches");
        require_array(j["branches"], bp);
        if (j["branches"].empty()) throw InputError("a multi-node needs branches", bp);
        for (std::size_t i = 0; i < j["branches"].size(); ++i) {
            const Json& b = j["branches"][i];
            const std::string p = at_index(bp, i);
            require_object(b, p);
            check_keys(b, p, {"edge", "vertex", "contact", "outward", "label"});
            Branch br;
            br.edge = as_token(member(b, "edge", p), join(p, "edge"));
            br.vertex = as_token(member(b, "vertex", p), join(p, "vertex"));
            br.contact = int_list(member(b, "contact", p), join(p, "contact"));
            if (b.contains("outward")) br.outward = as_bool(b["outward"], join(p, "outward"));
            if (b.contains("label")) br.label = opt_label(b["label"], join(p, "label"));
            e.branches.push_back(std::move(br));
        }
        return e;
    }
    const Json& ends = member(j, "ends", path);
    require_array(ends, join(path, "ends"));
    if (ends.size() != 2) throw InputError("an ordinary node has exactly two ends", join(path, "ends"));
    e.ends = {as_token(ends[0], join(path, "ends[0]")), as_token(ends[1], join(path, "ends[1]"))};
    e.contact = int_list(member(j, "contact", path), join(path, "contact"));
    if (j.contains("labels")) {
        const std::string lp = join(path, "labels");
        require_array(j["labels"], lp);
        if (j["labels"].size() != 2) throw InputError("labels has one entry per end", lp);
        e.labels = {opt_label(j["labels"][0], at_index(lp, 0)), opt_label(j["labels"][1], at_index(lp, 1))};
    }
    return e;
}

Leg parse_leg(const Json& j, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"id", "vertex", "contact", "point", "label"});
    Leg l;
    l.id = as_token(member(j, "id", path), join(path, "id"));
    l.vertex = as_token(member(j, "vertex", path), join(path, "vertex"));
    l.contact = int_list(member(j, "contact", path), join(path, "contact"));
    if (j.contains("point") && !j["point"].is_null()) l.point = parse_p1(as_string(j["point"], join(path, "point")), join(path, "point"));
    if (j.contains("label")) l.label = opt_label(j["label"], join(path, "label"));
    return l;
}

}  // namespace

Json stratum_to_json(const Stratum& s) {
    Json a = Json::array();
    for (int i : s) a.push_back(i + 1);
    return a;
}

Json contact_to_json(const ContactVector& c) {
    Json a = Json::array();
    for (long long x : c) a.push_back(x);
    return a;
}

Graph parse_graph(const Json& j, const std::string& path) {
    require_object(j, path);
    Graph g;
    const long long N = as_int(member(j, "N", path), join(path, "N"));
    const long long n = as_int(member(j, "n", path), join(path, "n"));
    if (N < 0) throw InputError("N must be non-negative", join(path, "N"));
    if (n < 1) throw InputError("n must be positive", join(path, "n"));
    g.N = static_cast<int>(N);
    g.n = static_cast<int>(n);
    if (j.contains("genus")) g.declared_genus = static_cast<int>(as_int(j["genus"], join(path, "genus")));
    if (j.contains("vertices")) {
        const Json& vs = j["vertices"];
        require_array(vs, join(path, "vertices"));
        for (std::size_t i = 0; i < vs.size(); ++i) g.vertices.push_back(parse_vertex(vs[i], g.N, at_index(join(path, "vertices"), i)));
    }
    if (j.contains("edges")) {
        require_array(j["edges"], join(path, "edges"));
        for (std::size_t i = 0; i < j["edges"].size(); ++i)
            g.edges.push_back(parse_edge(j["edges"][i], g.N, at_index(join(path, "edges"), i)));
    }
    if (j.contains("legs")) {
        require_array(j["legs"], join(path, "legs"));
        for (std::size_t i = 0; i < j["legs"].size(); ++i) g.legs.push_back(parse_leg(j["legs"][i], at_index(join(path, "legs"), i)));
    }
    // A document without components is still parsed, so that profile-only inputs work; validate reports it.
    if (!g.vertices.empty()) check_structure(g);
    canonicalize(g);
    return g;
}

Json graph_to_json(const Graph& g) {
    Json j;
    j["N"] = g.N;
    j["n"] = g.n;
    if (g.declared_genus) j["genus"] = *g.declared_genus;
    Json vs = Json::array();
    for (const auto& v : g.vertices) {
        Json o;
        o["id"] = v.id;
        o["genus"] = v.genus;
        o["stratum"] = stratum_to_json(v.stratum);
        o["c1_log"] = v.c1_log;
        o["dot"] = contact_to_json(v.dot);
        o["kind"] = to_string(v.kind);
        if (v.image_label) o["image_label"] = *v.image_label;
        if (v.cover_degree) o["cover_degree"] = *v.cover_degree;
        if (v.base) o["base"] = {{"c1_log", v.base->c1_log}, {"dot", contact_to_json(v.base->dot)}};
        vs.push_back(std::move(o));
    }
    j["vertices"] = std::move(vs);
    Json es = Json::array();
    for (const auto& e : g.edges) {
        Json o;
        o["id"] = e.id;
        o["stratum"] = stratum_to_json(e.stratum);
        if (e.is_multi()) {
            Json bs = Json::array();
            for (const auto& b : e.branches) {
                Json bo;
                bo["edge"] = b.edge;
                bo["vertex"] = b.vertex;
                bo["contact"] = contact_to_json(b.contact);
                bo["outward"] = b.outward;
                if (b.label) bo["label"] = *b.label;
                bs.push_back(std::move(bo));
            }
            o["branches"] = std::move(bs);
        } else {
            o["ends"] = {e.ends[0], e.ends[1]};
            o["contact"] = contact_to_json(e.contact);
            if (e.labels[0] || e.labels[1]) o["labels"] = {opt_to_json(e.labels[0]), opt_to_json(e.labels[1])};
        }
        es.push_back(std::move(o));
    }
    j["edges"] = std::move(es);
    Json ls = Json::array();
    for (const auto& l : g.legs) {
        Json o;
        o["id"] = l.id;
        o["vertex"] = l.vertex;
        o["contact"] = contact_to_json(l.contact);
        if (l.point) o["point"] = to_string(*l.point);
        if (l.label) o["label"] = *l.label;
        ls.push_back(std::move(o));
    }
    j["legs"] = std::move(ls);
    return j;
}

SectionData parse_sections(const Json& j, int N, const std::string& path) {
    require_object(j, path);
    check_keys(j, path, {"points", "scales", "eta"});
    SectionData s;
    if (j.contains("points")) {
        const std::string pp = join(path, "points");
        require_object(j["points"], pp);
        for (auto it = j["points"].begin(); it != j["points"].end(); ++it) {
            const std::string vp = join(pp, it.key());
            require_object(*it, vp);
            for (auto jt = it->begin(); jt != it->end(); ++jt)
                s.points[it.key()][jt.key()] = parse_p1(as_string(*jt, join(vp, jt.key())), join(vp, jt.key()));
        }
    }
    if (j.contains("scales")) {
        const std::string sp = join(path, "scales");
        require_object(j["scales"], sp);
        for (auto it = j["scales"].begin(); it != j["scales"].end(); ++it) {
            const std::string vp = join(sp, it.key());
            require_object(*it, vp);
            for (auto jt = it->begin(); jt != it->end(); ++jt) {
                const std::string fp = join(vp, jt.key());
                long long i = 0;
                try {
                    std::size_t used = 0;
                    i = std::stoll(jt.key(), &used);
                    if (used != jt.key().size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw InputError("scale keys are 1-based divisor indices", fp);
                }
                if (i < 1 || i > N) throw InputError("divisor index out of range", fp);
                s.scales[it.key()][static_cast<int>(i - 1)] = parse_gaussian(as_string(*jt, fp), fp);
            }
        }
    }
    if (j.contains("eta")) {
        const std::string ep = join(path, "eta");
        require_array(j["eta"], ep);
        for (std::size_t k = 0; k < j["eta"].size(); ++k) {
            const Json& o = j["eta"][k];
            const std::string p = at_index(ep, k);
            require_object(o, p);
            check_keys(o, p, {"edge", "vertex", "i", "value"});
            const long long i = as_int(member(o, "i", p), join(p, "i"));
            if (i < 1 || i > N) throw InputError("divisor index out of range", join(p, "i"));
            auto key = std::make_tuple(as_token(member(o, "edge", p), join(p, "edge")), as_token(member(o, "vertex", p), join(p, "vertex")),
                                       static_cast<int>(i - 1));
            if (s.eta.count(key)) throw InputError("duplicate eta entry", p);
            s.eta[key] = parse_gaussian(as_string(member(o, "value", p), join(p, "value")), join(p, "value"));
        }
    }
    return s;
}

Json sections_to_json(const SectionData& s) {
    Json j = Json::object();
    if (!s.points.empty()) {
        Json p = Json::object();
        for (const auto& [v, pts] : s.points)
            for (const auto& [id, z] : pts) p[v][id] = to_string(z);
        j["points"] = std::move(p);
    }
    if (!s.scales.empty()) {
        Json p = Json::object();
        for (const auto& [v, sc] : s.scales)
            for (const auto& [i, z] : sc) p[v][std::to_string(i + 1)] = to_string(z);
        j["scales"] = std::move(p);
    }
    if (!s.eta.empty()) {
        std::vector<std::tuple<std::string, std::string, int>> keys;
        for (const auto& [k, v] : s.eta) keys.push_back(k);
        std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
            if (std::get<0>(a) != std::get<0>(b)) return natural_less(std::get<0>(a), std::get<0>(b));
            if (std::get<1>(a) != std::get<1>(b)) return natural_less(std::get<1>(a), std::get<1>(b));
            return std::get<2>(a) < std::get<2>(b);
        });
        Json a = Json::array();
        for (const auto& k : keys)
            a.push_back({{"edge", std::get<0>(k)}, {"vertex", std::get<1>(k)}, {"i", std::get<2>(k) + 1}, {"value", to_string(s.eta.at(k))}});
        j["eta"] = std::move(a);
    }
    return j;
}

GeometryProfile parse_profile(const Json& j, const std::string& path) {
    require_object(j, path);
    if (j.contains("hyperplanes")) {
        check_keys(j, path, {"hyperplanes"});
        const std::string hp = join(path, "hyperplanes");
        require_object(j["hyperplanes"], hp);
        check_keys(j["hyperplanes"], hp, {"n", "d"});
        return hyperplane_profile(static_cast<int>(as_int(member(j["hyperplanes"], "n", hp), join(hp, "n"))),
                                  static_cast<int>(as_int(member(j["hyperplanes"], "d", hp), join(hp, "d"))));
    }
    check_keys(j, path, {"n", "N", "families"});
    GeometryProfile p;
    p.n = static_cast<int>(as_int(member(j, "n", path), join(path, "n")));
    p.N = static_cast<int>(as_int(member(j, "N", path), join(path, "N")));
    const std::string fp = join(path, "families");
    const Json& fs = member(j, "families", path);
    require_array(fs, fp);
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const Json& o = fs[k];
        const std::string p0 = at_index(fp, k);
        require_object(o, p0);
        check_keys(o, p0, {"name", "stratum", "c1_tx", "dot", "effective", "multiples", "delta"});
        CurveFamily f;
        f.name = as_token(member(o, "name", p0), join(p0, "name"));
        if (o.contains("stratum")) f.stratum = parse_stratum(o["stratum"], p.N, join(p0, "stratum"));
        f.c1_tx = as_int(member(o, "c1_tx", p0), join(p0, "c1_tx"));
        f.dot = int_list(member(o, "dot", p0), join(p0, "dot"));
        if (o.contains("effective")) f.effective = as_bool(o["effective"], join(p0, "effective"));
        if (o.contains("multiples")) {
            const Json& m = o["multiples"];
            if (m.is_string()) {
                if (m.get<std::string>() != "all") throw InputError("multiples is \"all\" or a list of positive integers", join(p0, "multiples"));
            } else {
                f.all_multiples = false;
                f.multiples = int_list(m, join(p0, "multiples"));
            }
        }
        if (o.contains("delta")) f.delta = as_int(o["delta"], join(p0, "delta"));
        p.families.push_back(std::move(f));
    }
    return p;
}

Json profile_to_json(const GeometryProfile& p) {
    Json j;
    j["n"] = p.n;
    j["N"] = p.N;
    Json fs = Json::array();
    for (const auto& f : p.families) {
        Json o;
        o["name"] = f.name;
        o["stratum"] = stratum_to_json(f.stratum);
        o["c1_tx"] = f.c1_tx;
        o["dot"] = contact_to_json(f.dot);
        o["effective"] = f.effective;
        if (f.all_multiples)
            o["multiples"] = "all";
        else
            o["multiples"] = contact_to_json(f.multiples);
        if (f.delta) o["delta"] = *f.delta;
        fs.push_back(std::move(o));
    }
    j["families"] = std::move(fs);
    return j;
}

CharacterRows parse_characters(const Json& j, const std::string& path) {
    require_array(j, path);
    CharacterRows rows;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = at_index(path, k);
        require_object(j[k], p);
        std::map<std::string, long long> row;
        for (auto it = j[k].begin(); it != j[k].end(); ++it) row[it.key()] = as_int(*it, join(p, it.key()));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json characters_to_json(const CharacterRows& rows) {
    Json a = Json::array();
    for (const auto& r : rows) {
        Json o = Json::object();
        for (const auto& [k, v] : r) o[k] = v;
        a.push_back(std::move(o));
    }
    return a;
}

GraphDocument parse_document(const Json& j) {
    require_object(j, "");
    check_keys(j, "", {"schema_version", "N", "n", "genus", "vertices", "edges", "legs", "sections", "profile", "characters",
                       "relation_ghost", "cluster", "description"});
    GraphDocument doc;
    if (j.contains("schema_version")) {
        doc.schema_version = as_string(j["schema_version"], "schema_version");
        if (doc.schema_version != kSchemaVersion)
            throw InputError("unsupported schema_version '" + doc.schema_version + "'", "schema_version");
    }
    if (j.contains("description")) doc.description = as_string(j["description"], "description");
    Json gj = Json::object();
    for (const char* k : {"N", "n", "genus", "vertices", "edges", "legs"})
        if (j.contains(k)) gj[k] = j[k];
    doc.graph = parse_graph(gj);
    if (j.contains("sections")) doc.sections = parse_sections(j["sections"], doc.graph.N);
    if (j.contains("profile")) doc.profile = parse_profile(j["profile"]);
    if (j.contains("characters")) doc.characters = parse_characters(j["characters"]);
    if (j.contains("relation_ghost")) doc.relation_ghost = as_token(j["relation_ghost"], "relation_ghost");
    if (j.contains("cluster")) {
        require_object(j["cluster"], "cluster");
        check_keys(j["cluster"], "cluster", {"vertices", "nef"});
        ClusterRequest c;
        const Json& vs = member(j["cluster"], "vertices", "cluster");
        require_array(vs, "cluster.vertices");
        for (std::size_t i = 0; i < vs.size(); ++i) c.vertices.push_back(as_token(vs[i], at_index("cluster.vertices", i)));
        std::sort(c.vertices.begin(), c.vertices.end(), [](const std::string& a, const std::string& b) { return natural_less(a, b); });
        if (j["cluster"].contains("nef")) c.nef = as_bool(j["cluster"]["nef"], "cluster.nef");
        doc.cluster = std::move(c);
    }
    return doc;
}

Json to_json(const GraphDocument& doc) {
    Json j = graph_to_json(doc.graph);
    j["schema_version"] = doc.schema_version;
    if (doc.description) j["description"] = *doc.description;
    if (doc.sections) j["sections"] = sections_to_json(*doc.sections);
    if (doc.profile) j["profile"] = profile_to_json(*doc.profile);
    if (doc.characters) j["characters"] = characters_to_json(*doc.characters);
    if (doc.relation_ghost) j["relation_ghost"] = *doc.relation_ghost;
    if (doc.cluster) {
        Json vs = Json::array();
        for (const auto& v : doc.cluster->vertices) vs.push_back(v);
        j["cluster"] = {{"vertices", vs}, {"nef", doc.cluster->nef}};
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

GraphDocument load_document(const std::string& path) { return parse_document(load_json_file(path)); }

}  // namespace logmoduli
