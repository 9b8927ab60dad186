#include "minuscy/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "minuscy/oracles.hpp"
#include "minuscy/replay.hpp"
#include "minuscy/smsenum.hpp"

namespace minuscy {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Options {
    int rank = 3;
    int weight = 1;
    int prime = 101;
    std::string collection;
    std::string out;
    std::string format = "json";
    unsigned long long seed = 7;
    long budget = 2000;
    int workers = 1;
    bool force = false;
    std::vector<std::string> objects;  // positional object names
    std::string example;
    bool axioms = false, serre = false, mutation_pair = false, r_filtration = false, bijection = false;
    int basis = 0;
};

// Accepts "x4" or "4", both 1-based.
int parse_object(const OrbitCategory& c, const std::string& text) {
    std::string t = text;
    if (!t.empty() && (t[0] == 'x' || t[0] == 'X')) t = t.substr(1);
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit))
        throw Error(ErrorCode::Usage, "cannot parse object '" + text + "'");
    int id = std::stoi(t) - 1;
    if (id < 0 || id >= c.size())
        throw Error(ErrorCode::Usage, "object '" + text + "' out of range 1.." + std::to_string(c.size()));
    return id;
}

Collection parse_collection(const OrbitCategory& c, const std::string& text) {
    Collection s;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) s.push_back(parse_object(c, item));
    return normalize_collection(s, c.size());
}

json names(const OrbitCategory& c, const std::vector<int>& ids) {
    json a = json::array();
    for (int x : ids) a.push_back(c.name(x));
    return a;
}

json object_json(const OrbitCategory& c, const ObjectVector& v) { return names(c, to_summands(v)); }

json morphism_json(const OrbitCategory& c, const OrbitMorphism& f) {
    json terms = json::array();
    for (size_t t = 0; t < f.tgt.size(); ++t)
        for (size_t s = 0; s < f.src.size(); ++s)
            for (size_t k = 0; k < f.coef[t][s].size(); ++k)
                if (f.coef[t][s][k])
                    terms.push_back({{"from", c.name(f.src[s])}, {"from_slot", s}, {"to", c.name(f.tgt[t])},
                                     {"to_slot", t}, {"basis", k}, {"coef", f.coef[t][s][k]}});
    return {{"source", names(c, f.src)}, {"target", names(c, f.tgt)}, {"terms", terms}};
}

json report_json(const Report& r) {
    return {{"name", r.name}, {"ok", r.ok},       {"checks", r.checks},
            {"skipped", r.skipped}, {"violations", r.violations}, {"note", r.note}};
}

std::string snapshot_file(const std::string& dir, int n, int w, int p) {
    return (std::filesystem::path(dir) /
            ("A" + std::to_string(n) + "-w" + std::to_string(w) + "-p" + std::to_string(p) + ".json"))
        .string();
}

// Loads from the MINUSCY_CACHE directory when present, otherwise builds and
// stores there.
OrbitCategory load_category(const Options& o, std::ostream& err) {
    const char* dir = std::getenv("MINUSCY_CACHE");
    if (!dir || !*dir) return OrbitCategory::build(o.rank, o.weight, o.prime);
    std::string path = snapshot_file(dir, o.rank, o.weight, o.prime);
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            return OrbitCategory::from_json(buf.str());
        } catch (const Error& e) {
            err << "cache entry " << path << " rejected (" << error_code_name(e.code()) << "), rebuilding\n";
        }
    }
    OrbitCategory c = OrbitCategory::build(o.rank, o.weight, o.prime);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream f(path);
    if (f) f << c.to_json();
    return c;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::Usage, "cannot write " + o.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const OrbitCategory& c) {
    return {{"rank", c.rank()}, {"cy_weight", c.weight()}, {"prime", c.prime()}};
}

// Layout hints in the universal cover ZA_m of each component: BFS along
// arrows from a boundary vertex placed at (0, 0). A successor equal to the
// inverse translate of the parent keeps the parent's row; the other one sits
// on the opposite side. Columns are therefore positions along τ-orbits.
std::map<int, std::pair<int, int>> layout(const ReducedCategory& r, const std::vector<std::pair<int, int>>& arrows) {
    std::map<int, std::vector<int>> succ;
    for (auto [a, b] : arrows) succ[a].push_back(b);
    auto tau_inv = [&](int x) { return r.shift_power(x, r.weight() + 1); };
    std::map<int, std::pair<int, int>> pos;
    int base = 0;  // components are stacked vertically
    for (const auto& comp : r.components()) {
        int top = base;
        int start = comp[0];
        for (int x : comp)
            if (succ[x].size() == 1) {
                start = x;
                break;
            }
        if (succ[start].empty()) {
            // A_1 component: a single τ-orbit.
            int x = start;
            for (int col = 0; !pos.count(x); col += 2, x = tau_inv(x)) pos[x] = {col, base};
            base += 2;
            continue;
        }
        std::map<int, int> parent;
        std::deque<int> q{start};
        pos[start] = {0, base};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            auto [col, row] = pos[v];
            for (int u : succ[v]) {
                if (pos.count(u)) continue;
                int urow = row + 1;
                if (parent.count(v)) {
                    int prow = pos[parent[v]].second;
                    urow = u == tau_inv(parent[v]) ? prow : 2 * row - prow;
                }
                pos[u] = {col + 1, urow};
                parent[u] = v;
                q.push_back(u);
            }
        }
        for (int x : comp) top = std::max(top, pos[x].second);
        base = top + 2;
    }
    return pos;
}

int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    if (!o.out.empty()) {
        emit(o, c.to_json(), out);
    }
    json j = header(c);
    j["indecomposables"] = c.size();
    json objs = json::array();
    for (int x = 0; x < c.size(); ++x) {
        const Stalk& s = c.rep(x);
        objs.push_back({{"name", c.name(x)},
                        {"coord", {s.shift, s.iv.a, s.iv.b}},
                        {"shift", c.name(c.sigma(x))},
                        {"tau", c.name(c.tau(x))},
                        {"serre", c.name(c.serre(x))}});
    }
    j["objects"] = objs;
    j["cartan_certified"] = c.cartan_certified();
    j["max_hom_dim"] = c.max_hom_dim();
    out << dump(j);
    return kExitOk;
}

int cmd_hom(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    json j = header(c);
    if (o.objects.empty()) {
        j["dims"] = c.cartan();
    } else {
        if (o.objects.size() != 2) throw Error(ErrorCode::Usage, "hom takes zero or two objects");
        int x = parse_object(c, o.objects[0]), y = parse_object(c, o.objects[1]);
        json basis = json::array();
        for (const auto& e : c.hom_basis(x, y)) basis.push_back({{"orbit_degree", e.degree}, {"degree", e.rdeg}});
        j["source"] = c.name(x);
        j["target"] = c.name(y);
        j["dim"] = c.hom_dim(x, y);
        j["basis"] = basis;
    }
    emit(o, dump(j), out);
    return kExitOk;
}

int cmd_cone(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    if (o.objects.size() != 2) throw Error(ErrorCode::Usage, "cone takes a source and a target object");
    int x = parse_object(c, o.objects[0]), y = parse_object(c, o.objects[1]);
    if (c.hom_dim(x, y) == 0)
        throw Error(ErrorCode::Usage, "Hom(" + c.name(x) + ", " + c.name(y) + ") is zero");
    if (o.basis < 0 || o.basis >= c.hom_dim(x, y))
        throw Error(ErrorCode::Usage, "basis index out of range 0.." + std::to_string(c.hom_dim(x, y) - 1));
    OrbitMorphism f = c.basis_morphism(x, y, o.basis);
    TriangleRecord t = c.cone(f);
    ObjectVector oracle = interval_cone(c, x, y, o.basis);
    json j = header(c);
    j["morphism"] = morphism_json(c, f);
    j["cone"] = names(c, t.c);
    j["provenance"] = t.provenance;
    j["g"] = morphism_json(c, t.g);
    if (!t.symbolic) j["h"] = morphism_json(c, t.h);
    j["interval_oracle"] = object_json(c, oracle);
    j["oracle_agrees"] = oracle == to_vector(c, t.c);
    if (c.cartan_certified()) j["fingerprint_cone"] = object_json(c, c.cone_fingerprint(f));
    emit(o, dump(j), out);
    return oracle == to_vector(c, t.c) ? kExitOk : kExitFailed;
}

int cmd_closure(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    ClosureTable t(c, s);
    json j = header(c);
    j["collection"] = names(c, s);
    json members = json::array();
    for (int x : t.members()) members.push_back({{"name", c.name(x)}, {"length", t.s_length(to_vector(c, {x}))}});
    j["members"] = members;
    j["max_length"] = t.max_length();
    emit(o, dump(j), out);
    return kExitOk;
}

int cmd_approx(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    if (o.objects.size() != 1) throw Error(ErrorCode::Usage, "approx takes one object");
    int d = parse_object(c, o.objects[0]);
    ClosureTable t(c, s);
    json j = header(c);
    j["collection"] = names(c, s);
    j["object"] = c.name(d);
    TriangleRecord r = min_right_approx(c, t.members(), {d});
    TriangleRecord l = min_left_approx(c, t.members(), {d});
    j["right"] = {{"approximation", names(c, r.x)}, {"cone", names(c, r.c)}, {"f", morphism_json(c, r.f)}};
    j["left"] = {{"approximation", names(c, l.y)}, {"cone", names(c, l.c)}, {"f", morphism_json(c, l.f)}};
    emit(o, dump(j), out);
    return kExitOk;
}

int cmd_mutate(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    if (o.objects.size() != 1) throw Error(ErrorCode::Usage, "mutate takes one object");
    int d = parse_object(c, o.objects[0]);
    ClosureTable t(c, s);
    json j = header(c);
    j["collection"] = names(c, s);
    j["object"] = c.name(d);
    j["right_mutation"] = object_json(c, right_mutation(c, t, d));
    j["left_mutation"] = object_json(c, left_mutation(c, t, d));
    emit(o, dump(j), out);
    return kExitOk;
}

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    auto r = ReducedCategory::reduce(c, s, o.weight);
    json j = header(c);
    j["collection"] = names(c, s);
    j["closure"] = names(c, r.closure().members());
    j["objects"] = names(c, r.objects());
    j["size"] = r.size();
    json shift = json::object();
    for (int x : r.objects()) shift[c.name(x)] = c.name(r.shift(x));
    j["shift"] = shift;
    json comps = json::array();
    for (const auto& k : r.components()) comps.push_back(names(c, k));
    j["components"] = comps;
    json arrows = json::array();
    for (auto [a, b] : r.irreducible_maps()) arrows.push_back({c.name(a), c.name(b)});
    j["irreducible_maps"] = arrows;
    emit(o, dump(j), out);
    return kExitOk;
}

json enumeration_json(const OrbitCategory& c, const EnumerationReport& e) {
    json systems = json::array();
    for (const auto& s : e.systems) systems.push_back(names(c, s));
    return {{"objects", e.size},           {"cy_weight", e.w},  {"orthogonal_collections", e.orthogonal},
            {"riedtmann_configurations", e.riedtmann}, {"sms", e.sms}, {"systems", systems},
            {"audited", e.audited},        {"audit_failures", e.audit_failures}};
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    EnumerationOptions opt;
    opt.workers = o.workers;
    opt.force = o.force;
    auto start = Clock::now();
    EnumerationReport e;
    json j = header(c);
    j["collection"] = names(c, s);
    if (s.empty()) {
        e = enumerate_sms(c, o.weight, opt);
        j["category"] = "D";
    } else {
        e = enumerate_sms(ReducedCategory::reduce(c, s, o.weight), opt);
        j["category"] = "Z";
    }
    j["seed"] = o.seed;
    j["report"] = enumeration_json(c, e);
    err << "enumeration took " << std::chrono::duration<double>(Clock::now() - start).count() << " s\n";
    emit(o, dump(j), out);
    return e.audit_failures.empty() ? kExitOk : kExitFailed;
}

int cmd_verify(Options o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    if (!(o.axioms || o.serre || o.mutation_pair || o.r_filtration || o.bijection))
        o.axioms = o.serre = o.mutation_pair = o.r_filtration = o.bijection = true;
    auto r = ReducedCategory::reduce(c, s, o.weight);
    std::vector<Report> reps;
    if (o.mutation_pair)
        for (auto& rep : verify_structure(r)) reps.push_back(rep);
    if (o.axioms) {
        for (auto& rep : verify_pretriangulated(r)) reps.push_back(rep);
        reps.push_back(verify_octahedral(r, 12, o.budget, o.seed));
    }
    if (o.serre) reps.push_back(serre_in_z(r));
    EnumerationOptions opt;
    opt.workers = o.workers;
    opt.force = o.force;
    if (o.r_filtration) {
        Report rep("R-filtration");
        EnumerationOptions dopt = opt;
        dopt.base = s;
        for (const auto& t : enumerate_sms(c, o.weight, dopt).systems) {
            ++rep.checks;
            auto cert = r_filtration_check(r, t);
            if (!cert.ok) rep.fail(format_collection(c, t) + ": " + cert.detail);
        }
        reps.push_back(rep);
    }
    if (o.bijection) reps.push_back(verify_bijection(r, opt).report);
    json j = header(c);
    j["collection"] = names(c, s);
    j["z_size"] = r.size();
    j["seed"] = o.seed;
    j["budget"] = o.budget;
    json arr = json::array();
    bool ok = true;
    for (const auto& rep : reps) {
        arr.push_back(report_json(rep));
        ok = ok && rep.ok;
    }
    j["reports"] = arr;
    j["ok"] = ok;
    emit(o, dump(j), out);
    return ok ? kExitOk : kExitFailed;
}

int cmd_replay(const Options& o, std::ostream& out, std::ostream& err) {
    ReplayResult r;
    if (o.example == "example-7.1")
        r = replay_rank_five_weight_two(o.prime);
    else if (o.example == "example-7.2")
        r = replay_rank_three_weight_one(o.prime);
    else
        throw Error(ErrorCode::Usage, "unknown example '" + o.example + "'");
    json checks = json::array();
    for (const auto& ch : r.checks) {
        // Timing details stay out of the artifact.
        bool timing = ch.name.rfind("runtime", 0) == 0;
        checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", timing ? "" : ch.detail}});
    }
    json labels = json::object();
    for (const auto& [label, id] : r.labels) labels[label] = "x" + std::to_string(id + 1);
    json j = {{"example", r.example}, {"prime", o.prime}, {"checks", checks}, {"labels", labels}, {"ok", r.ok()}};
    err << r.example << " took " << r.seconds << " s\n";
    emit(o, dump(j), out);
    return r.ok() ? kExitOk : kExitFailed;
}

int cmd_export_ar(const Options& o, std::ostream& out, std::ostream& err) {
    OrbitCategory c = load_category(o, err);
    Collection s = parse_collection(c, o.collection);
    auto r = ReducedCategory::reduce(c, s, o.weight);
    auto arrows = r.irreducible_maps();
    auto comps = r.components();
    auto pos = layout(r, arrows);
    std::map<int, int> comp_of;
    for (size_t k = 0; k < comps.size(); ++k)
        for (int x : comps[k]) comp_of[x] = static_cast<int>(k);
    if (o.format == "dot") {
        std::ostringstream d;
        d << "digraph AR {\n  node [shape=plaintext];\n";
        for (int x : r.objects())
            d << "  " << c.name(x) << " [label=\"" << c.name(x) << "\", pos=\"" << pos[x].first << ","
              << pos[x].second << "!\", component=" << comp_of[x] << "];\n";
        for (auto [a, b] : arrows) d << "  " << c.name(a) << " -> " << c.name(b) << ";\n";
        d << "}\n";
        emit(o, d.str(), out);
        return kExitOk;
    }
    if (o.format != "json") throw Error(ErrorCode::Usage, "format must be json or dot");
    json j = header(c);
    j["collection"] = names(c, s);
    json vs = json::array();
    for (int x : r.objects())
        vs.push_back({{"name", c.name(x)}, {"column", pos[x].first}, {"row", pos[x].second}, {"component", comp_of[x]}});
    j["vertices"] = vs;
    json es = json::array();
    for (auto [a, b] : arrows) es.push_back({c.name(a), c.name(b)});
    j["edges"] = es;
    j["components"] = comps.size();
    emit(o, dump(j), out);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simple-minded reduction of finite negative Calabi-Yau orbit categories of type A"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--rank", o.rank, "n in A_n")->check(CLI::Range(1, 64));
    app.add_option("--cy-weight", o.weight, "w, so that D is (-w)-Calabi-Yau")->check(CLI::Range(1, 64));
    app.add_option("--prime", o.prime, "characteristic of the ground field");
    app.add_option("--collection", o.collection, "comma-separated objects, e.g. x1,x5");
    app.add_option("--out", o.out, "write the artifact here instead of stdout");
    app.add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    app.add_option("--seed", o.seed, "seed for sampled checks");
    app.add_option("--budget", o.budget, "samples for the octahedral check on large Z")->check(CLI::NonNegativeNumber);
    app.add_option("--workers", o.workers, "threads for enumeration")->check(CLI::Range(1, 256));
    app.add_flag("--force", o.force, "lift the enumeration size guard");

    auto* build = app.add_subcommand("build", "build the orbit category; --out writes the snapshot");
    auto* hom = app.add_subcommand("hom", "Hom dimensions, or the basis of Hom(x, y)");
    hom->add_option("objects", o.objects);
    auto* cone = app.add_subcommand("cone", "cone of a basis morphism x -> y");
    cone->add_option("objects", o.objects)->expected(2);
    cone->add_option("--basis", o.basis, "basis index in Hom(x, y)");
    auto* closure = app.add_subcommand("closure", "extension closure of --collection with lengths");
    auto* approx = app.add_subcommand("approx", "minimal <S>-approximations of an object");
    approx->add_option("object", o.objects)->expected(1);
    auto* mutate = app.add_subcommand("mutate", "left and right mutation of an object");
    mutate->add_option("object", o.objects)->expected(1);
    auto* reduce = app.add_subcommand("reduce", "reduction Z at --collection");
    auto* enumerate = app.add_subcommand("enumerate-sms", "simple-minded systems of D, or of Z with --collection");
    auto* verify = app.add_subcommand("verify", "verify the reduction at --collection");
    verify->add_flag("--axioms", o.axioms, "TR1-TR4");
    verify->add_flag("--serre", o.serre, "Serre functor of Z");
    verify->add_flag("--mutation-pair", o.mutation_pair, "perpendicularity, mutation pair and approximations");
    verify->add_flag("--r-filtration", o.r_filtration, "<T> ∩ Z = <T minus S>_Z for every sms T ⊇ S");
    verify->add_flag("--bijection", o.bijection, "sms of D containing S versus sms of Z");
    auto* replay = app.add_subcommand("replay", "replay a worked example");
    replay->add_option("example", o.example, "example-7.1 or example-7.2")->required();
    auto* export_ar = app.add_subcommand("export-ar", "AR quiver of D, or of Z with --collection");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    try {
        if (build->parsed()) return cmd_build(o, out, err);
        if (hom->parsed()) return cmd_hom(o, out, err);
        if (cone->parsed()) return cmd_cone(o, out, err);
        if (closure->parsed()) return cmd_closure(o, out, err);
        if (approx->parsed()) return cmd_approx(o, out, err);
        if (mutate->parsed()) return cmd_mutate(o, out, err);
        if (reduce->parsed()) return cmd_reduce(o, out, err);
        if (enumerate->parsed()) return cmd_enumerate(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (replay->parsed()) return cmd_replay(o, out, err);
        if (export_ar->parsed()) return cmd_export_ar(o, out, err);
    } catch (const Error& e) {
        err << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::Usage:
            case ErrorCode::Dimension:
            case ErrorCode::NotPrime:
            case ErrorCode::NotOrthogonal:
            case ErrorCode::SchemaViolation:
            case ErrorCode::ChecksumMismatch:
                return kExitUsage;
            default:
                return kExitFailed;
        }
    }
    return kExitUsage;
}

}  // namespace minuscy
