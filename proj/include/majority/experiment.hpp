#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "majority/checks.hpp"
#include "majority/io.hpp"

namespace majority {

// --------------------------------------------------------------------------
// Experiment specs: one JSON object drives every command. Validation happens
// before any trial runs, unknown fields are rejected, and the canonical
// serialization (sorted keys, no whitespace) is hashed to name the output
// directory, so identical specs land in identical places with identical
// bytes.

struct GraphSource {
    std::string kind = "torus";
    std::vector<std::int64_t> params{8, 8};
    std::string path;  // kind == "file"
};

struct ExperimentSpec {
    GraphSource graph;
    Model model = Model::sync;
    bool rational_mode = false;
    double p = 0.9;
    double q = 0.8;
    std::string estimator = "limit_majority";
    std::int64_t trials = 1;
    std::uint64_t seed = 1;
    int t = 2;
    int n = 15;
    int r = 4;
    int radius = 2;
    int center = -1;  // bunker suite; -1 means n/2
    double delta = 0.0;
    std::string suite = "period";
    std::vector<std::pair<int, int>> cut;
    std::string out_dir = "out";
};

namespace detail {

inline const std::set<std::string>& known_spec_fields() {
    static const std::set<std::string> fields = {
        "graph", "model", "mode",   "p",      "q",     "estimator", "trials", "seed", "t",
        "n",     "r",     "radius", "center", "delta", "suite",     "cut",    "out"};
    return fields;
}

inline const std::set<std::string>& known_graph_kinds() {
    static const std::set<std::string> kinds = {"path",        "cycle",  "torus",
                                                "tree_ball",   "random", "complete",
                                                "ladder",      "file",   "gadget_k4",
                                                "gadget_prism"};
    return kinds;
}

inline std::size_t graph_arity(const std::string& kind) {
    if (kind == "torus" || kind == "tree_ball" || kind == "random") return 2;
    if (kind == "file" || kind == "gadget_k4" || kind == "gadget_prism") return 0;
    return 1;
}

inline double spec_number(const Json& j, const char* field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number())
        fail(errc::invalid_params, std::string("field '") + field + "' must be a number");
    return j.at(field).get<double>();
}

inline std::int64_t spec_int(const Json& j, const char* field, std::int64_t fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number_integer() && !j.at(field).is_number_unsigned())
        fail(errc::invalid_params, std::string("field '") + field + "' must be an integer");
    return j.at(field).get<std::int64_t>();
}

inline std::string spec_string(const Json& j, const char* field, const std::string& fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_string())
        fail(errc::invalid_params, std::string("field '") + field + "' must be a string");
    return j.at(field).get<std::string>();
}

}  // namespace detail

inline ExperimentSpec parse_spec(const Json& raw) {
    // a manifest wraps the spec it replays
    const Json& j = (raw.is_object() && raw.contains("spec")) ? raw.at("spec") : raw;
    if (!j.is_object()) fail(errc::invalid_params, "spec must be a JSON object");
    for (auto& [key, value] : j.items()) {
        (void)value;
        if (!detail::known_spec_fields().count(key))
            fail(errc::invalid_params, "unknown field '" + key + "'");
    }
    ExperimentSpec s;

    if (j.contains("graph")) {
        const Json& g = j.at("graph");
        if (!g.is_object()) fail(errc::invalid_params, "field 'graph' must be an object");
        s.graph.kind = detail::spec_string(g, "kind", "torus");
        if (!detail::known_graph_kinds().count(s.graph.kind))
            fail(errc::invalid_params, "field 'graph.kind': unknown kind '" + s.graph.kind + "'");
        s.graph.params.clear();
        if (g.contains("params")) {
            if (!g.at("params").is_array())
                fail(errc::invalid_params, "field 'graph.params' must be an array");
            for (auto& x : g.at("params")) {
                if (!x.is_number_integer() && !x.is_number_unsigned())
                    fail(errc::invalid_params, "field 'graph.params' must hold integers");
                s.graph.params.push_back(x.get<std::int64_t>());
            }
        }
        s.graph.path = detail::spec_string(g, "path", "");
        if (s.graph.kind == "file") {
            if (s.graph.path.empty())
                fail(errc::invalid_params, "field 'graph.path' required for kind 'file'");
        } else if (s.graph.params.size() != detail::graph_arity(s.graph.kind)) {
            fail(errc::invalid_params,
                 "field 'graph.params': kind '" + s.graph.kind + "' takes " +
                     std::to_string(detail::graph_arity(s.graph.kind)) + " parameter(s)");
        }
    }

    std::string model = detail::spec_string(j, "model", "sync");
    if (model != "sync" && model != "async")
        fail(errc::invalid_params, "field 'model' must be sync or async");
    s.model = model == "sync" ? Model::sync : Model::async;

    std::string mode = detail::spec_string(j, "mode", "float");
    if (mode != "float" && mode != "rational")
        fail(errc::invalid_params, "field 'mode' must be float or rational");
    s.rational_mode = mode == "rational";

    s.p = detail::spec_number(j, "p", 0.9);
    if (!(s.p > 0.5 && s.p < 1.0)) fail(errc::invalid_p, "field 'p' must lie in (1/2, 1)");
    s.q = detail::spec_number(j, "q", 0.8);
    if (!(s.q > 0.0 && s.q <= 1.0)) fail(errc::invalid_params, "field 'q' must lie in (0, 1]");

    s.estimator = detail::spec_string(j, "estimator", "limit_majority");
    static const std::set<std::string> estimators = {"initial_majority", "cone_majority",
                                                     "limit_majority", "limit_majority_balls",
                                                     "limit_majority_subgraph"};
    if (!estimators.count(s.estimator))
        fail(errc::invalid_params, "field 'estimator': unknown estimator '" + s.estimator + "'");

    s.trials = detail::spec_int(j, "trials", 1);
    if (s.trials < 1) fail(errc::invalid_params, "field 'trials' must be >= 1");
    std::int64_t seed = detail::spec_int(j, "seed", 1);
    s.seed = std::uint64_t(seed);
    s.t = int(detail::spec_int(j, "t", 2));
    if (s.t < 0) fail(errc::invalid_params, "field 't' must be >= 0");
    s.n = int(detail::spec_int(j, "n", 15));
    if (s.n < 1) fail(errc::invalid_params, "field 'n' must be >= 1");
    s.r = int(detail::spec_int(j, "r", 4));
    if (s.r < 0) fail(errc::invalid_params, "field 'r' must be >= 0");
    s.radius = int(detail::spec_int(j, "radius", 2));
    if (s.radius < 0) fail(errc::invalid_params, "field 'radius' must be >= 0");
    s.center = int(detail::spec_int(j, "center", -1));
    s.delta = detail::spec_number(j, "delta", 0.0);
    if (!(s.delta >= 0.0)) fail(errc::invalid_params, "field 'delta' must be >= 0");

    s.suite = detail::spec_string(j, "suite", "period");
    static const std::set<std::string> suites = {"period", "flips",    "bunker",
                                                 "lyapunov", "monopoly", "gadget"};
    if (!suites.count(s.suite))
        fail(errc::invalid_params, "field 'suite': unknown suite '" + s.suite + "'");

    if (j.contains("cut")) {
        if (!j.at("cut").is_array()) fail(errc::invalid_params, "field 'cut' must be an array");
        for (auto& e : j.at("cut")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                fail(errc::invalid_params, "field 'cut' must hold [u,v] pairs");
            s.cut.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    s.out_dir = detail::spec_string(j, "out", "out");
    return s;
}

// The canonical form names the experiment, so it carries every field that
// feeds the computation and leaves out the output root: the same run
// written to two places is one experiment, and a replayed manifest lands
// under the same hash wherever it is sent.
inline Json canonical_spec(const ExperimentSpec& s) {
    Json g{{"kind", s.graph.kind}, {"params", s.graph.params}};
    if (!s.graph.path.empty()) g["path"] = s.graph.path;
    Json cut = Json::array();
    for (auto& [u, v] : s.cut) cut.push_back({u, v});
    return Json{{"graph", std::move(g)},
                {"model", s.model == Model::sync ? "sync" : "async"},
                {"mode", s.rational_mode ? "rational" : "float"},
                {"p", s.p},
                {"q", s.q},
                {"estimator", s.estimator},
                {"trials", s.trials},
                {"seed", s.seed},
                {"t", s.t},
                {"n", s.n},
                {"r", s.r},
                {"radius", s.radius},
                {"center", s.center},
                {"delta", s.delta},
                {"suite", s.suite},
                {"cut", std::move(cut)}};
}

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline std::string spec_hash(const Json& canonical) { return fnv1a_hex(canonical.dump()); }

// --------------------------------------------------------------------------
// Graph construction from a source description.

struct BuiltGraph {
    Graph g;
    std::string id;
    // gadget kinds carry their construction so checks can re-splice
    Graph base;
    std::vector<GadgetCopy> copies;
    std::vector<std::pair<int, int>> cut;
};

inline std::vector<std::pair<int, int>> default_prism_cut(int k) {
    std::vector<std::pair<int, int>> cut;
    for (int i = 0; i < k; ++i) cut.emplace_back(i, k + i);
    return cut;
}

inline BuiltGraph make_graph(const ExperimentSpec& s) {
    const auto& src = s.graph;
    BuiltGraph out;
    auto param = [&](std::size_t i) { return src.params.at(i); };
    if (src.kind == "path") {
        out.g = gen_path(int(param(0)));
        out.id = "path(" + std::to_string(param(0)) + ")";
    } else if (src.kind == "cycle") {
        out.g = gen_cycle(int(param(0)));
        out.id = "cycle(" + std::to_string(param(0)) + ")";
    } else if (src.kind == "torus") {
        out.g = gen_torus(int(param(0)), int(param(1)));
        out.id = "torus(" + std::to_string(param(0)) + "x" + std::to_string(param(1)) + ")";
    } else if (src.kind == "tree_ball") {
        out.g = gen_tree_ball(int(param(0)), int(param(1)));
        out.id = "tree_ball(" + std::to_string(param(0)) + "," + std::to_string(param(1)) + ")";
    } else if (src.kind == "complete") {
        out.g = gen_complete(int(param(0)));
        out.id = "complete(" + std::to_string(param(0)) + ")";
    } else if (src.kind == "ladder") {
        out.g = gen_circular_ladder(int(param(0)));
        out.id = "ladder(" + std::to_string(param(0)) + ")";
    } else if (src.kind == "random") {
        Rng rng(derive_seed(s.seed, 7, 0));
        out.g = random_odd_graph(int(param(0)), int(param(1)), rng);
        out.id = "random(" + std::to_string(param(0)) + "," + std::to_string(param(1)) + ")";
    } else if (src.kind == "file") {
        out.g = load_graph(src.path);
        out.id = src.path;
    } else if (src.kind == "gadget_k4" || src.kind == "gadget_prism") {
        if (src.kind == "gadget_k4") {
            out.base = gen_complete(4);
            out.cut = s.cut.empty() ? std::vector<std::pair<int, int>>{{0, 1}} : s.cut;
            out.id = "gadget_k4";
        } else {
            out.base = gen_circular_ladder(8);
            out.cut = s.cut.empty() ? default_prism_cut(8) : s.cut;
            out.id = "gadget_prism";
        }
        auto gg = gen_gadget_graph(out.base, out.cut);
        out.g = std::move(gg.g);
        out.copies = std::move(gg.copies);
    } else {
        fail(errc::invalid_params, "unknown graph kind " + src.kind);
    }
    return out;
}

// --------------------------------------------------------------------------
// Output plumbing: out/<hash>/ holds the manifest plus command artifacts.

namespace detail {

inline std::string prepare_out_dir(const ExperimentSpec& s, const std::string& command,
                                   const Json& canonical) {
    std::string dir = s.out_dir + "/" + spec_hash(canonical);
    std::filesystem::create_directories(dir);
    write_json_file(dir + "/manifest.json",
                    Json{{"command", command}, {"hash", spec_hash(canonical)}, {"spec", canonical}});
    return dir;
}

inline int gadget_stable_from(const SyncRun& run, const GadgetCopy& copy) {
    int from = -1;
    for (int t = int(run.configs.size()) - 1; t >= 0; --t) {
        if (unanimous(run.configs[t], copy.side_a) && unanimous(run.configs[t], copy.side_b))
            from = t;
        else
            break;
    }
    return from;
}

}  // namespace detail

// --------------------------------------------------------------------------
// simulate: run `trials` trajectories from uniform random initial opinions,
// exporting each one plus a summary. Gadget graphs additionally report when
// every copy reached side-unanimity for good.

inline int cmd_simulate(const ExperimentSpec& s) {
    auto canonical = canonical_spec(s);
    auto built = make_graph(s);
    std::string dir = detail::prepare_out_dir(s, "simulate", canonical);

    int t_cycle_max = 0, period_max = 1;
    double t_last_flip_max = 0.0;
    bool all_stable = true;
    Json copy_rows = Json::array();

    for (std::int64_t k = 0; k < s.trials; ++k) {
        Rng rng(derive_seed(s.seed, 71, k));
        OpinionConfig c0 = detail::random_config(built.g.n, rng);
        std::string tag = std::to_string(k);
        if (s.model == Model::sync) {
            auto run = run_sync_until_cycle(built.g, c0);
            write_json_file(dir + "/trajectory_" + tag + ".json", trajectory_json(run));
            std::ostringstream csv;
            write_flip_csv(csv, run);
            write_text_file(dir + "/flips_" + tag + ".csv", csv.str());
            t_cycle_max = std::max(t_cycle_max, run.t_cycle);
            period_max = std::max(period_max, run.period);
            for (std::size_t ci = 0; ci < built.copies.size(); ++ci)
                copy_rows.push_back(Json{{"trial", k},
                                         {"copy", ci},
                                         {"stable_from", detail::gadget_stable_from(
                                                             run, built.copies[ci])}});
        } else {
            auto budget = detail::run_budget(built.g);
            auto res = run_async(built.g, c0, derive_seed(s.seed, 72, k),
                                 detail::async_caps(built.g, budget.async_flips, true));
            write_json_file(dir + "/trajectory_" + tag + ".json", trajectory_json(res.run));
            std::ostringstream csv;
            write_flip_csv(csv, res.run);
            write_text_file(dir + "/flips_" + tag + ".csv", csv.str());
            t_last_flip_max = std::max(t_last_flip_max, res.run.t_last_flip);
            all_stable = all_stable && res.run.stable;
        }
    }

    Json summary{{"graph", built.id}, {"trials", s.trials}};
    if (s.model == Model::sync) {
        summary["model"] = "sync";
        summary["t_cycle_max"] = t_cycle_max;
        summary["period_max"] = period_max;
        if (!built.copies.empty()) summary["gadget_copies"] = copy_rows;
    } else {
        summary["model"] = "async";
        summary["stable"] = all_stable;
        summary["t_last_flip_max"] = t_last_flip_max;
    }
    write_json_file(dir + "/summary.json", summary);
    std::cout << "simulate " << built.id << ": " << s.trials
              << (s.trials == 1 ? " trajectory -> " : " trajectories -> ") << dir
              << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// verify: randomized theorem suites. Nonzero exit means a guaranteed
// property was caught failing, which is a bug somewhere, never noise.

inline int cmd_verify(const ExperimentSpec& s) {
    auto canonical = canonical_spec(s);
    CheckReport rep;
    if (s.suite == "period") {
        rep = check_period_convergence(s.trials, 200, 7, s.seed);
    } else if (s.suite == "flips") {
        auto built = make_graph(s);
        rep = check_flip_bounds(built.g, s.trials, s.seed, built.id);
    } else if (s.suite == "bunker") {
        auto built = make_graph(s);
        int center = s.center >= 0 ? s.center : built.g.n / 2;
        auto prof = growth_moment(built.g, center);
        rep = check_bunker(built.g, center, prof.r0, s.trials, s.seed);
    } else if (s.suite == "lyapunov") {
        LyapunovCheckParams par;
        par.sync_trials = s.trials;
        par.async_trials = std::max<std::int64_t>(1, s.trials / 2);
        par.rational_trials = std::min<std::int64_t>(50, std::max<std::int64_t>(2, s.trials / 10));
        rep = check_lyapunov(par, s.seed);
    } else if (s.suite == "monopoly") {
        if (s.graph.kind != "torus")
            fail(errc::invalid_params, "field 'graph.kind': monopoly suite needs a torus");
        rep = check_monopoly_torus(int(s.graph.params[0]), int(s.graph.params[1]), s.trials,
                                   s.seed);
    } else {  // gadget
        Graph base;
        std::vector<std::pair<int, int>> cut;
        std::string label;
        if (s.graph.kind == "gadget_k4" || s.graph.kind == "gadget_prism") {
            auto built = make_graph(s);
            base = built.base;
            cut = built.cut;
            label = built.id;
        } else {
            if (s.cut.empty())
                fail(errc::invalid_params, "field 'cut' required for the gadget suite");
            auto built = make_graph(s);
            base = built.g;
            cut = s.cut;
            label = built.id;
        }
        rep = check_gadget(base, cut, s.trials, s.seed, label);
    }

    std::string dir = detail::prepare_out_dir(s, "verify", canonical);
    Json out{{"suite", s.suite},
             {"name", rep.name},
             {"passed", rep.passed},
             {"failed", rep.failed},
             {"stat", rep.stat}};
    if (!rep.ok()) out["first_failure"] = rep.first_failure;
    write_json_file(dir + "/report.json", out);
    std::cout << "verify " << rep.name << ": " << rep.passed << "/" << (rep.passed + rep.failed)
              << " passed";
    if (!rep.ok()) std::cout << " (first failure: " << rep.first_failure << ")";
    std::cout << "\n";
    return rep.ok() ? 0 : 3;
}

// --------------------------------------------------------------------------
// estimate: Monte Carlo reconstruction error of the named estimator.

namespace detail {

struct EstimateOutcome {
    EstimatorResult result;
    Json extra;  // estimator-specific additions (subgraph pipeline metadata)
};

inline EstimateOutcome run_estimator(const ExperimentSpec& s, const BuiltGraph& built) {
    EstimateOutcome out;
    if (s.estimator == "limit_majority_subgraph") {
        SubgraphPipelineOptions opt;
        opt.q = s.q;
        opt.p = s.p;
        opt.r = s.r;
        opt.n = s.n;
        opt.trials = s.trials;
        auto rep = percolation_retention(built.g, opt, s.seed);
        out.result = rep.result;
        out.extra = Json{{"stand_in", rep.stand_in},
                         {"mean_component", rep.mean_component},
                         {"mean_voters", rep.mean_voters},
                         {"degenerate", rep.degenerate},
                         {"retained", rep.ok}};
        return out;
    }
    EstimatorSpec es;
    if (s.estimator == "initial_majority") {
        es.kind = EstimatorKind::initial_majority;
    } else if (s.estimator == "cone_majority") {
        es.kind = EstimatorKind::cone_majority;
        es.t = s.t;
        es.n = s.n;
        es.r = s.r;
    } else if (s.estimator == "limit_majority") {
        es.kind = EstimatorKind::limit_majority;
    } else {  // limit_majority_balls
        es.kind = EstimatorKind::limit_majority;
        es.voters = greedy_disjoint_balls(built.g, s.radius);
    }
    out.result = monte_carlo_delta(built.g, s.p, es, s.trials, s.seed, s.model);
    return out;
}

}  // namespace detail

inline int cmd_estimate(const ExperimentSpec& s) {
    auto canonical = canonical_spec(s);
    auto built = make_graph(s);
    auto outcome = detail::run_estimator(s, built);
    std::string dir = detail::prepare_out_dir(s, "estimate", canonical);

    Json result = estimator_json(outcome.result);
    result["graph"] = built.id;
    result["p"] = s.p;
    result["model"] = s.model == Model::sync ? "sync" : "async";
    for (auto& [k, v] : outcome.extra.items()) result[k] = v;
    write_json_file(dir + "/result.json", result);
    write_text_file(dir + "/result.csv", estimator_csv_header() + "\n" +
                                             estimator_csv_row(built.id, s.p, outcome.result) +
                                             "\n");
    std::cout << "estimate " << outcome.result.estimator << " on " << built.id << ": "
              << outcome.result.errors << "/" << outcome.result.trials << " errors (rate "
              << outcome.result.error_rate << " +- " << outcome.result.sigma3 << ") -> " << dir
              << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// sweep: cross-product of parameter overrides on a base spec, one estimate
// per cell, one CSV row per cell in deterministic order. Every cell is
// validated before the first one runs.

inline int cmd_sweep(const Json& sweep_json) {
    if (!sweep_json.is_object()) fail(errc::invalid_params, "sweep config must be a JSON object");
    for (auto& [key, value] : sweep_json.items()) {
        (void)value;
        if (key != "base" && key != "grid" && key != "out")
            fail(errc::invalid_params, "unknown field '" + key + "'");
    }
    Json base = sweep_json.value("base", Json::object());
    Json grid = sweep_json.value("grid", Json::object());
    if (!grid.is_object()) fail(errc::invalid_params, "field 'grid' must be an object");
    std::string out_root = sweep_json.value("out", std::string("out"));

    std::vector<std::string> keys;
    for (auto& [key, values] : grid.items()) {
        if (!values.is_array())
            fail(errc::invalid_params, "field 'grid." + key + "' must be an array");
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());

    // materialize the full cross product (empty grid means zero cells), then
    // validate everything before running anything
    std::vector<Json> cells;
    if (!keys.empty()) {
        std::vector<std::size_t> sizes;
        std::int64_t total = 1;
        for (auto& k : keys) {
            sizes.push_back(grid.at(k).size());
            total *= std::int64_t(sizes.back());
        }
        for (std::int64_t cell_index = 0; cell_index < total; ++cell_index) {
            Json cell = base;
            std::int64_t rem = cell_index;  // last key varies fastest
            for (int i = int(keys.size()) - 1; i >= 0; --i) {
                cell[keys[i]] = grid.at(keys[i])[rem % sizes[i]];
                rem /= std::int64_t(sizes[i]);
            }
            cells.push_back(std::move(cell));
        }
    }
    std::vector<ExperimentSpec> specs;
    for (auto& cell : cells) specs.push_back(parse_spec(cell));

    Json canonical{{"base", base}, {"grid", grid}};
    std::string dir = out_root + "/" + spec_hash(canonical);
    std::filesystem::create_directories(dir);
    write_json_file(dir + "/manifest.json", Json{{"command", "sweep"},
                                                 {"hash", spec_hash(canonical)},
                                                 {"spec", canonical}});

    std::ostringstream csv;
    for (auto& k : keys) csv << k << ",";
    csv << estimator_csv_header() << ",status\n";
    bool any_hard_failure = false;
    for (std::size_t c = 0; c < specs.size(); ++c) {
        std::string prefix;
        for (auto& k : keys) {
            const Json& v = cells[c].at(k);
            prefix += v.is_string() ? v.get<std::string>() : v.dump();
            prefix += ",";
        }
        try {
            auto built = make_graph(specs[c]);
            auto outcome = detail::run_estimator(specs[c], built);
            csv << prefix << estimator_csv_row(built.id, specs[c].p, outcome.result) << ",ok\n";
        } catch (const Error& e) {
            any_hard_failure = true;
            csv << prefix << ",,,,,,,,," << "error:" << error_name(e.code()) << "\n";
        }
    }
    write_text_file(dir + "/sweep.csv", csv.str());
    std::cout << "sweep: " << specs.size() << " cell(s) -> " << dir << "/sweep.csv\n";
    return any_hard_failure ? 3 : 0;
}

// --------------------------------------------------------------------------
// gadget-demo: one synchronous run on the spliced K_4, narrated.

inline int cmd_gadget_demo(std::uint64_t seed) {
    Graph base = gen_complete(4);
    auto gg = gen_gadget_graph(base, {{0, 1}});
    Rng rng(derive_seed(seed, 71, 0));
    OpinionConfig c0 = detail::random_config(gg.g.n, rng);
    auto run = run_sync_until_cycle(gg.g, c0);
    std::cout << "spliced complete(4) across edge {0,1}: " << gg.g.n
              << " vertices, 3-regular, t_cycle=" << run.t_cycle << ", period=" << run.period
              << "\n";
    for (std::size_t ci = 0; ci < gg.copies.size(); ++ci) {
        const auto& copy = gg.copies[ci];
        std::cout << "copy " << ci << " (edge {" << copy.replaced.first << ","
                  << copy.replaced.second << "}): sides unanimous from t="
                  << detail::gadget_stable_from(run, copy) << "\n";
    }
    return 0;
}

}  // namespace majority
