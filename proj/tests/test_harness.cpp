#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "majority/majority.hpp"

using namespace majority;
namespace fs = std::filesystem;

namespace {

template <class Fn>
Error thrown_error(Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e;
    }
    throw std::runtime_error("expected a majority::Error");
}

template <class Fn>
errc thrown_code(Fn fn) {
    return thrown_error(fn).code();
}

// fresh scratch directory per test case so runs never see stale artifacts
fs::path scratch(const std::string& leaf) {
    fs::path dir = fs::temp_directory_path() / ("majority_harness_" + leaf);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json slurp_json(const fs::path& path) { return Json::parse(slurp(path)); }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace

TEST_CASE("spec parsing fills defaults") {
    ExperimentSpec s = parse_spec(Json::object());
    CHECK(s.graph.kind == "torus");
    CHECK(s.graph.params == std::vector<std::int64_t>{8, 8});
    CHECK(s.graph.path.empty());
    CHECK(s.model == Model::sync);
    CHECK_FALSE(s.rational_mode);
    CHECK(s.p == 0.9);
    CHECK(s.q == 0.8);
    CHECK(s.estimator == "limit_majority");
    CHECK(s.trials == 1);
    CHECK(s.seed == 1);
    CHECK(s.t == 2);
    CHECK(s.n == 15);
    CHECK(s.r == 4);
    CHECK(s.radius == 2);
    CHECK(s.center == -1);
    CHECK(s.delta == 0.0);
    CHECK(s.suite == "period");
    CHECK(s.cut.empty());
    CHECK(s.out_dir == "out");
}

TEST_CASE("spec parsing rejects malformed fields by name") {
    auto code_of = [](Json j) { return thrown_code([&] { parse_spec(j); }); };
    auto message_of = [](Json j) {
        return std::string(thrown_error([&] { parse_spec(j); }).what());
    };

    CHECK(code_of(Json(3)) == errc::invalid_params);
    CHECK(code_of(Json::array()) == errc::invalid_params);
    CHECK(code_of(Json{{"pp", 1}}) == errc::invalid_params);
    CHECK(message_of(Json{{"pp", 1}}).find("unknown field 'pp'") != std::string::npos);

    // p must be an open-interval signal quality, named in the message
    CHECK(code_of(Json{{"p", 1.5}}) == errc::invalid_p);
    CHECK(code_of(Json{{"p", 0.5}}) == errc::invalid_p);
    CHECK(code_of(Json{{"p", 0.2}}) == errc::invalid_p);
    CHECK(message_of(Json{{"p", 1.5}}).find("field 'p'") != std::string::npos);
    CHECK(code_of(Json{{"p", "high"}}) == errc::invalid_params);

    CHECK(code_of(Json{{"q", 0.0}}) == errc::invalid_params);
    CHECK(code_of(Json{{"q", 1.25}}) == errc::invalid_params);
    CHECK(parse_spec(Json{{"q", 1.0}}).q == 1.0);

    CHECK(code_of(Json{{"trials", 0}}) == errc::invalid_params);
    CHECK(code_of(Json{{"trials", 2.5}}) == errc::invalid_params);
    CHECK(code_of(Json{{"t", -1}}) == errc::invalid_params);
    CHECK(code_of(Json{{"n", 0}}) == errc::invalid_params);
    CHECK(code_of(Json{{"r", -1}}) == errc::invalid_params);
    CHECK(code_of(Json{{"radius", -1}}) == errc::invalid_params);
    CHECK(code_of(Json{{"delta", -0.5}}) == errc::invalid_params);

    CHECK(code_of(Json{{"model", "both"}}) == errc::invalid_params);
    CHECK(code_of(Json{{"mode", "decimal"}}) == errc::invalid_params);
    CHECK(code_of(Json{{"estimator", "magic"}}) == errc::invalid_params);
    CHECK(code_of(Json{{"suite", "magic"}}) == errc::invalid_params);

    // graph sources: unknown kinds, wrong arity, file without a path
    CHECK(code_of(Json{{"graph", Json{{"kind", "blob"}}}}) == errc::invalid_params);
    CHECK(code_of(Json{{"graph", Json{{"kind", "torus"}, {"params", Json::array({8})}}}}) ==
          errc::invalid_params);
    CHECK(message_of(Json{{"graph", Json{{"kind", "torus"}, {"params", Json::array({8})}}}})
              .find("graph.params") != std::string::npos);
    CHECK(code_of(Json{{"graph", Json{{"kind", "path"}, {"params", Json::array({7, 2})}}}}) ==
          errc::invalid_params);
    CHECK(code_of(Json{{"graph", Json{{"kind", "file"}}}}) == errc::invalid_params);
    CHECK(code_of(Json{{"graph", Json{{"kind", "path"}, {"params", Json::array({2.5})}}}}) ==
          errc::invalid_params);
    CHECK(code_of(Json{{"graph", "torus"}}) == errc::invalid_params);

    // cut entries must be [u,v] pairs
    CHECK(code_of(Json{{"cut", "0-1"}}) == errc::invalid_params);
    CHECK(code_of(Json{{"cut", Json::array({Json::array({0})})}}) == errc::invalid_params);
    auto with_cut = parse_spec(Json{{"cut", Json::array({Json::array({0, 1})})}});
    REQUIRE(with_cut.cut.size() == 1);
    CHECK(with_cut.cut[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("manifest configs replay the spec they wrap") {
    Json manifest{{"command", "estimate"},
                  {"hash", "0123456789abcdef"},
                  {"spec", Json{{"p", 0.8}, {"trials", 7}}}};
    ExperimentSpec s = parse_spec(manifest);
    CHECK(s.p == 0.8);
    CHECK(s.trials == 7);

    // the wrapper keys are ignored entirely, so junk beside "spec" is fine
    manifest["note"] = "anything";
    CHECK(parse_spec(manifest).trials == 7);

    // but junk inside the wrapped spec is still rejected
    manifest["spec"]["pp"] = 1;
    CHECK(thrown_code([&] { parse_spec(manifest); }) == errc::invalid_params);
}

TEST_CASE("canonical spec hashing is input-order independent and seed sensitive") {
    Json a = Json::parse(R"({"p": 0.8, "trials": 10, "graph": {"kind": "cycle", "params": [9]}})");
    Json b = Json::parse(R"({"graph": {"params": [9], "kind": "cycle"}, "trials": 10, "p": 0.8})");
    auto ca = canonical_spec(parse_spec(a));
    auto cb = canonical_spec(parse_spec(b));
    CHECK(ca.dump() == cb.dump());
    CHECK(spec_hash(ca) == spec_hash(cb));

    std::string h = spec_hash(ca);
    CHECK(h.size() == 16);
    for (char c : h) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));

    Json c = a;
    c["seed"] = 2;
    CHECK(spec_hash(canonical_spec(parse_spec(c))) != h);

    // the output root is bookkeeping, not identity
    Json d = a;
    d["out"] = "elsewhere";
    CHECK(spec_hash(canonical_spec(parse_spec(d))) == h);

    // canonicalization is idempotent: re-parsing the canonical form lands on
    // the same bytes, so hashes name specs and nothing else
    CHECK(canonical_spec(parse_spec(ca)).dump() == ca.dump());
}

TEST_CASE("graph sources build the advertised families") {
    auto build = [](Json j) { return make_graph(parse_spec(j)); };

    CHECK(build(Json::object()).id == "torus(8x8)");
    CHECK(build(Json{{"graph", Json{{"kind", "path"}, {"params", Json::array({41})}}}}).id ==
          "path(41)");
    CHECK(build(Json{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({9})}}}}).id ==
          "cycle(9)");
    CHECK(build(Json{{"graph", Json{{"kind", "tree_ball"}, {"params", Json::array({3, 5})}}}})
              .id == "tree_ball(3,5)");
    CHECK(build(Json{{"graph", Json{{"kind", "complete"}, {"params", Json::array({4})}}}}).id ==
          "complete(4)");
    CHECK(build(Json{{"graph", Json{{"kind", "ladder"}, {"params", Json::array({8})}}}}).id ==
          "ladder(8)");

    Json rnd{{"graph", Json{{"kind", "random"}, {"params", Json::array({20, 5})}}}, {"seed", 5}};
    auto r1 = build(rnd);
    auto r2 = build(rnd);
    CHECK(r1.id == "random(20,5)");
    CHECK(r1.g.edges == r2.g.edges);  // the same seed rebuilds the same graph

    auto k4 = build(Json{{"graph", Json{{"kind", "gadget_k4"}}}});
    CHECK(k4.id == "gadget_k4");
    CHECK(k4.g.n == 10);
    for (int v = 0; v < k4.g.n; ++v) CHECK(k4.g.degree(v) == 3);
    CHECK(k4.base.n == 4);
    REQUIRE(k4.copies.size() == 1);
    CHECK(k4.cut == std::vector<std::pair<int, int>>{{0, 1}});

    auto prism = build(Json{{"graph", Json{{"kind", "gadget_prism"}}}});
    CHECK(prism.id == "gadget_prism");
    CHECK(prism.g.n == 16 + 8 * 6);
    CHECK(prism.copies.size() == 8);
    CHECK(prism.cut == default_prism_cut(8));
    for (int v = 0; v < prism.g.n; ++v) CHECK(prism.g.degree(v) == 3);
}

TEST_CASE("graph sources load saved graph files by path") {
    auto dir = scratch("file_source");
    auto path = (dir / "five.graph").string();
    save_graph(path, gen_cycle(5));

    Json j{{"graph", Json{{"kind", "file"}, {"path", path}}}};
    auto built = make_graph(parse_spec(j));
    CHECK(built.id == path);
    CHECK(built.g.n == 5);
    CHECK(built.g.d_max == 3);

    Json bad{{"graph", Json{{"kind", "file"}, {"path", (dir / "absent.graph").string()}}}};
    CHECK(thrown_code([&] { make_graph(parse_spec(bad)); }) == errc::missing_data);
}

TEST_CASE("simulate exports trajectories that replay byte-identically") {
    auto dir = scratch("simulate");
    Json j{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({9})}}},
           {"trials", 2},
           {"seed", 42},
           {"out", dir.string()}};
    ExperimentSpec s = parse_spec(j);
    REQUIRE(cmd_simulate(s) == 0);

    fs::path run_dir = dir / spec_hash(canonical_spec(s));
    REQUIRE(fs::exists(run_dir / "manifest.json"));
    REQUIRE(fs::exists(run_dir / "summary.json"));
    REQUIRE(fs::exists(run_dir / "trajectory_0.json"));
    REQUIRE(fs::exists(run_dir / "trajectory_1.json"));
    REQUIRE(fs::exists(run_dir / "flips_0.csv"));

    Json summary = slurp_json(run_dir / "summary.json");
    CHECK(summary.at("graph") == "cycle(9)");
    CHECK(summary.at("trials") == 2);
    CHECK(summary.at("model") == "sync");
    CHECK(summary.at("period_max").get<int>() <= 2);

    Json manifest = slurp_json(run_dir / "manifest.json");
    CHECK(manifest.at("command") == "simulate");
    CHECK(manifest.at("hash") == spec_hash(canonical_spec(s)));

    // replaying the manifest into a fresh root reproduces every artifact
    // byte for byte under the same hash: the destination is not identity
    Json replay_json = slurp_json(run_dir / "manifest.json");
    replay_json["spec"]["out"] = (dir / "replay").string();
    ExperimentSpec replay = parse_spec(replay_json);
    CHECK(canonical_spec(replay).dump() == canonical_spec(s).dump());
    REQUIRE(cmd_simulate(replay) == 0);
    fs::path replay_dir = dir / "replay" / spec_hash(canonical_spec(s));
    CHECK(slurp(replay_dir / "trajectory_0.json") == slurp(run_dir / "trajectory_0.json"));
    CHECK(slurp(replay_dir / "flips_0.csv") == slurp(run_dir / "flips_0.csv"));
    CHECK(slurp(replay_dir / "manifest.json") == slurp(run_dir / "manifest.json"));

    Json trajectory = slurp_json(run_dir / "trajectory_0.json");
    CHECK(trajectory["model"] == "sync");
    CHECK(trajectory.contains("t_cycle"));
    CHECK(trajectory.contains("period"));
    CHECK(trajectory.contains("flips"));
    CHECK(trajectory["final"].size() == 9);
}

TEST_CASE("simulate covers the asynchronous model") {
    auto dir = scratch("simulate_async");
    Json j{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({9})}}},
           {"model", "async"},
           {"trials", 1},
           {"seed", 7},
           {"out", dir.string()}};
    ExperimentSpec s = parse_spec(j);
    REQUIRE(cmd_simulate(s) == 0);
    Json summary = slurp_json(dir / spec_hash(canonical_spec(s)) / "summary.json");
    CHECK(summary.at("model") == "async");
    CHECK(summary.at("stable") == true);
    CHECK(summary.at("t_last_flip_max").get<double>() >= 0.0);
}

TEST_CASE("verify suites pass on healthy dynamics and write reports") {
    auto dir = scratch("verify");

    SECTION("lyapunov identity suite") {
        Json j{{"suite", "lyapunov"}, {"trials", 4}, {"seed", 3}, {"out", dir.string()}};
        ExperimentSpec s = parse_spec(j);
        REQUIRE(cmd_verify(s) == 0);
        Json report = slurp_json(dir / spec_hash(canonical_spec(s)) / "report.json");
        CHECK(report.at("suite") == "lyapunov");
        CHECK(report.at("name") == "lyapunov_identity");
        // 4 float sync + 2 float async + 2 rational trials
        CHECK(report.at("passed") == 8);
        CHECK(report.at("failed") == 0);
        CHECK_FALSE(report.contains("first_failure"));
    }

    SECTION("bunker suite derives the shelter radius from the graph") {
        Json j{{"suite", "bunker"},
               {"graph", Json{{"kind", "path"}, {"params", Json::array({41})}}},
               {"trials", 3},
               {"seed", 5},
               {"out", dir.string()}};
        ExperimentSpec s = parse_spec(j);
        REQUIRE(cmd_verify(s) == 0);
        Json report = slurp_json(dir / spec_hash(canonical_spec(s)) / "report.json");
        CHECK(report.at("name") == "bunker(center=20)");
        CHECK(report.at("failed") == 0);
    }

    SECTION("gadget suite accepts the built-in spliced graphs") {
        Json j{{"suite", "gadget"},
               {"graph", Json{{"kind", "gadget_k4"}}},
               {"trials", 3},
               {"seed", 11},
               {"out", dir.string()}};
        REQUIRE(cmd_verify(parse_spec(j)) == 0);
    }

    SECTION("gadget suite on a plain base needs an explicit cut") {
        Json j{{"suite", "gadget"},
               {"graph", Json{{"kind", "complete"}, {"params", Json::array({4})}}},
               {"trials", 2},
               {"seed", 11},
               {"out", dir.string()}};
        CHECK(thrown_code([&] { cmd_verify(parse_spec(j)); }) == errc::invalid_params);
        j["cut"] = Json::array({Json::array({0, 1})});
        REQUIRE(cmd_verify(parse_spec(j)) == 0);
    }

    SECTION("monopoly suite insists on a torus") {
        Json j{{"suite", "monopoly"},
               {"graph", Json{{"kind", "cycle"}, {"params", Json::array({9})}}},
               {"trials", 2},
               {"out", dir.string()}};
        CHECK(thrown_code([&] { cmd_verify(parse_spec(j)); }) == errc::invalid_params);
        Json ok{{"suite", "monopoly"}, {"trials", 3}, {"seed", 2}, {"out", dir.string()}};
        REQUIRE(cmd_verify(parse_spec(ok)) == 0);
    }
}

TEST_CASE("estimate writes matching json and csv results") {
    auto dir = scratch("estimate");
    Json j{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({3})}}},
           {"estimator", "limit_majority"},
           {"p", 0.9},
           {"trials", 2000},
           {"seed", 424242},
           {"out", dir.string()}};
    ExperimentSpec s = parse_spec(j);
    REQUIRE(cmd_estimate(s) == 0);

    fs::path run_dir = dir / spec_hash(canonical_spec(s));
    Json result = slurp_json(run_dir / "result.json");
    CHECK(result.at("estimator") == "limit_majority(all)");
    CHECK(result.at("graph") == "cycle(3)");
    CHECK(result.at("model") == "sync");
    CHECK(result.at("trials") == 2000);
    // enumerated reconstruction error of the looped triangle at p = 0.9
    CHECK(result.at("error_rate").get<double>() == Catch::Approx(0.028).margin(0.015));

    auto csv = lines_of(slurp(run_dir / "result.csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[0] == estimator_csv_header());
    CHECK(starts_with(csv[1], "cycle(3),0.9"));
    CHECK(csv[1].find("\"limit_majority(all)\"") != std::string::npos);
}

TEST_CASE("estimate maps the ball and subgraph estimators onto the pipeline") {
    auto dir = scratch("estimate_variants");

    SECTION("ball centers become the fixed voter list") {
        Json j{{"graph", Json{{"kind", "torus"}, {"params", Json::array({5, 5})}}},
               {"estimator", "limit_majority_balls"},
               {"radius", 6},
               {"trials", 50},
               {"seed", 8},
               {"out", dir.string()}};
        ExperimentSpec s = parse_spec(j);
        REQUIRE(cmd_estimate(s) == 0);
        Json result = slurp_json(dir / spec_hash(canonical_spec(s)) / "result.json");
        // radius 6 balls cover the whole 5x5 torus, so one center survives
        CHECK(result.at("estimator") == "limit_majority(1 voters)");
        CHECK(result.at("trials") == 50);
    }

    SECTION("subgraph pipeline reports its percolation metadata") {
        Json j{{"graph", Json{{"kind", "torus"}, {"params", Json::array({8, 8})}}},
               {"estimator", "limit_majority_subgraph"},
               {"q", 0.9},
               {"r", 2},
               {"n", 5},
               {"trials", 30},
               {"seed", 9},
               {"out", dir.string()}};
        ExperimentSpec s = parse_spec(j);
        REQUIRE(cmd_estimate(s) == 0);
        Json result = slurp_json(dir / spec_hash(canonical_spec(s)) / "result.json");
        CHECK(result.at("stand_in") == true);
        CHECK(result.at("mean_component").get<double>() > 32.0);
        CHECK(result.contains("retained"));
        CHECK(result.contains("degenerate"));
    }

    SECTION("cone estimator carries its parameters into the id") {
        Json j{{"graph", Json{{"kind", "torus"}, {"params", Json::array({5, 5})}}},
               {"estimator", "cone_majority"},
               {"t", 1},
               {"n", 3},
               {"r", 1},
               {"trials", 20},
               {"seed", 10},
               {"out", dir.string()}};
        ExperimentSpec s = parse_spec(j);
        REQUIRE(cmd_estimate(s) == 0);
        Json result = slurp_json(dir / spec_hash(canonical_spec(s)) / "result.json");
        CHECK(result.at("estimator") == "cone_majority(t=1,n=3,r=1)");
        CHECK(result.at("trials").get<std::int64_t>() +
                  result.at("skipped").get<std::int64_t>() ==
              20);
    }
}

TEST_CASE("sweep walks the grid in sorted key order with the last key fastest") {
    auto dir = scratch("sweep");
    Json sweep{{"base", Json{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({3})}}},
                             {"trials", 100},
                             {"seed", 21}}},
               {"grid", Json{{"p", Json::array({0.8, 0.9})},
                             {"trials", Json::array({100, 200})}}},
               {"out", dir.string()}};
    REQUIRE(cmd_sweep(sweep) == 0);

    Json canonical{{"base", sweep.at("base")}, {"grid", sweep.at("grid")}};
    fs::path run_dir = dir / spec_hash(canonical);
    REQUIRE(fs::exists(run_dir / "manifest.json"));
    CHECK(slurp_json(run_dir / "manifest.json").at("command") == "sweep");

    auto csv = lines_of(slurp(run_dir / "sweep.csv"));
    REQUIRE(csv.size() == 5);
    CHECK(csv[0] == "p,trials," + estimator_csv_header() + ",status");
    CHECK(starts_with(csv[1], "0.8,100,cycle(3),0.8"));
    CHECK(starts_with(csv[2], "0.8,200,cycle(3),0.8"));
    CHECK(starts_with(csv[3], "0.9,100,cycle(3),0.9"));
    CHECK(starts_with(csv[4], "0.9,200,cycle(3),0.9"));
    for (int i = 1; i <= 4; ++i) {
        CHECK(csv[i].size() >= 3);
        CHECK(csv[i].substr(csv[i].size() - 3) == ",ok");
    }
}

TEST_CASE("sweep with an empty grid emits only the header") {
    auto dir = scratch("sweep_empty");
    Json sweep{{"base", Json{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({3})}}}}},
               {"grid", Json::object()},
               {"out", dir.string()}};
    REQUIRE(cmd_sweep(sweep) == 0);
    Json canonical{{"base", sweep.at("base")}, {"grid", sweep.at("grid")}};
    auto csv = lines_of(slurp(dir / spec_hash(canonical) / "sweep.csv"));
    REQUIRE(csv.size() == 1);
    CHECK(csv[0] == estimator_csv_header() + ",status");
}

TEST_CASE("sweep isolates runtime failures to their row") {
    auto dir = scratch("sweep_runtime_error");
    // the graph file path validates fine but cannot be loaded when the cell runs
    Json sweep{{"base", Json{{"graph", Json{{"kind", "file"},
                                            {"path", (dir / "absent.graph").string()}}}}},
               {"grid", Json{{"trials", Json::array({5})}}},
               {"out", dir.string()}};
    CHECK(cmd_sweep(sweep) == 3);
    Json canonical{{"base", sweep.at("base")}, {"grid", sweep.at("grid")}};
    auto csv = lines_of(slurp(dir / spec_hash(canonical) / "sweep.csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[1] == std::string("5,") + ",,,,,,,,," + "error:missing_data");
}

TEST_CASE("sweep validates every cell before running any") {
    auto dir = scratch("sweep_invalid_cell");
    fs::remove_all(dir);  // the sweep must not create it either
    Json sweep{{"base", Json{{"graph", Json{{"kind", "cycle"}, {"params", Json::array({3})}}},
                             {"trials", 10}}},
               {"grid", Json{{"p", Json::array({0.8, 1.5})}}},
               {"out", dir.string()}};
    CHECK(thrown_code([&] { cmd_sweep(sweep); }) == errc::invalid_p);
    CHECK_FALSE(fs::exists(dir));

    CHECK(thrown_code([&] { cmd_sweep(Json{{"bases", Json::object()}}); }) ==
          errc::invalid_params);
    CHECK(thrown_code([&] { cmd_sweep(Json(4)); }) == errc::invalid_params);
}

TEST_CASE("gadget demo narrates a spliced run") { CHECK(cmd_gadget_demo(7) == 0); }
