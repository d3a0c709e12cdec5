#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "majority/majority.hpp"

namespace {

using majority::Json;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) majority::fail(majority::errc::missing_data, "cannot open config " + path);
    try {
        return Json::parse(in, nullptr, true, true);  // allow comments
    } catch (const std::exception& e) {
        majority::fail(majority::errc::parse_error, std::string("config: ") + e.what());
    }
}

// the spec object inside a config: sweeps keep it under "base", manifests
// under "spec", plain configs are the spec itself
Json& spec_target(Json& j, bool sweep) {
    if (sweep) return j["base"];
    if (j.contains("spec") && j["spec"].is_object()) return j["spec"];
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"majority dynamics: simulation, theorem checks, and retention estimates"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path, out_dir, mode, model;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    app.add_option("--config", config_path, "JSON experiment spec (or a manifest to replay)");
    auto* opt_seed = app.add_option("--seed", seed, "master RNG seed");
    auto* opt_trials = app.add_option("--trials", trials, "number of trials");
    app.add_option("--out", out_dir, "output directory root");
    app.add_option("--mode", mode, "arithmetic mode: float or rational");
    app.add_option("--model", model, "update model: sync or async");

    auto* sim = app.add_subcommand("simulate", "run trajectories and export them");
    auto* ver = app.add_subcommand("verify", "run a randomized theorem-check suite");
    std::string suite_arg;
    ver->add_option("suite", suite_arg, "period|flips|bunker|lyapunov|monopoly|gadget");
    auto* est = app.add_subcommand("estimate", "Monte Carlo reconstruction error");
    auto* swp = app.add_subcommand("sweep", "cross-product of estimates, one CSV row per cell");
    auto* dem = app.add_subcommand("gadget-demo", "narrated run on the spliced complete(4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Json j = config_path.empty() ? Json::object() : load_json(config_path);
        Json& spec_json = spec_target(j, swp->parsed());
        if (opt_seed->count() > 0) spec_json["seed"] = seed;
        if (opt_trials->count() > 0) spec_json["trials"] = trials;
        if (!mode.empty()) spec_json["mode"] = mode;
        if (!model.empty()) spec_json["model"] = model;
        if (!out_dir.empty()) {
            if (swp->parsed())
                j["out"] = out_dir;
            else
                spec_json["out"] = out_dir;
        }
        if (swp->parsed()) return majority::cmd_sweep(j);
        if (dem->parsed())
            return majority::cmd_gadget_demo(opt_seed->count() > 0 ? seed : 1);
        if (ver->parsed() && !suite_arg.empty()) spec_json["suite"] = suite_arg;
        auto spec = majority::parse_spec(j);
        if (sim->parsed()) return majority::cmd_simulate(spec);
        if (ver->parsed()) return majority::cmd_verify(spec);
        if (est->parsed()) return majority::cmd_estimate(spec);
        return 2;
    } catch (const majority::Error& e) {
        std::cerr << "error (" << majority::error_name(e.code()) << "): " << e.what() << "\n";
        return majority::is_guarantee_violation(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
