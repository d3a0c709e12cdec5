#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "majority/dynamics.hpp"
#include "majority/error.hpp"
#include "majority/graph.hpp"
#include "majority/lyapunov.hpp"
#include "majority/rational.hpp"
#include "majority/retention.hpp"
#include "majority/weighting.hpp"

namespace majority {

using Json = nlohmann::json;

// --------------------------------------------------------------------------
// Graph text format:
//
//   # optional comments
//   graph n=<n> dmax=<d>
//   e <u> <v>
//   loop <u>
//
// Structural violations surface through the graph-building taxonomy; lexical
// ones raise parse_error with the line number as the subject.

inline void write_graph(std::ostream& os, const Graph& g) {
    os << "graph n=" << g.n << " dmax=" << g.d_max << "\n";
    for (auto& [u, v] : g.edges) {
        if (u == v)
            os << "loop " << u << "\n";
        else
            os << "e " << u << " " << v << "\n";
    }
}

namespace detail {

inline long parse_keyed_int(const std::string& token, const std::string& key, int line_no) {
    if (token.rfind(key + "=", 0) != 0)
        fail(errc::parse_error, "expected " + key + "=<int>, got '" + token + "'", line_no);
    try {
        std::size_t used = 0;
        long value = std::stol(token.substr(key.size() + 1), &used);
        if (used != token.size() - key.size() - 1) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad integer in '" + token + "'", line_no);
    }
}

inline long parse_vertex(std::istringstream& ss, int line_no) {
    std::string tok;
    if (!(ss >> tok)) fail(errc::parse_error, "missing vertex id", line_no);
    try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad vertex id '" + tok + "'", line_no);
    }
}

}  // namespace detail

inline Graph read_graph(std::istream& is) {
    std::string line;
    int line_no = 0;
    bool have_header = false;
    long n = 0, dmax = 0;
    EdgeList el;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word) || word[0] == '#') continue;
        if (!have_header) {
            if (word != "graph") fail(errc::parse_error, "expected header line 'graph n=<n> dmax=<d>'", line_no);
            std::string tn, td;
            if (!(ss >> tn >> td)) fail(errc::parse_error, "incomplete header", line_no);
            n = detail::parse_keyed_int(tn, "n", line_no);
            dmax = detail::parse_keyed_int(td, "dmax", line_no);
            if (n < 1 || dmax < 1) fail(errc::parse_error, "header values must be positive", line_no);
            el.n = int(n);
            have_header = true;
        } else if (word == "e") {
            long u = detail::parse_vertex(ss, line_no);
            long v = detail::parse_vertex(ss, line_no);
            el.edges.emplace_back(int(u), int(v));
        } else if (word == "loop") {
            el.loops.push_back(int(detail::parse_vertex(ss, line_no)));
        } else {
            fail(errc::parse_error, "unknown directive '" + word + "'", line_no);
        }
        std::string extra;
        if (ss >> extra && extra[0] != '#')
            fail(errc::parse_error, "trailing token '" + extra + "'", line_no);
    }
    if (!have_header) fail(errc::parse_error, "empty input, no header line", 0);
    return build_graph(el, int(dmax));
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::missing_data, "cannot open graph file " + path);
    return read_graph(in);
}

inline void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) fail(errc::missing_data, "cannot write graph file " + path);
    write_graph(out, g);
}

// --------------------------------------------------------------------------
// Trajectory export. Flips are the rounds (sync) or event times (async) at
// which a vertex's opinion actually changed; `final` is the limit in the
// sync case and the last config in the async case.

inline Json trajectory_json(const SyncRun& run) {
    Json flips = Json::array();
    for (int t = 1; t < int(run.configs.size()); ++t)
        for (int v = 0; v < int(run.configs[t].size()); ++v)
            if (run.configs[t][v] != run.configs[t - 1][v]) flips.push_back({v, t});
    Json fin = Json::array();
    for (auto x : limit_opinions(run)) fin.push_back(int(x));
    return Json{{"model", "sync"},
                {"t_cycle", run.t_cycle},
                {"period", run.period},
                {"flips", std::move(flips)},
                {"final", std::move(fin)}};
}

inline Json trajectory_json(const AsyncRun& run) {
    Json flips = Json::array();
    for (auto& ev : run.events)
        if (ev.flipped()) flips.push_back({ev.v, ev.t});
    Json fin = Json::array();
    for (auto x : run.final_config) fin.push_back(int(x));
    return Json{{"model", "async"},
                {"stable", run.stable},
                {"t_last_flip", run.t_last_flip},
                {"tie_resamples", run.tie_resamples},
                {"flips", std::move(flips)},
                {"final", std::move(fin)}};
}

inline void write_flip_csv(std::ostream& os, const SyncRun& run) {
    os << "vertex,time\n";
    for (int t = 1; t < int(run.configs.size()); ++t)
        for (int v = 0; v < int(run.configs[t].size()); ++v)
            if (run.configs[t][v] != run.configs[t - 1][v]) os << v << "," << t << "\n";
}

inline void write_flip_csv(std::ostream& os, const AsyncRun& run) {
    os << "vertex,time\n";
    for (auto& ev : run.events)
        if (ev.flipped()) os << ev.v << "," << ev.t << "\n";
}

// --------------------------------------------------------------------------
// Energy traces. Doubles stay JSON numbers; exact rationals serialize as
// "num/den" strings so nothing is rounded on the way out.

inline Json scalar_json(double x) { return x; }
inline Json scalar_json(const Rational& x) {
    return rational_numerator(x) + "/" + rational_denominator(x);
}

inline std::string scalar_csv(double x) {
    std::ostringstream ss;
    ss.precision(17);
    ss << x;
    return ss.str();
}
inline std::string scalar_csv(const Rational& x) {
    return rational_numerator(x) + "/" + rational_denominator(x);
}

template <class S>
Json energy_json(const EnergyReport<S>& rep) {
    Json j;
    j["times"] = rep.times;
    Json L = Json::array(), Lp = Json::array(), Jd = Json::array(), res = Json::array();
    for (auto& x : rep.L) L.push_back(scalar_json(x));
    for (auto& x : rep.L_pre) Lp.push_back(scalar_json(x));
    for (auto& x : rep.J) Jd.push_back(scalar_json(x));
    for (auto& x : rep.residual) res.push_back(scalar_json(x));
    j["L"] = std::move(L);
    if (!rep.L_pre.empty()) j["L_pre"] = std::move(Lp);
    j["J"] = std::move(Jd);
    j["residual"] = std::move(res);
    j["monotone"] = rep.monotone;
    j["max_residual"] = scalar_json(rep.max_residual);
    return j;
}

template <class S>
void write_energy_csv(std::ostream& os, const EnergyReport<S>& rep) {
    os << "t,L,J,residual\n";
    for (std::size_t k = 0; k < rep.times.size(); ++k) {
        os << scalar_csv(rep.times[k]) << "," << scalar_csv(rep.L[k]);
        if (k == 0)
            os << ",,";  // no step into time 0
        else
            os << "," << scalar_csv(rep.J[k - 1]) << "," << scalar_csv(rep.residual[k - 1]);
        os << "\n";
    }
}

// --------------------------------------------------------------------------
// Weighting export: one record per undirected edge. Rational weights go out
// as numerator/denominator pairs, doubles as plain numbers.

inline Json weighting_json(const EdgeWeighting<double>& w) {
    const Graph& g = w.graph();
    Json edges = Json::array();
    for (auto& [u, v] : g.edges)
        edges.push_back(Json{{"u", u}, {"v", v}, {"w", w.weight(u, v)}});
    return Json{{"n", g.n}, {"edges", std::move(edges)}};
}

inline Json weighting_json(const EdgeWeighting<Rational>& w) {
    const Graph& g = w.graph();
    Json edges = Json::array();
    for (auto& [u, v] : g.edges) {
        Rational z = w.weight(u, v);
        edges.push_back(Json{{"u", u},
                             {"v", v},
                             {"num", rational_numerator(z)},
                             {"den", rational_denominator(z)}});
    }
    return Json{{"n", g.n}, {"edges", std::move(edges)}};
}

// --------------------------------------------------------------------------
// Estimator results, as a JSON object and as a CSV row keyed by graph and p.

inline Json estimator_json(const EstimatorResult& r) {
    return Json{{"estimator", r.estimator}, {"trials", r.trials},   {"errors", r.errors},
                {"ties", r.ties},           {"skipped", r.skipped}, {"error_rate", r.error_rate},
                {"ci3", r.sigma3}};
}

inline std::string estimator_csv_header() {
    return "graph,p,estimator,trials,errors,rate,ci,ties,skipped";
}

inline std::string estimator_csv_row(const std::string& graph_id, double p,
                                     const EstimatorResult& r) {
    std::ostringstream ss;
    ss.precision(17);
    // estimator ids carry commas (cone parameters), so that field is quoted
    ss << graph_id << "," << p << ",\"" << r.estimator << "\"," << r.trials << "," << r.errors
       << "," << r.error_rate << "," << r.sigma3 << "," << r.ties << "," << r.skipped;
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail(errc::missing_data, "cannot write " + path);
    out << content;
}

inline void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace majority
