#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "majority/dynamics.hpp"
#include "majority/graph.hpp"
#include "majority/growth.hpp"
#include "majority/rational.hpp"

namespace majority {

// Legality for an edge weighting z on a graph of degree bound d: all weights
// in (0,1] and any two edges sharing a vertex have weight ratio strictly
// below a = (d+1)/(d-1). That ratio cap is what lets the weighted vote at a
// vertex keep the sign of the unweighted one, which the energy-drop argument
// leans on at every step.
//
// Scalar S is double or Rational; the summable construction is rational by
// nature, so both instantiations evaluate the same closed form.
template <class S>
class EdgeWeighting {
  public:
    enum class Kind { constant, decaying, explicit_map };

    static EdgeWeighting constant(const Graph& g, S value = S(1)) {
        EdgeWeighting w;
        w.g_ = &g;
        w.kind_ = Kind::constant;
        w.const_value_ = value;
        w.d_ = g.d_max;
        return w;
    }

    // The summable weighting based at i0: an edge whose nearer endpoint sits
    // at distance r gets weight a^-r * eta(r)/eta(0), with
    // eta(r) = 1/a + (1 - 1/a)(r+1)/(r+2), an increasing rational curve in
    // (1/a, 1). Edges at the base keep weight exactly 1; adjacent edges
    // differ by at most one in r, so their ratio stays below a.
    static EdgeWeighting decaying(const Graph& g, int base, int d) {
        if (d < 3 || d % 2 == 0) fail(errc::invalid_params, "degree bound must be odd and >= 3");
        if (base < 0 || base >= g.n) fail(errc::invalid_params, "base vertex out of range", base);
        EdgeWeighting w;
        w.g_ = &g;
        w.kind_ = Kind::decaying;
        w.base_ = base;
        w.d_ = d;
        w.dist_ = g.distances(base);
        int depth = 0;
        for (int v = 0; v < g.n; ++v) depth = std::max(depth, w.dist_[v]);
        S inv_a = scalar_ops<S>::ratio(d - 1, d + 1);
        S eta0 = w.eta(0);
        S pow_inv_a = S(1);
        for (int r = 0; r <= depth; ++r) {
            w.by_distance_.push_back(pow_inv_a * w.eta(r) / eta0);
            pow_inv_a = pow_inv_a * inv_a;
        }
        return w;
    }

    static EdgeWeighting decaying(const Graph& g, int base) { return decaying(g, base, g.d_max); }

    // The weighting aliases the graph it was built from, so temporaries are
    // rejected at compile time instead of dangling.
    static EdgeWeighting constant(Graph&& g, S value = S(1)) = delete;
    static EdgeWeighting decaying(Graph&& g, int base, int d) = delete;
    static EdgeWeighting decaying(Graph&& g, int base) = delete;
    static EdgeWeighting explicit_map(Graph&& g, int d,
                                      const std::vector<std::pair<std::pair<int, int>, S>>&) =
        delete;

    // Arbitrary per-edge weights, for adversarial inputs in tests and tools.
    static EdgeWeighting explicit_map(const Graph& g, int d,
                                      const std::vector<std::pair<std::pair<int, int>, S>>& entries) {
        EdgeWeighting w;
        w.g_ = &g;
        w.kind_ = Kind::explicit_map;
        w.d_ = d;
        for (auto& [edge, value] : entries) {
            auto [u, v] = std::minmax(edge.first, edge.second);
            w.map_[key(u, v)] = value;
        }
        return w;
    }

    S eta(int r) const {
        S inv_a = scalar_ops<S>::ratio(d_ - 1, d_ + 1);
        return inv_a + (S(1) - inv_a) * scalar_ops<S>::ratio(r + 1, r + 2);
    }

    S a() const { return scalar_ops<S>::ratio(d_ + 1, d_ - 1); }

    int d() const { return d_; }
    int base() const { return base_; }
    Kind kind() const { return kind_; }
    const Graph& graph() const { return *g_; }

    // distance of the edge from the base: min endpoint distance
    int edge_distance(int u, int v) const { return std::min(dist_[u], dist_[v]); }

    S weight(int u, int v) const {
        switch (kind_) {
            case Kind::constant:
                return const_value_;
            case Kind::decaying:
                return by_distance_[edge_distance(u, v)];
            case Kind::explicit_map: {
                auto [a, b] = std::minmax(u, v);
                auto it = map_.find(key(a, b));
                if (it == map_.end())
                    fail(errc::missing_data,
                         "no weight for edge " + std::to_string(a) + "-" + std::to_string(b));
                return it->second;
            }
        }
        fail(errc::invalid_params, "corrupt weighting");
    }

    // Total weight over undirected edges, loops included.
    S total() const {
        S sum = S(0);
        for (auto& [u, v] : g_->edges) sum += weight(u, v);
        return sum;
    }

  private:
    static std::int64_t key(int u, int v) { return std::int64_t(u) << 32 | std::uint32_t(v); }

    const Graph* g_ = nullptr;
    Kind kind_ = Kind::constant;
    S const_value_ = S(1);
    int base_ = 0;
    int d_ = 3;
    std::vector<int> dist_;
    std::vector<S> by_distance_;
    std::unordered_map<std::int64_t, S> map_;
};

struct LegalityWitness {
    std::pair<int, int> edge1, edge2;  // share a vertex, ratio >= a
};

// Check the ratio condition over every pair of edges sharing a vertex
// (loops count as edges at their vertex). Comparisons avoid division:
// z1/z2 < a  <=>  z1*(d-1) < z2*(d+1), exact in both arithmetic modes.
template <class S>
std::optional<LegalityWitness> check_d_legal(const EdgeWeighting<S>& w) {
    const Graph& g = w.graph();
    int d = w.d();
    for (auto& [u, v] : g.edges) {
        S z = w.weight(u, v);
        if (!(z > S(0)) || z > S(1)) return LegalityWitness{{u, v}, {u, v}};
    }
    for (int x = 0; x < g.n; ++x) {
        std::vector<std::pair<int, int>> incident;
        for (int j : g.adj[x]) incident.push_back(std::minmax(x, j));
        for (std::size_t p = 0; p < incident.size(); ++p)
            for (std::size_t q = p + 1; q < incident.size(); ++q) {
                S z1 = w.weight(incident[p].first, incident[p].second);
                S z2 = w.weight(incident[q].first, incident[q].second);
                if (!(z1 * S(d - 1) < z2 * S(d + 1)) || !(z2 * S(d - 1) < z1 * S(d + 1)))
                    return LegalityWitness{incident[p], incident[q]};
            }
    }
    return std::nullopt;
}

// The summable weighting, verified: d-legal by construction and with total
// weight within the discounted-growth budget a*d*M(base). A legality failure
// here would mean the closed form itself is wrong, hence not_d_legal is a
// guarantee violation rather than an input error.
template <class S>
EdgeWeighting<S> make_weighting(const Graph& g, int base, int d) {
    auto w = EdgeWeighting<S>::decaying(g, base, d);
    if (auto witness = check_d_legal(w))
        fail(errc::not_d_legal, "constructed weighting violates the ratio condition");
    auto profile = growth_moment(g, base, d, g.n);
    double budget = profile.a() * d * profile.moment;
    if (scalar_ops<S>::to_double(w.total()) > budget * (1.0 + 1e-12))
        fail(errc::not_d_legal, "constructed weighting exceeds its growth budget");
    return w;
}

template <class S>
EdgeWeighting<S> make_weighting(const Graph& g, int base) {
    return make_weighting<S>(g, base, g.d_max);
}

// reject temporaries: the result aliases the graph (see EdgeWeighting)
template <class S>
EdgeWeighting<S> make_weighting(Graph&& g, int base, int d) = delete;
template <class S>
EdgeWeighting<S> make_weighting(Graph&& g, int base) = delete;

struct SignPreservationResult {
    bool holds = true;
    OpinionConfig counterexample;  // config where weighted and plain signs split
    int vertex = -1;
};

// A d-legal weighting never changes any vertex's vote. Exhaustive over all
// 2^n configs for n <= exhaustive_limit, randomized beyond that.
template <class S>
SignPreservationResult check_sign_preservation(const EdgeWeighting<S>& w, int exhaustive_limit = 12,
                                               int random_trials = 2000,
                                               std::uint64_t seed = 0x5157) {
    const Graph& g = w.graph();
    auto verdict = [&](const OpinionConfig& c) -> int {
        for (int i = 0; i < g.n; ++i) {
            std::int64_t plain = 0;
            S weighted = S(0);
            for (int j : g.adj[i]) {
                plain += c[j];
                weighted += w.weight(i, j) * S(int(c[j]));
            }
            bool plain_pos = plain > 0;
            bool weighted_pos = weighted > S(0);
            if (plain_pos != weighted_pos) return i;
        }
        return -1;
    };

    SignPreservationResult out;
    if (g.n <= exhaustive_limit) {
        for (std::uint64_t mask = 0; mask < (1ull << g.n); ++mask) {
            OpinionConfig c(g.n);
            for (int i = 0; i < g.n; ++i) c[i] = (mask >> i) & 1 ? 1 : -1;
            int bad = verdict(c);
            if (bad >= 0) return {false, c, bad};
        }
        return out;
    }
    Rng rng(seed);
    for (int t = 0; t < random_trials; ++t) {
        OpinionConfig c(g.n);
        for (int i = 0; i < g.n; ++i) c[i] = rng.coin() ? 1 : -1;
        int bad = verdict(c);
        if (bad >= 0) return {false, c, bad};
    }
    return out;
}

}  // namespace majority
