#include "lutdec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace lutdec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

int weight_cmp(double a, double b) {
    if (a < b - kEps) return -1;
    if (a > b + kEps) return 1;
    return 0;
}

}  // namespace

DecodingGraph build_graph(const CodeLayout& layout, StabType type, int m,
                          const EdgeProbs& edge_probs, WeightMode mode) {
    if (m < 1) throw std::invalid_argument("window size m must be >= 1");
    EdgeProbs probs = edge_probs;
    if (mode == WeightMode::Weighted) {
        if (!(probs.space > 0.0 && probs.space < 1.0 && probs.time > 0.0 && probs.time < 1.0))
            throw std::invalid_argument("weighted mode requires edge probabilities in (0, 1)");
    } else if (!(probs.space > 0.0 && probs.time > 0.0)) {
        // Unit mode keeps p-independent weights; probabilities only break
        // degeneracy ties, so fall back to the reference rate p = 1e-2.
        probs = effective_edge_probabilities(NoiseParams{1e-2, 1, 0});
    }

    DecodingGraph g;
    g.type = type;
    g.layers = m;
    g.stab_count = layout.stab_count(type);
    g.n_data = layout.n_data;
    g.node_count = m * g.stab_count + 1;
    g.boundary_node = m * g.stab_count;

    auto edge_weight = [&](double q) {
        return mode == WeightMode::Unit ? 1.0 : -std::log(q / (1.0 - q));
    };

    // One space or boundary edge per data qubit per layer, qubit ascending.
    const auto& stabs = layout.stabilizers(type);
    for (int t = 0; t < m; ++t) {
        for (int q = 0; q < layout.n_data; ++q) {
            std::vector<int> touching;
            for (std::size_t s = 0; s < stabs.size(); ++s)
                if (layout.support_masks(type)[s] & bit(q)) touching.push_back(int(s));
            if (touching.size() == 2) {
                g.edges.push_back({g.node(touching[0], t), g.node(touching[1], t), EdgeKind::Space,
                                   q, edge_weight(probs.space), probs.space});
            } else if (touching.size() == 1) {
                g.edges.push_back({g.node(touching[0], t), g.boundary_node, EdgeKind::Boundary, q,
                                   edge_weight(probs.space), probs.space});
            }
        }
    }
    for (int t = 0; t + 1 < m; ++t)
        for (int s = 0; s < g.stab_count; ++s)
            g.edges.push_back({g.node(s, t), g.node(s, t + 1), EdgeKind::Time, -1,
                               edge_weight(probs.time), probs.time});

    // Adjacency lists.
    std::vector<std::vector<u16>> adjacency(g.node_count);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adjacency[g.edges[e].u].push_back(u16(e));
        adjacency[g.edges[e].v].push_back(u16(e));
    }

    const std::size_t n = std::size_t(g.node_count);
    g.path_weight.assign(n * n, kInf);
    g.path_neg_log_prob.assign(n * n, kInf);
    g.path_correction.assign(n * n, 0);
    g.path_edges.assign(n * n, {});

    // Dijkstra from every source. The boundary node is never expanded, so
    // node-to-node paths cannot pass through the boundary; matching a pair
    // via the boundary is instead expressed as two boundary assignments.
    for (int src = 0; src < g.node_count; ++src) {
        std::vector<double> dw(n, kInf), dn(n, kInf);
        dw[src] = 0.0;
        dn[src] = 0.0;
        using QItem = std::tuple<double, double, int>;
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
        queue.emplace(0.0, 0.0, src);
        while (!queue.empty()) {
            auto [w, nlp, u] = queue.top();
            queue.pop();
            if (weight_cmp(w, dw[u]) > 0 || (weight_cmp(w, dw[u]) == 0 && nlp > dn[u] + kEps))
                continue;
            if (u == g.boundary_node && src != g.boundary_node) continue;
            for (u16 e : adjacency[u]) {
                const auto& edge = g.edges[e];
                int v = edge.u == u ? edge.v : edge.u;
                double nw = w + edge.weight;
                double nn = nlp - std::log(edge.probability);
                int c = weight_cmp(nw, dw[v]);
                if (c < 0 || (c == 0 && nn < dn[v] - kEps)) {
                    dw[v] = nw;
                    dn[v] = nn;
                    queue.emplace(nw, nn, v);
                }
            }
        }

        // Deterministic predecessor choice: smallest (pred, edge) among edges
        // consistent with the final distances.
        std::vector<int> pred_edge(n, -1);
        for (int v = 0; v < g.node_count; ++v) {
            if (v == src || dw[v] == kInf) continue;
            for (u16 e : adjacency[v]) {
                const auto& edge = g.edges[e];
                int u = edge.u == v ? edge.v : edge.u;
                if (u == g.boundary_node && src != g.boundary_node) continue;
                if (weight_cmp(dw[u] + edge.weight, dw[v]) != 0) continue;
                if (std::abs(dn[u] - std::log(edge.probability) - dn[v]) > kEps) continue;
                if (pred_edge[v] == -1) {
                    pred_edge[v] = e;
                } else {
                    const auto& cur = g.edges[pred_edge[v]];
                    int cu = cur.u == v ? cur.v : cur.u;
                    if (std::make_pair(u, int(e)) < std::make_pair(cu, pred_edge[v]))
                        pred_edge[v] = e;
                }
            }
        }

        for (int dst = 0; dst < g.node_count; ++dst) {
            if (dw[dst] == kInf) continue;
            std::size_t idx = g.pair_index(src, dst);
            g.path_weight[idx] = dw[dst];
            g.path_neg_log_prob[idx] = dn[dst];
            u64 corr = 0;
            std::vector<u16> path;
            for (int v = dst; v != src;) {
                int e = pred_edge[v];
                if (e < 0) break;  // src == dst
                path.push_back(u16(e));
                if (g.edges[e].data_qubit >= 0) corr ^= bit(g.edges[e].data_qubit);
                v = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
            }
            std::reverse(path.begin(), path.end());
            g.path_correction[idx] = corr;
            g.path_edges[idx] = std::move(path);
        }
    }
    return g;
}

namespace {

struct DpVal {
    double w = kInf;
    double nlp = kInf;
    u64 corr = 0;
    int choice = -2;  // -1: boundary for lowest event; >= 0: paired event index
};

bool better(double w, double nlp, u64 corr, const DpVal& cur) {
    int c = weight_cmp(w, cur.w);
    if (c != 0) return c < 0;
    if (std::abs(nlp - cur.nlp) > kEps) return nlp < cur.nlp;
    return lex_less(corr, cur.corr);
}

}  // namespace

MatchingResult min_weight_match(const DecodingGraph& graph, std::span<const int> events) {
    std::vector<int> ev(events.begin(), events.end());
    std::sort(ev.begin(), ev.end());
    if (std::adjacent_find(ev.begin(), ev.end()) != ev.end())
        throw std::invalid_argument("duplicate detection event");
    for (int e : ev)
        if (e < 0 || e >= graph.boundary_node)
            throw std::invalid_argument("event is not a stabilizer-layer node");
    const int k = int(ev.size());
    if (k > 24) throw std::invalid_argument("more than 24 detection events");

    MatchingResult result;
    if (k == 0) return result;

    std::vector<DpVal> dp(std::size_t(1) << k);
    dp[0] = {0.0, 0.0, 0, -2};
    for (u32 mask = 1; mask < dp.size(); ++mask) {
        int i = std::countr_zero(mask);
        DpVal best;
        {
            std::size_t idx = graph.pair_index(ev[i], graph.boundary_node);
            const DpVal& rest = dp[mask ^ (1u << i)];
            double w = rest.w + graph.path_weight[idx];
            double nlp = rest.nlp + graph.path_neg_log_prob[idx];
            u64 corr = rest.corr ^ graph.path_correction[idx];
            if (better(w, nlp, corr, best)) best = {w, nlp, corr, -1};
        }
        for (int j = i + 1; j < k; ++j) {
            if (!(mask & (1u << j))) continue;
            std::size_t idx = graph.pair_index(ev[i], ev[j]);
            const DpVal& rest = dp[mask ^ (1u << i) ^ (1u << j)];
            double w = rest.w + graph.path_weight[idx];
            double nlp = rest.nlp + graph.path_neg_log_prob[idx];
            u64 corr = rest.corr ^ graph.path_correction[idx];
            if (better(w, nlp, corr, best)) best = {w, nlp, corr, j};
        }
        dp[mask] = best;
    }

    result.total_weight = dp.back().w;
    for (u32 mask = u32(dp.size() - 1); mask;) {
        int i = std::countr_zero(mask);
        int choice = dp[mask].choice;
        int partner = choice < 0 ? graph.boundary_node : ev[choice];
        result.pairing.emplace_back(ev[i], partner);
        const auto& path = graph.path_edges[graph.pair_index(ev[i], partner)];
        result.realized_edges.insert(result.realized_edges.end(), path.begin(), path.end());
        mask ^= (1u << i);
        if (choice >= 0) mask ^= (1u << choice);
    }
    std::sort(result.realized_edges.begin(), result.realized_edges.end());
    return result;
}

Commit commit_oldest_layer(const DecodingGraph& graph, const MatchingResult& match) {
    Commit commit;
    for (u16 e : match.realized_edges) {
        const auto& edge = graph.edges[e];
        bool touches_oldest = (edge.u != graph.boundary_node && graph.layer_of(edge.u) == 0) ||
                              (edge.v != graph.boundary_node && graph.layer_of(edge.v) == 0);
        if (!touches_oldest) continue;
        if (edge.data_qubit >= 0) commit.correction ^= bit(edge.data_qubit);
        for (int node : {edge.u, edge.v})
            if (node != graph.boundary_node && graph.layer_of(node) == 1)
                commit.state_delta ^= bit(graph.stab_of(node));
    }
    return commit;
}

}  // namespace lutdec
