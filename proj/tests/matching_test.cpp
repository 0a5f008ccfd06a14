#include "doctest.h"
#include "lutdec/matching.hpp"

#include <map>
#include <random>

using namespace lutdec;

namespace {

DecodingGraph graph_for(int d, StabType type, int m) {
    CodeLayout layout = build_layout(d);
    return build_graph(layout, type, m, effective_edge_probabilities(NoiseParams{1e-2, 1, 0}));
}

// Brute force over all ways to pair events with each other or the boundary,
// using the graph's own distance table.
double brute_force_weight(const DecodingGraph& g, std::vector<int> events) {
    if (events.empty()) return 0.0;
    int e0 = events.front();
    events.erase(events.begin());
    // match e0 to the boundary
    double best = g.path_weight[g.pair_index(e0, g.boundary_node)] + brute_force_weight(g, events);
    // or to any other event
    for (std::size_t i = 0; i < events.size(); ++i) {
        std::vector<int> rest = events;
        int partner = rest[i];
        rest.erase(rest.begin() + std::ptrdiff_t(i));
        double w = g.path_weight[g.pair_index(e0, partner)] + brute_force_weight(g, rest);
        best = std::min(best, w);
    }
    return best;
}

std::map<int, int> edge_degrees(const DecodingGraph& g, const std::vector<u16>& edges) {
    std::map<int, int> degree;
    for (u16 e : edges) {
        degree[g.edges[e].u] ^= 1;
        degree[g.edges[e].v] ^= 1;
    }
    return degree;
}

}  // namespace

TEST_CASE("graph shape for [d=3, m=2], Z type") {
    DecodingGraph g = graph_for(3, StabType::Z, 2);
    CHECK(g.stab_count == 4);
    CHECK(g.node_count == 9);
    CHECK(g.boundary_node == 8);
    int space = 0, boundary = 0, time = 0;
    for (const auto& e : g.edges) {
        if (e.kind == EdgeKind::Space) ++space;
        if (e.kind == EdgeKind::Boundary) ++boundary;
        if (e.kind == EdgeKind::Time) ++time;
        if (e.kind == EdgeKind::Time)
            CHECK(e.data_qubit == -1);
        else
            CHECK(e.data_qubit >= 0);
    }
    // one space-or-boundary edge per data qubit per layer, plus s time edges
    CHECK(space + boundary == 9 * 2);
    CHECK(time == 4);
}

TEST_CASE("distance table is symmetric and satisfies the triangle inequality") {
    for (int d : {3, 4}) {
        DecodingGraph g = graph_for(d, StabType::Z, 2);
        int n = g.node_count;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                CHECK(g.path_weight[g.pair_index(u, v)] ==
                      doctest::Approx(g.path_weight[g.pair_index(v, u)]));
                for (int w = 0; w < n; ++w) {
                    if (w == g.boundary_node && u != g.boundary_node && v != g.boundary_node)
                        continue;  // paths through the boundary are not allowed
                    CHECK(g.path_weight[g.pair_index(u, v)] <=
                          g.path_weight[g.pair_index(u, w)] +
                              g.path_weight[g.pair_index(w, v)] + 1e-9);
                }
            }
    }
}

TEST_CASE("representative paths have the claimed weight and endpoints") {
    DecodingGraph g = graph_for(4, StabType::X, 2);
    for (int u = 0; u < g.node_count; ++u)
        for (int v = 0; v < g.node_count; ++v) {
            if (u == v) continue;
            const auto& path = g.path_edges[g.pair_index(u, v)];
            double w = 0;
            u64 corr = 0;
            for (u16 e : path) {
                w += g.edges[e].weight;
                if (g.edges[e].data_qubit >= 0) corr ^= bit(g.edges[e].data_qubit);
            }
            CHECK(w == doctest::Approx(g.path_weight[g.pair_index(u, v)]));
            CHECK(corr == g.path_correction[g.pair_index(u, v)]);
            auto degree = edge_degrees(g, path);
            for (auto [node, odd] : degree)
                CHECK(bool(odd) == (node == u || node == v));
        }
}

TEST_CASE("empty and single-event matchings") {
    DecodingGraph g = graph_for(3, StabType::Z, 2);
    MatchingResult empty = min_weight_match(g, std::vector<int>{});
    CHECK(empty.pairing.empty());
    CHECK(empty.realized_edges.empty());
    CHECK(empty.total_weight == 0.0);

    for (int s = 0; s < g.stab_count; ++s) {
        int node = g.node(s, 0);
        MatchingResult single = min_weight_match(g, std::vector<int>{node});
        REQUIRE(single.pairing.size() == 1);
        CHECK(single.pairing[0].second == g.boundary_node);
        CHECK(single.total_weight ==
              doctest::Approx(g.path_weight[g.pair_index(node, g.boundary_node)]));
    }
}

TEST_CASE("same stabilizer in adjacent layers matches through the time edge") {
    DecodingGraph g = graph_for(3, StabType::Z, 2);
    for (int s = 0; s < g.stab_count; ++s) {
        std::vector<int> events{g.node(s, 0), g.node(s, 1)};
        MatchingResult r = min_weight_match(g, events);
        REQUIRE(r.realized_edges.size() == 1);
        CHECK(g.edges[r.realized_edges[0]].kind == EdgeKind::Time);
        Commit c = commit_oldest_layer(g, r);
        CHECK(c.correction == 0);
        CHECK(c.state_delta == bit(s));
    }
}

TEST_CASE("matching weight agrees with brute force over pairings") {
    std::mt19937_64 rng(7);
    for (int d : {3, 4}) {
        for (StabType type : {StabType::X, StabType::Z}) {
            DecodingGraph g = graph_for(d, type, 2);
            int real_nodes = g.node_count - 1;
            for (int rep = 0; rep < 200; ++rep) {
                int k = int(rng() % 7);
                std::vector<int> events;
                while (int(events.size()) < k) {
                    int n = int(rng() % u64(real_nodes));
                    if (std::find(events.begin(), events.end(), n) == events.end())
                        events.push_back(n);
                }
                MatchingResult r = min_weight_match(g, events);
                CHECK(r.total_weight == doctest::Approx(brute_force_weight(g, events)));
            }
        }
    }
}

TEST_CASE("realized edges explain exactly the input events") {
    std::mt19937_64 rng(13);
    DecodingGraph g = graph_for(4, StabType::Z, 3);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<int> events;
        for (int n = 0; n < g.node_count - 1; ++n)
            if (rng() % 8 == 0) events.push_back(n);
        if (events.size() > 10) continue;
        MatchingResult r = min_weight_match(g, events);
        auto degree = edge_degrees(g, r.realized_edges);
        degree.erase(g.boundary_node);
        for (auto [node, odd] : degree)
            CHECK(bool(odd) ==
                  (std::find(events.begin(), events.end(), node) != events.end()));
        for (int e : events) CHECK(degree[e] == 1);
    }
}

TEST_CASE("matching is deterministic across rebuilds") {
    DecodingGraph a = graph_for(4, StabType::X, 2);
    DecodingGraph b = graph_for(4, StabType::X, 2);
    CHECK(a.path_correction == b.path_correction);
    std::vector<int> events{0, 3, 9, 12};
    MatchingResult ra = min_weight_match(a, events);
    MatchingResult rb = min_weight_match(b, events);
    CHECK(ra.realized_edges == rb.realized_edges);
    CHECK(ra.pairing == rb.pairing);
}

TEST_CASE("degenerate ties resolve to the lexicographically smallest correction") {
    // Two events diagonal across a d=3 layer admit multiple minimum-weight
    // pairings; the committed correction must be reproducible and lex-minimal
    // among optimal choices. We assert stability rather than a hand value:
    // the same answer from two independently built graphs and from the
    // reversed event order.
    DecodingGraph g = graph_for(3, StabType::Z, 2);
    std::vector<int> events{g.node(0, 0), g.node(3, 0)};
    MatchingResult r1 = min_weight_match(g, events);
    std::vector<int> reversed{g.node(3, 0), g.node(0, 0)};
    MatchingResult r2 = min_weight_match(g, reversed);
    CHECK(r1.realized_edges == r2.realized_edges);
    Commit c1 = commit_oldest_layer(g, r1);
    Commit c2 = commit_oldest_layer(g, r2);
    CHECK(c1.correction == c2.correction);
}

TEST_CASE("event validation") {
    DecodingGraph g = graph_for(3, StabType::Z, 2);
    CHECK_THROWS(min_weight_match(g, std::vector<int>{g.boundary_node}));
    CHECK_THROWS(min_weight_match(g, std::vector<int>{-1}));
    CHECK_THROWS(min_weight_match(g, std::vector<int>{99}));
}
