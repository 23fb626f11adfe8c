#include <cmath>

#include "assist/extensions.hpp"
#include "assist/peering.hpp"
#include "assist/testkit.hpp"
#include "doctest.h"

using namespace assist;

namespace {

LabeledGraph data_with(std::vector<std::pair<std::string, Label>> nodes) {
    LabeledGraph g(GraphRole::data);
    for (auto& [name, label] : nodes) g.add_node(name, label);
    return g;
}

}  // namespace

TEST_CASE("label index groups data nodes by label") {
    auto g = data_with({{"n1", "A"}, {"n2", "A"}, {"n3", "B"}});
    auto idx = build_label_index(g);
    CHECK(idx.peers_of("A") == std::vector<NodeId>{0, 1});
    CHECK(idx.peers_of("B") == std::vector<NodeId>{2});
    CHECK(idx.peers_of("C").empty());
    CHECK(idx.labels() == std::vector<Label>{"A", "B"});
}

TEST_CASE("label index over an empty graph is empty") {
    auto idx = build_label_index(LabeledGraph(GraphRole::data));
    CHECK(idx.size() == 0);
    CHECK(idx.peers_of("A").empty());
}

TEST_CASE("a single heavily shared label yields one big bucket") {
    LabeledGraph g(GraphRole::data);
    for (int i = 0; i < 1000; ++i) g.add_node("n" + std::to_string(i), "X");
    auto idx = build_label_index(g);
    CHECK(idx.peers_of("X").size() == 1000);
}

TEST_CASE("peer_all pairs pattern nodes with same-label data nodes") {
    LabeledGraph pattern(GraphRole::pattern);
    pattern.add_node("u", "A");
    auto data = data_with({{"n1", "A"}, {"n2", "A"}});
    auto idx = build_label_index(data);
    auto map = peer_all(pattern, idx);
    REQUIRE(map.peers.size() == 1);
    REQUIRE(map.peers[0].size() == 2);
    CHECK(map.peers[0][0].data_node == 0);
    CHECK(map.peers[0][1].data_node == 1);
    CHECK(map.peers[0][0].quality == 1.0);
    CHECK(map.peered_pattern_nodes == std::vector<NodeId>{0});
}

TEST_CASE("unpeered pattern nodes are retained and flagged") {
    LabeledGraph pattern(GraphRole::pattern);
    pattern.add_node("u", "Z");
    auto data = data_with({{"n1", "A"}});
    auto map = peer_all(pattern, build_label_index(data));
    CHECK(map.peers[0].empty());
    CHECK_FALSE(map.is_peered(0));
    CHECK(map.unpeered_pattern_nodes == std::vector<NodeId>{0});
}

TEST_CASE("ontology peering includes subsumed labels at reduced quality") {
    LabeledGraph pattern(GraphRole::pattern);
    pattern.add_node("u", "person");
    auto data = data_with({{"n1", "Alice"}});
    Ontology ont = load_ontology("person > Alice");
    CHECK(ont.subsumes("person", "Alice"));

    auto map = peer_all(pattern, build_label_index(data), &ont, 0.5);
    REQUIRE(map.peers[0].size() == 1);
    CHECK(map.peers[0][0].data_node == 0);
    CHECK(map.peers[0][0].quality == 0.5);
}

TEST_CASE("peer completeness against a brute-force double loop") {
    LabeledGraph tri(GraphRole::pattern);
    NodeId a = tri.add_node("A", "A");
    NodeId b = tri.add_node("B", "B");
    tri.add_edge(a, b);
    for (std::uint64_t seed : {3u, 17u, 59u}) {
        PlantSpec spec{tri, 80, 40, {"A", "B", "C", "D", "E", "F"}, 0.0, 0.0, seed};
        auto pair = generate_pair(spec);
        REQUIRE(pair.data.node_count() <= 200);

        auto idx = build_label_index(pair.data);
        auto map = peer_all(pair.pattern, idx);
        for (NodeId u = 0; u < pair.pattern.node_count(); ++u) {
            for (NodeId x = 0; x < pair.data.node_count(); ++x) {
                bool same = pair.pattern.label(u) == pair.data.label(x);
                CHECK(same == (map.quality(u, x) > 0.0));
            }
        }
        // Reverse consistency.
        for (NodeId u = 0; u < map.peers.size(); ++u) {
            for (const PeerEntry& e : map.peers[u]) {
                const auto& rev = map.reverse[e.data_node];
                CHECK(std::count(rev.begin(), rev.end(), u) == 1);
            }
        }
        for (NodeId x = 0; x < map.reverse.size(); ++x) {
            for (NodeId u : map.reverse[x]) CHECK(map.quality(u, x) > 0.0);
        }
    }
}

TEST_CASE("lookup comparisons grow with log of the data size") {
    LabeledGraph seed_edge(GraphRole::pattern);
    NodeId a = seed_edge.add_node("A", "A");
    NodeId b = seed_edge.add_node("B", "B");
    seed_edge.add_edge(a, b);

    std::vector<Label> alphabet;
    for (int i = 0; i < 30; ++i) alphabet.push_back("L" + std::to_string(i));

    std::vector<double> log_d, per_node;
    for (std::uint32_t exp : {8u, 10u, 12u}) {
        std::uint32_t d = 1u << exp;
        PlantSpec spec{seed_edge, d - 2, 0, alphabet, 0.0, 0.0, 7};
        spec.extra_nodes = d - 2;
        auto pair = generate_pair(spec);
        PlantSpec pspec{seed_edge, 18, 0, alphabet, 0.0, 0.0, 8};
        auto ppair = generate_pair(pspec);

        auto idx = build_label_index(pair.data);
        auto map = peer_all(ppair.pattern, idx);
        double per = static_cast<double>(map.comparisons) /
                     static_cast<double>(ppair.pattern.node_count());
        per_node.push_back(per);
        log_d.push_back(std::log2(static_cast<double>(d) + 1));
        CHECK(per <= 3.0 * std::log2(static_cast<double>(d) + 1));
    }
    CHECK(per_node[1] > per_node[0]);
    CHECK(per_node[2] > per_node[1]);
}
