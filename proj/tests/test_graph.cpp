#include <algorithm>
#include <random>

#include "assist/graph.hpp"
#include "assist/testkit.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace assist;
using nlohmann::json;

namespace {

json doc(const char* text) { return json::parse(text); }

}  // namespace

TEST_CASE("load_graph builds a validated graph") {
    auto g = load_graph(doc(R"({
        "nodes": [{"id": "1", "label": "A"}, {"id": "2", "label": "B"}],
        "edges": [{"source": "1", "target": "2"}]
    })"),
                        GraphRole::pattern);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.role() == GraphRole::pattern);
    CHECK(g.label(*g.find("1")) == "A");
    CHECK_FALSE(g.temporal());
}

TEST_CASE("load_graph rejects dangling endpoints") {
    CHECK_THROWS_WITH_AS(load_graph(doc(R"({
        "nodes": [{"id": "1", "label": "A"}],
        "edges": [{"source": "1", "target": "3"}]
    })"),
                                    GraphRole::data),
                         doctest::Contains("dangling endpoint"), ValidationError);
}

TEST_CASE("load_graph rejects duplicate undirected edges in either order") {
    CHECK_THROWS_WITH_AS(load_graph(doc(R"({
        "directed": false,
        "nodes": [{"id": "1", "label": "A"}, {"id": "2", "label": "B"}],
        "edges": [{"source": "1", "target": "2"}, {"source": "2", "target": "1"}]
    })"),
                                    GraphRole::data),
                         doctest::Contains("duplicate edge"), ValidationError);
}

TEST_CASE("load_graph rejects duplicate node ids, self-loops, mixed timestamps") {
    CHECK_THROWS_AS(load_graph(doc(R"({
        "nodes": [{"id": "1", "label": "A"}, {"id": "1", "label": "B"}]
    })"),
                               GraphRole::data),
                    ValidationError);
    CHECK_THROWS_AS(load_graph(doc(R"({
        "nodes": [{"id": "1", "label": "A"}],
        "edges": [{"source": "1", "target": "1"}]
    })"),
                               GraphRole::data),
                    ValidationError);
    CHECK_THROWS_AS(load_graph(doc(R"({
        "nodes": [{"id": "1", "label": "A"}, {"id": "2", "label": "B"}, {"id": "3", "label": "C"}],
        "edges": [{"source": "1", "target": "2", "t": 1}, {"source": "2", "target": "3"}]
    })"),
                               GraphRole::data),
                    ValidationError);
}

TEST_CASE("directed edges allow both orientations, temporal flag follows timestamps") {
    auto g = load_graph(doc(R"({
        "directed": true,
        "nodes": [{"id": "a", "label": "A"}, {"id": "b", "label": "B"}],
        "edges": [{"source": "a", "target": "b", "t": 1}, {"source": "b", "target": "a", "t": 2}]
    })"),
                        GraphRole::data);
    CHECK(g.edge_count() == 2);
    CHECK(g.temporal());
}

TEST_CASE("malformed documents raise ParseError") {
    CHECK_THROWS_AS(load_graph(json::array(), GraphRole::data), ParseError);
    CHECK_THROWS_AS(load_graph(doc(R"({"nodes": [{"id": "1"}]})"), GraphRole::data), ParseError);
    CHECK_THROWS_AS(load_graph(doc(R"({"nodes": "oops"})"), GraphRole::data), ParseError);
}

TEST_CASE("neighbors on a triangle") {
    LabeledGraph g(GraphRole::data);
    NodeId a = g.add_node("a", "A");
    NodeId b = g.add_node("b", "B");
    NodeId c = g.add_node("c", "C");
    g.add_edge(a, b);
    g.add_edge(a, c);
    g.add_edge(b, c);

    auto na = g.neighbors(a);
    REQUIRE(na.size() == 2);
    CHECK(na[0].node == b);
    CHECK(na[1].node == c);
    CHECK(na[0].dir == EdgeDir::undirected);
}

TEST_CASE("neighbors of an isolated node is empty; unknown node throws") {
    LabeledGraph g(GraphRole::data);
    NodeId a = g.add_node("a", "A");
    CHECK(g.neighbors(a).empty());
    CHECK_THROWS_AS(g.neighbors(7), ValidationError);
}

TEST_CASE("directed neighbor carries an 'in' tag on the target side") {
    LabeledGraph g(GraphRole::data, true);
    NodeId a = g.add_node("a", "A");
    NodeId b = g.add_node("b", "B");
    g.add_edge(a, b);
    auto nb = g.neighbors(b);
    REQUIRE(nb.size() == 1);
    CHECK(nb[0].node == a);
    CHECK(nb[0].dir == EdgeDir::in);
    CHECK(g.neighbors(a)[0].dir == EdgeDir::out);
}

TEST_CASE("graph_stats counts nodes, edges, labels and degree") {
    LabeledGraph tri(GraphRole::data);
    NodeId a = tri.add_node("a", "A");
    NodeId b = tri.add_node("b", "B");
    NodeId c = tri.add_node("c", "C");
    tri.add_edge(a, b);
    tri.add_edge(a, c);
    tri.add_edge(b, c);
    auto s = tri.stats();
    CHECK(s.node_count == 3);
    CHECK(s.edge_count == 3);
    CHECK(s.label_histogram == std::map<Label, std::size_t>{{"A", 1}, {"B", 1}, {"C", 1}});
    CHECK(s.max_degree == 2);

    LabeledGraph empty(GraphRole::data);
    auto es = empty.stats();
    CHECK(es.node_count == 0);
    CHECK(es.edge_count == 0);
    CHECK(es.label_histogram.empty());
    CHECK(es.max_degree == 0);

    LabeledGraph star(GraphRole::data);
    NodeId center = star.add_node("c", "A");
    for (int i = 0; i < 4; ++i) {
        star.add_edge(center, star.add_node("l" + std::to_string(i), "B"));
    }
    auto ss = star.stats();
    CHECK(ss.node_count == 5);
    CHECK(ss.edge_count == 4);
    CHECK(ss.label_histogram == std::map<Label, std::size_t>{{"A", 1}, {"B", 4}});
    CHECK(ss.max_degree == 4);
}

TEST_CASE("round-trip through the document format preserves generated graphs") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        LabeledGraph tri(GraphRole::pattern);
        NodeId a = tri.add_node("A", "A");
        NodeId b = tri.add_node("B", "B");
        tri.add_edge(a, b);
        PlantSpec spec{tri, 10, 5, {"A", "B", "C", "D", "E"}, 0.0, 0.0, seed};
        auto pair = generate_pair(spec);

        auto reloaded_p = load_graph(serialize_graph(pair.pattern), GraphRole::pattern);
        auto reloaded_d = load_graph(serialize_graph(pair.data), GraphRole::data);
        CHECK(reloaded_p == pair.pattern);
        CHECK(reloaded_d == pair.data);
    }
}

TEST_CASE("neighbors is symmetric and degrees sum to twice the edges (undirected)") {
    LabeledGraph tri(GraphRole::pattern);
    NodeId a = tri.add_node("A", "A");
    NodeId b = tri.add_node("B", "B");
    tri.add_edge(a, b);
    PlantSpec spec{tri, 12, 8, {"A", "B", "C"}, 0.0, 0.0, 99};
    auto g = generate_pair(spec).data;

    std::size_t degree_sum = 0;
    for (NodeId n = 0; n < g.node_count(); ++n) {
        degree_sum += g.neighbors(n).size();
        for (const Neighbor& nb : g.neighbors(n)) {
            auto back = g.neighbors(nb.node);
            bool found = std::any_of(back.begin(), back.end(),
                                     [&](const Neighbor& r) { return r.node == n; });
            CHECK(found);
        }
    }
    CHECK(degree_sum == 2 * g.edge_count());
}
