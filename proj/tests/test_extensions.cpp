#include <set>

#include "assist/extraction.hpp"
#include "assist/swarm.hpp"
#include "doctest.h"

using namespace assist;

namespace {

// Directed timestamped path A -> B -> C -> D.
LabeledGraph temporal_path(GraphRole role, std::vector<double> stamps) {
    LabeledGraph g(role, true);
    NodeId a = g.add_node("a", "A");
    NodeId b = g.add_node("b", "B");
    NodeId c = g.add_node("c", "C");
    NodeId d = g.add_node("d", "D");
    g.add_edge(a, b, std::nullopt, true, stamps.at(0));
    g.add_edge(b, c, std::nullopt, true, stamps.at(1));
    g.add_edge(c, d, std::nullopt, true, stamps.at(2));
    return g;
}

}  // namespace

TEST_CASE("ontology load and subsumption") {
    auto ont = load_ontology("# people\nperson > Alice\nperson > Bob\n");
    CHECK(ont.subsumes("person", "Alice"));
    CHECK(ont.subsumes("person", "Bob"));
    CHECK(ont.subsumes("person", "person"));
    CHECK_FALSE(ont.subsumes("Alice", "person"));
    CHECK(ont.related("person") == std::vector<Label>{"Alice", "Bob"});
}

TEST_CASE("ontology cycle detection and syntax errors") {
    CHECK_THROWS_AS(load_ontology("a > b\nb > a\n"), ValidationError);
    CHECK_THROWS_AS(load_ontology("a b\n"), ParseError);
    CHECK_THROWS_AS(load_ontology("a >\n"), ParseError);
}

TEST_CASE("empty ontology matches identical labels only") {
    auto ont = load_ontology("");
    CHECK(match_labels("A", "A", &ont) == 1.0);
    CHECK(match_labels("A", "B", &ont) == 0.0);
}

TEST_CASE("subsumption is transitive across hops") {
    auto ont = load_ontology("thing > person\nperson > Alice\n");
    CHECK(ont.subsumes("thing", "Alice"));
    CHECK(match_labels("thing", "Alice", &ont, 0.5) == 0.5);
}

TEST_CASE("ontology closure equals brute-force reachability on random DAGs") {
    Rng rng(77);
    for (int round = 0; round < 10; ++round) {
        const int n = 30;
        // Random DAG: edges only from lower to higher index.
        std::vector<std::pair<int, int>> edges;
        Ontology ont;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (uniform01(rng) < 0.08) {
                    edges.emplace_back(i, j);
                    ont.add("L" + std::to_string(i), "L" + std::to_string(j));
                }
            }
        }
        ont.finalize();
        // Brute-force reachability.
        std::vector<std::set<int>> reach(n);
        for (int i = n - 1; i >= 0; --i) {
            for (auto& [a, b] : edges) {
                if (a == i) {
                    reach[i].insert(b);
                    reach[i].insert(reach[b].begin(), reach[b].end());
                }
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                bool want = i == j || reach[i].count(j) > 0;
                CHECK(ont.subsumes("L" + std::to_string(i), "L" + std::to_string(j)) == want);
            }
        }
    }
}

TEST_CASE("match_labels basics and symmetry") {
    CHECK(match_labels("A", "A") == 1.0);
    CHECK(match_labels("A", "B") == 0.0);
    auto ont = load_ontology("person > Alice");
    CHECK(match_labels("person", "Alice", &ont, 0.5) == 0.5);
    for (auto [a, b] : std::vector<std::pair<Label, Label>>{
             {"person", "Alice"}, {"Alice", "person"}, {"A", "B"}, {"A", "A"}}) {
        CHECK(match_labels(a, b, &ont, 0.5) == match_labels(b, a, &ont, 0.5));
    }
}

TEST_CASE("quality ordering: exact above subsumed above bridged") {
    double gamma = 0.5, delta = 0.5;
    double exact = 1.0;
    double subsumed = gamma;
    double bridged2 = gamma;  // two-hop bridge multiplies by gamma^(h-1)...
    // ...but also lengthens the cycle, so the per-element deposit drops.
    double len4 = 4, len5 = 5;
    CHECK(exact / len4 > subsumed / len4);
    CHECK(subsumed / len4 > bridged2 * gamma / len5);
    (void)delta;
}

TEST_CASE("mode validation") {
    LabeledGraph plain(GraphRole::pattern);
    plain.add_node("a", "A");
    LabeledGraph directed(GraphRole::data, true);
    directed.add_node("a", "A");
    Mode temporal;
    temporal.temporal = true;
    CHECK_THROWS_AS(temporal.validate(plain, directed), ValidationError);
    CHECK_NOTHROW(temporal.validate(directed, directed));
    Mode missing;
    missing.missing = true;
    missing.missing_radius = 1;
    CHECK_THROWS_AS(missing.validate(plain, plain), ValidationError);
}

TEST_CASE("temporal cycles follow the data edge order") {
    auto pattern = temporal_path(GraphRole::pattern, {1, 2, 3});
    Mode mode;
    mode.temporal = true;
    Params params;

    SUBCASE("agreeing orders complete with length 6") {
        auto data = temporal_path(GraphRole::data, {10, 20, 30});
        SwarmEngine engine(pattern, data, params, mode);
        WalkContext ctx{pattern, data, engine.peer_map(), params, mode, nullptr};

        // Brute-force enumeration of ordered 2-paths in the data: edges
        // (a->b, b->c) and (b->c, c->d) are the only increasing pairs.
        std::set<std::pair<EdgeId, EdgeId>> allowed{{0, 1}, {1, 2}};
        int completed = 0;
        for (std::uint32_t i = 0; i < 300; ++i) {
            Rng rng = agent_rng(21, i);
            auto outcome = temporal_cycle(engine.state(), 0, ctx, rng);
            if (!outcome.completed()) continue;
            ++completed;
            const CycleRecord& rec = *outcome.record;
            CHECK(rec.length == 6);
            CHECK(rec.quality == 1.0);
            REQUIRE(rec.data_path.size() == 2);
            CHECK(allowed.count({rec.data_path[0], rec.data_path[1]}) == 1);
            REQUIRE(rec.pattern_path.size() == 2);
            // The walked-home pair reversed mirrors the data pair.
            CHECK(allowed.count({rec.pattern_path[1], rec.pattern_path[0]}) == 1);
        }
        CHECK(completed > 100);
    }

    SUBCASE("reversed data stamps never complete") {
        auto data = temporal_path(GraphRole::data, {30, 20, 10});
        SwarmEngine engine(pattern, data, params, mode);
        WalkContext ctx{pattern, data, engine.peer_map(), params, mode, nullptr};
        for (std::uint32_t i = 0; i < 200; ++i) {
            Rng rng = agent_rng(22, i);
            auto outcome = temporal_cycle(engine.state(), 0, ctx, rng);
            CHECK_FALSE(outcome.completed());
            CHECK(outcome.failed_at_arrow == 2);
        }
    }

    SUBCASE("pattern with swapped ranks fails at the return search") {
        // Data pair (a->b t10, b->c t20) is walkable, but the pattern edges
        // carry ranks 2 then 1, so no order-consistent 2-path goes home.
        auto pattern_swapped = temporal_path(GraphRole::pattern, {2, 1, 0.5});
        auto data = temporal_path(GraphRole::data, {10, 20, 30});
        SwarmEngine engine(pattern_swapped, data, params, mode);
        WalkContext ctx{pattern_swapped, data, engine.peer_map(), params, mode, nullptr};
        for (std::uint32_t i = 0; i < 200; ++i) {
            Rng rng = agent_rng(23, i);
            auto outcome = temporal_cycle(engine.state(), 0, ctx, rng);
            CHECK_FALSE(outcome.completed());
        }
    }
}

TEST_CASE("multi_hop_sense finds wanted labels behind one intermediate") {
    LabeledGraph g(GraphRole::data);
    NodeId u = g.add_node("u", "A");
    NodeId m = g.add_node("m", "M");
    NodeId w = g.add_node("w", "B");
    g.add_edge(u, m);
    g.add_edge(m, w);

    auto hits = multi_hop_sense(g, u, "B", 2, 0.5);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].node == w);
    CHECK(hits[0].hops == 2);
    CHECK(hits[0].gradient == doctest::Approx(0.25));

    CHECK(multi_hop_sense(g, u, "Z", 2, 0.5).empty());
    CHECK(multi_hop_sense(g, u, "B", 1, 0.5).empty());

    auto path = bridge_path(g, u, w, 2);
    REQUIRE(path.size() == 2);
    CHECK(path[0] == 0);
    CHECK(path[1] == 1);
}

TEST_CASE("missing mode bridges a re-routed node; base mode does not") {
    // Pattern: triangle A,B,C plus a pendant D. Data: the C corner's two
    // triangle edges are both re-routed through intermediate m.
    LabeledGraph pattern(GraphRole::pattern);
    NodeId pa = pattern.add_node("A", "A");
    NodeId pb = pattern.add_node("B", "B");
    NodeId pc = pattern.add_node("C", "C");
    NodeId pd = pattern.add_node("D", "D");
    pattern.add_edge(pa, pb);
    pattern.add_edge(pb, pc);
    pattern.add_edge(pc, pa);
    pattern.add_edge(pa, pd);

    LabeledGraph data(GraphRole::data);
    NodeId da = data.add_node("A", "A");
    NodeId db = data.add_node("B", "B");
    NodeId dc = data.add_node("C", "C");
    NodeId dm = data.add_node("m", "M");
    data.add_edge(da, db);
    data.add_edge(da, dm);
    data.add_edge(db, dm);
    data.add_edge(dm, dc);

    Params params;
    auto run = [&](Mode mode) {
        SwarmEngine engine(pattern, data, params, mode);
        engine.run_until_converged(2);
        std::set<NodeId> positive;
        for (NodeId n = 0; n < data.node_count(); ++n) {
            if (engine.state().node(Side::data, n) > 0.01) positive.insert(n);
        }
        return std::make_pair(positive, extract_matches(engine.state(), pattern, data, params, mode));
    };

    Mode base;
    auto [base_nodes, base_result] = run(base);
    CHECK(base_nodes == std::set<NodeId>{da, db});

    Mode missing;
    missing.missing = true;
    auto [missing_nodes, missing_result] = run(missing);
    CHECK(missing_nodes.count(da) == 1);
    CHECK(missing_nodes.count(db) == 1);
    CHECK(missing_nodes.count(dc) == 1);
    // The bridge hop itself earns no deposit.
    CHECK(missing_nodes.count(dm) == 0);
    CHECK(missing_result.greedy.size() > base_result.greedy.size());
}
