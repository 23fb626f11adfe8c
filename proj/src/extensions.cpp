#include "assist/extensions.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace assist {

void Ontology::add(const Label& parent, const Label& child) {
    if (parent.empty() || child.empty()) throw ParseError("ontology: empty label");
    if (children_[parent].insert(child).second) ++edge_count_;
    children_.try_emplace(child);
    finalized_ = false;
}

void Ontology::finalize() {
    descendants_.clear();
    ancestors_.clear();

    // Kahn's algorithm; leftovers mean a cycle.
    std::map<Label, int> indegree;
    for (const auto& [p, kids] : children_) {
        indegree.try_emplace(p, 0);
        for (const Label& c : kids) indegree[c]++;
    }
    std::deque<Label> ready;
    for (const auto& [l, d] : indegree) {
        if (d == 0) ready.push_back(l);
    }
    std::vector<Label> order;
    while (!ready.empty()) {
        Label l = ready.front();
        ready.pop_front();
        order.push_back(l);
        for (const Label& c : children_[l]) {
            if (--indegree[c] == 0) ready.push_back(c);
        }
    }
    if (order.size() != indegree.size()) {
        throw ValidationError("ontology: subsumption cycle detected");
    }

    // Closure bottom-up: descendants of l = kids plus their descendants.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto& dset = descendants_[*it];
        for (const Label& c : children_[*it]) {
            dset.insert(c);
            const auto& sub = descendants_[c];
            dset.insert(sub.begin(), sub.end());
        }
    }
    for (const auto& [l, dset] : descendants_) {
        for (const Label& d : dset) ancestors_[d].insert(l);
    }
    finalized_ = true;
}

bool Ontology::subsumes(const Label& ancestor, const Label& descendant) const {
    if (ancestor == descendant) return true;
    auto it = descendants_.find(ancestor);
    return it != descendants_.end() && it->second.count(descendant) > 0;
}

std::vector<Label> Ontology::related(const Label& l) const {
    std::set<Label> out;
    if (auto it = descendants_.find(l); it != descendants_.end()) {
        out.insert(it->second.begin(), it->second.end());
    }
    if (auto it = ancestors_.find(l); it != ancestors_.end()) {
        out.insert(it->second.begin(), it->second.end());
    }
    out.erase(l);
    return {out.begin(), out.end()};
}

Ontology load_ontology(const std::string& text) {
    Ontology ont;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string t = trim(line);
        if (t.empty()) continue;
        auto gt = t.find('>');
        if (gt == std::string::npos) {
            throw ParseError("ontology line " + std::to_string(lineno) +
                             ": expected 'parent > child'");
        }
        std::string parent = trim(t.substr(0, gt));
        std::string child = trim(t.substr(gt + 1));
        if (parent.empty() || child.empty()) {
            throw ParseError("ontology line " + std::to_string(lineno) +
                             ": expected 'parent > child'");
        }
        ont.add(parent, child);
    }
    ont.finalize();
    return ont;
}

Ontology load_ontology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open ontology file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_ontology(buf.str());
}

void Mode::validate(const LabeledGraph& pattern, const LabeledGraph& data) const {
    if (temporal) {
        auto ok = [](const LabeledGraph& g) { return g.temporal() || g.directed(); };
        if (!ok(pattern) || !ok(data)) {
            throw ValidationError("temporal mode requires both graphs temporal or directed");
        }
    }
    if (missing && missing_radius < 2) {
        throw ValidationError("missing mode requires missing_radius >= 2");
    }
}

double match_labels(const Label& a, const Label& b, const Ontology* ontology,
                    double imprecise_quality) {
    if (a == b) return 1.0;
    if (ontology && (ontology->subsumes(a, b) || ontology->subsumes(b, a))) {
        return imprecise_quality;
    }
    return 0.0;
}

namespace {

// BFS within `radius`; distances only, deterministic order.
std::vector<int> hop_distances(const LabeledGraph& g, NodeId from, int radius, bool follow_direction) {
    std::vector<int> dist(g.node_count(), -1);
    dist[from] = 0;
    std::deque<NodeId> queue{from};
    while (!queue.empty()) {
        NodeId n = queue.front();
        queue.pop_front();
        if (dist[n] == radius) continue;
        for (const Neighbor& nb : g.neighbors(n)) {
            if (follow_direction && nb.dir == EdgeDir::in) continue;
            if (dist[nb.node] < 0) {
                dist[nb.node] = dist[n] + 1;
                queue.push_back(nb.node);
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<SenseHit> multi_hop_sense(const LabeledGraph& graph, NodeId from, const Label& want,
                                      int radius, double decay) {
    std::vector<int> dist = hop_distances(graph, from, radius, /*follow_direction=*/true);
    std::vector<SenseHit> hits;
    for (NodeId n = 0; n < graph.node_count(); ++n) {
        if (n == from || dist[n] < 0) continue;
        if (graph.label(n) != want) continue;
        double w = 1.0;
        for (int k = 0; k < dist[n]; ++k) w *= decay;
        hits.push_back({n, dist[n], w});
    }
    std::sort(hits.begin(), hits.end(), [](const SenseHit& a, const SenseHit& b) {
        if (a.hops != b.hops) return a.hops < b.hops;
        return a.node < b.node;
    });
    return hits;
}

std::vector<EdgeId> bridge_path(const LabeledGraph& graph, NodeId from, NodeId to, int radius) {
    std::vector<int> dist(graph.node_count(), -1);
    std::vector<EdgeId> via_edge(graph.node_count(), 0);
    std::vector<NodeId> via_node(graph.node_count(), 0);
    dist[from] = 0;
    std::deque<NodeId> queue{from};
    while (!queue.empty()) {
        NodeId n = queue.front();
        queue.pop_front();
        if (n == to) break;
        if (dist[n] == radius) continue;
        for (const Neighbor& nb : graph.neighbors(n)) {
            if (nb.dir == EdgeDir::in) continue;
            if (dist[nb.node] < 0) {
                dist[nb.node] = dist[n] + 1;
                via_edge[nb.node] = nb.edge;
                via_node[nb.node] = n;
                queue.push_back(nb.node);
            }
        }
    }
    if (dist[to] < 0) return {};
    std::vector<EdgeId> path;
    for (NodeId n = to; n != from; n = via_node[n]) path.push_back(via_edge[n]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace assist
