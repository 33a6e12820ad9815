#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tdpm/mds.hpp"
#include "tdpm/neighbors.hpp"
#include "tdpm/types.hpp"

namespace tdpm {

struct Edge {
    Index to = 0;
    double weight = 0.0;
};

/// Undirected kNN graph: an edge exists when either endpoint picked the
/// other. Adjacency lists are sorted by neighbor index.
struct NeighborGraph {
    std::vector<std::vector<Edge>> adjacency;

    Index size() const noexcept { return static_cast<Index>(adjacency.size()); }
};

inline NeighborGraph build_graph(const DataMatrix& data, Index k) {
    const NeighborIndex nn = knn(data, k);
    const Index n = data.size();
    std::vector<std::vector<Index>> linked(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
        for (Index j : nn.row(i)) {
            linked[i].push_back(j);
            linked[j].push_back(i);
        }

    NeighborGraph graph;
    graph.adjacency.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        auto& ids = linked[i];
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (Index j : ids) graph.adjacency[i].push_back({j, detail::euclidean(data.point(i), data.point(j))});
    }
    return graph;
}

struct Components {
    std::vector<Index> label;               // per vertex
    std::vector<std::vector<Index>> members;  // per component, ascending vertex order
};

/// Components are numbered in order of their smallest vertex.
inline Components connected_components(const NeighborGraph& graph) {
    const Index n = graph.size();
    Components out;
    out.label.assign(static_cast<std::size_t>(n), -1);
    for (Index start = 0; start < n; ++start) {
        if (out.label[start] >= 0) continue;
        const auto id = static_cast<Index>(out.members.size());
        std::vector<Index> members{start};
        out.label[start] = id;
        for (std::size_t head = 0; head < members.size(); ++head)
            for (const Edge& e : graph.adjacency[members[head]])
                if (out.label[e.to] < 0) {
                    out.label[e.to] = id;
                    members.push_back(e.to);
                }
        std::sort(members.begin(), members.end());
        out.members.push_back(std::move(members));
    }
    return out;
}

namespace detail {

inline std::vector<double> dijkstra(const NeighborGraph& graph, Index source) {
    using Entry = std::pair<double, Index>;
    std::vector<double> dist(graph.adjacency.size(), std::numeric_limits<double>::infinity());
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (const Edge& e : graph.adjacency[u]) {
            const double candidate = d + e.weight;
            if (candidate < dist[e.to]) {
                dist[e.to] = candidate;
                queue.push({candidate, e.to});
            }
        }
    }
    return dist;
}

}  // namespace detail

/// All-pairs shortest paths by Dijkstra from every source. Each pair keeps
/// the shorter of its two directed results so the matrix is exactly
/// symmetric.
inline DistanceMatrix geodesic_distances(const NeighborGraph& graph) {
    const Components comps = connected_components(graph);
    if (comps.members.size() > 1) {
        std::vector<std::size_t> sizes;
        for (const auto& c : comps.members) sizes.push_back(c.size());
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        throw DisconnectedGraph(std::move(sizes));
    }
    const Index n = graph.size();
    Matrix g(n, n);
    for (Index s = 0; s < n; ++s) {
        const std::vector<double> row = detail::dijkstra(graph, s);
        for (Index t = 0; t < n; ++t) g(s, t) = row[t];
    }
    for (Index j = 0; j < n; ++j) {
        g(j, j) = 0.0;
        for (Index i = 0; i < j; ++i) g(i, j) = g(j, i) = std::min(g(i, j), g(j, i));
    }
    return DistanceMatrix(std::move(g));
}

struct ComponentRestriction {
    NeighborGraph graph;          // vertices renumbered 0..kept.size()-1
    std::vector<Index> kept;      // original indices, ascending
    std::vector<Index> dropped;   // original indices, ascending
};

/// Subgraph on the largest component; the lowest-numbered one wins ties.
inline ComponentRestriction restrict_to_largest_component(const NeighborGraph& graph) {
    const Components comps = connected_components(graph);
    std::size_t best = 0;
    for (std::size_t c = 1; c < comps.members.size(); ++c)
        if (comps.members[c].size() > comps.members[best].size()) best = c;

    ComponentRestriction out;
    out.kept = comps.members[best];
    std::vector<Index> renumber(static_cast<std::size_t>(graph.size()), -1);
    for (std::size_t v = 0; v < out.kept.size(); ++v) renumber[out.kept[v]] = static_cast<Index>(v);
    for (Index v = 0; v < graph.size(); ++v)
        if (renumber[v] < 0) out.dropped.push_back(v);

    out.graph.adjacency.resize(out.kept.size());
    for (std::size_t v = 0; v < out.kept.size(); ++v)
        for (const Edge& e : graph.adjacency[out.kept[v]]) out.graph.adjacency[v].push_back({renumber[e.to], e.weight});
    return out;
}

struct IsomapResult {
    Embedding embedding;
    DistanceMatrix geodesic;
    std::vector<Index> kept;     // original index of each embedded point
    std::vector<Index> dropped;  // empty unless restricted to the largest component
};

inline IsomapResult isomap(const DataMatrix& data, Index k, Index d, bool largest_component = false) {
    NeighborGraph graph = run_stage("graph", [&] { return build_graph(data, k); });
    std::vector<Index> kept(static_cast<std::size_t>(data.size()));
    for (Index i = 0; i < data.size(); ++i) kept[i] = i;
    std::vector<Index> dropped;
    if (largest_component) {
        ComponentRestriction r = restrict_to_largest_component(graph);
        graph = std::move(r.graph);
        kept = std::move(r.kept);
        dropped = std::move(r.dropped);
    }
    DistanceMatrix geodesic = run_stage("geodesic", [&] { return geodesic_distances(graph); });
    Embedding embedding = run_stage("mds", [&] { return classical_mds(geodesic, d); });
    return {std::move(embedding), std::move(geodesic), std::move(kept), std::move(dropped)};
}

inline Embedding isomap_embed(const DataMatrix& data, Index k, Index d) {
    return isomap(data, k, d).embedding;
}

}  // namespace tdpm
