#include "ivd/voronoi.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>

namespace ivd {

namespace {

struct DijkstraResult {
    std::vector<Weight> dist;
    std::vector<int> settle_order;  // nondecreasing by dist
};

// Binary-heap label setting with lazy deletion. Seeds start at distance 0.
DijkstraResult dijkstra(const Graph& g, const std::vector<int>& seeds) {
    int n = g.vertex_count();
    DijkstraResult res;
    res.dist.assign(n, Weight());
    res.settle_order.reserve(n);
    std::vector<char> reached(n, 0), done(n, 0);

    using Item = std::pair<Weight, int>;
    auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    for (int s : seeds) {
        reached[s] = 1;
        pq.push({Weight(), s});
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        done[v] = 1;
        res.settle_order.push_back(v);
        for (const EdgeTo& e : g.neighbors(v)) {
            if (done[e.to]) continue;
            Weight nd = d + e.w;
            if (!reached[e.to] || nd < res.dist[e.to]) {
                reached[e.to] = 1;
                res.dist[e.to] = nd;
                pq.push({std::move(nd), e.to});
            }
        }
    }
    if (static_cast<int>(res.settle_order.size()) != n)
        throw std::invalid_argument("graph is not connected");
    return res;
}

// Sorted union of the label lists of all tight predecessors of v.
std::vector<int> merge_tight_labels(const Graph& g, const DijkstraResult& d,
                                    const std::vector<std::vector<int>>& labels, int v) {
    std::vector<int> acc;
    for (const EdgeTo& e : g.neighbors(v)) {
        if (d.dist[e.to] + e.w != d.dist[v]) continue;
        const std::vector<int>& src = labels[e.to];
        if (acc.empty()) {
            acc = src;
            continue;
        }
        std::vector<int> merged;
        merged.reserve(acc.size() + src.size());
        std::set_union(acc.begin(), acc.end(), src.begin(), src.end(),
                       std::back_inserter(merged));
        acc = std::move(merged);
    }
    return acc;
}

// Per-vertex sorted list of cell indices whose U contains the vertex.
std::vector<std::vector<int>> membership_lists(const Instance& inst) {
    std::vector<std::vector<int>> m(inst.n());
    for (int i = 0; i < inst.k(); ++i) {
        for (int v : inst.cells[i].U) m[v].push_back(i);
    }
    return m;
}

}  // namespace

std::vector<Weight> distances_from(const Graph& g, int source) {
    if (source < 0 || source >= g.vertex_count())
        throw std::invalid_argument("distances_from: source out of range");
    return dijkstra(g, {source}).dist;
}

VoronoiLabels voronoi_cells(const Graph& g, const std::vector<int>& sites) {
    int n = g.vertex_count();
    if (sites.empty()) throw std::invalid_argument("voronoi_cells: no sites");
    std::vector<int> site_of(n, -1);
    for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
        int s = sites[i];
        if (s < 0 || s >= n) throw std::invalid_argument("voronoi_cells: site out of range");
        if (site_of[s] != -1) throw std::invalid_argument("voronoi_cells: duplicate site");
        site_of[s] = i;
    }
    DijkstraResult d = dijkstra(g, sites);
    VoronoiLabels out;
    out.labels.assign(n, {});
    for (int v : d.settle_order) {
        if (site_of[v] >= 0) {
            out.labels[v] = {site_of[v]};
        } else {
            out.labels[v] = merge_tight_labels(g, d, out.labels, v);
        }
    }
    out.dist = std::move(d.dist);
    return out;
}

std::vector<std::vector<int>> open_cells(const VoronoiLabels& labels, int k) {
    std::vector<std::vector<int>> open(k);
    for (int v = 0; v < static_cast<int>(labels.labels.size()); ++v) {
        if (labels.labels[v].size() == 1) open[labels.labels[v][0]].push_back(v);
    }
    return open;
}

namespace {

// Linear-time tree check: attach an apex joined to every site by a
// unit-weight edge, settle distances once, then push nearest-site labels
// along tight edges. The label mass of a valid solution is exactly the
// total cell membership, so the walk aborts as soon as it exceeds it.
bool check_tree_solution(const Instance& inst, const std::vector<int>& sites,
                         const std::vector<int>& site_of) {
    int n = inst.n();
    Graph ag(n + 1);
    for (int u = 0; u < n; ++u) {
        for (const EdgeTo& e : inst.graph.neighbors(u)) {
            if (e.to > u) ag.add_edge(u, e.to, e.w);
        }
    }
    for (int s : sites) ag.add_edge(n, s, Weight::real(1));

    DijkstraResult d = dijkstra(ag, {n});
    long long label_budget = inst.total_size();
    long long label_mass = 0;
    std::vector<std::vector<int>> labels(n + 1);
    for (int v : d.settle_order) {
        if (v == n) continue;  // apex carries no label
        if (site_of[v] >= 0) {
            labels[v] = {site_of[v]};
        } else {
            labels[v] = merge_tight_labels(ag, d, labels, v);
        }
        label_mass += static_cast<long long>(labels[v].size());
        if (label_mass > label_budget) return false;
    }

    std::vector<std::vector<int>> want = membership_lists(inst);
    for (int v = 0; v < n; ++v) {
        if (labels[v] != want[v]) return false;
    }
    return true;
}

}  // namespace

bool check_solution(const Instance& inst, const Solution& sol) {
    int n = inst.n(), k = inst.k();
    if (static_cast<int>(sol.sites.size()) != k)
        throw std::invalid_argument("check_solution: expected one site per cell");
    std::vector<int> site_of(n, -1);
    for (int i = 0; i < k; ++i) {
        int s = sol.sites[i];
        if (s < 0 || s >= n) throw std::invalid_argument("check_solution: site out of range");
        if (site_of[s] != -1) return false;  // sites must be pairwise distinct
        site_of[s] = i;
    }
    for (int i = 0; i < k; ++i) {
        if (!contains_vertex(inst.cells[i].S, sol.sites[i])) return false;
    }
    if (inst.kind == Kind::tree) return check_tree_solution(inst, sol.sites, site_of);

    VoronoiLabels got = voronoi_cells(inst.graph, sol.sites);
    std::vector<std::vector<int>> want = membership_lists(inst);
    return got.labels == want;
}

}  // namespace ivd
