#include "ivd/graph.hpp"

#include <stdexcept>

namespace ivd {

void Graph::add_edge(int u, int v, Weight w) {
    int n = vertex_count();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("Graph::add_edge: vertex id out of range");
    if (u == v) throw std::invalid_argument("Graph::add_edge: self loop");
    if (!w.is_positive())
        throw std::invalid_argument("Graph::add_edge: non-positive weight");
    adj_[u].push_back({v, w});
    adj_[v].push_back({u, std::move(w)});
    ++edge_count_;
}

bool Graph::is_connected() const {
    int n = vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const EdgeTo& e : adj_[v]) {
            if (!seen[e.to]) {
                seen[e.to] = 1;
                ++reached;
                stack.push_back(e.to);
            }
        }
    }
    return reached == n;
}

RootedTree root_tree(const Graph& g, int root) {
    int n = g.vertex_count();
    RootedTree t;
    t.root = root;
    t.parent.assign(n, -1);
    t.parent_len.assign(n, Weight());
    t.children.assign(n, {});
    t.order.reserve(n);
    t.order.push_back(root);
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        int v = t.order[head];
        for (const EdgeTo& e : g.neighbors(v)) {
            if (e.to == t.parent[v] || e.to == root) continue;
            t.parent[e.to] = v;
            t.parent_len[e.to] = e.w;
            t.children[v].push_back(e.to);
            t.order.push_back(e.to);
        }
    }
    return t;
}

}  // namespace ivd
