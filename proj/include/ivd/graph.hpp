#ifndef IVD_GRAPH_HPP
#define IVD_GRAPH_HPP

#include "ivd/weight.hpp"

#include <vector>

namespace ivd {

struct EdgeTo {
    int to;
    Weight w;
};

// Simple undirected graph with positive composite edge weights.
// Vertices are dense ids 0..n-1. Connectivity is not enforced here;
// validate_instance reports it as a violation.
class Graph {
public:
    explicit Graph(int n) : adj_(n) {}

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edge_count_; }

    void add_edge(int u, int v, Weight w);

    const std::vector<EdgeTo>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool is_connected() const;
    bool is_tree() const {
        return edge_count_ == vertex_count() - 1 && is_connected();
    }

private:
    std::vector<std::vector<EdgeTo>> adj_;
    int edge_count_ = 0;
};

// Parent/child structure obtained by a BFS from `root`.
// Only meaningful when the graph is a tree.
struct RootedTree {
    int root = 0;
    std::vector<int> parent;         // -1 at the root
    std::vector<Weight> parent_len;  // weight of the edge to parent
    std::vector<int> order;          // BFS order, parents before children
    std::vector<std::vector<int>> children;
};

RootedTree root_tree(const Graph& g, int root);

}  // namespace ivd

#endif
