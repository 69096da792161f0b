#ifndef IVD_TEST_HELPERS_HPP
#define IVD_TEST_HELPERS_HPP

#include "ivd/instance.hpp"

#include <random>

namespace ivd_test {

using ivd::Cell;
using ivd::Graph;
using ivd::Instance;
using ivd::Kind;
using ivd::Rational;
using ivd::Solution;
using ivd::Weight;

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random tree on n vertices: each vertex > 0 attaches to a uniformly random
// earlier vertex. Integer edge lengths in [1, max_len].
inline Graph random_tree(Rng& rng, int n, int max_len = 5) {
    Graph g(n);
    for (int v = 1; v < n; ++v) {
        g.add_edge(v, rand_int(rng, 0, v - 1), Weight::real(rand_int(rng, 1, max_len)));
    }
    return g;
}

// Random connected graph: a random tree plus `extra` additional edges.
inline Graph random_connected_graph(Rng& rng, int n, int extra, int max_len = 5) {
    Graph g = random_tree(rng, n, max_len);
    std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
    for (int u = 0; u < n; ++u) {
        for (const ivd::EdgeTo& e : g.neighbors(u)) has[u][e.to] = 1;
    }
    for (int tries = 0; extra > 0 && tries < 20 * extra + 100; ++tries) {
        int u = rand_int(rng, 0, n - 1), v = rand_int(rng, 0, n - 1);
        if (u == v || has[u][v]) continue;
        has[u][v] = has[v][u] = 1;
        g.add_edge(u, v, Weight::real(rand_int(rng, 1, max_len)));
        --extra;
    }
    return g;
}

inline std::vector<int> distinct_vertices(Rng& rng, int n, int count) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    return all;
}

inline Instance make_instance(Graph g, std::vector<std::vector<int>> us, Kind kind) {
    Instance inst{std::move(g), {}, kind};
    for (auto& u : us) {
        ivd::canonicalize(u);
        inst.cells.push_back({u, u});
    }
    return inst;
}

}  // namespace ivd_test

#endif
