#ifndef IVD_GENERATORS_HPP
#define IVD_GENERATORS_HPP

#include "ivd/instance.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace ivd {

// Test-corpus builders: random solvable instances plus the reduction
// gadgets used to stress the solvers. Every builder is deterministic in
// its arguments, emits cells with S = U, and validates its output.

struct PlantedInstance {
    Instance instance;
    Solution planted;
};

// Random tree on n vertices with integer lengths in [1, max_len], cells
// taken as the exact Voronoi cells of k distinct random sites (ties
// included, so cells may overlap). The planted sites pass check_solution
// by construction.
PlantedInstance gen_random_tree_yes(int n, int k, long long max_len, std::uint64_t seed);

// Positive one-in-three satisfiability: clauses are triples of distinct
// ground elements; the question is a selection hitting every clause
// exactly once.
struct OneInThreeFormula {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;
};

// Unit-length graph with a two-vertex cell per variable and a triangle
// cell per clause, solvable exactly when the formula is. Throws
// invalid_argument on malformed clauses or when the construction would
// come out disconnected (an element or clause detached from the rest).
Instance gen_from_1in3sat(const OneInThreeFormula& f);

// Multicolored subgraph isomorphism: a host graph partitioned into parts
// and a pattern over the part ids. Question: one vertex per part inducing
// every pattern edge.
struct MsiInput {
    int parts = 0;
    std::vector<int> part_of;                  // host vertex -> part id
    std::vector<std::pair<int, int>> h_edges;  // host edges
    std::vector<std::pair<int, int>> p_edges;  // pattern edges over parts
};

// Subdivides every host edge, completes each part and each subdivider
// class into a clique, and emits one overlapping cell per pattern edge.
// Requires pattern minimum degree 2 and host edges only across pattern
// edges; throws invalid_argument otherwise or when the result would be
// disconnected.
Instance gen_from_msi(const MsiInput& in);

// Multicolored independent set: parts of equal size, edges given as
// (part, index, part, index) pairs with no edge inside a part.
struct MisInput {
    int parts = 0;
    int part_size = 0;
    std::vector<std::array<int, 4>> edges;
};

// Row/column gadget with unit lengths and (3*parts+1)*|edges| pairwise
// disjoint cells, solvable exactly when one index per part avoids every
// edge. The handles identify the vertices needed to write down a witness.
struct MisGadget {
    Instance instance;
    MisInput input;
    std::vector<std::vector<std::vector<int>>> choice;  // choice[i][j][h]
    std::vector<std::vector<int>> e_vertex;             // [i][j]
    std::vector<std::vector<int>> z_vertex;             // [i][j]
    std::vector<int> r_first;                           // per column, next to the first endpoint
    std::vector<int> r_last;                            // per column, next to the second endpoint
    std::vector<int> f_vertex;                          // per column, the pendant tip
    int cells_per_column = 0;

    int cell_u(int i, int j) const { return j * cells_per_column + 3 * i; }
    int cell_path(int i, int j) const { return cell_u(i, j) + 1; }
    int cell_z(int i, int j) const { return cell_u(i, j) + 2; }
    int cell_r(int j) const { return (j + 1) * cells_per_column - 1; }
};

MisGadget gen_from_mis(const MisInput& in);

// Site layout that solves the gadget whenever pick (one index per part)
// is an independent set of the source; otherwise it merely fills every
// cell and the checker will reject it.
Solution planted_mis_solution(const MisGadget& g, const std::vector<int>& pick);

// Two stars joined at a shared leaf: arm lengths xs and 2 on one star,
// ys+1 and 1 on the other. The resulting 2-cell tree instance is solvable
// exactly when xs and ys have a common value. All values must be positive.
Instance gen_set_intersection_stars(const std::vector<long long>& xs,
                                    const std::vector<long long>& ys);

}  // namespace ivd

#endif
