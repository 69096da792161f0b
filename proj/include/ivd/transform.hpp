#ifndef IVD_TRANSFORM_HPP
#define IVD_TRANSFORM_HPP

#include "ivd/instance.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ivd {

/**
 * Reductions that normalize a tree instance before solving: restrict the
 * allowed sites of each cell to its exclusive vertices, pull overlapping
 * cells apart by subdividing boundary edges with symbolic eps-length stubs,
 * and finally split high-degree vertices into paths of delta'-length edges
 * so the tree has maximum degree 3. Solutions of the final instance map
 * back through a ProjectionMap; the result must still be re-checked on the
 * instance the pipeline started from.
 */

// Output of preprocess(): the instance with each S restricted to vertices
// no other cell claims, plus the index structures the expansion step needs.
struct PreprocessedInstance {
    Instance instance;
    // exclusive[i]: vertices of cell i that belong to no other cell, sorted.
    std::vector<std::vector<int>> exclusive;
    // boundary_edges[i]: tree edges (x, y) with x exclusive to cell i and
    // y in cell i but shared with another cell.
    std::vector<std::vector<std::pair<int, int>>> boundary_edges;
    // cells_of[v]: indices of the cells containing vertex v, ascending.
    std::vector<std::vector<int>> cells_of;
};

// Returned instead of a result when a necessary condition fails; such
// instances provably have no solution.
struct Infeasible {
    std::string reason;
};

using PreprocessResult = std::variant<PreprocessedInstance, Infeasible>;

// Restricts each cell's site set to the cell's exclusive vertices and
// computes the structures above in linear time. Infeasible when a cell
// keeps no allowed site, or a cell or its exclusive part does not induce
// a connected subtree. Throws std::invalid_argument unless `inst` is a
// validated tree instance.
PreprocessResult preprocess(const Instance& inst);

// Result of expand_to_disjoint: the rewritten instance and how many edge
// subdivisions were performed (at most k-1).
struct Expanded {
    Instance instance;
    int expansions = 0;
};

using ExpandResult = std::variant<Expanded, Infeasible>;

// Makes the cells pairwise disjoint. Each boundary edge xy (x exclusive,
// y shared) is subdivided by a fresh vertex y': edge xy' keeps the old
// weight, edge y'y gets weight (0,1,0), the cell drops its members on the
// y side and gains y'. Original vertex ids are preserved; new ids are
// appended. Infeasible when an intermediate connectivity check fails,
// which only happens on unsolvable instances.
ExpandResult expand_to_disjoint(const PreprocessedInstance& pre);

// Maps vertices of a transformed instance back to the vertices of the
// instance the transform ran on.
struct ProjectionMap {
    std::vector<int> origin;  // origin[v'] = originating vertex id
};

// Rebuilds the tree so every vertex has degree at most 3. Each edge uv
// becomes a pair of vertices joined by an edge carrying the old weight,
// shortened by (0,0,4n) when u and v lie in different cells; the vertices
// derived from one original vertex are chained with (0,0,1) edges. Cells
// must be pairwise disjoint, cover the tree and be connected, and every
// resulting edge weight must stay positive; otherwise throws
// std::invalid_argument.
std::pair<Instance, ProjectionMap> split_to_degree3(const Instance& inst);

// Rewrites each site through the projection map.
Solution project_solution(const Solution& sol, const ProjectionMap& pm);

}  // namespace ivd

#endif
