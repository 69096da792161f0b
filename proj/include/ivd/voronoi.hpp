#ifndef IVD_VORONOI_HPP
#define IVD_VORONOI_HPP

#include "ivd/instance.hpp"

namespace ivd {

// Result of a multi-source nearest-site computation. labels[v] is the
// sorted list of site indices attaining the minimum distance at v.
struct VoronoiLabels {
    std::vector<std::vector<int>> labels;
    std::vector<Weight> dist;
};

// Exact single-source shortest path distances.
std::vector<Weight> distances_from(const Graph& g, int source);

// Nearest-site labels with ties included. `sites` must be nonempty and
// pairwise distinct.
VoronoiLabels voronoi_cells(const Graph& g, const std::vector<int>& sites);

// open[i] = vertices labeled by site i alone.
std::vector<std::vector<int>> open_cells(const VoronoiLabels& labels, int k);

// True iff placing sol.sites yields exactly the instance's cells and each
// site lies in its allowed set. Tree-kind instances use a linear-time pass
// over an apex-augmented graph; general graphs recompute labels directly.
// Throws std::invalid_argument on malformed solutions (wrong length,
// vertex out of range); duplicate sites simply fail the check.
bool check_solution(const Instance& inst, const Solution& sol);

}  // namespace ivd

#endif
