#ifndef IVD_TREE_SOLVER_HPP
#define IVD_TREE_SOLVER_HPP

#include "ivd/graph.hpp"
#include "ivd/instance.hpp"
#include "ivd/interval_store.hpp"

#include <optional>
#include <vector>

namespace ivd {

// Counters the solver fills in; the performance tests assert against them.
struct SolveStats {
    int expansions = 0;       // edge subdivisions while separating cells
    int solved_n = 0;         // vertex count of the tree the program ran on
    long long sum_min_subtree = 0;  // over merge vertices: min child subtree size
    int max_family = 0;       // largest interval family representation built
};

/**
 * Exact solver for tree instances whose cells are pairwise disjoint,
 * connected and covering, on trees of maximum degree 3. One bottom-up pass
 * over a leaf-rooted tree maintains two interval families per vertex v:
 * below(v) holds every feasible distance from v to the site of v's own
 * cell when that site lies in v's subtree, above(v) every distance at
 * which that site could sit outside the subtree. Families are persistent,
 * so after the pass a top-down descent recovers one site per cell with
 * logarithmic queries against the retained per-vertex versions.
 */
class SubcubicSolver {
public:
    // Throws std::invalid_argument if the instance is not a validated tree
    // instance with pairwise disjoint connected cells and max degree 3.
    explicit SubcubicSolver(const Instance& inst);

    // Runs the dynamic program once and recovers sites when they exist.
    std::optional<Solution> run();

    const SolveStats& stats() const { return stats_; }
    const RootedTree& tree() const { return rt_; }

    // Table inspection after run(), for tests and diagnostics.
    std::vector<Weight> below_values(int v) const;
    bool above_allows(int v, const Weight& alpha) const;
    int above_size(int v) const;
    int below_size(int v) const;

private:
    struct NodeState {
        Family below, above;
        bool chi = false;  // v itself is a feasible zero-distance site
        // merge bookkeeping for recovery: children in merge order
        int child_small = -1, child_large = -1;
        Weight lam_small, lam_large;
    };

    void leaf_sets(int v);
    void combine_one(int v, int c);
    void combine_two(int v, int c1, int c2);

    // Clips `fam` to a sorted list of separated windows and rejoins the
    // inside pieces; consumes fam.
    Family clip_join(Family fam, const std::vector<Interval>& windows);
    Interval positive_window() const;
    void note_family(const Family& f);

    bool same_cell(int v, int c) const { return cell_[v] == cell_[c]; }

    void recover(std::vector<int>& site, const Weight& start) const;
    void assign_site(std::vector<int>& site, int v) const;

    Instance inst_;
    FamilyStore store_;
    RootedTree rt_;
    std::vector<int> cell_;      // cell_[v]: index of the cell containing v
    std::vector<char> in_s_;     // v is an allowed site of its own cell
    std::vector<int> subtree_;   // subtree sizes in the rooted tree
    std::vector<NodeState> st_;
    SolveStats stats_;
    Weight inf_;  // finite stand-in for +infinity, above every probed value
    bool ran_ = false;
};

// One-shot wrapper around SubcubicSolver.
std::optional<Solution> solve_subcubic_disjoint(const Instance& inst, SolveStats* stats = nullptr);

// Full pipeline for arbitrary tree instances: validate and restrict shared
// sites, pull overlapping cells apart, reduce to degree 3, run the
// subcubic solver, map sites back and re-check them on the input instance.
// Returns nullopt when any stage reports the instance unsolvable. Throws
// std::invalid_argument on malformed or non-tree input.
std::optional<Solution> solve(const Instance& inst, SolveStats* stats = nullptr);

}  // namespace ivd

#endif
