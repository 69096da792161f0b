#ifndef IVD_ORACLE_HPP
#define IVD_ORACLE_HPP

#include "ivd/instance.hpp"
#include "ivd/voronoi.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace ivd {

// Thrown when an exhaustive search would visit more site tuples (or
// search-tree nodes) than the caller allowed.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive reference solver: tries site tuples from the product of the
// allowed sets in lexicographic order of site ids and returns the first
// tuple the checker accepts. With prune_open_cells the candidates for cell
// i are restricted to vertices belonging to no other cell, which discards
// only tuples the checker would reject anyway.
std::optional<Solution> brute_force_solve(const Instance& inst,
                                          long long budget = 2000000,
                                          bool prune_open_cells = true);

// All checker-accepted tuples, in the same order brute_force_solve visits
// them.
std::vector<Solution> enumerate_solutions(const Instance& inst, long long budget = 2000000);

// Depth-first search assigning one site per cell with pairwise-consistency
// pruning; handles some instances whose full tuple product is out of reach.
// node_budget bounds the number of partial assignments explored.
std::optional<Solution> backtracking_solve(const Instance& inst,
                                           long long node_budget = 50000000);

// Definitional "below" set for a vertex of a rooted tree instance: all
// values d(s, v) where s is the site of v's own cell, over complete site
// placements inside the subtree of v that reproduce every cell restricted
// to that subtree. Intended for small subtrees only.
std::vector<Weight> below_set_bruteforce(const Instance& inst, const RootedTree& rt, int v);

// Definitional "above" membership test: attach a pendant vertex above v at
// distance alpha, force v's own site onto it, and ask whether the remaining
// sites can be placed so every cell restricted to the subtree of v comes
// out right. alpha must be positive.
bool above_membership_bruteforce(const Instance& inst, const RootedTree& rt, int v,
                                 const Weight& alpha);

}  // namespace ivd

#endif
