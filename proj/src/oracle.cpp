#include "ivd/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ivd {

namespace {

// Allowed placements per cell; pruning keeps only vertices that belong to
// the cell and to no other cell, a necessary condition for any site.
std::vector<std::vector<int>> candidate_sets(const Instance& inst, bool prune) {
    std::vector<std::vector<int>> cands;
    cands.reserve(inst.cells.size());
    if (!prune) {
        for (const Cell& c : inst.cells) cands.push_back(c.S);
        return cands;
    }
    std::vector<int> owners(inst.n(), 0);
    for (const Cell& c : inst.cells)
        for (int u : c.U) ++owners[u];
    for (const Cell& c : inst.cells) {
        std::vector<int> list;
        for (int s : c.S)
            if (owners[s] == 1 && contains_vertex(c.U, s)) list.push_back(s);
        cands.push_back(std::move(list));
    }
    return cands;
}

// Product of list sizes, throwing once it exceeds the budget.
long long tuple_count_checked(const std::vector<std::vector<int>>& cands, long long budget) {
    long long prod = 1;
    for (const auto& list : cands) {
        if (list.empty()) return 0;
        if (prod > budget / static_cast<long long>(list.size()))
            throw BudgetExceeded("site tuple space larger than budget");
        prod *= static_cast<long long>(list.size());
    }
    return prod;
}

// Calls fn for every tuple in lexicographic order until fn returns true.
template <class Fn>
void for_each_tuple(const std::vector<std::vector<int>>& cands, Fn&& fn) {
    std::size_t k = cands.size();
    for (const auto& list : cands)
        if (list.empty()) return;
    std::vector<std::size_t> at(k, 0);
    std::vector<int> sites(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) sites[i] = cands[i][at[i]];
        if (fn(sites)) return;
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++at[i] < cands[i].size()) break;
            at[i] = 0;
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

}  // namespace

std::optional<Solution> brute_force_solve(const Instance& inst, long long budget,
                                          bool prune_open_cells) {
    if (inst.cells.empty()) return std::nullopt;
    auto cands = candidate_sets(inst, prune_open_cells);
    tuple_count_checked(cands, budget);
    std::optional<Solution> found;
    for_each_tuple(cands, [&](const std::vector<int>& sites) {
        Solution sol{sites};
        if (check_solution(inst, sol)) {
            found = std::move(sol);
            return true;
        }
        return false;
    });
    return found;
}

std::vector<Solution> enumerate_solutions(const Instance& inst, long long budget) {
    std::vector<Solution> out;
    if (inst.cells.empty()) return out;
    auto cands = candidate_sets(inst, true);
    tuple_count_checked(cands, budget);
    for_each_tuple(cands, [&](const std::vector<int>& sites) {
        Solution sol{sites};
        if (check_solution(inst, sol)) out.push_back(std::move(sol));
        return false;
    });
    return out;
}

std::optional<Solution> backtracking_solve(const Instance& inst, long long node_budget) {
    if (inst.cells.empty()) return std::nullopt;
    int k = inst.k();
    auto cands = candidate_sets(inst, true);
    for (const auto& list : cands)
        if (list.empty()) return std::nullopt;

    // Assign tight cells first; ties keep the original order.
    std::vector<int> cell_order(k);
    for (int i = 0; i < k; ++i) cell_order[i] = i;
    std::stable_sort(cell_order.begin(), cell_order.end(),
                     [&](int a, int b) { return cands[a].size() < cands[b].size(); });

    std::map<int, std::vector<Weight>> dist_memo;
    auto dist_of = [&](int s) -> const std::vector<Weight>& {
        auto it = dist_memo.find(s);
        if (it == dist_memo.end())
            it = dist_memo.emplace(s, distances_from(inst.graph, s)).first;
        return it->second;
    };

    // Necessary pairwise conditions between two placed sites: inside the
    // overlap distances tie, elsewhere the own site is strictly closer.
    auto compatible = [&](int ci, int si, int cj, int sj) {
        const std::vector<Weight>& di = dist_of(si);
        const std::vector<Weight>& dj = dist_of(sj);
        const Cell& a = inst.cells[ci];
        const Cell& b = inst.cells[cj];
        for (int u : a.U) {
            int c = compare(di[u], dj[u]);
            if (contains_vertex(b.U, u) ? c != 0 : c >= 0) return false;
        }
        for (int u : b.U) {
            if (contains_vertex(a.U, u)) continue;
            if (compare(dj[u], di[u]) >= 0) return false;
        }
        return true;
    };

    std::vector<int> sites(k, -1);
    long long nodes = 0;
    std::optional<Solution> found;

    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == k) {
            Solution sol{sites};
            if (check_solution(inst, sol)) {
                found = std::move(sol);
                return true;
            }
            return false;
        }
        int ci = cell_order[depth];
        for (int s : cands[ci]) {
            if (++nodes > node_budget) throw BudgetExceeded("search tree larger than budget");
            bool ok = true;
            for (int prev = 0; prev < depth && ok; ++prev)
                ok = compatible(cell_order[prev], sites[cell_order[prev]], ci, s);
            if (!ok) continue;
            sites[ci] = s;
            if (self(self, depth + 1)) return true;
            sites[ci] = -1;
        }
        return false;
    };
    dfs(dfs, 0);
    return found;
}

namespace {

// Subtree vertex list in parent-before-child order.
std::vector<int> subtree_of(const RootedTree& rt, int v) {
    std::vector<int> sub{v};
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (int c : rt.children[sub[i]]) sub.push_back(c);
    return sub;
}

struct LocalTree {
    Graph g{0};
    std::vector<int> sub;          // local -> global
    std::vector<int> local;        // global -> local, -1 outside
    std::vector<int> live_cells;   // cell indices intersecting the subtree
    int own_cell = -1;             // cell of the subtree root
};

LocalTree build_local(const Instance& inst, const RootedTree& rt, int v, int extra) {
    LocalTree lt;
    lt.sub = subtree_of(rt, v);
    lt.local.assign(inst.n(), -1);
    for (std::size_t i = 0; i < lt.sub.size(); ++i)
        lt.local[lt.sub[i]] = static_cast<int>(i);
    lt.g = Graph(static_cast<int>(lt.sub.size()) + extra);
    for (int u : lt.sub)
        if (u != v) lt.g.add_edge(lt.local[rt.parent[u]], lt.local[u], rt.parent_len[u]);
    for (int j = 0; j < inst.k(); ++j) {
        const Cell& c = inst.cells[j];
        bool touches = std::any_of(c.U.begin(), c.U.end(),
                                   [&](int u) { return lt.local[u] >= 0; });
        if (touches) lt.live_cells.push_back(j);
        if (contains_vertex(c.U, v) && lt.own_cell < 0) lt.own_cell = j;
    }
    return lt;
}

// Checks that every live cell restricted to the subtree equals the set of
// subtree vertices whose minimum site distance is attained by its site.
bool cells_match(const Instance& inst, const LocalTree& lt,
                 const std::vector<const std::vector<Weight>*>& site_dist) {
    std::size_t nloc = lt.sub.size();
    std::vector<Weight> best(nloc);
    for (std::size_t u = 0; u < nloc; ++u) {
        best[u] = (*site_dist[0])[u];
        for (std::size_t t = 1; t < site_dist.size(); ++t)
            if ((*site_dist[t])[u] < best[u]) best[u] = (*site_dist[t])[u];
    }
    for (std::size_t t = 0; t < lt.live_cells.size(); ++t) {
        const Cell& c = inst.cells[lt.live_cells[t]];
        std::vector<char> want(nloc, 0);
        for (int u : c.U)
            if (lt.local[u] >= 0) want[lt.local[u]] = 1;
        for (std::size_t u = 0; u < nloc; ++u) {
            bool in = (*site_dist[t])[u] == best[u];
            if (in != (want[u] != 0)) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<Weight> below_set_bruteforce(const Instance& inst, const RootedTree& rt, int v) {
    LocalTree lt = build_local(inst, rt, v, 0);
    if (lt.own_cell < 0) throw std::invalid_argument("vertex belongs to no cell");

    std::vector<std::vector<int>> cands;
    for (int j : lt.live_cells) {
        std::vector<int> list;
        for (int s : inst.cells[j].S)
            if (lt.local[s] >= 0) list.push_back(lt.local[s]);
        cands.push_back(std::move(list));
    }
    std::map<int, std::vector<Weight>> memo;
    auto dist_of = [&](int s) -> const std::vector<Weight>& {
        auto it = memo.find(s);
        if (it == memo.end()) it = memo.emplace(s, distances_from(lt.g, s)).first;
        return it->second;
    };
    int own_pos = static_cast<int>(std::find(lt.live_cells.begin(), lt.live_cells.end(),
                                             lt.own_cell) -
                                   lt.live_cells.begin());

    std::set<Weight> values;
    for_each_tuple(cands, [&](const std::vector<int>& sites) {
        std::vector<const std::vector<Weight>*> sd;
        sd.reserve(sites.size());
        for (int s : sites) sd.push_back(&dist_of(s));
        if (cells_match(inst, lt, sd)) values.insert((*sd[own_pos])[0]);
        return false;
    });
    return {values.begin(), values.end()};
}

bool above_membership_bruteforce(const Instance& inst, const RootedTree& rt, int v,
                                 const Weight& alpha) {
    if (!alpha.is_positive()) throw std::invalid_argument("alpha must be positive");
    LocalTree lt = build_local(inst, rt, v, 1);
    if (lt.own_cell < 0) throw std::invalid_argument("vertex belongs to no cell");
    int vnew = static_cast<int>(lt.sub.size());
    lt.g.add_edge(0, vnew, alpha);

    std::vector<std::vector<int>> cands;
    for (int j : lt.live_cells) {
        if (j == lt.own_cell) {
            cands.push_back({vnew});
            continue;
        }
        std::vector<int> list;
        for (int s : inst.cells[j].S)
            if (lt.local[s] >= 0) list.push_back(lt.local[s]);
        cands.push_back(std::move(list));
    }
    std::map<int, std::vector<Weight>> memo;
    auto dist_of = [&](int s) -> const std::vector<Weight>& {
        auto it = memo.find(s);
        if (it == memo.end()) it = memo.emplace(s, distances_from(lt.g, s)).first;
        return it->second;
    };

    bool member = false;
    for_each_tuple(cands, [&](const std::vector<int>& sites) {
        std::vector<const std::vector<Weight>*> sd;
        sd.reserve(sites.size());
        for (int s : sites) sd.push_back(&dist_of(s));
        if (cells_match(inst, lt, sd)) {
            member = true;
            return true;
        }
        return false;
    });
    return member;
}

}  // namespace ivd
