#include "ivd/two_sat.hpp"

#include "ivd/voronoi.hpp"

#include <algorithm>
#include <stdexcept>

namespace ivd {

namespace {

int literal_node(const Literal& l) { return 2 * l.var + (l.positive ? 0 : 1); }

void add_clause(TwoSatFormula& f, Literal a, Literal b) { f.clauses.push_back({a, b}); }

std::vector<int> owner_counts(const Instance& inst) {
    std::vector<int> owners(inst.n(), 0);
    for (const Cell& c : inst.cells)
        for (int v : c.U) ++owners[v];
    return owners;
}

// The three-part test deciding whether two placements can be sites at the
// same time: shared vertices equidistant, unshared vertices strictly
// closer to their own site.
bool compatible(const Instance& inst, int i, int j, const std::vector<Weight>& da,
                const std::vector<Weight>& db, const std::vector<char>& in_i,
                const std::vector<char>& in_j) {
    for (int u : inst.cells[i].U) {
        int r = compare(da[u], db[u]);
        if (in_j[u] ? r != 0 : r >= 0) return false;
    }
    for (int u : inst.cells[j].U)
        if (!in_i[u] && compare(db[u], da[u]) >= 0) return false;
    return true;
}

}  // namespace

std::optional<std::vector<char>> two_sat(const TwoSatFormula& f) {
    const int nv = f.variables;
    if (nv < 0) throw std::invalid_argument("two_sat: negative variable count");
    const int nn = 2 * nv;
    std::vector<std::vector<int>> adj(nn);
    for (const auto& [a, b] : f.clauses) {
        if (a.var < 0 || a.var >= nv || b.var < 0 || b.var >= nv)
            throw std::invalid_argument("two_sat: literal out of range");
        adj[literal_node(a) ^ 1].push_back(literal_node(b));
        adj[literal_node(b) ^ 1].push_back(literal_node(a));
    }

    // iterative strongly-connected-components pass; components get ids in
    // reverse topological order of the condensation
    std::vector<int> comp(nn, -1), low(nn, 0), num(nn, -1), stk;
    std::vector<char> on(nn, 0);
    std::vector<std::pair<int, int>> call;
    int timer = 0, ncomp = 0;
    for (int s = 0; s < nn; ++s) {
        if (num[s] != -1) continue;
        call.push_back({s, 0});
        while (!call.empty()) {
            auto& [u, ei] = call.back();
            if (ei == 0) {
                num[u] = low[u] = timer++;
                stk.push_back(u);
                on[u] = 1;
            }
            if (ei < (int)adj[u].size()) {
                int v = adj[u][ei++];
                if (num[v] == -1)
                    call.push_back({v, 0});
                else if (on[v])
                    low[u] = std::min(low[u], num[v]);
            } else {
                if (low[u] == num[u]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = 0;
                        comp[w] = ncomp;
                        if (w == u) break;
                    }
                    ++ncomp;
                }
                int done = u;
                call.pop_back();
                if (!call.empty())
                    low[call.back().first] = std::min(low[call.back().first], low[done]);
            }
        }
    }

    std::vector<char> asg(nv, 0);
    for (int v = 0; v < nv; ++v) {
        if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
        asg[v] = comp[2 * v] < comp[2 * v + 1];
    }
    return asg;
}

OpenCellStatus open_cell_status(const Instance& inst) {
    if (!validate_instance(inst).empty())
        throw std::invalid_argument("open_cell_status: instance fails validation");
    std::vector<int> owners = owner_counts(inst);
    bool large = false, empty = false;
    for (const Cell& c : inst.cells) {
        int ex = 0;
        for (int v : c.U)
            if (owners[v] == 1) ++ex;
        if (ex == 0) empty = true;
        if (ex > 2) large = true;
    }
    if (empty) return OpenCellStatus::empty_cell;
    return large ? OpenCellStatus::large_cell : OpenCellStatus::small_cells;
}

bool eligible_for_2sat(const Instance& inst) {
    return open_cell_status(inst) == OpenCellStatus::small_cells;
}

SatEncoding build_formula(const Instance& inst) {
    if (open_cell_status(inst) != OpenCellStatus::small_cells)
        throw std::invalid_argument("build_formula: every cell must keep one or two unshared vertices");
    const int n = inst.n(), k = inst.k();
    std::vector<int> owners = owner_counts(inst);

    SatEncoding enc;
    enc.formula.variables = k;
    enc.placement.assign(k, {-1, -1});
    for (int i = 0; i < k; ++i) {
        int slot = 0;
        for (int v : inst.cells[i].U)
            if (owners[v] == 1) enc.placement[i][slot++] = v;
        if (slot == 1) add_clause(enc.formula, {i, true}, {i, true});
    }

    // placements outside the allowed sites are forced off
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < 2; ++t) {
            int p = enc.placement[i][t];
            if (p >= 0 && !contains_vertex(inst.cells[i].S, p))
                add_clause(enc.formula, {i, t == 1}, {i, t == 1});
        }

    // distances from every candidate placement
    std::vector<std::vector<Weight>> dist;
    std::vector<int> didx(n, -1);
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < 2; ++t) {
            int p = enc.placement[i][t];
            if (p >= 0 && didx[p] < 0) {
                didx[p] = (int)dist.size();
                dist.push_back(distances_from(inst.graph, p));
            }
        }

    // a clause per conflicting placement pair, built from the negated
    // placement literals
    std::vector<char> in_i(n, 0), in_j(n, 0);
    for (int i = 0; i < k; ++i) {
        for (int v : inst.cells[i].U) in_i[v] = 1;
        for (int j = i + 1; j < k; ++j) {
            for (int v : inst.cells[j].U) in_j[v] = 1;
            for (int t = 0; t < 2; ++t)
                for (int w = 0; w < 2; ++w) {
                    int a = enc.placement[i][t], b = enc.placement[j][w];
                    if (a < 0 || b < 0) continue;
                    if (!compatible(inst, i, j, dist[didx[a]], dist[didx[b]], in_i, in_j))
                        add_clause(enc.formula, {i, t == 1}, {j, w == 1});
                }
            for (int v : inst.cells[j].U) in_j[v] = 0;
        }
        for (int v : inst.cells[i].U) in_i[v] = 0;
    }
    return enc;
}

std::optional<Solution> solve_via_2sat(const Instance& inst) {
    OpenCellStatus st = open_cell_status(inst);
    if (st == OpenCellStatus::large_cell)
        throw std::invalid_argument("solve_via_2sat: an unshared part has three or more vertices");
    if (st == OpenCellStatus::empty_cell) return std::nullopt;

    SatEncoding enc = build_formula(inst);
    std::optional<std::vector<char>> asg = two_sat(enc.formula);
    if (!asg) return std::nullopt;

    Solution sol;
    for (int i = 0; i < inst.k(); ++i) {
        int s = enc.placement[i][(*asg)[i] ? 0 : 1];
        if (s < 0) throw std::logic_error("solve_via_2sat: assignment picked a missing slot");
        sol.sites.push_back(s);
    }
    if (!check_solution(inst, sol))
        throw std::logic_error("solve_via_2sat: decoded sites fail verification");
    return sol;
}

}  // namespace ivd
