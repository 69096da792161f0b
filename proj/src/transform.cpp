#include "ivd/transform.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ivd {

namespace {

// T[vs] is connected iff exactly one member's parent lies outside vs.
// `flag` is an all-zero scratch array that is restored before returning.
bool connected_in_tree(const std::vector<int>& vs, const std::vector<int>& parent,
                       std::vector<char>& flag) {
    if (vs.empty()) return false;
    for (int v : vs) flag[v] = 1;
    int heads = 0;
    for (int v : vs) {
        int p = parent[v];
        if (p < 0 || !flag[p]) ++heads;
    }
    for (int v : vs) flag[v] = 0;
    return heads == 1;
}

}  // namespace

PreprocessResult preprocess(const Instance& inst) {
    if (inst.kind != Kind::tree)
        throw std::invalid_argument("preprocess: tree instance required");
    auto viol = validate_instance(inst);
    if (!viol.empty())
        throw std::invalid_argument("preprocess: " + viol.front().to_string());

    const int n = inst.n();
    const int k = inst.k();
    PreprocessedInstance out{inst, {}, {}, {}};
    out.cells_of.assign(n, {});
    for (int i = 0; i < k; ++i)
        for (int v : inst.cells[i].U) out.cells_of[v].push_back(i);

    RootedTree rt = root_tree(inst.graph, 0);
    std::vector<char> flag(n, 0), excl(n, 0);
    out.exclusive.resize(k);
    out.boundary_edges.resize(k);
    for (int i = 0; i < k; ++i) {
        const Cell& c = inst.cells[i];
        std::vector<int>& w = out.exclusive[i];
        for (int v : c.U)
            if (out.cells_of[v].size() == 1) w.push_back(v);
        for (int v : w) excl[v] = 1;
        std::vector<int> sites;
        for (int s : c.S)
            if (excl[s]) sites.push_back(s);
        for (int v : w) excl[v] = 0;
        if (sites.empty())
            return Infeasible{"cell " + std::to_string(i) +
                              " keeps no allowed site after dropping shared vertices"};
        out.instance.cells[i].S = std::move(sites);
        if (!connected_in_tree(c.U, rt.parent, flag))
            return Infeasible{"cell " + std::to_string(i) + " is not connected"};
        if (!connected_in_tree(w, rt.parent, flag))
            return Infeasible{"exclusive part of cell " + std::to_string(i) +
                              " is not connected"};
        // edges of T[U_i] with exactly one exclusive endpoint, exclusive first
        for (int v : c.U) flag[v] = 1;
        for (int v : w) excl[v] = 1;
        for (int v : c.U) {
            int p = rt.parent[v];
            if (p >= 0 && flag[p] && excl[p] != excl[v]) {
                if (excl[p])
                    out.boundary_edges[i].emplace_back(p, v);
                else
                    out.boundary_edges[i].emplace_back(v, p);
            }
        }
        for (int v : c.U) flag[v] = 0;
        for (int v : w) excl[v] = 0;
    }
    return out;
}

ExpandResult expand_to_disjoint(const PreprocessedInstance& pre) {
    const Instance& in = pre.instance;
    const int k = in.k();
    int n = in.n();

    RootedTree rt = root_tree(in.graph, 0);
    std::vector<int> parent = std::move(rt.parent);
    std::vector<Weight> plen = std::move(rt.parent_len);
    std::vector<std::vector<int>> cells_of = pre.cells_of;
    std::vector<std::vector<int>> us(k), ss(k);
    for (int i = 0; i < k; ++i) {
        us[i] = in.cells[i].U;
        ss[i] = in.cells[i].S;
    }

    std::vector<char> flag(n, 0), excl(n, 0), removed(n, 0);
    std::vector<int> loc(n, -1);
    const Weight eps(Rational(0), Rational(1), Rational(0));
    int expansions = 0;

    for (int i = 0; i < k; ++i) {
        std::vector<int>& u = us[i];
        // the exclusive part may have grown since preprocessing
        std::vector<int> w;
        for (int v : u)
            if (cells_of[v].size() == 1) w.push_back(v);
        if (!connected_in_tree(u, parent, flag))
            return Infeasible{"cell " + std::to_string(i) +
                              " lost connectivity during expansion"};
        if (!connected_in_tree(w, parent, flag))
            return Infeasible{"exclusive part of cell " + std::to_string(i) +
                              " is not connected"};
        if (w.size() == u.size()) continue;  // already disjoint from the rest

        // adjacency of T[U_i] in local ids, from the parent links
        const int m = static_cast<int>(u.size());
        for (int j = 0; j < m; ++j) {
            loc[u[j]] = j;
            flag[u[j]] = 1;
        }
        for (int v : w) excl[v] = 1;
        std::vector<std::vector<int>> adj(m);
        for (int v : u) {
            int p = parent[v];
            if (p >= 0 && flag[p]) {
                adj[loc[v]].push_back(loc[p]);
                adj[loc[p]].push_back(loc[v]);
            }
        }
        std::vector<std::pair<int, int>> boundary;
        for (int v : u) {
            int p = parent[v];
            if (p >= 0 && flag[p] && excl[p] != excl[v]) {
                if (excl[p])
                    boundary.emplace_back(p, v);
                else
                    boundary.emplace_back(v, p);
            }
        }
        // expand every boundary edge; the dropped regions are pairwise
        // disjoint, so the adjacency built above stays valid throughout
        std::vector<char> seen(m, 0);
        std::vector<int> stack, fresh;
        for (auto [x, y] : boundary) {
            int yp = n++;
            parent.push_back(-1);
            plen.push_back(Weight());
            cells_of.push_back({i});
            flag.push_back(0);
            excl.push_back(0);
            removed.push_back(0);
            loc.push_back(-1);
            // splice x -- y' -- y in place of edge xy, eps stub next to y
            if (parent[y] == x) {
                parent[yp] = x;
                plen[yp] = plen[y];
                parent[y] = yp;
                plen[y] = eps;
            } else {  // y is still x's parent
                parent[yp] = y;
                plen[yp] = eps;
                parent[x] = yp;
            }
            fresh.push_back(yp);
            ++expansions;
            // drop the members on the y side of the old edge
            seen[loc[x]] = 1;
            seen[loc[y]] = 1;
            stack.assign(1, loc[y]);
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                int v = u[a];
                removed[v] = 1;
                auto& lst = cells_of[v];
                lst.erase(std::find(lst.begin(), lst.end(), i));
                for (int b : adj[a])
                    if (!seen[b]) {
                        seen[b] = 1;
                        stack.push_back(b);
                    }
            }
        }
        // rebuild the member list and clear the scratch marks
        std::vector<int> kept;
        kept.reserve(u.size());
        for (int v : u) {
            if (!removed[v]) kept.push_back(v);
            removed[v] = 0;
            flag[v] = 0;
            excl[v] = 0;
            loc[v] = -1;
        }
        kept.insert(kept.end(), fresh.begin(), fresh.end());
        canonicalize(kept);
        u = std::move(kept);
    }

    Graph g(n);
    for (int v = 0; v < n; ++v)
        if (parent[v] >= 0) g.add_edge(parent[v], v, plen[v]);
    Instance out{g, {}, Kind::tree};
    out.cells.resize(k);
    for (int i = 0; i < k; ++i) {
        out.cells[i].U = std::move(us[i]);
        out.cells[i].S = std::move(ss[i]);
    }
    return Expanded{std::move(out), expansions};
}

std::pair<Instance, ProjectionMap> split_to_degree3(const Instance& inst) {
    if (inst.kind != Kind::tree)
        throw std::invalid_argument("split_to_degree3: tree instance required");
    auto viol = validate_instance(inst);
    if (!viol.empty())
        throw std::invalid_argument("split_to_degree3: " + viol.front().to_string());

    const int n = inst.n();
    const int k = inst.k();
    std::vector<int> cell_id(n, -1);
    for (int i = 0; i < k; ++i)
        for (int v : inst.cells[i].U) {
            if (cell_id[v] != -1)
                throw std::invalid_argument("split_to_degree3: cells must be disjoint");
            cell_id[v] = i;
        }
    {
        RootedTree rt = root_tree(inst.graph, 0);
        std::vector<char> flag(n, 0);
        for (int i = 0; i < k; ++i)
            if (!connected_in_tree(inst.cells[i].U, rt.parent, flag))
                throw std::invalid_argument("split_to_degree3: cell is not connected");
    }
    if (n == 1) return {inst, ProjectionMap{{0}}};

    // one vertex per (endpoint, incident edge) pair, ids in adjacency order
    std::vector<std::vector<int>> ids(n);
    std::vector<int> origin;
    int idc = 0;
    for (int v = 0; v < n; ++v) {
        ids[v].resize(inst.graph.degree(v));
        for (int& id : ids[v]) {
            id = idc++;
            origin.push_back(v);
        }
    }
    std::map<std::pair<int, int>, int> slot;  // (vertex, neighbor) -> list position
    for (int v = 0; v < n; ++v) {
        const auto& nb = inst.graph.neighbors(v);
        for (int j = 0; j < static_cast<int>(nb.size()); ++j) slot[{v, nb[j].to}] = j;
    }

    Graph g(idc);
    const Weight shorten(Rational(0), Rational(0), Rational(4LL * n));
    const Weight tiny(Rational(0), Rational(0), Rational(1));
    for (int u = 0; u < n; ++u) {
        const auto& nb = inst.graph.neighbors(u);
        for (int j = 0; j < static_cast<int>(nb.size()); ++j) {
            int v = nb[j].to;
            if (u < v) {
                Weight w = nb[j].w;
                if (cell_id[u] != cell_id[v]) w -= shorten;
                if (!w.is_positive())
                    throw std::invalid_argument(
                        "split_to_degree3: cross-cell edge too short to shorten");
                g.add_edge(ids[u][j], ids[v][slot[{v, u}]], w);
            }
            // chain the vertices derived from u with infinitesimal edges
            if (j + 1 < static_cast<int>(nb.size())) g.add_edge(ids[u][j], ids[u][j + 1], tiny);
        }
    }
    for (int v = 0; v < idc; ++v)
        if (g.degree(v) > 3) throw std::logic_error("split_to_degree3: degree bound broken");

    Instance out{g, {}, Kind::tree};
    out.cells.resize(k);
    for (int i = 0; i < k; ++i) {
        for (int v : inst.cells[i].U)
            for (int id : ids[v]) out.cells[i].U.push_back(id);
        for (int v : inst.cells[i].S)
            for (int id : ids[v]) out.cells[i].S.push_back(id);
    }
    return {std::move(out), ProjectionMap{std::move(origin)}};
}

Solution project_solution(const Solution& sol, const ProjectionMap& pm) {
    Solution out;
    out.sites.reserve(sol.sites.size());
    for (int s : sol.sites) out.sites.push_back(pm.origin.at(s));
    return out;
}

}  // namespace ivd
