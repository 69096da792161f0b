#include "ivd/generators.hpp"

#include "ivd/voronoi.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace ivd {

namespace {

// Edge collector for gadget graphs whose vertex count is only known at
// the end. All edges get unit length.
struct Builder {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int fresh() { return n++; }
    void edge(int u, int v) { edges.push_back({u, v}); }

    // Chain of len unit edges between u and v; returns the interior ids.
    std::vector<int> path(int u, int v, int len) {
        std::vector<int> interior;
        int prev = u;
        for (int s = 1; s < len; ++s) {
            int w = fresh();
            interior.push_back(w);
            edge(prev, w);
            prev = w;
        }
        edge(prev, v);
        return interior;
    }

    Graph graph() const {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v, Weight::real(1));
        return g;
    }
};

Instance finish(Graph g, std::vector<std::vector<int>> us, Kind kind, const char* who) {
    Instance inst{std::move(g), {}, kind};
    for (std::vector<int>& u : us) {
        canonicalize(u);
        inst.cells.push_back({u, u});
    }
    std::vector<Violation> bad = validate_instance(inst);
    if (!bad.empty()) {
        bool only_disconnected =
            std::all_of(bad.begin(), bad.end(), [](const Violation& v) {
                return v.type == Violation::Type::Disconnected;
            });
        if (only_disconnected)
            throw std::invalid_argument(std::string(who) +
                                        ": construction yields a disconnected graph");
        throw std::logic_error(std::string(who) + ": " + bad.front().to_string());
    }
    return inst;
}

}  // namespace

PlantedInstance gen_random_tree_yes(int n, int k, long long max_len, std::uint64_t seed) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("gen_random_tree_yes: need 1 <= k <= n");
    if (max_len < 1) throw std::invalid_argument("gen_random_tree_yes: max_len must be positive");
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (int v = 1; v < n; ++v) {
        int p = (int)std::uniform_int_distribution<int>(0, v - 1)(rng);
        long long len = std::uniform_int_distribution<long long>(1, max_len)(rng);
        g.add_edge(v, p, Weight::real(len));
    }
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    std::vector<int> sites(verts.begin(), verts.begin() + k);

    VoronoiLabels lab = voronoi_cells(g, sites);
    std::vector<std::vector<int>> us(k);
    for (int v = 0; v < n; ++v)
        for (int i : lab.labels[v]) us[i].push_back(v);
    PlantedInstance out{finish(std::move(g), std::move(us), Kind::tree, "gen_random_tree_yes"),
                        Solution{sites}};
    return out;
}

Instance gen_from_1in3sat(const OneInThreeFormula& f) {
    const int n = f.variables, m = (int)f.clauses.size();
    if (n < 1) throw std::invalid_argument("gen_from_1in3sat: need at least one element");
    for (const auto& c : f.clauses) {
        for (int x : c)
            if (x < 0 || x >= n) throw std::invalid_argument("gen_from_1in3sat: element out of range");
        if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
            throw std::invalid_argument("gen_from_1in3sat: clause elements must be distinct");
    }

    // vertices: pair (2i, 2i+1) per element, then a triangle per clause
    Builder bd;
    bd.n = 2 * n + 3 * m;
    std::vector<std::vector<int>> us;
    for (int i = 0; i < n; ++i) {
        bd.edge(2 * i, 2 * i + 1);
        us.push_back({2 * i, 2 * i + 1});
    }
    for (int j = 0; j < m; ++j) {
        int base = 2 * n + 3 * j;
        bd.edge(base, base + 1);
        bd.edge(base + 1, base + 2);
        bd.edge(base, base + 2);
        for (int t = 0; t < 3; ++t) bd.edge(base + t, 2 * f.clauses[j][t]);
        us.push_back({base, base + 1, base + 2});
    }
    return finish(bd.graph(), std::move(us), Kind::graph, "gen_from_1in3sat");
}

Instance gen_from_msi(const MsiInput& in) {
    const int nh = (int)in.part_of.size(), l = in.parts;
    if (l < 1) throw std::invalid_argument("gen_from_msi: need at least one part");
    for (int p : in.part_of)
        if (p < 0 || p >= l) throw std::invalid_argument("gen_from_msi: part id out of range");

    std::set<std::pair<int, int>> pset;
    std::vector<int> pdeg(l, 0);
    for (auto [i, j] : in.p_edges) {
        if (i < 0 || i >= l || j < 0 || j >= l || i == j)
            throw std::invalid_argument("gen_from_msi: bad pattern edge");
        if (!pset.insert({std::min(i, j), std::max(i, j)}).second)
            throw std::invalid_argument("gen_from_msi: duplicate pattern edge");
        ++pdeg[i];
        ++pdeg[j];
    }
    for (int i = 0; i < l; ++i)
        if (pdeg[i] < 2)
            throw std::invalid_argument("gen_from_msi: every pattern vertex needs degree at least 2");

    std::set<std::pair<int, int>> hset;
    for (auto [u, v] : in.h_edges) {
        if (u < 0 || u >= nh || v < 0 || v >= nh || u == v)
            throw std::invalid_argument("gen_from_msi: bad host edge");
        if (!hset.insert({std::min(u, v), std::max(u, v)}).second)
            throw std::invalid_argument("gen_from_msi: duplicate host edge");
        int pi = in.part_of[u], pj = in.part_of[v];
        if (!pset.count({std::min(pi, pj), std::max(pi, pj)}))
            throw std::invalid_argument("gen_from_msi: host edge off the pattern");
    }

    Builder bd;
    bd.n = nh;
    std::vector<std::vector<int>> part(l);
    for (int u = 0; u < nh; ++u) part[in.part_of[u]].push_back(u);

    // subdivide each host edge and group the subdividers by part pair
    std::map<std::pair<int, int>, std::vector<int>> sub;
    for (auto [u, v] : in.h_edges) {
        int w = bd.fresh();
        bd.edge(u, w);
        bd.edge(w, v);
        int pi = in.part_of[u], pj = in.part_of[v];
        sub[{std::min(pi, pj), std::max(pi, pj)}].push_back(w);
    }
    for (int i = 0; i < l; ++i)
        for (std::size_t x = 0; x < part[i].size(); ++x)
            for (std::size_t y = x + 1; y < part[i].size(); ++y)
                bd.edge(part[i][x], part[i][y]);
    for (const auto& [pij, ws] : sub)
        for (std::size_t x = 0; x < ws.size(); ++x)
            for (std::size_t y = x + 1; y < ws.size(); ++y) bd.edge(ws[x], ws[y]);

    std::vector<std::vector<int>> us;
    for (auto [i, j] : in.p_edges) {
        std::vector<int> u = sub[{std::min(i, j), std::max(i, j)}];
        u.insert(u.end(), part[i].begin(), part[i].end());
        u.insert(u.end(), part[j].begin(), part[j].end());
        us.push_back(std::move(u));
    }
    return finish(bd.graph(), std::move(us), Kind::graph, "gen_from_msi");
}

MisGadget gen_from_mis(const MisInput& in) {
    const int l = in.parts, t = in.part_size, m = (int)in.edges.size();
    if (l < 2 || t < 1) throw std::invalid_argument("gen_from_mis: need parts >= 2 and size >= 1");
    if (m < 1) throw std::invalid_argument("gen_from_mis: need at least one edge");
    std::set<std::array<int, 4>> eset;
    for (const auto& e : in.edges) {
        auto [i, h, i2, h2] = e;
        if (i < 0 || i >= l || i2 < 0 || i2 >= l || i == i2 || h < 0 || h >= t || h2 < 0 || h2 >= t)
            throw std::invalid_argument("gen_from_mis: bad edge");
        std::array<int, 4> norm = i < i2 ? std::array<int, 4>{i, h, i2, h2}
                                         : std::array<int, 4>{i2, h2, i, h};
        if (!eset.insert(norm).second) throw std::invalid_argument("gen_from_mis: duplicate edge");
    }

    const int cpc = 3 * l + 1;
    std::vector<std::vector<std::vector<int>>> choice(l, std::vector<std::vector<int>>(m));
    std::vector<std::vector<int>> e_vertex(l, std::vector<int>(m, -1));
    std::vector<std::vector<int>> z_vertex = e_vertex;
    std::vector<int> r_first(m, -1), r_last(m, -1), f_vertex(m, -1);

    Builder bd;
    std::vector<std::vector<int>> av(l, std::vector<int>(m, -1)), bv = av;
    std::vector<std::vector<int>> us((std::size_t)cpc * m);

    auto append = [](std::vector<int>& dst, const std::vector<int>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
    };

    for (int j = 0; j < m; ++j)
        for (int i = 0; i < l; ++i) {
            std::vector<int> ucell;
            choice[i][j].resize(t);
            for (int h = 0; h < t; ++h) ucell.push_back(choice[i][j][h] = bd.fresh());
            int a = av[i][j] = bd.fresh();
            int b = bv[i][j] = bd.fresh();
            int c = bd.fresh();
            ucell.push_back(a);
            ucell.push_back(b);
            ucell.push_back(c);
            // arm lengths t+1 .. 2t towards a and b make the choices
            // distinguishable; the uniform length t towards c does not
            for (int h = 0; h < t; ++h) {
                append(ucell, bd.path(a, choice[i][j][h], t + h + 1));
                append(ucell, bd.path(b, choice[i][j][h], t + h + 1));
                append(ucell, bd.path(c, choice[i][j][h], t));
            }
            int ev = e_vertex[i][j] = bd.fresh();
            int zv = z_vertex[i][j] = bd.fresh();
            bd.edge(ev, zv);
            // a dead-end path of length t hanging next to c
            std::vector<int> pe{ev};
            int prev = ev;
            for (int s = 0; s < t; ++s) {
                int w = bd.fresh();
                bd.edge(prev, w);
                pe.push_back(w);
                prev = w;
            }
            bd.edge(prev, c);
            us[(std::size_t)j * cpc + 3 * i] = std::move(ucell);
            us[(std::size_t)j * cpc + 3 * i + 1] = std::move(pe);
            us[(std::size_t)j * cpc + 3 * i + 2] = {zv};
        }

    for (int j = 0; j + 1 < m; ++j)
        for (int i = 0; i < l; ++i) bd.edge(bv[i][j], av[i][j + 1]);

    for (int j = 0; j < m; ++j) {
        auto [i, h, i2, h2] = in.edges[j];
        std::vector<int> interior = bd.path(choice[i][j][h], choice[i2][j][h2], 2 * t + 2);
        r_first[j] = interior.front();
        r_last[j] = interior.back();
        int mid = interior[t];
        int fv = f_vertex[j] = bd.fresh();
        std::vector<int> rcell = std::move(interior);
        append(rcell, bd.path(mid, fv, t));
        rcell.push_back(fv);
        us[(std::size_t)(j + 1) * cpc - 1] = std::move(rcell);
    }

    return MisGadget{finish(bd.graph(), std::move(us), Kind::graph, "gen_from_mis"),
                     in,
                     std::move(choice),
                     std::move(e_vertex),
                     std::move(z_vertex),
                     std::move(r_first),
                     std::move(r_last),
                     std::move(f_vertex),
                     cpc};
}

Solution planted_mis_solution(const MisGadget& g, const std::vector<int>& pick) {
    const MisInput& in = g.input;
    const int l = in.parts, t = in.part_size, m = (int)in.edges.size();
    if ((int)pick.size() != l) throw std::invalid_argument("planted_mis_solution: one pick per part");
    for (int h : pick)
        if (h < 0 || h >= t) throw std::invalid_argument("planted_mis_solution: pick out of range");

    std::vector<int> sites(g.instance.k(), -1);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < l; ++i) {
            sites[g.cell_u(i, j)] = g.choice[i][j][pick[i]];
            sites[g.cell_path(i, j)] = g.e_vertex[i][j];
            sites[g.cell_z(i, j)] = g.z_vertex[i][j];
        }
        auto [i, h, i2, h2] = in.edges[j];
        if (pick[i] == h)
            sites[g.cell_r(j)] = g.r_first[j];
        else if (pick[i2] == h2)
            sites[g.cell_r(j)] = g.r_last[j];
        else
            sites[g.cell_r(j)] = g.f_vertex[j];
    }
    return Solution{sites};
}

Instance gen_set_intersection_stars(const std::vector<long long>& xs,
                                    const std::vector<long long>& ys) {
    const int n = (int)xs.size();
    if (n < 1 || ys.size() != xs.size())
        throw std::invalid_argument("gen_set_intersection_stars: need two lists of equal size");
    for (int i = 0; i < n; ++i)
        if (xs[i] < 1 || ys[i] < 1)
            throw std::invalid_argument("gen_set_intersection_stars: values must be positive");

    // 0: first hub, 1..n its arms, n+1: shared leaf, n+2: second hub,
    // n+3..2n+2 the second star's arms
    Graph g(2 * n + 3);
    for (int i = 0; i < n; ++i) g.add_edge(0, 1 + i, Weight::real(xs[i]));
    g.add_edge(0, n + 1, Weight::real(2));
    g.add_edge(n + 2, n + 1, Weight::real(1));
    for (int i = 0; i < n; ++i) g.add_edge(n + 2, n + 3 + i, Weight::real(ys[i] + 1));

    std::vector<int> u1(n + 2), u2(n + 2);
    std::iota(u1.begin(), u1.end(), 0);
    std::iota(u2.begin(), u2.end(), n + 1);
    return finish(std::move(g), {u1, u2}, Kind::tree, "gen_set_intersection_stars");
}

}  // namespace ivd
