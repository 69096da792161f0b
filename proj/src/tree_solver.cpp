#include "ivd/tree_solver.hpp"

#include "ivd/transform.hpp"
#include "ivd/voronoi.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <variant>

namespace ivd {

namespace {

// Merges a sorted run of intervals (both endpoint orders ascending) into
// the maximal intervals of their union. Two neighbours merge when they
// overlap or touch; they stay apart only across a genuine gap.
std::vector<Interval> merge_touching(std::vector<Interval> ivs) {
    std::vector<Interval> out;
    for (Interval& iv : ivs) {
        if (!out.empty()) {
            Interval& p = out.back();
            int r = compare(p.hi, iv.lo);
            bool gap = r < 0 || (r == 0 && p.hi_open && iv.lo_open);
            if (!gap) {
                p.hi = iv.hi;
                p.hi_open = iv.hi_open;
                continue;
            }
        }
        out.push_back(iv);
    }
    return out;
}

// Maximal intervals of the union of open windows (x - lam, x + lam) over
// the given ascending values.
std::vector<Interval> widen_merge(const std::vector<Weight>& vals, const Weight& lam) {
    std::vector<Interval> ivs;
    ivs.reserve(vals.size());
    for (const Weight& x : vals) ivs.push_back(Interval::open(x - lam, x + lam));
    return merge_touching(std::move(ivs));
}

}  // namespace

SubcubicSolver::SubcubicSolver(const Instance& inst) : inst_(inst) {
    if (inst_.kind != Kind::tree)
        throw std::invalid_argument("subcubic solver: tree instance required");
    if (!validate_instance(inst_).empty())
        throw std::invalid_argument("subcubic solver: instance fails validation");
    const int n = inst_.n();
    for (int v = 0; v < n; ++v)
        if (inst_.graph.degree(v) > 3)
            throw std::invalid_argument("subcubic solver: vertex degree exceeds 3");
    // interval probes below rely on every edge weight being positive
    for (int v = 0; v < n; ++v)
        for (const EdgeTo& e : inst_.graph.neighbors(v))
            if (!e.w.is_positive())
                throw std::invalid_argument("subcubic solver: edge weights must be positive");

    cell_.assign(n, -1);
    for (int i = 0; i < inst_.k(); ++i)
        for (int v : inst_.cells[i].U) {
            if (cell_[v] != -1) throw std::invalid_argument("subcubic solver: cells overlap");
            cell_[v] = i;
        }

    // root at a leaf so every vertex has at most two children
    int root = 0;
    for (int v = 0; v < n; ++v)
        if (inst_.graph.degree(v) <= 1) {
            root = v;
            break;
        }
    rt_ = root_tree(inst_.graph, root);

    // each cell must induce exactly one connected piece
    std::vector<int> heads(inst_.k(), 0);
    for (int v = 0; v < n; ++v) {
        int p = rt_.parent[v];
        if (p < 0 || cell_[p] != cell_[v]) ++heads[cell_[v]];
    }
    for (int i = 0; i < inst_.k(); ++i)
        if (heads[i] != 1)
            throw std::invalid_argument("subcubic solver: cell induces a disconnected subtree");

    in_s_.assign(n, 0);
    for (int i = 0; i < inst_.k(); ++i)
        for (int s : inst_.cells[i].S)
            if (cell_[s] == i) in_s_[s] = 1;

    subtree_.assign(n, 1);
    for (auto it = rt_.order.rbegin(); it != rt_.order.rend(); ++it)
        if (rt_.parent[*it] >= 0) subtree_[rt_.parent[*it]] += subtree_[*it];

    // finite stand-in for +infinity: larger than any value the run probes,
    // even after every downward shift and window extension
    Rational sum(0);
    for (int v = 0; v < n; ++v)
        for (const EdgeTo& e : inst_.graph.neighbors(v))
            if (e.to > v) sum += e.w.a;
    inf_ = Weight(Rational(8) * (sum + Rational(1)));

    st_.assign(n, NodeState{});
    stats_.solved_n = n;
}

Interval SubcubicSolver::positive_window() const {
    return Interval{Weight(), inf_, true, false};
}

void SubcubicSolver::note_family(const Family& f) {
    stats_.max_family = std::max(stats_.max_family, f.size());
}

Family SubcubicSolver::clip_join(Family fam, const std::vector<Interval>& windows) {
    Family acc = store_.empty_family();
    Family rest = std::move(fam);
    for (const Interval& w : windows) {
        if (rest.empty()) break;
        auto [ins, out] = clip(std::move(rest), w);
        acc = join_families(std::move(acc), std::move(ins));
        rest = std::move(out);
    }
    return acc;
}

void SubcubicSolver::leaf_sets(int v) {
    NodeState& s = st_[v];
    s.below = in_s_[v] ? insert(store_.empty_family(), Interval::point(Weight()))
                       : store_.empty_family();
    s.above = insert(store_.empty_family(), positive_window());
    note_family(s.below);
}

void SubcubicSolver::combine_one(int v, int c) {
    const Weight& lam = rt_.parent_len[c];
    NodeState& s = st_[v];
    s.child_small = c;
    s.lam_small = lam;
    const NodeState& cs = st_[c];
    if (same_cell(v, c)) {
        // the site of v's own cell may sit below c or at v itself
        s.chi = in_s_[v] && hit_by(cs.above, Interval::point(lam));
        Family b = shift(Family(cs.below), lam);
        if (s.chi) b = insert(std::move(b), Interval::point(Weight()));
        s.below = std::move(b);
        s.above = clip(shift(Family(cs.above), -lam), positive_window()).first;
    } else {
        // v's cell is {v} here, so only v itself can host its site
        s.chi = in_s_[v] && hit_by(cs.below, Interval::open(-lam, lam));
        s.below = s.chi ? insert(store_.empty_family(), Interval::point(Weight()))
                        : store_.empty_family();
        s.above = clip(extend(Family(cs.below), lam, true), positive_window()).first;
    }
    note_family(s.below);
    note_family(s.above);
}

void SubcubicSolver::combine_two(int v, int a, int b) {
    int c1 = a, c2 = b;
    // materialize the smaller representation, query the larger one
    if (st_[c1].below.size() + st_[c1].above.size() >
        st_[c2].below.size() + st_[c2].above.size())
        std::swap(c1, c2);
    stats_.sum_min_subtree += std::min(subtree_[c1], subtree_[c2]);

    NodeState& s = st_[v];
    const Weight lam1 = rt_.parent_len[c1];
    const Weight lam2 = rt_.parent_len[c2];
    s.child_small = c1;
    s.child_large = c2;
    s.lam_small = lam1;
    s.lam_large = lam2;
    const NodeState& s1 = st_[c1];
    const NodeState& s2 = st_[c2];
    const bool same1 = same_cell(v, c1);
    const bool same2 = same_cell(v, c2);

    const bool ok1 = same1 ? hit_by(s1.above, Interval::point(lam1))
                           : hit_by(s1.below, Interval::open(-lam1, lam1));
    const bool ok2 = same2 ? hit_by(s2.above, Interval::point(lam2))
                           : hit_by(s2.below, Interval::open(-lam2, lam2));
    s.chi = in_s_[v] && ok1 && ok2;

    // small side, expressed in distance-from-v coordinates: its below
    // values as a list and its gating set as maximal intervals
    std::vector<Weight> vals1;
    for (const Interval& iv : s1.below.report()) vals1.push_back(iv.lo);
    std::vector<Interval> rep1;
    if (same1) {
        Family t = shift(Family(s1.above), -lam1);
        rep1 = merge_touching(t.report());
    } else {
        rep1 = widen_merge(vals1, lam1);
    }

    Family acc = store_.empty_family();
    if (same1 && same2) {
        // sites of v's cell below either child; keep values the other
        // side's gate accepts, deduplicating the overlap
        acc = clip_join(shift(Family(s2.below), lam2), rep1);
        for (const Weight& y : vals1) {
            Weight yp = y + lam1;
            if (!hit_by(s2.above, Interval::point(yp + lam2))) continue;
            if (!hit_by(acc, Interval::point(yp))) acc = insert(std::move(acc), Interval::point(yp));
        }
    } else if (same1) {
        std::vector<Interval> pts;
        for (const Weight& y : vals1) {
            Weight yp = y + lam1;
            if (hit_by(s2.below, Interval::open(yp - lam2, yp + lam2)))
                pts.push_back(Interval::point(yp));
        }
        acc = store_.family_of(pts);
    } else if (same2) {
        acc = clip_join(shift(Family(s2.below), lam2), rep1);
    }
    if (s.chi) acc = insert(std::move(acc), Interval::point(Weight()));
    s.below = std::move(acc);

    Family gate2 = same2 ? shift(Family(s2.above), -lam2)
                         : extend(Family(s2.below), lam2, true);
    s.above = clip(clip_join(std::move(gate2), rep1), positive_window()).first;

    note_family(s.below);
    note_family(s.above);
}

std::optional<Solution> SubcubicSolver::run() {
    if (ran_) throw std::logic_error("subcubic solver: run() may be called once");
    ran_ = true;
    const int k = inst_.k();
    if (k == 1) {
        // one cell covering the whole tree: any allowed site works
        if (inst_.cells[0].S.empty()) return std::nullopt;
        return Solution{{inst_.cells[0].S.front()}};
    }

    for (auto it = rt_.order.rbegin(); it != rt_.order.rend(); ++it) {
        int v = *it;
        const auto& kids = rt_.children[v];
        if (kids.empty())
            leaf_sets(v);
        else if (kids.size() == 1)
            combine_one(v, kids[0]);
        else
            combine_two(v, kids[0], kids[1]);
    }

    const NodeState& root = st_[rt_.root];
    if (root.below.empty()) return std::nullopt;
    Weight start = first_interval(root.below)->lo;

    std::vector<int> site(k, -1);
    recover(site, start);
    for (int sv : site)
        if (sv < 0) throw std::logic_error("subcubic solver: recovery left a cell unassigned");
    Solution sol;
    sol.sites.assign(site.begin(), site.end());
    return sol;
}

void SubcubicSolver::assign_site(std::vector<int>& site, int v) const {
    int c = cell_[v];
    if (!in_s_[v]) throw std::logic_error("subcubic solver: recovered a disallowed site");
    if (site[c] != -1) throw std::logic_error("subcubic solver: cell assigned twice");
    site[c] = v;
}

void SubcubicSolver::recover(std::vector<int>& site, const Weight& start) const {
    struct Task {
        int v;
        Weight val;
        bool above;  // does v's own site sit outside v's subtree?
    };
    std::vector<Task> todo;
    todo.push_back({rt_.root, start, false});

    auto window_pick = [&](int c, const Weight& mid, const Weight& lam) {
        std::optional<Interval> h =
            first_hit(st_[c].below, Interval::open(mid - lam, mid + lam));
        if (!h) throw std::logic_error("subcubic solver: recovery window empty");
        return h->lo;
    };

    while (!todo.empty()) {
        Task t = std::move(todo.back());
        todo.pop_back();
        const NodeState& s = st_[t.v];
        const auto& kids = rt_.children[t.v];

        if (t.above) {
            // v's site is above at distance val; place everything inside
            int cs[2] = {s.child_small, s.child_large};
            for (int c : cs) {
                if (c < 0) continue;
                const Weight& lam = (c == s.child_small) ? s.lam_small : s.lam_large;
                if (same_cell(t.v, c)) {
                    if (!hit_by(st_[c].above, Interval::point(t.val + lam)))
                        throw std::logic_error("subcubic solver: above descent lost its witness");
                    todo.push_back({c, t.val + lam, true});
                } else {
                    todo.push_back({c, window_pick(c, t.val, lam), false});
                }
            }
            continue;
        }

        if (kids.empty()) {
            if (!t.val.is_zero()) throw std::logic_error("subcubic solver: leaf target not zero");
            assign_site(site, t.v);
        } else if (kids.size() == 1) {
            int c = s.child_small;
            const Weight& lam = s.lam_small;
            if (same_cell(t.v, c)) {
                if (t.val.is_zero()) {
                    assign_site(site, t.v);
                    todo.push_back({c, lam, true});
                } else {
                    if (!hit_by(st_[c].below, Interval::point(t.val - lam)))
                        throw std::logic_error("subcubic solver: below descent lost its witness");
                    todo.push_back({c, t.val - lam, false});
                }
            } else {
                if (!t.val.is_zero()) throw std::logic_error("subcubic solver: expected v as its own site");
                assign_site(site, t.v);
                todo.push_back({c, window_pick(c, t.val, lam), false});
            }
        } else {
            int c1 = s.child_small, c2 = s.child_large;
            const Weight &l1 = s.lam_small, &l2 = s.lam_large;
            const bool same1 = same_cell(t.v, c1);
            const bool same2 = same_cell(t.v, c2);
            if (same1 && same2) {
                if (t.val.is_zero()) {
                    if (!s.chi) throw std::logic_error("subcubic solver: zero target without chi");
                    assign_site(site, t.v);
                    todo.push_back({c1, l1, true});
                    todo.push_back({c2, l2, true});
                } else if (hit_by(st_[c1].below, Interval::point(t.val - l1)) &&
                           hit_by(st_[c2].above, Interval::point(t.val + l2))) {
                    todo.push_back({c1, t.val - l1, false});
                    todo.push_back({c2, t.val + l2, true});
                } else {
                    if (!(hit_by(st_[c2].below, Interval::point(t.val - l2)) &&
                          hit_by(st_[c1].above, Interval::point(t.val + l1))))
                        throw std::logic_error("subcubic solver: no side admits the target");
                    todo.push_back({c2, t.val - l2, false});
                    todo.push_back({c1, t.val + l1, true});
                }
            } else if (same1 || same2) {
                int co = same1 ? c1 : c2;  // child sharing v's cell
                int cd = same1 ? c2 : c1;
                const Weight& lo = same1 ? l1 : l2;
                const Weight& ld = same1 ? l2 : l1;
                if (t.val.is_zero()) {
                    if (!s.chi) throw std::logic_error("subcubic solver: zero target without chi");
                    assign_site(site, t.v);
                    todo.push_back({co, lo, true});
                } else {
                    if (!hit_by(st_[co].below, Interval::point(t.val - lo)))
                        throw std::logic_error("subcubic solver: below descent lost its witness");
                    todo.push_back({co, t.val - lo, false});
                }
                todo.push_back({cd, window_pick(cd, t.val, ld), false});
            } else {
                if (!t.val.is_zero() || !s.chi)
                    throw std::logic_error("subcubic solver: zero target without chi");
                assign_site(site, t.v);
                todo.push_back({c1, window_pick(c1, t.val, l1), false});
                todo.push_back({c2, window_pick(c2, t.val, l2), false});
            }
        }
    }
}

std::vector<Weight> SubcubicSolver::below_values(int v) const {
    std::vector<Weight> out;
    for (const Interval& iv : st_.at(v).below.report()) out.push_back(iv.lo);
    return out;
}

bool SubcubicSolver::above_allows(int v, const Weight& alpha) const {
    return hit_by(st_.at(v).above, Interval::point(alpha));
}

int SubcubicSolver::above_size(int v) const { return st_.at(v).above.size(); }
int SubcubicSolver::below_size(int v) const { return st_.at(v).below.size(); }

std::optional<Solution> solve_subcubic_disjoint(const Instance& inst, SolveStats* stats) {
    SubcubicSolver solver(inst);
    std::optional<Solution> sol = solver.run();
    if (stats) *stats = solver.stats();
    return sol;
}

std::optional<Solution> solve(const Instance& inst, SolveStats* stats) {
    SolveStats local;
    PreprocessResult pre = preprocess(inst);
    if (std::holds_alternative<Infeasible>(pre)) {
        if (stats) *stats = local;
        return std::nullopt;
    }
    ExpandResult ex = expand_to_disjoint(std::get<PreprocessedInstance>(pre));
    if (std::holds_alternative<Infeasible>(ex)) {
        if (stats) *stats = local;
        return std::nullopt;
    }
    Expanded& expanded = std::get<Expanded>(ex);
    local.expansions = expanded.expansions;

    auto [cubic, pm] = split_to_degree3(expanded.instance);
    SolveStats dp;
    std::optional<Solution> sol = solve_subcubic_disjoint(cubic, &dp);
    local.solved_n = dp.solved_n;
    local.sum_min_subtree = dp.sum_min_subtree;
    local.max_family = dp.max_family;
    if (stats) *stats = local;
    if (!sol) return std::nullopt;

    Solution mapped = project_solution(*sol, pm);
    if (!check_solution(inst, mapped)) return std::nullopt;
    return mapped;
}

}  // namespace ivd
