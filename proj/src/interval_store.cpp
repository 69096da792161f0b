#include "ivd/interval_store.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace ivd {

namespace {
constexpr int kDelta = 3;  // weight-balance factor
constexpr int kRatio = 2;  // single vs double rotation threshold
}  // namespace

// ---------------------------------------------------------------- intervals

bool Interval::valid() const {
    int c = compare(lo, hi);
    if (c < 0) return true;
    return c == 0 && !lo_open && !hi_open;
}

bool Interval::contains_point(const Weight& y) const {
    EndpointKey p{y, 0};
    return left_key(*this) <= p && p <= right_key(*this);
}

std::string Interval::to_string() const {
    std::string s = lo_open ? "(" : "[";
    s += lo.to_string() + "," + hi.to_string();
    s += hi_open ? ")" : "]";
    return s;
}

EndpointKey left_key(const Interval& iv) { return {iv.lo, iv.lo_open ? 1 : 0}; }
EndpointKey right_key(const Interval& iv) { return {iv.hi, iv.hi_open ? -1 : 0}; }

bool intervals_intersect(const Interval& a, const Interval& b) {
    return left_key(a) <= right_key(b) && left_key(b) <= right_key(a);
}

bool interval_contains(const Interval& outer, const Interval& inner) {
    return left_key(outer) <= left_key(inner) && right_key(inner) <= right_key(outer);
}

namespace {

Interval from_keys(const EndpointKey& l, const EndpointKey& r) {
    return {l.w, r.w, l.eps > 0, r.eps < 0};
}

std::optional<Interval> intersection(const Interval& a, const Interval& b) {
    EndpointKey l = std::max(left_key(a), left_key(b));
    EndpointKey r = std::min(right_key(a), right_key(b));
    if (l <= r) return from_keys(l, r);
    return std::nullopt;
}

}  // namespace

// ------------------------------------------------------------------ Family

Family::Family(const Family& o) : store_(o.store_), root_(o.root_) {
    if (store_) store_->incref(root_);
}

Family& Family::operator=(const Family& o) {
    if (this == &o) return *this;
    if (o.store_) o.store_->incref(o.root_);
    if (store_) store_->release(root_);
    store_ = o.store_;
    root_ = o.root_;
    return *this;
}

Family& Family::operator=(Family&& o) noexcept {
    if (this == &o) return *this;
    if (store_) store_->release(root_);
    store_ = o.store_;
    root_ = o.root_;
    o.root_ = 0;
    return *this;
}

Family::~Family() {
    if (store_) store_->release(root_);
}

int Family::size() const { return root_ ? static_cast<int>(store_->node(root_).size) : 0; }

std::vector<Interval> Family::report() const {
    std::vector<Interval> out;
    if (!root_) return out;
    out.reserve(store_->node(root_).size);
    store_->report_walk({root_, Weight(), Weight(), false}, out);
    return out;
}

// ------------------------------------------------------------- FamilyStore

FamilyStore::FamilyStore() : nodes_(1) { nodes_[0].rc = 1; }  // index 0 is nil

std::uint32_t FamilyStore::alloc() {
    std::uint32_t i;
    if (!free_.empty()) {
        i = free_.back();
        free_.pop_back();
    } else {
        i = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();
    }
    ++live_;
    return i;
}

void FamilyStore::incref(std::uint32_t i) {
    if (i) ++nodes_[i].rc;
}

void FamilyStore::release(std::uint32_t i) {
    if (!i) return;
    std::vector<std::uint32_t> stack{i};
    while (!stack.empty()) {
        std::uint32_t j = stack.back();
        stack.pop_back();
        Node& n = nodes_[j];
        if (--n.rc) continue;
        if (n.left) stack.push_back(n.left);
        if (n.right) stack.push_back(n.right);
        n.left = n.right = 0;
        n.rel_a = Weight();  // drop heap payloads before recycling
        n.rel_len = Weight();
        free_.push_back(j);
        --live_;
    }
}

Interval FamilyStore::materialize(const Node& n, const Sub& ctx) const {
    Weight a = n.rel_a + ctx.add_a;
    Weight len = n.rel_len + ctx.add_len;
    bool lo = ctx.force_open || n.lo_open;
    bool hi = ctx.force_open || n.hi_open;
    return {a, a + len, lo, hi};
}

FamilyStore::Sub FamilyStore::child_sub(const Sub& t, bool left_side) const {
    const Node& n = node(t.idx);
    return {left_side ? n.left : n.right, t.add_a + n.rel_a, t.add_len + n.rel_len,
            t.force_open || n.open_below != 0};
}

FamilyStore::Sub FamilyStore::take_child(const Sub& t, bool left_side) {
    Sub c = child_sub(t, left_side);
    incref(c.idx);
    return c;
}

std::uint32_t FamilyStore::attach(Sub s, const Weight& parent_a, const Weight& parent_len) {
    if (!s.idx) return 0;
    if (!s.force_open && s.add_a == parent_a && s.add_len == parent_len) {
        return s.idx;  // context matches; hand over the reference as is
    }
    Node src = node(s.idx);  // copy, alloc below may move the arena
    std::uint32_t c = alloc();
    Node& m = nodes_[c];
    m.left = src.left;
    m.right = src.right;
    incref(m.left);
    incref(m.right);
    m.size = src.size;
    m.rc = 1;
    m.rel_a = src.rel_a + s.add_a - parent_a;
    m.rel_len = src.rel_len + s.add_len - parent_len;
    if (s.force_open) {
        m.lo_open = m.hi_open = 1;
        m.open_below = 1;
    } else {
        m.lo_open = src.lo_open;
        m.hi_open = src.hi_open;
        m.open_below = src.open_below;
    }
    release(s.idx);
    return c;
}

FamilyStore::Sub FamilyStore::bin(const Interval& iv, Sub l, Sub r) {
    std::uint32_t sz = 1 + static_cast<std::uint32_t>(sub_size(l)) +
                       static_cast<std::uint32_t>(sub_size(r));
    Weight len = iv.hi - iv.lo;
    std::uint32_t lc = attach(std::move(l), iv.lo, len);
    std::uint32_t rc = attach(std::move(r), iv.lo, len);
    std::uint32_t p = alloc();
    Node& m = nodes_[p];
    m.left = lc;
    m.right = rc;
    m.size = sz;
    m.rc = 1;
    m.rel_a = iv.lo;
    m.rel_len = len;
    m.lo_open = iv.lo_open;
    m.hi_open = iv.hi_open;
    m.open_below = 0;
    return {p, Weight(), Weight(), false};
}

FamilyStore::Decomp FamilyStore::decompose(Sub t) {
    assert(t.idx);
    Node src = node(t.idx);
    Decomp d;
    d.iv = materialize(src, t);
    d.open_below = t.force_open || src.open_below != 0;
    Weight ca = t.add_a + src.rel_a;
    Weight cl = t.add_len + src.rel_len;
    d.l = {src.left, ca, cl, d.open_below};
    d.r = {src.right, std::move(ca), std::move(cl), d.open_below};
    incref(src.left);
    incref(src.right);
    release(t.idx);
    return d;
}

FamilyStore::Sub FamilyStore::balance_l(const Interval& iv, Sub l, Sub r) {
    int ls = sub_size(l), rs = sub_size(r);
    if (ls > kDelta * rs && ls >= 2) {
        Decomp dl = decompose(std::move(l));
        if (sub_size(dl.r) < kRatio * sub_size(dl.l)) {
            Sub inner = bin(iv, std::move(dl.r), std::move(r));
            return bin(dl.iv, std::move(dl.l), std::move(inner));
        }
        Decomp dlr = decompose(std::move(dl.r));
        Sub a = bin(dl.iv, std::move(dl.l), std::move(dlr.l));
        Sub b = bin(iv, std::move(dlr.r), std::move(r));
        return bin(dlr.iv, std::move(a), std::move(b));
    }
    return bin(iv, std::move(l), std::move(r));
}

FamilyStore::Sub FamilyStore::balance_r(const Interval& iv, Sub l, Sub r) {
    int ls = sub_size(l), rs = sub_size(r);
    if (rs > kDelta * ls && rs >= 2) {
        Decomp dr = decompose(std::move(r));
        if (sub_size(dr.l) < kRatio * sub_size(dr.r)) {
            Sub inner = bin(iv, std::move(l), std::move(dr.l));
            return bin(dr.iv, std::move(inner), std::move(dr.r));
        }
        Decomp drl = decompose(std::move(dr.l));
        Sub a = bin(iv, std::move(l), std::move(drl.l));
        Sub b = bin(dr.iv, std::move(drl.r), std::move(dr.r));
        return bin(drl.iv, std::move(a), std::move(b));
    }
    return bin(iv, std::move(l), std::move(r));
}

FamilyStore::Sub FamilyStore::insert_min(const Interval& iv, Sub t) {
    if (!t.idx) return bin(iv, {}, {});
    Decomp d = decompose(std::move(t));
    return balance_l(d.iv, insert_min(iv, std::move(d.l)), std::move(d.r));
}

FamilyStore::Sub FamilyStore::insert_max(const Interval& iv, Sub t) {
    if (!t.idx) return bin(iv, {}, {});
    Decomp d = decompose(std::move(t));
    return balance_r(d.iv, std::move(d.l), insert_max(iv, std::move(d.r)));
}

FamilyStore::Sub FamilyStore::link(const Interval& iv, Sub l, Sub r) {
    if (!l.idx) return insert_min(iv, std::move(r));
    if (!r.idx) return insert_max(iv, std::move(l));
    int ls = sub_size(l), rs = sub_size(r);
    if (kDelta * ls < rs) {
        Decomp d = decompose(std::move(r));
        return balance_l(d.iv, link(iv, std::move(l), std::move(d.l)), std::move(d.r));
    }
    if (kDelta * rs < ls) {
        Decomp d = decompose(std::move(l));
        return balance_r(d.iv, std::move(d.l), link(iv, std::move(d.r), std::move(r)));
    }
    return bin(iv, std::move(l), std::move(r));
}

FamilyStore::Sub FamilyStore::join2(Sub l, Sub r) {
    if (!l.idx) return r;
    if (!r.idx) return l;
    int ls = sub_size(l), rs = sub_size(r);
    if (kDelta * ls < rs) {
        Decomp d = decompose(std::move(r));
        return balance_l(d.iv, join2(std::move(l), std::move(d.l)), std::move(d.r));
    }
    if (kDelta * rs < ls) {
        Decomp d = decompose(std::move(l));
        return balance_r(d.iv, std::move(d.l), join2(std::move(d.r), std::move(r)));
    }
    // glue: move the boundary element of the heavier side up as the new root
    if (ls > rs) {
        // pull max of l
        std::function<Sub(Sub, Interval&)> max_view = [&](Sub t, Interval& out) -> Sub {
            Decomp d = decompose(std::move(t));
            if (!d.r.idx) {
                out = d.iv;
                return std::move(d.l);
            }
            Sub nr = max_view(std::move(d.r), out);
            return balance_l(d.iv, std::move(d.l), std::move(nr));
        };
        Interval m;
        Sub l2 = max_view(std::move(l), m);
        return balance_r(m, std::move(l2), std::move(r));
    }
    std::function<Sub(Sub, Interval&)> min_view = [&](Sub t, Interval& out) -> Sub {
        Decomp d = decompose(std::move(t));
        if (!d.l.idx) {
            out = d.iv;
            return std::move(d.r);
        }
        Sub nl = min_view(std::move(d.l), out);
        return balance_r(d.iv, std::move(nl), std::move(d.r));
    };
    Interval m;
    Sub r2 = min_view(std::move(r), m);
    return balance_l(m, std::move(l), std::move(r2));
}

template <class Pred>
std::pair<FamilyStore::Sub, FamilyStore::Sub> FamilyStore::split_by(Sub t, const Pred& pred) {
    if (!t.idx) return {{}, {}};
    Decomp d = decompose(std::move(t));
    if (pred(d.iv)) {
        auto [lo, hi] = split_by(std::move(d.l), pred);
        return {std::move(lo), link(d.iv, std::move(hi), std::move(d.r))};
    }
    auto [lo, hi] = split_by(std::move(d.r), pred);
    return {link(d.iv, std::move(d.l), std::move(lo)), std::move(hi)};
}

std::optional<Interval> FamilyStore::leftmost(Sub t) const {
    if (!t.idx) return std::nullopt;
    Sub cur = t;
    while (node(cur.idx).left) cur = child_sub(cur, true);
    return materialize(node(cur.idx), cur);
}

std::optional<Interval> FamilyStore::rightmost(Sub t) const {
    if (!t.idx) return std::nullopt;
    Sub cur = t;
    while (node(cur.idx).right) cur = child_sub(cur, false);
    return materialize(node(cur.idx), cur);
}

void FamilyStore::report_walk(const Sub& t, std::vector<Interval>& out) const {
    if (!t.idx) return;
    report_walk(child_sub(t, true), out);
    out.push_back(materialize(node(t.idx), t));
    report_walk(child_sub(t, false), out);
}

Family FamilyStore::family_of(const std::vector<Interval>& sorted_members) {
    Sub s{};
    std::optional<Interval> prev;
    for (const Interval& iv : sorted_members) {
        if (!iv.valid()) {
            release(s.idx);
            throw std::invalid_argument("family_of: empty interval");
        }
        if (prev && !(left_key(*prev) < left_key(iv) && right_key(*prev) < right_key(iv))) {
            release(s.idx);
            throw NestedIntervalError("family_of: members unordered or nested");
        }
        s = insert_max(iv, std::move(s));
        prev = iv;
    }
    return Family(this, s.idx);
}

bool FamilyStore::validate(const Family& f) const {
    if (!f.root_) return true;
    bool ok = true;
    std::function<int(Sub)> walk = [&](Sub t) -> int {
        if (!t.idx) return 0;
        const Node& n = node(t.idx);
        Interval iv = materialize(n, t);
        if (!iv.valid()) ok = false;
        int ls = walk(child_sub(t, true));
        int rs = walk(child_sub(t, false));
        if (static_cast<int>(n.size) != ls + rs + 1) ok = false;
        if (ls + rs > 1 && (ls > kDelta * rs || rs > kDelta * ls)) ok = false;
        return ls + rs + 1;
    };
    walk({f.root_, Weight(), Weight(), false});
    std::vector<Interval> ivs = f.report();
    for (std::size_t i = 1; i < ivs.size(); ++i) {
        if (!(left_key(ivs[i - 1]) < left_key(ivs[i]) &&
              right_key(ivs[i - 1]) < right_key(ivs[i])))
            ok = false;
    }
    return ok;
}

// ------------------------------------------------------------- operations

Family insert(Family f, const Interval& iv) {
    if (!iv.valid()) throw std::invalid_argument("insert: empty interval");
    FamilyStore* st = f.store_;
    if (!st) throw std::logic_error("insert: family has no store");
    EndpointKey lk = left_key(iv), rk = right_key(iv);

    // Neighbor scan first, read only: with strictly increasing right keys it
    // suffices to compare against the members directly before and after.
    std::optional<Interval> pred, succ;
    FamilyStore::Sub cur{f.root_, Weight(), Weight(), false};
    while (cur.idx) {
        Interval miv = st->materialize(st->node(cur.idx), cur);
        if (left_key(miv) < lk) {
            pred = miv;
            cur = st->child_sub(cur, false);
        } else {
            succ = miv;
            cur = st->child_sub(cur, true);
        }
    }
    if (pred && !(right_key(*pred) < rk))
        throw NestedIntervalError("insert: nested with predecessor");
    if (succ && (left_key(*succ) == lk || !(rk < right_key(*succ))))
        throw NestedIntervalError("insert: nested with successor");

    std::uint32_t root = f.root_;
    f.root_ = 0;
    auto [lo, hi] = st->split_by(FamilyStore::Sub{root, Weight(), Weight(), false},
                                 [&](const Interval& m) { return !(left_key(m) < lk); });
    return Family(st, st->link(iv, std::move(lo), std::move(hi)).idx);
}

Family erase(Family f, const Interval& iv) {
    FamilyStore* st = f.store_;
    if (!st) throw IntervalNotFoundError("erase: not a member");
    EndpointKey lk = left_key(iv);

    std::optional<Interval> found;
    FamilyStore::Sub cur{f.root_, Weight(), Weight(), false};
    while (cur.idx) {
        Interval miv = st->materialize(st->node(cur.idx), cur);
        int c = compare(left_key(miv), lk);
        if (c == 0) {
            found = miv;
            break;
        }
        cur = st->child_sub(cur, c > 0);
    }
    if (!found || *found != iv) throw IntervalNotFoundError("erase: not a member");

    std::uint32_t root = f.root_;
    f.root_ = 0;
    auto [lo, rest] = st->split_by(FamilyStore::Sub{root, Weight(), Weight(), false},
                                   [&](const Interval& m) { return !(left_key(m) < lk); });
    auto [mid, hi] = st->split_by(std::move(rest),
                                  [&](const Interval& m) { return lk < left_key(m); });
    st->drop(std::move(mid));
    return Family(st, st->join2(std::move(lo), std::move(hi)).idx);
}

bool hit_by(const Family& f, const Interval& probe) { return first_hit(f, probe).has_value(); }

std::optional<Interval> first_hit(const Family& f, const Interval& probe) {
    if (!probe.valid()) return std::nullopt;
    if (!f.root_) return std::nullopt;
    FamilyStore* st = f.store_;
    EndpointKey plk = left_key(probe);
    // leftmost member whose right endpoint reaches the probe's left edge
    std::optional<Interval> cand;
    FamilyStore::Sub cur{f.root_, Weight(), Weight(), false};
    while (cur.idx) {
        Interval miv = st->materialize(st->node(cur.idx), cur);
        if (plk <= right_key(miv)) {
            cand = miv;
            cur = st->child_sub(cur, true);
        } else {
            cur = st->child_sub(cur, false);
        }
    }
    if (cand && left_key(*cand) <= right_key(probe)) return cand;
    return std::nullopt;
}

std::pair<Family, Family> containing(Family f, const Weight& y) {
    FamilyStore* st = f.store_;
    if (!st) return {Family(), Family()};
    EndpointKey yk{y, 0};
    std::uint32_t root = f.root_;
    f.root_ = 0;
    auto [before, rest] = st->split_by(FamilyStore::Sub{root, Weight(), Weight(), false},
                                       [&](const Interval& m) { return yk <= right_key(m); });
    auto [hits, after] =
        st->split_by(std::move(rest), [&](const Interval& m) { return yk < left_key(m); });
    return {Family(st, hits.idx), Family(st, st->join2(std::move(before), std::move(after)).idx)};
}

std::pair<Family, Family> clip(Family f, const Interval& window) {
    FamilyStore* st = f.store_;
    if (!st) return {Family(), Family()};
    if (!window.valid() || !f.root_) {
        return {st->empty_family(), std::move(f)};
    }
    EndpointKey wl = left_key(window), wr = right_key(window);
    EndpointKey xk{window.lo, 0}, yk{window.hi, 0};

    std::uint32_t root = f.root_;
    f.root_ = 0;
    // order along the family: before | pierce-left | inside | pierce-right | beyond
    auto [before, rest1] = st->split_by(FamilyStore::Sub{root, Weight(), Weight(), false},
                                        [&](const Interval& m) { return wl <= right_key(m); });
    auto [px, rest2] =
        st->split_by(std::move(rest1), [&](const Interval& m) { return xk < left_key(m); });
    auto [inside, rest3] =
        st->split_by(std::move(rest2), [&](const Interval& m) { return yk <= right_key(m); });
    auto [py, beyond] =
        st->split_by(std::move(rest3), [&](const Interval& m) { return wr < left_key(m); });

    std::optional<Interval> px_first = st->leftmost(px), px_last = st->rightmost(px);
    std::optional<Interval> py_first = st->leftmost(py), py_last = st->rightmost(py);
    std::optional<Interval> before_last = st->rightmost(before);
    std::optional<Interval> inside_first = st->leftmost(inside);
    std::optional<Interval> inside_last = st->rightmost(inside);
    std::optional<Interval> beyond_first = st->leftmost(beyond);

    // Pieces falling inside the window. Pierce-left pieces share their left
    // endpoint, so only the widest (from the last member) can be maximal;
    // symmetrically for pierce-right.
    std::optional<Interval> in_l, in_r;
    if (px_last) in_l = intersection(*px_last, window);
    if (py_first) in_r = intersection(*py_first, window);
    // Pieces on the complement side, always closed at the window edge.
    std::optional<Interval> out_l, out_r;
    if (px_first) out_l = Interval{px_first->lo, window.lo, px_first->lo_open, false};
    std::optional<Interval> spanner;
    if (py_last) {
        spanner = py_last;
    } else if (px_last && yk <= right_key(*px_last)) {
        spanner = px_last;
    }
    if (spanner) out_r = Interval{window.hi, spanner->hi, false, spanner->hi_open};

    // Drop any synthesized piece that another surviving interval swallows.
    auto covered = [](const std::optional<Interval>& piece, const std::optional<Interval>& by) {
        return piece && by && interval_contains(*by, *piece);
    };
    if (covered(in_l, inside_first) || covered(in_l, in_r)) in_l.reset();
    if (covered(in_r, inside_last) || covered(in_r, in_l)) in_r.reset();
    if (covered(out_l, before_last) || covered(out_l, out_r) || covered(out_l, beyond_first))
        out_l.reset();
    if (covered(out_r, beyond_first) || covered(out_r, out_l)) out_r.reset();

    st->drop(std::move(px));
    st->drop(std::move(py));

    FamilyStore::Sub fin = std::move(inside);
    if (in_l) fin = st->insert_min(*in_l, std::move(fin));
    if (in_r) fin = st->insert_max(*in_r, std::move(fin));

    FamilyStore::Sub fout = std::move(before);
    if (out_l) fout = st->insert_max(*out_l, std::move(fout));
    if (out_r) {
        fout = st->link(*out_r, std::move(fout), std::move(beyond));
    } else {
        fout = st->join2(std::move(fout), std::move(beyond));
    }
    return {Family(st, fin.idx), Family(st, fout.idx)};
}

Family join_families(Family left, Family right) {
    if (left.empty()) return right;
    if (right.empty()) return left;
    FamilyStore* st = left.store_;
    if (st != right.store_) throw std::logic_error("join: families from different stores");
    std::optional<Interval> a = last_interval(left);
    std::optional<Interval> b = first_interval(right);
    if (!(left_key(*a) < left_key(*b) && right_key(*a) < right_key(*b)))
        throw JoinOrderError("join: right family does not follow left family");
    std::uint32_t lr = left.root_, rr = right.root_;
    left.root_ = right.root_ = 0;
    return Family(st, st->join2(FamilyStore::Sub{lr, Weight(), Weight(), false},
                                FamilyStore::Sub{rr, Weight(), Weight(), false})
                          .idx);
}

Family shift(Family f, const Weight& alpha) {
    if (!f.root_ || alpha.is_zero()) return f;
    FamilyStore* st = f.store_;
    std::uint32_t root = f.root_;
    f.root_ = 0;
    FamilyStore::Node src = st->node(root);
    std::uint32_t c = st->alloc();
    FamilyStore::Node& m = st->node(c);
    m = src;
    m.rc = 1;
    m.rel_a = src.rel_a + alpha;
    st->incref(m.left);
    st->incref(m.right);
    st->release(root);
    return Family(st, c);
}

Family extend(Family f, const Weight& lambda, bool open_result) {
    if (!lambda.is_positive()) throw std::invalid_argument("extend: amount must be positive");
    if (!f.root_) return f;
    FamilyStore* st = f.store_;
    std::uint32_t root = f.root_;
    f.root_ = 0;
    FamilyStore::Node src = st->node(root);
    std::uint32_t c = st->alloc();
    FamilyStore::Node& m = st->node(c);
    m = src;
    m.rc = 1;
    m.rel_a = src.rel_a - lambda;
    m.rel_len = src.rel_len + lambda + lambda;
    if (open_result) {
        m.lo_open = m.hi_open = 1;
        m.open_below = 1;
    }
    st->incref(m.left);
    st->incref(m.right);
    st->release(root);
    return Family(st, c);
}

std::optional<Interval> first_interval(const Family& f) {
    if (!f.root_) return std::nullopt;
    return f.store_->leftmost({f.root_, Weight(), Weight(), false});
}

std::optional<Interval> last_interval(const Family& f) {
    if (!f.root_) return std::nullopt;
    return f.store_->rightmost({f.root_, Weight(), Weight(), false});
}

}  // namespace ivd
