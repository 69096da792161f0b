#ifndef IVD_INTERVAL_STORE_HPP
#define IVD_INTERVAL_STORE_HPP

#include "ivd/weight.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ivd {

/**
 * Interval with individually open or closed endpoints over Weight values.
 * Empty combinations (lo > hi, or lo == hi with an open end) are invalid
 * everywhere in this module.
 */
struct Interval {
    Weight lo, hi;
    bool lo_open = false, hi_open = false;

    static Interval closed(Weight a, Weight b) { return {std::move(a), std::move(b), false, false}; }
    static Interval open(Weight a, Weight b) { return {std::move(a), std::move(b), true, true}; }
    static Interval left_open(Weight a, Weight b) { return {std::move(a), std::move(b), true, false}; }
    static Interval right_open(Weight a, Weight b) { return {std::move(a), std::move(b), false, true}; }
    static Interval point(Weight x) { return {x, x, false, false}; }

    bool valid() const;
    bool contains_point(const Weight& y) const;
    std::string to_string() const;

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi && a.lo_open == b.lo_open && a.hi_open == b.hi_open;
    }
    friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }
};

// Endpoint comparison key. Openness shifts the key infinitesimally inward:
// an open left endpoint sorts just after the closed one at the same value,
// an open right endpoint just before. One lexicographic order then answers
// emptiness, intersection and containment questions uniformly.
struct EndpointKey {
    Weight w;
    int eps;  // left: closed 0, open +1; right: open -1, closed 0

    friend int compare(const EndpointKey& x, const EndpointKey& y) {
        if (int r = compare(x.w, y.w)) return r;
        return x.eps < y.eps ? -1 : (x.eps > y.eps ? 1 : 0);
    }
    friend bool operator<(const EndpointKey& x, const EndpointKey& y) { return compare(x, y) < 0; }
    friend bool operator<=(const EndpointKey& x, const EndpointKey& y) { return compare(x, y) <= 0; }
    friend bool operator==(const EndpointKey& x, const EndpointKey& y) { return compare(x, y) == 0; }
    friend bool operator>(const EndpointKey& x, const EndpointKey& y) { return compare(x, y) > 0; }
    friend bool operator>=(const EndpointKey& x, const EndpointKey& y) { return compare(x, y) >= 0; }
};

EndpointKey left_key(const Interval& iv);
EndpointKey right_key(const Interval& iv);
bool intervals_intersect(const Interval& a, const Interval& b);
bool interval_contains(const Interval& outer, const Interval& inner);

struct FamilyError : std::logic_error {
    using std::logic_error::logic_error;
};
struct NestedIntervalError : FamilyError {
    using FamilyError::FamilyError;
};
struct IntervalNotFoundError : FamilyError {
    using FamilyError::FamilyError;
};
struct JoinOrderError : FamilyError {
    using FamilyError::FamilyError;
};

class FamilyStore;

/**
 * Handle to one version of a monotonic interval family (no member contains
 * another). Handles are cheap to copy; every version stays readable until
 * the last handle referencing its nodes goes away. Operations that take the
 * handle by value consume that version handle; pass a copy to keep it.
 */
class Family {
public:
    Family() = default;
    explicit Family(FamilyStore& store) : store_(&store) {}
    Family(const Family& o);
    Family(Family&& o) noexcept : store_(o.store_), root_(o.root_) { o.root_ = 0; }
    Family& operator=(const Family& o);
    Family& operator=(Family&& o) noexcept;
    ~Family();

    FamilyStore* store() const { return store_; }
    int size() const;
    bool empty() const { return root_ == 0; }

    std::vector<Interval> report() const;

private:
    friend class FamilyStore;
    friend Family insert(Family f, const Interval& iv);
    friend Family erase(Family f, const Interval& iv);
    friend bool hit_by(const Family& f, const Interval& probe);
    friend std::optional<Interval> first_hit(const Family& f, const Interval& probe);
    friend std::pair<Family, Family> containing(Family f, const Weight& y);
    friend std::pair<Family, Family> clip(Family f, const Interval& window);
    friend Family join_families(Family left, Family right);
    friend Family shift(Family f, const Weight& alpha);
    friend Family extend(Family f, const Weight& lambda, bool open_result);
    friend std::optional<Interval> first_interval(const Family& f);
    friend std::optional<Interval> last_interval(const Family& f);
    Family(FamilyStore* s, std::uint32_t r) : store_(s), root_(r) {}

    FamilyStore* store_ = nullptr;
    std::uint32_t root_ = 0;
};

/**
 * Arena of persistent weight-balanced tree nodes shared by all families it
 * hands out. Nodes store their interval as (start, length) offsets relative
 * to the parent, which makes whole-family shift and extend O(1) root edits.
 * Structural operations copy O(log m) nodes; refcounts recycle the rest.
 */
class FamilyStore {
public:
    FamilyStore();
    FamilyStore(const FamilyStore&) = delete;
    FamilyStore& operator=(const FamilyStore&) = delete;

    Family empty_family() { return Family(*this); }
    Family family_of(const std::vector<Interval>& sorted_members);

    // Number of live arena nodes; test hook for leak checking.
    std::size_t live_nodes() const { return live_; }

    // Walks a family checking ordering, non-nesting, sizes and balance.
    bool validate(const Family& f) const;

private:
    friend class Family;
    friend Family insert(Family f, const Interval& iv);
    friend Family erase(Family f, const Interval& iv);
    friend bool hit_by(const Family& f, const Interval& probe);
    friend std::optional<Interval> first_hit(const Family& f, const Interval& probe);
    friend std::pair<Family, Family> containing(Family f, const Weight& y);
    friend std::pair<Family, Family> clip(Family f, const Interval& window);
    friend Family join_families(Family left, Family right);
    friend Family shift(Family f, const Weight& alpha);
    friend Family extend(Family f, const Weight& lambda, bool open_result);
    friend std::optional<Interval> first_interval(const Family& f);
    friend std::optional<Interval> last_interval(const Family& f);

    struct Node {
        std::uint32_t left, right;
        std::uint32_t size;
        std::uint32_t rc;
        Weight rel_a;    // interval start, relative to parent (absolute at root)
        Weight rel_len;  // interval length, relative to parent
        std::uint8_t lo_open, hi_open;
        std::uint8_t open_below;  // lazily marks the whole subtree open
    };

    // Detached subtree with the context accumulated from its old ancestors.
    struct Sub {
        std::uint32_t idx = 0;
        Weight add_a, add_len;
        bool force_open = false;
    };

    struct Decomp {
        Interval iv;
        bool open_below;
        Sub l, r;
    };

    Node& node(std::uint32_t i) { return nodes_[i]; }
    const Node& node(std::uint32_t i) const { return nodes_[i]; }
    static int size_of(const Node& n) { return static_cast<int>(n.size); }
    int sub_size(const Sub& s) const { return s.idx ? static_cast<int>(node(s.idx).size) : 0; }

    std::uint32_t alloc();
    void incref(std::uint32_t i);
    void release(std::uint32_t i);  // iterative, frees whole subtrees

    Interval materialize(const Node& n, const Sub& ctx) const;
    Sub child_sub(const Sub& t, bool left_side) const;  // borrow, no refs taken
    Sub take_child(const Sub& t, bool left_side);       // owned copy of child ref

    std::uint32_t attach(Sub s, const Weight& parent_a, const Weight& parent_len);
    Sub bin(const Interval& iv, Sub l, Sub r);
    Sub balance_l(const Interval& iv, Sub l, Sub r);
    Sub balance_r(const Interval& iv, Sub l, Sub r);
    Decomp decompose(Sub t);
    Sub link(const Interval& iv, Sub l, Sub r);
    Sub insert_min(const Interval& iv, Sub t);
    Sub insert_max(const Interval& iv, Sub t);
    Sub join2(Sub l, Sub r);
    void drop(Sub s) { release(s.idx); }

    // Splits by a monotone predicate over materialized intervals:
    // (elements where pred is false, elements where pred is true).
    template <class Pred>
    std::pair<Sub, Sub> split_by(Sub t, const Pred& pred);

    std::optional<Interval> leftmost(Sub t) const;   // borrow
    std::optional<Interval> rightmost(Sub t) const;  // borrow

    void report_walk(const Sub& t, std::vector<Interval>& out) const;

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
    std::size_t live_ = 0;
};

// Family operations. Destructive ones consume the passed handle (copy first
// to keep a version). All are O(log m) plus O(1) copied nodes, except
// report which is linear.
Family insert(Family f, const Interval& iv);
Family erase(Family f, const Interval& iv);
bool hit_by(const Family& f, const Interval& probe);
// Leftmost member intersecting the probe, if any.
std::optional<Interval> first_hit(const Family& f, const Interval& probe);
// Splits into (members containing y, everything else).
std::pair<Family, Family> containing(Family f, const Weight& y);
// Splits against window [x, y]: first part covers (union F) ∩ window with
// the window's endpoint openness; second part covers the complement side,
// closed at x and y. Both parts are again monotonic families.
std::pair<Family, Family> clip(Family f, const Interval& window);
// Concatenates families; every member of `left` must lie strictly before
// every member of `right` in both endpoint orders (overlap is fine,
// nesting or misordering is not).
Family join_families(Family left, Family right);
Family shift(Family f, const Weight& alpha);
// Widens every interval by lambda on both sides. When open_result is set
// the resulting intervals are all open; the caller must then ensure no two
// members share a left or a right endpoint value, since opening drops the
// closedness tiebreak that kept such pairs un-nested. Families of distinct
// points (the usual source of open extends) satisfy this automatically.
Family extend(Family f, const Weight& lambda, bool open_result);
std::optional<Interval> first_interval(const Family& f);
std::optional<Interval> last_interval(const Family& f);

}  // namespace ivd

#endif
