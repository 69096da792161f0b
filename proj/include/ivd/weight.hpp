#ifndef IVD_WEIGHT_HPP
#define IVD_WEIGHT_HPP

#include "ivd/rational.hpp"

namespace ivd {

/**
 * Edge weight / distance value of the form a + b·eps + c·delta', where eps
 * and delta' are symbolic infinitesimals with delta' << eps << any positive
 * rational. Comparison is therefore lexicographic on (a, b, c); addition is
 * componentwise. A weight is positive iff it exceeds (0,0,0) in this order.
 */
struct Weight {
    Rational a;  // real part
    Rational b;  // eps coefficient
    Rational c;  // delta' coefficient

    Weight() = default;
    Weight(Rational real) : a(std::move(real)) {}
    Weight(Rational real, Rational eps, Rational delta)
        : a(std::move(real)), b(std::move(eps)), c(std::move(delta)) {}
    static Weight real(long long v) { return Weight(Rational(v)); }

    friend Weight operator+(const Weight& x, const Weight& y) {
        return Weight(x.a + y.a, x.b + y.b, x.c + y.c);
    }
    friend Weight operator-(const Weight& x, const Weight& y) {
        return Weight(x.a - y.a, x.b - y.b, x.c - y.c);
    }
    Weight operator-() const { return Weight(-a, -b, -c); }
    Weight& operator+=(const Weight& y) {
        a += y.a;
        b += y.b;
        c += y.c;
        return *this;
    }
    Weight& operator-=(const Weight& y) {
        a -= y.a;
        b -= y.b;
        c -= y.c;
        return *this;
    }

    friend int compare(const Weight& x, const Weight& y) {
        if (int r = compare(x.a, y.a)) return r;
        if (int r = compare(x.b, y.b)) return r;
        return compare(x.c, y.c);
    }
    friend bool operator==(const Weight& x, const Weight& y) { return compare(x, y) == 0; }
    friend bool operator!=(const Weight& x, const Weight& y) { return compare(x, y) != 0; }
    friend bool operator<(const Weight& x, const Weight& y) { return compare(x, y) < 0; }
    friend bool operator<=(const Weight& x, const Weight& y) { return compare(x, y) <= 0; }
    friend bool operator>(const Weight& x, const Weight& y) { return compare(x, y) > 0; }
    friend bool operator>=(const Weight& x, const Weight& y) { return compare(x, y) >= 0; }

    bool is_positive() const { return compare(*this, Weight()) > 0; }
    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero(); }

    std::string to_string() const;
};

inline std::string Weight::to_string() const {
    std::string s = a.to_string();
    if (!b.is_zero()) s += (b.sign() > 0 ? "+" : "") + b.to_string() + "e";
    if (!c.is_zero()) s += (c.sign() > 0 ? "+" : "") + c.to_string() + "d";
    return s;
}

}  // namespace ivd

#endif
