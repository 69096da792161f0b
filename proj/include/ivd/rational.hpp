#ifndef IVD_RATIONAL_HPP
#define IVD_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ivd {

struct RationalBig;  // heap representation, defined in rational.cpp

/**
 * Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
 *
 * Values whose numerator and denominator fit in int64 are stored inline;
 * anything larger is promoted to a shared heap representation backed by an
 * arbitrary-precision rational. All arithmetic is exact in either form, and
 * results are demoted back to the inline form whenever they fit, so chains
 * of operations on small values never touch the heap.
 */
class Rational {
public:
    Rational() noexcept : num_(0), den_(1) {}
    Rational(long long n) noexcept : num_(n), den_(1) {}
    Rational(long long num, long long den);

    Rational(const Rational& o);
    Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_) {
        o.num_ = 0;
        o.den_ = 1;
    }
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept;
    ~Rational() {
        if (den_ == 0) release_big();
    }

    // Accepts "p" or "p/q" with optional sign, arbitrary magnitude.
    static Rational from_string(std::string_view s);
    std::string to_string() const;
    double to_double() const;  // lossy, for reporting only

    int sign() const;
    bool is_zero() const { return den_ != 0 ? num_ == 0 : sign() == 0; }
    bool is_small() const { return den_ != 0; }

    // Numerator/denominator as strings (exact even when promoted).
    std::string numerator_str() const;
    std::string denominator_str() const;

    friend Rational operator+(const Rational& x, const Rational& y) {
        if (x.den_ == 1 && y.den_ == 1) {
            long long n;
            if (!__builtin_add_overflow(x.num_, y.num_, &n)) return Rational(n);
        }
        return add_general(x, y, false);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        if (x.den_ == 1 && y.den_ == 1) {
            long long n;
            if (!__builtin_sub_overflow(x.num_, y.num_, &n)) return Rational(n);
        }
        return add_general(x, y, true);
    }
    Rational operator-() const;
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);

    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }

    // Three-way comparison: negative/zero/positive like strcmp.
    friend int compare(const Rational& x, const Rational& y) {
        if (x.den_ == y.den_ && x.den_ != 0) {
            return x.num_ < y.num_ ? -1 : (x.num_ > y.num_ ? 1 : 0);
        }
        if (x.den_ != 0 && y.den_ != 0) {
            __int128 l = static_cast<__int128>(x.num_) * y.den_;
            __int128 r = static_cast<__int128>(y.num_) * x.den_;
            return l < r ? -1 : (l > r ? 1 : 0);
        }
        return compare_big(x, y);
    }
    friend bool operator==(const Rational& x, const Rational& y) { return compare(x, y) == 0; }
    friend bool operator!=(const Rational& x, const Rational& y) { return compare(x, y) != 0; }
    friend bool operator<(const Rational& x, const Rational& y) { return compare(x, y) < 0; }
    friend bool operator<=(const Rational& x, const Rational& y) { return compare(x, y) <= 0; }
    friend bool operator>(const Rational& x, const Rational& y) { return compare(x, y) > 0; }
    friend bool operator>=(const Rational& x, const Rational& y) { return compare(x, y) >= 0; }

private:
    // den_ > 0: inline num_/den_ in lowest terms.
    // den_ == 0: num_ holds a pointer to a refcounted big representation.
    long long num_;
    long long den_;

    RationalBig* big() const;
    void adopt_big(RationalBig* b) noexcept;  // takes ownership of one reference
    void release_big() noexcept;

    static Rational add_general(const Rational& x, const Rational& y, bool negate_y);
    static int compare_big(const Rational& x, const Rational& y);
    static Rational from_i128(__int128 num, __int128 den);

    friend Rational detail_make_promoted(RationalBig* b) noexcept;
    friend RationalBig* detail_big_of(const Rational& r) noexcept;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ivd

#endif
