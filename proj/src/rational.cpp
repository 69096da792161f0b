#include "ivd/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <atomic>
#include <limits>
#include <sstream>

namespace ivd {

namespace mp = boost::multiprecision;
using BigRat = mp::cpp_rational;
using BigInt = mp::cpp_int;

struct RationalBig {
    std::atomic<unsigned> rc{1};
    BigRat v;
    explicit RationalBig(BigRat x) : v(std::move(x)) {}
};

// Friend gateways so file-local helpers can build promoted values.
Rational detail_make_promoted(RationalBig* b) noexcept {
    Rational r;
    r.adopt_big(b);
    return r;
}

RationalBig* detail_big_of(const Rational& r) noexcept {
    return r.big();
}

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u128 abs_i128(i128 x) {
    return x < 0 ? -static_cast<u128>(x) : static_cast<u128>(x);
}

BigInt bigint_from_i128(i128 x) {
    u128 m = abs_i128(x);
    BigInt r = BigInt(static_cast<std::uint64_t>(m >> 64));
    r <<= 64;
    r |= static_cast<std::uint64_t>(m);
    if (x < 0) r = -r;
    return r;
}

constexpr i128 kI64Min = std::numeric_limits<long long>::min();
constexpr i128 kI64Max = std::numeric_limits<long long>::max();

bool fits_i64(i128 x) { return x >= kI64Min && x <= kI64Max; }

bool bigint_to_i64(const BigInt& x, long long& out) {
    static const BigInt lo = std::numeric_limits<long long>::min();
    static const BigInt hi = std::numeric_limits<long long>::max();
    if (x < lo || x > hi) return false;
    out = x.convert_to<long long>();
    return true;
}

// Demotes to the inline form when possible, otherwise keeps the heap value.
Rational from_bigrat(BigRat v) {
    long long n, d;
    if (bigint_to_i64(numerator(v), n) && bigint_to_i64(denominator(v), d)) {
        return Rational(n, d);
    }
    return detail_make_promoted(new RationalBig(std::move(v)));
}

BigRat as_bigrat(const Rational& r, long long num, long long den) {
    if (den != 0) return BigRat(num, den);
    return detail_big_of(r)->v;
}

}  // namespace

RationalBig* Rational::big() const {
    return reinterpret_cast<RationalBig*>(static_cast<std::intptr_t>(num_));
}

void Rational::adopt_big(RationalBig* b) noexcept {
    num_ = static_cast<long long>(reinterpret_cast<std::intptr_t>(b));
    den_ = 0;
}

void Rational::release_big() noexcept {
    RationalBig* b = big();
    if (b->rc.fetch_sub(1, std::memory_order_acq_rel) == 1) delete b;
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (den_ == 0) big()->rc.fetch_add(1, std::memory_order_relaxed);
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    if (o.den_ == 0) o.big()->rc.fetch_add(1, std::memory_order_relaxed);
    if (den_ == 0) release_big();
    num_ = o.num_;
    den_ = o.den_;
    return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
    if (this == &o) return *this;
    if (den_ == 0) release_big();
    num_ = o.num_;
    den_ = o.den_;
    o.num_ = 0;
    o.den_ = 1;
    return *this;
}

Rational Rational::from_i128(i128 num, i128 den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return Rational();
    u128 g = gcd_u128(abs_i128(num), static_cast<u128>(den));
    if (g > 1) {
        num /= static_cast<i128>(g);
        den /= static_cast<i128>(g);
    }
    if (fits_i64(num) && fits_i64(den)) {
        Rational r;
        r.num_ = static_cast<long long>(num);
        r.den_ = static_cast<long long>(den);
        return r;
    }
    return detail_make_promoted(
        new RationalBig(BigRat(bigint_from_i128(num), bigint_from_i128(den))));
}

Rational::Rational(long long num, long long den) : num_(0), den_(1) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_i128(num, den);
}

Rational Rational::operator-() const {
    if (den_ != 0) {
        if (num_ != std::numeric_limits<long long>::min()) {
            Rational r;
            r.num_ = -num_;
            r.den_ = den_;
            return r;
        }
        return from_i128(-static_cast<i128>(num_), den_);
    }
    return from_bigrat(BigRat(-big()->v));
}

Rational Rational::add_general(const Rational& x, const Rational& y, bool negate_y) {
    if (x.den_ != 0 && y.den_ != 0) {
        i128 yn = negate_y ? -static_cast<i128>(y.num_) : static_cast<i128>(y.num_);
        i128 num = static_cast<i128>(x.num_) * y.den_ + yn * x.den_;
        i128 den = static_cast<i128>(x.den_) * y.den_;
        return from_i128(num, den);
    }
    BigRat a = as_bigrat(x, x.num_, x.den_);
    BigRat b = as_bigrat(y, y.num_, y.den_);
    return from_bigrat(negate_y ? BigRat(a - b) : BigRat(a + b));
}

Rational operator*(const Rational& x, const Rational& y) {
    if (x.den_ != 0 && y.den_ != 0) {
        i128 num = static_cast<i128>(x.num_) * y.num_;
        i128 den = static_cast<i128>(x.den_) * y.den_;
        return Rational::from_i128(num, den);
    }
    BigRat a = as_bigrat(x, x.num_, x.den_);
    BigRat b = as_bigrat(y, y.num_, y.den_);
    return from_bigrat(BigRat(a * b));
}

Rational operator/(const Rational& x, const Rational& y) {
    if (y.is_zero()) throw std::domain_error("Rational: division by zero");
    if (x.den_ != 0 && y.den_ != 0) {
        i128 num = static_cast<i128>(x.num_) * y.den_;
        i128 den = static_cast<i128>(x.den_) * y.num_;
        return Rational::from_i128(num, den);
    }
    BigRat a = as_bigrat(x, x.num_, x.den_);
    BigRat b = as_bigrat(y, y.num_, y.den_);
    return from_bigrat(BigRat(a / b));
}

int Rational::compare_big(const Rational& x, const Rational& y) {
    BigRat a = as_bigrat(x, x.num_, x.den_);
    BigRat b = as_bigrat(y, y.num_, y.den_);
    return a < b ? -1 : (a > b ? 1 : 0);
}

int Rational::sign() const {
    if (den_ != 0) return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0);
    const BigRat& v = big()->v;
    return v < 0 ? -1 : (v > 0 ? 1 : 0);
}

Rational Rational::from_string(std::string_view s) {
    auto parse_int = [](std::string_view t) -> BigInt {
        if (t.empty()) throw ParseError("empty integer in rational literal");
        std::size_t i = 0;
        bool neg = false;
        if (t[0] == '+' || t[0] == '-') {
            neg = t[0] == '-';
            i = 1;
        }
        if (i == t.size()) throw ParseError("sign without digits in rational literal");
        BigInt v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9')
                throw ParseError("invalid digit in rational literal: " + std::string(t));
            v = v * 10 + (t[i] - '0');
        }
        if (neg) v = -v;
        return v;
    };
    std::size_t slash = s.find('/');
    BigInt num, den;
    if (slash == std::string_view::npos) {
        num = parse_int(s);
        den = 1;
    } else {
        num = parse_int(s.substr(0, slash));
        den = parse_int(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in rational literal");
    }
    return from_bigrat(BigRat(num, den));
}

std::string Rational::to_string() const {
    if (den_ != 0) {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }
    std::ostringstream os;
    os << big()->v;
    return os.str();
}

std::string Rational::numerator_str() const {
    if (den_ != 0) return std::to_string(num_);
    std::ostringstream os;
    os << numerator(big()->v);
    return os.str();
}

std::string Rational::denominator_str() const {
    if (den_ != 0) return std::to_string(den_);
    std::ostringstream os;
    os << denominator(big()->v);
    return os.str();
}

double Rational::to_double() const {
    if (den_ != 0) return static_cast<double>(num_) / static_cast<double>(den_);
    return big()->v.convert_to<double>();
}

}  // namespace ivd
