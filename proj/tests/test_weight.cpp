#include "ivd/weight.hpp"

#include "doctest.h"

#include <random>

using ivd::Rational;
using ivd::Weight;

TEST_CASE("weight ordering is lexicographic") {
    Weight a{Rational(1), Rational(0), Rational(0)};
    Weight b{Rational(1), Rational(0), Rational(1)};
    Weight c{Rational(1), Rational(1), Rational(-100)};
    Weight d{Rational(2), Rational(-100), Rational(-100)};
    CHECK(a < b);
    CHECK(b < c);
    CHECK(c < d);
    CHECK(a < d);
    CHECK(a == a);
    CHECK(a != b);
    CHECK(d > a);
    CHECK(a <= a);
    CHECK(a >= a);
}

TEST_CASE("weight arithmetic is componentwise") {
    Weight a{Rational(1, 2), Rational(3), Rational(-1)};
    Weight b{Rational(1, 2), Rational(-3), Rational(5)};
    Weight s = a + b;
    CHECK(s.a == Rational(1));
    CHECK(s.b == Rational(0));
    CHECK(s.c == Rational(4));
    Weight d = a - b;
    CHECK(d.a == Rational(0));
    CHECK(d.b == Rational(6));
    CHECK(d.c == Rational(-6));
    CHECK(-a + a == Weight{});
    CHECK(Weight{}.is_zero());
    CHECK(!a.is_zero());
    CHECK(a.is_positive());
    CHECK(!(-a).is_positive());
    // The infinitesimal alone is positive.
    Weight eps{Rational(0), Rational(1), Rational(0)};
    CHECK(eps.is_positive());
    Weight negc{Rational(0), Rational(0), Rational(-1)};
    CHECK(!negc.is_positive());
}

TEST_CASE("weight order is translation invariant") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> d(-1000, 1000);
    auto rand_w = [&] {
        return Weight{Rational(d(rng), 1 + (d(rng) & 7)),
                      Rational(d(rng), 1 + (d(rng) & 3)),
                      Rational(d(rng))};
    };
    for (int i = 0; i < 5000; ++i) {
        Weight w1 = rand_w(), w2 = rand_w(), w = rand_w();
        if (w1 < w2) {
            CHECK(w1 + w < w2 + w);
        } else if (w1 == w2) {
            CHECK(w1 + w == w2 + w);
        } else {
            CHECK(w1 + w > w2 + w);
        }
    }
}

TEST_CASE("weight to_string") {
    CHECK(Weight::real(3).to_string() == "3");
    Weight w{Rational(1, 2), Rational(-2), Rational(3)};
    CHECK(w.to_string() == "1/2-2e+3d");
    CHECK(Weight{}.to_string() == "0");
    Weight e{Rational(0), Rational(1), Rational(0)};
    CHECK(e.to_string() == "0+1e");
}
