#include <doctest.h>

#include <random>

#include "zeroset/interval.hpp"

using zeroset::Interval;

namespace {

// Lattice values k/1024 with |k| <= 2^15: sums and products of any two are
// exact in double, so the reference value below is the exact real result.
double lattice(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-(1 << 15), 1 << 15);
    return static_cast<double>(d(rng)) / 1024.0;
}

Interval lattice_interval(std::mt19937_64& rng) {
    double a = lattice(rng);
    double b = lattice(rng);
    if (a > b) std::swap(a, b);
    return Interval(a, b);
}

double sample_in(std::mt19937_64& rng, const Interval& iv) {
    long long klo = static_cast<long long>(iv.lo() * 1024.0);
    long long khi = static_cast<long long>(iv.hi() * 1024.0);
    std::uniform_int_distribution<long long> d(klo, khi);
    return static_cast<double>(d(rng)) / 1024.0;
}

} // namespace

TEST_CASE("interval add/sub/mul examples") {
    Interval a(1, 2), b(3, 4);
    CHECK(a + b == Interval(4, 6));
    CHECK(Interval(0, 0) * Interval(-5, 7) == Interval(0, 0));
    CHECK(Interval(-1, 2) * Interval(3, 4) == Interval(-4, 8));
    CHECK(a - b == Interval(-3, -1));
}

TEST_CASE("interval pow examples") {
    CHECK(pow(Interval(-2, 1), 2) == Interval(0, 4));
    CHECK(pow(Interval(-7, 9), 0) == Interval(1, 1));
    CHECK(pow(Interval::whole(), 0) == Interval(1, 1));
    CHECK(pow(Interval(2, 3), 3) == Interval(8, 27));
    CHECK(pow(Interval(-3, -2), 2) == Interval(4, 9));
    CHECK(pow(Interval(-2, 1), 3) == Interval(-8, 1));
}

TEST_CASE("interval geometry examples") {
    CHECK(midpoint(Interval(0, 1)) == 0.5);
    CHECK(width(Interval(0, 1)) == 1.0);
    CHECK(midpoint(Interval(2, 2)) == 2.0);
    CHECK(width(Interval(2, 2)) == 0.0);
    CHECK(midpoint(Interval(-1, 3)) == 1.0);
    CHECK(width(Interval(-1, 3)) == 4.0);
}

TEST_CASE("whole-line sentinel absorbs and replaces overflow") {
    Interval w = Interval::whole();
    CHECK(w.is_whole());
    CHECK((w + Interval(1, 2)).is_whole());
    CHECK((Interval(1, 2) * w).is_whole());
    CHECK((-w).is_whole());

    double big = 1.5e308;
    Interval huge(big, big);
    CHECK((huge + huge).is_whole());
    CHECK((huge * huge).is_whole());
    CHECK(pow(huge, 3).is_whole());
}

TEST_CASE("ctor validation") {
    CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval(std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("randomized soundness of add/sub/mul") {
    std::mt19937_64 rng(20240811);
    for (int iter = 0; iter < 10000; ++iter) {
        Interval a = lattice_interval(rng);
        Interval b = lattice_interval(rng);
        int op = iter % 3;
        Interval r = op == 0 ? a + b : (op == 1 ? a - b : a * b);
        for (int s = 0; s < 100; ++s) {
            double x = sample_in(rng, a);
            double y = sample_in(rng, b);
            double exact = op == 0 ? x + y : (op == 1 ? x - y : x * y);
            CAPTURE(op);
            CAPTURE(exact);
            REQUIRE(r.contains(exact));
        }
    }
}

TEST_CASE("inclusion monotonicity on nested pairs") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 2000; ++iter) {
        Interval a2 = lattice_interval(rng);
        Interval b2 = lattice_interval(rng);
        // Shrink to inner intervals on the same lattice.
        double alo = sample_in(rng, a2), ahi = sample_in(rng, a2);
        if (alo > ahi) std::swap(alo, ahi);
        double blo = sample_in(rng, b2), bhi = sample_in(rng, b2);
        if (blo > bhi) std::swap(blo, bhi);
        Interval a(alo, ahi), b(blo, bhi);
        int op = iter % 3;
        Interval inner = op == 0 ? a + b : (op == 1 ? a - b : a * b);
        Interval outer = op == 0 ? a2 + b2 : (op == 1 ? a2 - b2 : a2 * b2);
        REQUIRE(outer.contains(inner));
    }
}

TEST_CASE("pow is contained in repeated multiplication") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 2000; ++iter) {
        Interval a = lattice_interval(rng);
        std::uniform_int_distribution<unsigned> ed(0, 10);
        unsigned e = ed(rng);
        Interval p = pow(a, e);
        Interval rep(1.0);
        for (unsigned i = 0; i < e; ++i) rep *= a;
        if (rep.is_whole()) continue;
        REQUIRE(rep.contains(p));
    }
}

TEST_CASE("pow soundness against sampled points") {
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 2000; ++iter) {
        Interval a = lattice_interval(rng);
        std::uniform_int_distribution<unsigned> ed(0, 6);
        unsigned e = ed(rng);
        Interval p = pow(a, e);
        for (int s = 0; s < 5; ++s) {
            double x = sample_in(rng, a);
            // __float128 holds x^6 of lattice values exactly.
            __float128 v = static_cast<__float128>(1.0);
            for (unsigned i = 0; i < e; ++i) v *= static_cast<__float128>(x);
            REQUIRE(static_cast<__float128>(p.lo()) <= v);
            REQUIRE(v <= static_cast<__float128>(p.hi()));
        }
    }
}

TEST_CASE("exact dyadic arithmetic stays tight") {
    // The outward rounding only widens genuinely inexact endpoints.
    CHECK(Interval(0.25, 0.5) + Interval(0.125, 1.0) == Interval(0.375, 1.5));
    CHECK(Interval(0.5, 2.0) * Interval(0.25, 4.0) == Interval(0.125, 8.0));
    CHECK(midpoint(Interval(0.0, 0.5)) == 0.25);
}
