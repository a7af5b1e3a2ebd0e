#include <doctest.h>

#include <cmath>
#include <random>

#include "zeroset/dft.hpp"

using zeroset::Complex;
using zeroset::OpCounter;

namespace {

std::vector<Complex> random_signal(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<Complex> u(n);
    for (auto& c : u) c = Complex(d(rng), d(rng));
    return u;
}

double max_rel_dev(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double norm = 0.0, dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        norm = std::max(norm, std::abs(b[i]));
        dev = std::max(dev, std::abs(a[i] - b[i]));
    }
    return norm > 0.0 ? dev / norm : dev;
}

} // namespace

TEST_CASE("dft examples") {
    OpCounter ops;
    std::vector<Complex> delta = {1, 0, 0, 0};
    auto v = zeroset::dft_csf(delta, ops);
    for (const auto& c : v) CHECK(std::abs(c - Complex(1.0)) < 1e-12);

    std::vector<Complex> ones = {1, 1, 1, 1};
    v = zeroset::dft_csf(ones, ops);
    CHECK(std::abs(v[0] - Complex(4.0)) < 1e-12);
    for (int i = 1; i < 4; ++i) CHECK(std::abs(v[static_cast<std::size_t>(i)]) < 1e-12);

    std::vector<Complex> shifted = {0, 1, 0, 0};
    v = zeroset::dft_csf(shifted, ops);
    CHECK(std::abs(v[0] - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(v[1] - Complex(0, -1)) < 1e-12);
    CHECK(std::abs(v[2] - Complex(-1, 0)) < 1e-12);
    CHECK(std::abs(v[3] - Complex(0, 1)) < 1e-12);
}

TEST_CASE("dft_naive examples") {
    std::vector<Complex> one = {Complex(5.0)};
    auto v = zeroset::dft_naive(one);
    REQUIRE(v.size() == 1);
    CHECK(std::abs(v[0] - Complex(5.0)) < 1e-15);

    std::vector<Complex> delta = {1, 0, 0, 0};
    v = zeroset::dft_naive(delta);
    for (const auto& c : v) CHECK(std::abs(c - Complex(1.0)) < 1e-12);
}

TEST_CASE("dft input validation") {
    OpCounter ops;
    std::vector<Complex> bad(6, Complex(1.0));
    CHECK_THROWS_AS(zeroset::dft_csf(bad, ops), zeroset::NotPowerOfTwoError);
    std::vector<Complex> single = {Complex(1.0)};
    CHECK_THROWS_AS(zeroset::dft_csf(single, ops), zeroset::NotPowerOfTwoError);
}

TEST_CASE("dft_csf matches the naive transform across sizes") {
    std::mt19937_64 rng(13);
    for (std::size_t n = 2; n <= 4096; n *= 2) {
        auto u = random_signal(rng, n);
        OpCounter ops;
        auto fast = zeroset::dft_csf(u, ops);
        auto slow = zeroset::dft_naive(u);
        CAPTURE(n);
        REQUIRE(max_rel_dev(fast, slow) < 1e-9);
    }
}

TEST_CASE("parseval identity") {
    std::mt19937_64 rng(29);
    for (std::size_t n = 2; n <= 4096; n *= 4) {
        auto u = random_signal(rng, n);
        OpCounter ops;
        auto v = zeroset::dft_csf(u, ops);
        double eu = 0.0, ev = 0.0;
        for (const auto& c : u) eu += std::norm(c);
        for (const auto& c : v) ev += std::norm(c);
        CAPTURE(n);
        REQUIRE(std::abs(ev - static_cast<double>(n) * eu) <= 1e-8 * std::abs(ev));
    }
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(31);
    const std::size_t n = 64;
    auto u1 = random_signal(rng, n);
    auto u2 = random_signal(rng, n);
    Complex a(0.7, -0.2), b(-1.3, 0.4);
    std::vector<Complex> mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = a * u1[i] + b * u2[i];
    OpCounter ops;
    auto vm = zeroset::dft_csf(mix, ops);
    auto v1 = zeroset::dft_csf(u1, ops);
    auto v2 = zeroset::dft_csf(u2, ops);
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(vm[i] - (a * v1[i] + b * v2[i])));
    CHECK(dev < 1e-9);
}

TEST_CASE("operation count scales quasi-linearly") {
    std::mt19937_64 rng(37);
    double lo = 1e300, hi = 0.0;
    for (std::size_t n = 8; n <= 4096; n *= 2) {
        auto u = random_signal(rng, n);
        OpCounter ops;
        zeroset::dft_csf(u, ops);
        double ratio = static_cast<double>(ops.total()) /
                       (static_cast<double>(n) * std::log2(static_cast<double>(n)));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 1.25);
}

TEST_CASE("worker count does not change the transform") {
    std::mt19937_64 rng(41);
    auto u = random_signal(rng, 256);
    OpCounter o1, o2;
    auto v1 = zeroset::dft_csf(u, o1, 1);
    auto v2 = zeroset::dft_csf(u, o2, 4);
    for (std::size_t i = 0; i < u.size(); ++i) REQUIRE(v1[i] == v2[i]);
    CHECK(o1.total() == o2.total());
}
