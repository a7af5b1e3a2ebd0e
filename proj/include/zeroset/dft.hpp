#ifndef ZEROSET_DFT_HPP
#define ZEROSET_DFT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "zeroset/csf.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/evaluate.hpp"
#include "zeroset/opcount.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

using Complex = std::complex<double>;

namespace detail {

// w^0..w^{n-1} for w = exp(-2*pi*i/n), computed once per size.
inline std::vector<Complex> root_table(std::size_t n) {
    std::vector<Complex> w(n);
    for (std::size_t t = 0; t < n; ++t) {
        double angle = -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
        w[t] = Complex(std::cos(angle), std::sin(angle));
    }
    return w;
}

} // namespace detail

// Direct O(n^2) transform, the oracle for dft_csf.
inline std::vector<Complex> dft_naive(std::span<const Complex> u) {
    const std::size_t n = u.size();
    std::vector<Complex> v(n, Complex(0.0));
    if (n == 0) return v;
    auto w = detail::root_table(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc(0.0);
        for (std::size_t l = 0; l < n; ++l) acc += u[l] * w[(j * l) % n];
        v[j] = acc;
    }
    return v;
}

// DFT as sparse-grid evaluation. Writing l in bits, v_j = sum_l u_l w^{jl}
// factors through the multilinear polynomial
//   F(y_1..y_k) = sum_l u_l * prod_s y_s^{bit_{k-s+1}(l)}
// evaluated at the points q_j = (w^{j*2^{k-1}}, ..., w^{j*2}, w^j). The point
// set, indexed per axis by j mod 2^s, is the sparse grid subset
// {(j mod 2, j mod 4, ..., j mod 2^k)} whose CSF tree is the binary butterfly
// diagram, and the shared partial evaluations reproduce the usual
// O(n log n) operation count. v_j sits at the leaf whose last coordinate is j.
inline std::vector<Complex> dft_csf(std::span<const Complex> u, OpCounter& ops, int workers = 1) {
    const std::size_t n = u.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw NotPowerOfTwoError("dft_csf: input length must be a power of two >= 2");
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;

    std::vector<std::pair<std::vector<std::uint32_t>, Complex>> terms;
    terms.reserve(n);
    for (std::size_t l = 0; l < n; ++l) {
        if (u[l] == Complex(0.0)) continue;
        std::vector<std::uint32_t> t(static_cast<std::size_t>(k));
        for (int s = 1; s <= k; ++s) t[static_cast<std::size_t>(s) - 1] = (l >> (k - s)) & 1u;
        terms.emplace_back(std::move(t), u[l]);
    }
    auto F = SparsePoly<Complex>::from_terms(k, std::move(terms));

    std::vector<std::vector<std::uint32_t>> points;
    points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::uint32_t> t(static_cast<std::size_t>(k));
        for (int s = 1; s <= k; ++s) t[static_cast<std::size_t>(s) - 1] = j & ((1u << s) - 1u);
        points.push_back(std::move(t));
    }
    auto tree = IndexTree::from_tuples(k, points);

    auto w = detail::root_table(n);
    std::vector<std::vector<Complex>> axes(static_cast<std::size_t>(k));
    for (int s = 1; s <= k; ++s) {
        auto& axis = axes[static_cast<std::size_t>(s) - 1];
        const std::size_t len = std::size_t{1} << s;
        axis.reserve(len);
        for (std::size_t r = 0; r < len; ++r) axis.push_back(w[(r << (k - s)) % n]);
    }

    auto result = evaluate_on_axes<Complex, Complex>(F, tree, axes, ops, workers);
    std::vector<Complex> v(n, Complex(0.0));
    std::size_t leaf = 0;
    tree.for_each_tuple([&](std::span<const std::uint32_t> tup) {
        v[tup[static_cast<std::size_t>(k) - 1]] = result.payloads()[leaf++];
    });
    return v;
}

} // namespace zeroset

#endif // ZEROSET_DFT_HPP
