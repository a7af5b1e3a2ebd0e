#ifndef ZEROSET_CRITERIA_HPP
#define ZEROSET_CRITERIA_HPP

#include <map>
#include <span>
#include <vector>

#include "zeroset/errors.hpp"
#include "zeroset/interval.hpp"
#include "zeroset/opcount.hpp"
#include "zeroset/poly.hpp"
#include "zeroset/taylor.hpp"

namespace zeroset {

// Enclosure scheme for the exclusion test: plain interval evaluation or the
// Taylor form, which can be tighter near the zeros.
enum class Scheme { IntervalEval, Taylor };

enum class Status { Excluded, Included, Unknown };

struct Verdict {
    Status status = Status::Unknown;
};

// Exclusion decision on precomputed enclosures: a box is excluded when some
// equation cannot vanish or some constraint polynomial is strictly positive
// (constraints are read as g <= 0).
inline bool c0_from_enclosures(std::span<const Interval> eq_encs, std::span<const Interval> ineq_encs) {
    for (const Interval& e : eq_encs)
        if (!e.contains_zero()) return true;
    for (const Interval& g : ineq_encs)
        if (g.strictly_positive()) return true;
    return false;
}

// C0: true certifies that {F_i = 0, g_j <= 0} has no solution in B.
inline bool c0_exclude(const std::vector<SparsePoly<double>>& eqs, const std::vector<SparsePoly<double>>& ineqs,
                       const Box& B, Scheme scheme, int taylor_order = 2, OpCounter* ops = nullptr) {
    auto enclose = [&](const SparsePoly<double>& F) {
        if (static_cast<int>(B.size()) != F.vars())
            throw ArityMismatchError("c0_exclude: box arity mismatch");
        if (scheme == Scheme::IntervalEval) return eval_box_direct(F, B, ops);
        return taylor_build(F, B, taylor_order, ops).range_over(B, ops);
    };
    std::vector<Interval> eq_encs, ineq_encs;
    eq_encs.reserve(eqs.size());
    ineq_encs.reserve(ineqs.size());
    for (const auto& F : eqs) eq_encs.push_back(enclose(F));
    for (const auto& g : ineqs) ineq_encs.push_back(enclose(g));
    return c0_from_enclosures(eq_encs, ineq_encs);
}

// Sign-change decision on vertex enclosures. An enclosure counts as signed
// only when it excludes zero, so float evaluation cannot fake a witness.
inline bool c1_sign_change(std::span<const Interval> vertex_encs) {
    bool neg = false, pos = false;
    for (const Interval& v : vertex_encs) {
        if (v.strictly_negative()) neg = true;
        if (v.strictly_positive()) pos = true;
    }
    return neg && pos;
}

// C1 via vertex signs: true certifies that F vanishes in B (two vertices with
// sound enclosures of strictly opposite sign, hence a zero by continuity).
// vertex_values must cover all 2^k vertices of B.
inline bool c1_vertex_sign(const SparsePoly<double>& F, const Box& B,
                           const std::map<std::vector<double>, Interval>& vertex_values) {
    if (static_cast<int>(B.size()) != F.vars())
        throw ArityMismatchError("c1_vertex_sign: box arity mismatch");
    const std::size_t k = B.size();
    std::vector<Interval> encs;
    encs.reserve(std::size_t{1} << k);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<double> v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> i) & 1u ? B[i].hi() : B[i].lo();
        auto it = vertex_values.find(v);
        if (it == vertex_values.end())
            throw std::invalid_argument("c1_vertex_sign: missing vertex enclosure");
        encs.push_back(it->second);
    }
    return c1_sign_change(encs);
}

// C1 via the Taylor linear part: picks the vertices minimizing/maximizing the
// linear part l(x) (per coordinate by gradient sign, ties resolved to the
// lower endpoint) and certifies a sign change from the form's bounds there.
inline bool c1_taylor_linear(const TaylorForm& tf, const Box& B, OpCounter* ops = nullptr) {
    if (tf.order() < 2) throw UnsupportedOrderError("c1_taylor_linear: needs order >= 2");
    if (B.size() != tf.center().size()) throw ArityMismatchError("c1_taylor_linear: box arity mismatch");
    const std::size_t k = B.size();
    std::vector<double> vmin(k), vmax(k);
    for (std::size_t i = 0; i < k; ++i) {
        Interval g = tf.linear_coeff(static_cast<int>(i) + 1);
        if (g.strictly_positive()) {
            vmin[i] = B[i].lo();
            vmax[i] = B[i].hi();
        } else if (g.strictly_negative()) {
            vmin[i] = B[i].hi();
            vmax[i] = B[i].lo();
        } else {
            vmin[i] = B[i].lo();
            vmax[i] = B[i].lo();
        }
    }
    Interval fmin = tf.value_at(vmin, ops);
    Interval fmax = tf.value_at(vmax, ops);
    return (fmin.strictly_negative() && fmax.strictly_positive()) ||
           (fmax.strictly_negative() && fmin.strictly_positive());
}

} // namespace zeroset

#endif // ZEROSET_CRITERIA_HPP
