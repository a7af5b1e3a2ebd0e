#ifndef ZEROSET_TAYLOR_HPP
#define ZEROSET_TAYLOR_HPP

#include <span>
#include <utility>
#include <vector>

#include "zeroset/errors.hpp"
#include "zeroset/interval.hpp"
#include "zeroset/opcount.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

namespace detail {

inline SparsePoly<Interval> to_interval_poly(const SparsePoly<double>& F) {
    std::vector<Interval> coeffs;
    coeffs.reserve(F.term_count());
    for (double c : F.terms().payloads()) coeffs.emplace_back(c);
    return SparsePoly<Interval>(F.vars(), F.terms().with_payloads(std::move(coeffs)));
}

// Enclosure of 1/n, exact for powers of two.
inline Interval inv_of(unsigned n) {
    double inv = 1.0 / static_cast<double>(n);
    if ((n & (n - 1)) == 0) return Interval(inv);
    return Interval(prev_float(inv), next_float(inv));
}

// Multi-indices of total order exactly `total`, in lexicographic order.
inline void enumerate_orders(int vars, unsigned total, std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> alpha(static_cast<std::size_t>(vars), 0);
    auto rec = [&](auto&& self, int pos, unsigned left) -> void {
        if (pos + 1 == vars) {
            alpha[static_cast<std::size_t>(pos)] = left;
            out.push_back(alpha);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            alpha[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1, left - e);
        }
    };
    rec(rec, 0, total);
}

} // namespace detail

// One expansion term: multi-index and interval coefficient (the coefficient
// already carries the 1/alpha! factor).
struct TaylorTerm {
    std::vector<unsigned> alpha;
    Interval coeff;
};

// Centered truncated expansion of a polynomial over a box. Terms up to total
// order m-1 are evaluated at the midpoint; the order-m coefficients enclose
// the scaled derivative ranges over the whole box, so the form's range
// encloses the polynomial's range. Coefficients are kept as intervals so the
// enclosure property survives floating-point rounding of the midpoint
// evaluations.
class TaylorForm {
public:
    TaylorForm(std::vector<double> center, int order, std::vector<TaylorTerm> terms,
               std::vector<TaylorTerm> remainder)
        : center_(std::move(center)), order_(order), terms_(std::move(terms)),
          remainder_(std::move(remainder)) {}

    int order() const { return order_; }
    std::span<const double> center() const { return center_; }
    std::span<const TaylorTerm> terms() const { return terms_; }
    std::span<const TaylorTerm> remainder() const { return remainder_; }

    // Coefficient of (x_var - c_var); zero when absent or when order < 2.
    Interval linear_coeff(int var) const {
        if (var < 1 || var > static_cast<int>(center_.size()))
            throw IndexOutOfRangeError("TaylorForm: variable out of range");
        for (const auto& t : terms_) {
            unsigned total = 0;
            for (unsigned e : t.alpha) total += e;
            if (total != 1) continue;
            if (t.alpha[static_cast<std::size_t>(var) - 1] == 1) return t.coeff;
        }
        return Interval(0.0);
    }

    // Range enclosure of the represented polynomial over the given box
    // (normally the box the form was built on, or a sub-box of it).
    Interval range_over(const Box& B, OpCounter* ops = nullptr) const {
        if (B.size() != center_.size()) throw ArityMismatchError("TaylorForm: box arity mismatch");
        std::vector<Interval> r = offsets(B);
        return accumulate(r, ops);
    }

    // Enclosure of the form's value at a single point of the box.
    Interval value_at(std::span<const double> v, OpCounter* ops = nullptr) const {
        if (v.size() != center_.size()) throw ArityMismatchError("TaylorForm: point arity mismatch");
        std::vector<Interval> r;
        r.reserve(v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            r.push_back(Interval(v[i]) - Interval(center_[i]));
        return accumulate(r, ops);
    }

private:
    std::vector<Interval> offsets(const Box& B) const {
        std::vector<Interval> r;
        r.reserve(B.size());
        for (std::size_t i = 0; i < B.size(); ++i) r.push_back(B[i] - Interval(center_[i]));
        return r;
    }

    Interval accumulate(std::span<const Interval> r, OpCounter* ops) const {
        Interval acc(0.0);
        auto add_group = [&](std::span<const TaylorTerm> group) {
            for (const auto& t : group) {
                Interval term = t.coeff;
                for (std::size_t i = 0; i < r.size(); ++i) {
                    if (t.alpha[i] == 0) continue;
                    term *= detail::pow_counted(r[i], t.alpha[i], ops);
                    if (ops) ops->count_mul();
                }
                acc += term;
                if (ops) ops->count_add();
            }
        };
        add_group(terms_);
        add_group(remainder_);
        return acc;
    }

    std::vector<double> center_;
    int order_;
    std::vector<TaylorTerm> terms_;
    std::vector<TaylorTerm> remainder_;
};

namespace detail {

// All scaled derivatives of F needed by an order-m form: entries of total
// order < m are evaluated at box midpoints, entries of order m over boxes.
// Shared between the per-box builder and the level-batched solver path.
struct ScaledDerivative {
    std::vector<unsigned> alpha;
    unsigned order = 0;
    SparsePoly<Interval> poly;
    Interval inv_fact; // enclosure of 1/alpha!
};

inline std::vector<ScaledDerivative> derivative_set(const SparsePoly<double>& F, int m) {
    if (m < 1) throw UnsupportedOrderError("taylor: order must be >= 1");
    if (m > 3) throw UnsupportedOrderError("taylor: orders above 3 are not supported");
    const int k = F.vars();
    auto base = to_interval_poly(F);
    std::vector<ScaledDerivative> out;
    for (unsigned total = 0; total <= static_cast<unsigned>(m); ++total) {
        std::vector<std::vector<unsigned>> alphas;
        enumerate_orders(k, total, alphas);
        for (const auto& alpha : alphas) {
            SparsePoly<Interval> d = base;
            unsigned fact = 1;
            for (int var = 1; var <= k; ++var) {
                for (unsigned rep = 0; rep < alpha[static_cast<std::size_t>(var) - 1]; ++rep)
                    d = differentiate(d, var);
                unsigned f = 1;
                for (unsigned i = 2; i <= alpha[static_cast<std::size_t>(var) - 1]; ++i) f *= i;
                fact *= f;
            }
            if (d.is_zero() && total > 0) continue;
            out.push_back(ScaledDerivative{alpha, total, std::move(d), inv_of(fact)});
        }
    }
    return out;
}

} // namespace detail

// Builds the order-m form of F on B: derivative coefficients are computed by
// exact formal differentiation over interval coefficients, evaluated at the
// degenerate midpoint box (orders < m) or the full box (order m), and scaled
// by enclosures of 1/alpha!.
inline TaylorForm taylor_build(const SparsePoly<double>& F, const Box& B, int m, OpCounter* ops = nullptr) {
    const int k = F.vars();
    if (static_cast<int>(B.size()) != k) throw ArityMismatchError("taylor_build: box arity mismatch");

    std::vector<double> center;
    Box center_box;
    center.reserve(B.size());
    for (const Interval& edge : B) {
        double c = midpoint(edge);
        center.push_back(c);
        center_box.push_back(Interval(c));
    }

    std::vector<TaylorTerm> terms;
    std::vector<TaylorTerm> remainder;
    for (const auto& d : detail::derivative_set(F, m)) {
        const Box& eval_box = d.order == static_cast<unsigned>(m) ? B : center_box;
        Interval v = eval_direct<Interval, Interval>(d.poly, std::span<const Interval>(eval_box), ops);
        v *= d.inv_fact;
        if (ops) ops->count_mul();
        if (d.order == static_cast<unsigned>(m))
            remainder.push_back(TaylorTerm{d.alpha, v});
        else
            terms.push_back(TaylorTerm{d.alpha, v});
    }
    return TaylorForm(std::move(center), m, std::move(terms), std::move(remainder));
}

} // namespace zeroset

#endif // ZEROSET_TAYLOR_HPP
