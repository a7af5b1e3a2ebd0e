#ifndef ZEROSET_EVALUATE_HPP
#define ZEROSET_EVALUATE_HPP

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "zeroset/csf.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/interval.hpp"
#include "zeroset/opcount.hpp"
#include "zeroset/poly.hpp"

namespace zeroset {

// Cartesian grid: one list of intervals per axis. Axis lengths may differ.
// The uniform factory produces consecutive cells sharing an endpoint; the
// subdivision driver instead builds outward-rounded (slightly overlapping)
// axes for soundness.
class Grid {
public:
    Grid(Box domain, std::vector<std::vector<Interval>> axes)
        : domain_(std::move(domain)), axes_(std::move(axes)) {
        if (domain_.size() != axes_.size())
            throw ArityMismatchError("Grid: domain and axes arity differ");
        for (const auto& axis : axes_) {
            if (axis.empty()) throw std::invalid_argument("Grid: empty axis");
            for (std::size_t i = 1; i < axis.size(); ++i)
                if (axis[i].lo() < axis[i - 1].lo())
                    throw std::invalid_argument("Grid: axis intervals not sorted");
        }
    }

    static Grid uniform(const Box& domain, int cells_per_axis) {
        if (cells_per_axis < 1) throw std::invalid_argument("Grid: need at least one cell per axis");
        std::vector<std::vector<Interval>> axes;
        axes.reserve(domain.size());
        for (const Interval& edge : domain) {
            std::vector<Interval> axis;
            axis.reserve(static_cast<std::size_t>(cells_per_axis));
            double prev = edge.lo();
            for (int j = 1; j <= cells_per_axis; ++j) {
                double s = static_cast<double>(j) / cells_per_axis;
                double p = j == cells_per_axis ? edge.hi() : edge.lo() * (1.0 - s) + edge.hi() * s;
                axis.emplace_back(prev, p);
                prev = p;
            }
            axes.push_back(std::move(axis));
        }
        return Grid(domain, std::move(axes));
    }

    int arity() const { return static_cast<int>(axes_.size()); }
    const std::vector<Interval>& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
    const std::vector<std::vector<Interval>>& axes() const { return axes_; }
    const Box& domain() const { return domain_; }

private:
    Box domain_;
    std::vector<std::vector<Interval>> axes_;
};

// Evaluation result over a box set: same support as the input tree, one
// enclosure per box.
using EvalResult = CsfTree<Interval>;

template <typename X>
struct DenseGrid {
    std::vector<std::size_t> dims;
    std::vector<X> values; // row major, first axis slowest

    const X& at(std::initializer_list<std::size_t> idx) const {
        std::size_t flat = 0;
        std::size_t d = 0;
        for (std::size_t i : idx) flat = flat * dims[d++] + i;
        return values[flat];
    }
};

namespace detail {

template <typename X, typename C>
void eval_rec(const CsfTree<C>& poly, const IndexTree& boxes, const std::vector<std::vector<X>>& axes,
              int level, std::uint32_t begin, std::uint32_t end, std::size_t& cursor, std::vector<X>& out,
              OpCounter* ops) {
    const int k = boxes.depth();
    auto labels = boxes.level_labels(level);
    const auto& axis = axes[static_cast<std::size_t>(level)];
    for (std::uint32_t n = begin; n < end; ++n) {
        const X& x = axis[labels[n]];
        if (level + 1 == k) {
            out[cursor++] = contract_to_scalar<X>(poly, x, ops);
        } else {
            auto sub = contract_last<X>(poly, x, ops);
            auto [cb, ce] = boxes.children(level, n);
            eval_rec<X, X>(sub, boxes, axes, level + 1, cb, ce, cursor, out, ops);
        }
    }
}

inline std::size_t leaf_begin_of_root(const IndexTree& t, std::uint32_t n) {
    std::uint32_t b = n;
    for (int lvl = 0; lvl + 1 < t.depth(); ++lvl) b = t.children(lvl, b).first;
    return b;
}

template <typename X, typename C>
void dense_rec(const CsfTree<C>& poly, const std::vector<std::vector<X>>& axes, int level,
               std::size_t& cursor, std::vector<X>& out, OpCounter* ops) {
    const int k = static_cast<int>(axes.size());
    const auto& axis = axes[static_cast<std::size_t>(level)];
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (level + 1 == k) {
            out[cursor++] = contract_to_scalar<X>(poly, axis[i], ops);
        } else {
            auto sub = contract_last<X>(poly, axis[i], ops);
            dense_rec<X, X>(sub, axes, level + 1, cursor, out, ops);
        }
    }
}

// Runs fn(chunk_index) on `parts` threads; in the 1-part case runs inline.
template <typename Fn>
void run_partitioned(int parts, Fn&& fn) {
    if (parts <= 1) {
        fn(0);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(parts));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(parts));
    for (int p = 0; p < parts; ++p)
        threads.emplace_back([&, p] {
            try {
                fn(p);
            } catch (...) {
                errors[static_cast<std::size_t>(p)] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace detail

// Evaluates F on every box of the set, sharing partial evaluations along
// common index prefixes. Axis entries can be intervals, plain numbers, or
// complex points. Results and operation counts are identical for any worker
// count; workers partition the root children.
template <typename X, typename C>
CsfTree<X> evaluate_on_axes(const SparsePoly<C>& F, const IndexTree& boxes,
                            const std::vector<std::vector<X>>& axes, OpCounter& ops, int workers = 1) {
    const int k = F.vars();
    if (boxes.depth() != k || static_cast<int>(axes.size()) != k)
        throw ArityMismatchError("evaluate_on_axes: polynomial, box set and grid arity differ");
    for (int lvl = 0; lvl < k; ++lvl) {
        const auto labels = boxes.level_labels(lvl);
        for (auto l : labels)
            if (l >= axes[static_cast<std::size_t>(lvl)].size())
                throw IndexOutOfRangeError("evaluate_on_axes: box index beyond axis length");
    }
    std::vector<X> out(boxes.tuple_count(), X(0));
    if (!boxes.empty()) {
        auto rev = detail::reversed_terms(F);
        const std::uint32_t roots = static_cast<std::uint32_t>(boxes.level_labels(0).size());
        int parts = std::min<int>(std::max(workers, 1), static_cast<int>(roots));
        std::vector<OpCounter> counters(static_cast<std::size_t>(parts));
        detail::run_partitioned(parts, [&](int p) {
            auto begin = static_cast<std::uint32_t>(std::size_t{roots} * static_cast<std::size_t>(p) /
                                                    static_cast<std::size_t>(parts));
            auto end = static_cast<std::uint32_t>(std::size_t{roots} * static_cast<std::size_t>(p + 1) /
                                                  static_cast<std::size_t>(parts));
            if (begin == end) return;
            std::size_t cursor = detail::leaf_begin_of_root(boxes, begin);
            detail::eval_rec<X, C>(rev, boxes, axes, 0, begin, end, cursor, out,
                                   &counters[static_cast<std::size_t>(p)]);
        });
        for (const auto& c : counters) ops += c;
    }
    return boxes.with_payloads(std::move(out));
}

inline EvalResult evaluate_csf(const SparsePoly<double>& F, const IndexTree& boxes, const Grid& grid,
                               OpCounter& ops, int workers = 1) {
    return evaluate_on_axes<Interval, double>(F, boxes, grid.axes(), ops, workers);
}

// Dense-grid evaluation: the same partial-evaluation recursion applied to
// every cell of the Cartesian product, with no index tree overhead. On a full
// grid this performs exactly the scalar operations evaluate_on_axes performs.
template <typename X, typename C>
DenseGrid<X> evaluate_dense_on_axes(const SparsePoly<C>& F, const std::vector<std::vector<X>>& axes,
                                    OpCounter& ops, int workers = 1) {
    const int k = F.vars();
    if (static_cast<int>(axes.size()) != k)
        throw ArityMismatchError("evaluate_dense_on_axes: polynomial and grid arity differ");
    DenseGrid<X> grid;
    grid.dims.reserve(axes.size());
    std::size_t total = 1;
    for (const auto& axis : axes) {
        grid.dims.push_back(axis.size());
        total *= axis.size();
    }
    grid.values.assign(total, X(0));
    std::size_t stride0 = total / axes[0].size();
    auto rev = detail::reversed_terms(F);
    const std::size_t n0 = axes[0].size();
    int parts = std::min<int>(std::max(workers, 1), static_cast<int>(n0));
    std::vector<OpCounter> counters(static_cast<std::size_t>(parts));
    detail::run_partitioned(parts, [&](int p) {
        std::size_t begin = n0 * static_cast<std::size_t>(p) / static_cast<std::size_t>(parts);
        std::size_t end = n0 * static_cast<std::size_t>(p + 1) / static_cast<std::size_t>(parts);
        OpCounter* c = &counters[static_cast<std::size_t>(p)];
        for (std::size_t i = begin; i < end; ++i) {
            std::size_t cursor = i * stride0;
            if (k == 1) {
                grid.values[cursor] = detail::contract_to_scalar<X>(rev, axes[0][i], c);
            } else {
                auto sub = detail::contract_last<X>(rev, axes[0][i], c);
                detail::dense_rec<X, X>(sub, axes, 1, cursor, grid.values, c);
            }
        }
    });
    for (const auto& c : counters) ops += c;
    return grid;
}

inline DenseGrid<Interval> evaluate_dense_grid(const SparsePoly<double>& F, const Grid& grid, OpCounter& ops,
                                               int workers = 1) {
    return evaluate_dense_on_axes<Interval, double>(F, grid.axes(), ops, workers);
}

} // namespace zeroset

#endif // ZEROSET_EVALUATE_HPP
