#ifndef ZEROSET_SUBDIVIDE_HPP
#define ZEROSET_SUBDIVIDE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "zeroset/criteria.hpp"
#include "zeroset/csf.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/evaluate.hpp"
#include "zeroset/interval.hpp"
#include "zeroset/opcount.hpp"
#include "zeroset/poly.hpp"
#include "zeroset/taylor.hpp"

namespace zeroset {

// A level of the subdivision tree: grid G_{2^level}, box indices as a CSF
// tree without payloads.
struct BoxSet {
    int level = 0;
    IndexTree indices;
};

namespace detail {

// a*(1-s) + b*s with directed rounding; s is a dyadic fraction in [0,1], so
// 1-s is exact and the only roundings are the two products and the sum.
inline double corner_down(double a, double b, double s) {
    return add_down(mul_down(a, 1.0 - s), mul_down(b, s));
}

inline double corner_up(double a, double b, double s) {
    return add_up(mul_up(a, 1.0 - s), mul_up(b, s));
}

inline void check_level_depth(int level) {
    if (level < 0 || level > 28) throw IndexOutOfRangeError("subdivision level out of supported range");
}

} // namespace detail

// The closed box of a grid index, with endpoints rounded outward so that
// adjacent boxes overlap at shared faces and no zero can fall between them.
inline Box box_of_index(const Box& domain, int level, std::span<const std::uint32_t> idx) {
    detail::check_level_depth(level);
    if (idx.size() != domain.size()) throw ArityMismatchError("box_of_index: index arity mismatch");
    const double n = std::ldexp(1.0, level);
    Box out;
    out.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (idx[i] >= n) throw IndexOutOfRangeError("box_of_index: component beyond grid");
        double s0 = std::ldexp(static_cast<double>(idx[i]), -level);
        double s1 = std::ldexp(static_cast<double>(idx[i]) + 1.0, -level);
        out.emplace_back(detail::corner_down(domain[i].lo(), domain[i].hi(), s0),
                         detail::corner_up(domain[i].lo(), domain[i].hi(), s1));
    }
    return out;
}

// All 2^level cells of one domain edge (the level's evaluation axis).
inline std::vector<Interval> axis_cells(const Interval& edge, int level) {
    detail::check_level_depth(level);
    const std::size_t n = std::size_t{1} << level;
    std::vector<Interval> cells;
    cells.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s0 = std::ldexp(static_cast<double>(j), -level);
        double s1 = std::ldexp(static_cast<double>(j) + 1.0, -level);
        cells.emplace_back(detail::corner_down(edge.lo(), edge.hi(), s0),
                           detail::corner_up(edge.lo(), edge.hi(), s1));
    }
    return cells;
}

// The (2^level + 1) lattice points of one edge, as degenerate intervals; each
// point lies inside every cell it borders.
inline std::vector<Interval> axis_lattice(const Interval& edge, int level) {
    detail::check_level_depth(level);
    const std::size_t n = std::size_t{1} << level;
    std::vector<Interval> points;
    points.reserve(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        double s = std::ldexp(static_cast<double>(j), -level);
        points.emplace_back(edge.lo() * (1.0 - s) + edge.hi() * s);
    }
    return points;
}

// Box edge width at a level, in domain units (the widest axis for
// non-uniform domains).
inline double level_box_width(const Box& domain, int level) {
    double w = 0.0;
    for (const Interval& edge : domain) w = std::max(w, width(edge));
    return std::ldexp(w, -level);
}

// Replaces every index by its 2^k children on the doubled grid.
inline BoxSet bisect(const BoxSet& s) {
    const int k = s.indices.depth();
    if (s.indices.empty()) return BoxSet{s.level + 1, IndexTree(k)};
    std::vector<std::vector<std::uint32_t>> labels(static_cast<std::size_t>(k));
    std::vector<std::vector<std::uint32_t>> child_begin(static_cast<std::size_t>(k) - 1);
    for (int lvl = 0; lvl + 1 < k; ++lvl) child_begin[static_cast<std::size_t>(lvl)].push_back(0);

    auto rec = [&](auto&& self, int lvl, std::uint32_t node) -> void {
        std::uint32_t base = 2 * s.indices.level_labels(lvl)[node];
        for (std::uint32_t b = 0; b < 2; ++b) {
            labels[static_cast<std::size_t>(lvl)].push_back(base + b);
            if (lvl + 1 < k) {
                auto [cb, ce] = s.indices.children(lvl, node);
                for (std::uint32_t c = cb; c < ce; ++c) self(self, lvl + 1, c);
                child_begin[static_cast<std::size_t>(lvl)].push_back(
                    static_cast<std::uint32_t>(labels[static_cast<std::size_t>(lvl) + 1].size()));
            }
        }
    };
    const auto roots = static_cast<std::uint32_t>(s.indices.level_labels(0).size());
    for (std::uint32_t r = 0; r < roots; ++r) rec(rec, 0, r);
    return BoxSet{s.level + 1, CsfBuilder::make<Unit>(k, std::move(labels), std::move(child_begin), {})};
}

struct EnclosureBox {
    int level = 0;
    std::vector<std::uint32_t> index;

    bool operator==(const EnclosureBox&) const = default;
};

struct LevelStats {
    int level = 0;
    std::size_t boxes = 0;
    std::size_t excluded = 0;
    std::size_t included = 0;
    std::size_t undetermined = 0;
    std::size_t bisected = 0;
    std::uint64_t ops = 0;
    double box_width = 0.0;
};

// Certified output of the solver: `included` boxes carry an inclusion
// certificate (the equation vanishes inside), `undetermined` boxes are the
// max-depth survivors kept to preserve the covering guarantee.
struct Enclosure {
    Box domain;
    std::vector<EnclosureBox> included;
    std::vector<EnclosureBox> undetermined;
    std::vector<LevelStats> stats;
    OpCounter ops;
};

struct SolveOptions {
    double min_size = 0.03125;
    int max_depth = 16;
    Scheme scheme = Scheme::IntervalEval;
    int taylor_order = 2;
    int workers = 1;
};

namespace detail {

inline std::vector<std::vector<Interval>> level_axes(const Box& domain, int level) {
    std::vector<std::vector<Interval>> axes;
    axes.reserve(domain.size());
    for (const Interval& edge : domain) axes.push_back(axis_cells(edge, level));
    return axes;
}

inline std::vector<std::vector<Interval>> midpoint_axes(const std::vector<std::vector<Interval>>& cells) {
    std::vector<std::vector<Interval>> axes(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        axes[i].reserve(cells[i].size());
        for (const Interval& c : cells[i]) axes[i].emplace_back(midpoint(c));
    }
    return axes;
}

// Per-leaf Taylor range enclosures for one polynomial over a whole level:
// low-order derivatives batched over midpoints, order-m derivatives over the
// cells, then combined per box.
struct TaylorBatch {
    const std::vector<ScaledDerivative>* derivs = nullptr;
    int order = 2;
    std::vector<std::vector<Interval>> values; // parallel to *derivs; per-leaf
};

inline TaylorBatch taylor_batch_evaluate(const std::vector<ScaledDerivative>& derivs, int order,
                                         const IndexTree& boxes,
                                         const std::vector<std::vector<Interval>>& cell_axes,
                                         const std::vector<std::vector<Interval>>& mid_axes,
                                         OpCounter& ops, int workers) {
    TaylorBatch batch;
    batch.derivs = &derivs;
    batch.order = order;
    batch.values.reserve(derivs.size());
    for (const auto& d : derivs) {
        const auto& axes = d.order == static_cast<unsigned>(order) ? cell_axes : mid_axes;
        auto res = evaluate_on_axes<Interval, Interval>(d.poly, boxes, axes, ops, workers);
        auto p = res.payloads();
        batch.values.emplace_back(p.begin(), p.end());
    }
    return batch;
}

inline Interval taylor_range_for_leaf(const TaylorBatch& batch, std::size_t leaf,
                                      std::span<const Interval> offsets, OpCounter* ops) {
    Interval acc(0.0);
    const auto& derivs = *batch.derivs;
    for (std::size_t d = 0; d < derivs.size(); ++d) {
        Interval term = batch.values[d][leaf] * derivs[d].inv_fact;
        if (ops) ops->count_mul();
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            unsigned e = derivs[d].alpha[i];
            if (e == 0) continue;
            term *= pow_counted(offsets[i], e, ops);
            if (ops) ops->count_mul();
        }
        acc += term;
        if (ops) ops->count_add();
    }
    return acc;
}

inline TaylorForm taylor_form_for_leaf(const TaylorBatch& batch, std::size_t leaf,
                                       std::vector<double> center) {
    std::vector<TaylorTerm> terms, remainder;
    const auto& derivs = *batch.derivs;
    for (std::size_t d = 0; d < derivs.size(); ++d) {
        Interval coeff = batch.values[d][leaf] * derivs[d].inv_fact;
        if (derivs[d].order == static_cast<unsigned>(batch.order))
            remainder.push_back(TaylorTerm{derivs[d].alpha, coeff});
        else
            terms.push_back(TaylorTerm{derivs[d].alpha, coeff});
    }
    return TaylorForm(std::move(center), batch.order, std::move(terms), std::move(remainder));
}

} // namespace detail

// Breadth-first subdivision (power-of-two grids). Per level: batch-evaluate
// all polynomials on the surviving box set, drop excluded boxes; once boxes
// are narrower than min_size, move inclusion-certified boxes to `included`
// (single equation, no constraints) or stop with `undetermined` survivors
// (systems, which have no inclusion test); bisect the rest until max_depth.
// Every zero of the system inside the domain lies in included+undetermined.
inline Enclosure subdivide_enclose(const std::vector<SparsePoly<double>>& eqs,
                                   const std::vector<SparsePoly<double>>& ineqs, const Box& domain,
                                   const SolveOptions& opt) {
    if (!(opt.min_size > 0.0)) throw InvalidThresholdError("subdivide_enclose: min_size must be positive");
    if (opt.max_depth < 0 || opt.max_depth > 28)
        throw InvalidThresholdError("subdivide_enclose: max_depth out of range");
    if (opt.taylor_order < 1 || opt.taylor_order > 3)
        throw UnsupportedOrderError("subdivide_enclose: taylor order must be 1..3");
    if (eqs.empty() && ineqs.empty())
        throw std::invalid_argument("subdivide_enclose: need at least one polynomial");
    const int k = static_cast<int>(domain.size());
    if (k < 1) throw std::invalid_argument("subdivide_enclose: empty domain");
    for (const auto& F : eqs)
        if (F.vars() != k) throw ArityMismatchError("subdivide_enclose: equation arity mismatch");
    for (const auto& g : ineqs)
        if (g.vars() != k) throw ArityMismatchError("subdivide_enclose: constraint arity mismatch");

    const bool c1_active = eqs.size() == 1 && ineqs.empty();
    const bool taylor = opt.scheme == Scheme::Taylor;
    const int m = opt.taylor_order;

    // Derivative sets are per-polynomial and shared across all levels.
    std::vector<std::vector<detail::ScaledDerivative>> eq_derivs, ineq_derivs;
    if (taylor) {
        for (const auto& F : eqs) eq_derivs.push_back(detail::derivative_set(F, m));
        for (const auto& g : ineqs) ineq_derivs.push_back(detail::derivative_set(g, m));
    }

    Enclosure out;
    out.domain = domain;
    BoxSet S{0, IndexTree::from_tuples(k, {std::vector<std::uint32_t>(static_cast<std::size_t>(k), 0)})};

    for (int level = 0;; ++level) {
        if (S.indices.empty()) break;
        const std::size_t nboxes = S.indices.tuple_count();
        const double w = level_box_width(domain, level);
        auto cell_axes = detail::level_axes(domain, level);
        std::uint64_t ops_before = out.ops.total();

        std::vector<std::vector<Interval>> mid_axes;
        if (taylor) mid_axes = detail::midpoint_axes(cell_axes);

        // Per-leaf box offsets from midpoints, shared by all Taylor combines.
        auto leaf_tuples = S.indices.tuples();
        std::vector<std::vector<Interval>> enclosures; // one vector per polynomial, eqs then ineqs
        std::vector<detail::TaylorBatch> eq_batches;

        auto batch_enclosures = [&](const SparsePoly<double>& F,
                                    const std::vector<detail::ScaledDerivative>* derivs,
                                    bool keep_batch) -> std::vector<Interval> {
            if (!taylor) {
                auto res = evaluate_csf(F, S.indices, Grid(domain, cell_axes), out.ops, opt.workers);
                auto p = res.payloads();
                return {p.begin(), p.end()};
            }
            auto batch = detail::taylor_batch_evaluate(*derivs, m, S.indices, cell_axes, mid_axes, out.ops,
                                                       opt.workers);
            std::vector<Interval> encs(nboxes, Interval(0.0));
            std::vector<Interval> offsets(static_cast<std::size_t>(k), Interval(0.0));
            for (std::size_t leaf = 0; leaf < nboxes; ++leaf) {
                for (int i = 0; i < k; ++i) {
                    const Interval& cell = cell_axes[static_cast<std::size_t>(i)][leaf_tuples[leaf][static_cast<std::size_t>(i)]];
                    offsets[static_cast<std::size_t>(i)] = cell - Interval(midpoint(cell));
                }
                encs[leaf] = detail::taylor_range_for_leaf(batch, leaf, offsets, &out.ops);
            }
            if (keep_batch) eq_batches.push_back(std::move(batch));
            return encs;
        };

        for (std::size_t e = 0; e < eqs.size(); ++e)
            enclosures.push_back(batch_enclosures(eqs[e], taylor ? &eq_derivs[e] : nullptr,
                                                  c1_active && taylor));
        for (std::size_t g = 0; g < ineqs.size(); ++g)
            enclosures.push_back(batch_enclosures(ineqs[g], taylor ? &ineq_derivs[g] : nullptr, false));

        LevelStats stats;
        stats.level = level;
        stats.boxes = nboxes;
        stats.box_width = w;

        std::vector<std::size_t> survivors;
        survivors.reserve(nboxes);
        {
            std::vector<Interval> eq_encs(eqs.size(), Interval(0.0));
            std::vector<Interval> ineq_encs(ineqs.size(), Interval(0.0));
            for (std::size_t leaf = 0; leaf < nboxes; ++leaf) {
                for (std::size_t e = 0; e < eqs.size(); ++e) eq_encs[e] = enclosures[e][leaf];
                for (std::size_t g = 0; g < ineqs.size(); ++g) ineq_encs[g] = enclosures[eqs.size() + g][leaf];
                if (c0_from_enclosures(eq_encs, ineq_encs))
                    ++stats.excluded;
                else
                    survivors.push_back(leaf);
            }
        }

        const bool below = w < opt.min_size;

        if (!survivors.empty() && below && c1_active) {
            std::vector<std::size_t> still;
            still.reserve(survivors.size());
            if (!taylor) {
                // Vertex-sign test, with all surviving boxes' corners batched
                // as one point set on the level's lattice grid.
                std::vector<std::vector<Interval>> vaxes;
                vaxes.reserve(domain.size());
                for (const Interval& edge : domain) vaxes.push_back(axis_lattice(edge, level));
                std::set<std::vector<std::uint32_t>> corner_set;
                for (std::size_t leaf : survivors) {
                    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
                        std::vector<std::uint32_t> c(leaf_tuples[leaf]);
                        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] += (mask >> i) & 1u;
                        corner_set.insert(std::move(c));
                    }
                }
                std::vector<std::vector<std::uint32_t>> corners(corner_set.begin(), corner_set.end());
                auto vtree = IndexTree::from_tuples(k, corners);
                auto vres = evaluate_on_axes<Interval, double>(eqs[0], vtree, vaxes, out.ops, opt.workers);
                std::map<std::vector<std::uint32_t>, std::size_t> rank;
                std::size_t r = 0;
                for (const auto& c : corners) rank.emplace(c, r++);
                for (std::size_t leaf : survivors) {
                    std::vector<Interval> encs;
                    encs.reserve(std::size_t{1} << k);
                    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
                        std::vector<std::uint32_t> c(leaf_tuples[leaf]);
                        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] += (mask >> i) & 1u;
                        encs.push_back(vres.payloads()[rank.at(c)]);
                    }
                    if (c1_sign_change(encs)) {
                        out.included.push_back(EnclosureBox{level, leaf_tuples[leaf]});
                        ++stats.included;
                    } else {
                        still.push_back(leaf);
                    }
                }
            } else {
                if (m < 2) {
                    still = survivors; // the linear-part test needs order >= 2
                } else {
                    for (std::size_t leaf : survivors) {
                        Box box = box_of_index(domain, level, leaf_tuples[leaf]);
                        std::vector<double> center;
                        center.reserve(box.size());
                        for (int i = 0; i < k; ++i)
                            center.push_back(midpoint(
                                cell_axes[static_cast<std::size_t>(i)][leaf_tuples[leaf][static_cast<std::size_t>(i)]]));
                        auto tf = detail::taylor_form_for_leaf(eq_batches[0], leaf, std::move(center));
                        if (c1_taylor_linear(tf, box, &out.ops)) {
                            out.included.push_back(EnclosureBox{level, leaf_tuples[leaf]});
                            ++stats.included;
                        } else {
                            still.push_back(leaf);
                        }
                    }
                }
            }
            survivors = std::move(still);
        }

        bool stop = survivors.empty() || level == opt.max_depth || (below && !c1_active);
        if (stop && !survivors.empty()) {
            for (std::size_t leaf : survivors) out.undetermined.push_back(EnclosureBox{level, leaf_tuples[leaf]});
            stats.undetermined = survivors.size();
        }
        if (!stop) stats.bisected = survivors.size();
        stats.ops = out.ops.total() - ops_before;
        out.stats.push_back(stats);
        if (stop) break;

        std::vector<std::vector<std::uint32_t>> next;
        next.reserve(survivors.size());
        for (std::size_t leaf : survivors) next.push_back(leaf_tuples[leaf]);
        S = bisect(BoxSet{level, IndexTree::from_tuples(k, next)});
    }
    return out;
}

} // namespace zeroset

#endif // ZEROSET_SUBDIVIDE_HPP
