#ifndef ZEROSET_POLY_HPP
#define ZEROSET_POLY_HPP

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zeroset/csf.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/interval.hpp"
#include "zeroset/opcount.hpp"

namespace zeroset {

using Box = std::vector<Interval>;

// Scalar customization points. The default power is square-and-multiply in
// the scalar's own arithmetic; Interval overrides it with the monotone-aware
// power, which is tighter than repeated multiplication.
template <typename S>
S scalar_pow(const S& x, unsigned e) {
    if (e == 0) return S(1);
    S acc = x;
    unsigned highest = e;
    int shift = 0;
    while (highest > 1) { highest >>= 1u; ++shift; }
    for (int b = shift - 1; b >= 0; --b) {
        acc = acc * acc;
        if ((e >> b) & 1u) acc = acc * x;
    }
    return acc;
}

inline Interval scalar_pow(const Interval& x, unsigned e) { return pow(x, e); }

template <typename S>
bool scalar_is_zero(const S& x) {
    return x == S(0);
}

inline bool scalar_is_zero(const Interval& x) { return x.lo() == 0.0 && x.hi() == 0.0; }

namespace detail {

template <typename X>
X pow_counted(const X& x, unsigned e, OpCounter* ops) {
    if (e == 1) return x;
    if (ops) ops->count_pow(e);
    return scalar_pow(x, e);
}

// Sparse Hörner step sequence over exponents e_0 < ... < e_{n-1}:
//   acc <- a_{n-1}; acc <- acc * x^(e_{j+1}-e_j) + a_j; finally acc <- acc * x^{e_0}.
// The trailing multiplication makes the result equal the polynomial value
// rather than its x^{e_0} cofactor.
template <typename X, typename ExpAt, typename CoeffAt>
X horner_kernel(std::size_t n, ExpAt&& exp_at, CoeffAt&& coeff_at, const X& x, OpCounter* ops) {
    X acc = coeff_at(n - 1);
    for (std::size_t j = n - 1; j > 0; --j) {
        unsigned gap = exp_at(j) - exp_at(j - 1);
        acc = acc * pow_counted(x, gap, ops);
        if (ops) ops->count_mul();
        acc = acc + coeff_at(j - 1);
        if (ops) ops->count_add();
    }
    unsigned e0 = exp_at(std::size_t{0});
    if (e0 > 0) {
        acc = acc * pow_counted(x, e0, ops);
        if (ops) ops->count_mul();
    }
    return acc;
}

} // namespace detail

// A univariate sparse polynomial a_0 x^{e_0} + ... + a_l x^{e_l} with strictly
// increasing exponents, the unit the Hörner scheme operates on.
template <typename S>
struct UnivariateSlice {
    std::vector<std::pair<unsigned, S>> terms;

    UnivariateSlice() = default;
    explicit UnivariateSlice(std::vector<std::pair<unsigned, S>> t) : terms(std::move(t)) {
        for (std::size_t i = 1; i < terms.size(); ++i)
            if (terms[i].first <= terms[i - 1].first)
                throw std::invalid_argument("UnivariateSlice: exponents must be strictly increasing");
    }
};

template <typename S>
S horner_sparse(const UnivariateSlice<S>& f, const S& x, OpCounter* ops = nullptr) {
    if (f.terms.empty()) throw EmptyPolynomialError("horner_sparse: empty polynomial");
    return detail::horner_kernel<S>(
        f.terms.size(), [&](std::size_t j) { return f.terms[j].first; },
        [&](std::size_t j) { return f.terms[j].second; }, x, ops);
}

// Sparse multivariate polynomial stored as a CSF tree over exponent tuples,
// coefficients as leaf payloads. No zero coefficients are stored; the zero
// polynomial has empty support.
template <typename S>
class SparsePoly {
public:
    using Label = std::uint32_t;

    SparsePoly() : vars_(1), terms_(1) {}

    SparsePoly(int vars, CsfTree<S> terms) : vars_(vars), terms_(std::move(terms)) {
        if (vars < 1) throw std::invalid_argument("SparsePoly: need at least one variable");
        if (terms_.depth() != vars) throw ArityMismatchError("SparsePoly: tree depth != variable count");
    }

    static SparsePoly from_terms(int vars, std::vector<std::pair<std::vector<Label>, S>> entries) {
        // Duplicate detection must see all listed tuples, so it runs before
        // zero coefficients are dropped.
        {
            auto tuples = entries;
            std::sort(tuples.begin(), tuples.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t i = 1; i < tuples.size(); ++i)
                if (tuples[i].first == tuples[i - 1].first)
                    throw DuplicateTupleError("SparsePoly: duplicate exponent tuple");
        }
        std::erase_if(entries, [](const auto& e) { return scalar_is_zero(e.second); });
        return SparsePoly(vars, CsfTree<S>::from_entries(vars, std::move(entries)));
    }

    int vars() const { return vars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.tuple_count(); }
    const CsfTree<S>& terms() const { return terms_; }

    // Largest exponent of the given 1-based variable (0 for the zero
    // polynomial).
    unsigned degree(int var) const {
        if (var < 1 || var > vars_) throw IndexOutOfRangeError("SparsePoly: variable out of range");
        unsigned d = 0;
        for (Label l : terms_.level_labels(var - 1)) d = std::max(d, static_cast<unsigned>(l));
        return d;
    }

    std::size_t projection_count(int i) const { return terms_.projection_count(i); }
    std::size_t reverse_projection_count(int i) const { return terms_.reverse_projection_count(i); }

    bool operator==(const SparsePoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

private:
    int vars_;
    CsfTree<S> terms_;
};

namespace detail {

// The evaluation engines keep polynomials keyed by reversed exponent tuples
// (e_k, ..., e_1): the deepest level then holds, per distinct suffix of the
// remaining variables, the univariate slice in the variable being
// substituted, and contracting that level is exactly one partial evaluation.
template <typename S>
CsfTree<S> reversed_terms(const SparsePoly<S>& F) {
    std::vector<std::pair<std::vector<std::uint32_t>, S>> entries;
    entries.reserve(F.term_count());
    F.terms().for_each([&](std::span<const std::uint32_t> tup, const S& c) {
        entries.emplace_back(std::vector<std::uint32_t>(tup.rbegin(), tup.rend()), c);
    });
    return CsfTree<S>::from_entries(F.vars(), std::move(entries));
}

// Substitutes x for the variable stored at the deepest level of a reversed
// tree of depth 1 (a bare slice); the empty tree is the zero polynomial.
template <typename X, typename C>
X contract_to_scalar(const CsfTree<C>& rev, const X& x, OpCounter* ops) {
    if (rev.empty()) return X(0);
    auto labels = rev.level_labels(0);
    auto coeffs = rev.payloads();
    return horner_kernel<X>(
        labels.size(), [&](std::size_t j) { return static_cast<unsigned>(labels[j]); },
        [&](std::size_t j) { return X(coeffs[j]); }, x, ops);
}

// Substitutes x for the deepest-level variable of a reversed tree of depth
// k >= 2, producing a reversed tree of depth k-1. Slices whose Hörner value
// is exactly zero are dropped and empty ancestors pruned.
template <typename X, typename C>
CsfTree<X> contract_last(const CsfTree<C>& rev, const X& x, OpCounter* ops) {
    const int k = rev.depth();
    const int pl = k - 2; // level whose nodes own the slices
    if (rev.empty()) return CsfTree<X>(k - 1);

    auto slice_labels = rev.level_labels(k - 1);
    auto coeffs = rev.payloads();
    const std::size_t parents = rev.level_labels(pl).size();

    std::vector<X> values;
    values.reserve(parents);
    std::vector<char> keep(parents, 0);
    bool dropped = false;
    for (std::size_t p = 0; p < parents; ++p) {
        auto [cb, ce] = rev.children(pl, static_cast<std::uint32_t>(p));
        X v = horner_kernel<X>(
            ce - cb, [&](std::size_t j) { return static_cast<unsigned>(slice_labels[cb + j]); },
            [&](std::size_t j) { return X(coeffs[cb + j]); }, x, ops);
        if (scalar_is_zero(v)) {
            dropped = true;
            values.emplace_back(std::move(v));
        } else {
            keep[p] = 1;
            values.emplace_back(std::move(v));
        }
    }

    std::vector<std::vector<std::uint32_t>> labels(static_cast<std::size_t>(k - 1));
    std::vector<std::vector<std::uint32_t>> child_begin(static_cast<std::size_t>(k - 2));

    if (!dropped) {
        for (int lvl = 0; lvl < k - 1; ++lvl) {
            auto ll = rev.level_labels(lvl);
            labels[static_cast<std::size_t>(lvl)].assign(ll.begin(), ll.end());
        }
        for (int lvl = 0; lvl + 2 < k; ++lvl) {
            const std::size_t n = rev.level_labels(lvl).size();
            auto& cb = child_begin[static_cast<std::size_t>(lvl)];
            cb.resize(n + 1);
            cb[0] = 0;
            for (std::size_t i = 0; i < n; ++i) cb[i + 1] = rev.children(lvl, static_cast<std::uint32_t>(i)).second;
        }
        return CsfBuilder::make<X>(k - 1, std::move(labels), std::move(child_begin), std::move(values));
    }

    // Propagate keep flags upward, then emit compacted level arrays.
    std::vector<std::vector<char>> keep_at(static_cast<std::size_t>(k - 1));
    keep_at[static_cast<std::size_t>(pl)] = keep;
    for (int lvl = pl - 1; lvl >= 0; --lvl) {
        const std::size_t n = rev.level_labels(lvl).size();
        auto& ka = keep_at[static_cast<std::size_t>(lvl)];
        ka.assign(n, 0);
        const auto& kc = keep_at[static_cast<std::size_t>(lvl) + 1];
        for (std::size_t i = 0; i < n; ++i) {
            auto [cb, ce] = rev.children(lvl, static_cast<std::uint32_t>(i));
            for (std::uint32_t c = cb; c < ce; ++c)
                if (kc[c]) { ka[i] = 1; break; }
        }
    }
    for (int lvl = 0; lvl < k - 1; ++lvl) {
        auto ll = rev.level_labels(lvl);
        const auto& ka = keep_at[static_cast<std::size_t>(lvl)];
        auto& out = labels[static_cast<std::size_t>(lvl)];
        for (std::size_t i = 0; i < ll.size(); ++i)
            if (ka[i]) out.push_back(ll[i]);
    }
    for (int lvl = 0; lvl + 2 < k; ++lvl) {
        const auto& ka = keep_at[static_cast<std::size_t>(lvl)];
        const auto& kc = keep_at[static_cast<std::size_t>(lvl) + 1];
        auto& cb = child_begin[static_cast<std::size_t>(lvl)];
        cb.push_back(0);
        std::uint32_t emitted = 0;
        for (std::size_t i = 0; i < ka.size(); ++i) {
            if (!ka[i]) continue;
            auto [b, e] = rev.children(lvl, static_cast<std::uint32_t>(i));
            for (std::uint32_t c = b; c < e; ++c)
                if (kc[c]) ++emitted;
            cb.push_back(emitted);
        }
    }
    std::vector<X> kept_values;
    kept_values.reserve(values.size());
    for (std::size_t p = 0; p < parents; ++p)
        if (keep[p]) kept_values.emplace_back(std::move(values[p]));
    return CsfBuilder::make<X>(k - 1, std::move(labels), std::move(child_begin), std::move(kept_values));
}

} // namespace detail

// Substitutes x1 for the first variable, combining coefficients per suffix
// with the sparse Hörner ordering; costs one ring operation pair per stored
// term. Exact zeros produced by cancellation are dropped.
template <typename S>
SparsePoly<S> partial_eval(const SparsePoly<S>& F, const S& x1, OpCounter* ops = nullptr) {
    if (F.vars() == 1) throw UnivariateError("partial_eval: polynomial is univariate");
    const int k = F.vars();
    if (F.is_zero()) return SparsePoly<S>(k - 1, CsfTree<S>(k - 1));
    auto rev = detail::reversed_terms(F);
    auto contracted = detail::contract_last<S, S>(rev, x1, ops);
    std::vector<std::pair<std::vector<std::uint32_t>, S>> entries;
    entries.reserve(contracted.tuple_count());
    contracted.for_each([&](std::span<const std::uint32_t> tup, const S& c) {
        entries.emplace_back(std::vector<std::uint32_t>(tup.rbegin(), tup.rend()), c);
    });
    return SparsePoly<S>(k - 1, CsfTree<S>::from_entries(k - 1, std::move(entries)));
}

// Recursive Hörner evaluation at a single point, walking the natural-order
// tree with no sharing. Serves as the per-box baseline and as the oracle the
// amortized engine is tested against.
template <typename X, typename C>
X eval_direct(const SparsePoly<C>& F, std::span<const X> point, OpCounter* ops = nullptr) {
    if (static_cast<int>(point.size()) != F.vars())
        throw ArityMismatchError("eval_direct: point arity != variable count");
    if (F.is_zero()) return X(0);
    const auto& t = F.terms();
    const int k = F.vars();
    auto rec = [&](auto&& self, int level, std::uint32_t begin, std::uint32_t end) -> X {
        auto labels = t.level_labels(level);
        return detail::horner_kernel<X>(
            end - begin, [&](std::size_t j) { return static_cast<unsigned>(labels[begin + j]); },
            [&](std::size_t j) -> X {
                std::uint32_t n = begin + static_cast<std::uint32_t>(j);
                if (level + 1 == k) return X(t.payloads()[n]);
                auto [cb, ce] = t.children(level, n);
                return self(self, level + 1, cb, ce);
            },
            point[static_cast<std::size_t>(level)], ops);
    };
    return rec(rec, 0, 0, static_cast<std::uint32_t>(t.level_labels(0).size()));
}

inline Interval eval_box_direct(const SparsePoly<double>& F, const Box& B, OpCounter* ops = nullptr) {
    return eval_direct<Interval, double>(F, std::span<const Interval>(B), ops);
}

// Exact formal partial derivative with respect to the 1-based variable.
template <typename S>
SparsePoly<S> differentiate(const SparsePoly<S>& F, int var) {
    if (var < 1 || var > F.vars()) throw IndexOutOfRangeError("differentiate: variable out of range");
    std::vector<std::pair<std::vector<std::uint32_t>, S>> entries;
    F.terms().for_each([&](std::span<const std::uint32_t> tup, const S& c) {
        unsigned e = tup[static_cast<std::size_t>(var) - 1];
        if (e == 0) return;
        std::vector<std::uint32_t> nt(tup.begin(), tup.end());
        nt[static_cast<std::size_t>(var) - 1] = e - 1;
        entries.emplace_back(std::move(nt), c * S(static_cast<int>(e)));
    });
    return SparsePoly<S>::from_terms(F.vars(), std::move(entries));
}

// Plain-text polynomial format: one monomial per line, "coefficient e1 ... ek"
// whitespace separated, '#' starts a comment, arity inferred from the first
// data line.
inline SparsePoly<double> parse_poly(std::string_view text) {
    std::vector<std::pair<std::vector<std::uint32_t>, double>> entries;
    int arity = -1;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        std::vector<std::string_view> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) tokens.push_back(line.substr(start, i - start));
        }
        if (tokens.empty()) continue;
        if (tokens.size() < 2) throw SyntaxError(line_no, "expected a coefficient and at least one exponent");
        if (arity < 0) arity = static_cast<int>(tokens.size()) - 1;
        else if (static_cast<int>(tokens.size()) - 1 != arity)
            throw ArityMismatchError("line " + std::to_string(line_no) + ": exponent count differs from first monomial");

        double coeff = 0.0;
        {
            std::string buf(tokens[0]);
            char* end = nullptr;
            coeff = std::strtod(buf.c_str(), &end);
            if (end == buf.c_str() || *end != '\0') throw SyntaxError(line_no, "bad coefficient '" + buf + "'");
        }
        std::vector<std::uint32_t> exps;
        exps.reserve(static_cast<std::size_t>(arity));
        for (int e = 0; e < arity; ++e) {
            std::string_view tok = tokens[static_cast<std::size_t>(e) + 1];
            std::uint32_t v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{} || ptr != tok.data() + tok.size())
                throw SyntaxError(line_no, "bad exponent '" + std::string(tok) + "'");
            exps.push_back(v);
        }
        entries.emplace_back(std::move(exps), coeff);
    }
    if (entries.empty()) throw EmptyPolynomialError("parse_poly: no monomials");
    return SparsePoly<double>::from_terms(arity, std::move(entries));
}

} // namespace zeroset

#endif // ZEROSET_POLY_HPP
