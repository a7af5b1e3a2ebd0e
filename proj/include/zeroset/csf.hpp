#ifndef ZEROSET_CSF_HPP
#define ZEROSET_CSF_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zeroset/errors.hpp"

namespace zeroset {

// Payload type for trees that only store a tuple set (box indices).
struct Unit {
    bool operator==(const Unit&) const { return true; }
};

// Compressed-sparse-fiber tree over a finite subset of N^k. Level i holds the
// distinct values of coordinate i+1 given the prefix path; siblings are stored
// as sorted contiguous runs, so iteration is lexicographic and child ranges
// are plain index intervals. Depth-k nodes may carry a payload. Immutable
// after construction.
template <typename P>
class CsfTree {
public:
    using Label = std::uint32_t;

    CsfTree() : depth_(1), labels_(1), child_begin_() {}

    explicit CsfTree(int depth) : depth_(depth) {
        if (depth < 1) throw std::invalid_argument("CsfTree: depth must be >= 1");
        labels_.resize(static_cast<std::size_t>(depth));
        child_begin_.resize(static_cast<std::size_t>(depth) - 1);
    }

    // Builds from (tuple, payload) entries. Tuples are sorted internally;
    // duplicates and arity mismatches are rejected.
    static CsfTree from_entries(int depth, std::vector<std::pair<std::vector<Label>, P>> entries) {
        CsfTree t(depth);
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [tuple, payload] : entries) {
            (void)payload;
            if (static_cast<int>(tuple.size()) != depth)
                throw ArityMismatchError("CsfTree: tuple arity differs from tree depth");
        }
        for (std::size_t i = 1; i < entries.size(); ++i)
            if (entries[i].first == entries[i - 1].first)
                throw DuplicateTupleError("CsfTree: duplicate tuple");
        t.build_sorted(entries);
        return t;
    }

    static CsfTree from_tuples(int depth, const std::vector<std::vector<Label>>& tuples) {
        std::vector<std::pair<std::vector<Label>, P>> entries;
        entries.reserve(tuples.size());
        for (const auto& tup : tuples) entries.emplace_back(tup, P{});
        return from_entries(depth, std::move(entries));
    }

    int depth() const { return depth_; }
    bool empty() const { return labels_[0].empty(); }
    std::size_t tuple_count() const { return labels_[static_cast<std::size_t>(depth_) - 1].size(); }

    // N_i: number of nodes at depth i, 1 <= i <= k.
    std::size_t projection_count(int i) const {
        check_level(i);
        return labels_[static_cast<std::size_t>(i) - 1].size();
    }

    // N~_i: number of distinct length-i suffixes. Not stored in the tree;
    // computed by a suffix sweep over the tuples.
    std::size_t reverse_projection_count(int i) const {
        check_level(i);
        std::vector<std::vector<Label>> suffixes;
        suffixes.reserve(tuple_count());
        for_each_tuple([&](std::span<const Label> tup) {
            suffixes.emplace_back(tup.end() - i, tup.end());
        });
        std::sort(suffixes.begin(), suffixes.end());
        suffixes.erase(std::unique(suffixes.begin(), suffixes.end()), suffixes.end());
        return suffixes.size();
    }

    std::span<const Label> level_labels(int level) const { return labels_[static_cast<std::size_t>(level)]; }

    // Children of node n at 0-based level, as an index range into level+1.
    std::pair<std::uint32_t, std::uint32_t> children(int level, std::uint32_t node) const {
        const auto& cb = child_begin_[static_cast<std::size_t>(level)];
        return {cb[node], cb[node + 1]};
    }

    std::span<const P> payloads() const { return payloads_; }
    std::span<P> payloads() { return payloads_; }
    bool has_payloads() const { return !payloads_.empty() || tuple_count() == 0; }

    // Visits every tuple in lexicographic order.
    template <typename Fn>
    void for_each_tuple(Fn&& fn) const {
        std::vector<Label> tuple(static_cast<std::size_t>(depth_));
        walk(0, 0, static_cast<std::uint32_t>(labels_[0].size()), tuple, [&](std::span<const Label> tup, std::uint32_t) {
            fn(tup);
        });
    }

    // Visits (tuple, payload) pairs in lexicographic order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        std::vector<Label> tuple(static_cast<std::size_t>(depth_));
        walk(0, 0, static_cast<std::uint32_t>(labels_[0].size()), tuple, [&](std::span<const Label> tup, std::uint32_t leaf) {
            fn(tup, payloads_[leaf]);
        });
    }

    std::vector<std::vector<Label>> tuples() const {
        std::vector<std::vector<Label>> out;
        out.reserve(tuple_count());
        for_each_tuple([&](std::span<const Label> tup) { out.emplace_back(tup.begin(), tup.end()); });
        return out;
    }

    // One node per line, "depth label" with the payload appended on depth-k
    // lines, indented two spaces per depth.
    std::string dump() const {
        std::ostringstream os;
        dump_level(os, 0, 0, static_cast<std::uint32_t>(labels_[0].size()));
        return os.str();
    }

    bool operator==(const CsfTree& o) const {
        return depth_ == o.depth_ && labels_ == o.labels_ && child_begin_ == o.child_begin_ &&
               payloads_ == o.payloads_;
    }

    // Structure-preserving payload replacement: the result has this tree's
    // support with the given leaf payloads (in lexicographic leaf order).
    template <typename Q>
    CsfTree<Q> with_payloads(std::vector<Q> payloads) const {
        if (payloads.size() != tuple_count())
            throw std::invalid_argument("CsfTree: payload count differs from tuple count");
        CsfTree<Q> t(depth_);
        t.labels_ = labels_;
        t.child_begin_ = child_begin_;
        t.payloads_ = std::move(payloads);
        return t;
    }

private:
    template <typename Q>
    friend class CsfTree;

    friend struct CsfBuilder;

    void check_level(int i) const {
        if (i < 1 || i > depth_) throw IndexOutOfRangeError("CsfTree: level out of range");
    }

    void build_sorted(const std::vector<std::pair<std::vector<Label>, P>>& entries) {
        const std::size_t k = static_cast<std::size_t>(depth_);
        for (std::size_t lvl = 0; lvl < k; ++lvl) {
            auto& labels = labels_[lvl];
            for (std::size_t j = 0; j < entries.size(); ++j) {
                bool new_node = j == 0;
                if (!new_node) {
                    const auto& prev = entries[j - 1].first;
                    const auto& cur = entries[j].first;
                    for (std::size_t c = 0; c <= lvl; ++c)
                        if (prev[c] != cur[c]) { new_node = true; break; }
                }
                if (new_node) labels.push_back(entries[j].first[lvl]);
            }
        }
        // Child offsets: nodes at level lvl+1 grouped under level-lvl nodes.
        for (std::size_t lvl = 0; lvl + 1 < k; ++lvl) {
            auto& cb = child_begin_[lvl];
            cb.assign(labels_[lvl].size() + 1, 0);
            std::size_t node = 0;
            std::uint32_t child = 0;
            cb[0] = 0;
            for (std::size_t j = 0; j < entries.size(); ++j) {
                bool new_parent = j == 0;
                bool new_child = j == 0;
                if (j > 0) {
                    const auto& prev = entries[j - 1].first;
                    const auto& cur = entries[j].first;
                    for (std::size_t c = 0; c <= lvl; ++c)
                        if (prev[c] != cur[c]) { new_parent = true; break; }
                    for (std::size_t c = 0; c <= lvl + 1; ++c)
                        if (prev[c] != cur[c]) { new_child = true; break; }
                }
                if (new_parent && j > 0) cb[++node] = child;
                if (new_child) ++child;
            }
            if (!entries.empty()) cb[++node] = child;
        }
        if constexpr (!std::is_same_v<P, Unit>) {
            payloads_.reserve(entries.size());
            for (const auto& e : entries) payloads_.push_back(e.second);
        }
    }

    template <typename Fn>
    void walk(int level, std::uint32_t begin, std::uint32_t end, std::vector<Label>& tuple, Fn&& fn) const {
        for (std::uint32_t n = begin; n < end; ++n) {
            tuple[static_cast<std::size_t>(level)] = labels_[static_cast<std::size_t>(level)][n];
            if (level + 1 == depth_) {
                fn(std::span<const Label>(tuple), n);
            } else {
                auto [cb, ce] = children(level, n);
                walk(level + 1, cb, ce, tuple, fn);
            }
        }
    }

    void dump_level(std::ostringstream& os, int level, std::uint32_t begin, std::uint32_t end) const {
        for (std::uint32_t n = begin; n < end; ++n) {
            for (int i = 0; i < level; ++i) os << "  ";
            os << (level + 1) << " " << labels_[static_cast<std::size_t>(level)][n];
            if (level + 1 == depth_) {
                if constexpr (!std::is_same_v<P, Unit>) os << " " << payloads_[n];
                os << "\n";
            } else {
                os << "\n";
                auto [cb, ce] = children(level, n);
                dump_level(os, level + 1, cb, ce);
            }
        }
    }

    int depth_;
    std::vector<std::vector<Label>> labels_;
    std::vector<std::vector<std::uint32_t>> child_begin_;
    std::vector<P> payloads_;
};

using IndexTree = CsfTree<Unit>;

// Internal direct constructor for routines that produce already-valid level
// arrays (partial-evaluation contraction, bisection). Skips re-sorting.
struct CsfBuilder {
    template <typename P>
    static CsfTree<P> make(int depth, std::vector<std::vector<typename CsfTree<P>::Label>> labels,
                           std::vector<std::vector<std::uint32_t>> child_begin, std::vector<P> payloads) {
        CsfTree<P> t(depth);
        t.labels_ = std::move(labels);
        t.child_begin_ = std::move(child_begin);
        t.payloads_ = std::move(payloads);
        return t;
    }
};

} // namespace zeroset

#endif // ZEROSET_CSF_HPP
