#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "zeroset/csf.hpp"

using zeroset::CsfTree;
using zeroset::IndexTree;
using zeroset::Unit;

namespace {

// The seven-tuple support used throughout: {(0,0),(0,1),(1,0),(1,1),(3,0),(3,3),(3,4)}.
std::vector<std::vector<std::uint32_t>> seven_support() {
    return {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {3, 0}, {3, 3}, {3, 4}};
}

} // namespace

TEST_CASE("build from seven-tuple support") {
    auto t = IndexTree::from_tuples(2, seven_support());
    CHECK(t.depth() == 2);
    CHECK(t.tuple_count() == 7);
    auto roots = t.level_labels(0);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == 0);
    CHECK(roots[1] == 1);
    CHECK(roots[2] == 3);
    auto [b, e] = t.children(0, 2); // node labeled 3
    REQUIRE(e - b == 3);
    auto leaves = t.level_labels(1);
    CHECK(leaves[b] == 0);
    CHECK(leaves[b + 1] == 3);
    CHECK(leaves[b + 2] == 4);
}

TEST_CASE("build edge cases") {
    auto single = IndexTree::from_tuples(1, {{5}});
    CHECK(single.tuple_count() == 1);
    CHECK(single.level_labels(0)[0] == 5);

    auto dense = IndexTree::from_tuples(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(dense.level_labels(0).size() == 2);
    CHECK(dense.projection_count(2) == 4);

    CHECK_THROWS_AS(IndexTree::from_tuples(2, {{0, 0}, {0, 0}}), zeroset::DuplicateTupleError);
    CHECK_THROWS_AS(IndexTree::from_tuples(2, {{0, 0}, {0, 1, 2}}), zeroset::ArityMismatchError);
}

TEST_CASE("projection counts on the seven-tuple support") {
    auto t = IndexTree::from_tuples(2, seven_support());
    CHECK(t.projection_count(1) == 3);
    CHECK(t.projection_count(2) == 7);
    CHECK(t.reverse_projection_count(1) == 4); // distinct last coordinates {0,1,3,4}
    CHECK(t.reverse_projection_count(2) == 7);
    CHECK_THROWS_AS(t.projection_count(0), zeroset::IndexOutOfRangeError);
    CHECK_THROWS_AS(t.projection_count(3), zeroset::IndexOutOfRangeError);

    auto dense = IndexTree::from_tuples(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(dense.reverse_projection_count(1) == 2);
}

TEST_CASE("iteration is lexicographic") {
    auto t = IndexTree::from_tuples(2, seven_support());
    std::vector<std::vector<std::uint32_t>> seen = t.tuples();
    REQUIRE(seen.size() == 7);
    CHECK(seen.front() == std::vector<std::uint32_t>{0, 0});
    CHECK(seen.back() == std::vector<std::uint32_t>{3, 4});
    CHECK(std::is_sorted(seen.begin(), seen.end()));

    IndexTree empty(3);
    std::size_t n = 0;
    empty.for_each_tuple([&](auto) { ++n; });
    CHECK(n == 0);

    auto single = IndexTree::from_tuples(1, {{5}});
    n = 0;
    single.for_each_tuple([&](auto) { ++n; });
    CHECK(n == 1);
}

TEST_CASE("debug dump golden file for the seven-tuple polynomial tree") {
    // 5 + x2 + 7 x1 + 3 x1 x2 + 8 x1^3 + 4 x1^3 x2^3 + 9 x1^3 x2^4
    std::vector<std::pair<std::vector<std::uint32_t>, double>> entries = {
        {{0, 0}, 5}, {{0, 1}, 1}, {{1, 0}, 7}, {{1, 1}, 3}, {{3, 0}, 8}, {{3, 3}, 4}, {{3, 4}, 9}};
    auto t = CsfTree<double>::from_entries(2, entries);
    const char* expected =
        "1 0\n"
        "  2 0 5\n"
        "  2 1 1\n"
        "1 1\n"
        "  2 0 7\n"
        "  2 1 3\n"
        "1 3\n"
        "  2 0 8\n"
        "  2 3 4\n"
        "  2 4 9\n";
    CHECK(t.dump() == expected);
}

TEST_CASE("round trip on random tuple sets") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 40; ++iter) {
        int k = 1 + static_cast<int>(rng() % 6);
        std::size_t count = 1 + static_cast<std::size_t>(rng() % 10000);
        auto tuples = ztest::random_tuples(rng, k, 9, count);
        auto t = IndexTree::from_tuples(k, tuples);
        CHECK(t.tuples() == tuples); // random_tuples returns a sorted set
        CHECK(t.tuple_count() == tuples.size());

        for (int i = 1; i <= k; ++i) {
            CHECK(t.projection_count(i) == ztest::brute_projection_count(tuples, i, false));
            CHECK(t.reverse_projection_count(i) == ztest::brute_projection_count(tuples, i, true));
            CHECK(t.projection_count(i) <= tuples.size());
        }
    }
}

TEST_CASE("payload round trip") {
    std::vector<std::pair<std::vector<std::uint32_t>, int>> entries = {
        {{2, 1}, 10}, {{0, 3}, -4}, {{2, 0}, 7}};
    auto t = CsfTree<int>::from_entries(2, entries);
    std::vector<int> got;
    t.for_each([&](auto, const int& p) { got.push_back(p); });
    CHECK(got == std::vector<int>{-4, 7, 10});

    auto replaced = t.with_payloads(std::vector<double>{1.5, 2.5, 3.5});
    CHECK(replaced.tuples() == t.tuples());
    CHECK(replaced.payloads()[2] == 3.5);
}
