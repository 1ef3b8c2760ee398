#include <doctest.h>

#include <random>
#include <set>

#include "bagchain/errors.hpp"
#include "bagchain/multiset.hpp"

using namespace bagchain;

namespace {

// Brute force: every tuple in {1..dim}^n whose bag is `a`.
std::set<std::vector<std::size_t>> brute_labelings(const MultisetIndex& a) {
    std::set<std::vector<std::size_t>> out;
    const std::size_t n = a.cardinality();
    std::vector<std::size_t> tuple(n, 1);
    for (;;) {
        if (from_labels(a.dim(), tuple) == a) {
            out.insert(tuple);
        }
        std::size_t i = n;
        while (i > 0 && tuple[i - 1] == a.dim()) {
            tuple[--i] = 1;
        }
        if (i == 0) {
            break;
        }
        ++tuple[i - 1];
    }
    return out;
}

MultisetIndex random_index(std::mt19937_64& rng, std::size_t dim, std::size_t max_each) {
    std::uniform_int_distribution<unsigned> pick(0, static_cast<unsigned>(max_each));
    std::vector<MultisetIndex::Count> mult(dim);
    for (auto& m : mult) {
        m = pick(rng);
    }
    return MultisetIndex(mult);
}

}  // namespace

TEST_CASE("union adds multiplicities") {
    CHECK(union_of(from_labels(2, {1, 1}), from_labels(2, {2})) == MultisetIndex{2, 1});
    CHECK(union_of(from_labels(3, {1, 2}), from_labels(3, {1, 3})) == MultisetIndex{2, 1, 1});

    const MultisetIndex alpha{1, 0, 3};
    CHECK(union_of(alpha, MultisetIndex::empty_bag(3)) == alpha);
    CHECK(union_of(alpha, alpha).cardinality() == 2 * alpha.cardinality());

    CHECK_THROWS_AS(union_of(MultisetIndex{1}, MultisetIndex{1, 0}), DimensionMismatch);
}

TEST_CASE("union is commutative and associative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_index(rng, 3, 3);
        const auto b = random_index(rng, 3, 3);
        const auto c = random_index(rng, 3, 3);
        CHECK(union_of(a, b) == union_of(b, a));
        CHECK(union_of(union_of(a, b), c) == union_of(a, union_of(b, c)));
        CHECK(union_of(a, MultisetIndex::empty_bag(3)) == a);
    }
}

TEST_CASE("from_labels counts occurrences and ignores order") {
    CHECK(from_labels(2, {1, 1, 2}) == MultisetIndex{2, 1});
    CHECK(from_labels(2, {2, 1, 1}) == from_labels(2, {1, 1, 2}));
    CHECK(from_labels(3, {}) == MultisetIndex{0, 0, 0});
    CHECK(from_labels(3, {}).empty());

    try {
        from_labels(2, {1, 3});
        FAIL("expected an error");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("label 3") != std::string::npos);
    }
    CHECK_THROWS_AS(from_labels(2, {0}), InvalidArgument);
    CHECK_THROWS_AS(MultisetIndex(std::vector<MultisetIndex::Count>{}), InvalidArgument);
}

TEST_CASE("labelings of [1,1,2] in lexicographic order") {
    const auto all = labelings(MultisetIndex{2, 1});
    REQUIRE(all.size() == 3);
    CHECK(all[0].entries == std::vector<std::size_t>{1, 1, 2});
    CHECK(all[1].entries == std::vector<std::size_t>{1, 2, 1});
    CHECK(all[2].entries == std::vector<std::size_t>{2, 1, 1});
    CHECK(labeling_count(MultisetIndex{2, 1}) == 3);
}

TEST_CASE("degenerate labelings") {
    const auto empty = labelings(MultisetIndex{0, 0, 0});
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].entries.empty());

    const auto single = labelings(MultisetIndex{3, 0});
    REQUIRE(single.size() == 1);
    CHECK(single[0].entries == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("labelings match brute force and round-trip through from_labels") {
    for (std::size_t dim = 1; dim <= 4; ++dim) {
        for (std::size_t n = 0; n <= (dim <= 2 ? 8u : dim == 3 ? 6u : 5u); ++n) {
            for (const auto& alpha : enumerate_bag(dim, n)) {
                const auto all = labelings(alpha);
                CHECK(mpz_class(static_cast<unsigned long>(all.size())) == labeling_count(alpha));
                std::set<std::vector<std::size_t>> seen;
                for (const auto& l : all) {
                    CHECK(from_labels(dim, l) == alpha);
                    seen.insert(l.entries);
                }
                CHECK(seen.size() == all.size());
                CHECK(std::is_sorted(all.begin(), all.end()));
                if (n <= 6) {
                    CHECK(seen == brute_labelings(alpha));
                }
            }
        }
    }
}

TEST_CASE("labeling count up to cardinality 8") {
    // |labelings| = n! / prod m_i!, checked against enumeration for all dim <= 2 bags.
    for (std::size_t n = 0; n <= 8; ++n) {
        for (const auto& alpha : enumerate_bag(2, n)) {
            CHECK(labelings(alpha).size() == labeling_count(alpha).get_ui());
        }
    }
    CHECK(labeling_count(MultisetIndex{3, 3, 2}) == 560);
}

TEST_CASE("weighted sum follows the multiset summation convention") {
    const auto alpha = from_labels(2, {1, 1, 2});
    CHECK(weighted_sum(alpha, [](std::size_t x) { return static_cast<long>(x); }) == 4);
    CHECK(weighted_sum(alpha, [](std::size_t x) { return static_cast<long>(x * x); }) == 6);
    CHECK(weighted_sum(MultisetIndex{0, 0}, [](std::size_t) { return 5L; }) == 0);
    const mpq_class half =
        weighted_sum(alpha, [](std::size_t x) { return mpq_class(1, static_cast<unsigned long>(x) + 1); });
    CHECK(half == mpq_class(4, 3));
}

TEST_CASE("enumerate_bag") {
    const auto bags = enumerate_bag(2, 2);
    REQUIRE(bags.size() == 3);
    CHECK(bags[0] == MultisetIndex{2, 0});
    CHECK(bags[1] == MultisetIndex{1, 1});
    CHECK(bags[2] == MultisetIndex{0, 2});

    const auto empty = enumerate_bag(4, 0);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0] == MultisetIndex::empty_bag(4));

    const auto one_var = enumerate_bag(1, 5);
    REQUIRE(one_var.size() == 1);
    CHECK(one_var[0] == MultisetIndex{5});
}

TEST_CASE("enumerate_bag has C(n+d-1, d-1) distinct members") {
    for (std::size_t dim = 1; dim <= 5; ++dim) {
        for (std::size_t n = 0; n <= 8; ++n) {
            const auto bags = enumerate_bag(dim, n);
            CHECK(mpz_class(static_cast<unsigned long>(bags.size())) == bag_count(dim, n));
            std::set<MultisetIndex> distinct(bags.begin(), bags.end());
            CHECK(distinct.size() == bags.size());
            for (const auto& b : bags) {
                CHECK(b.dim() == dim);
                CHECK(b.cardinality() == n);
            }
        }
    }
    CHECK(bag_count(3, 5) == 21);
}

TEST_CASE("difference and containment") {
    const MultisetIndex whole{2, 1, 0};
    CHECK(whole.contains(MultisetIndex{1, 1, 0}));
    CHECK_FALSE(whole.contains(MultisetIndex{0, 0, 1}));
    CHECK(difference(whole, MultisetIndex{1, 1, 0}) == MultisetIndex{1, 0, 0});
    CHECK_THROWS_AS(difference(whole, MultisetIndex{0, 2, 0}), InvalidArgument);
    CHECK(whole.to_string() == "[1,1,2]");
    CHECK(whole.count(1) == 2);
    CHECK_THROWS_AS(whole.count(4), InvalidArgument);
}
