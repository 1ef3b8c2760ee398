#include <doctest.h>

#include <random>
#include <set>

#include "bagchain/errors.hpp"
#include "bagchain/expr.hpp"
#include "bagchain/partitions.hpp"
#include "bagchain/symbolic.hpp"

using namespace bagchain;

namespace {

std::vector<std::size_t> ones(std::size_t n) { return std::vector<std::size_t>(n, 1); }

}  // namespace

TEST_CASE("order one expansion") {
    const auto e = expand_symbolic(from_labels(2, {1}), 3);
    REQUIRE(e.terms.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(e.terms[j].f_labels == std::vector<std::size_t>{j + 1});
        REQUIRE(e.terms[j].factors.size() == 1);
        CHECK(e.terms[j].factors[0].component == j + 1);
        CHECK(e.terms[j].factors[0].block == from_labels(2, {1}));
        CHECK(e.terms[j].coefficient == 1);
    }
}

TEST_CASE("order two with distinct variables") {
    const auto e = expand_symbolic(from_labels(2, {1, 2}), 2);
    // Two first-order terms, then four second-order terms.
    REQUIRE(e.terms.size() == 6);
    CHECK(e.terms[0].f_labels == std::vector<std::size_t>{1});
    CHECK(e.terms[0].factors[0].block == from_labels(2, {1, 2}));
    CHECK(e.terms[2].f_labels == std::vector<std::size_t>{1, 1});
    CHECK(e.terms[3].f_labels == std::vector<std::size_t>{1, 2});
    CHECK(e.terms[3].factors[0] == GFactor{from_labels(2, {1}), 1});
    CHECK(e.terms[3].factors[1] == GFactor{from_labels(2, {2}), 2});
    for (const auto& term : e.terms) {
        CHECK(term.coefficient == 1);
    }
}

TEST_CASE("repeated index with one component") {
    const auto e = expand_symbolic(MultisetIndex{2}, 1);
    REQUIRE(e.terms.size() == 2);
    CHECK(e.terms[0].f_labels == std::vector<std::size_t>{1});
    CHECK(e.terms[0].factors[0].block == MultisetIndex{2});
    CHECK(e.terms[1].f_labels == std::vector<std::size_t>{1, 1});
    CHECK(e.terms[1].factors[0].block == MultisetIndex{1});
    CHECK(e.terms[1].factors[1].block == MultisetIndex{1});
    CHECK(e.terms[0].coefficient == 1);
    CHECK(e.terms[1].coefficient == 1);
}

TEST_CASE("expansion invariants") {
    for (const auto& alpha : {from_labels(3, {1, 1, 2, 3}), from_labels(2, {1, 1, 2, 2}), from_labels(1, {1, 1, 1})}) {
        for (std::size_t c = 1; c <= 2; ++c) {
            const auto e = expand_symbolic(alpha, c);
            std::set<std::pair<std::vector<std::size_t>, std::string>> keys;
            for (const auto& term : e.terms) {
                CHECK(term.f_labels.size() == term.factors.size());
                std::vector<MultisetIndex> blocks;
                for (const auto& factor : term.factors) {
                    blocks.push_back(factor.block);
                }
                const MultisetPartition p(blocks, alpha.dim());
                CHECK(p.parent() == alpha);
                CHECK(term.coefficient == partition_multiplicity(alpha, p));
                CHECK(keys.insert({term.f_labels, p.to_string()}).second);
            }
            // Each n contributes c^n copies of Pi(alpha, n)'s distinct partitions.
            std::size_t expected = 0;
            std::size_t power = 1;
            for (std::size_t n = 1; n <= alpha.cardinality(); ++n) {
                power *= c;
                expected += power * multiset_partitions(alpha, n).distinct();
            }
            CHECK(e.terms.size() == expected);
        }
    }
}

TEST_CASE("distinct variables give unit coefficients") {
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<MultisetIndex::Count> mult(n, 1);
        const auto e = expand_symbolic(MultisetIndex(mult), 2);
        for (const auto& term : e.terms) {
            CHECK(term.coefficient == 1);
        }
    }
    // A repeated variable is where multiplicities above one appear.
    const auto e = expand_symbolic(from_labels(2, {1, 1, 2}), 1);
    std::set<std::string> coefficients;
    for (const auto& term : e.terms) {
        coefficients.insert(term.coefficient.get_str());
    }
    CHECK(coefficients == std::set<std::string>{"1", "2"});
}

TEST_CASE("expansion errors") {
    CHECK_THROWS_AS(expand_symbolic(MultisetIndex{0, 0}, 2), InvalidArgument);
    CHECK_THROWS_AS(expand_symbolic(MultisetIndex{1}, 0), InvalidArgument);
}

TEST_CASE("univariate coefficient table") {
    const auto one = faa_di_bruno_1d(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == FaaTerm{1, {1}, 1});

    const auto three = faa_di_bruno_1d(3);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == FaaTerm{1, {0, 0, 1}, 1});
    CHECK(three[1] == FaaTerm{2, {1, 1, 0}, 3});
    CHECK(three[2] == FaaTerm{3, {3, 0, 0}, 1});

    const auto four = faa_di_bruno_1d(4);
    REQUIRE(four.size() == 5);
    std::vector<std::string> coefficients;
    mpz_class sum = 0;
    for (const auto& row : four) {
        coefficients.push_back(row.coefficient.get_str());
        sum += row.coefficient;
    }
    CHECK(coefficients == std::vector<std::string>{"1", "4", "3", "6", "1"});
    CHECK(sum == bell(4));
    CHECK_THROWS_AS(faa_di_bruno_1d(0), InvalidArgument);
}

TEST_CASE("univariate table agrees with repeated differentiation") {
    // (f o g)^(n)(x0) = sum coefficient * f^(k)(g(x0)) * prod (g^(i)(x0))^m_i
    std::mt19937_64 rng(2024);
    for (std::size_t n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            const Expr f = random_polynomial(rng, 1, static_cast<unsigned>(n));
            const Expr g = random_polynomial(rng, 1, static_cast<unsigned>(n));
            const std::vector<Expr> gs{g};
            const std::vector<Rational> x0{Rational(2, 3)};
            const MultisetIndex alpha{static_cast<MultisetIndex::Count>(n)};
            const Rational direct = evaluate(diff_multi(substitute(f, gs), alpha), x0);

            const std::vector<Rational> gx{evaluate(g, x0)};
            Rational formula = 0;
            for (const auto& row : faa_di_bruno_1d(n)) {
                Rational term = Rational(row.coefficient) *
                                evaluate(diff_multi(f, MultisetIndex{static_cast<MultisetIndex::Count>(row.k)}), gx);
                for (std::size_t i = 1; i <= n; ++i) {
                    const Rational gi = evaluate(diff_multi(g, MultisetIndex{static_cast<MultisetIndex::Count>(i)}), x0);
                    for (std::size_t r = 0; r < row.m[i - 1]; ++r) {
                        term *= gi;
                    }
                }
                formula += term;
            }
            CHECK(direct == formula);
        }
    }
}

TEST_CASE("univariate expansion collects to the coefficient table") {
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto collected = collect_by_block_sizes(expand_symbolic(from_labels(1, ones(n)), 1));
        const auto table = faa_di_bruno_1d(n);
        REQUIRE(collected.size() == table.size());
        for (const auto& row : table) {
            CHECK(collected.at(row.m) == row.coefficient);
        }
    }
}

TEST_CASE("summation-form rendering") {
    const auto text = render_summation_form(from_labels(2, {1, 2}), 2);
    CHECK(text ==
          "∂_{12}(f∘g)\n"
          "  = Σ_{b1,b2=1}^{2} ∂_{b1 b2}f · ∂_{1}g^{b1} · ∂_{2}g^{b2}\n"
          "  + Σ_{b1=1}^{2} ∂_{b1}f · ∂_{12}g^{b1}\n");

    const auto repeated = render_summation_form(from_labels(2, {1, 1, 2}), 1);
    CHECK(repeated.find("2 · Σ_{b1,b2=1}^{1} ∂_{b1 b2}f · ∂_{12}g^{b1} · ∂_{1}g^{b2}") != std::string::npos);

    const auto terms = render_terms(expand_symbolic(MultisetIndex{2}, 1));
    CHECK(terms ==
          "∂_{11}(f∘g)\n"
          "  = ∂_{1}f · ∂_{11}g^{1}\n"
          "  + ∂_{11}f · ∂_{1}g^{1} · ∂_{1}g^{1}\n");
}
