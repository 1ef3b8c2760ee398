#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "bagchain/multiset.hpp"
#include "bagchain/tensor.hpp"

namespace bagchain {

/// Immutable expression tree used as a brute-force differentiation oracle.
///
/// Subtrees are shared, so derivatives are DAGs; evaluation and
/// differentiation memoise on node identity to stay linear in DAG size.
class Expr {
public:
    enum class Kind { constant, variable, sum, product, negate, power, sin, cos, exp };

    static Expr constant(Rational value);
    /// 1-based variable x_index.
    static Expr variable(std::size_t index);
    static Expr sum(Expr a, Expr b);
    static Expr product(Expr a, Expr b);
    static Expr negate(Expr a);
    static Expr power(Expr base, unsigned exponent);
    static Expr sin(Expr a);
    static Expr cos(Expr a);
    static Expr exp(Expr a);

    Kind kind() const noexcept;
    const Rational& value() const;
    std::size_t variable_index() const;
    unsigned exponent() const;
    const Expr& lhs() const;
    const Expr& rhs() const;
    /// Operand of negate, power, sin, cos, exp.
    const Expr& operand() const { return lhs(); }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    /// True when no sin/cos/exp node occurs.
    bool is_polynomial() const;
    /// Largest variable index used, 0 for constants.
    std::size_t max_variable() const;
    /// Distinct nodes in the DAG.
    std::size_t node_count() const;

    /// Prefix s-expression, e.g. (* (^ x1 2) x2).
    std::string to_string() const;

    const void* identity() const noexcept { return node_.get(); }

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Partial derivative along the 1-based variable `v`. Only literal zeros and
/// ones (and constant-constant arithmetic) are folded.
Expr diff(const Expr& e, std::size_t v);

/// Differentiates along each entry of the labeling in turn.
Expr diff_along(const Expr& e, const Labeling& labeling);

/// Differentiates along the sorted labeling of alpha.
Expr diff_multi(const Expr& e, const MultisetIndex& alpha);

/// Exact evaluation; throws InvalidArgument on sin/cos/exp or a missing variable.
Rational evaluate(const Expr& e, std::span<const Rational> point);
double evaluate(const Expr& e, std::span<const double> point);

/// Replaces x_i by replacements[i-1].
Expr substitute(const Expr& e, std::span<const Expr> replacements);

/// Parses the prefix s-expression syntax:
///   atom  := integer | integer/integer | x<i> | u<i>
///   list  := (+ e e ...) | (* e e ...) | (- e) | (- e e) | (^ e k)
///          | (sin e) | (cos e) | (exp e)
/// Throws ParseError carrying the 0-based character offset.
Expr parse_expr(std::string_view text);

/// Random polynomial in `arity` variables of total degree <= max_degree; each
/// monomial is present with probability 1/2 and carries a coefficient p/q with
/// |p| <= 9, 1 <= q <= 9.
Expr random_polynomial(std::mt19937_64& rng, std::size_t arity, unsigned max_degree);

}  // namespace bagchain
