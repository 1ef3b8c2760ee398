#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bagchain/expr.hpp"
#include "bagchain/multiset.hpp"
#include "bagchain/tensor.hpp"

namespace bagchain {

/// Derivative tensor of `e` (over `dim` variables) at `point` by repeated
/// symbolic differentiation. Each index is differentiated from its parent
/// index, so every partial is computed once.
template <class T>
DerivativeTensor<T> jet_of_function(const Expr& e, std::span<const T> point, std::size_t order);

/// MapJet of the map whose b-th component is exprs[b-1].
template <class T>
MapJet<T> jet_of_map(std::span<const Expr> exprs, std::span<const T> point, std::size_t order);

/// Agreement of one entry of the composed jet.
struct IndexAgreement {
    MultisetIndex index;
    std::string direct;    // differentiating f(g(x)) itself
    std::string composed;  // chain rule on the jets of f and g
    bool agree = false;
    double relative_error = 0.0;
};

struct CompositionReport {
    Mode mode = Mode::rational;
    std::size_t order = 0;
    std::vector<IndexAgreement> indices;
    double max_relative_error = 0.0;

    bool all_agree() const;
};

/// Float tolerance: |a - b| <= 1e-9 * max(1, |a|, |b|).
inline constexpr double kFloatTolerance = 1e-9;
double relative_error(double a, double b);

/// Runs both sides of the chain rule for f o g at `point`:
/// the jet of the substituted expression f(g(x)), and compose_jet applied to
/// f's jet at g(point) and g's jet at point. Exact comparison when every
/// expression is polynomial, float comparison with kFloatTolerance otherwise.
/// `force_float` selects float mode even for polynomials.
CompositionReport verify_composition(const Expr& f, std::span<const Expr> g,
                                     std::span<const Rational> point, std::size_t order,
                                     bool force_float = false);

extern template DerivativeTensor<Rational> jet_of_function(const Expr&, std::span<const Rational>,
                                                           std::size_t);
extern template DerivativeTensor<double> jet_of_function(const Expr&, std::span<const double>,
                                                         std::size_t);
extern template MapJet<Rational> jet_of_map(std::span<const Expr>, std::span<const Rational>,
                                            std::size_t);
extern template MapJet<double> jet_of_map(std::span<const Expr>, std::span<const double>, std::size_t);

}  // namespace bagchain
