#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bagchain/multiset.hpp"
#include "bagchain/partitions.hpp"
#include "bagchain/tensor.hpp"

namespace bagchain {

// Notation: g: R^d -> R^c is given by its MapJet at x, f: R^c -> R by its
// DerivativeTensor at g(x). Every routine below is pure; the caller guarantees
// that f's tensor was taken at g(x).

/// Mixed partial of f o g along `alpha`:
///
///   sum_{n=1}^{|alpha|} sum_{b in {1..c}^n} sum_{[a_1..a_n] in Pi(alpha,n)}
///       mult * d_{b_1..b_n} f * prod_k d_{a_k} g^{b_k}
///
/// with the partition sum taken with multiplicity. Throws DimensionMismatch or
/// InsufficientOrder naming the offending input; InvalidArgument for empty alpha.
template <class T>
T compose_derivative(const MultisetIndex& alpha, const DerivativeTensor<T>& f,
                     const MapJet<T>& g);

/// Same quantity, regrouped over beta in Bag^n(c):
///
///   sum_n sum_{beta} sum_{Pi(alpha,n)} mult * d_beta f * d_{[a_1..a_n]} g^beta
///
/// Kept as an independent code path so the two forms can check each other.
template <class T>
T compose_derivative_beta(const MultisetIndex& alpha, const DerivativeTensor<T>& f,
                          const MapJet<T>& g);

/// Sum over the labelings (b_1..b_n) of `beta` of prod_k d_{blocks[k]} g^{b_k}.
/// Blocks pair with labeling positions in the order given. Throws
/// InvalidArgument when |beta| != blocks.size().
template <class T>
T g_beta_derivative(std::span<const MultisetIndex> blocks, const MultisetIndex& beta,
                    const MapJet<T>& g);

/// Dense jet of f o g up to `order`; the value slot is f's value.
template <class T>
DerivativeTensor<T> compose_jet(const DerivativeTensor<T>& f, const MapJet<T>& g, std::size_t order);

extern template Rational compose_derivative(const MultisetIndex&, const DerivativeTensor<Rational>&,
                                            const MapJet<Rational>&);
extern template double compose_derivative(const MultisetIndex&, const DerivativeTensor<double>&,
                                          const MapJet<double>&);
extern template Rational compose_derivative_beta(const MultisetIndex&, const DerivativeTensor<Rational>&,
                                                 const MapJet<Rational>&);
extern template double compose_derivative_beta(const MultisetIndex&, const DerivativeTensor<double>&,
                                               const MapJet<double>&);
extern template Rational g_beta_derivative(std::span<const MultisetIndex>, const MultisetIndex&,
                                           const MapJet<Rational>&);
extern template double g_beta_derivative(std::span<const MultisetIndex>, const MultisetIndex&,
                                         const MapJet<double>&);
extern template DerivativeTensor<Rational> compose_jet(const DerivativeTensor<Rational>&,
                                                       const MapJet<Rational>&, std::size_t);
extern template DerivativeTensor<double> compose_jet(const DerivativeTensor<double>&,
                                                     const MapJet<double>&, std::size_t);

}  // namespace bagchain
