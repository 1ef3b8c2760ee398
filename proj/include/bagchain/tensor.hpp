#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bagchain/multiset.hpp"

namespace bagchain {

using Rational = mpq_class;

enum class Mode { rational, floating };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr Mode mode = Mode::rational;
    static Rational from_count(const mpz_class& n) { return Rational(n); }
};

template <>
struct ScalarTraits<double> {
    static constexpr Mode mode = Mode::floating;
    static double from_count(const mpz_class& n) { return n.get_d(); }
};

/// Every mixed partial of one scalar function at a point, up to `order`.
///
/// Keyed by MultisetIndex, so each mixed partial has exactly one slot. The
/// tensor is dense: all indices of cardinality 0..order exist, zero-initialised.
template <class T>
class DerivativeTensor {
public:
    using Scalar = T;

    DerivativeTensor(std::size_t dim, std::size_t order);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t order() const noexcept { return order_; }

    /// Throws DimensionMismatch or InsufficientOrder for a foreign index.
    const T& at(const MultisetIndex& index) const;
    T& at(const MultisetIndex& index);

    /// The order-0 entry, i.e. the function value.
    const T& value() const { return at(MultisetIndex::empty_bag(dim_)); }

    const std::map<MultisetIndex, T>& entries() const noexcept { return entries_; }

    /// Copy restricted to cardinality <= order.
    DerivativeTensor truncated(std::size_t order) const;

    friend bool operator==(const DerivativeTensor&, const DerivativeTensor&) = default;

private:
    void check(const MultisetIndex& index) const;

    std::size_t dim_;
    std::size_t order_;
    std::map<MultisetIndex, T> entries_;
};

/// Value and derivative tensors of every component of g: R^d -> R^c at a base point.
template <class T>
class MapJet {
public:
    using Scalar = T;

    /// Throws DimensionMismatch unless all components share dim == base_point.size(),
    /// and InvalidArgument when components disagree on order or there are none.
    MapJet(std::vector<T> base_point, std::vector<DerivativeTensor<T>> components);

    std::size_t in_dim() const noexcept { return base_point_.size(); }
    std::size_t out_dim() const noexcept { return components_.size(); }
    std::size_t order() const noexcept { return components_.front().order(); }

    const std::vector<T>& base_point() const noexcept { return base_point_; }
    const std::vector<DerivativeTensor<T>>& components() const noexcept { return components_; }
    /// 1-based component, matching g^b.
    const DerivativeTensor<T>& component(std::size_t b) const;

    friend bool operator==(const MapJet&, const MapJet&) = default;

private:
    std::vector<T> base_point_;
    std::vector<DerivativeTensor<T>> components_;
};

/// The jet of x -> x at `base_point`: first-order Kronecker delta, higher orders zero.
template <class T>
MapJet<T> identity_jet(std::vector<T> base_point, std::size_t order);

extern template class DerivativeTensor<Rational>;
extern template class DerivativeTensor<double>;
extern template class MapJet<Rational>;
extern template class MapJet<double>;
extern template MapJet<Rational> identity_jet(std::vector<Rational>, std::size_t);
extern template MapJet<double> identity_jet(std::vector<double>, std::size_t);

}  // namespace bagchain
