#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

namespace bagchain {

/// A bag of variable indices drawn from {1,...,d}.
///
/// Stored as the dense multiplicity vector: entry i counts how often variable
/// i+1 occurs. Zero entries are allowed, so the singleton [a] exists in any
/// dimension. The vector is the canonical form; two indices are equal iff their
/// vectors are equal. A multiset index names the mixed partial obtained by
/// differentiating once along each element.
class MultisetIndex {
public:
    using Count = std::uint32_t;

    explicit MultisetIndex(std::vector<Count> multiplicities);
    MultisetIndex(std::initializer_list<Count> multiplicities);

    /// The empty bag over `dim` variables.
    static MultisetIndex empty_bag(std::size_t dim);
    /// The bag [variable] over `dim` variables (1-based variable).
    static MultisetIndex unit(std::size_t dim, std::size_t variable);

    std::size_t dim() const noexcept { return mult_.size(); }
    std::size_t cardinality() const noexcept { return cardinality_; }
    bool empty() const noexcept { return cardinality_ == 0; }

    /// Multiplicity of the 1-based `variable`.
    Count count(std::size_t variable) const;
    std::span<const Count> multiplicities() const noexcept { return mult_; }

    /// Labels in ascending order, e.g. (2,1) -> 1,1,2.
    std::vector<std::size_t> sorted_labels() const;

    /// True when `other` is a sub-bag of this one.
    bool contains(const MultisetIndex& other) const;

    /// Label form, "[1,1,2]".
    std::string to_string() const;

    friend bool operator==(const MultisetIndex&, const MultisetIndex&) = default;
    friend std::strong_ordering operator<=>(const MultisetIndex&, const MultisetIndex&) = default;

private:
    std::vector<Count> mult_;
    std::size_t cardinality_ = 0;
};

/// An ordered tuple listing the elements of a bag with repetition.
struct Labeling {
    std::vector<std::size_t> entries;

    std::size_t size() const noexcept { return entries.size(); }
    friend bool operator==(const Labeling&, const Labeling&) = default;
    friend auto operator<=>(const Labeling&, const Labeling&) = default;
};

/// Bag union: multiplicities add. Throws DimensionMismatch when dims differ.
MultisetIndex union_of(const MultisetIndex& a, const MultisetIndex& b);

/// Removes `part` from `whole`; throws InvalidArgument unless `whole` contains it.
MultisetIndex difference(const MultisetIndex& whole, const MultisetIndex& part);

/// Builds [x_1,...,x_n] over `dim` variables. Label order is irrelevant.
MultisetIndex from_labels(std::size_t dim, std::span<const std::size_t> labels);
MultisetIndex from_labels(std::size_t dim, std::initializer_list<std::size_t> labels);
MultisetIndex from_labels(std::size_t dim, const Labeling& labeling);

/// All distinct labelings of `a` in lexicographic order.
std::vector<Labeling> labelings(const MultisetIndex& a);

/// n! / prod(mult[i]!), the number of labelings of `a`.
mpz_class labeling_count(const MultisetIndex& a);

/// Every index of the given dimension and cardinality, each exactly once.
/// Order is descending lexicographic on the multiplicity vector, so for
/// (2,2) the result is (2,0), (1,1), (0,2).
std::vector<MultisetIndex> enumerate_bag(std::size_t dim, std::size_t n);

/// Every index of the given dimension with cardinality 0..max_order, grouped
/// by ascending cardinality.
std::vector<MultisetIndex> enumerate_bags_up_to(std::size_t dim, std::size_t max_order);

/// C(n + dim - 1, dim - 1), the size of enumerate_bag(dim, n).
mpz_class bag_count(std::size_t dim, std::size_t n);

mpz_class factorial(std::size_t n);
mpz_class binomial(std::size_t n, std::size_t k);

/// Sum of f(x) over the elements of `a`, counted with multiplicity.
template <class F>
auto weighted_sum(const MultisetIndex& a, F&& f) -> std::invoke_result_t<F&, std::size_t> {
    using Result = std::invoke_result_t<F&, std::size_t>;
    Result total{0};
    const auto mult = a.multiplicities();
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] != 0) {
            total += Result(mult[i]) * f(i + 1);
        }
    }
    return total;
}

}  // namespace bagchain
