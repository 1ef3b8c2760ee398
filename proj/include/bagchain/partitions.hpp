#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bagchain/multiset.hpp"

namespace bagchain {

/// A set partition of {1,...,n}: blocks sorted internally, ordered by least element.
using SetPartition = std::vector<std::vector<std::size_t>>;

/// Canonical block order: larger cardinality first, then descending
/// multiplicity vector (so [1,1] precedes [1,2] precedes [2,2]).
bool block_precedes(const MultisetIndex& a, const MultisetIndex& b);

/// A multiset of nonempty blocks, kept sorted in the canonical block order so
/// that equal partitions have equal block sequences.
class MultisetPartition {
public:
    /// Sorts `blocks` canonically. Throws InvalidArgument on an empty block or
    /// DimensionMismatch when blocks disagree on dimension.
    explicit MultisetPartition(std::vector<MultisetIndex> blocks);
    /// As above; `dim` also fixes the dimension of the empty partition.
    MultisetPartition(std::vector<MultisetIndex> blocks, std::size_t dim);

    std::span<const MultisetIndex> blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    std::size_t dim() const noexcept { return dim_; }

    /// Union of all blocks.
    MultisetIndex parent() const;

    /// Adds `block` and re-sorts.
    MultisetPartition with_block(const MultisetIndex& block) const;
    /// Replaces block `position` by its union with the singleton [variable].
    MultisetPartition with_merged(std::size_t position, std::size_t variable) const;

    std::string to_string() const;

    friend bool operator==(const MultisetPartition&, const MultisetPartition&) = default;
    /// Lexicographic over blocks in the canonical block order.
    friend bool operator<(const MultisetPartition& a, const MultisetPartition& b);

private:
    std::vector<MultisetIndex> blocks_;
    std::size_t dim_ = 0;
};

struct PartitionEntry {
    MultisetPartition partition;
    mpz_class multiplicity;

    friend bool operator==(const PartitionEntry& a, const PartitionEntry& b) {
        return a.partition == b.partition && a.multiplicity == b.multiplicity;
    }
};

/// The multiset Pi(parent, order): distinct partitions with their multiplicities,
/// entries sorted by partition.
struct PartitionEnumeration {
    MultisetIndex parent;
    std::size_t order = 0;
    std::vector<PartitionEntry> entries;

    std::size_t distinct() const noexcept { return entries.size(); }
    /// Sum of multiplicities.
    mpz_class cardinality() const;

    friend bool operator==(const PartitionEnumeration&, const PartitionEnumeration&) = default;
};

/// Calls `visit` with every restricted growth string a[0..n) describing a
/// partition of {1,...,n} into exactly k blocks (a[0] = 0, a[i] <= 1 + max a[<i]),
/// in lexicographic order.
void for_each_restricted_growth_string(std::size_t n, std::size_t k,
                                       const std::function<void(std::span<const std::size_t>)>& visit);

/// Set partitions of {1,...,n} into exactly k blocks, in restricted-growth-string
/// order. Empty when k == 0 or k > n (except n == k == 0, which yields the
/// single empty partition).
std::vector<SetPartition> set_partitions(std::size_t n, std::size_t k);

/// Pi(a, k) computed directly: distinct canonical block sequences generated by
/// recursive descent, multiplicities from the closed-form count.
PartitionEnumeration multiset_partitions(const MultisetIndex& a, std::size_t k);

/// Pi(a, k) computed from the definition: project every set partition of
/// {1,...,|a|} through `labeling` and tally. Uses the sorted labeling when
/// none is given.
PartitionEnumeration multiset_partitions_by_projection(const MultisetIndex& a, std::size_t k);
PartitionEnumeration multiset_partitions_by_projection(const MultisetIndex& a, std::size_t k,
                                                       const Labeling& labeling);

/// Multiset partition generated by `set_partition` through `labeling`.
MultisetPartition project(const SetPartition& set_partition, const Labeling& labeling,
                          std::size_t dim);

/// Number of set partitions of {1,...,|a|} generating `p`, closed form.
/// Throws InvalidArgument when `p` does not partition `a`.
mpz_class partition_multiplicity(const MultisetIndex& a, const MultisetPartition& p);

/// Same count by brute force over set partitions, through the given labeling.
mpz_class count_generating_set_partitions(const Labeling& labeling, std::size_t dim,
                                          const MultisetPartition& p);

/// Builds Pi([a0] u alpha, n+1) from Pi(alpha, n) and Pi(alpha, n+1): either
/// [a0] is a block of its own, or a0 joins one block of a partition of alpha.
/// Throws InvalidArgument when the inputs disagree on parent or order.
PartitionEnumeration extend_partitions(std::size_t a0, const PartitionEnumeration& prev_n,
                                       const PartitionEnumeration& prev_n1);

mpz_class stirling2(std::size_t n, std::size_t k);
mpz_class bell(std::size_t n);

}  // namespace bagchain
