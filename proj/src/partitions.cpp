#include "bagchain/partitions.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "bagchain/errors.hpp"

namespace bagchain {

bool block_precedes(const MultisetIndex& a, const MultisetIndex& b) {
    if (a.cardinality() != b.cardinality()) {
        return a.cardinality() > b.cardinality();
    }
    return a > b;
}

MultisetPartition::MultisetPartition(std::vector<MultisetIndex> blocks)
    : MultisetPartition(std::move(blocks), 0) {}

MultisetPartition::MultisetPartition(std::vector<MultisetIndex> blocks, std::size_t dim)
    : blocks_(std::move(blocks)), dim_(dim) {
    if (blocks_.empty() && dim_ == 0) {
        throw InvalidArgument("an empty multiset partition needs an explicit dimension");
    }
    if (dim_ == 0) {
        dim_ = blocks_.front().dim();
    }
    for (const auto& block : blocks_) {
        if (block.dim() != dim_) {
            throw DimensionMismatch("partition block " + block.to_string() + " has dimension " +
                                    std::to_string(block.dim()) + ", expected " +
                                    std::to_string(dim_));
        }
        if (block.empty()) {
            throw InvalidArgument("partition blocks must be nonempty");
        }
    }
    std::sort(blocks_.begin(), blocks_.end(), block_precedes);
}

MultisetIndex MultisetPartition::parent() const {
    auto total = MultisetIndex::empty_bag(dim_);
    for (const auto& block : blocks_) {
        total = union_of(total, block);
    }
    return total;
}

MultisetPartition MultisetPartition::with_block(const MultisetIndex& block) const {
    auto blocks = blocks_;
    blocks.push_back(block);
    return MultisetPartition(std::move(blocks), dim_);
}

MultisetPartition MultisetPartition::with_merged(std::size_t position, std::size_t variable) const {
    if (position >= blocks_.size()) {
        throw InvalidArgument("block position out of range");
    }
    auto blocks = blocks_;
    blocks[position] = union_of(blocks[position], MultisetIndex::unit(dim_, variable));
    return MultisetPartition(std::move(blocks), dim_);
}

std::string MultisetPartition::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        out << (i ? "," : "") << blocks_[i].to_string();
    }
    out << ']';
    return out.str();
}

bool operator<(const MultisetPartition& a, const MultisetPartition& b) {
    return std::lexicographical_compare(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin(),
                                        b.blocks_.end(), block_precedes);
}

mpz_class PartitionEnumeration::cardinality() const {
    mpz_class total = 0;
    for (const auto& entry : entries) {
        total += entry.multiplicity;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Set partitions

namespace {

void grow(std::vector<std::size_t>& rgs, std::size_t position, std::size_t used, std::size_t k,
          const std::function<void(std::span<const std::size_t>)>& visit) {
    const std::size_t n = rgs.size();
    if (position == n) {
        if (used == k) {
            visit(rgs);
        }
        return;
    }
    const std::size_t highest = std::min(used, k - 1);
    for (std::size_t value = 0; value <= highest; ++value) {
        const std::size_t now_used = std::max(used, value + 1);
        if (n - position - 1 < k - now_used) {
            continue;
        }
        rgs[position] = value;
        grow(rgs, position + 1, now_used, k, visit);
    }
}

}  // namespace

void for_each_restricted_growth_string(std::size_t n, std::size_t k,
                                       const std::function<void(std::span<const std::size_t>)>& visit) {
    if (k > n || (k == 0 && n > 0)) {
        return;
    }
    std::vector<std::size_t> rgs(n, 0);
    if (n == 0) {
        visit(rgs);
        return;
    }
    grow(rgs, 0, 0, k, visit);
}

std::vector<SetPartition> set_partitions(std::size_t n, std::size_t k) {
    std::vector<SetPartition> out;
    for_each_restricted_growth_string(n, k, [&](std::span<const std::size_t> rgs) {
        SetPartition partition(k);
        for (std::size_t i = 0; i < rgs.size(); ++i) {
            partition[rgs[i]].push_back(i + 1);
        }
        out.push_back(std::move(partition));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Reference generator: projection of set partitions

MultisetPartition project(const SetPartition& set_partition, const Labeling& labeling,
                          std::size_t dim) {
    std::vector<MultisetIndex> blocks;
    blocks.reserve(set_partition.size());
    for (const auto& block : set_partition) {
        std::vector<MultisetIndex::Count> mult(dim, 0);
        for (std::size_t element : block) {
            if (element < 1 || element > labeling.size()) {
                throw InvalidArgument("set partition element outside the labeling");
            }
            const std::size_t label = labeling.entries[element - 1];
            if (label < 1 || label > dim) {
                throw InvalidArgument("label " + std::to_string(label) + " outside {1,...," +
                                      std::to_string(dim) + "}");
            }
            ++mult[label - 1];
        }
        blocks.emplace_back(std::move(mult));
    }
    return MultisetPartition(std::move(blocks), dim);
}

PartitionEnumeration multiset_partitions_by_projection(const MultisetIndex& a, std::size_t k) {
    return multiset_partitions_by_projection(a, k, Labeling{a.sorted_labels()});
}

PartitionEnumeration multiset_partitions_by_projection(const MultisetIndex& a, std::size_t k,
                                                       const Labeling& labeling) {
    if (from_labels(a.dim(), labeling) != a) {
        throw InvalidArgument("labeling does not label " + a.to_string());
    }
    std::map<MultisetPartition, mpz_class> tally;
    for_each_restricted_growth_string(a.cardinality(), k, [&](std::span<const std::size_t> rgs) {
        std::vector<std::vector<MultisetIndex::Count>> mult(k, std::vector<MultisetIndex::Count>(a.dim(), 0));
        for (std::size_t i = 0; i < rgs.size(); ++i) {
            ++mult[rgs[i]][labeling.entries[i] - 1];
        }
        std::vector<MultisetIndex> blocks;
        blocks.reserve(k);
        for (auto& m : mult) {
            blocks.emplace_back(std::move(m));
        }
        tally[MultisetPartition(std::move(blocks), a.dim())] += 1;
    });
    PartitionEnumeration result{a, k, {}};
    result.entries.reserve(tally.size());
    for (auto& [partition, count] : tally) {
        result.entries.push_back(PartitionEntry{partition, count});
    }
    return result;
}

mpz_class count_generating_set_partitions(const Labeling& labeling, std::size_t dim,
                                          const MultisetPartition& p) {
    mpz_class count = 0;
    for (const auto& sp : set_partitions(labeling.size(), p.size())) {
        if (project(sp, labeling, dim) == p) {
            ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Direct generator: canonical descent with closed-form multiplicity

namespace {

mpz_class closed_form_multiplicity(const MultisetIndex& parent,
                                   std::span<const MultisetIndex> blocks) {
    mpz_class count = 1;
    for (std::size_t x = 0; x < parent.dim(); ++x) {
        count *= factorial(parent.multiplicities()[x]);
        for (const auto& block : blocks) {
            count /= factorial(block.multiplicities()[x]);
        }
    }
    // Identical blocks are interchangeable; blocks are sorted so equal ones are adjacent.
    std::size_t run = 1;
    for (std::size_t i = 1; i <= blocks.size(); ++i) {
        if (i < blocks.size() && blocks[i] == blocks[i - 1]) {
            ++run;
        } else {
            count /= factorial(run);
            run = 1;
        }
    }
    return count;
}

// Sub-bags of `remaining` with the given cardinality, descending multiplicity vector.
void for_each_sub_bag(const MultisetIndex& remaining, std::size_t size,
                      const std::function<void(const MultisetIndex&)>& visit) {
    const auto limit = remaining.multiplicities();
    const std::size_t dim = limit.size();
    std::vector<std::size_t> tail_capacity(dim + 1, 0);
    for (std::size_t i = dim; i-- > 0;) {
        tail_capacity[i] = tail_capacity[i + 1] + limit[i];
    }
    std::vector<MultisetIndex::Count> current(dim, 0);
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t position, std::size_t left) {
        if (position == dim) {
            if (left == 0) {
                visit(MultisetIndex(current));
            }
            return;
        }
        const std::size_t high = std::min<std::size_t>(limit[position], left);
        const std::size_t low = left > tail_capacity[position + 1] ? left - tail_capacity[position + 1] : 0;
        for (std::size_t take = high + 1; take-- > low;) {
            current[position] = static_cast<MultisetIndex::Count>(take);
            fill(position + 1, left - take);
        }
        current[position] = 0;
    };
    fill(0, size);
}

struct Descent {
    const MultisetIndex& parent;
    std::vector<MultisetIndex> chosen;
    std::vector<PartitionEntry>& out;

    void run(const MultisetIndex& remaining, std::size_t blocks_left) {
        // Copy: `chosen` grows below and may reallocate.
        const std::optional<MultisetIndex> previous =
            chosen.empty() ? std::nullopt : std::optional<MultisetIndex>(chosen.back());
        if (blocks_left == 0) {
            if (remaining.empty()) {
                emit();
            }
            return;
        }
        if (remaining.cardinality() < blocks_left) {
            return;
        }
        if (blocks_left == 1) {
            if (!previous || !block_precedes(remaining, *previous)) {
                chosen.push_back(remaining);
                emit();
                chosen.pop_back();
            }
            return;
        }
        // Blocks are non-increasing in size, so the next one holds at least
        // ceil(|remaining| / blocks_left) elements.
        const std::size_t total = remaining.cardinality();
        const std::size_t smallest = (total + blocks_left - 1) / blocks_left;
        std::size_t largest = total - (blocks_left - 1);
        if (previous) {
            largest = std::min(largest, previous->cardinality());
        }
        for (std::size_t size = largest + 1; size-- > smallest;) {
            for_each_sub_bag(remaining, size, [&](const MultisetIndex& block) {
                if (previous && block_precedes(block, *previous)) {
                    return;
                }
                chosen.push_back(block);
                run(difference(remaining, block), blocks_left - 1);
                chosen.pop_back();
            });
        }
    }

    void emit() {
        out.push_back(PartitionEntry{MultisetPartition(chosen, parent.dim()),
                                     closed_form_multiplicity(parent, chosen)});
    }
};

}  // namespace

PartitionEnumeration multiset_partitions(const MultisetIndex& a, std::size_t k) {
    PartitionEnumeration result{a, k, {}};
    if (k > a.cardinality() || (k == 0 && !a.empty())) {
        return result;
    }
    Descent descent{a, {}, result.entries};
    descent.run(a, k);
    std::sort(result.entries.begin(), result.entries.end(),
              [](const PartitionEntry& x, const PartitionEntry& y) { return x.partition < y.partition; });
    return result;
}

mpz_class partition_multiplicity(const MultisetIndex& a, const MultisetPartition& p) {
    if (p.dim() != a.dim()) {
        throw InvalidArgument("partition " + p.to_string() + " lives over a different dimension than " +
                              a.to_string());
    }
    if (p.parent() != a) {
        throw InvalidArgument(p.to_string() + " does not partition " + a.to_string());
    }
    return closed_form_multiplicity(a, p.blocks());
}

// ---------------------------------------------------------------------------
// Recursive construction from Pi(alpha, n) and Pi(alpha, n+1)

PartitionEnumeration extend_partitions(std::size_t a0, const PartitionEnumeration& prev_n,
                                       const PartitionEnumeration& prev_n1) {
    if (prev_n.parent != prev_n1.parent) {
        throw InvalidArgument("extend_partitions: inputs partition different parents " +
                              prev_n.parent.to_string() + " and " + prev_n1.parent.to_string());
    }
    if (prev_n1.order != prev_n.order + 1) {
        throw InvalidArgument("extend_partitions: expected consecutive orders, got " +
                              std::to_string(prev_n.order) + " and " + std::to_string(prev_n1.order));
    }
    const auto& alpha = prev_n.parent;
    const auto singleton = MultisetIndex::unit(alpha.dim(), a0);

    std::map<MultisetPartition, mpz_class> tally;
    for (const auto& entry : prev_n.entries) {
        tally[entry.partition.with_block(singleton)] += entry.multiplicity;
    }
    for (const auto& entry : prev_n1.entries) {
        for (std::size_t position = 0; position < entry.partition.size(); ++position) {
            tally[entry.partition.with_merged(position, a0)] += entry.multiplicity;
        }
    }

    PartitionEnumeration result{union_of(singleton, alpha), prev_n1.order, {}};
    for (auto& [partition, count] : tally) {
        result.entries.push_back(PartitionEntry{partition, count});
    }
    return result;
}

// ---------------------------------------------------------------------------
// Counts

mpz_class stirling2(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    // row[j] = S(i, j), built one row at a time.
    std::vector<mpz_class> row(k + 1, 0);
    row[0] = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            row[j] = mpz_class(static_cast<unsigned long>(j)) * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    return row[k];
}

mpz_class bell(std::size_t n) {
    mpz_class total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        total += stirling2(n, k);
    }
    return total;
}

}  // namespace bagchain
