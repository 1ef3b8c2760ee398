#include "bagchain/chain_rule.hpp"

#include "bagchain/errors.hpp"

namespace bagchain {

namespace {

template <class T>
void check_composable(std::size_t order, const DerivativeTensor<T>& f, const MapJet<T>& g) {
    if (f.dim() != g.out_dim()) {
        throw DimensionMismatch("f_jet is over " + std::to_string(f.dim()) +
                                " variables but g_jet has " + std::to_string(g.out_dim()) +
                                " components");
    }
    if (f.order() < order) {
        throw InsufficientOrder("f_jet has order " + std::to_string(f.order()) + ", need " +
                                std::to_string(order));
    }
    if (g.order() < order) {
        throw InsufficientOrder("g_jet has order " + std::to_string(g.order()) + ", need " +
                                std::to_string(order));
    }
}

template <class T>
void check_alpha(const MultisetIndex& alpha, const DerivativeTensor<T>& f, const MapJet<T>& g) {
    if (alpha.dim() != g.in_dim()) {
        throw DimensionMismatch("alpha " + alpha.to_string() + " is over " +
                                std::to_string(alpha.dim()) + " variables but g_jet has input dimension " +
                                std::to_string(g.in_dim()));
    }
    if (alpha.empty()) {
        throw InvalidArgument("alpha must be nonempty; the order-0 entry is f's value");
    }
    check_composable(alpha.cardinality(), f, g);
}

std::vector<PartitionEnumeration> all_partitions(const MultisetIndex& alpha) {
    std::vector<PartitionEnumeration> out;
    out.reserve(alpha.cardinality());
    for (std::size_t n = 1; n <= alpha.cardinality(); ++n) {
        out.push_back(multiset_partitions(alpha, n));
    }
    return out;
}

// Advances `tuple` (entries in 1..range) to its lexicographic successor.
bool next_tuple(std::vector<std::size_t>& tuple, std::size_t range) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (tuple[i] < range) {
            ++tuple[i];
            return true;
        }
        tuple[i] = 1;
    }
    return false;
}

template <class T>
T theorem_sum(const DerivativeTensor<T>& f, const MapJet<T>& g,
              std::span<const PartitionEnumeration> partitions) {
    const std::size_t c = g.out_dim();
    T total(0);
    for (const auto& layer : partitions) {
        const std::size_t n = layer.order;
        for (const auto& entry : layer.entries) {
            const auto blocks = entry.partition.blocks();
            T partition_sum(0);
            std::vector<std::size_t> b(n, 1);
            do {
                T term = f.at(from_labels(c, b));
                for (std::size_t k = 0; k < n; ++k) {
                    term *= g.component(b[k]).at(blocks[k]);
                }
                partition_sum += term;
            } while (next_tuple(b, c));
            total += ScalarTraits<T>::from_count(entry.multiplicity) * partition_sum;
        }
    }
    return total;
}

}  // namespace

template <class T>
T compose_derivative(const MultisetIndex& alpha, const DerivativeTensor<T>& f, const MapJet<T>& g) {
    check_alpha(alpha, f, g);
    const auto partitions = all_partitions(alpha);
    return theorem_sum(f, g, std::span<const PartitionEnumeration>(partitions));
}

template <class T>
T g_beta_derivative(std::span<const MultisetIndex> blocks, const MultisetIndex& beta,
                    const MapJet<T>& g) {
    if (beta.cardinality() != blocks.size()) {
        throw InvalidArgument("beta " + beta.to_string() + " has cardinality " +
                              std::to_string(beta.cardinality()) + " but " +
                              std::to_string(blocks.size()) + " blocks were given");
    }
    if (beta.dim() != g.out_dim()) {
        throw DimensionMismatch("beta is over " + std::to_string(beta.dim()) +
                                " components but g_jet has " + std::to_string(g.out_dim()));
    }
    T total(0);
    for (const auto& labeling : labelings(beta)) {
        T product(1);
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            product *= g.component(labeling.entries[k]).at(blocks[k]);
        }
        total += product;
    }
    return total;
}

template <class T>
T compose_derivative_beta(const MultisetIndex& alpha, const DerivativeTensor<T>& f,
                          const MapJet<T>& g) {
    check_alpha(alpha, f, g);
    const std::size_t c = g.out_dim();
    T total(0);
    for (std::size_t n = 1; n <= alpha.cardinality(); ++n) {
        const auto layer = multiset_partitions(alpha, n);
        const auto betas = enumerate_bag(c, n);
        for (const auto& entry : layer.entries) {
            T partition_sum(0);
            for (const auto& beta : betas) {
                partition_sum += f.at(beta) * g_beta_derivative(entry.partition.blocks(), beta, g);
            }
            total += ScalarTraits<T>::from_count(entry.multiplicity) * partition_sum;
        }
    }
    return total;
}

template <class T>
DerivativeTensor<T> compose_jet(const DerivativeTensor<T>& f, const MapJet<T>& g, std::size_t order) {
    check_composable(order, f, g);
    const std::size_t d = g.in_dim();
    DerivativeTensor<T> out(d, order);
    out.at(MultisetIndex::empty_bag(d)) = f.value();
    for (const auto& alpha : enumerate_bags_up_to(d, order)) {
        if (alpha.empty()) {
            continue;
        }
        const auto partitions = all_partitions(alpha);
        out.at(alpha) = theorem_sum(f, g, std::span<const PartitionEnumeration>(partitions));
    }
    return out;
}

template Rational compose_derivative(const MultisetIndex&, const DerivativeTensor<Rational>&,
                                     const MapJet<Rational>&);
template double compose_derivative(const MultisetIndex&, const DerivativeTensor<double>&,
                                   const MapJet<double>&);
template Rational compose_derivative_beta(const MultisetIndex&, const DerivativeTensor<Rational>&,
                                          const MapJet<Rational>&);
template double compose_derivative_beta(const MultisetIndex&, const DerivativeTensor<double>&,
                                        const MapJet<double>&);
template Rational g_beta_derivative(std::span<const MultisetIndex>, const MultisetIndex&,
                                    const MapJet<Rational>&);
template double g_beta_derivative(std::span<const MultisetIndex>, const MultisetIndex&,
                                  const MapJet<double>&);
template DerivativeTensor<Rational> compose_jet(const DerivativeTensor<Rational>&,
                                                const MapJet<Rational>&, std::size_t);
template DerivativeTensor<double> compose_jet(const DerivativeTensor<double>&, const MapJet<double>&,
                                              std::size_t);

}  // namespace bagchain
