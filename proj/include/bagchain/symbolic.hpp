#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bagchain/multiset.hpp"

namespace bagchain {

/// One factor d_block g^component of a chain-rule term.
struct GFactor {
    MultisetIndex block;
    std::size_t component = 0;

    friend bool operator==(const GFactor&, const GFactor&) = default;
};

/// coefficient * d_{f_labels} f * prod factors.
struct SymbolicTerm {
    std::vector<std::size_t> f_labels;
    std::vector<GFactor> factors;
    mpz_class coefficient;

    friend bool operator==(const SymbolicTerm& a, const SymbolicTerm& b) {
        return a.f_labels == b.f_labels && a.factors == b.factors && a.coefficient == b.coefficient;
    }
};

/// The full term list of the chain rule for d_alpha (f o g) with g having
/// `out_dim` components: one term per (b-tuple, distinct partition), the
/// coefficient being the partition's multiplicity. Terms are ordered by
/// ascending n, then b-tuple, then partition.
struct SymbolicExpansion {
    MultisetIndex alpha;
    std::size_t out_dim = 0;
    std::vector<SymbolicTerm> terms;
};

/// Throws InvalidArgument when alpha is empty or out_dim is zero.
SymbolicExpansion expand_symbolic(const MultisetIndex& alpha, std::size_t out_dim);

/// Summation-form rendering, one line per distinct partition, e.g. for [1,2]:
///
///   ∂_{12}(f∘g)
///     = Σ_{b1,b2=1}^{c} ∂_{b1 b2}f · ∂_{1}g^{b1} · ∂_{2}g^{b2}
///     + Σ_{b1=1}^{c} ∂_{b1}f · ∂_{12}g^{b1}
///
/// Lines run from the most blocks to the fewest. A multiplicity above one is
/// printed as a leading integer factor.
std::string render_summation_form(const MultisetIndex& alpha, std::size_t out_dim);

/// One line per term of the expansion with concrete component labels.
std::string render_terms(const SymbolicExpansion& expansion);

/// A row of the univariate formula: k = sum m_i, sum i*m_i = n.
struct FaaTerm {
    std::size_t k = 0;
    std::vector<std::size_t> m;
    mpz_class coefficient;

    friend bool operator==(const FaaTerm& a, const FaaTerm& b) {
        return a.k == b.k && a.m == b.m && a.coefficient == b.coefficient;
    }
};

/// All (k, m) with n!/(prod m_i! (i!)^{m_i}) as coefficient; rows ordered by
/// ascending k, then descending m. Throws InvalidArgument for n == 0.
std::vector<FaaTerm> faa_di_bruno_1d(std::size_t n);

/// Sums the coefficients of a univariate (d = c = 1) expansion by block-size
/// signature m (m_i = number of blocks of size i).
std::map<std::vector<std::size_t>, mpz_class> collect_by_block_sizes(const SymbolicExpansion& expansion);

}  // namespace bagchain
