#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bagchain/json_io.hpp"
#include "bagchain/tensor.hpp"

namespace bagchain {

struct VerifyOptions {
    std::size_t trials = 100;
    std::uint64_t seed = 20140416;
    std::size_t max_order = 5;
    std::size_t in_dim = 3;   // d
    std::size_t out_dim = 3;  // c
    Mode mode = Mode::rational;
    /// Exhaustive combinatorial suites cover every index up to this cardinality.
    std::size_t max_cardinality = 7;
    std::size_t max_index_dim = 3;
};

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst_error = 0.0;
    /// Inputs and both values of the first failing case.
    std::optional<json> counterexample;

    bool passed() const noexcept { return failures == 0 && cases > 0; }
};

struct VerifySummary {
    std::vector<SuiteResult> suites;

    bool passed() const;
    json to_json() const;
};

/// compose_jet against differentiation of the substituted expression, on
/// seeded random polynomials of degree <= 3 (exact in rational mode). In float
/// mode the polynomial trials run in floating point and a fixed transcendental
/// suite is added.
SuiteResult check_oracle_equivalence(const VerifyOptions& options);

/// The fixed transcendental composition suite alone (float mode).
SuiteResult check_transcendental_suite();

/// compose_derivative against compose_derivative_beta on seeded random jets,
/// every alpha with 1 <= |alpha| <= max_order.
SuiteResult check_theorem_equivalence(const VerifyOptions& options);

/// extend_partitions against multiset_partitions for every alpha with
/// |alpha| <= max_cardinality, dim <= max_dim, every a0 and every n.
SuiteResult check_lemma(std::size_t max_cardinality, std::size_t max_dim);

/// Sum of multiplicities of Pi(alpha, k) equals Stirling2(|alpha|, k); the sum
/// over k equals Bell(|alpha|).
SuiteResult check_cardinalities(std::size_t max_cardinality, std::size_t max_dim);

/// The projection generator and the direct generator agree exactly.
SuiteResult check_generators(std::size_t max_cardinality, std::size_t max_dim);

/// Runs every suite above and collects the results in a fixed order.
VerifySummary run_verification(const VerifyOptions& options);

/// Random tensor with rational entries p/q, |p| <= 9, 1 <= q <= 9.
DerivativeTensor<Rational> random_rational_tensor(std::mt19937_64& rng, std::size_t dim,
                                                  std::size_t order);

/// Every multiset index with 1 <= dim <= max_dim and |index| <= max_cardinality.
std::vector<MultisetIndex> small_indices(std::size_t max_cardinality, std::size_t max_dim);

}  // namespace bagchain
