#include "bagchain/verify.hpp"

#include <algorithm>

#include "bagchain/chain_rule.hpp"
#include "bagchain/oracle.hpp"
#include "bagchain/partitions.hpp"

namespace bagchain {

namespace {

std::size_t uniform_size(std::mt19937_64& rng, std::size_t low, std::size_t high) {
    return std::uniform_int_distribution<std::size_t>(low, high)(rng);
}

Rational random_rational(std::mt19937_64& rng, int max_numerator, int max_denominator) {
    const int p = std::uniform_int_distribution<int>(-max_numerator, max_numerator)(rng);
    const int q = std::uniform_int_distribution<int>(1, max_denominator)(rng);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

DerivativeTensor<double> to_float(const DerivativeTensor<Rational>& tensor) {
    DerivativeTensor<double> out(tensor.dim(), tensor.order());
    for (const auto& [index, value] : tensor.entries()) {
        out.at(index) = value.get_d();
    }
    return out;
}

MapJet<double> to_float(const MapJet<Rational>& jet) {
    std::vector<double> base;
    for (const auto& x : jet.base_point()) {
        base.push_back(x.get_d());
    }
    std::vector<DerivativeTensor<double>> components;
    for (const auto& c : jet.components()) {
        components.push_back(to_float(c));
    }
    return MapJet<double>(std::move(base), std::move(components));
}

json exprs_json(const Expr& f, std::span<const Expr> g, std::span<const Rational> point,
                std::size_t order) {
    json gs = json::array();
    for (const auto& e : g) {
        gs.push_back(e.to_string());
    }
    json xs = json::array();
    for (const auto& x : point) {
        xs.push_back(x.get_str());
    }
    return {{"f", f.to_string()}, {"g", std::move(gs)}, {"point", std::move(xs)}, {"order", order}};
}

void record_report(SuiteResult& suite, const CompositionReport& report, const Expr& f,
                   std::span<const Expr> g, std::span<const Rational> point) {
    ++suite.cases;
    suite.worst_error = std::max(suite.worst_error, report.max_relative_error);
    if (report.all_agree()) {
        return;
    }
    ++suite.failures;
    if (!suite.counterexample) {
        auto bad = std::find_if(report.indices.begin(), report.indices.end(),
                                [](const IndexAgreement& row) { return !row.agree; });
        json example = exprs_json(f, g, point, report.order);
        example["index"] = to_json(bad->index);
        example["direct"] = bad->direct;
        example["composed"] = bad->composed;
        suite.counterexample = std::move(example);
    }
}

struct TranscendentalCase {
    const char* f;
    std::vector<const char*> g;
    std::vector<Rational> point;
    std::size_t order;
};

std::vector<TranscendentalCase> transcendental_cases() {
    return {
        {"(sin (+ u1 u2))", {"(* x1 x2)", "(+ x1 x2)"}, {Rational(1, 2), Rational(1, 3)}, 4},
        {"(* (exp u1) u2)", {"(sin x1)", "(cos (* x1 x2))"}, {Rational(1, 3), Rational(1, 5)}, 4},
        {"(cos (* u1 (* u2 u3)))", {"(exp x1)", "(+ x1 x2)", "(* x2 (sin x1))"},
         {Rational(1, 4), Rational(-2, 3)}, 4},
        {"(exp u1)", {"(sin x1)"}, {Rational(1, 2)}, 5},
        {"(+ (^ u1 3) (sin u2))", {"(exp (- x1))", "(* (^ x1 2) x2)"}, {Rational(3, 5), Rational(1, 7)}, 5},
        {"(* (sin u1) (cos u2))", {"(+ x1 (* x2 x3))", "(exp (* x1 x3))"},
         {Rational(1, 3), Rational(1, 2), Rational(-1, 4)}, 3},
    };
}

}  // namespace

DerivativeTensor<Rational> random_rational_tensor(std::mt19937_64& rng, std::size_t dim,
                                                  std::size_t order) {
    DerivativeTensor<Rational> tensor(dim, order);
    for (const auto& index : enumerate_bags_up_to(dim, order)) {
        tensor.at(index) = random_rational(rng, 9, 9);
    }
    return tensor;
}

std::vector<MultisetIndex> small_indices(std::size_t max_cardinality, std::size_t max_dim) {
    std::vector<MultisetIndex> out;
    for (std::size_t dim = 1; dim <= max_dim; ++dim) {
        auto layer = enumerate_bags_up_to(dim, max_cardinality);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

SuiteResult check_transcendental_suite() {
    SuiteResult suite{"transcendental", 0, 0, 0.0, std::nullopt};
    for (const auto& c : transcendental_cases()) {
        const Expr f = parse_expr(c.f);
        std::vector<Expr> g;
        for (const char* text : c.g) {
            g.push_back(parse_expr(text));
        }
        const auto report = verify_composition(f, g, c.point, c.order);
        record_report(suite, report, f, g, c.point);
    }
    return suite;
}

SuiteResult check_oracle_equivalence(const VerifyOptions& options) {
    SuiteResult suite{"oracle-equivalence", 0, 0, 0.0, std::nullopt};
    std::mt19937_64 rng(options.seed);
    const bool force_float = options.mode == Mode::floating;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        const std::size_t d = uniform_size(rng, 1, options.in_dim);
        const std::size_t c = uniform_size(rng, 1, options.out_dim);
        const std::size_t order = uniform_size(rng, 1, options.max_order);
        const Expr f = random_polynomial(rng, c, 3);
        std::vector<Expr> g;
        for (std::size_t b = 0; b < c; ++b) {
            g.push_back(random_polynomial(rng, d, 3));
        }
        std::vector<Rational> point;
        for (std::size_t i = 0; i < d; ++i) {
            point.push_back(random_rational(rng, 5, 4));
        }
        record_report(suite, verify_composition(f, g, point, order, force_float), f, g, point);
    }
    if (options.mode == Mode::floating) {
        const auto extra = check_transcendental_suite();
        suite.cases += extra.cases;
        suite.failures += extra.failures;
        suite.worst_error = std::max(suite.worst_error, extra.worst_error);
        if (!suite.counterexample) {
            suite.counterexample = extra.counterexample;
        }
    }
    return suite;
}

SuiteResult check_theorem_equivalence(const VerifyOptions& options) {
    SuiteResult suite{"theorem-equivalence", 0, 0, 0.0, std::nullopt};
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
        const std::size_t d = uniform_size(rng, 1, options.in_dim);
        const std::size_t c = uniform_size(rng, 1, options.out_dim);
        const std::size_t order = options.max_order;
        const auto f = random_rational_tensor(rng, c, order);
        std::vector<DerivativeTensor<Rational>> components;
        for (std::size_t b = 0; b < c; ++b) {
            components.push_back(random_rational_tensor(rng, d, order));
        }
        std::vector<Rational> base(d, Rational(0));
        const MapJet<Rational> g(base, std::move(components));
        const auto f_float = to_float(f);
        const auto g_float = to_float(g);

        for (const auto& alpha : enumerate_bags_up_to(d, order)) {
            if (alpha.empty()) {
                continue;
            }
            ++suite.cases;
            bool agree = false;
            std::string first;
            std::string second;
            if (options.mode == Mode::rational) {
                const Rational a = compose_derivative(alpha, f, g);
                const Rational b = compose_derivative_beta(alpha, f, g);
                agree = a == b;
                first = a.get_str();
                second = b.get_str();
            } else {
                const double a = compose_derivative(alpha, f_float, g_float);
                const double b = compose_derivative_beta(alpha, f_float, g_float);
                const double err = relative_error(a, b);
                suite.worst_error = std::max(suite.worst_error, err);
                agree = err <= kFloatTolerance;
                first = json(a).dump();
                second = json(b).dump();
            }
            if (!agree) {
                ++suite.failures;
                if (!suite.counterexample) {
                    suite.counterexample = json{{"alpha", to_json(alpha)},
                                                {"f_jet", to_json(f)},
                                                {"g_jet", to_json(g)},
                                                {"tuple_form", first},
                                                {"bag_form", second}};
                }
            }
        }
    }
    return suite;
}

SuiteResult check_lemma(std::size_t max_cardinality, std::size_t max_dim) {
    SuiteResult suite{"lemma-vs-definition", 0, 0, 0.0, std::nullopt};
    for (const auto& alpha : small_indices(max_cardinality, max_dim)) {
        std::vector<PartitionEnumeration> layers;
        for (std::size_t n = 0; n <= alpha.cardinality() + 1; ++n) {
            layers.push_back(multiset_partitions(alpha, n));
        }
        for (std::size_t a0 = 1; a0 <= alpha.dim(); ++a0) {
            const auto grown = union_of(MultisetIndex::unit(alpha.dim(), a0), alpha);
            for (std::size_t n = 0; n <= alpha.cardinality(); ++n) {
                ++suite.cases;
                const auto built = extend_partitions(a0, layers[n], layers[n + 1]);
                const auto expected = multiset_partitions(grown, n + 1);
                if (built != expected) {
                    ++suite.failures;
                    if (!suite.counterexample) {
                        suite.counterexample = json{{"alpha", to_json(alpha)},
                                                    {"a0", a0},
                                                    {"n", n},
                                                    {"extended", to_json(built)},
                                                    {"definition", to_json(expected)}};
                    }
                }
            }
        }
    }
    return suite;
}

SuiteResult check_cardinalities(std::size_t max_cardinality, std::size_t max_dim) {
    SuiteResult suite{"stirling-counts", 0, 0, 0.0, std::nullopt};
    for (const auto& alpha : small_indices(max_cardinality, max_dim)) {
        const std::size_t n = alpha.cardinality();
        mpz_class total = 0;
        bool ok = true;
        for (std::size_t k = 0; k <= n; ++k) {
            const auto layer = multiset_partitions(alpha, k);
            const auto cardinality = layer.cardinality();
            total += cardinality;
            if (cardinality != stirling2(n, k)) {
                ok = false;
            }
        }
        ++suite.cases;
        if (!ok || total != bell(n)) {
            ++suite.failures;
            if (!suite.counterexample) {
                suite.counterexample = json{{"alpha", to_json(alpha)},
                                            {"total", total.get_str()},
                                            {"bell", bell(n).get_str()}};
            }
        }
    }
    return suite;
}

SuiteResult check_generators(std::size_t max_cardinality, std::size_t max_dim) {
    SuiteResult suite{"reference-vs-direct", 0, 0, 0.0, std::nullopt};
    for (const auto& alpha : small_indices(max_cardinality, max_dim)) {
        for (std::size_t k = 0; k <= alpha.cardinality(); ++k) {
            ++suite.cases;
            const auto direct = multiset_partitions(alpha, k);
            const auto reference = multiset_partitions_by_projection(alpha, k);
            if (direct != reference) {
                ++suite.failures;
                if (!suite.counterexample) {
                    suite.counterexample = json{{"alpha", to_json(alpha)},
                                                {"k", k},
                                                {"direct", to_json(direct)},
                                                {"reference", to_json(reference)}};
                }
            }
        }
    }
    return suite;
}

VerifySummary run_verification(const VerifyOptions& options) {
    VerifySummary summary;
    summary.suites.push_back(check_oracle_equivalence(options));
    summary.suites.push_back(check_theorem_equivalence(options));
    summary.suites.push_back(check_lemma(options.max_cardinality, options.max_index_dim));
    summary.suites.push_back(check_cardinalities(options.max_cardinality, options.max_index_dim));
    summary.suites.push_back(check_generators(options.max_cardinality, options.max_index_dim));
    return summary;
}

bool VerifySummary::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

json VerifySummary::to_json() const {
    json out = json::array();
    for (const auto& suite : suites) {
        json row{{"suite", suite.name},
                 {"cases", suite.cases},
                 {"failures", suite.failures},
                 {"worst_relative_error", suite.worst_error},
                 {"passed", suite.passed()}};
        if (suite.counterexample) {
            row["counterexample"] = *suite.counterexample;
        }
        out.push_back(std::move(row));
    }
    return json{{"passed", passed()}, {"suites", std::move(out)}};
}

}  // namespace bagchain
