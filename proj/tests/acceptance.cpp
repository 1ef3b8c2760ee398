// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bagchain/chain_rule.hpp"
#include "bagchain/expr.hpp"
#include "bagchain/oracle.hpp"
#include "bagchain/partitions.hpp"
#include "bagchain/symbolic.hpp"
#include "bagchain/verify.hpp"

using namespace bagchain;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = body();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.ok && elapsed > limit_seconds) {
        outcome.ok = false;
        outcome.detail += " (over the time limit)";
    }
    if (!outcome.ok) {
        ++failures;
    }
    std::printf("AC%d %s: %s [%.3f s, limit %g s] %s\n", number, title, outcome.ok ? "PASS" : "FAIL", elapsed,
                limit_seconds, outcome.detail.c_str());
    std::fflush(stdout);
}

Outcome from_suite(const SuiteResult& r) {
    std::ostringstream s;
    s << r.name << ": " << r.cases << " cases, " << r.failures << " failures";
    if (r.worst_error > 0) {
        s << ", worst relative error " << r.worst_error;
    }
    if (r.counterexample) {
        s << ", first counterexample " << r.counterexample->dump();
    }
    return {r.passed(), s.str()};
}

Outcome both(Outcome a, const Outcome& b) {
    return {a.ok && b.ok, a.detail + "; " + b.detail};
}

// Inclusion-exclusion closed form, independent of the library recurrence.
mpz_class stirling_closed(unsigned n, unsigned k) {
    mpz_class sum = 0;
    for (unsigned j = 0; j <= k; ++j) {
        mpz_class term;
        mpz_bin_uiui(term.get_mpz_t(), k, j);
        mpz_class power;
        mpz_ui_pow_ui(power.get_mpz_t(), k - j, n);
        term *= power;
        sum += (j % 2 ? -term : term);
    }
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), k);
    return sum / kf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

#ifdef BAGCHAIN_CLI
std::string run_cli(const std::string& args) {
    FILE* pipe = popen((std::string(BAGCHAIN_CLI) + " " + args).c_str(), "r");
    std::string out;
    char buffer[4096];
    std::size_t n = 0;
    while (pipe && (n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        out.append(buffer, n);
    }
    if (pipe) {
        pclose(pipe);
    }
    return out;
}
#endif

}  // namespace

int main() {
    criterion(1, "worked example", 1e-3, [] {
        const auto e = multiset_partitions(from_labels(2, {1, 1, 2}), 2);
        const MultisetPartition one_one_two({from_labels(2, {1}), from_labels(2, {1, 2})});
        const MultisetPartition two_one_one({from_labels(2, {2}), from_labels(2, {1, 1})});
        bool ok = e.cardinality() == 3 && e.distinct() == 2;
        for (const auto& entry : e.entries) {
            if (entry.partition == one_one_two) {
                ok = ok && entry.multiplicity == 2;
            } else if (entry.partition == two_one_one) {
                ok = ok && entry.multiplicity == 1;
            } else {
                ok = false;
            }
        }
        return Outcome{ok, "cardinality " + e.cardinality().get_str() + ", distinct " +
                               std::to_string(e.distinct())};
    });

    criterion(2, "cardinality equals Stirling2, k-sum equals Bell", 30, [] {
        bool closed_ok = true;
        for (unsigned n = 0; n <= 8; ++n) {
            mpz_class row = 0;
            for (unsigned k = 0; k <= n; ++k) {
                closed_ok = closed_ok && stirling2(n, k) == stirling_closed(n, k);
                row += stirling_closed(n, k);
            }
            closed_ok = closed_ok && bell(n) == row;
        }
        return both(Outcome{closed_ok, "Stirling2/Bell against inclusion-exclusion"}, from_suite(check_cardinalities(8, 3)));
    });

    criterion(3, "lemma reproduces the enumeration", 60, [] { return from_suite(check_lemma(7, 3)); });

    criterion(4, "golden expansions", 30, [] {
        const std::string dir = std::string(BAGCHAIN_SOURCE_DIR) + "/tests/golden/";
        const char* files[] = {"expand_order1.txt", "expand_order2.txt", "expand_order3.txt"};
        const MultisetIndex alphas[] = {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
        bool ok = true;
        std::string detail = "library";
        for (int i = 0; i < 3; ++i) {
            const auto expected = slurp(dir + files[i]);
            ok = ok && !expected.empty() && render_summation_form(alphas[i], 3) == expected;
#ifdef BAGCHAIN_CLI
            ok = ok && run_cli("expand '" + to_json(alphas[i]).dump() + "' -c 3") == expected;
#endif
        }
#ifdef BAGCHAIN_CLI
        detail += " and CLI";
#endif
        // every term of the three-variable case has coefficient 1, three middle groups
        const auto third = expand_symbolic(alphas[2], 3);
        std::size_t middle = 0;
        for (const auto& t : third.terms) {
            ok = ok && t.coefficient == 1;
            middle += t.factors.size() == 2;
        }
        ok = ok && middle == 3 * 9;
        return Outcome{ok, detail + " output byte-identical to 3 golden files"};
    });

    criterion(5, "one-dimensional specialization", 10, [] {
        bool ok = true;
        for (std::size_t n = 1; n <= 8 && ok; ++n) {
            const auto collected = collect_by_block_sizes(expand_symbolic(MultisetIndex{static_cast<MultisetIndex::Count>(n)}, 1));
            const auto table = faa_di_bruno_1d(n);
            ok = collected.size() == table.size();
            for (const auto& row : table) {
                ok = ok && collected.count(row.m) && collected.at(row.m) == row.coefficient;
            }
        }
        // generic degree-8 pair: every derivative up to 8 is nonzero
        std::mt19937_64 rng(81);
        std::uniform_int_distribution<int> num(1, 9);
        Expr f = Expr::constant(0);
        Expr g = Expr::constant(0);
        for (unsigned p = 0; p <= 8; ++p) {
            f = f + Expr::constant(Rational(num(rng), num(rng))) * Expr::power(Expr::variable(1), p);
            g = g + Expr::constant(Rational(-num(rng), num(rng))) * Expr::power(Expr::variable(1), p);
        }
        const std::vector<Rational> x0{Rational(2, 3)};
        const std::vector<Expr> inner{g};
        const Expr fg = substitute(f, inner);
        const std::vector<Rational> u0{evaluate(g, x0)};
        Expr dfg = fg;
        for (std::size_t n = 1; n <= 8; ++n) {
            dfg = diff(dfg, 1);
            Rational contracted = 0;
            for (const auto& row : faa_di_bruno_1d(n)) {
                Rational term = Rational(row.coefficient) *
                                evaluate(diff_multi(f, MultisetIndex{static_cast<MultisetIndex::Count>(row.k)}), u0);
                for (std::size_t i = 0; i < row.m.size(); ++i) {
                    const Rational gi = evaluate(diff_multi(g, MultisetIndex{static_cast<MultisetIndex::Count>(i + 1)}), x0);
                    for (std::size_t r = 0; r < row.m[i]; ++r) {
                        term *= gi;
                    }
                }
                contracted += term;
            }
            ok = ok && contracted == evaluate(dfg, x0);
        }
        return Outcome{ok, "n <= 8, table = collected expansion = direct differentiation"};
    });

    criterion(6, "theorem forms agree", 30, [] {
        VerifyOptions o;
        o.trials = 200;
        o.max_order = 5;
        o.in_dim = 3;
        o.out_dim = 3;
        o.mode = Mode::rational;
        return from_suite(check_theorem_equivalence(o));
    });

    criterion(7, "oracle equivalence", 120, [] {
        VerifyOptions o;
        o.trials = 100;
        o.max_order = 5;
        o.in_dim = 3;
        o.out_dim = 3;
        o.mode = Mode::rational;
        auto exact = from_suite(check_oracle_equivalence(o));
        const auto transcendental = check_transcendental_suite();
        auto floating = from_suite(transcendental);
        floating.ok = floating.ok && transcendental.worst_error <= kFloatTolerance;
        return both(exact, floating);
    });

    criterion(8, "reference and direct generators agree", 60, [] { return from_suite(check_generators(8, 3)); });

    std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
