#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "bagchain/chain_rule.hpp"
#include "bagchain/errors.hpp"
#include "bagchain/json_io.hpp"
#include "bagchain/partitions.hpp"
#include "bagchain/symbolic.hpp"
#include "bagchain/verify.hpp"

namespace {

using namespace bagchain;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct IndexArgs {
    std::string alpha;
    std::string labels;
    std::size_t dim = 0;
};

void add_index_options(CLI::App* cmd, IndexArgs& args) {
    cmd->add_option("alpha", args.alpha, "Multiset index as a multiplicity vector, e.g. [2,1]");
    cmd->add_option("--labels", args.labels, "Index as a label tuple, e.g. \"1,1,2\"");
    cmd->add_option("--dim", args.dim, "Dimension for --labels (default: largest label)");
}

MultisetIndex read_index(const IndexArgs& args) {
    if (args.alpha.empty() == args.labels.empty()) {
        throw InvalidArgument("give exactly one of a positional alpha or --labels");
    }
    if (!args.alpha.empty()) {
        json parsed;
        try {
            parsed = json::parse(args.alpha);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("malformed index JSON: ") + e.what());
        }
        return index_from_json(parsed);
    }
    std::vector<std::size_t> labels;
    std::stringstream in(args.labels);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const long value = std::stol(item, &used);
            if (used != item.size() || value < 1) {
                throw std::invalid_argument(item);
            }
            labels.push_back(static_cast<std::size_t>(value));
        } catch (const std::logic_error&) {
            throw ParseError("malformed label \"" + item + "\" in --labels");
        }
    }
    if (labels.empty()) {
        throw ParseError("--labels is empty");
    }
    std::size_t dim = args.dim;
    if (dim == 0) {
        for (auto l : labels) {
            dim = std::max(dim, l);
        }
    }
    return from_labels(dim, std::span<const std::size_t>(labels));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// f may be a bare tensor or a one-component map jet.
AnyTensor read_f(const json& j) {
    if (j.contains("components")) {
        return std::visit(
            [](const auto& jet) -> AnyTensor {
                if (jet.out_dim() != 1) {
                    throw InvalidArgument("f_jet must be scalar valued (out_dim = 1), got out_dim = " +
                                          std::to_string(jet.out_dim()));
                }
                return jet.component(1);
            },
            map_jet_from_json(j));
    }
    return tensor_from_json(j);
}

DerivativeTensor<double> to_float(const DerivativeTensor<Rational>& t) {
    DerivativeTensor<double> out(t.dim(), t.order());
    for (const auto& [index, value] : t.entries()) {
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

template <class T>
std::optional<DerivativeTensor<T>> as_mode(const AnyTensor& t) {
    if (auto p = std::get_if<DerivativeTensor<T>>(&t)) {
        return *p;
    }
    if constexpr (std::is_same_v<T, double>) {
        return to_float(std::get<DerivativeTensor<Rational>>(t));
    }
    return std::nullopt;
}

template <class T>
std::optional<MapJet<T>> as_mode(const AnyMapJet& j) {
    if (auto p = std::get_if<MapJet<T>>(&j)) {
        return *p;
    }
    if constexpr (std::is_same_v<T, double>) {
        return to_float(std::get<MapJet<Rational>>(j));
    }
    return std::nullopt;
}

template <class T>
json compose_in_mode(const AnyTensor& f_any, const AnyMapJet& g_any, std::size_t order) {
    auto f = as_mode<T>(f_any);
    auto g = as_mode<T>(g_any);
    if (!f || !g) {
        throw InvalidArgument("float-mode jets cannot be composed in rational mode");
    }
    return to_json(compose_jet(*f, *g, order));
}

std::string render_faa_table(const std::vector<FaaTerm>& rows) {
    std::ostringstream out;
    out << "k\tm\tcoefficient\n";
    for (const auto& row : rows) {
        out << row.k << '\t';
        for (std::size_t i = 0; i < row.m.size(); ++i) {
            out << (i ? "," : "") << row.m[i];
        }
        out << '\t' << row.coefficient.get_str() << '\n';
    }
    return out.str();
}

std::string render_verify_report(const VerifySummary& summary) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-24s %8s %9s %14s  %s\n", "suite", "cases", "failures",
                  "worst_error", "status");
    out << line;
    for (const auto& suite : summary.suites) {
        std::snprintf(line, sizeof line, "%-24s %8zu %9zu %14.3e  %s\n", suite.name.c_str(), suite.cases,
                      suite.failures, suite.worst_error, suite.passed() ? "PASS" : "FAIL");
        out << line;
    }
    out << (summary.passed() ? "all suites passed\n" : "verification FAILED\n");
    for (const auto& suite : summary.suites) {
        if (suite.counterexample) {
            out << "first counterexample (" << suite.name << "):\n" << suite.counterexample->dump(2) << '\n';
            break;
        }
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate higher-order chain rule over multiset indices"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string output_path;
    std::string mode_text = "rational";
    app.add_option("--output", output_path, "Write the result to PATH instead of standard output");
    app.add_option("--mode", mode_text, "Scalar arithmetic")->check(CLI::IsMember({"rational", "float"}));

    IndexArgs partitions_index;
    std::size_t partitions_k = 0;
    bool counts_only = false;
    auto* partitions = app.add_subcommand("partitions", "Enumerate the multiset partitions of alpha into k blocks");
    add_index_options(partitions, partitions_index);
    partitions->add_option("-k,--k", partitions_k, "Number of blocks")->required();
    partitions->add_flag("--counts-only", counts_only, "Print only distinct, cardinality and stirling2");

    IndexArgs expand_index;
    std::size_t expand_c = 0;
    std::string expand_format = "text";
    auto* expand = app.add_subcommand("expand", "Symbolic expansion of the alpha-derivative of f o g");
    add_index_options(expand, expand_index);
    expand->add_option("-c,--components", expand_c, "Number of components of g")->required()->check(
        CLI::PositiveNumber);
    expand->add_option("--format", expand_format, "text (summation form), terms or json")
        ->check(CLI::IsMember({"text", "terms", "json"}));

    std::string f_path;
    std::string g_path;
    std::size_t compose_order = 0;
    auto* compose = app.add_subcommand("compose", "Derivative tensor of f o g from the jets of f and g");
    compose->add_option("--f", f_path, "f jet JSON file")->required();
    compose->add_option("--g", g_path, "g jet JSON file")->required();
    compose->add_option("-N,--order", compose_order, "Output order")->required();

    std::size_t faa_n = 0;
    std::string faa_format = "text";
    auto* faa = app.add_subcommand("faa1d", "One-dimensional coefficient table for order n");
    faa->add_option("n", faa_n, "Order, 1..12")->required()->check(CLI::Range(1, 12));
    faa->add_option("--format", faa_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    VerifyOptions verify_options;
    std::string dims_text = "3,3";
    std::string verify_format = "text";
    auto* verify = app.add_subcommand("verify", "Run the randomized and exhaustive verification suites");
    verify->add_option("--trials", verify_options.trials, "Random trials per suite");
    verify->add_option("--seed", verify_options.seed, "Base seed");
    verify->add_option("--max-order", verify_options.max_order, "Largest |alpha| for the jet suites")
        ->check(CLI::Range(1, 8));
    verify->add_option("--dims", dims_text, "Upper bounds \"d,c\" for input and output dimensions");
    verify->add_option("--max-cardinality", verify_options.max_cardinality,
                       "Largest |alpha| for the exhaustive partition suites")
        ->check(CLI::Range(1, 9));
    verify->add_option("--format", verify_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::string text;
    int status = 0;
    try {
        const Mode mode = parse_mode(mode_text);
        if (*partitions) {
            const auto alpha = read_index(partitions_index);
            const auto enumeration = multiset_partitions(alpha, partitions_k);
            text = (counts_only ? counts_json(enumeration) : to_json(enumeration)).dump(2) + "\n";
        } else if (*expand) {
            const auto alpha = read_index(expand_index);
            if (alpha.empty()) {
                throw InvalidArgument("alpha must be nonempty");
            }
            if (expand_format == "text") {
                text = render_summation_form(alpha, expand_c);
            } else if (expand_format == "terms") {
                text = render_terms(expand_symbolic(alpha, expand_c));
            } else {
                text = to_json(expand_symbolic(alpha, expand_c)).dump(2) + "\n";
            }
        } else if (*compose) {
            const auto f = read_f(read_json_file(f_path));
            const auto g = map_jet_from_json(read_json_file(g_path));
            const bool any_float = std::holds_alternative<DerivativeTensor<double>>(f) ||
                                   std::holds_alternative<MapJet<double>>(g);
            if (mode == Mode::rational && any_float && app.count("--mode") > 0) {
                throw InvalidArgument("--mode rational requested but an input jet is float");
            }
            const json result = mode == Mode::floating || any_float
                                    ? compose_in_mode<double>(f, g, compose_order)
                                    : compose_in_mode<Rational>(f, g, compose_order);
            text = result.dump(2) + "\n";
        } else if (*faa) {
            const auto rows = faa_di_bruno_1d(faa_n);
            text = faa_format == "json" ? to_json(rows).dump(2) + "\n" : render_faa_table(rows);
        } else if (*verify) {
            unsigned d = 0;
            unsigned c = 0;
            char trailing = 0;
            if (std::sscanf(dims_text.c_str(), "%u,%u%c", &d, &c, &trailing) != 2 || d == 0 || c == 0) {
                throw InvalidArgument("--dims must look like \"d,c\" with positive integers");
            }
            verify_options.in_dim = d;
            verify_options.out_dim = c;
            verify_options.mode = mode;
            const auto summary = run_verification(verify_options);
            text = verify_format == "json" ? summary.to_json().dump(2) + "\n" : render_verify_report(summary);
            status = summary.passed() ? 0 : kExitMismatch;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!(out << text)) {
            std::cerr << "error: cannot write " << output_path << '\n';
            return kExitUsage;
        }
    }
    return status;
}
