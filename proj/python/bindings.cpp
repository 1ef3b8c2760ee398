#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "bagchain/chain_rule.hpp"
#include "bagchain/errors.hpp"
#include "bagchain/expr.hpp"
#include "bagchain/json_io.hpp"
#include "bagchain/oracle.hpp"
#include "bagchain/partitions.hpp"
#include "bagchain/symbolic.hpp"
#include "bagchain/verify.hpp"

namespace py = pybind11;
using namespace bagchain;

namespace {

py::object to_int(const mpz_class& z) { return py::module_::import("builtins").attr("int")(z.get_str()); }

MultisetIndex to_index(const std::vector<MultisetIndex::Count>& multiplicities) {
    return MultisetIndex(multiplicities);
}

std::vector<MultisetIndex::Count> from_index(const MultisetIndex& index) {
    auto m = index.multiplicities();
    return {m.begin(), m.end()};
}

py::list enumeration_list(const PartitionEnumeration& e) {
    py::list out;
    for (const auto& entry : e.entries) {
        py::list blocks;
        for (const auto& block : entry.partition.blocks()) {
            blocks.append(py::cast(from_index(block)));
        }
        out.append(py::make_tuple(blocks, to_int(entry.multiplicity)));
    }
    return out;
}

PartitionEnumeration enumeration_from_list(const std::vector<MultisetIndex::Count>& parent, std::size_t k,
                                           const py::list& entries) {
    PartitionEnumeration e{to_index(parent), k, {}};
    for (const auto& item : entries) {
        const auto pair = item.cast<py::tuple>();
        std::vector<MultisetIndex> blocks;
        for (const auto& b : pair[0].cast<std::vector<std::vector<MultisetIndex::Count>>>()) {
            blocks.emplace_back(b);
        }
        e.entries.push_back({MultisetPartition(std::move(blocks), parent.size()),
                             mpz_class(py::str(pair[1]).cast<std::string>())});
    }
    return e;
}

AnyTensor scalar_component(const AnyMapJet& jet) {
    return std::visit(
        [](const auto& j) -> AnyTensor {
            if (j.out_dim() != 1) {
                throw InvalidArgument("f_jet must be scalar valued (out_dim = 1)");
            }
            return j.component(1);
        },
        jet);
}

std::string compose_json(const std::string& f_text, const std::string& g_text, std::size_t order) {
    const auto f_json = json::parse(f_text);
    const AnyTensor f = f_json.contains("components") ? scalar_component(map_jet_from_json(f_json))
                                                      : tensor_from_json(f_json);
    const auto g = map_jet_from_json(json::parse(g_text));
    if (f.index() != g.index()) {
        throw InvalidArgument("f_jet and g_jet use different arithmetic modes");
    }
    if (auto fr = std::get_if<DerivativeTensor<Rational>>(&f)) {
        return to_json(compose_jet(*fr, std::get<MapJet<Rational>>(g), order)).dump();
    }
    return to_json(compose_jet(std::get<DerivativeTensor<double>>(f), std::get<MapJet<double>>(g), order)).dump();
}

py::dict composition_report(const std::string& f, const std::vector<std::string>& g,
                            const std::vector<std::string>& point, std::size_t order, bool force_float) {
    const Expr fe = parse_expr(f);
    std::vector<Expr> ge;
    for (const auto& text : g) {
        ge.push_back(parse_expr(text));
    }
    std::vector<Rational> x;
    for (const auto& p : point) {
        x.push_back(rational_from_json(json(p)));
    }
    const auto report = verify_composition(fe, ge, x, order, force_float);
    py::dict out;
    out["mode"] = to_string(report.mode);
    out["order"] = report.order;
    out["indices"] = report.indices.size();
    out["max_relative_error"] = report.max_relative_error;
    out["all_agree"] = report.all_agree();
    return out;
}

}  // namespace

PYBIND11_MODULE(_bagchain, m) {
    m.doc() = "Multivariate higher-order chain rule over multiset indices";

    const auto& error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error.ptr());
    py::register_exception<InsufficientOrder>(m, "InsufficientOrder", error.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());

    m.def("from_labels", [](std::size_t dim, const std::vector<std::size_t>& labels) {
        return from_index(from_labels(dim, std::span<const std::size_t>(labels)));
    }, py::arg("dim"), py::arg("labels"));
    m.def("labelings", [](const std::vector<MultisetIndex::Count>& alpha) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& l : labelings(to_index(alpha))) {
            out.push_back(l.entries);
        }
        return out;
    }, py::arg("alpha"));
    m.def("enumerate_bag", [](std::size_t dim, std::size_t n) {
        std::vector<std::vector<MultisetIndex::Count>> out;
        for (const auto& b : enumerate_bag(dim, n)) {
            out.push_back(from_index(b));
        }
        return out;
    }, py::arg("dim"), py::arg("n"));

    m.def("partitions", [](const std::vector<MultisetIndex::Count>& alpha, std::size_t k, const std::string& generator) {
        const auto a = to_index(alpha);
        if (generator == "direct") {
            return enumeration_list(multiset_partitions(a, k));
        }
        if (generator == "projection") {
            return enumeration_list(multiset_partitions_by_projection(a, k));
        }
        throw InvalidArgument("generator must be \"direct\" or \"projection\"");
    }, py::arg("alpha"), py::arg("k"), py::arg("generator") = "direct");
    m.def("partition_counts", [](const std::vector<MultisetIndex::Count>& alpha, std::size_t k) {
        const auto e = multiset_partitions(to_index(alpha), k);
        py::dict out;
        out["distinct"] = e.distinct();
        out["cardinality"] = to_int(e.cardinality());
        out["stirling2"] = to_int(stirling2(e.parent.cardinality(), k));
        return out;
    }, py::arg("alpha"), py::arg("k"));
    m.def("extend_partitions", [](std::size_t a0, const std::vector<MultisetIndex::Count>& alpha, std::size_t n,
                                  const py::list& prev_n, const py::list& prev_n1) {
        const auto low = enumeration_from_list(alpha, n - 1, prev_n);
        const auto high = enumeration_from_list(alpha, n, prev_n1);
        return enumeration_list(extend_partitions(a0, low, high));
    }, py::arg("a0"), py::arg("alpha"), py::arg("n"), py::arg("prev_n"), py::arg("prev_n1"));
    m.def("stirling2", [](std::size_t n, std::size_t k) { return to_int(stirling2(n, k)); });
    m.def("bell", [](std::size_t n) { return to_int(bell(n)); });

    m.def("expand", [](const std::vector<MultisetIndex::Count>& alpha, std::size_t c, const std::string& format) {
        const auto a = to_index(alpha);
        if (format == "text") {
            return render_summation_form(a, c);
        }
        if (format == "terms") {
            return render_terms(expand_symbolic(a, c));
        }
        if (format == "json") {
            return to_json(expand_symbolic(a, c)).dump();
        }
        throw InvalidArgument("format must be text, terms or json");
    }, py::arg("alpha"), py::arg("c"), py::arg("format") = "text");
    m.def("faa_di_bruno_1d", [](std::size_t n) {
        py::list out;
        for (const auto& row : faa_di_bruno_1d(n)) {
            out.append(py::make_tuple(row.k, row.m, to_int(row.coefficient)));
        }
        return out;
    }, py::arg("n"));

    m.def("_compose_json", &compose_json, py::arg("f_jet"), py::arg("g_jet"), py::arg("order"));
    m.def("verify_composition", &composition_report, py::arg("f"), py::arg("g"), py::arg("point"), py::arg("order"),
          py::arg("force_float") = false);
    m.def("_verify_json", [](std::size_t trials, std::uint64_t seed, std::size_t max_order, std::size_t d,
                             std::size_t c, const std::string& mode, std::size_t max_cardinality) {
        VerifyOptions o;
        o.trials = trials;
        o.seed = seed;
        o.max_order = max_order;
        o.in_dim = d;
        o.out_dim = c;
        o.mode = parse_mode(mode);
        o.max_cardinality = max_cardinality;
        return run_verification(o).to_json().dump();
    });
}
