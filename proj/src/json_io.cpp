#include "bagchain/json_io.hpp"

#include <set>

#include "bagchain/errors.hpp"

namespace bagchain {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object()) {
        throw ParseError(std::string("expected a JSON object with field '") + name + "'");
    }
    auto it = j.find(name);
    if (it == j.end()) {
        throw ParseError(std::string("missing field '") + name + "'");
    }
    return *it;
}

std::size_t size_field(const json& j, const char* name) {
    const json& value = field(j, name);
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw ParseError(std::string("field '") + name + "' must be a nonnegative integer");
    }
    return value.get<std::size_t>();
}

json scalar_json(const Rational& x) { return x.get_str(); }
json scalar_json(double x) { return x; }

template <class T>
T scalar_from_json(const json& j);

template <>
Rational scalar_from_json<Rational>(const json& j) {
    return rational_from_json(j);
}

template <>
double scalar_from_json<double>(const json& j) {
    if (!j.is_number()) {
        throw ParseError("float-mode value must be a JSON number, got " + j.dump());
    }
    return j.get<double>();
}

template <class T>
json tensor_json(const DerivativeTensor<T>& tensor) {
    json entries = json::array();
    for (const auto& [index, value] : tensor.entries()) {
        entries.push_back({{"index", to_json(index)}, {"value", scalar_json(value)}});
    }
    return {{"dim", tensor.dim()},
            {"order", tensor.order()},
            {"mode", to_string(ScalarTraits<T>::mode)},
            {"entries", std::move(entries)}};
}

template <class T>
DerivativeTensor<T> read_tensor(const json& j) {
    const std::size_t dim = size_field(j, "dim");
    const std::size_t order = size_field(j, "order");
    if (dim == 0) {
        throw ParseError("field 'dim' must be positive");
    }
    DerivativeTensor<T> tensor(dim, order);
    const json& entries = field(j, "entries");
    if (!entries.is_array()) {
        throw ParseError("field 'entries' must be an array");
    }
    std::set<MultisetIndex> seen;
    for (const auto& entry : entries) {
        const auto index = index_from_json(field(entry, "index"));
        if (index.dim() != dim) {
            throw ParseError("entry index " + index.to_string() + " has dimension " +
                             std::to_string(index.dim()) + ", tensor has dim " + std::to_string(dim));
        }
        if (index.cardinality() > order) {
            throw ParseError("entry index " + index.to_string() + " exceeds the tensor order " +
                             std::to_string(order));
        }
        if (!seen.insert(index).second) {
            throw ParseError("duplicate entry for index " + index.to_string());
        }
        tensor.at(index) = scalar_from_json<T>(field(entry, "value"));
    }
    return tensor;
}

template <class T>
json jet_json(const MapJet<T>& jet) {
    json base = json::array();
    for (const auto& x : jet.base_point()) {
        base.push_back(scalar_json(x));
    }
    json components = json::array();
    for (const auto& component : jet.components()) {
        components.push_back(tensor_json(component));
    }
    return {{"in_dim", jet.in_dim()},
            {"out_dim", jet.out_dim()},
            {"order", jet.order()},
            {"base_point", std::move(base)},
            {"components", std::move(components)}};
}

template <class T>
MapJet<T> read_jet(const json& j, std::size_t in_dim, std::size_t out_dim, std::size_t order) {
    const json& base = field(j, "base_point");
    if (!base.is_array() || base.size() != in_dim) {
        throw ParseError("field 'base_point' must be an array of in_dim = " + std::to_string(in_dim) +
                         " values");
    }
    std::vector<T> point;
    for (const auto& x : base) {
        point.push_back(scalar_from_json<T>(x));
    }
    std::vector<DerivativeTensor<T>> components;
    for (const auto& c : field(j, "components")) {
        auto tensor = read_tensor<T>(c);
        if (tensor.dim() != in_dim) {
            throw ParseError("component tensor dim " + std::to_string(tensor.dim()) +
                             " does not match in_dim = " + std::to_string(in_dim));
        }
        if (tensor.order() != order) {
            throw ParseError("component tensor order " + std::to_string(tensor.order()) +
                             " does not match order = " + std::to_string(order));
        }
        components.push_back(std::move(tensor));
    }
    if (components.size() != out_dim) {
        throw ParseError("expected out_dim = " + std::to_string(out_dim) + " components, got " +
                         std::to_string(components.size()));
    }
    return MapJet<T>(std::move(point), std::move(components));
}

}  // namespace

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) {
        return Rational(mpz_class(std::to_string(j.get<long long>())));
    }
    if (!j.is_string()) {
        throw ParseError("rational value must be a \"p/q\" string or an integer, got " + j.dump());
    }
    const auto text = j.get<std::string>();
    const auto slash = text.find('/');
    auto valid_integer = [](const std::string& s, bool allow_sign) {
        std::size_t start = allow_sign && !s.empty() && s[0] == '-' ? 1 : 0;
        if (start == s.size()) {
            return false;
        }
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return false;
            }
        }
        return true;
    };
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false)) {
        throw ParseError("malformed rational \"" + text + "\"");
    }
    mpz_class denominator(den);
    if (denominator == 0) {
        throw ParseError("zero denominator in \"" + text + "\"");
    }
    Rational value(mpz_class(num), denominator);
    value.canonicalize();
    return value;
}

json to_json(const MultisetIndex& index) {
    json out = json::array();
    for (auto m : index.multiplicities()) {
        out.push_back(m);
    }
    return out;
}

MultisetIndex index_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("multiset index must be a nonempty array of multiplicities, got " + j.dump());
    }
    std::vector<MultisetIndex::Count> mult;
    for (const auto& m : j) {
        if (!m.is_number_unsigned() && !(m.is_number_integer() && m.get<long long>() >= 0)) {
            throw ParseError("multiplicities must be nonnegative integers, got " + m.dump());
        }
        mult.push_back(m.get<MultisetIndex::Count>());
    }
    return MultisetIndex(std::move(mult));
}

json to_json(const MultisetPartition& partition) {
    json blocks = json::array();
    for (const auto& block : partition.blocks()) {
        blocks.push_back(to_json(block));
    }
    return blocks;
}

json to_json(const PartitionEnumeration& enumeration) {
    json entries = json::array();
    for (const auto& entry : enumeration.entries) {
        entries.push_back({{"blocks", to_json(entry.partition)},
                           {"multiplicity", entry.multiplicity.get_str()}});
    }
    return {{"parent", to_json(enumeration.parent)},
            {"k", enumeration.order},
            {"entries", std::move(entries)}};
}

json counts_json(const PartitionEnumeration& enumeration) {
    return {{"distinct", enumeration.distinct()},
            {"cardinality", enumeration.cardinality().get_str()},
            {"stirling2", stirling2(enumeration.parent.cardinality(), enumeration.order).get_str()}};
}

json to_json(const DerivativeTensor<Rational>& tensor) { return tensor_json(tensor); }
json to_json(const DerivativeTensor<double>& tensor) { return tensor_json(tensor); }
json to_json(const AnyTensor& tensor) {
    return std::visit([](const auto& t) { return tensor_json(t); }, tensor);
}

AnyTensor tensor_from_json(const json& j) {
    const json& mode = field(j, "mode");
    if (!mode.is_string()) {
        throw ParseError("field 'mode' must be \"rational\" or \"float\"");
    }
    const auto text = mode.get<std::string>();
    if (text == "rational") {
        return read_tensor<Rational>(j);
    }
    if (text == "float") {
        return read_tensor<double>(j);
    }
    throw ParseError("field 'mode' must be \"rational\" or \"float\", got \"" + text + "\"");
}

json to_json(const MapJet<Rational>& jet) { return jet_json(jet); }
json to_json(const MapJet<double>& jet) { return jet_json(jet); }

AnyMapJet map_jet_from_json(const json& j) {
    const std::size_t in_dim = size_field(j, "in_dim");
    const std::size_t out_dim = size_field(j, "out_dim");
    const std::size_t order = size_field(j, "order");
    if (in_dim == 0 || out_dim == 0) {
        throw ParseError("in_dim and out_dim must be positive");
    }
    const json& components = field(j, "components");
    if (!components.is_array() || components.empty()) {
        throw ParseError("field 'components' must be a nonempty array");
    }
    std::string mode;
    for (const auto& c : components) {
        const json& m = field(c, "mode");
        const std::string this_mode = m.is_string() ? m.get<std::string>() : "";
        if (mode.empty()) {
            mode = this_mode;
        } else if (this_mode != mode) {
            throw ParseError("map jet components mix arithmetic modes");
        }
    }
    if (mode == "rational") {
        return read_jet<Rational>(j, in_dim, out_dim, order);
    }
    if (mode == "float") {
        return read_jet<double>(j, in_dim, out_dim, order);
    }
    throw ParseError("component 'mode' must be \"rational\" or \"float\"");
}

json to_json(const SymbolicExpansion& expansion) {
    json terms = json::array();
    for (const auto& term : expansion.terms) {
        json factors = json::array();
        for (const auto& factor : term.factors) {
            factors.push_back({{"block", to_json(factor.block)}, {"component", factor.component}});
        }
        terms.push_back({{"f_labels", term.f_labels},
                         {"factors", std::move(factors)},
                         {"coefficient", term.coefficient.get_str()}});
    }
    return {{"alpha", to_json(expansion.alpha)},
            {"out_dim", expansion.out_dim},
            {"terms", std::move(terms)}};
}

json to_json(const std::vector<FaaTerm>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back({{"k", row.k}, {"m", row.m}, {"coefficient", row.coefficient.get_str()}});
    }
    return out;
}

}  // namespace bagchain
