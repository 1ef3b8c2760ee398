#include "bagchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bagchain/chain_rule.hpp"
#include "bagchain/errors.hpp"

namespace bagchain {

template <class T>
DerivativeTensor<T> jet_of_function(const Expr& e, std::span<const T> point, std::size_t order) {
    const std::size_t dim = point.size();
    if (dim == 0) {
        throw InvalidArgument("jet_of_function needs a nonempty point");
    }
    if (e.max_variable() > dim) {
        throw DimensionMismatch("expression uses x" + std::to_string(e.max_variable()) +
                                " but the point has " + std::to_string(dim) + " coordinates");
    }
    DerivativeTensor<T> jet(dim, order);
    std::map<MultisetIndex, Expr> derivatives;
    for (const auto& alpha : enumerate_bags_up_to(dim, order)) {
        if (alpha.empty()) {
            derivatives.emplace(alpha, e);
        } else {
            // Peel off the largest label: alpha = parent u [last].
            const std::size_t last = alpha.sorted_labels().back();
            const auto parent = difference(alpha, MultisetIndex::unit(dim, last));
            derivatives.emplace(alpha, diff(derivatives.at(parent), last));
        }
        jet.at(alpha) = evaluate(derivatives.at(alpha), point);
    }
    return jet;
}

template <class T>
MapJet<T> jet_of_map(std::span<const Expr> exprs, std::span<const T> point, std::size_t order) {
    if (exprs.empty()) {
        throw InvalidArgument("jet_of_map needs at least one component");
    }
    std::vector<DerivativeTensor<T>> components;
    components.reserve(exprs.size());
    for (const auto& e : exprs) {
        components.push_back(jet_of_function(e, point, order));
    }
    return MapJet<T>(std::vector<T>(point.begin(), point.end()), std::move(components));
}

template DerivativeTensor<Rational> jet_of_function(const Expr&, std::span<const Rational>, std::size_t);
template DerivativeTensor<double> jet_of_function(const Expr&, std::span<const double>, std::size_t);
template MapJet<Rational> jet_of_map(std::span<const Expr>, std::span<const Rational>, std::size_t);
template MapJet<double> jet_of_map(std::span<const Expr>, std::span<const double>, std::size_t);

bool CompositionReport::all_agree() const {
    return std::all_of(indices.begin(), indices.end(), [](const IndexAgreement& i) { return i.agree; });
}

double relative_error(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

namespace {

std::string format_double(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

template <class T>
CompositionReport run_both_sides(const Expr& f, std::span<const Expr> g, std::span<const T> point,
                                 std::size_t order) {
    const Expr composition = substitute(f, g);
    const auto direct = jet_of_function(composition, point, order);

    std::vector<T> image;
    image.reserve(g.size());
    for (const auto& component : g) {
        image.push_back(evaluate(component, point));
    }
    const auto f_jet = jet_of_function(f, std::span<const T>(image), order);
    const auto g_jet = jet_of_map(g, point, order);
    const auto composed = compose_jet(f_jet, g_jet, order);

    CompositionReport report;
    report.mode = ScalarTraits<T>::mode;
    report.order = order;
    for (const auto& [index, expected] : direct.entries()) {
        const T& actual = composed.at(index);
        IndexAgreement row{index, {}, {}, false, 0.0};
        if constexpr (std::is_same_v<T, double>) {
            row.direct = format_double(expected);
            row.composed = format_double(actual);
            row.relative_error = relative_error(expected, actual);
            row.agree = row.relative_error <= kFloatTolerance;
        } else {
            row.direct = expected.get_str();
            row.composed = actual.get_str();
            row.agree = expected == actual;
            row.relative_error = row.agree ? 0.0 : relative_error(expected.get_d(), actual.get_d());
        }
        report.max_relative_error = std::max(report.max_relative_error, row.relative_error);
        report.indices.push_back(std::move(row));
    }
    return report;
}

}  // namespace

CompositionReport verify_composition(const Expr& f, std::span<const Expr> g,
                                     std::span<const Rational> point, std::size_t order,
                                     bool force_float) {
    if (g.empty()) {
        throw InvalidArgument("g needs at least one component");
    }
    if (f.max_variable() > g.size()) {
        throw DimensionMismatch("f uses u" + std::to_string(f.max_variable()) + " but g has only " +
                                std::to_string(g.size()) + " components");
    }
    const bool exact = !force_float && f.is_polynomial() &&
                       std::all_of(g.begin(), g.end(), [](const Expr& e) { return e.is_polynomial(); });
    if (exact) {
        return run_both_sides<Rational>(f, g, point, order);
    }
    std::vector<double> approx;
    approx.reserve(point.size());
    for (const auto& x : point) {
        approx.push_back(x.get_d());
    }
    return run_both_sides<double>(f, g, std::span<const double>(approx), order);
}

}  // namespace bagchain
