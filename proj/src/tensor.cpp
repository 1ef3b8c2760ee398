#include "bagchain/tensor.hpp"

#include "bagchain/errors.hpp"

namespace bagchain {

std::string to_string(Mode mode) {
    return mode == Mode::rational ? "rational" : "float";
}

Mode parse_mode(const std::string& text) {
    if (text == "rational") {
        return Mode::rational;
    }
    if (text == "float") {
        return Mode::floating;
    }
    throw InvalidArgument("unknown arithmetic mode '" + text + "' (expected rational or float)");
}

template <class T>
DerivativeTensor<T>::DerivativeTensor(std::size_t dim, std::size_t order) : dim_(dim), order_(order) {
    for (auto& index : enumerate_bags_up_to(dim, order)) {
        entries_.emplace(std::move(index), T(0));
    }
}

template <class T>
void DerivativeTensor<T>::check(const MultisetIndex& index) const {
    if (index.dim() != dim_) {
        throw DimensionMismatch("index " + index.to_string() + " has dimension " +
                                std::to_string(index.dim()) + " but the tensor has dimension " +
                                std::to_string(dim_));
    }
    if (index.cardinality() > order_) {
        throw InsufficientOrder("index " + index.to_string() + " has order " +
                                std::to_string(index.cardinality()) + " but the tensor stops at order " +
                                std::to_string(order_));
    }
}

template <class T>
const T& DerivativeTensor<T>::at(const MultisetIndex& index) const {
    check(index);
    return entries_.find(index)->second;
}

template <class T>
T& DerivativeTensor<T>::at(const MultisetIndex& index) {
    check(index);
    return entries_.find(index)->second;
}

template <class T>
DerivativeTensor<T> DerivativeTensor<T>::truncated(std::size_t order) const {
    if (order > order_) {
        throw InsufficientOrder("cannot truncate an order-" + std::to_string(order_) +
                                " tensor to order " + std::to_string(order));
    }
    DerivativeTensor out(dim_, order);
    for (auto& [index, value] : out.entries_) {
        value = entries_.at(index);
    }
    return out;
}

template <class T>
MapJet<T>::MapJet(std::vector<T> base_point, std::vector<DerivativeTensor<T>> components)
    : base_point_(std::move(base_point)), components_(std::move(components)) {
    if (components_.empty()) {
        throw InvalidArgument("a map jet needs at least one component");
    }
    if (base_point_.empty()) {
        throw InvalidArgument("a map jet needs a nonempty base point");
    }
    const std::size_t order = components_.front().order();
    for (std::size_t b = 0; b < components_.size(); ++b) {
        if (components_[b].dim() != base_point_.size()) {
            throw DimensionMismatch("component " + std::to_string(b + 1) + " has dimension " +
                                    std::to_string(components_[b].dim()) + " but the base point has " +
                                    std::to_string(base_point_.size()) + " coordinates");
        }
        if (components_[b].order() != order) {
            throw InvalidArgument("component " + std::to_string(b + 1) + " has order " +
                                  std::to_string(components_[b].order()) + ", expected " +
                                  std::to_string(order));
        }
    }
}

template <class T>
const DerivativeTensor<T>& MapJet<T>::component(std::size_t b) const {
    if (b < 1 || b > components_.size()) {
        throw InvalidArgument("component " + std::to_string(b) + " outside {1,...," +
                              std::to_string(components_.size()) + "}");
    }
    return components_[b - 1];
}

template <class T>
MapJet<T> identity_jet(std::vector<T> base_point, std::size_t order) {
    const std::size_t dim = base_point.size();
    std::vector<DerivativeTensor<T>> components;
    components.reserve(dim);
    for (std::size_t b = 1; b <= dim; ++b) {
        DerivativeTensor<T> component(dim, order);
        component.at(MultisetIndex::empty_bag(dim)) = base_point[b - 1];
        if (order >= 1) {
            component.at(MultisetIndex::unit(dim, b)) = T(1);
        }
        components.push_back(std::move(component));
    }
    return MapJet<T>(std::move(base_point), std::move(components));
}

template class DerivativeTensor<Rational>;
template class DerivativeTensor<double>;
template class MapJet<Rational>;
template class MapJet<double>;
template MapJet<Rational> identity_jet(std::vector<Rational>, std::size_t);
template MapJet<double> identity_jet(std::vector<double>, std::size_t);

}  // namespace bagchain
