#include "bagchain/multiset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bagchain/errors.hpp"

namespace bagchain {

namespace {

std::size_t sum_of(const std::vector<MultisetIndex::Count>& mult) {
    return std::accumulate(mult.begin(), mult.end(), std::size_t{0});
}

void require_dim(std::size_t dim) {
    if (dim == 0) {
        throw InvalidArgument("multiset index dimension must be positive");
    }
}

}  // namespace

MultisetIndex::MultisetIndex(std::vector<Count> multiplicities)
    : mult_(std::move(multiplicities)), cardinality_(sum_of(mult_)) {
    require_dim(mult_.size());
}

MultisetIndex::MultisetIndex(std::initializer_list<Count> multiplicities)
    : MultisetIndex(std::vector<Count>(multiplicities)) {}

MultisetIndex MultisetIndex::empty_bag(std::size_t dim) {
    require_dim(dim);
    return MultisetIndex(std::vector<Count>(dim, 0));
}

MultisetIndex MultisetIndex::unit(std::size_t dim, std::size_t variable) {
    require_dim(dim);
    if (variable < 1 || variable > dim) {
        throw InvalidArgument("variable " + std::to_string(variable) + " outside {1,...," +
                              std::to_string(dim) + "}");
    }
    std::vector<Count> mult(dim, 0);
    mult[variable - 1] = 1;
    return MultisetIndex(std::move(mult));
}

MultisetIndex::Count MultisetIndex::count(std::size_t variable) const {
    if (variable < 1 || variable > dim()) {
        throw InvalidArgument("variable " + std::to_string(variable) + " outside {1,...," +
                              std::to_string(dim()) + "}");
    }
    return mult_[variable - 1];
}

std::vector<std::size_t> MultisetIndex::sorted_labels() const {
    std::vector<std::size_t> labels;
    labels.reserve(cardinality_);
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        labels.insert(labels.end(), mult_[i], i + 1);
    }
    return labels;
}

bool MultisetIndex::contains(const MultisetIndex& other) const {
    if (other.dim() != dim()) {
        return false;
    }
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        if (other.mult_[i] > mult_[i]) {
            return false;
        }
    }
    return true;
}

std::string MultisetIndex::to_string() const {
    std::ostringstream out;
    out << '[';
    bool first = true;
    for (std::size_t label : sorted_labels()) {
        if (!first) {
            out << ',';
        }
        out << label;
        first = false;
    }
    out << ']';
    return out.str();
}

MultisetIndex union_of(const MultisetIndex& a, const MultisetIndex& b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("cannot unite multiset indices over " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()) + " variables");
    }
    std::vector<MultisetIndex::Count> mult(a.multiplicities().begin(), a.multiplicities().end());
    const auto other = b.multiplicities();
    for (std::size_t i = 0; i < mult.size(); ++i) {
        mult[i] += other[i];
    }
    return MultisetIndex(std::move(mult));
}

MultisetIndex difference(const MultisetIndex& whole, const MultisetIndex& part) {
    if (whole.dim() != part.dim()) {
        throw DimensionMismatch("cannot subtract multiset indices over different dimensions");
    }
    if (!whole.contains(part)) {
        throw InvalidArgument(part.to_string() + " is not contained in " + whole.to_string());
    }
    std::vector<MultisetIndex::Count> mult(whole.multiplicities().begin(),
                                           whole.multiplicities().end());
    const auto sub = part.multiplicities();
    for (std::size_t i = 0; i < mult.size(); ++i) {
        mult[i] -= sub[i];
    }
    return MultisetIndex(std::move(mult));
}

MultisetIndex from_labels(std::size_t dim, std::span<const std::size_t> labels) {
    require_dim(dim);
    std::vector<MultisetIndex::Count> mult(dim, 0);
    for (std::size_t label : labels) {
        if (label < 1 || label > dim) {
            throw InvalidArgument("label " + std::to_string(label) + " outside {1,...," +
                                  std::to_string(dim) + "}");
        }
        ++mult[label - 1];
    }
    return MultisetIndex(std::move(mult));
}

MultisetIndex from_labels(std::size_t dim, std::initializer_list<std::size_t> labels) {
    return from_labels(dim, std::span<const std::size_t>(labels.begin(), labels.size()));
}

MultisetIndex from_labels(std::size_t dim, const Labeling& labeling) {
    return from_labels(dim, std::span<const std::size_t>(labeling.entries));
}

std::vector<Labeling> labelings(const MultisetIndex& a) {
    std::vector<Labeling> out;
    auto labels = a.sorted_labels();
    do {
        out.push_back(Labeling{labels});
    } while (std::next_permutation(labels.begin(), labels.end()));
    return out;
}

mpz_class factorial(std::size_t n) {
    mpz_class result;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    return result;
}

mpz_class binomial(std::size_t n, std::size_t k) {
    mpz_class result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

mpz_class labeling_count(const MultisetIndex& a) {
    mpz_class count = factorial(a.cardinality());
    for (auto m : a.multiplicities()) {
        count /= factorial(m);
    }
    return count;
}

namespace {

void fill_bags(std::vector<MultisetIndex::Count>& current, std::size_t position, std::size_t left,
               std::vector<MultisetIndex>& out) {
    if (position + 1 == current.size()) {
        current[position] = static_cast<MultisetIndex::Count>(left);
        out.emplace_back(current);
        return;
    }
    for (std::size_t take = left + 1; take-- > 0;) {
        current[position] = static_cast<MultisetIndex::Count>(take);
        fill_bags(current, position + 1, left - take, out);
    }
}

}  // namespace

std::vector<MultisetIndex> enumerate_bag(std::size_t dim, std::size_t n) {
    require_dim(dim);
    std::vector<MultisetIndex> out;
    std::vector<MultisetIndex::Count> current(dim, 0);
    fill_bags(current, 0, n, out);
    return out;
}

std::vector<MultisetIndex> enumerate_bags_up_to(std::size_t dim, std::size_t max_order) {
    std::vector<MultisetIndex> out;
    for (std::size_t n = 0; n <= max_order; ++n) {
        auto layer = enumerate_bag(dim, n);
        out.insert(out.end(), std::make_move_iterator(layer.begin()),
                   std::make_move_iterator(layer.end()));
    }
    return out;
}

mpz_class bag_count(std::size_t dim, std::size_t n) {
    require_dim(dim);
    return binomial(n + dim - 1, dim - 1);
}

}  // namespace bagchain
