#include "bagchain/symbolic.hpp"

#include <algorithm>
#include <sstream>

#include "bagchain/errors.hpp"
#include "bagchain/partitions.hpp"

namespace bagchain {

namespace {

// "12" for [1,2] when every label is a single digit, "1,10" otherwise.
std::string label_string(const MultisetIndex& index) {
    const auto labels = index.sorted_labels();
    const bool compact = index.dim() <= 9;
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0 && !compact) {
            out += ',';
        }
        out += std::to_string(labels[i]);
    }
    return out;
}

std::string tuple_string(const std::vector<std::size_t>& labels, bool compact) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0 && !compact) {
            out += ',';
        }
        out += std::to_string(labels[i]);
    }
    return out;
}

bool next_tuple(std::vector<std::size_t>& tuple, std::size_t range) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (tuple[i] < range) {
            ++tuple[i];
            return true;
        }
        tuple[i] = 1;
    }
    return false;
}

void require_expandable(const MultisetIndex& alpha, std::size_t out_dim) {
    if (alpha.empty()) {
        throw InvalidArgument("cannot expand the order-0 derivative");
    }
    if (out_dim == 0) {
        throw InvalidArgument("g must have at least one component");
    }
}

}  // namespace

SymbolicExpansion expand_symbolic(const MultisetIndex& alpha, std::size_t out_dim) {
    require_expandable(alpha, out_dim);
    SymbolicExpansion expansion{alpha, out_dim, {}};
    for (std::size_t n = 1; n <= alpha.cardinality(); ++n) {
        const auto layer = multiset_partitions(alpha, n);
        std::vector<std::size_t> b(n, 1);
        do {
            for (const auto& entry : layer.entries) {
                SymbolicTerm term{b, {}, entry.multiplicity};
                const auto blocks = entry.partition.blocks();
                for (std::size_t k = 0; k < n; ++k) {
                    term.factors.push_back(GFactor{blocks[k], b[k]});
                }
                expansion.terms.push_back(std::move(term));
            }
        } while (next_tuple(b, out_dim));
    }
    return expansion;
}

std::string render_summation_form(const MultisetIndex& alpha, std::size_t out_dim) {
    require_expandable(alpha, out_dim);
    std::ostringstream out;
    out << "∂_{" << label_string(alpha) << "}(f∘g)\n";
    bool first = true;
    for (std::size_t n = alpha.cardinality(); n >= 1; --n) {
        const auto layer = multiset_partitions(alpha, n);
        std::string dummies;
        std::string f_indices;
        for (std::size_t k = 1; k <= n; ++k) {
            dummies += (k > 1 ? "," : "") + ("b" + std::to_string(k));
            f_indices += (k > 1 ? " " : "") + ("b" + std::to_string(k));
        }
        for (const auto& entry : layer.entries) {
            out << (first ? "  = " : "  + ");
            first = false;
            if (entry.multiplicity != 1) {
                out << entry.multiplicity.get_str() << " · ";
            }
            out << "Σ_{" << dummies << "=1}^{" << out_dim << "} ∂_{" << f_indices << "}f";
            const auto blocks = entry.partition.blocks();
            for (std::size_t k = 0; k < n; ++k) {
                out << " · ∂_{" << label_string(blocks[k]) << "}g^{b" << (k + 1) << "}";
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string render_terms(const SymbolicExpansion& expansion) {
    std::ostringstream out;
    out << "∂_{" << label_string(expansion.alpha) << "}(f∘g)\n";
    const bool compact = expansion.out_dim <= 9;
    bool first = true;
    for (const auto& term : expansion.terms) {
        out << (first ? "  = " : "  + ");
        first = false;
        if (term.coefficient != 1) {
            out << term.coefficient.get_str() << " · ";
        }
        out << "∂_{" << tuple_string(term.f_labels, compact) << "}f";
        for (const auto& factor : term.factors) {
            out << " · ∂_{" << label_string(factor.block) << "}g^{" << factor.component << "}";
        }
        out << '\n';
    }
    return out.str();
}

namespace {

void fill_signatures(std::size_t part, std::size_t left, std::vector<std::size_t>& m,
                     std::vector<std::vector<std::size_t>>& out) {
    if (left == 0) {
        out.push_back(m);
        return;
    }
    if (part == 0) {
        return;
    }
    for (std::size_t copies = left / part + 1; copies-- > 0;) {
        m[part - 1] = copies;
        fill_signatures(part - 1, left - copies * part, m, out);
    }
    m[part - 1] = 0;
}

}  // namespace

std::vector<FaaTerm> faa_di_bruno_1d(std::size_t n) {
    if (n == 0) {
        throw InvalidArgument("faa_di_bruno_1d needs n >= 1");
    }
    std::vector<std::vector<std::size_t>> signatures;
    std::vector<std::size_t> m(n, 0);
    fill_signatures(n, n, m, signatures);

    std::vector<FaaTerm> rows;
    rows.reserve(signatures.size());
    for (auto& sig : signatures) {
        FaaTerm row{0, sig, factorial(n)};
        for (std::size_t i = 1; i <= n; ++i) {
            row.k += sig[i - 1];
            row.coefficient /= factorial(sig[i - 1]);
            mpz_class block_factor;
            mpz_pow_ui(block_factor.get_mpz_t(), factorial(i).get_mpz_t(), sig[i - 1]);
            row.coefficient /= block_factor;
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const FaaTerm& a, const FaaTerm& b) {
        if (a.k != b.k) {
            return a.k < b.k;
        }
        return a.m > b.m;
    });
    return rows;
}

std::map<std::vector<std::size_t>, mpz_class> collect_by_block_sizes(const SymbolicExpansion& expansion) {
    std::map<std::vector<std::size_t>, mpz_class> out;
    const std::size_t n = expansion.alpha.cardinality();
    for (const auto& term : expansion.terms) {
        std::vector<std::size_t> m(n, 0);
        for (const auto& factor : term.factors) {
            ++m[factor.block.cardinality() - 1];
        }
        out[m] += term.coefficient;
    }
    return out;
}

}  // namespace bagchain
