#include "bagchain/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "bagchain/errors.hpp"

namespace bagchain {

struct Expr::Node {
    Kind kind;
    Rational value;
    std::size_t index = 0;
    unsigned exponent = 0;
    std::vector<Expr> args;
};

namespace {

std::shared_ptr<const Expr::Node> make_node(Expr::Kind kind, std::vector<Expr> args,
                                             Rational value = 0, std::size_t index = 0,
                                             unsigned exponent = 0) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = kind;
    node->args = std::move(args);
    node->value = std::move(value);
    node->index = index;
    node->exponent = exponent;
    return node;
}

Rational rational_power(const Rational& base, unsigned exponent) {
    Rational result(1);
    for (unsigned i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

}  // namespace

Expr Expr::constant(Rational value) {
    value.canonicalize();
    return Expr(make_node(Kind::constant, {}, std::move(value)));
}

Expr Expr::variable(std::size_t index) {
    if (index == 0) {
        throw InvalidArgument("variables are numbered from 1");
    }
    return Expr(make_node(Kind::variable, {}, 0, index));
}

Expr Expr::sum(Expr a, Expr b) {
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    if (a.kind() == Kind::constant && b.kind() == Kind::constant) {
        return constant(a.value() + b.value());
    }
    return Expr(make_node(Kind::sum, {std::move(a), std::move(b)}));
}

Expr Expr::product(Expr a, Expr b) {
    if (a.is_zero() || b.is_zero()) {
        return constant(0);
    }
    if (a.is_one()) {
        return b;
    }
    if (b.is_one()) {
        return a;
    }
    if (a.kind() == Kind::constant && b.kind() == Kind::constant) {
        return constant(a.value() * b.value());
    }
    return Expr(make_node(Kind::product, {std::move(a), std::move(b)}));
}

Expr Expr::negate(Expr a) {
    if (a.kind() == Kind::constant) {
        return constant(-a.value());
    }
    if (a.kind() == Kind::negate) {
        return a.operand();
    }
    return Expr(make_node(Kind::negate, {std::move(a)}));
}

Expr Expr::power(Expr base, unsigned exponent) {
    if (exponent == 0) {
        return constant(1);
    }
    if (exponent == 1) {
        return base;
    }
    if (base.kind() == Kind::constant) {
        return constant(rational_power(base.value(), exponent));
    }
    return Expr(make_node(Kind::power, {std::move(base)}, 0, 0, exponent));
}

Expr Expr::sin(Expr a) {
    if (a.is_zero()) {
        return constant(0);
    }
    return Expr(make_node(Kind::sin, {std::move(a)}));
}

Expr Expr::cos(Expr a) {
    if (a.is_zero()) {
        return constant(1);
    }
    return Expr(make_node(Kind::cos, {std::move(a)}));
}

Expr Expr::exp(Expr a) {
    if (a.is_zero()) {
        return constant(1);
    }
    return Expr(make_node(Kind::exp, {std::move(a)}));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

const Rational& Expr::value() const {
    if (kind() != Kind::constant) {
        throw InvalidArgument("value() called on a non-constant expression");
    }
    return node_->value;
}

std::size_t Expr::variable_index() const {
    if (kind() != Kind::variable) {
        throw InvalidArgument("variable_index() called on a non-variable expression");
    }
    return node_->index;
}

unsigned Expr::exponent() const {
    if (kind() != Kind::power) {
        throw InvalidArgument("exponent() called on a non-power expression");
    }
    return node_->exponent;
}

const Expr& Expr::lhs() const {
    if (node_->args.empty()) {
        throw InvalidArgument("leaf expression has no operands");
    }
    return node_->args[0];
}

const Expr& Expr::rhs() const {
    if (node_->args.size() < 2) {
        throw InvalidArgument("expression has no second operand");
    }
    return node_->args[1];
}

bool Expr::is_zero() const noexcept { return node_->kind == Kind::constant && node_->value == 0; }
bool Expr::is_one() const noexcept { return node_->kind == Kind::constant && node_->value == 1; }

namespace {

template <class Visit>
void walk_unique(const Expr& root, Visit&& visit) {
    std::unordered_set<const void*> seen;
    std::vector<const Expr*> stack{&root};
    while (!stack.empty()) {
        const Expr* e = stack.back();
        stack.pop_back();
        if (!seen.insert(e->identity()).second) {
            continue;
        }
        visit(*e);
        switch (e->kind()) {
            case Expr::Kind::sum:
            case Expr::Kind::product:
                stack.push_back(&e->lhs());
                stack.push_back(&e->rhs());
                break;
            case Expr::Kind::negate:
            case Expr::Kind::power:
            case Expr::Kind::sin:
            case Expr::Kind::cos:
            case Expr::Kind::exp:
                stack.push_back(&e->operand());
                break;
            default:
                break;
        }
    }
}

}  // namespace

bool Expr::is_polynomial() const {
    bool polynomial = true;
    walk_unique(*this, [&](const Expr& e) {
        if (e.kind() == Kind::sin || e.kind() == Kind::cos || e.kind() == Kind::exp) {
            polynomial = false;
        }
    });
    return polynomial;
}

std::size_t Expr::max_variable() const {
    std::size_t highest = 0;
    walk_unique(*this, [&](const Expr& e) {
        if (e.kind() == Kind::variable) {
            highest = std::max(highest, e.variable_index());
        }
    });
    return highest;
}

std::size_t Expr::node_count() const {
    std::size_t count = 0;
    walk_unique(*this, [&](const Expr&) { ++count; });
    return count;
}

std::string Expr::to_string() const {
    switch (kind()) {
        case Kind::constant:
            return value().get_str();
        case Kind::variable:
            return "x" + std::to_string(variable_index());
        case Kind::sum:
            return "(+ " + lhs().to_string() + " " + rhs().to_string() + ")";
        case Kind::product:
            return "(* " + lhs().to_string() + " " + rhs().to_string() + ")";
        case Kind::negate:
            return "(- " + operand().to_string() + ")";
        case Kind::power:
            return "(^ " + operand().to_string() + " " + std::to_string(exponent()) + ")";
        case Kind::sin:
            return "(sin " + operand().to_string() + ")";
        case Kind::cos:
            return "(cos " + operand().to_string() + ")";
        case Kind::exp:
            return "(exp " + operand().to_string() + ")";
    }
    return {};
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum(a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product(a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
public:
    explicit Differentiator(std::size_t v) : v_(v) {}

    Expr operator()(const Expr& e) {
        if (auto it = memo_.find(e.identity()); it != memo_.end()) {
            return it->second;
        }
        Expr result = compute(e);
        memo_.emplace(e.identity(), result);
        return result;
    }

private:
    Expr compute(const Expr& e) {
        using Kind = Expr::Kind;
        switch (e.kind()) {
            case Kind::constant:
                return Expr::constant(0);
            case Kind::variable:
                return Expr::constant(e.variable_index() == v_ ? 1 : 0);
            case Kind::sum:
                return (*this)(e.lhs()) + (*this)(e.rhs());
            case Kind::product:
                return (*this)(e.lhs()) * e.rhs() + e.lhs() * (*this)(e.rhs());
            case Kind::negate:
                return -(*this)(e.operand());
            case Kind::power: {
                const unsigned k = e.exponent();
                return Expr::constant(k) * Expr::power(e.operand(), k - 1) * (*this)(e.operand());
            }
            case Kind::sin:
                return Expr::cos(e.operand()) * (*this)(e.operand());
            case Kind::cos:
                return -(Expr::sin(e.operand()) * (*this)(e.operand()));
            case Kind::exp:
                return e * (*this)(e.operand());
        }
        throw InvalidArgument("unknown expression node");
    }

    std::size_t v_;
    std::unordered_map<const void*, Expr> memo_;
};

}  // namespace

Expr diff(const Expr& e, std::size_t v) {
    if (v == 0) {
        throw InvalidArgument("variables are numbered from 1");
    }
    return Differentiator(v)(e);
}

Expr diff_along(const Expr& e, const Labeling& labeling) {
    Expr result = e;
    for (std::size_t v : labeling.entries) {
        result = diff(result, v);
    }
    return result;
}

Expr diff_multi(const Expr& e, const MultisetIndex& alpha) {
    return diff_along(e, Labeling{alpha.sorted_labels()});
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <class T>
T scalar_power(const T& base, unsigned exponent) {
    T result(1);
    for (unsigned i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

template <class T>
class Evaluator {
public:
    explicit Evaluator(std::span<const T> point) : point_(point) {}

    T operator()(const Expr& e) {
        if (auto it = memo_.find(e.identity()); it != memo_.end()) {
            return it->second;
        }
        T result = compute(e);
        memo_.emplace(e.identity(), result);
        return result;
    }

private:
    T compute(const Expr& e) {
        using Kind = Expr::Kind;
        switch (e.kind()) {
            case Kind::constant:
                if constexpr (std::is_same_v<T, double>) {
                    return e.value().get_d();
                } else {
                    return e.value();
                }
            case Kind::variable:
                if (e.variable_index() > point_.size()) {
                    throw InvalidArgument("variable x" + std::to_string(e.variable_index()) +
                                          " has no coordinate in a " + std::to_string(point_.size()) +
                                          "-dimensional point");
                }
                return point_[e.variable_index() - 1];
            case Kind::sum:
                return T((*this)(e.lhs()) + (*this)(e.rhs()));
            case Kind::product:
                return T((*this)(e.lhs()) * (*this)(e.rhs()));
            case Kind::negate:
                return T(-(*this)(e.operand()));
            case Kind::power:
                return scalar_power((*this)(e.operand()), e.exponent());
            case Kind::sin:
            case Kind::cos:
            case Kind::exp:
                if constexpr (std::is_same_v<T, double>) {
                    const double x = (*this)(e.operand());
                    return e.kind() == Kind::sin ? std::sin(x) : e.kind() == Kind::cos ? std::cos(x) : std::exp(x);
                } else {
                    throw InvalidArgument("transcendental expression cannot be evaluated exactly: " +
                                          e.to_string());
                }
        }
        throw InvalidArgument("unknown expression node");
    }

    std::span<const T> point_;
    std::unordered_map<const void*, T> memo_;
};

}  // namespace

Rational evaluate(const Expr& e, std::span<const Rational> point) {
    return Evaluator<Rational>(point)(e);
}

double evaluate(const Expr& e, std::span<const double> point) {
    return Evaluator<double>(point)(e);
}

// ---------------------------------------------------------------------------
// Substitution

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
    std::unordered_map<const void*, Expr> memo;
    std::function<Expr(const Expr&)> go = [&](const Expr& node) -> Expr {
        if (auto it = memo.find(node.identity()); it != memo.end()) {
            return it->second;
        }
        using Kind = Expr::Kind;
        Expr result = node;
        switch (node.kind()) {
            case Kind::constant:
                break;
            case Kind::variable:
                if (node.variable_index() > replacements.size()) {
                    throw InvalidArgument("no replacement for x" + std::to_string(node.variable_index()));
                }
                result = replacements[node.variable_index() - 1];
                break;
            case Kind::sum:
                result = go(node.lhs()) + go(node.rhs());
                break;
            case Kind::product:
                result = go(node.lhs()) * go(node.rhs());
                break;
            case Kind::negate:
                result = -go(node.operand());
                break;
            case Kind::power:
                result = Expr::power(go(node.operand()), node.exponent());
                break;
            case Kind::sin:
                result = Expr::sin(go(node.operand()));
                break;
            case Kind::cos:
                result = Expr::cos(go(node.operand()));
                break;
            case Kind::exp:
                result = Expr::exp(go(node.operand()));
                break;
        }
        memo.emplace(node.identity(), result);
        return result;
    };
    return go(e);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = parse();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("expression parse error at offset " + std::to_string(pos_) + ": " + message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    static bool is_delimiter(char ch) {
        return ch == '(' || ch == ')' || std::isspace(static_cast<unsigned char>(ch));
    }

    std::string_view token() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !is_delimiter(text_[pos_])) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Expr parse() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        if (text_[pos_] == '(') {
            return parse_list();
        }
        if (text_[pos_] == ')') {
            fail("unexpected ')'");
        }
        const std::size_t start = pos_;
        return parse_atom(token(), start);
    }

    Expr parse_atom(std::string_view atom, std::size_t start) {
        if ((atom[0] == 'x' || atom[0] == 'u') && atom.size() > 1) {
            std::size_t index = 0;
            for (char ch : atom.substr(1)) {
                if (!std::isdigit(static_cast<unsigned char>(ch))) {
                    pos_ = start;
                    fail("bad variable name '" + std::string(atom) + "'");
                }
                index = index * 10 + static_cast<std::size_t>(ch - '0');
            }
            if (index == 0) {
                pos_ = start;
                fail("variables are numbered from 1");
            }
            return Expr::variable(index);
        }
        const bool numeric = std::isdigit(static_cast<unsigned char>(atom[0])) ||
                             (atom.size() > 1 && atom[0] == '-' &&
                              std::isdigit(static_cast<unsigned char>(atom[1])));
        if (numeric) {
            Rational value;
            std::string literal(atom);
            const auto slash = literal.find('/');
            const std::string_view digits_after_sign =
                std::string_view(literal).substr(literal[0] == '-' ? 1 : 0);
            bool ok = true;
            for (char ch : digits_after_sign) {
                if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '/') {
                    ok = false;
                }
            }
            if (!ok || value.set_str(literal, 10) != 0 ||
                (slash != std::string::npos && value.get_den() == 0)) {
                pos_ = start;
                fail("bad number '" + literal + "'");
            }
            if (slash != std::string::npos && mpz_class(literal.substr(slash + 1)) == 0) {
                pos_ = start;
                fail("zero denominator in '" + literal + "'");
            }
            value.canonicalize();
            return Expr::constant(value);
        }
        pos_ = start;
        fail("unknown atom '" + std::string(atom) + "'");
    }

    Expr parse_list() {
        ++pos_;  // '('
        const std::size_t head_start = (skip_space(), pos_);
        const std::string head(token());
        if (head.empty()) {
            fail("missing operator");
        }
        std::vector<Expr> args;
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                fail("unterminated list");
            }
            if (text_[pos_] == ')') {
                ++pos_;
                break;
            }
            if (head == "^" && args.size() == 1) {
                const std::size_t start = pos_;
                const std::string_view k = token();
                unsigned exponent = 0;
                for (char ch : k) {
                    if (!std::isdigit(static_cast<unsigned char>(ch))) {
                        pos_ = start;
                        fail("exponent must be a nonnegative integer literal");
                    }
                    exponent = exponent * 10 + static_cast<unsigned>(ch - '0');
                }
                args.push_back(Expr::constant(exponent));
                continue;
            }
            args.push_back(parse());
        }
        auto arity_error = [&](const std::string& expected) {
            pos_ = head_start;
            fail("'" + head + "' expects " + expected);
        };
        if (head == "+" || head == "*") {
            if (args.size() < 2) {
                arity_error("at least two operands");
            }
            Expr acc = args[0];
            for (std::size_t i = 1; i < args.size(); ++i) {
                acc = head == "+" ? acc + args[i] : acc * args[i];
            }
            return acc;
        }
        if (head == "-") {
            if (args.size() == 1) {
                return -args[0];
            }
            if (args.size() == 2) {
                return args[0] + (-args[1]);
            }
            arity_error("one or two operands");
        }
        if (head == "^") {
            if (args.size() != 2) {
                arity_error("a base and an exponent");
            }
            return Expr::power(args[0], static_cast<unsigned>(args[1].value().get_num().get_ui()));
        }
        if (head == "sin" || head == "cos" || head == "exp") {
            if (args.size() != 1) {
                arity_error("one operand");
            }
            return head == "sin" ? Expr::sin(args[0]) : head == "cos" ? Expr::cos(args[0]) : Expr::exp(args[0]);
        }
        pos_ = head_start;
        fail("unknown head '" + head + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) {
    return Parser(text).parse_all();
}

// ---------------------------------------------------------------------------
// Random polynomials

Expr random_polynomial(std::mt19937_64& rng, std::size_t arity, unsigned max_degree) {
    std::bernoulli_distribution present(0.5);
    std::uniform_int_distribution<int> numerator(1, 9);
    std::uniform_int_distribution<int> denominator(1, 9);
    std::bernoulli_distribution negative(0.5);
    Expr poly = Expr::constant(0);
    for (const auto& monomial : enumerate_bags_up_to(arity, max_degree)) {
        if (!present(rng)) {
            continue;
        }
        int p = numerator(rng);
        if (negative(rng)) {
            p = -p;
        }
        Expr term = Expr::constant(Rational(p, denominator(rng)));
        const auto mult = monomial.multiplicities();
        for (std::size_t i = 0; i < mult.size(); ++i) {
            term = term * Expr::power(Expr::variable(i + 1), mult[i]);
        }
        poly = poly + term;
    }
    return poly;
}

}  // namespace bagchain
