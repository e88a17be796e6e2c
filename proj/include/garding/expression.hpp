#pragma once

// Recursive-descent parser and evaluator for the field expression language:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := literal | var | func '(' args ')' | '(' expr ')'
//   func   := conj | re | im | abs2 | norm | G
//   var    := ('z'|'w') uint
//
// Literals are decimal numbers, imaginary with an 'i' suffix (3+2i is the
// sum of two literals). No implicit multiplication. G(k) is the built-in
// radial function over the full current point.

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "garding/cxcalc.hpp"
#include "garding/errors.hpp"

namespace garding::expr {

class parse_error : public domain_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : domain_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

enum class Kind { literal, variable, call, binary, power };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    Complex value;          // literal
    char family = 'z';      // variable
    int index = 0;          // variable, 1-based
    std::string func;       // call
    std::vector<NodePtr> args;
    char op = 0;            // binary
    int exponent = 0;       // power
};

struct Expression {
    NodePtr root;
    int dim = 0;
    std::string source;
};

namespace detail {

struct Token {
    enum class Type { number, ident, symbol, end } type;
    double num = 0.0;
    bool imaginary = false;
    std::string text;
    char sym = 0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= s_.size()) {
            t.type = Token::Type::end;
            return t;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') {
                ++pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                } else {
                    pos_ = save; // 'e' belongs to something else
                }
            }
            t.type = Token::Type::number;
            t.text = s_.substr(start, pos_ - start);
            if (t.text == ".") throw parse_error("malformed number", start);
            t.num = std::stod(t.text);
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                t.imaginary = true;
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            t.type = Token::Type::ident;
            t.text = s_.substr(start, pos_ - start);
            return t;
        }
        if (std::string("+-*^(),").find(c) != std::string::npos) {
            t.type = Token::Type::symbol;
            t.sym = c;
            ++pos_;
            return t;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, int dim) : lex_(text), dim_(dim) { advance(); }

    NodePtr parse() {
        NodePtr e = expr();
        if (cur_.type != Token::Type::end) throw parse_error("trailing input", cur_.offset);
        return e;
    }

private:
    Lexer lex_;
    Token cur_;
    int dim_;

    void advance() { cur_ = lex_.next(); }

    bool at_symbol(char c) const { return cur_.type == Token::Type::symbol && cur_.sym == c; }

    NodePtr make_literal(Complex v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::literal;
        n->value = v;
        return n;
    }

    NodePtr expr() {
        NodePtr lhs;
        if (at_symbol('+') || at_symbol('-')) { // leading sign
            const char sign = cur_.sym;
            advance();
            NodePtr t = term();
            if (sign == '-') {
                auto n = std::make_shared<Node>();
                n->kind = Kind::binary;
                n->op = '-';
                n->args = {make_literal(0.0), t};
                lhs = n;
            } else {
                lhs = t;
            }
        } else {
            lhs = term();
        }
        while (at_symbol('+') || at_symbol('-')) {
            const char op = cur_.sym;
            advance();
            auto n = std::make_shared<Node>();
            n->kind = Kind::binary;
            n->op = op;
            n->args = {lhs, term()};
            lhs = n;
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (at_symbol('*')) {
            advance();
            auto n = std::make_shared<Node>();
            n->kind = Kind::binary;
            n->op = '*';
            n->args = {lhs, factor()};
            lhs = n;
        }
        return lhs;
    }

    NodePtr factor() {
        NodePtr base = atom();
        if (at_symbol('^')) {
            advance();
            if (cur_.type != Token::Type::number || cur_.imaginary ||
                cur_.num != std::floor(cur_.num) || cur_.num < 0.0)
                throw parse_error("expected non-negative integer exponent", cur_.offset);
            auto n = std::make_shared<Node>();
            n->kind = Kind::power;
            n->exponent = int(cur_.num);
            n->args = {base};
            advance();
            return n;
        }
        return base;
    }

    NodePtr atom() {
        if (cur_.type == Token::Type::number) {
            const Complex v = cur_.imaginary ? Complex(0.0, cur_.num) : Complex(cur_.num, 0.0);
            advance();
            return make_literal(v);
        }
        if (cur_.type == Token::Type::ident) {
            const std::string name = cur_.text;
            const std::size_t off = cur_.offset;
            // variable: z<uint> or w<uint>
            if ((name[0] == 'z' || name[0] == 'w') && name.size() > 1 &&
                name.find_first_not_of("0123456789", 1) == std::string::npos) {
                const int idx = std::stoi(name.substr(1));
                if (idx < 1 || idx > dim_)
                    throw parse_error("variable index out of range 1.." + std::to_string(dim_),
                                      off);
                advance();
                auto n = std::make_shared<Node>();
                n->kind = Kind::variable;
                n->family = name[0];
                n->index = idx;
                return n;
            }
            if (name != "conj" && name != "re" && name != "im" && name != "abs2" &&
                name != "norm" && name != "G")
                throw parse_error("unknown function or variable '" + name + "'", off);
            advance();
            if (!at_symbol('(')) throw parse_error("expected '(' after " + name, cur_.offset);
            advance();
            std::vector<NodePtr> args;
            if (!at_symbol(')')) {
                args.push_back(expr());
                while (at_symbol(',')) {
                    advance();
                    args.push_back(expr());
                }
            }
            if (!at_symbol(')')) throw parse_error("expected ')'", cur_.offset);
            advance();
            if (args.size() != 1)
                throw parse_error(name + " takes exactly 1 argument", off);
            if (name == "G") {
                const Node& a = *args[0];
                if (a.kind != Kind::literal || a.value.imag() != 0.0 ||
                    a.value.real() != std::floor(a.value.real()) || a.value.real() < 1.0 ||
                    a.value.real() > double(dim_))
                    throw parse_error("G expects an integer level in 1.." + std::to_string(dim_),
                                      off);
            }
            auto n = std::make_shared<Node>();
            n->kind = Kind::call;
            n->func = name;
            n->args = std::move(args);
            return n;
        }
        if (at_symbol('(')) {
            advance();
            NodePtr e = expr();
            if (!at_symbol(')')) throw parse_error("expected ')'", cur_.offset);
            advance();
            return e;
        }
        throw parse_error("expected a literal, variable, function or '('", cur_.offset);
    }
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline bool contains_g(const NodePtr& n) {
    if (!n) return false;
    if (n->kind == Kind::call && n->func == "G") return true;
    for (const auto& a : n->args)
        if (contains_g(a)) return true;
    return false;
}

} // namespace detail

inline Expression parse(const std::string& text, int dim) {
    if (dim < 1) throw domain_error("parse: dimension must be >= 1");
    if (text.empty()) throw expr::parse_error("empty expression", 0);
    detail::Parser p(text, dim);
    return Expression{p.parse(), dim, text};
}

inline Complex eval(const NodePtr& n, const CPoint& p) {
    switch (n->kind) {
        case Kind::literal:
            return n->value;
        case Kind::variable:
            return p[std::size_t(n->index - 1)];
        case Kind::power: {
            Complex acc(1.0, 0.0);
            const Complex base = eval(n->args[0], p);
            for (int i = 0; i < n->exponent; ++i) acc *= base;
            return acc;
        }
        case Kind::binary: {
            const Complex a = eval(n->args[0], p);
            const Complex b = eval(n->args[1], p);
            return n->op == '+' ? a + b : (n->op == '-' ? a - b : a * b);
        }
        case Kind::call: {
            if (n->func == "G") {
                const int k = int(n->args[0]->value.real());
                const int N = int(p.size());
                const double rho = norm2(p);
                if (rho < 1e-6) throw domain_error("G is singular near the origin");
                if (k == N) return Complex(0.5 * std::log(rho), 0.0);
                return Complex(-std::pow(rho, 1.0 - double(N) / double(k)), 0.0);
            }
            const Complex a = eval(n->args[0], p);
            if (n->func == "conj") return std::conj(a);
            if (n->func == "re") return Complex(a.real(), 0.0);
            if (n->func == "im") return Complex(a.imag(), 0.0);
            if (n->func == "abs2") return Complex(std::norm(a), 0.0);
            return Complex(std::abs(a), 0.0); // norm
        }
    }
    throw std::logic_error("eval: unreachable");
}

/// Canonical text form; parse(to_string(parse(t))) has the same AST as
/// parse(t).
inline std::string to_string(const NodePtr& n, int parent_level = 0) {
    // precedence levels: 1 add, 2 mul, 3 pow, 4 atom
    switch (n->kind) {
        case Kind::literal: {
            std::string s = n->value.imag() != 0.0 ? detail::format_double(n->value.imag()) + "i"
                                                   : detail::format_double(n->value.real());
            return s;
        }
        case Kind::variable:
            return std::string(1, n->family) + std::to_string(n->index);
        case Kind::call:
            return n->func + "(" + to_string(n->args[0], 0) + ")";
        case Kind::power: {
            const std::string s = to_string(n->args[0], 3) + "^" + std::to_string(n->exponent);
            return parent_level > 3 ? "(" + s + ")" : s;
        }
        case Kind::binary: {
            const int level = n->op == '*' ? 2 : 1;
            const std::string s = to_string(n->args[0], level) + std::string(1, n->op) +
                                  to_string(n->args[1], level + 1);
            return parent_level > level ? "(" + s + ")" : s;
        }
    }
    throw std::logic_error("to_string: unreachable");
}

inline std::string to_string(const Expression& e) { return to_string(e.root); }

inline bool same_ast(const NodePtr& a, const NodePtr& b) {
    if (a->kind != b->kind) return false;
    if (a->args.size() != b->args.size()) return false;
    switch (a->kind) {
        case Kind::literal:
            if (a->value != b->value) return false;
            break;
        case Kind::variable:
            if (a->family != b->family || a->index != b->index) return false;
            break;
        case Kind::call:
            if (a->func != b->func) return false;
            break;
        case Kind::binary:
            if (a->op != b->op) return false;
            break;
        case Kind::power:
            if (a->exponent != b->exponent) return false;
            break;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!same_ast(a->args[i], b->args[i])) return false;
    return true;
}

/// Real-valued field from an expression. Evaluation flags an imaginary
/// residue above 1e-9 * (1 + |value|) instead of silently truncating it.
inline ScalarField to_scalar_field(const Expression& e) {
    ScalarField u;
    u.n = e.dim;
    u.name = e.source;
    const NodePtr root = e.root;
    u.eval = [root](const CPoint& p) {
        const Complex v = eval(root, p);
        if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v)))
            throw numerical_error("expression is not real-valued at the evaluation point",
                                  std::abs(v.imag()));
        return v.real();
    };
    if (detail::contains_g(root))
        u.domain = [](const CPoint& p) { return norm2(p) >= 1e-6; };
    return u;
}

/// Component-wise map C^N -> C^M from M expressions over z1..zN.
inline MapField to_map_field(const std::vector<Expression>& components, int n) {
    if (components.empty()) throw domain_error("to_map_field: no components");
    MapField f;
    f.n = n;
    f.m = int(components.size());
    std::vector<NodePtr> roots;
    for (const auto& c : components) {
        if (c.dim != n) throw domain_error("to_map_field: component dimension mismatch");
        roots.push_back(c.root);
    }
    f.name = "expr_map";
    f.eval = [roots](const CPoint& p) {
        CPoint w;
        w.reserve(roots.size());
        for (const auto& r : roots) w.push_back(eval(r, p));
        return w;
    };
    return f;
}

} // namespace garding::expr
