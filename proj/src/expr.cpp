#include <fslp/expr.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace fslp {

namespace {

enum class Fun { sin, cos, tan, sinh, cosh, tanh, exp, log, sqrt, abs };

}  // namespace

struct Expr::Node {
    enum class Kind { number, var, neg, add, sub, mul, div, pow, fun };
    Kind kind;
    double value = 0.0;  // number
    Fun fun = Fun::sin;  // fun
    std::shared_ptr<const Node> lhs, rhs;
};

ParseError::ParseError(std::size_t offset, std::string expected)
    : std::runtime_error("ParseError at offset " + std::to_string(offset) + ": expected " +
                         expected),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("operator or end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::string expected) const { throw ParseError(pos_, std::move(expected)); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(what);
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make(Kind::add, lhs, term());
            else if (accept('-'))
                lhs = make(Kind::sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (accept('*'))
                lhs = make(Kind::mul, lhs, factor());
            else if (accept('/'))
                lhs = make(Kind::div, lhs, factor());
            else
                return lhs;
        }
    }

    NodePtr factor() {
        if (accept('-')) return make(Kind::neg, factor());
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (accept('^')) return make(Kind::pow, base, factor());
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("number, 'x', constant, function or '('");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return word();
        fail("number, 'x', constant, function or '('");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
            pos_ = start;
            fail("digit");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' was not an exponent marker
            }
        }
        const std::string token(text_.substr(start, pos_ - start));
        auto n = std::make_shared<Expr::Node>();
        n->kind = Kind::number;
        n->value = std::strtod(token.c_str(), nullptr);
        return n;
    }

    NodePtr word() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return make(Kind::var);
        if (name == "pi" || name == "e") {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Kind::number;
            n->value = (name == "pi") ? M_PI : M_E;
            return n;
        }
        static const std::pair<std::string_view, Fun> funs[] = {
            {"sin", Fun::sin},   {"cos", Fun::cos},   {"tan", Fun::tan},  {"sinh", Fun::sinh},
            {"cosh", Fun::cosh}, {"tanh", Fun::tanh}, {"exp", Fun::exp},  {"log", Fun::log},
            {"sqrt", Fun::sqrt}, {"abs", Fun::abs}};
        for (const auto& [fname, f] : funs) {
            if (name == fname) {
                expect('(', "'(' after function name");
                NodePtr arg = expr();
                expect(')', "')'");
                auto n = std::make_shared<Expr::Node>();
                n->kind = Kind::fun;
                n->fun = f;
                n->lhs = std::move(arg);
                return n;
            }
        }
        pos_ = start;
        fail("'x', 'pi', 'e' or a function name");
    }
};

double eval_node(const Expr::Node& n, double x) {
    double v = 0.0;
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::var: return x;
        case Kind::neg: return -eval_node(*n.lhs, x);
        case Kind::add: v = eval_node(*n.lhs, x) + eval_node(*n.rhs, x); break;
        case Kind::sub: v = eval_node(*n.lhs, x) - eval_node(*n.rhs, x); break;
        case Kind::mul: v = eval_node(*n.lhs, x) * eval_node(*n.rhs, x); break;
        case Kind::div: v = eval_node(*n.lhs, x) / eval_node(*n.rhs, x); break;
        case Kind::pow: v = std::pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x)); break;
        case Kind::fun: {
            const double a = eval_node(*n.lhs, x);
            switch (n.fun) {
                case Fun::sin: v = std::sin(a); break;
                case Fun::cos: v = std::cos(a); break;
                case Fun::tan: v = std::tan(a); break;
                case Fun::sinh: v = std::sinh(a); break;
                case Fun::cosh: v = std::cosh(a); break;
                case Fun::tanh: v = std::tanh(a); break;
                case Fun::exp: v = std::exp(a); break;
                case Fun::log:
                    if (!(a > 0.0)) throw EvalDomain("log of a non-positive value");
                    v = std::log(a);
                    break;
                case Fun::sqrt:
                    if (a < 0.0) throw EvalDomain("sqrt of a negative value");
                    v = std::sqrt(a);
                    break;
                case Fun::abs: v = std::abs(a); break;
            }
            break;
        }
    }
    if (!std::isfinite(v)) throw EvalDomain("expression not finite at x = " + std::to_string(x));
    return v;
}

}  // namespace

double Expr::eval(double x) const {
    if (!root_) throw std::logic_error("Expr::eval on an empty expression");
    return eval_node(*root_, x);
}

Expr parse_expr(std::string_view text) {
    Parser p(text);
    Expr e;
    e.root_ = p.run();
    e.text_.assign(text);
    return e;
}

}  // namespace fslp
