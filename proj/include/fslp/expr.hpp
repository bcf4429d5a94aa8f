#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

// Small deterministic grammar for potential expressions:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'x' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
//
// '^' binds tighter than unary minus and is right-associative; '-' and '/'
// are left-associative; whitespace is insignificant; implicit
// multiplication is not supported. Unary functions: sin cos tan sinh cosh
// tanh exp log sqrt abs.

namespace fslp {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string expected);
    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class EvalDomain : public std::runtime_error {
public:
    explicit EvalDomain(const std::string& what) : std::runtime_error("EvalDomain: " + what) {}
};

/// Immutable expression tree with value semantics; evaluation is pure and
/// reentrant. Either returns a finite real or throws EvalDomain.
class Expr {
public:
    Expr() = default;
    double operator()(double x) const { return eval(x); }
    double eval(double x) const;
    bool empty() const { return root_ == nullptr; }
    const std::string& text() const { return text_; }

    struct Node;
    friend Expr parse_expr(std::string_view text);

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/// Parse `text` into an expression; throws ParseError with the byte offset
/// of the offending token and the set of tokens that were expected there.
Expr parse_expr(std::string_view text);

}  // namespace fslp
