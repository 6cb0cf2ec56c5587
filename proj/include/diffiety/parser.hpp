#pragma once
/* Recursive-descent parser for scalar expressions.
 *
 *   expr   := term (('+'|'-') term)*
 *   term   := factor (('*'|'/') factor)*
 *   factor := base ('^' integer)?
 *   base   := integer | coordinate | '(' expr ')' | '-' factor
 *
 * Coordinates are bare names (x, t, u) or derivatives (u_x, u_{xxt}).  The
 * token stream is shared with the form parser, which extends the factor rule
 * with d[...]/dv[...] generators.
 */

#include <optional>
#include <string>

#include "diffiety/expression.hpp"

namespace diffiety {

Expr parse_expression(const std::string& text, const JetSpace& space);

namespace detail {

struct Token {
    enum Kind { End, Num, Ident, Punct } kind = End;
    std::string text;          /* identifier base or number digits or punct */
    std::string sub;           /* subscript letters when an identifier has one */
    std::size_t pos = 0;
};

class TokenStream {
  public:
    explicit TokenStream(const std::string& text);
    const Token& peek() const { return tok_; }
    Token next();
    [[noreturn]] void fail(const std::string& msg) const;

  private:
    const std::string src_;
    std::size_t at_ = 0;
    Token tok_;
    void advance();
};

class ExprParser {
  public:
    ExprParser(TokenStream& ts, const JetSpace& space) : ts_(ts), space_(space) {}

    Expr parse_expr();
    Expr parse_factor();
    /* Resolves an identifier token against the space. */
    JetCoord resolve(const Token& t) const;
    int parse_exponent();

  private:
    TokenStream& ts_;
    const JetSpace& space_;
    Expr parse_term();
    Expr parse_base();
};

}  // namespace detail

}  // namespace diffiety
