#include "diffiety/parser.hpp"

#include <cctype>

namespace diffiety {
namespace detail {

TokenStream::TokenStream(const std::string& text) : src_(text) { advance(); }

void TokenStream::fail(const std::string& msg) const { throw parse_error(msg, tok_.pos); }

Token TokenStream::next() {
    Token t = tok_;
    advance();
    return t;
}

void TokenStream::advance() {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[at_]))) ++at_;
    tok_ = Token{};
    tok_.pos = at_;
    if (at_ >= src_.size()) return;
    char c = src_[at_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
        tok_.kind = Token::Num;
        while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_])))
            tok_.text += src_[at_++];
        return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
        tok_.kind = Token::Ident;
        while (at_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[at_])))
            tok_.text += src_[at_++];
        if (at_ < src_.size() && src_[at_] == '_') {
            std::size_t mark = at_++;
            if (at_ < src_.size() && src_[at_] == '{') {
                ++at_;
                while (at_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[at_])))
                    tok_.sub += src_[at_++];
                if (at_ >= src_.size() || src_[at_] != '}')
                    throw parse_error("unterminated '{' in derivative subscript", mark);
                ++at_;
            } else {
                while (at_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[at_])))
                    tok_.sub += src_[at_++];
            }
            if (tok_.sub.empty()) throw parse_error("empty derivative subscript", mark);
        }
        return;
    }
    static const std::string puncts = "+-*/^()[],=";
    if (puncts.find(c) != std::string::npos) {
        tok_.kind = Token::Punct;
        tok_.text = c;
        ++at_;
        return;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", at_);
}

JetCoord ExprParser::resolve(const Token& t) const {
    if (t.sub.empty()) {
        int mu = space_.find_independent(t.text);
        if (mu >= 0) return JetCoord::independent(mu);
        int j = space_.find_dependent(t.text);
        if (j >= 0) return JetCoord::jet(j);
        throw parse_error("unknown coordinate '" + t.text + "'", t.pos);
    }
    int j = space_.find_dependent(t.text);
    if (j < 0) throw parse_error("unknown dependent variable '" + t.text + "'", t.pos);
    MultiIndex sigma;
    for (char s : t.sub) {
        int mu = space_.find_independent(std::string(1, s));
        if (mu < 0)
            throw parse_error(std::string("unknown independent variable '") + s + "' in subscript",
                              t.pos);
        sigma = sigma.plus(static_cast<std::size_t>(mu));
    }
    return JetCoord::jet(j, sigma);
}

int ExprParser::parse_exponent() {
    bool neg = false;
    if (ts_.peek().kind == Token::Punct && ts_.peek().text == "-") {
        neg = true;
        ts_.next();
    }
    if (ts_.peek().kind != Token::Num) ts_.fail("expected integer exponent after '^'");
    Token t = ts_.next();
    int e = 0;
    for (char c : t.text) {
        e = e * 10 + (c - '0');
        if (e > 64) throw parse_error("exponent too large", t.pos);
    }
    return neg ? -e : e;
}

Expr ExprParser::parse_base() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Num) {
        Token n = ts_.next();
        return Expr(Rational(n.text));
    }
    if (t.kind == Token::Ident) return Expr::coordinate(resolve(ts_.next()));
    if (t.kind == Token::Punct && t.text == "(") {
        ts_.next();
        Expr e = parse_expr();
        if (!(ts_.peek().kind == Token::Punct && ts_.peek().text == ")"))
            ts_.fail("expected ')'");
        ts_.next();
        return e;
    }
    if (t.kind == Token::Punct && t.text == "-") {
        ts_.next();
        return -parse_factor();
    }
    ts_.fail("expected a number, coordinate or '('");
}

Expr ExprParser::parse_factor() {
    Expr e = parse_base();
    if (ts_.peek().kind == Token::Punct && ts_.peek().text == "^") {
        ts_.next();
        e = e.pow(parse_exponent());
    }
    return e;
}

Expr ExprParser::parse_term() {
    Expr e = parse_factor();
    while (ts_.peek().kind == Token::Punct &&
           (ts_.peek().text == "*" || ts_.peek().text == "/")) {
        bool mul = ts_.next().text == "*";
        Expr rhs = parse_factor();
        if (mul)
            e = e * rhs;
        else {
            if (rhs.is_zero()) ts_.fail("division by zero expression");
            e = e / rhs;
        }
    }
    return e;
}

Expr ExprParser::parse_expr() {
    Expr e = parse_term();
    while (ts_.peek().kind == Token::Punct &&
           (ts_.peek().text == "+" || ts_.peek().text == "-")) {
        bool add = ts_.next().text == "+";
        Expr rhs = parse_term();
        e = add ? e + rhs : e - rhs;
    }
    return e;
}

}  // namespace detail

Expr parse_expression(const std::string& text, const JetSpace& space) {
    detail::TokenStream ts(text);
    detail::ExprParser p(ts, space);
    Expr e = p.parse_expr();
    if (ts.peek().kind != detail::Token::End) ts.fail("unexpected trailing input");
    return e;
}

}  // namespace diffiety
