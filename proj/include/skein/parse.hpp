#pragma once

#include "hopf.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <vector>

namespace skein {

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(size_t p, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(p) + ": " + msg), pos(p) {}
};

// Expression tree for the grammar
//   expr := term (('+'|'-') term)*     term := unary ('*' unary)*
//   unary := '-' unary | power         power := atom ('^' ['-'] int)?
//   atom := int | ident | '(' expr ')'
struct Expr {
    enum Kind { Num, Ident, Add, Sub, Mul, Neg, Pow } kind;
    Int num;
    std::string name;
    int exp = 0;
    size_t pos = 0;
    std::vector<std::unique_ptr<Expr>> kids;
};

class ExprParser {
public:
    explicit ExprParser(std::string text) : s_(std::move(text)) {}

    std::unique_ptr<Expr> parse() {
        auto e = expr();
        skip();
        if (i_ != s_.size()) throw ParseError(i_, std::string("unexpected '") + s_[i_] + "'");
        return e;
    }

private:
    std::string s_;
    size_t i_ = 0;

    void skip() { while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_; }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
        return false;
    }
    static std::unique_ptr<Expr> node(Expr::Kind k, size_t pos) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->pos = pos;
        return e;
    }
    std::unique_ptr<Expr> bin(Expr::Kind k, size_t pos, std::unique_ptr<Expr> l, std::unique_ptr<Expr> r) {
        auto e = node(k, pos);
        e->kids.push_back(std::move(l));
        e->kids.push_back(std::move(r));
        return e;
    }
    std::unique_ptr<Expr> expr() {
        auto l = term();
        for (;;) {
            skip();
            size_t p = i_;
            if (eat('+')) l = bin(Expr::Add, p, std::move(l), term());
            else if (eat('-')) l = bin(Expr::Sub, p, std::move(l), term());
            else return l;
        }
    }
    std::unique_ptr<Expr> term() {
        auto l = unary();
        for (;;) {
            skip();
            size_t p = i_;
            if (eat('*')) l = bin(Expr::Mul, p, std::move(l), unary());
            else return l;
        }
    }
    std::unique_ptr<Expr> unary() {
        skip();
        size_t p = i_;
        if (eat('-')) {
            auto e = node(Expr::Neg, p);
            e->kids.push_back(unary());
            return e;
        }
        return power();
    }
    std::unique_ptr<Expr> power() {
        auto base = atom();
        skip();
        size_t p = i_;
        if (!eat('^')) return base;
        bool paren = eat('(');
        skip();
        bool neg = eat('-');
        skip();
        size_t st = i_;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
        if (st == i_) throw ParseError(i_, "expected integer exponent");
        long long v = std::stoll(s_.substr(st, i_ - st));
        if (paren && !eat(')')) throw ParseError(i_, "expected ')'");
        auto e = node(Expr::Pow, p);
        e->exp = int(neg ? -v : v);
        e->kids.push_back(std::move(base));
        return e;
    }
    std::unique_ptr<Expr> atom() {
        skip();
        size_t p = i_;
        if (i_ >= s_.size()) throw ParseError(i_, "unexpected end of input");
        char c = s_[i_];
        if (std::isdigit((unsigned char)c)) {
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
            auto e = node(Expr::Num, p);
            e->num = Int(s_.substr(p, i_ - p));
            return e;
        }
        if (std::isalpha((unsigned char)c)) {
            while (i_ < s_.size() && (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_')) ++i_;
            auto e = node(Expr::Ident, p);
            e->name = s_.substr(p, i_ - p);
            return e;
        }
        if (eat('(')) {
            auto e = expr();
            if (!eat(')')) throw ParseError(i_, "expected ')'");
            return e;
        }
        throw ParseError(i_, std::string("unexpected '") + c + "'");
    }
};

// Evaluate in algebra T; ident(name) returns the value or throws ParseError.
template <class T, class Ident, class Pow>
T eval_expr(const Expr& e, const Ident& ident, const Pow& pow) {
    switch (e.kind) {
        case Expr::Num: return T(HalfLaurent(e.num));
        case Expr::Ident: return ident(e.name, e.pos);
        case Expr::Add: return eval_expr<T>(*e.kids[0], ident, pow) + eval_expr<T>(*e.kids[1], ident, pow);
        case Expr::Sub: return eval_expr<T>(*e.kids[0], ident, pow) - eval_expr<T>(*e.kids[1], ident, pow);
        case Expr::Mul: return eval_expr<T>(*e.kids[0], ident, pow) * eval_expr<T>(*e.kids[1], ident, pow);
        case Expr::Neg: return -eval_expr<T>(*e.kids[0], ident, pow);
        case Expr::Pow: return pow(*e.kids[0], e.exp);
    }
    throw ParseError(e.pos, "bad expression");
}

namespace detail {

inline bool is_scalar_expr(const Expr& e) {
    if (e.kind == Expr::Ident) return e.name == "q" || e.name == "v";
    if (e.kind == Expr::Num) return true;
    for (auto& k : e.kids) if (!is_scalar_expr(*k)) return false;
    return true;
}

inline HalfLaurent scalar_ident(const std::string& n, size_t pos) {
    if (n == "q") return HalfLaurent::q(1);
    if (n == "v") return HalfLaurent::v(1);
    throw ParseError(pos, "unknown identifier '" + n + "'");
}

inline HalfLaurent eval_scalar(const Expr& e);

inline HalfLaurent scalar_pow(const Expr& base, int k) {
    HalfLaurent b = eval_scalar(base);
    if (k < 0) {
        if (!b.is_monomial() || abs(b.terms()[0].second) != 1)
            throw DomainError("negative power of a non-unit scalar");
        b = HalfLaurent::mono(b.terms()[0].second, -b.terms()[0].first);
        k = -k;
    }
    HalfLaurent r(1);
    for (int i = 0; i < k; ++i) r *= b;
    return r;
}

inline HalfLaurent eval_scalar(const Expr& e) {
    return eval_expr<HalfLaurent>(e, scalar_ident, scalar_pow);
}

inline OqElement eval_oq(const Expr& e);

inline OqElement oq_ident(const std::string& n, size_t pos) {
    if (n.size() == 1 && n[0] >= 'a' && n[0] <= 'd') return OqElement::gen(n[0]);
    return OqElement(scalar_ident(n, pos));
}

inline OqElement oq_pow(const Expr& base, int k) {
    if (is_scalar_expr(base)) return OqElement(scalar_pow(base, k));
    return power(eval_oq(base), k);
}

inline OqElement eval_oq(const Expr& e) { return eval_expr<OqElement>(e, oq_ident, oq_pow); }

} // namespace detail

inline HalfLaurent parse_scalar(const std::string& text) {
    auto e = ExprParser(text).parse();
    return detail::eval_scalar(*e);
}

inline OqElement parse_expression(const std::string& text) {
    auto e = ExprParser(text).parse();
    return detail::eval_oq(*e);
}

// words such as "K E^(2) F K^-1"
inline UWord parse_uword(const std::string& text) {
    UWord u;
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == '*')) ++i; };
    skip();
    if (text.substr(i) == "1") return u;
    while (i < text.size()) {
        size_t p = i;
        char c = text[i++];
        ULetter x{ULetter::K, 1};
        if (c == 'K') {
            if (text.compare(i, 3, "^-1") == 0) { x.kind = ULetter::Kinv; i += 3; }
        } else if (c == 'E' || c == 'F') {
            x.kind = c == 'E' ? ULetter::E : ULetter::F;
            if (text.compare(i, 2, "^(") == 0) {
                i += 2;
                size_t st = i;
                while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
                if (st == i || i >= text.size() || text[i] != ')') throw ParseError(i, "expected divided power ^(n)");
                x.n = std::stoi(text.substr(st, i - st));
                ++i;
                if (x.n < 1) throw ParseError(st, "divided power must be positive");
            }
        } else {
            throw ParseError(p, std::string("unknown letter '") + c + "' in U-word");
        }
        u.push_back(x);
        skip();
    }
    return u;
}

} // namespace skein
