#ifndef MORIN_PARSE_HPP
#define MORIN_PARSE_HPP

// Text formats.
//
//   map <m> -> <n> order <d> : [expr_1, ..., expr_n]
//
//   ruling <n> order <d>
//   gamma:  [expr_1, ..., expr_2n]
//   delta1: [...]
//   ...
//   deltaN: [...]
//
// Expressions use + - * ^, parentheses, integer or p/q literals, and the
// variables x1..xm (germs) or t (ruling files). '#' starts a line comment.

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <morin/errors.hpp>
#include <morin/jet.hpp>
#include <morin/map_jet.hpp>
#include <morin/rat.hpp>
#include <morin/ruling.hpp>

namespace morin
{

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

namespace ast
{
struct Num {
    Rat value; // non-negative
};
struct Var {
    int index; // 0-based
};
struct Neg {
    ExprPtr arg;
};
struct Add {
    ExprPtr lhs, rhs;
};
struct Sub {
    ExprPtr lhs, rhs;
};
struct Mul {
    ExprPtr lhs, rhs;
};
struct Pow {
    ExprPtr base;
    int exp; // >= 1
};
} // namespace ast

struct Expr {
    std::variant<ast::Num, ast::Var, ast::Neg, ast::Add, ast::Sub, ast::Mul, ast::Pow> node;
};

inline bool expr_equal(const Expr &a, const Expr &b);

inline bool expr_equal(const ExprPtr &a, const ExprPtr &b)
{
    return expr_equal(*a, *b);
}

inline bool expr_equal(const Expr &a, const Expr &b)
{
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto &x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto &y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, ast::Num>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, ast::Var>) {
                return x.index == y.index;
            } else if constexpr (std::is_same_v<T, ast::Neg>) {
                return expr_equal(x.arg, y.arg);
            } else if constexpr (std::is_same_v<T, ast::Pow>) {
                return x.exp == y.exp && expr_equal(x.base, y.base);
            } else {
                return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
            }
        },
        a.node);
}

// Variable naming for printing and lexing.
struct VarScheme {
    int count = 0;
    bool single_t = false; // "t" instead of x1..xm

    std::string name(int index) const
    {
        return single_t ? std::string("t") : "x" + std::to_string(index + 1);
    }
};

namespace detail
{

inline int precedence(const Expr &e)
{
    return std::visit(
        [](const auto &x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Add> || std::is_same_v<T, ast::Sub>) {
                return 1;
            } else if constexpr (std::is_same_v<T, ast::Mul>) {
                return 2;
            } else if constexpr (std::is_same_v<T, ast::Neg>) {
                return 3;
            } else if constexpr (std::is_same_v<T, ast::Pow>) {
                return 4;
            } else {
                return 5;
            }
        },
        e.node);
}

inline void print_expr(const Expr &e, const VarScheme &vs, std::string &out);

inline void print_wrapped(const ExprPtr &e, bool paren, const VarScheme &vs, std::string &out)
{
    if (paren) {
        out += '(';
    }
    print_expr(*e, vs, out);
    if (paren) {
        out += ')';
    }
}

// Minimal parentheses for the grammar's precedence and left associativity.
inline void print_expr(const Expr &e, const VarScheme &vs, std::string &out)
{
    std::visit(
        [&](const auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Num>) {
                out += x.value.to_string();
            } else if constexpr (std::is_same_v<T, ast::Var>) {
                out += vs.name(x.index);
            } else if constexpr (std::is_same_v<T, ast::Neg>) {
                out += '-';
                print_wrapped(x.arg, precedence(*x.arg) < 3, vs, out);
            } else if constexpr (std::is_same_v<T, ast::Pow>) {
                print_wrapped(x.base, precedence(*x.base) < 5, vs, out);
                out += '^' + std::to_string(x.exp);
            } else {
                const int p = precedence(e);
                print_wrapped(x.lhs, precedence(*x.lhs) < p, vs, out);
                if constexpr (std::is_same_v<T, ast::Add>) {
                    out += " + ";
                } else if constexpr (std::is_same_v<T, ast::Sub>) {
                    out += " - ";
                } else {
                    out += '*';
                }
                print_wrapped(x.rhs, precedence(*x.rhs) <= p, vs, out);
            }
        },
        e.node);
}

struct Token {
    enum Kind { Int, Ident, Sym, End } kind = End;
    std::string text;
    int line = 1, column = 1;
};

class Lexer
{
public:
    explicit Lexer(std::string_view src) : m_src(src)
    {
        advance();
    }

    const Token &peek() const noexcept
    {
        return m_tok;
    }

    Token next()
    {
        Token t = m_tok;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string &msg, const Token &at) const
    {
        throw ParseError(msg, at.line, at.column);
    }

    Token expect_sym(const std::string &s)
    {
        if (m_tok.kind != Token::Sym || m_tok.text != s) {
            fail("expected '" + s + "', found " + describe(m_tok), m_tok);
        }
        return next();
    }

    void expect_word(const std::string &w)
    {
        if (m_tok.kind != Token::Ident || m_tok.text != w) {
            fail("expected '" + w + "', found " + describe(m_tok), m_tok);
        }
        next();
    }

    int expect_int(int lo, int hi, const std::string &what)
    {
        if (m_tok.kind != Token::Int) {
            fail("expected " + what + ", found " + describe(m_tok), m_tok);
        }
        const Token t = next();
        if (t.text.size() > 6 || std::stoi(t.text) < lo || std::stoi(t.text) > hi) {
            fail(what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", t);
        }
        return std::stoi(t.text);
    }

    static std::string describe(const Token &t)
    {
        return t.kind == Token::End ? std::string("end of input") : "'" + t.text + "'";
    }

private:
    void advance()
    {
        for (;;) {
            while (m_pos < m_src.size() && std::isspace(static_cast<unsigned char>(m_src[m_pos]))) {
                bump();
            }
            if (m_pos < m_src.size() && m_src[m_pos] == '#') {
                while (m_pos < m_src.size() && m_src[m_pos] != '\n') {
                    bump();
                }
                continue;
            }
            break;
        }
        m_tok = Token{};
        m_tok.line = m_line;
        m_tok.column = m_col;
        if (m_pos >= m_src.size()) {
            m_tok.kind = Token::End;
            return;
        }
        const char c = m_src[m_pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            m_tok.kind = Token::Int;
            while (m_pos < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[m_pos]))) {
                m_tok.text += m_src[m_pos];
                bump();
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            m_tok.kind = Token::Ident;
            while (m_pos < m_src.size()
                   && (std::isalnum(static_cast<unsigned char>(m_src[m_pos])) || m_src[m_pos] == '_')) {
                m_tok.text += m_src[m_pos];
                bump();
            }
        } else if (c == '-' && m_pos + 1 < m_src.size() && m_src[m_pos + 1] == '>') {
            m_tok.kind = Token::Sym;
            m_tok.text = "->";
            bump();
            bump();
        } else if (std::string_view("+-*^/()[],:").find(c) != std::string_view::npos) {
            m_tok.kind = Token::Sym;
            m_tok.text = std::string(1, c);
            bump();
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", m_line, m_col);
        }
    }

    void bump()
    {
        if (m_src[m_pos] == '\n') {
            ++m_line;
            m_col = 1;
        } else {
            ++m_col;
        }
        ++m_pos;
    }

    std::string_view m_src;
    std::size_t m_pos = 0;
    int m_line = 1, m_col = 1;
    Token m_tok;
};

inline ExprPtr make(auto node)
{
    return std::make_shared<const Expr>(Expr{std::move(node)});
}

class ExprParser
{
public:
    ExprParser(Lexer &lex, VarScheme vs) : m_lex(lex), m_vs(vs) {}

    // expr := term (('+' | '-') term)*
    ExprPtr expr()
    {
        ExprPtr lhs = term();
        for (;;) {
            const Token &t = m_lex.peek();
            if (t.kind == Token::Sym && (t.text == "+" || t.text == "-")) {
                const bool plus = m_lex.next().text == "+";
                ExprPtr rhs = term();
                lhs = plus ? make(ast::Add{lhs, rhs}) : make(ast::Sub{lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

private:
    // term := unary ('*' unary)*
    ExprPtr term()
    {
        ExprPtr lhs = unary();
        while (m_lex.peek().kind == Token::Sym && m_lex.peek().text == "*") {
            m_lex.next();
            lhs = make(ast::Mul{lhs, unary()});
        }
        if (m_lex.peek().kind == Token::Sym && m_lex.peek().text == "/") {
            m_lex.fail("division is only allowed inside a rational literal p/q", m_lex.peek());
        }
        return lhs;
    }

    // unary := '-' unary | power
    ExprPtr unary()
    {
        if (m_lex.peek().kind == Token::Sym && m_lex.peek().text == "-") {
            m_lex.next();
            return make(ast::Neg{unary()});
        }
        return power();
    }

    // power := atom ('^' INT)?
    ExprPtr power()
    {
        ExprPtr base = atom();
        if (m_lex.peek().kind == Token::Sym && m_lex.peek().text == "^") {
            m_lex.next();
            const int e = m_lex.expect_int(1, Monomial::max_degree, "exponent");
            base = make(ast::Pow{base, e});
            if (m_lex.peek().kind == Token::Sym && m_lex.peek().text == "^") {
                m_lex.fail("chained exponents need parentheses", m_lex.peek());
            }
        }
        return base;
    }

    // atom := INT ('/' INT)? | variable | '(' expr ')'
    ExprPtr atom()
    {
        const Token t = m_lex.peek();
        if (t.kind == Token::Int) {
            m_lex.next();
            std::string lit = t.text;
            if (m_lex.peek().kind == Token::Sym && m_lex.peek().text == "/") {
                m_lex.next();
                const Token d = m_lex.peek();
                if (d.kind != Token::Int) {
                    m_lex.fail("expected an integer denominator, found " + Lexer::describe(d), d);
                }
                m_lex.next();
                if (d.text.find_first_not_of('0') == std::string::npos) {
                    m_lex.fail("zero denominator", d);
                }
                lit += "/" + d.text;
            }
            const Rat v = Rat::parse(lit);
            return make(ast::Num{v});
        }
        if (t.kind == Token::Ident) {
            m_lex.next();
            return make(ast::Var{variable(t)});
        }
        if (t.kind == Token::Sym && t.text == "(") {
            m_lex.next();
            ExprPtr e = expr();
            m_lex.expect_sym(")");
            return e;
        }
        m_lex.fail("expected a number, variable or '(', found " + Lexer::describe(t), t);
    }

    int variable(const Token &t) const
    {
        if (m_vs.single_t) {
            if (t.text == "t") {
                return 0;
            }
            m_lex.fail("undeclared variable '" + t.text + "' (only t is allowed)", t);
        }
        if (t.text.size() >= 2 && t.text[0] == 'x' && t.text[1] != '0'
            && t.text.find_first_not_of("0123456789", 1) == std::string::npos && t.text.size() <= 4) {
            const int k = std::stoi(t.text.substr(1));
            if (k >= 1 && k <= m_vs.count) {
                return k - 1;
            }
        }
        m_lex.fail("undeclared variable '" + t.text + "' (declared x1..x" + std::to_string(m_vs.count) + ")", t);
    }

    Lexer &m_lex;
    VarScheme m_vs;
};

inline std::vector<ExprPtr> expr_list(Lexer &lex, const VarScheme &vs)
{
    std::vector<ExprPtr> out;
    lex.expect_sym("[");
    ExprParser p(lex, vs);
    if (!(lex.peek().kind == Token::Sym && lex.peek().text == "]")) {
        out.push_back(p.expr());
        while (lex.peek().kind == Token::Sym && lex.peek().text == ",") {
            lex.next();
            out.push_back(p.expr());
        }
    }
    lex.expect_sym("]");
    return out;
}

} // namespace detail

inline std::string print_expr(const Expr &e, const VarScheme &vs)
{
    std::string out;
    detail::print_expr(e, vs, out);
    return out;
}

inline Jet eval_expr(const Expr &e, int nvars, int order)
{
    return std::visit(
        [&](const auto &x) -> Jet {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ast::Num>) {
                return Jet::constant(nvars, order, x.value);
            } else if constexpr (std::is_same_v<T, ast::Var>) {
                return Jet::variable(nvars, order, x.index);
            } else if constexpr (std::is_same_v<T, ast::Neg>) {
                return -eval_expr(*x.arg, nvars, order);
            } else if constexpr (std::is_same_v<T, ast::Add>) {
                return eval_expr(*x.lhs, nvars, order) + eval_expr(*x.rhs, nvars, order);
            } else if constexpr (std::is_same_v<T, ast::Sub>) {
                return eval_expr(*x.lhs, nvars, order) - eval_expr(*x.rhs, nvars, order);
            } else if constexpr (std::is_same_v<T, ast::Mul>) {
                return eval_expr(*x.lhs, nvars, order) * eval_expr(*x.rhs, nvars, order);
            } else {
                return pow(eval_expr(*x.base, nvars, order), x.exp);
            }
        },
        e.node);
}

struct GermSource {
    int m = 0;
    int n = 0;
    int order = 0;
    std::vector<ExprPtr> exprs;

    // Canonical text; parse_germ(to_string()) reproduces the same trees.
    std::string to_string() const
    {
        std::string out = "map " + std::to_string(m) + " -> " + std::to_string(n) + " order " + std::to_string(order)
                          + " : [";
        for (std::size_t i = 0; i < exprs.size(); ++i) {
            out += (i ? ", " : "") + print_expr(*exprs[i], {m, false});
        }
        return out + "]";
    }

    // Throws GermError naming the first component with a constant term.
    MapJet to_map_jet(int at_order) const
    {
        std::vector<Jet> comps;
        for (std::size_t i = 0; i < exprs.size(); ++i) {
            Jet j = eval_expr(*exprs[i], m, at_order);
            if (!j.constant_term().is_zero()) {
                throw GermError("component " + std::to_string(i + 1) + " has nonzero constant term "
                                    + j.constant_term().to_string(),
                                static_cast<int>(i + 1));
            }
            comps.push_back(std::move(j));
        }
        return {m, at_order, std::move(comps)};
    }

    MapJet to_map_jet() const
    {
        return to_map_jet(order);
    }

    friend bool operator==(const GermSource &a, const GermSource &b)
    {
        if (a.m != b.m || a.n != b.n || a.order != b.order || a.exprs.size() != b.exprs.size()) {
            return false;
        }
        for (std::size_t i = 0; i < a.exprs.size(); ++i) {
            if (!expr_equal(a.exprs[i], b.exprs[i])) {
                return false;
            }
        }
        return true;
    }
};

// Parses the grammar and checks the germ condition on every component.
inline GermSource parse_germ(std::string_view text)
{
    detail::Lexer lex(text);
    GermSource g;
    lex.expect_word("map");
    g.m = lex.expect_int(1, 16, "source dimension");
    lex.expect_sym("->");
    g.n = lex.expect_int(1, 32, "target dimension");
    lex.expect_word("order");
    g.order = lex.expect_int(0, 64, "truncation order");
    lex.expect_sym(":");
    const detail::Token open = lex.peek();
    g.exprs = detail::expr_list(lex, {g.m, false});
    if (lex.peek().kind != detail::Token::End) {
        lex.fail("trailing input after the component list", lex.peek());
    }
    if (static_cast<int>(g.exprs.size()) != g.n) {
        lex.fail("expected " + std::to_string(g.n) + " components, found " + std::to_string(g.exprs.size()), open);
    }
    (void)g.to_map_jet();
    return g;
}

inline GermSource germ_source_of(const MapJet &f)
{
    // Built by parsing the jet's printed form, which is itself in the grammar.
    std::string text = "map " + std::to_string(f.source_dim()) + " -> " + std::to_string(f.target_dim()) + " order "
                       + std::to_string(f.order()) + " : [";
    for (int i = 0; i < f.target_dim(); ++i) {
        text += (i ? ", " : "") + f[i].to_string();
    }
    return parse_germ(text + "]");
}

struct RulingSource {
    int n = 0;
    int order = 0;
    std::vector<ExprPtr> gamma;
    std::vector<std::vector<ExprPtr>> delta;

    std::string to_string() const
    {
        const VarScheme vs{1, true};
        auto list = [&](const std::vector<ExprPtr> &v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i ? ", " : "") + print_expr(*v[i], vs);
            }
            return s + "]";
        };
        std::string out = "ruling " + std::to_string(n) + " order " + std::to_string(order) + "\n";
        out += "gamma: " + list(gamma) + "\n";
        for (std::size_t i = 0; i < delta.size(); ++i) {
            out += "delta" + std::to_string(i + 1) + ": " + list(delta[i]) + "\n";
        }
        return out;
    }

    FramedCurve to_framed_curve() const
    {
        FramedCurve fc;
        fc.n = n;
        fc.order = order;
        for (const auto &e : gamma) {
            fc.gamma.push_back(eval_expr(*e, 1, order));
        }
        for (const auto &v : delta) {
            std::vector<Jet> w;
            for (const auto &e : v) {
                w.push_back(eval_expr(*e, 1, order));
            }
            fc.delta.push_back(std::move(w));
        }
        return fc;
    }
};

inline RulingSource parse_ruling(std::string_view text)
{
    detail::Lexer lex(text);
    RulingSource r;
    lex.expect_word("ruling");
    r.n = lex.expect_int(1, 8, "plane dimension");
    lex.expect_word("order");
    r.order = lex.expect_int(0, 64, "truncation order");
    const VarScheme vs{1, true};
    std::optional<std::vector<ExprPtr>> gamma;
    std::vector<std::optional<std::vector<ExprPtr>>> delta(static_cast<std::size_t>(r.n));
    while (lex.peek().kind != detail::Token::End) {
        const detail::Token head = lex.next();
        if (head.kind != detail::Token::Ident) {
            lex.fail("expected a section name, found " + detail::Lexer::describe(head), head);
        }
        lex.expect_sym(":");
        const detail::Token open = lex.peek();
        auto list = detail::expr_list(lex, vs);
        if (static_cast<int>(list.size()) != 2 * r.n) {
            lex.fail("section '" + head.text + "' needs " + std::to_string(2 * r.n) + " entries, found "
                         + std::to_string(list.size()),
                     open);
        }
        std::optional<std::vector<ExprPtr>> *slot = nullptr;
        if (head.text == "gamma") {
            slot = &gamma;
        } else if (head.text.rfind("delta", 0) == 0 && head.text.size() > 5 && head.text.size() <= 7
                   && head.text.find_first_not_of("0123456789", 5) == std::string::npos) {
            const int k = std::stoi(head.text.substr(5));
            if (k >= 1 && k <= r.n) {
                slot = &delta[static_cast<std::size_t>(k - 1)];
            }
        }
        if (slot == nullptr) {
            lex.fail("unknown section '" + head.text + "'", head);
        }
        if (slot->has_value()) {
            lex.fail("duplicate section '" + head.text + "'", head);
        }
        *slot = std::move(list);
    }
    const detail::Token end = lex.peek();
    if (!gamma) {
        lex.fail("missing section 'gamma'", end);
    }
    r.gamma = std::move(*gamma);
    for (int i = 0; i < r.n; ++i) {
        if (!delta[static_cast<std::size_t>(i)]) {
            lex.fail("missing section 'delta" + std::to_string(i + 1) + "'", end);
        }
        r.delta.push_back(std::move(*delta[static_cast<std::size_t>(i)]));
    }
    return r;
}

} // namespace morin

#endif
