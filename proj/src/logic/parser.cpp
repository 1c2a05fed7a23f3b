#include "cantor/logic/parser.hpp"

#include "cantor/cset/cantor_set.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace cantor::logic {

namespace {

struct Token {
    enum Kind { Ident, Number, Sym, End } kind;
    std::string text;
    int line, column;
};

const std::vector<std::pair<std::string, std::string>> kUnicode{
    {"\xE2\x88\xA7", "&"},  {"\xE2\x88\xA8", "|"},  {"\xC2\xAC", "!"},    {"\xE2\x89\xA4", "<="},
    {"\xE2\x89\xA5", ">="}, {"\xE2\x86\x92", "->"}, {"\xE2\x86\x94", "<->"}, {"\xE2\x88\x80", "A"},
    {"\xE2\x88\x83", "E"},  {"\xE2\x89\xA0", "!="}};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
                ++col;
            }
            ++i;
        }
    };
    static const char* syms[] = {"<->", "->", "<=", ">=", "!=", ":=", "<", ">", "=", "!", "&", "|", "(", ")",
                                 "[",   "]",  "{",  "}",  ",",  ".",  ";", "+", "-", "*", "/"};
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        int l = line, cc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Ident, std::string(s.substr(i, j - i)), l, cc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Number, std::string(s.substr(i, j - i)), l, cc});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (const auto& [u, a] : kUnicode)
            if (s.substr(i, u.size()) == u) {
                out.push_back({a == "A" || a == "E" ? Token::Ident : Token::Sym, a, l, cc});
                advance(u.size());
                matched = true;
                break;
            }
        if (matched) continue;
        for (const char* sym : syms) {
            std::string_view sv(sym);
            if (s.substr(i, sv.size()) == sv) {
                out.push_back({Token::Sym, std::string(sv), l, cc});
                advance(sv.size());
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(l, cc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

struct Macro {
    std::vector<std::string> params;
    FormulaPtr body;
};

const std::map<std::string, Pred> kPreds{{"C", Pred::Cantor},      {"Vr", Pred::V},   {"Ur", Pred::U},
                                         {"Wr", Pred::W},          {"Int", Pred::Int}, {"InvPow", Pred::InvPow},
                                         {"Pow", Pred::Pow},       {"Dfin", Pred::Dfin}};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    FormulaPtr program() {
        while (is_ident("let")) definition();
        FormulaPtr f = formula();
        if (peek().kind != Token::End) fail("unexpected '" + peek().text + "' after formula");
        return f;
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;
    std::map<std::string, Macro> macros_;

    const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().line, peek().column, msg); }
    std::string found() const {
        return peek().kind == Token::End ? " at end of input" : ", found '" + peek().text + "'";
    }
    bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Token::Sym && peek(k).text == s; }
    bool is_ident(const char* s) const { return peek().kind == Token::Ident && peek().text == s; }
    bool accept(const char* s) {
        if (!is_sym(s)) return false;
        ++p_;
        return true;
    }
    void expect(const char* s) {
        if (!accept(s)) fail(std::string("expected '") + s + "'" + found());
    }
    std::string variable() {
        const Token& t = peek();
        if (t.kind != Token::Ident || !std::islower(static_cast<unsigned char>(t.text[0])))
            fail("expected a variable" + found());
        ++p_;
        return t.text;
    }
    long integer() {
        if (peek().kind != Token::Number) fail("expected a number" + found());
        if (peek().text.size() > 9) fail("number too large here");
        return std::stol(t_[p_++].text);
    }

    void definition() {
        ++p_;  // let
        const Token& name = peek();
        if (name.kind != Token::Ident || !std::isupper(static_cast<unsigned char>(name.text[0])))
            fail("macro names start with an upper-case letter");
        if (kPreds.contains(name.text) || name.text == "E" || name.text == "A") fail("'" + name.text + "' is reserved");
        ++p_;
        Macro m;
        expect("(");
        if (!is_sym(")")) {
            m.params.push_back(variable());
            while (accept(",")) m.params.push_back(variable());
        }
        expect(")");
        expect(":=");
        m.body = formula();
        for (const auto& v : free_vars(m.body))
            if (std::find(m.params.begin(), m.params.end(), v) == m.params.end())
                throw ParseError(name.line, name.column, "macro " + name.text + " uses undeclared variable " + v);
        expect(";");
        macros_[name.text] = std::move(m);
    }

    FormulaPtr formula() { return iff(); }

    FormulaPtr iff() {
        FormulaPtr a = imp();
        if (accept("<->")) return Formula::make(Formula::Kind::Iff, {a, iff()});
        return a;
    }
    FormulaPtr imp() {
        FormulaPtr a = disj();
        if (accept("->")) return Formula::make(Formula::Kind::Implies, {a, imp()});
        return a;
    }
    FormulaPtr disj() {
        FormulaPtr a = conj();
        while (accept("|")) a = f_or(a, conj());
        return a;
    }
    FormulaPtr conj() {
        FormulaPtr a = unary();
        while (accept("&")) a = f_and(a, unary());
        return a;
    }

    FormulaPtr unary() {
        const Token& t = peek();
        if (accept("!")) return f_not(unary());
        if ((is_ident("E") || is_ident("A")) && peek(1).kind == Token::Ident) {
            bool ex = t.text == "E";
            ++p_;
            std::string v = variable();
            expect(".");
            return Formula::quant(ex ? Formula::Kind::Exists : Formula::Kind::Forall, v, formula());
        }
        if (is_sym("(")) {
            std::size_t save = p_;
            try {
                ++p_;
                FormulaPtr f = formula();
                expect(")");
                // "(x + y) < z" is a term in parentheses, not a formula
                if (!(is_sym("<") || is_sym("<=") || is_sym(">") || is_sym(">=") || is_sym("=") || is_sym("!=") ||
                      is_sym("+") || is_sym("-") || is_sym("*") || is_sym("/")))
                    return f;
            } catch (const ParseError& e) {
                p_ = save;
                // report whichever reading got further
                try {
                    return atom();
                } catch (const ParseError& t) {
                    if (std::pair(t.line(), t.column()) >= std::pair(e.line(), e.column())) throw;
                    throw e;
                }
            }
            p_ = save;
        }
        return atom();
    }

    FormulaPtr positioned(FormulaPtr f, const Token& at) {
        auto g = std::make_shared<Formula>(*f);
        g->line = at.line;
        g->column = at.column;
        return g;
    }

    FormulaPtr atom() {
        const Token& at = peek();
        if (is_ident("true")) {
            ++p_;
            return Formula::make(Formula::Kind::True);
        }
        if (is_ident("false")) {
            ++p_;
            return Formula::make(Formula::Kind::False);
        }
        if (at.kind == Token::Ident && std::isupper(static_cast<unsigned char>(at.text[0])))
            return positioned(predicate(), at);
        TermPtr a = term();
        const Token& op = peek();
        using K = Formula::Kind;
        if (op.kind != Token::Sym) fail("expected a comparison");
        std::string o = op.text;
        if (o != "<" && o != "<=" && o != ">" && o != ">=" && o != "=" && o != "!=")
            fail("expected a comparison, found '" + o + "'");
        ++p_;
        TermPtr b = term();
        FormulaPtr f;
        if (o == "<") f = Formula::compare(K::Less, a, b);
        else if (o == "<=") f = Formula::compare(K::Leq, a, b);
        else if (o == ">") f = Formula::compare(K::Less, b, a);
        else if (o == ">=") f = Formula::compare(K::Leq, b, a);
        else if (o == "=") f = Formula::compare(K::Eq, a, b);
        else f = f_not(Formula::compare(K::Eq, a, b));
        return positioned(f, at);
    }

    std::vector<TermPtr> arguments() {
        std::vector<TermPtr> args;
        expect("(");
        if (!is_sym(")")) {
            args.push_back(term());
            while (accept(",")) args.push_back(term());
        }
        expect(")");
        return args;
    }

    FormulaPtr predicate() {
        const Token name = peek();
        ++p_;
        auto mit = macros_.find(name.text);
        if (mit != macros_.end()) {
            auto args = arguments();
            const Macro& m = mit->second;
            if (args.size() != m.params.size())
                throw ParseError(name.line, name.column,
                                 name.text + " takes " + std::to_string(m.params.size()) + " arguments");
            std::map<std::string, TermPtr> s;
            for (std::size_t i = 0; i < args.size(); ++i) s[m.params[i]] = args[i];
            return substitute(m.body, s);
        }
        auto pit = kPreds.find(name.text);
        if (pit == kPreds.end()) throw ParseError(name.line, name.column, "unknown predicate '" + name.text + "'");
        Pred pred = pit->second;
        int base = 0;
        std::set<int> K;
        if (pred != Pred::Int) {
            expect("[");
            base = static_cast<int>(integer());
            if (pred == Pred::Cantor) {
                expect(",");
                expect("{");
                if (!is_sym("}")) {
                    K.insert(static_cast<int>(integer()));
                    while (accept(",")) K.insert(static_cast<int>(integer()));
                }
                expect("}");
            }
            expect("]");
            if (base < 2) throw ParseError(name.line, name.column, "base must be at least 2");
            if (pred == Pred::Cantor) {
                try {
                    cset::CantorParams check(base, K);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(name.line, name.column,
                                     std::string("malformed Cantor set: K must avoid 0 and r-1 (") + e.what() + ")");
                }
            }
        }
        auto args = arguments();
        if (static_cast<int>(args.size()) != pred_arity(pred))
            throw ParseError(name.line, name.column,
                             name.text + " takes " + std::to_string(pred_arity(pred)) + " argument(s)");
        return Formula::atom(pred, base, K, std::move(args));
    }

    TermPtr term() {
        TermPtr a = product();
        while (true) {
            if (accept("+")) a = Term::add(a, product());
            else if (accept("-")) a = Term::add(a, Term::scale(Rational(-1), product()));
            else return a;
        }
    }

    static std::optional<Rational> constant_value(const TermPtr& t) {
        LinearForm f = linearize(t);
        if (!f.coeffs.empty()) return std::nullopt;
        return f.constant;
    }

    TermPtr product() {
        TermPtr a = unary_term();
        while (is_sym("*")) {
            const Token& op = peek();
            ++p_;
            TermPtr b = unary_term();
            if (auto q = constant_value(a)) a = Term::scale(*q, b);
            else if (auto q2 = constant_value(b)) a = Term::scale(*q2, a);
            else throw ParseError(op.line, op.column, "non-linear product: one factor must be a constant");
        }
        return a;
    }

    TermPtr unary_term() {
        if (accept("-")) {
            TermPtr t = unary_term();
            if (t->kind == Term::Kind::Const) return Term::constant(-t->value);
            return Term::scale(Rational(-1), t);
        }
        if (peek().kind == Token::Number) {
            std::string num = t_[p_++].text;
            if (accept("/")) {
                if (peek().kind != Token::Number) fail("expected a denominator");
                std::string den = t_[p_++].text;
                if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
                return Term::constant(Rational::parse(num + "/" + den));
            }
            return Term::constant(Rational::parse(num));
        }
        if (accept("(")) {
            TermPtr t = term();
            expect(")");
            return t;
        }
        return Term::var(variable());
    }
};

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(lex(text)).program(); }

}  // namespace cantor::logic
