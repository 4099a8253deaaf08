#include "segrekit/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace segrekit {

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1, col = 1;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            t.kind = Tok::Sym;
            t.text = "->";
            advance(2);
        } else if (std::string_view("{}();:=+-*/^,").find(c) != std::string_view::npos) {
            t.kind = Tok::Sym;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool at_end() const { return peek().kind == Tok::End; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.col); }

    void expect_sym(const char* s) {
        if (!at_sym(s)) fail(std::string("expected '") + s + "'" + describe());
        take();
    }
    std::string expect_ident(const char* what) {
        if (peek().kind != Tok::Ident) fail(std::string("expected ") + what + describe());
        return take().text;
    }
    std::string describe() const {
        if (at_end()) return " but reached end of input";
        return " but found '" + peek().text + "'";
    }

    Expr expr() {
        Expr lhs = term();
        while (at_sym("+") || at_sym("-")) {
            Token op = take();
            Expr rhs = term();
            lhs = binary(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, std::move(lhs), std::move(rhs), op);
        }
        return lhs;
    }

private:
    static Expr binary(Expr::Kind k, Expr a, Expr b, const Token& at) {
        Expr e;
        e.kind = k;
        e.line = at.line;
        e.col = at.col;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }

    Expr term() {
        Expr lhs = unary();
        while (at_sym("*") || at_sym("/")) {
            Token op = take();
            Expr rhs = unary();
            lhs = binary(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, std::move(lhs), std::move(rhs), op);
        }
        return lhs;
    }

    Expr unary() {
        if (at_sym("-")) {
            Token op = take();
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.line = op.line;
            e.col = op.col;
            e.args.push_back(unary());
            return e;
        }
        if (at_sym("+")) {
            take();
            return unary();
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (!at_sym("^")) return base;
        Token op = take();
        bool neg = false;
        if (at_sym("-")) {
            take();
            neg = true;
        }
        if (peek().kind != Tok::Int) fail("expected an integer exponent" + describe());
        Token n = take();
        if (n.text.size() > 4) fail_at(n, "exponent too large");
        Expr e;
        e.kind = Expr::Kind::Pow;
        e.line = op.line;
        e.col = op.col;
        e.exponent = std::stoi(n.text) * (neg ? -1 : 1);
        e.args.push_back(std::move(base));
        return e;
    }

    Expr atom() {
        const Token& t = peek();
        Expr e;
        e.line = t.line;
        e.col = t.col;
        if (t.kind == Tok::Int) {
            e.kind = Expr::Kind::Int;
            e.text = take().text;
            // canonical digits so that round trips compare equal
            e.text.erase(0, std::min(e.text.find_first_not_of('0'), e.text.size() - 1));
            return e;
        }
        if (t.kind == Tok::Ident) {
            std::string name = take().text;
            if (at_sym("(")) {
                take();
                e.kind = Expr::Kind::Call;
                e.text = name;
                if (!at_sym(")")) {
                    e.args.push_back(expr());
                    while (at_sym(",")) {
                        take();
                        e.args.push_back(expr());
                    }
                }
                expect_sym(")");
                return e;
            }
            if (name == "i") {
                e.kind = Expr::Kind::Imag;
                return e;
            }
            e.kind = Expr::Kind::Var;
            e.text = name;
            return e;
        }
        if (at_sym("(")) {
            take();
            Expr inner = expr();
            expect_sym(")");
            return inner;
        }
        fail("expected an expression" + describe());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------- printing

int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
    }
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + to_text(e) + ")" : to_text(e); }

}  // namespace

std::string to_text(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Int: return e.text;
    case Expr::Kind::Imag: return "i";
    case Expr::Kind::Var: return e.text;
    case Expr::Kind::Add: return wrap(e.args[0], false) + " + " + wrap(e.args[1], precedence(e.args[1]) <= 1);
    case Expr::Kind::Sub: return wrap(e.args[0], false) + " - " + wrap(e.args[1], precedence(e.args[1]) <= 1);
    case Expr::Kind::Mul: return wrap(e.args[0], precedence(e.args[0]) < 2) + "*" + wrap(e.args[1], precedence(e.args[1]) <= 2);
    case Expr::Kind::Div: return wrap(e.args[0], precedence(e.args[0]) < 2) + "/" + wrap(e.args[1], precedence(e.args[1]) <= 2);
    case Expr::Kind::Neg: return "-" + wrap(e.args[0], precedence(e.args[0]) < 3);
    case Expr::Kind::Pow: return wrap(e.args[0], precedence(e.args[0]) < 5) + "^" + std::to_string(e.exponent);
    case Expr::Kind::Call: {
        std::string s = e.text + "(";
        for (std::size_t k = 0; k < e.args.size(); ++k) s += (k ? ", " : "") + to_text(e.args[k]);
        return s + ")";
    }
    }
    return "";
}

std::string to_dsl(const GaussianRational& c) {
    auto q = [](const mpq_class& v) { return mpq_class(abs(v)).get_str(); };
    std::string s;
    if (c.im() == 0) {
        s = (c.re() < 0 ? "-" : "") + q(c.re());
    } else {
        if (c.re() != 0) s = (c.re() < 0 ? "-" : "") + q(c.re()) + (c.im() < 0 ? " - " : " + ");
        else if (c.im() < 0) s = "-";
        s += abs(c.im()) == 1 ? "i" : q(c.im()) + "*i";
    }
    return "(" + s + ")";
}

Expr parse_expression(std::string_view text) {
    Parser p(lex(text));
    Expr e = p.expr();
    if (!p.at_end()) p.fail("unexpected trailing input" + p.describe());
    return e;
}

// ------------------------------------------------------------- documents

std::optional<long> DslDocument::setting(const std::string& key) const {
    for (const auto& [k, v] : settings)
        if (k == key) return v;
    return std::nullopt;
}

namespace {

int small_int(Parser&, const Expr& e, const std::string& what) {
    if (e.kind != Expr::Kind::Int || e.text.size() > 6)
        throw ParseError(what + " must be a small nonnegative integer", e.line, e.col);
    return std::stoi(e.text);
}

void parse_block(Parser& p, const std::function<void(const Token&, bool, const std::string&, Expr)>& item) {
    p.expect_sym("{");
    while (!p.at_sym("}")) {
        if (p.at_end()) p.fail("unterminated block");
        Token head = p.peek();
        std::string key = p.expect_ident("a name");
        bool graph = false;
        if (key == "graph") {
            graph = true;
            head = p.peek();
            key = p.expect_ident("a component name after 'graph'");
        }
        p.expect_sym("=");
        Expr e = p.expr();
        if (p.at_sym(";")) p.take();
        item(head, graph, key, std::move(e));
    }
    p.expect_sym("}");
}

}  // namespace

DslDocument parse_document(std::string_view text) {
    Parser p(lex(text));
    DslDocument doc;
    std::set<std::string> names;
    auto claim = [&](const Token& t, const std::string& name) {
        if (!names.insert(name).second) throw ParseError("duplicate declaration '" + name + "'", t.line, t.col);
    };
    while (!p.at_end()) {
        Token kw = p.peek();
        std::string word = p.expect_ident("'model', 'map', 'jets' or 'settings'");
        if (word == "settings") {
            parse_block(p, [&](const Token& t, bool graph, const std::string& key, Expr e) {
                if (graph) throw ParseError("'graph' is only valid inside a model", t.line, t.col);
                bool neg = false;
                if (e.kind == Expr::Kind::Neg) {
                    neg = true;
                    Expr inner = e.args[0];
                    e = inner;
                }
                long v = small_int(p, e, "setting '" + key + "'");
                doc.settings.emplace_back(key, neg ? -v : v);
            });
        } else if (word == "model") {
            Token nt = p.peek();
            ModelDecl m;
            m.name = p.expect_ident("a model name");
            claim(nt, m.name);
            parse_block(p, [&](const Token& t, bool graph, const std::string& key, Expr e) {
                if (!graph && (key == "m" || key == "d")) {
                    if (graph) throw ParseError("'graph' applies to components", t.line, t.col);
                    (key == "m" ? m.m : m.d) = small_int(p, e, key);
                    return;
                }
                const bool is_q = key.size() > 1 && key[0] == 'Q';
                const bool is_phi = key.rfind("phi", 0) == 0 && key.size() > 3;
                if (graph != is_phi || (!is_q && !is_phi))
                    throw ParseError("expected 'Q<k> = ...' or 'graph phi<k> = ...', got '" + key + "'", t.line, t.col);
                if (!m.comps.empty() && m.graph != graph)
                    throw ParseError("model mixes Q and graph components", t.line, t.col);
                m.graph = graph;
                m.comps.emplace_back(key, std::move(e));
            });
            doc.models.push_back(std::move(m));
        } else if (word == "map" || word == "jets") {
            Token nt = p.peek();
            MapDecl m;
            m.name = p.expect_ident("a name");
            claim(nt, m.name);
            p.expect_sym(":");
            m.source = p.expect_ident("a source model");
            p.expect_sym("->");
            m.target = p.expect_ident("a target model");
            const bool jets = word == "jets";
            parse_block(p, [&](const Token& t, bool graph, const std::string& key, Expr e) {
                if (graph) throw ParseError("'graph' is only valid inside a model", t.line, t.col);
                if (jets && key == "K") {
                    m.K = small_int(p, e, "K");
                    return;
                }
                static const char* prefixes[] = {"tf", "tg", "f", "g"};
                bool ok = false;
                for (const char* pre : prefixes) {
                    std::string ps(pre);
                    if (key.rfind(ps, 0) == 0 && key.size() > ps.size() &&
                        std::all_of(key.begin() + ps.size(), key.end(), [](char c) { return std::isdigit(c); })) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) throw ParseError("unknown map component '" + key + "'", t.line, t.col);
                m.comps.emplace_back(key, std::move(e));
            });
            if (jets && !m.K) p.fail_at(kw, "jets declaration needs K");
            (jets ? doc.jets : doc.maps).push_back(std::move(m));
        } else {
            p.fail_at(kw, "expected 'model', 'map', 'jets' or 'settings', found '" + word + "'");
        }
    }
    return doc;
}

namespace {

void write_comps(std::ostringstream& os, const std::vector<Assignment>& comps, bool graph) {
    for (const auto& [k, e] : comps) os << "  " << (graph ? "graph " : "") << k << " = " << to_text(e) << ";\n";
}

}  // namespace

std::string serialize(const DslDocument& doc) {
    std::ostringstream os;
    if (!doc.settings.empty()) {
        os << "settings {\n";
        for (const auto& [k, v] : doc.settings) os << "  " << k << " = " << v << ";\n";
        os << "}\n";
    }
    for (const auto& m : doc.models) {
        os << "model " << m.name << " {\n";
        if (m.m) os << "  m = " << *m.m << ";\n";
        if (m.d) os << "  d = " << *m.d << ";\n";
        write_comps(os, m.comps, m.graph);
        os << "}\n";
    }
    for (const auto& m : doc.maps) {
        os << "map " << m.name << " : " << m.source << " -> " << m.target << " {\n";
        write_comps(os, m.comps, false);
        os << "}\n";
    }
    for (const auto& m : doc.jets) {
        os << "jets " << m.name << " : " << m.source << " -> " << m.target << " {\n";
        os << "  K = " << *m.K << ";\n";
        write_comps(os, m.comps, false);
        os << "}\n";
    }
    return os.str();
}

void merge_into(DslDocument& into, const DslDocument& from) {
    std::set<std::string> names;
    for (const auto& m : into.models) names.insert(m.name);
    for (const auto& m : into.maps) names.insert(m.name);
    for (const auto& m : into.jets) names.insert(m.name);
    auto claim = [&](const std::string& n) {
        if (!names.insert(n).second) throw std::invalid_argument("duplicate declaration '" + n + "'");
    };
    for (const auto& m : from.models) claim(m.name), into.models.push_back(m);
    for (const auto& m : from.maps) claim(m.name), into.maps.push_back(m);
    for (const auto& m : from.jets) claim(m.name), into.jets.push_back(m);
    for (const auto& s : from.settings) into.settings.push_back(s);
}

// ------------------------------------------------------------ evaluation

namespace {

struct Value {
    TruncatedSeries s;
    bool poly = true;  // built from +, -, *, nonnegative powers and constant division only
};

bool is_constant(const TruncatedSeries& s) {
    return s.is_zero() || (s.size() == 1 && s.terms().front().first.is_one());
}

TruncatedSeries binom_series(const TruncatedSeries& base, const mpq_class& a) {
    const Truncation& t = base.truncation();
    if (base.constant_term() != GaussianRational(1))
        throw std::invalid_argument("binom_pow needs an argument with constant term 1");
    TruncatedSeries x = base - TruncatedSeries::constant(t, 1);
    TruncatedSeries sum = TruncatedSeries::constant(t, 1);
    TruncatedSeries p = sum;
    mpq_class c = 1;
    for (int k = 1;; ++k) {
        p = p * x;
        if (p.is_zero()) break;
        c = c * (a - (k - 1)) / k;
        if (c != 0) sum += p * GaussianRational(c);
    }
    sum.set_exact(x.is_zero() || (a >= 0 && a.get_den() == 1));
    return sum;
}

class Evaluator {
public:
    Evaluator(const std::vector<std::string>& vars, const Truncation& t, std::string where)
        : vars_(vars), t_(t), where_(std::move(where)) {}

    Value eval(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::Int: return {TruncatedSeries::constant(t_, GaussianRational(mpq_class(mpz_class(e.text)))), true};
        case Expr::Kind::Imag: return {TruncatedSeries::constant(t_, GaussianRational::unit_i()), true};
        case Expr::Kind::Var: {
            auto it = std::find(vars_.begin(), vars_.end(), e.text);
            if (it == vars_.end()) {
                std::string allowed;
                for (const auto& v : vars_) allowed += (allowed.empty() ? "" : ", ") + v;
                throw ParseError("unknown variable '" + e.text + "'" + (where_.empty() ? "" : " in " + where_) +
                                     " (allowed: " + allowed + ")",
                                 e.line, e.col);
            }
            return {TruncatedSeries::variable(t_, static_cast<int>(it - vars_.begin())), true};
        }
        case Expr::Kind::Add: {
            Value a = eval(e.args[0]), b = eval(e.args[1]);
            return {a.s + b.s, a.poly && b.poly};
        }
        case Expr::Kind::Sub: {
            Value a = eval(e.args[0]), b = eval(e.args[1]);
            return {a.s - b.s, a.poly && b.poly};
        }
        case Expr::Kind::Mul: {
            Value a = eval(e.args[0]), b = eval(e.args[1]);
            return {a.s * b.s, a.poly && b.poly};
        }
        case Expr::Kind::Div: {
            Value a = eval(e.args[0]), b = eval(e.args[1]);
            if (b.s.constant_term().is_zero())
                throw ParseError("division by a series with zero constant term", e.line, e.col);
            if (is_constant(b.s)) return {a.s * b.s.constant_term().inverse(), a.poly && b.poly};
            return {a.s * reciprocal(b.s), false};
        }
        case Expr::Kind::Neg: {
            Value a = eval(e.args[0]);
            return {-a.s, a.poly};
        }
        case Expr::Kind::Pow: {
            Value a = eval(e.args[0]);
            if (e.exponent >= 0) return {power(a.s, e.exponent), a.poly};
            if (a.s.constant_term().is_zero())
                throw ParseError("negative power of a series with zero constant term", e.line, e.col);
            return {power(reciprocal(a.s), -e.exponent), a.poly && is_constant(a.s)};
        }
        case Expr::Kind::Call: {
            if (e.text != "binom_pow") throw ParseError("unknown function '" + e.text + "'", e.line, e.col);
            if (e.args.size() != 2) throw ParseError("binom_pow takes (expr, p/q)", e.line, e.col);
            Value base = eval(e.args[0]);
            Evaluator ce({}, Truncation::total(0, 0), where_);
            TruncatedSeries ex = ce.eval(e.args[1]).s;
            GaussianRational a = ex.constant_term();
            if (!a.is_real()) throw ParseError("binom_pow exponent must be rational", e.args[1].line, e.args[1].col);
            try {
                return {binom_series(base.s, a.re()), false};
            } catch (const std::invalid_argument& err) {
                throw ParseError(err.what(), e.line, e.col);
            }
        }
        }
        throw ParseError("bad expression", e.line, e.col);
    }

private:
    std::vector<std::string> vars_;
    Truncation t_;
    std::string where_;
};

}  // namespace

TruncatedSeries eval_expr(const Expr& e, const std::vector<std::string>& vars, const Truncation& t,
                          const std::string& where) {
    Evaluator ev(vars, t, where);
    Value v = ev.eval(e);
    if (v.poly && !v.s.exact())
        throw InsufficientDegree("insufficient degree cap: " + (where.empty() ? std::string("expression") : where) +
                                 " has terms above degree " + std::to_string(t.degree_cap()));
    if (v.poly) v.s.set_exact(true);
    return v.s;
}

namespace {

// component index from "Q3" style keys, 1-based
int key_index(const std::string& key, std::size_t prefix) { return std::stoi(key.substr(prefix)); }

std::set<int> used_indices(const Expr& e, const std::string& stem) {
    std::set<int> out;
    if (e.kind == Expr::Kind::Var && e.text.rfind(stem, 0) == 0 && e.text.size() > stem.size() &&
        std::all_of(e.text.begin() + stem.size(), e.text.end(), [](char c) { return std::isdigit(c); }))
        out.insert(std::stoi(e.text.substr(stem.size())));
    for (const auto& a : e.args) {
        auto s = used_indices(a, stem);
        out.insert(s.begin(), s.end());
    }
    return out;
}

bool uses_var(const Expr& e, const std::string& v) {
    if (e.kind == Expr::Kind::Var && e.text == v) return true;
    for (const auto& a : e.args)
        if (uses_var(a, v)) return true;
    return false;
}

// unindexed z, chi (m = 1) and w, tau, s (d = 1) mean index 1
void alias_singletons(Expr& x, int m, int d) {
    if (x.kind == Expr::Kind::Var) {
        if (m == 1 && (x.text == "z" || x.text == "chi")) x.text += "1";
        else if (d == 1 && (x.text == "s" || x.text == "tau" || x.text == "w")) x.text += "1";
    }
    for (auto& a : x.args) alias_singletons(a, m, d);
}

}  // namespace

GenericModel build_model(const ModelDecl& decl, int D) {
    const std::string prefix = decl.graph ? "phi" : "Q";
    std::map<int, const Expr*> comps;
    for (const auto& [k, e] : decl.comps) {
        int idx = key_index(k, prefix.size());
        if (idx < 1 || !comps.emplace(idx, &e).second)
            throw std::invalid_argument("model " + decl.name + ": bad or repeated component " + k);
    }
    int m = decl.m.value_or(0), d = decl.d.value_or(static_cast<int>(comps.size()));
    if (!decl.m) {
        for (const auto& [k, e] : decl.comps) {
            for (const char* stem : {"z", "chi"}) {
                auto s = used_indices(e, stem);
                if (!s.empty()) m = std::max(m, *s.rbegin());
            }
            if (uses_var(e, "z") || uses_var(e, "chi")) m = std::max(m, 1);
        }
    }
    if (m < 1) throw std::invalid_argument("model " + decl.name + ": cannot determine m");
    if (static_cast<int>(comps.size()) != d || (d > 0 && comps.rbegin()->first != d))
        throw std::invalid_argument("model " + decl.name + ": expected components " + prefix + "1.." + prefix +
                                    std::to_string(d));
    std::vector<std::string> vars;
    if (decl.graph) {
        // phi may use z/chi/s when m = 1 or d = 1
        auto z = indexed_names("z", m), c = indexed_names("chi", m);
        auto s = indexed_names("s", d);
        vars.insert(vars.end(), z.begin(), z.end());
        vars.insert(vars.end(), c.begin(), c.end());
        vars.insert(vars.end(), s.begin(), s.end());
    } else {
        vars = indexed_names("z", m);
        auto c = indexed_names("chi", m), tau = indexed_names("tau", d);
        vars.insert(vars.end(), c.begin(), c.end());
        vars.insert(vars.end(), tau.begin(), tau.end());
    }
    const Truncation t = Truncation::total(2 * m + d, D);
    SeriesVec Q;
    for (const auto& [idx, e] : comps) {
        Expr ex = *e;
        alias_singletons(ex, m, d);
        Q.push_back(eval_expr(ex, vars, t, decl.name + "." + prefix + std::to_string(idx)));
    }
    return decl.graph ? from_real_graph(m, d, D, Q, decl.name) : from_normal(m, d, D, Q, decl.name);
}

namespace {

// H and Htilde from the f/g/tf/tg assignments of a map or jets block
std::pair<SeriesVec, SeriesVec> build_sides(const MapDecl& decl, const GenericModel& src, const GenericModel& tgt,
                                            int D) {
    const int m = src.m, d = src.d, n = tgt.m, e = tgt.d;
    const Truncation t = Truncation::total(m + d, D);
    std::vector<std::string> left = indexed_names("z", m), right = indexed_names("chi", m);
    auto w = indexed_names("w", d), tau = indexed_names("tau", d);
    left.insert(left.end(), w.begin(), w.end());
    right.insert(right.end(), tau.begin(), tau.end());
    std::map<std::string, const Expr*> by_key;
    for (const auto& [k, ex] : decl.comps)
        if (!by_key.emplace(k, &ex).second) throw std::invalid_argument(decl.name + ": repeated component " + k);
    std::size_t used = 0;
    auto side = [&](const std::string& fstem, const std::string& gstem, const std::vector<std::string>& vars) {
        SeriesVec out;
        for (const auto& [stem, count] : {std::pair{fstem, n}, std::pair{gstem, e}}) {
            for (int k = 1; k <= count; ++k) {
                std::string key = stem + std::to_string(k);
                auto it = by_key.find(key);
                if (it == by_key.end()) throw std::invalid_argument(decl.name + ": missing component " + key);
                ++used;
                Expr ex = *it->second;
                alias_singletons(ex, m, d);
                out.push_back(eval_expr(ex, vars, t, decl.name + "." + key));
            }
        }
        return out;
    };
    SeriesVec H = side("f", "g", left), Ht = side("tf", "tg", right);
    if (used != by_key.size()) throw std::invalid_argument(decl.name + ": component index out of range");
    return {H, Ht};
}

}  // namespace

Workspace build_workspace(const DslDocument& doc, int D) {
    Workspace ws;
    ws.D = D;
    for (const auto& decl : doc.models) {
        try {
            ws.models.emplace(decl.name, build_model(decl, D));
        } catch (const std::exception& err) {
            ws.errors[decl.name] = err.what();
        }
    }
    auto endpoints = [&](const MapDecl& decl) -> std::pair<const GenericModel*, const GenericModel*> {
        auto s = ws.models.find(decl.source), t = ws.models.find(decl.target);
        if (s == ws.models.end() || t == ws.models.end()) {
            const std::string& which = s == ws.models.end() ? decl.source : decl.target;
            throw std::invalid_argument("model '" + which + "' is " +
                                        (ws.errors.count(which) ? "unavailable: " + ws.errors[which] : "not declared"));
        }
        return {&s->second, &t->second};
    };
    for (const auto& decl : doc.maps) {
        try {
            auto [src, tgt] = endpoints(decl);
            auto [H, Ht] = build_sides(decl, *src, *tgt, D);
            ws.maps.emplace(decl.name, make_map(decl.name, *src, *tgt, H, Ht));
        } catch (const std::exception& err) {
            ws.errors[decl.name] = err.what();
        }
    }
    for (const auto& decl : doc.jets) {
        try {
            auto [src, tgt] = endpoints(decl);
            const int K = *decl.K;
            if (K > D) throw InsufficientDegree("insufficient degree cap: jets of order " + std::to_string(K));
            auto [H, Ht] = build_sides(decl, *src, *tgt, D);
            for (const auto& s : H)
                if (s.max_degree() > K) throw std::invalid_argument(decl.name + ": jet polynomial exceeds K");
            for (const auto& s : Ht)
                if (s.max_degree() > K) throw std::invalid_argument(decl.name + ": jet polynomial exceeds K");
            JetsObject j{decl.name, *src, *tgt, JetPair{K, jet_table(H, K), jet_table(Ht, K)}};
            ws.jets.emplace(decl.name, std::move(j));
        } catch (const std::exception& err) {
            ws.errors[decl.name] = err.what();
        }
    }
    return ws;
}

}  // namespace segrekit
