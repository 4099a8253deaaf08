#pragma once

#include "segrekit/hspm.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace segrekit {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// A polynomial-only expression lost terms at the requested cap.
class InsufficientDegree : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Expr {
    enum class Kind { Int, Imag, Var, Add, Sub, Mul, Div, Neg, Pow, Call };
    Kind kind = Kind::Int;
    std::string text;  // digits, variable or function name
    int exponent = 0;  // Pow
    std::vector<Expr> args;
    int line = 0, col = 0;  // source position, ignored by ==

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.kind == b.kind && a.text == b.text && a.exponent == b.exponent && a.args == b.args;
    }
};

std::string to_text(const Expr& e);
Expr parse_expression(std::string_view text);
// parenthesized DSL spelling of a constant, e.g. "(3/2 - 1/4*i)"
std::string to_dsl(const GaussianRational& c);

using Assignment = std::pair<std::string, Expr>;

struct ModelDecl {
    std::string name;
    std::optional<int> m, d;
    bool graph = false;
    std::vector<Assignment> comps;  // Q1.. or phi1..
    friend bool operator==(const ModelDecl&, const ModelDecl&) = default;
};

struct MapDecl {
    std::string name, source, target;
    std::optional<int> K;           // jets declarations only
    std::vector<Assignment> comps;  // f1.., g1.., tf1.., tg1..
    friend bool operator==(const MapDecl&, const MapDecl&) = default;
};

struct DslDocument {
    std::vector<std::pair<std::string, long>> settings;
    std::vector<ModelDecl> models;
    std::vector<MapDecl> maps;
    std::vector<MapDecl> jets;
    std::optional<long> setting(const std::string& key) const;
    friend bool operator==(const DslDocument&, const DslDocument&) = default;
};

DslDocument parse_document(std::string_view text);
std::string serialize(const DslDocument& doc);
// later documents extend earlier ones; duplicate names are an error
void merge_into(DslDocument& into, const DslDocument& from);

// Evaluates an expression in the named variables over truncation t.
// Throws InsufficientDegree when a polynomial-only expression drops terms.
TruncatedSeries eval_expr(const Expr& e, const std::vector<std::string>& vars, const Truncation& t,
                          const std::string& where = "");

struct JetsObject {
    std::string name;
    GenericModel source, target;
    JetPair jets;
};

struct Workspace {
    int D = 8;
    std::map<std::string, GenericModel> models;
    std::map<std::string, SegrePreservingMap> maps;
    std::map<std::string, JetsObject> jets;
    // declarations that failed to build, with the reason
    std::map<std::string, std::string> errors;
};

// Builds every declaration at cap D. Model/map failures are recorded in
// `errors` rather than thrown so one bad entry does not hide the rest.
Workspace build_workspace(const DslDocument& doc, int D);
GenericModel build_model(const ModelDecl& m, int D);

}  // namespace segrekit
