#pragma once

// Concrete syntax:
//
//   program  := { "let" Name "(" vars ")" ":=" formula ";" } formula
//   formula  := iff ;  iff := imp ["<->" iff] ;  imp := or ["->" imp]
//   or := and {"|" and} ;  and := unary {"&" unary}
//   unary := "!" unary | ("E"|"A") var "." formula | "(" formula ")" | atom
//   atom := term ("<"|"<="|">"|">="|"="|"!=") term | "true" | "false"
//         | C[r,{k,..}](t) | Vr[r](t,t,t) | Ur[r](..) | Wr[r](..) | Int(t)
//         | InvPow[r](t) | Pow[r](t) | Dfin[r](t) | Name(t, ..)
//   term := prod {("+"|"-") prod} ;  prod := unary_t {"*" unary_t}  (one side constant)
//   unary_t := "-" unary_t | number ["/" number] | var | "(" term ")"
//
// Variables [a-z][a-zA-Z0-9_]*, macro names start upper case; '#' starts a
// line comment. "&" also accepts "∧", "|" accepts "∨", "!" accepts "¬".

#include "cantor/logic/ast.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor::logic {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

FormulaPtr parse(std::string_view text);

}  // namespace cantor::logic
