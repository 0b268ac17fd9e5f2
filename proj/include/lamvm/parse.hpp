#ifndef LAMVM_PARSE_HPP
#define LAMVM_PARSE_HPP

#include <string>
#include <string_view>

#include "lamvm/term.hpp"

namespace lamvm {

enum class Notation { DeBruijn, Named };

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct UnboundNameError : ParseError {
    UnboundNameError(const std::string& name, std::size_t pos)
        : ParseError("unbound name '" + name + "'", pos) {}
};

// Grammar: term := lam | app ; lam := ("λ"|"\") (ident ".")? term ;
// app := atom+ ; atom := numeral | ident | "(" term ")".
// DeBruijn notation uses numerals and binder-less lambdas; Named uses
// identifiers and "\x." binders. Mixed input is rejected.
TermPtr parse(std::string_view text, Notation notation);

// Guesses the notation from the tokens: identifiers mean Named,
// numerals mean DeBruijn. Throws ParseError when both appear.
Notation detect_notation(std::string_view text);

std::string print(const TermPtr& t, Notation notation = Notation::DeBruijn);

}  // namespace lamvm

#endif
