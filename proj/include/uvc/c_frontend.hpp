#pragma once

#include <string>
#include <vector>

#include "uvc/c_ast.hpp"
#include "uvc/diag.hpp"

namespace uvc::c {

// Parses one translation unit and resolves names. Annotation comments attach
// to the function or statement they precede (or, for function contracts, to
// the function whose signature they follow); strong global invariants bind to
// the single global variable they mention. Throws SyntaxError,
// SubsetViolation or UnknownIdentifier.
CProgram parse_translation_unit(const std::string& source);

// Parses an annotation expression on its own. Identifiers stay unresolved.
SpecExprP parse_spec_expr(const std::string& text);

// Checks the fragment restrictions that are statable on a parsed program:
// contract shape, invariant shape, spec-expression typing, model-function
// definitions. Empty result means the program is extractable.
std::vector<Diagnostic> validate_subset(const CProgram& program);

// Convenience used by the driver: parse + validate, turning thrown parse
// errors into diagnostics. Returns true when the program parsed.
bool analyze_source(const std::string& source, CProgram& out, std::vector<Diagnostic>& diags);

// Pretty-printer; parse(print(parse(s))) is structurally equal to parse(s).
std::string print_program(const CProgram& p);
std::string print_spec_expr(const SpecExprP& e);

// Structural equality of parsed programs (for round-trip tests).
bool programs_equal(const CProgram& a, const CProgram& b, std::string* why = nullptr);

// Token stream shared by the C parser and the annotation parsers.
namespace lex {

struct Token {
  enum class K { Ident, Keyword, Int, Punct, Annotation, End };
  K k = K::End;
  std::string text;
  long long iv = 0;
  SourceLoc loc;
};

// Lexes C source. Annotation comments become single Annotation tokens;
// consecutive //@ lines merge into one. `keywords` distinguishes Keyword
// from Ident tokens.
std::vector<Token> tokenize(const std::string& source);

}  // namespace lex

}  // namespace uvc::c
