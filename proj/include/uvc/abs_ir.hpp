#pragma once

#include <string>
#include <vector>

#include "uvc/abs_ast.hpp"
#include "uvc/diag.hpp"

namespace uvc::abs {

// Parses model text in the surface syntax used by the printer (interfaces,
// classes, [Spec : ...] annotations, main block). Throws SyntaxError.
AbsModel parse_model(const std::string& text);

// Parses a single pure expression (used for model-function bodies embedded
// in C annotation comments and for test tooling).
ExprP parse_pure_expr(const std::string& text);

// Surface text; parse_model(print_model(m)) is structurally equal to m.
std::string print_model(const AbsModel& m);
std::string print_expr(const ExprP& e);
std::string print_ann(const SpecAnn& a);
std::string print_stmt(const Stmt& s, int indent);

// Type checking over {Int, Bool, Unit, Fut<Int>, Fut<Unit>, interface refs}.
// Returns diagnostics; empty means well-typed.
std::vector<Diagnostic> typecheck(const AbsModel& m);

// Normalization pass:
//  - sync-call sugar becomes async call + get-assign
//  - bare gets are assigned to fresh discard locals
//  - every method body ends in exactly one return (Unit bodies get
//    `return unit`)
//  - bare reads/writes of fields are rewritten to explicit this.<f> form,
//    and get/call/new results never assign directly to fields
//  - a method-level Requires that mentions only parameters moves to the
//    interface signature
// Requires a typechecked model; idempotent.
AbsModel normalize(const AbsModel& m);

// Structural equality modulo renaming of generated tmp_N / sc_N names and
// modulo method order inside interfaces and classes. When the result is
// false and why is non-null, a short explanation is stored there.
bool alpha_equivalent(const AbsModel& a, const AbsModel& b, std::string* why = nullptr);

}  // namespace uvc::abs
