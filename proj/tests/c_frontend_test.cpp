#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "uvc/c_frontend.hpp"

using namespace uvc;
using namespace uvc::c;
using uvc::test::readTestdata;

TEST_CASE("parse the specified addition example") {
  CProgram p = parse_translation_unit(readTestdata("add_side_effect_spec.c"));
  REQUIRE(p.globals.size() == 1);
  CHECK(p.globals[0].name == "x");
  CHECK(p.globals[0].initial == 0);
  REQUIRE(p.globals[0].strongInvariant);
  CHECK(print_spec_expr(p.globals[0].strongInvariant) == "((x == 0) || (x == 1))");

  REQUIRE(p.functions.size() == 2);
  const CFunction* id = p.findFunction("id_set_x");
  REQUIRE(id);
  REQUIRE(id->contract.requires_);
  REQUIRE(id->contract.ensures_);
  CHECK(print_spec_expr(id->contract.requires_) == "(val == 1)");
  CHECK(print_spec_expr(id->contract.ensures_) == "(\\result == 1)");
  const CFunction* mn = p.findFunction("main");
  REQUIRE(mn);
  CHECK(!mn->contract.requires_);
  REQUIRE(mn->contract.ensures_);
  CHECK(mn->params.empty());

  CHECK(validate_subset(p).empty());
}

TEST_CASE("parse a minimal unit") {
  CProgram p = parse_translation_unit("int main(void){ return 0; }");
  CHECK(p.globals.empty());
  REQUIRE(p.functions.size() == 1);
  CHECK(!p.functions[0].contract.requires_);
  CHECK(!p.functions[0].contract.ensures_);
  CHECK(validate_subset(p).empty());
}

TEST_CASE("parse the fib case study") {
  CProgram p = parse_translation_unit(readTestdata("fib_range.c"));
  REQUIRE(p.modelFnDefs.size() == 1);
  CHECK(p.modelFnDefs[0].name == "fib");
  CHECK(p.modelFnDefs[0].arity == 1);
  REQUIRE(p.globals.size() == 1);
  REQUIRE(p.globals[0].strongInvariant);
  REQUIRE(p.functions.size() == 4);
  for (auto& f : p.functions) {
    CAPTURE(f.name);
    CHECK(f.contract.ensures_);
    CHECK(!f.contract.requires_);
  }
  CHECK(print_spec_expr(p.findFunction("one_to_fib")->contract.ensures_) ==
        "((\\result >= 1) && (\\result <= fib(n)))");
  CHECK(p.findFunction("id_set_x")->params[0].isConst);
  auto diags = validate_subset(p);
  for (auto& d : diags) MESSAGE(d.message);
  CHECK(diags.empty());
}

TEST_CASE("round-trip: parse of print equals parse") {
  for (const char* file : {"add_side_effect.c", "add_side_effect_spec.c", "fib_range.c"}) {
    CAPTURE(file);
    CProgram p = parse_translation_unit(readTestdata(file));
    CProgram p2 = parse_translation_unit(print_program(p));
    std::string why;
    bool eq = programs_equal(p, p2, &why);
    CAPTURE(why);
    CHECK(eq);
  }
}

TEST_CASE("spec expression parsing follows C precedence") {
  SpecExprP e = parse_spec_expr("\\result == val - 1 || \\result == val");
  REQUIRE(e->k == SpecExpr::K::Binary);
  CHECK(e->op == CBinOp::LOr);
  CHECK(print_spec_expr(e) == "((\\result == (val - 1)) || (\\result == val))");

  SpecExprP f = parse_spec_expr("\\result <= fib(n)");
  REQUIRE(f->k == SpecExpr::K::Binary);
  CHECK(f->op == CBinOp::Le);
  CHECK(f->args[1]->k == SpecExpr::K::ModelCall);
}

TEST_CASE("non-boolean top-level spec expressions are rejected") {
  CProgram p;
  std::vector<Diagnostic> diags;
  bool ok = analyze_source(
      "//@ ensures 1;\n"
      "int f(void){ return 0; }\n",
      p, diags);
  CHECK(ok);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("boolean") != std::string::npos);
}

TEST_CASE("subset violations carry precise diagnostics") {
  auto diagFor = [](const std::string& src) {
    CProgram p;
    std::vector<Diagnostic> diags;
    analyze_source(src, p, diags);
    REQUIRE(!diags.empty());
    return diags[0];
  };

  CHECK(diagFor("int *p;\n").message.find("pointer") != std::string::npos);
  CHECK(diagFor("int a[3];\n").message.find("array") != std::string::npos);
  CHECK(diagFor("float f;\n").message.find("float") != std::string::npos);
  CHECK(diagFor("int f(void){ return -1; }\n").message.find("unary minus") != std::string::npos);
  CHECK(diagFor("int f(void){ return 1 % 2; }\n").message.find("remainder") != std::string::npos);
  CHECK(diagFor("int f(void){ int i; return 0; }\n").message.find("initializer") !=
        std::string::npos);
  CHECK(diagFor("int f(void){ for(;;){} }\n").message.find("'for'") != std::string::npos);
  CHECK(diagFor("const int g = 1;\n").message.find("const global") != std::string::npos);

  // positions point at the offending construct
  Diagnostic d = diagFor("int x;\nint f(void){ return x ? 1 : 0; }\n");
  CHECK(d.loc.line == 2);
}

TEST_CASE("assignment to const is flagged by validation") {
  CProgram p;
  std::vector<Diagnostic> diags;
  bool ok = analyze_source("int f(const int v){ v = 3; return v; }\n", p, diags);
  CHECK(ok);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("const") != std::string::npos);
}

TEST_CASE("relational strong invariants are rejected") {
  CProgram p;
  std::vector<Diagnostic> diags;
  bool ok = analyze_source(
      "int x;\nint y;\n//@ strong global invariant x == y;\nint f(void){ return 0; }\n", p, diags);
  CHECK(!ok);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("exactly one global") != std::string::npos);
}

TEST_CASE("void functions cannot be used as values") {
  CProgram p;
  std::vector<Diagnostic> diags;
  bool ok = analyze_source("void f(void){ return; }\nint g(void){ return f() + 1; }\n", p, diags);
  CHECK(ok);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("value position") != std::string::npos);
}

TEST_CASE("assigns clauses parse and warn") {
  CProgram p;
  std::vector<Diagnostic> diags;
  bool ok = analyze_source(
      "int x;\n/*@ requires x == 0; assigns x; ensures \\result == 0; @*/\n"
      "int f(void){ return x; }\n",
      p, diags);
  CHECK(ok);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::Warning);
  CHECK(diags[0].message.find("assigns") != std::string::npos);
  REQUIRE(p.functions.size() == 1);
  CHECK(p.functions[0].contract.requires_);
  CHECK(p.functions[0].contract.ensures_);
}

TEST_CASE("unknown identifiers and unknown calls throw") {
  CHECK_THROWS_AS(parse_translation_unit("int f(void){ return y; }\n"), UnknownIdentifier);
  CHECK_THROWS_AS(parse_translation_unit("int f(void){ return g(); }\n"), UnknownIdentifier);
  CHECK_THROWS_AS(parse_translation_unit("//@ ensures \\result == q;\nint f(void){ return 0; }\n"),
                  UnknownIdentifier);
}

TEST_CASE("ensures on void functions cannot use result") {
  CProgram p;
  std::vector<Diagnostic> diags;
  bool ok = analyze_source("//@ ensures \\result == 0;\nvoid f(void){ return; }\n", p, diags);
  CHECK(ok);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("\\result") != std::string::npos);
}

TEST_CASE("annotations attach deterministically") {
  std::string src = readTestdata("fib_range.c");
  CProgram a = parse_translation_unit(src);
  CProgram b = parse_translation_unit(src);
  CHECK(programs_equal(a, b));
  CHECK(print_program(a) == print_program(b));
}

TEST_CASE("duplicate declarations are rejected") {
  CHECK_THROWS_AS(parse_translation_unit("int x;\nint x;\n"), SyntaxError);
  CHECK_THROWS_AS(parse_translation_unit("int f(void){return 0;}\nint f(void){return 1;}\n"),
                  SyntaxError);
  CHECK_THROWS_AS(parse_translation_unit("int f(void){ int a = 1; int a = 2; return a; }\n"),
                  SyntaxError);
}

TEST_CASE("loop invariants attach to the following while") {
  CProgram p = parse_translation_unit(
      "int f(const int n){\n"
      "  int i = 0;\n"
      "  //@ loop invariant i >= 0;\n"
      "  while (i < n) { i = i + 1; }\n"
      "  return i;\n"
      "}\n");
  const CStmtP& body = p.functions[0].body;
  REQUIRE(body->stmts.size() == 3);
  REQUIRE(body->stmts[1]->k == CStmt::K::While);
  REQUIRE(body->stmts[1]->loopInvariant.has_value());
  CHECK(print_spec_expr(*body->stmts[1]->loopInvariant) == "(i >= 0)");
  CHECK(validate_subset(p).empty());
}
