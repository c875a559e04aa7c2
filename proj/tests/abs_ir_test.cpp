#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "uvc/abs_ir.hpp"

using namespace uvc;
using namespace uvc::abs;
using uvc::test::readTestdata;

static AbsModel parseNormalized(const std::string& text) {
  AbsModel m = parse_model(text);
  REQUIRE(typecheck(m).empty());
  return normalize(m);
}

TEST_CASE("parse golden extracted model") {
  AbsModel m = parse_model(readTestdata("fib_range_expected.abs"));
  CHECK(m.moduleName == "TestModule");
  CHECK(m.hasSpecData);
  REQUIRE(m.modelFunctions.size() == 1);
  CHECK(m.modelFunctions[0].name == "fib");
  CHECK(m.interfaces.size() == 5);
  CHECK(m.classes.size() == 5);
  CHECK(m.mainBlock.empty());

  const ClassDecl* fib = m.findClass("C_one_to_fib");
  REQUIRE(fib);
  CHECK(fib->methods.size() == 5);
  const MethodImpl* call = findMethod(*fib, "call");
  REQUIRE(call);
  // returnFlag, funcResult, tmp_20 decl, outer if, trailing return
  CHECK(call->body.size() == 5);
  CHECK(call->body.back().k == Stmt::K::Return);

  auto diags = typecheck(m);
  for (auto& d : diags) MESSAGE(d.message);
  CHECK(diags.empty());
}

TEST_CASE("parse fold model") {
  AbsModel m = parse_model(readTestdata("fold.abs"));
  REQUIRE(m.findInterface("Fold"));
  REQUIRE(m.findInterface("Comp"));
  REQUIRE(m.findClass("CompC"));
  REQUIRE(m.findClass("FoldC"));
  CHECK(m.mainBlock.size() == 5);
  CHECK(m.mainBlock.back().k == Stmt::K::Await);
  CHECK(m.mainBlock.back().guard.size() == 2);
  CHECK(typecheck(m).empty());
}

TEST_CASE("empty module is a valid model") {
  AbsModel m = parse_model("module M;\n{ }");
  CHECK(m.interfaces.empty());
  CHECK(m.classes.empty());
  CHECK(m.mainBlock.empty());
  CHECK(typecheck(m).empty());
  AbsModel m2 = parse_model(print_model(m));
  CHECK(alpha_equivalent(m, m2));
}

TEST_CASE("print/parse round-trip is the identity") {
  for (const char* file : {"fib_range_expected.abs", "fold.abs"}) {
    CAPTURE(file);
    AbsModel m = parse_model(readTestdata(file));
    std::string printed = print_model(m);
    AbsModel m2 = parse_model(printed);
    std::string why;
    bool eq = alpha_equivalent(m, m2, &why);
    CAPTURE(why);
    CHECK(eq);
    // printing is deterministic
    CHECK(print_model(m2) == printed);
  }
}

TEST_CASE("typecheck rejects await over non-future") {
  AbsModel m = parse_model(
      "module M;\n"
      "interface I { Int m(); }\n"
      "class C implements I {\n"
      "  Int m(){ await 5?; return 0; }\n"
      "}\n"
      "{ }");
  auto diags = typecheck(m);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("non-future") != std::string::npos);
}

TEST_CASE("typecheck rejects unknown identifier in Ensures") {
  AbsModel m = parse_model(
      "module M;\n"
      "interface I { [Spec : Ensures(result2 == 0)] Int m(); }\n"
      "class C implements I { Int m(){ return 0; } }\n"
      "{ }");
  auto diags = typecheck(m);
  REQUIRE(!diags.empty());
  CHECK(diags[0].message.find("unknown identifier 'result2'") != std::string::npos);
}

TEST_CASE("typecheck rejects non-boolean spec expressions") {
  AbsModel m = parse_model(
      "module M;\n"
      "interface I { [Spec : Ensures(result + 1)] Int m(); }\n"
      "class C implements I { Int m(){ return 0; } }\n"
      "{ }");
  CHECK(!typecheck(m).empty());
}

TEST_CASE("normalize assigns bare gets to fresh locals") {
  AbsModel m = parse_model(readTestdata("fib_range_expected.abs"));
  AbsModel n = normalize(m);
  const MethodImpl* setg = findMethod(*n.findClass("C_id_set_x"), "set_global_x_val");
  REQUIRE(setg);
  // async call; get assigned to a fresh local; implicit return unit
  REQUIRE(setg->body.size() == 3);
  CHECK(setg->body[0].k == Stmt::K::AsyncCall);
  CHECK(setg->body[1].k == Stmt::K::GetAssign);
  CHECK(setg->body[1].declType.has_value());
  CHECK(setg->body[1].declType->k == Type::K::Unit);
  CHECK(setg->body[2].k == Stmt::K::Return);
  CHECK(setg->body[2].rhs->k == Expr::K::UnitLit);
}

TEST_CASE("normalize is idempotent") {
  for (const char* file : {"fib_range_expected.abs", "fold.abs"}) {
    CAPTURE(file);
    AbsModel n1 = parseNormalized(readTestdata(file));
    AbsModel n2 = normalize(n1);
    std::string why;
    bool eq = alpha_equivalent(n1, n2, &why);
    CAPTURE(why);
    CHECK(eq);
    CHECK(print_model(n1) == print_model(n2));
  }
}

TEST_CASE("normalize leaves fold's get-assigns alone") {
  AbsModel n = parseNormalized(readTestdata("fold.abs"));
  const MethodImpl* fold = findMethod(*n.findClass("FoldC"), "fold");
  REQUIRE(fold);
  REQUIRE(fold->body.size() == 5);
  CHECK(fold->body[0].k == Stmt::K::AsyncCall);
  CHECK(fold->body[1].k == Stmt::K::GetAssign);
  CHECK(fold->body[1].target == "last");
  CHECK(fold->body[4].k == Stmt::K::Return);
}

TEST_CASE("normalize splits sync-call sugar") {
  AbsModel m = parse_model(
      "module M;\n"
      "interface I { Int m(); Int k(); }\n"
      "class C implements I {\n"
      "  Int m(){ Int v = this.k(); return v; }\n"
      "  Int k(){ return 3; }\n"
      "}\n"
      "{ }");
  REQUIRE(typecheck(m).empty());
  AbsModel n = normalize(m);
  const MethodImpl* meth = findMethod(*n.findClass("C"), "m");
  REQUIRE(meth->body.size() == 3);
  CHECK(meth->body[0].k == Stmt::K::AsyncCall);
  CHECK(meth->body[0].declType->k == Type::K::FutInt);
  CHECK(meth->body[1].k == Stmt::K::GetAssign);
  CHECK(meth->body[1].target == "v");
  auto diags = typecheck(n);
  for (auto& d : diags) MESSAGE(d.message);
  CHECK(diags.empty());
}

TEST_CASE("normalize moves parameter-only method Requires to the interface") {
  AbsModel m = parse_model(
      "module M;\n"
      "interface I { Int m(Int a); }\n"
      "class C implements I {\n"
      "  [Spec : Requires(a > 0)]\n"
      "  Int m(Int a){ return a; }\n"
      "}\n"
      "{ }");
  REQUIRE(typecheck(m).empty());
  AbsModel n = normalize(m);
  const MethodSig* sig = findSig(*n.findInterface("I"), "m");
  REQUIRE(sig->anns.size() == 1);
  CHECK(sig->anns[0].k == SpecAnn::K::Requires);
  CHECK(findMethod(*n.findClass("C"), "m")->anns.empty());
}

TEST_CASE("alpha equivalence renames generated temps consistently") {
  const char* a =
      "module M;\n"
      "interface I { Int m(); }\n"
      "class C implements I {\n"
      "  Int m(){ Fut<Int> tmp_1 = this!m(); await tmp_1?; Int tmp_2 = tmp_1.get; return tmp_2; }\n"
      "}\n"
      "{ }";
  const char* b =
      "module M2;\n"
      "interface I { Int m(); }\n"
      "class C implements I {\n"
      "  Int m(){ Fut<Int> tmp_9 = this!m(); await tmp_9?; Int tmp_4 = tmp_9.get; return tmp_4; }\n"
      "}\n"
      "{ }";
  CHECK(alpha_equivalent(parse_model(a), parse_model(b)));

  const char* c =
      "module M3;\n"
      "interface I { Int m(); }\n"
      "class C implements I {\n"
      "  Int m(){ Fut<Int> tmp_9 = this!m(); await tmp_9?; Int tmp_4 = tmp_9.get; return tmp_9; }\n"
      "}\n"
      "{ }";
  (void)c;
  CHECK(!alpha_equivalent(parse_model(a), parse_model(c)));
}

TEST_CASE("alpha equivalence ignores method order but not statements") {
  AbsModel m = parse_model(readTestdata("fib_range_expected.abs"));
  AbsModel swapped = m;
  auto& methods = swapped.classes[1].methods;
  REQUIRE(methods.size() >= 2);
  std::swap(methods[0], methods[1]);
  CHECK(alpha_equivalent(m, swapped));

  AbsModel mutated = m;
  auto& body = mutated.classes[1].methods[0].body;
  REQUIRE(!body.empty());
  body.pop_back();
  std::string why;
  CHECK(!alpha_equivalent(m, mutated, &why));
  CHECK(!why.empty());
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_model("module M\ninterface I {}"), SyntaxError);
  try {
    parse_model("module M;\ninterface I { Int m(; }\n{ }");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.loc().line == 2);
  }
}

TEST_CASE("pure expression parser handles the fib definition body") {
  ExprP e = parse_pure_expr("if n <= 2 then 1 else fib(n-1) + fib(n-2)");
  REQUIRE(e->k == Expr::K::Ite);
  CHECK(e->args[0]->k == Expr::K::Binary);
  CHECK(e->args[2]->k == Expr::K::Binary);
  CHECK(print_expr(e) ==
        "if ( n <= 2 ) then 1 else ( fib(( n - 1 )) + fib(( n - 2 )) )");
}
