#pragma once

// AST for the supported C fragment: int/void functions over global and local
// int variables, with contract annotations attached from `//@ ...` and
// `/*@ ... @*/` comments.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "uvc/diag.hpp"

namespace uvc::c {

enum class CBinOp { Add, Sub, Mul, Div, Lt, Gt, Le, Ge, Eq, Ne, LAnd, LOr };

enum class VarKind { Unresolved, Global, Param, Local };

struct CExpr;
using CExprP = std::shared_ptr<CExpr>;

struct CExpr {
  enum class K { IntLit, Var, Assign, Binary, Call };
  K k = K::IntLit;
  SourceLoc loc;
  long long iv = 0;
  std::string name;     // Var, Assign target, Call target
  VarKind varKind = VarKind::Unresolved;  // Var / Assign target
  bool targetConst = false;               // Assign target constness
  CBinOp op = CBinOp::Add;
  std::vector<CExprP> args;  // Assign rhs, Binary operands, Call arguments
};

struct SpecExpr;
using SpecExprP = std::shared_ptr<SpecExpr>;

// Expression in an annotation: over parameters, globals, `\result`, integer
// literals, and applications of declared model functions.
struct SpecExpr {
  enum class K { IntLit, Var, Result, Binary, ModelCall };
  K k = K::IntLit;
  SourceLoc loc;
  long long iv = 0;
  std::string name;
  VarKind varKind = VarKind::Unresolved;  // Var only (Global or Param)
  CBinOp op = CBinOp::Add;
  std::vector<SpecExprP> args;
};

struct CStmt;
using CStmtP = std::shared_ptr<CStmt>;

struct CStmt {
  enum class K { Expr, Decl, Return, If, While, Compound };
  K k = K::Compound;
  SourceLoc loc;
  CExprP expr;                  // Expr statement / Decl initializer / Return value / If/While cond
  std::string name;             // Decl
  bool isConst = false;         // Decl
  std::vector<CStmtP> stmts;    // Compound
  CStmtP then_, else_;          // If
  CStmtP body;                  // While
  std::optional<SpecExprP> loopInvariant;  // While
};

struct Contract {
  SpecExprP requires_;  // may be null
  SpecExprP ensures_;   // may be null
  bool hasAssigns = false;
};

struct CFunction {
  std::string name;
  SourceLoc loc;
  struct FnParam {
    std::string name;
    bool isConst = false;
  };
  std::vector<FnParam> params;
  bool returnsInt = true;  // else void
  Contract contract;
  CStmtP body;  // Compound
};

struct GlobalDecl {
  std::string name;
  SourceLoc loc;
  long long initial = 0;
  SpecExprP strongInvariant;  // may be null
};

struct ModelFnDef {
  std::string rawText;  // "Int fib(Int n) = ..."
  std::string name;
  size_t arity = 0;
  SourceLoc loc;
};

struct CProgram {
  std::vector<GlobalDecl> globals;
  std::vector<CFunction> functions;
  std::vector<ModelFnDef> modelFnDefs;

  const GlobalDecl* findGlobal(const std::string& n) const {
    for (auto& g : globals)
      if (g.name == n) return &g;
    return nullptr;
  }
  const CFunction* findFunction(const std::string& n) const {
    for (auto& f : functions)
      if (f.name == n) return &f;
    return nullptr;
  }
  const ModelFnDef* findModelFn(const std::string& n) const {
    for (auto& f : modelFnDefs)
      if (f.name == n) return &f;
    return nullptr;
  }
};

}  // namespace uvc::c
