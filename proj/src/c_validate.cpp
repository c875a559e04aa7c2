#include <functional>

#include "uvc/abs_ir.hpp"
#include "uvc/c_frontend.hpp"

namespace uvc::c {

namespace {

enum class SpecType { Int, Bool, Bad };

class Validator {
public:
  explicit Validator(const CProgram& p) : p_(p) {}

  std::vector<Diagnostic> run() {
    checkModelFns();
    for (auto& g : p_.globals) {
      if (!g.strongInvariant) continue;
      if (specType(g.strongInvariant) != SpecType::Bool)
        error(g.loc, "strong global invariant must be a boolean expression");
      if (containsResult(g.strongInvariant))
        error(g.loc, "strong global invariant cannot mention \\result");
    }
    for (auto& f : p_.functions) checkFunction(f);
    return diags_;
  }

private:
  void error(SourceLoc loc, const std::string& msg) {
    diags_.push_back({Severity::Error, loc, msg});
  }
  void warn(SourceLoc loc, const std::string& msg) {
    diags_.push_back({Severity::Warning, loc, msg});
  }

  // Model-function definitions are checked by the model-language checker over
  // a throwaway model holding only the definitions.
  void checkModelFns() {
    if (p_.modelFnDefs.empty()) return;
    std::string text = "module M;\n";
    for (auto& d : p_.modelFnDefs) text += "def " + d.rawText + ";\n";
    text += "{ }\n";
    try {
      abs::AbsModel m = abs::parse_model(text);
      for (auto& d : abs::typecheck(m))
        error(p_.modelFnDefs[0].loc, "in ABS def: " + d.message);
    } catch (const UvcError& e) {
      error(p_.modelFnDefs[0].loc, "in ABS def: " + std::string(e.what()));
    }
  }

  bool containsResult(const SpecExprP& e) {
    if (!e) return false;
    if (e->k == SpecExpr::K::Result) return true;
    for (auto& a : e->args)
      if (containsResult(a)) return true;
    return false;
  }

  SpecType specType(const SpecExprP& e) {
    if (!e) return SpecType::Bad;
    switch (e->k) {
      case SpecExpr::K::IntLit:
      case SpecExpr::K::Var:
      case SpecExpr::K::Result:
      case SpecExpr::K::ModelCall:
        return SpecType::Int;
      case SpecExpr::K::Binary: {
        SpecType l = specType(e->args[0]);
        SpecType r = specType(e->args[1]);
        switch (e->op) {
          case CBinOp::Add:
          case CBinOp::Sub:
          case CBinOp::Mul:
          case CBinOp::Div:
            if (l != SpecType::Int || r != SpecType::Int) {
              error(e->loc, "arithmetic over boolean operands in specification");
              return SpecType::Bad;
            }
            return SpecType::Int;
          case CBinOp::Lt:
          case CBinOp::Gt:
          case CBinOp::Le:
          case CBinOp::Ge:
          case CBinOp::Eq:
          case CBinOp::Ne:
            if (l != SpecType::Int || r != SpecType::Int) {
              error(e->loc, "comparison over boolean operands in specification");
              return SpecType::Bad;
            }
            return SpecType::Bool;
          case CBinOp::LAnd:
          case CBinOp::LOr:
            if (l != SpecType::Bool || r != SpecType::Bool) {
              error(e->loc, "'&&'/'||' take boolean operands in specifications");
              return SpecType::Bad;
            }
            return SpecType::Bool;
        }
        return SpecType::Bad;
      }
    }
    return SpecType::Bad;
  }

  void checkBoolSpec(const SpecExprP& e, SourceLoc loc, const std::string& what) {
    if (!e) return;
    SpecType t = specType(e);
    if (t == SpecType::Int)
      error(loc, what + " must be a boolean expression at the top level");
  }

  void checkFunction(const CFunction& f) {
    if (f.contract.hasAssigns)
      warn(f.loc, "assigns clause on '" + f.name + "' is ignored");
    if (f.contract.requires_) {
      checkBoolSpec(f.contract.requires_, f.loc, "requires clause of '" + f.name + "'");
      if (containsResult(f.contract.requires_))
        error(f.loc, "requires clause of '" + f.name + "' cannot mention \\result");
    }
    if (f.contract.ensures_) {
      checkBoolSpec(f.contract.ensures_, f.loc, "ensures clause of '" + f.name + "'");
      if (!f.returnsInt && containsResult(f.contract.ensures_))
        error(f.loc, "ensures clause of void '" + f.name + "' cannot mention \\result");
    }
    checkStmt(f, f.body);
  }

  void checkStmt(const CFunction& f, const CStmtP& s) {
    if (!s) return;
    switch (s->k) {
      case CStmt::K::Compound:
        for (auto& inner : s->stmts) checkStmt(f, inner);
        break;
      case CStmt::K::Decl:
        checkExpr(s->expr, false);
        break;
      case CStmt::K::Expr:
        // a void call may stand alone as a full expression statement
        checkExpr(s->expr, true);
        break;
      case CStmt::K::Return:
        if (f.returnsInt && !s->expr)
          error(s->loc, "'" + f.name + "' returns int but has a bare return");
        if (!f.returnsInt && s->expr)
          error(s->loc, "void '" + f.name + "' cannot return a value");
        if (s->expr) checkExpr(s->expr, false);
        break;
      case CStmt::K::If:
        checkExpr(s->expr, false);
        checkStmt(f, s->then_);
        checkStmt(f, s->else_);
        break;
      case CStmt::K::While:
        checkExpr(s->expr, false);
        if (s->loopInvariant) {
          checkBoolSpec(*s->loopInvariant, s->loc, "loop invariant");
          if (containsResult(*s->loopInvariant))
            error(s->loc, "loop invariants cannot mention \\result");
        }
        checkStmt(f, s->body);
        break;
    }
  }

  void checkExpr(const CExprP& e, bool voidAllowed) {
    if (!e) return;
    switch (e->k) {
      case CExpr::K::IntLit:
      case CExpr::K::Var:
        break;
      case CExpr::K::Assign:
        if (e->targetConst)
          error(e->loc, "assignment to const variable '" + e->name + "'");
        checkExpr(e->args[0], false);
        break;
      case CExpr::K::Binary:
        checkExpr(e->args[0], false);
        checkExpr(e->args[1], false);
        break;
      case CExpr::K::Call: {
        const CFunction* target = p_.findFunction(e->name);
        if (target && !target->returnsInt && !voidAllowed)
          error(e->loc, "void function '" + e->name + "' used in a value position");
        for (auto& a : e->args) checkExpr(a, false);
        break;
      }
    }
  }

  const CProgram& p_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate_subset(const CProgram& program) {
  return Validator(program).run();
}

}  // namespace uvc::c
