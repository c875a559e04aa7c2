#include <sstream>

#include "uvc/c_frontend.hpp"

namespace uvc::c {

namespace {

const char* opText(CBinOp op) {
  switch (op) {
    case CBinOp::Add: return "+";
    case CBinOp::Sub: return "-";
    case CBinOp::Mul: return "*";
    case CBinOp::Div: return "/";
    case CBinOp::Lt: return "<";
    case CBinOp::Gt: return ">";
    case CBinOp::Le: return "<=";
    case CBinOp::Ge: return ">=";
    case CBinOp::Eq: return "==";
    case CBinOp::Ne: return "!=";
    case CBinOp::LAnd: return "&&";
    case CBinOp::LOr: return "||";
  }
  return "?";
}

void printSpecTo(std::ostream& os, const SpecExprP& e) {
  switch (e->k) {
    case SpecExpr::K::IntLit: os << e->iv; break;
    case SpecExpr::K::Var: os << e->name; break;
    case SpecExpr::K::Result: os << "\\result"; break;
    case SpecExpr::K::Binary:
      os << '(';
      printSpecTo(os, e->args[0]);
      os << ' ' << opText(e->op) << ' ';
      printSpecTo(os, e->args[1]);
      os << ')';
      break;
    case SpecExpr::K::ModelCall: {
      os << e->name << '(';
      bool first = true;
      for (auto& a : e->args) {
        if (!first) os << ", ";
        first = false;
        printSpecTo(os, a);
      }
      os << ')';
      break;
    }
  }
}

void printExprTo(std::ostream& os, const CExprP& e) {
  switch (e->k) {
    case CExpr::K::IntLit: os << e->iv; break;
    case CExpr::K::Var: os << e->name; break;
    case CExpr::K::Assign:
      os << '(' << e->name << " = ";
      printExprTo(os, e->args[0]);
      os << ')';
      break;
    case CExpr::K::Binary:
      os << '(';
      printExprTo(os, e->args[0]);
      os << ' ' << opText(e->op) << ' ';
      printExprTo(os, e->args[1]);
      os << ')';
      break;
    case CExpr::K::Call: {
      os << e->name << '(';
      bool first = true;
      for (auto& a : e->args) {
        if (!first) os << ", ";
        first = false;
        printExprTo(os, a);
      }
      os << ')';
      break;
    }
  }
}

std::string ind(int n) { return std::string(n, ' '); }

void printStmtTo(std::ostream& os, const CStmtP& s, int indent) {
  switch (s->k) {
    case CStmt::K::Compound:
      os << ind(indent) << "{\n";
      for (auto& inner : s->stmts) printStmtTo(os, inner, indent + 2);
      os << ind(indent) << "}\n";
      break;
    case CStmt::K::Decl:
      os << ind(indent) << (s->isConst ? "const int " : "int ") << s->name << " = ";
      printExprTo(os, s->expr);
      os << ";\n";
      break;
    case CStmt::K::Expr:
      os << ind(indent);
      printExprTo(os, s->expr);
      os << ";\n";
      break;
    case CStmt::K::Return:
      os << ind(indent) << "return";
      if (s->expr) {
        os << ' ';
        printExprTo(os, s->expr);
      }
      os << ";\n";
      break;
    case CStmt::K::If:
      os << ind(indent) << "if (";
      printExprTo(os, s->expr);
      os << ")\n";
      printStmtTo(os, s->then_, indent + 2);
      if (s->else_) {
        os << ind(indent) << "else\n";
        printStmtTo(os, s->else_, indent + 2);
      }
      break;
    case CStmt::K::While:
      if (s->loopInvariant) {
        os << ind(indent) << "//@ loop invariant ";
        printSpecTo(os, *s->loopInvariant);
        os << ";\n";
      }
      os << ind(indent) << "while (";
      printExprTo(os, s->expr);
      os << ")\n";
      printStmtTo(os, s->body, indent + 2);
      break;
  }
}

}  // namespace

std::string print_spec_expr(const SpecExprP& e) {
  std::ostringstream os;
  printSpecTo(os, e);
  return os.str();
}

std::string print_program(const CProgram& p) {
  std::ostringstream os;
  for (auto& d : p.modelFnDefs) {
    std::string raw = d.rawText;
    for (auto& ch : raw)
      if (ch == '\n') ch = ' ';
    os << "//@ ABS def " << raw << ";\n";
  }
  for (auto& g : p.globals) {
    if (g.strongInvariant) {
      os << "/*@ strong global invariant ";
      printSpecTo(os, g.strongInvariant);
      os << "; @*/\n";
    }
    os << "int " << g.name;
    if (g.initial != 0) {
      os << " = ";
      if (g.initial < 0)
        os << "-" << -g.initial;
      else
        os << g.initial;
    }
    os << ";\n";
  }
  for (auto& f : p.functions) {
    bool hasContract = f.contract.requires_ || f.contract.ensures_;
    if (hasContract) {
      os << "/*@ ";
      if (f.contract.requires_) {
        os << "requires ";
        printSpecTo(os, f.contract.requires_);
        os << "; ";
      }
      if (f.contract.ensures_) {
        os << "ensures ";
        printSpecTo(os, f.contract.ensures_);
        os << "; ";
      }
      os << "@*/\n";
    }
    os << (f.returnsInt ? "int " : "void ") << f.name << '(';
    if (f.params.empty()) {
      os << "void";
    } else {
      bool first = true;
      for (auto& prm : f.params) {
        if (!first) os << ", ";
        first = false;
        os << (prm.isConst ? "const int " : "int ") << prm.name;
      }
    }
    os << ")\n";
    printStmtTo(os, f.body, 0);
  }
  return os.str();
}

namespace {

bool specEqual(const SpecExprP& a, const SpecExprP& b) {
  if (!a || !b) return !a && !b;
  if (a->k != b->k) return false;
  switch (a->k) {
    case SpecExpr::K::IntLit:
      if (a->iv != b->iv) return false;
      break;
    case SpecExpr::K::Var:
      if (a->name != b->name || a->varKind != b->varKind) return false;
      break;
    case SpecExpr::K::Result:
      break;
    case SpecExpr::K::Binary:
      if (a->op != b->op) return false;
      break;
    case SpecExpr::K::ModelCall:
      if (a->name != b->name) return false;
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!specEqual(a->args[i], b->args[i])) return false;
  return true;
}

bool exprEqual(const CExprP& a, const CExprP& b) {
  if (!a || !b) return !a && !b;
  if (a->k != b->k) return false;
  switch (a->k) {
    case CExpr::K::IntLit:
      if (a->iv != b->iv) return false;
      break;
    case CExpr::K::Var:
    case CExpr::K::Assign:
      if (a->name != b->name || a->varKind != b->varKind) return false;
      break;
    case CExpr::K::Binary:
      if (a->op != b->op) return false;
      break;
    case CExpr::K::Call:
      if (a->name != b->name) return false;
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); i++)
    if (!exprEqual(a->args[i], b->args[i])) return false;
  return true;
}

bool stmtEqual(const CStmtP& a, const CStmtP& b) {
  if (!a || !b) return !a && !b;
  if (a->k != b->k) return false;
  if (a->name != b->name || a->isConst != b->isConst) return false;
  if (!exprEqual(a->expr, b->expr)) return false;
  if (a->stmts.size() != b->stmts.size()) return false;
  for (size_t i = 0; i < a->stmts.size(); i++)
    if (!stmtEqual(a->stmts[i], b->stmts[i])) return false;
  if (!stmtEqual(a->then_, b->then_) || !stmtEqual(a->else_, b->else_) ||
      !stmtEqual(a->body, b->body))
    return false;
  bool ai = a->loopInvariant.has_value(), bi = b->loopInvariant.has_value();
  if (ai != bi) return false;
  if (ai && !specEqual(*a->loopInvariant, *b->loopInvariant)) return false;
  return true;
}

}  // namespace

bool programs_equal(const CProgram& a, const CProgram& b, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.globals.size() != b.globals.size()) return fail("global count");
  for (size_t i = 0; i < a.globals.size(); i++) {
    if (a.globals[i].name != b.globals[i].name) return fail("global name");
    if (a.globals[i].initial != b.globals[i].initial) return fail("global initial");
    if (!specEqual(a.globals[i].strongInvariant, b.globals[i].strongInvariant))
      return fail("strong invariant of " + a.globals[i].name);
  }
  if (a.modelFnDefs.size() != b.modelFnDefs.size()) return fail("model function count");
  for (size_t i = 0; i < a.modelFnDefs.size(); i++) {
    if (a.modelFnDefs[i].name != b.modelFnDefs[i].name) return fail("model function name");
    if (a.modelFnDefs[i].arity != b.modelFnDefs[i].arity) return fail("model function arity");
  }
  if (a.functions.size() != b.functions.size()) return fail("function count");
  for (size_t i = 0; i < a.functions.size(); i++) {
    const CFunction& f = a.functions[i];
    const CFunction& g = b.functions[i];
    if (f.name != g.name || f.returnsInt != g.returnsInt) return fail("function header " + f.name);
    if (f.params.size() != g.params.size()) return fail("params of " + f.name);
    for (size_t j = 0; j < f.params.size(); j++)
      if (f.params[j].name != g.params[j].name || f.params[j].isConst != g.params[j].isConst)
        return fail("params of " + f.name);
    if (!specEqual(f.contract.requires_, g.contract.requires_)) return fail("requires of " + f.name);
    if (!specEqual(f.contract.ensures_, g.contract.ensures_)) return fail("ensures of " + f.name);
    if (!stmtEqual(f.body, g.body)) return fail("body of " + f.name);
  }
  return true;
}

}  // namespace uvc::c
