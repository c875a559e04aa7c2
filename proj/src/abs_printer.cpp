#include <sstream>

#include "uvc/abs_ir.hpp"

namespace uvc::abs {

namespace {

const char* opText(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Lt: return "<";
    case BinOp::Gt: return ">";
    case BinOp::Le: return "<=";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

std::string typeText(const Type& t) {
  switch (t.k) {
    case Type::K::Int: return "Int";
    case Type::K::Bool: return "Bool";
    case Type::K::Unit: return "Unit";
    case Type::K::FutInt: return "Fut<Int>";
    case Type::K::FutUnit: return "Fut<Unit>";
    case Type::K::Iface: return t.iface;
  }
  return "?";
}

void printExprTo(std::ostream& os, const ExprP& e) {
  switch (e->k) {
    case Expr::K::IntLit: os << e->iv; break;
    case Expr::K::BoolLit: os << (e->bv ? "True" : "False"); break;
    case Expr::K::UnitLit: os << "unit"; break;
    case Expr::K::NullLit: os << "null"; break;
    case Expr::K::Var: os << e->name; break;
    case Expr::K::FieldRead: os << "this." << e->name; break;
    case Expr::K::This: os << "this"; break;
    case Expr::K::Binary:
      os << "( ";
      printExprTo(os, e->args[0]);
      os << ' ' << opText(e->op) << ' ';
      printExprTo(os, e->args[1]);
      os << " )";
      break;
    case Expr::K::Ite:
      os << "if ";
      printExprTo(os, e->args[0]);
      os << " then ";
      printExprTo(os, e->args[1]);
      os << " else ";
      printExprTo(os, e->args[2]);
      break;
    case Expr::K::FnCall: {
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
    case Expr::K::ValueOf: os << "valueOf(" << e->name << ')'; break;
  }
}

const char* annKind(SpecAnn::K k) {
  switch (k) {
    case SpecAnn::K::ObjInv: return "ObjInv";
    case SpecAnn::K::Ensures: return "Ensures";
    case SpecAnn::K::Requires: return "Requires";
    case SpecAnn::K::WhileInv: return "WhileInv";
  }
  return "?";
}

std::string ind(int n) { return std::string(n, ' '); }

void printArgsTo(std::ostream& os, const std::vector<ExprP>& args) {
  os << '(';
  bool first = true;
  for (auto& a : args) {
    if (!first) os << ", ";
    first = false;
    printExprTo(os, a);
  }
  os << ')';
}

void printStmtTo(std::ostream& os, const Stmt& s, int indent);

void printBodyTo(std::ostream& os, const std::vector<Stmt>& body, int indent) {
  for (auto& s : body) printStmtTo(os, s, indent);
}

void printStmtTo(std::ostream& os, const Stmt& s, int indent) {
  os << ind(indent);
  auto decl = [&]() {
    if (s.declType) os << typeText(*s.declType) << ' ';
    os << s.target << " = ";
  };
  switch (s.k) {
    case Stmt::K::VarDecl:
    case Stmt::K::Assign:
      decl();
      printExprTo(os, s.rhs);
      os << ";\n";
      break;
    case Stmt::K::FieldAssign:
      os << "this." << s.target << " = ";
      printExprTo(os, s.rhs);
      os << ";\n";
      break;
    case Stmt::K::AsyncCall:
      decl();
      printExprTo(os, s.callee);
      os << '!' << s.method;
      printArgsTo(os, s.args);
      os << ";\n";
      break;
    case Stmt::K::GetAssign:
      decl();
      printExprTo(os, s.rhs);
      os << ".get;\n";
      break;
    case Stmt::K::GetBare:
      printExprTo(os, s.rhs);
      os << ".get;\n";
      break;
    case Stmt::K::SyncCall:
      decl();
      printExprTo(os, s.callee);
      os << '.' << s.method;
      printArgsTo(os, s.args);
      os << ";\n";
      break;
    case Stmt::K::SyncCallBare:
      printExprTo(os, s.callee);
      os << '.' << s.method;
      printArgsTo(os, s.args);
      os << ";\n";
      break;
    case Stmt::K::NewAssign:
      decl();
      os << "new " << s.method;
      printArgsTo(os, s.args);
      os << ";\n";
      break;
    case Stmt::K::Await: {
      os << "await ";
      bool first = true;
      for (auto& g : s.guard) {
        if (!first) os << " & ";
        first = false;
        printExprTo(os, g);
        os << '?';
      }
      os << ";\n";
      break;
    }
    case Stmt::K::If:
      os << "if ( ";
      printExprTo(os, s.cond);
      os << " ){\n";
      printBodyTo(os, s.body1, indent + 2);
      if (!s.body2.empty()) {
        os << ind(indent) << "} else {\n";
        printBodyTo(os, s.body2, indent + 2);
      }
      os << ind(indent) << "}\n";
      break;
    case Stmt::K::While:
      if (s.whileInv) os << print_ann(*s.whileInv) << '\n' << ind(indent);
      os << "while ( ";
      printExprTo(os, s.cond);
      os << " ){\n";
      printBodyTo(os, s.body1, indent + 2);
      os << ind(indent) << "}\n";
      break;
    case Stmt::K::Return:
      os << "return ";
      printExprTo(os, s.rhs);
      os << ";\n";
      break;
    case Stmt::K::Skip:
      os << "skip;\n";
      break;
  }
}

void printParamsTo(std::ostream& os, const std::vector<Param>& ps) {
  os << '(';
  bool first = true;
  for (auto& p : ps) {
    if (!first) os << ", ";
    first = false;
    os << typeText(p.type) << ' ' << p.name;
  }
  os << ')';
}

}  // namespace

std::string print_expr(const ExprP& e) {
  std::ostringstream os;
  printExprTo(os, e);
  return os.str();
}

std::string print_ann(const SpecAnn& a) {
  std::ostringstream os;
  os << "[Spec : " << annKind(a.k) << '(';
  printExprTo(os, a.expr);
  os << ")]";
  return os.str();
}

std::string print_stmt(const Stmt& s, int indent) {
  std::ostringstream os;
  printStmtTo(os, s, indent);
  return os.str();
}

std::string print_model(const AbsModel& m) {
  std::ostringstream os;
  os << "module " << m.moduleName << ";\n\n";
  if (m.hasSpecData) {
    os << "data Spec =\n"
       << "  ObjInv(Bool) | Ensures(Bool) | Requires(Bool) | WhileInv(Bool);\n\n";
  }
  for (auto& f : m.modelFunctions) {
    os << "def Int " << f.name;
    printParamsTo(os, f.params);
    os << " =\n  ";
    printExprTo(os, f.body);
    os << ";\n\n";
  }
  auto printClass = [&](const ClassDecl& c) {
    for (auto& a : c.anns) os << print_ann(a) << '\n';
    os << "class " << c.name;
    if (!c.params.empty()) printParamsTo(os, c.params);
    os << " implements " << c.iface << " {\n";
    for (auto& f : c.fields) {
      os << "  " << typeText(f.type) << ' ' << f.name << " = " << print_expr(f.init) << ";\n";
    }
    for (auto& meth : c.methods) {
      for (auto& a : meth.anns) os << "  " << print_ann(a) << '\n';
      os << "  " << typeText(meth.ret) << ' ' << meth.name;
      printParamsTo(os, meth.params);
      os << "{\n";
      printBodyTo(os, meth.body, 4);
      os << "  }\n";
    }
    os << "}\n";
  };
  // classes directly follow the interface they implement
  for (auto& i : m.interfaces) {
    os << "interface " << i.name << " {\n";
    for (auto& s : i.methods) {
      for (auto& a : s.anns) os << "  " << print_ann(a) << '\n';
      os << "  " << typeText(s.ret) << ' ' << s.name;
      printParamsTo(os, s.params);
      os << ";\n";
    }
    os << "}\n";
    for (auto& c : m.classes)
      if (c.iface == i.name) printClass(c);
    os << '\n';
  }
  for (auto& c : m.classes) {
    if (!m.findInterface(c.iface)) {
      printClass(c);
      os << '\n';
    }
  }
  if (m.mainBlock.empty()) {
    os << "{ }\n";
  } else {
    os << "{\n";
    printBodyTo(os, m.mainBlock, 2);
    os << "}\n";
  }
  return os.str();
}

}  // namespace uvc::abs
