#include <map>
#include <regex>
#include <sstream>

#include "uvc/abs_ir.hpp"

namespace uvc::abs {

namespace {

bool renameable(const std::string& n) {
  static const std::regex re("^(tmp|sc)_[0-9]+$");
  return std::regex_match(n, re);
}

// Structural comparison where generated tmp_N / sc_N names only need a
// consistent bijection per class; everything else must match exactly.
struct Cmp {
  std::map<std::string, std::string> fwd, bwd;
  std::string why;

  bool fail(const std::string& msg) {
    if (why.empty()) why = msg;
    return false;
  }

  bool names(const std::string& a, const std::string& b, const std::string& where) {
    if (renameable(a) && renameable(b)) {
      auto fi = fwd.find(a);
      auto bi = bwd.find(b);
      if (fi == fwd.end() && bi == bwd.end()) {
        fwd[a] = b;
        bwd[b] = a;
        return true;
      }
      if (fi != fwd.end() && fi->second == b && bi != bwd.end() && bi->second == a) return true;
      return fail(where + ": inconsistent temp renaming " + a + " vs " + b);
    }
    if (a != b) return fail(where + ": name mismatch '" + a + "' vs '" + b + "'");
    return true;
  }

  bool exprs(const ExprP& a, const ExprP& b, const std::string& where) {
    if (!a || !b) return (!a && !b) ? true : fail(where + ": missing expression");
    if (a->k != b->k) return fail(where + ": expression kind mismatch");
    switch (a->k) {
      case Expr::K::IntLit:
        return a->iv == b->iv ? true : fail(where + ": literal mismatch");
      case Expr::K::BoolLit:
        return a->bv == b->bv ? true : fail(where + ": literal mismatch");
      case Expr::K::UnitLit:
      case Expr::K::NullLit:
      case Expr::K::This:
        return true;
      case Expr::K::Var:
      case Expr::K::FieldRead:
      case Expr::K::ValueOf:
        return names(a->name, b->name, where);
      case Expr::K::FnCall:
        if (a->name != b->name) return fail(where + ": function name mismatch");
        break;
      case Expr::K::Binary:
        if (a->op != b->op) return fail(where + ": operator mismatch");
        break;
      case Expr::K::Ite:
        break;
    }
    if (a->args.size() != b->args.size()) return fail(where + ": arity mismatch");
    for (size_t i = 0; i < a->args.size(); i++)
      if (!exprs(a->args[i], b->args[i], where)) return false;
    return true;
  }

  bool anns(const std::vector<SpecAnn>& a, const std::vector<SpecAnn>& b,
            const std::string& where) {
    if (a.size() != b.size()) return fail(where + ": annotation count mismatch");
    std::vector<bool> used(b.size(), false);
    for (auto& x : a) {
      bool found = false;
      for (size_t j = 0; j < b.size(); j++) {
        if (used[j] || b[j].k != x.k) continue;
        Cmp probe = *this;  // annotations carry no temp names, so no map leak
        if (probe.exprs(x.expr, b[j].expr, where)) {
          used[j] = true;
          found = true;
          break;
        }
      }
      if (!found) return fail(where + ": annotation " + print_ann(x) + " unmatched");
    }
    return true;
  }

  bool stmts(const std::vector<Stmt>& a, const std::vector<Stmt>& b, const std::string& where) {
    if (a.size() != b.size()) return fail(where + ": statement count mismatch");
    for (size_t i = 0; i < a.size(); i++) {
      const Stmt& x = a[i];
      const Stmt& y = b[i];
      std::string at = where + " stmt " + std::to_string(i + 1);
      if (x.k != y.k) return fail(at + ": statement kind mismatch");
      if (x.declType.has_value() != y.declType.has_value() ||
          (x.declType && *x.declType != *y.declType))
        return fail(at + ": declaration type mismatch");
      if (!x.target.empty() || !y.target.empty())
        if (!names(x.target, y.target, at)) return false;
      if (x.method != y.method) return fail(at + ": method/class name mismatch");
      if (!exprs(x.rhs, y.rhs, at) || !exprs(x.callee, y.callee, at) || !exprs(x.cond, y.cond, at))
        return false;
      if (x.args.size() != y.args.size() || x.guard.size() != y.guard.size())
        return fail(at + ": argument/guard count mismatch");
      for (size_t j = 0; j < x.args.size(); j++)
        if (!exprs(x.args[j], y.args[j], at)) return false;
      for (size_t j = 0; j < x.guard.size(); j++)
        if (!exprs(x.guard[j], y.guard[j], at)) return false;
      if (x.whileInv.has_value() != y.whileInv.has_value())
        return fail(at + ": loop invariant mismatch");
      if (x.whileInv && !exprs(x.whileInv->expr, y.whileInv->expr, at)) return false;
      if (!stmts(x.body1, y.body1, at) || !stmts(x.body2, y.body2, at)) return false;
    }
    return true;
  }

  bool params(const std::vector<Param>& a, const std::vector<Param>& b, const std::string& where) {
    if (a.size() != b.size()) return fail(where + ": parameter count mismatch");
    for (size_t i = 0; i < a.size(); i++) {
      if (a[i].type != b[i].type) return fail(where + ": parameter type mismatch");
      if (a[i].name != b[i].name) return fail(where + ": parameter name mismatch");
    }
    return true;
  }
};

}  // namespace

bool alpha_equivalent(const AbsModel& a, const AbsModel& b, std::string* why) {
  Cmp cmp;
  auto done = [&](bool ok) {
    if (!ok && why) *why = cmp.why;
    return ok;
  };

  if (a.hasSpecData != b.hasSpecData) return done(cmp.fail("Spec data declaration mismatch"));

  if (a.modelFunctions.size() != b.modelFunctions.size())
    return done(cmp.fail("model function count mismatch"));
  for (auto& f : a.modelFunctions) {
    const ModelFunction* g = b.findModelFunction(f.name);
    if (!g) return done(cmp.fail("model function '" + f.name + "' missing"));
    if (!cmp.params(f.params, g->params, "def " + f.name)) return done(false);
    if (!cmp.exprs(f.body, g->body, "def " + f.name)) return done(false);
  }

  if (a.interfaces.size() != b.interfaces.size())
    return done(cmp.fail("interface count mismatch"));
  for (auto& i : a.interfaces) {
    const InterfaceDecl* j = b.findInterface(i.name);
    if (!j) return done(cmp.fail("interface '" + i.name + "' missing"));
    if (i.methods.size() != j->methods.size())
      return done(cmp.fail("interface " + i.name + ": method count mismatch"));
    for (auto& s : i.methods) {
      const MethodSig* t = findSig(*j, s.name);
      if (!t) return done(cmp.fail("interface " + i.name + ": method '" + s.name + "' missing"));
      std::string where = i.name + "." + s.name;
      if (s.ret != t->ret) return done(cmp.fail(where + ": return type mismatch"));
      if (!cmp.params(s.params, t->params, where)) return done(false);
      if (!cmp.anns(s.anns, t->anns, where)) return done(false);
    }
  }

  if (a.classes.size() != b.classes.size()) return done(cmp.fail("class count mismatch"));
  for (auto& c : a.classes) {
    const ClassDecl* d = b.findClass(c.name);
    if (!d) return done(cmp.fail("class '" + c.name + "' missing"));
    std::string where = "class " + c.name;
    if (c.iface != d->iface) return done(cmp.fail(where + ": interface mismatch"));
    if (!cmp.params(c.params, d->params, where)) return done(false);
    if (!cmp.anns(c.anns, d->anns, where)) return done(false);

    // temp renaming is scoped to one class (sc_N fields are class-wide)
    Cmp classCmp;
    classCmp.why = cmp.why;
    if (c.fields.size() != d->fields.size()) return done(cmp.fail(where + ": field count mismatch"));
    for (size_t i = 0; i < c.fields.size(); i++) {
      if (!classCmp.names(c.fields[i].name, d->fields[i].name, where)) {
        cmp.why = classCmp.why;
        return done(false);
      }
      if (c.fields[i].type != d->fields[i].type) return done(cmp.fail(where + ": field type mismatch"));
      if (!classCmp.exprs(c.fields[i].init, d->fields[i].init, where)) {
        cmp.why = classCmp.why;
        return done(false);
      }
    }
    if (c.methods.size() != d->methods.size())
      return done(cmp.fail(where + ": method count mismatch"));
    for (auto& mth : c.methods) {
      const MethodImpl* other = findMethod(*d, mth.name);
      if (!other) return done(cmp.fail(where + ": method '" + mth.name + "' missing"));
      std::string mw = c.name + "." + mth.name;
      if (mth.ret != other->ret) return done(cmp.fail(mw + ": return type mismatch"));
      bool ok = classCmp.params(mth.params, other->params, mw) &&
                classCmp.anns(mth.anns, other->anns, mw) &&
                classCmp.stmts(mth.body, other->body, mw);
      if (!ok) {
        cmp.why = classCmp.why;
        return done(false);
      }
    }
  }

  if (!cmp.stmts(a.mainBlock, b.mainBlock, "main block")) return done(false);
  return done(true);
}

}  // namespace uvc::abs
