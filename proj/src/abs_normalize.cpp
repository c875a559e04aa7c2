#include <map>
#include <regex>

#include "uvc/abs_ir.hpp"

namespace uvc::abs {

namespace {

// Fresh names continue after the largest tmp_N already present anywhere in
// the model, so repeated normalization never renames.
class FreshNames {
public:
  explicit FreshNames(const AbsModel& m) {
    static const std::regex tmpRe("^tmp_([0-9]+)$");
    auto scanName = [&](const std::string& n) {
      std::smatch sm;
      if (std::regex_match(n, sm, tmpRe)) next_ = std::max(next_, std::stoll(sm[1]) + 1);
    };
    auto scanExpr = [&](auto&& self, const ExprP& e) -> void {
      if (!e) return;
      if (e->k == Expr::K::Var || e->k == Expr::K::FieldRead || e->k == Expr::K::ValueOf)
        scanName(e->name);
      for (auto& a : e->args) self(self, a);
    };
    auto scanStmts = [&](auto&& self, const std::vector<Stmt>& body) -> void {
      for (auto& s : body) {
        scanName(s.target);
        scanExpr(scanExpr, s.rhs);
        scanExpr(scanExpr, s.callee);
        scanExpr(scanExpr, s.cond);
        for (auto& a : s.args) scanExpr(scanExpr, a);
        for (auto& g : s.guard) scanExpr(scanExpr, g);
        self(self, s.body1);
        self(self, s.body2);
      }
    };
    for (auto& c : m.classes)
      for (auto& meth : c.methods) scanStmts(scanStmts, meth.body);
    scanStmts(scanStmts, m.mainBlock);
  }

  std::string next() { return "tmp_" + std::to_string(next_++); }

private:
  long long next_ = 0;
};

class Normalizer {
public:
  explicit Normalizer(const AbsModel& m) : model_(m), fresh_(m) {}

  AbsModel run() {
    AbsModel out = model_;
    for (auto& c : out.classes) {
      fields_.clear();
      ifaceOfThis_ = c.iface;
      for (auto& p : c.params) fields_[p.name] = p.type;
      for (auto& f : c.fields) fields_[f.name] = f.type;
      for (auto& meth : c.methods) {
        scopes_.clear();
        scopes_.push_back({});
        for (auto& p : meth.params) scopes_.back()[p.name] = p.type;
        meth.body = rewriteBody(meth.body);
        if (meth.ret.k == Type::K::Unit &&
            (meth.body.empty() || meth.body.back().k != Stmt::K::Return)) {
          Stmt ret;
          ret.k = Stmt::K::Return;
          ret.rhs = Expr::mkUnit();
          meth.body.push_back(std::move(ret));
        }
        moveParamRequires(out, c, meth);
      }
    }
    fields_.clear();
    scopes_.clear();
    scopes_.push_back({});
    out.mainBlock = rewriteBody(out.mainBlock);
    return out;
  }

private:
  // A heap-level Requires that mentions only method parameters becomes a
  // parameter precondition on the interface signature.
  void moveParamRequires(AbsModel& out, const ClassDecl& c, MethodImpl& meth) {
    std::vector<SpecAnn> kept;
    for (auto& a : meth.anns) {
      if (a.k == SpecAnn::K::Requires && mentionsOnlyParams(a.expr, meth)) {
        for (auto& i : out.interfaces) {
          if (i.name != c.iface) continue;
          for (auto& sig : i.methods)
            if (sig.name == meth.name) sig.anns.push_back(a);
        }
      } else {
        kept.push_back(a);
      }
    }
    meth.anns = std::move(kept);
  }

  bool mentionsOnlyParams(const ExprP& e, const MethodImpl& meth) {
    if (!e) return true;
    auto isParam = [&](const std::string& n) {
      for (auto& p : meth.params)
        if (p.name == n) return true;
      return false;
    };
    switch (e->k) {
      case Expr::K::Var:
      case Expr::K::ValueOf:
        if (!isParam(e->name)) return false;
        break;
      case Expr::K::FieldRead:
      case Expr::K::This:
        return false;
      default:
        break;
    }
    for (auto& a : e->args)
      if (!mentionsOnlyParams(a, meth)) return false;
    return true;
  }

  Type typeOfVar(const std::string& n) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(n);
      if (f != it->end()) return f->second;
    }
    auto f = fields_.find(n);
    if (f != fields_.end()) return f->second;
    return Type::Int();
  }

  Type typeOfExpr(const ExprP& e) const {
    if (e->k == Expr::K::Var) return typeOfVar(e->name);
    if (e->k == Expr::K::FieldRead) {
      auto f = fields_.find(e->name);
      return f != fields_.end() ? f->second : Type::Int();
    }
    return Type::Int();
  }

  const MethodSig* sigOfCall(const ExprP& callee, const std::string& method) const {
    Type t = Type::Int();
    if (callee->k == Expr::K::This)
      t = Type::Iface(ifaceOfThis_);
    else
      t = typeOfExpr(callee);
    if (t.k != Type::K::Iface) return nullptr;
    const InterfaceDecl* i = model_.findInterface(t.iface);
    return i ? findSig(*i, method) : nullptr;
  }

  std::vector<Stmt> rewriteBody(const std::vector<Stmt>& body) {
    scopes_.push_back({});
    std::vector<Stmt> out;
    for (auto& s : body) rewriteStmt(s, out);
    scopes_.pop_back();
    return out;
  }

  void declareTarget(const Stmt& s) {
    if (s.declType) scopes_.back()[s.target] = *s.declType;
  }

  void rewriteStmt(const Stmt& s, std::vector<Stmt>& out) {
    switch (s.k) {
      case Stmt::K::SyncCall:
      case Stmt::K::SyncCallBare: {
        const MethodSig* sig = sigOfCall(s.callee, s.method);
        Type ret = sig ? sig->ret : Type::Int();
        Stmt call;
        call.k = Stmt::K::AsyncCall;
        call.declType = ret.k == Type::K::Int ? Type::FutInt() : Type::FutUnit();
        call.target = fresh_.next();
        call.callee = s.callee;
        call.method = s.method;
        call.args = s.args;
        declareTarget(call);
        ExprP fut = Expr::mkVar(call.target);
        out.push_back(std::move(call));
        Stmt get;
        get.k = Stmt::K::GetAssign;
        get.rhs = fut;
        if (s.k == Stmt::K::SyncCall) {
          get.declType = s.declType;
          get.target = s.target;
        } else {
          get.declType = ret;
          get.target = fresh_.next();
        }
        declareTarget(get);
        out.push_back(std::move(get));
        break;
      }
      case Stmt::K::GetBare: {
        Stmt get;
        get.k = Stmt::K::GetAssign;
        get.rhs = s.rhs;
        Type ft = typeOfExpr(s.rhs);
        get.declType = ft.isFut() ? ft.futInner() : Type::Unit();
        get.target = fresh_.next();
        declareTarget(get);
        out.push_back(std::move(get));
        break;
      }
      case Stmt::K::Await: {
        // every poll must be a plain variable; hoist anything else
        Stmt aw = s;
        for (auto& g : aw.guard) {
          if (g->k == Expr::K::Var) continue;
          Stmt hoist;
          hoist.k = Stmt::K::Assign;
          hoist.declType = typeOfExpr(g);
          hoist.k = Stmt::K::VarDecl;
          hoist.target = fresh_.next();
          hoist.rhs = g;
          declareTarget(hoist);
          g = Expr::mkVar(hoist.target);
          out.push_back(std::move(hoist));
        }
        out.push_back(std::move(aw));
        break;
      }
      case Stmt::K::If: {
        Stmt n = s;
        n.body1 = rewriteBody(s.body1);
        n.body2 = rewriteBody(s.body2);
        out.push_back(std::move(n));
        break;
      }
      case Stmt::K::While: {
        Stmt n = s;
        n.body1 = rewriteBody(s.body1);
        out.push_back(std::move(n));
        break;
      }
      default:
        declareTarget(s);
        out.push_back(s);
        break;
    }
  }

  const AbsModel& model_;
  FreshNames fresh_;
  std::map<std::string, Type> fields_;
  std::vector<std::map<std::string, Type>> scopes_;
  std::string ifaceOfThis_;
};

}  // namespace

AbsModel normalize(const AbsModel& m) {
  Normalizer n(m);
  return n.run();
}

}  // namespace uvc::abs
