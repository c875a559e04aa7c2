#include <map>
#include <optional>
#include <set>

#include "uvc/abs_ir.hpp"

namespace uvc::abs {

namespace {

// Expression type including the `null` literal, which matches any interface.
struct TypeV {
  bool isNull = false;
  Type t;
  static TypeV null() { return {true, {}}; }
  static TypeV of(Type t) { return {false, std::move(t)}; }
};

bool compatible(const TypeV& a, const TypeV& b) {
  if (a.isNull && b.isNull) return true;
  if (a.isNull) return b.t.k == Type::K::Iface;
  if (b.isNull) return a.t.k == Type::K::Iface;
  return a.t == b.t;
}

class Checker {
public:
  explicit Checker(const AbsModel& m) : m_(m) {}

  std::vector<Diagnostic> run() {
    collectTopLevel();
    for (auto& f : m_.modelFunctions) checkModelFunction(f);
    for (auto& i : m_.interfaces) checkInterface(i);
    for (auto& c : m_.classes) checkClass(c);
    checkMainBlock();
    return diags_;
  }

private:
  void error(const std::string& msg) { diags_.push_back({Severity::Error, {}, msg}); }

  void collectTopLevel() {
    std::set<std::string> inames, cnames, fnames;
    for (auto& i : m_.interfaces)
      if (!inames.insert(i.name).second) error("duplicate interface '" + i.name + "'");
    for (auto& c : m_.classes)
      if (!cnames.insert(c.name).second) error("duplicate class '" + c.name + "'");
    for (size_t fi = 0; fi < m_.modelFunctions.size(); fi++) {
      auto& f = m_.modelFunctions[fi];
      if (!fnames.insert(f.name).second) error("duplicate model function '" + f.name + "'");
      modelFnOrder_[f.name] = fi;
    }
  }

  void checkModelFunction(const ModelFunction& f) {
    // pure Int function over its params; may call itself and earlier defs
    std::map<std::string, Type> scope;
    for (auto& p : f.params) {
      if (p.type.k != Type::K::Int)
        error("model function '" + f.name + "': parameters must be Int");
      scope[p.name] = p.type;
    }
    Ctx ctx;
    ctx.where = "model function '" + f.name + "'";
    ctx.locals = &scope;
    ctx.allowModelCallsUpTo = modelFnOrder_[f.name];
    auto t = typeExpr(f.body, ctx);
    if (t && !(compatible(*t, TypeV::of(Type::Int()))))
      error(ctx.where + ": body must be an Int expression");
  }

  void checkInterface(const InterfaceDecl& i) {
    std::set<std::string> names;
    for (auto& s : i.methods) {
      if (!names.insert(s.name).second)
        error("interface " + i.name + ": duplicate method '" + s.name + "'");
      if (s.ret.k != Type::K::Int && s.ret.k != Type::K::Unit)
        error("interface " + i.name + "." + s.name + ": methods return Int or Unit");
      std::set<std::string> pnames;
      for (auto& p : s.params) {
        if (!pnames.insert(p.name).second)
          error("interface " + i.name + "." + s.name + ": duplicate parameter '" + p.name + "'");
        checkValueType(p.type, i.name + "." + s.name);
      }
      for (auto& a : s.anns) {
        if (a.k == SpecAnn::K::ObjInv || a.k == SpecAnn::K::WhileInv) {
          error("interface " + i.name + "." + s.name + ": only Requires/Ensures allowed here");
          continue;
        }
        checkSigAnn(a, i.name, s);
      }
    }
  }

  // Requires/Ensures on an interface signature: parameters, valueOf on
  // future params, and `result` in Ensures only.
  void checkSigAnn(const SpecAnn& a, const std::string& iname, const MethodSig& s) {
    std::map<std::string, Type> scope;
    for (auto& p : s.params) scope[p.name] = p.type;
    if (a.k == SpecAnn::K::Ensures) {
      if (s.ret.k == Type::K::Int) scope["result"] = Type::Int();
    }
    Ctx ctx;
    ctx.where = iname + "." + s.name + " " + (a.k == SpecAnn::K::Ensures ? "Ensures" : "Requires");
    ctx.locals = &scope;
    ctx.spec = true;
    ctx.allowModelCallsUpTo = m_.modelFunctions.size();
    auto t = typeExpr(a.expr, ctx);
    if (t && !compatible(*t, TypeV::of(Type::Bool())))
      error(ctx.where + ": specification expression must be Bool");
  }

  void checkValueType(const Type& t, const std::string& where) {
    if (t.k == Type::K::Iface && !m_.findInterface(t.iface))
      error(where + ": unknown interface '" + t.iface + "'");
  }

  void checkClass(const ClassDecl& c) {
    const InterfaceDecl* iface = m_.findInterface(c.iface);
    if (!iface) error("class " + c.name + ": implements unknown interface '" + c.iface + "'");

    std::map<std::string, Type> fields;
    for (auto& p : c.params) {
      if (!fields.emplace(p.name, p.type).second)
        error("class " + c.name + ": duplicate class parameter '" + p.name + "'");
      checkValueType(p.type, c.name);
    }
    for (auto& f : c.fields) {
      if (!fields.emplace(f.name, f.type).second)
        error("class " + c.name + ": duplicate field '" + f.name + "'");
      checkValueType(f.type, c.name);
      // field initializers: literals and class parameters only
      std::map<std::string, Type> pscope;
      for (auto& p : c.params) pscope[p.name] = p.type;
      Ctx ctx;
      ctx.where = c.name + " field " + f.name;
      ctx.locals = &pscope;
      ctx.allowModelCallsUpTo = m_.modelFunctions.size();
      auto t = typeExpr(f.init, ctx);
      if (t && !compatible(*t, TypeV::of(f.type)))
        error(ctx.where + ": initializer type mismatch");
    }
    fields_ = &fields;
    className_ = c.name;
    ifaceName_ = c.iface;

    for (auto& a : c.anns) {
      if (a.k == SpecAnn::K::Ensures || a.k == SpecAnn::K::WhileInv) {
        error("class " + c.name + ": only Requires/ObjInv annotations allowed on classes");
        continue;
      }
      // creation condition: class params; ObjInv: fields only
      std::map<std::string, Type> scope;
      for (auto& p : c.params) scope[p.name] = p.type;
      Ctx ctx;
      ctx.where = c.name + (a.k == SpecAnn::K::ObjInv ? " ObjInv" : " creation Requires");
      ctx.locals = a.k == SpecAnn::K::ObjInv ? nullptr : &scope;
      ctx.fields = &fields;
      ctx.spec = true;
      ctx.allowModelCallsUpTo = m_.modelFunctions.size();
      auto t = typeExpr(a.expr, ctx);
      if (t && !compatible(*t, TypeV::of(Type::Bool())))
        error(ctx.where + ": specification expression must be Bool");
    }

    std::set<std::string> mnames;
    std::set<std::string> implemented;
    for (auto& meth : c.methods) {
      if (!mnames.insert(meth.name).second)
        error("class " + c.name + ": duplicate method '" + meth.name + "'");
      if (iface) {
        if (const MethodSig* sig = findSig(*iface, meth.name)) {
          implemented.insert(meth.name);
          bool match = sig->ret == meth.ret && sig->params.size() == meth.params.size();
          for (size_t i = 0; match && i < sig->params.size(); i++)
            match = sig->params[i].type == meth.params[i].type &&
                    sig->params[i].name == meth.params[i].name;
          if (!match)
            error("class " + c.name + "." + meth.name +
                  ": signature differs from interface declaration (incl. parameter names)");
        }
      }
      checkMethod(c, meth);
    }
    if (iface) {
      for (auto& s : iface->methods)
        if (!implemented.count(s.name))
          error("class " + c.name + ": does not implement " + c.iface + "." + s.name);
    }
    fields_ = nullptr;
  }

  void checkMethod(const ClassDecl& c, const MethodImpl& meth) {
    if (meth.ret.k != Type::K::Int && meth.ret.k != Type::K::Unit)
      error("class " + c.name + "." + meth.name + ": methods return Int or Unit");
    std::map<std::string, Type> params;
    for (auto& p : meth.params) {
      if (!params.emplace(p.name, p.type).second)
        error(c.name + "." + meth.name + ": duplicate parameter '" + p.name + "'");
      checkValueType(p.type, c.name + "." + meth.name);
    }
    for (auto& a : meth.anns) {
      if (a.k != SpecAnn::K::Requires && a.k != SpecAnn::K::Ensures) {
        error(c.name + "." + meth.name + ": only Requires/Ensures allowed on methods");
        continue;
      }
      std::map<std::string, Type> scope = params;
      if (a.k == SpecAnn::K::Ensures && meth.ret.k == Type::K::Int) scope["result"] = Type::Int();
      Ctx ctx;
      ctx.where = c.name + "." + meth.name + " annotation";
      ctx.locals = &scope;
      ctx.fields = fields_;
      ctx.spec = true;
      ctx.allowModelCallsUpTo = m_.modelFunctions.size();
      auto t = typeExpr(a.expr, ctx);
      if (t && !compatible(*t, TypeV::of(Type::Bool())))
        error(ctx.where + ": specification expression must be Bool");
    }

    ScopeStack scopes;
    scopes.push_back(params);
    where_ = c.name + "." + meth.name;
    retType_ = meth.ret;
    inMethod_ = true;
    checkBody(meth.body, scopes);
    inMethod_ = false;
    if (meth.ret.k == Type::K::Int && !endsInReturn(meth.body))
      error(where_ + ": an Int method must end in a return on every path");
  }

  static bool endsInReturn(const std::vector<Stmt>& body) {
    if (body.empty()) return false;
    const Stmt& last = body.back();
    if (last.k == Stmt::K::Return) return true;
    if (last.k == Stmt::K::If && !last.body2.empty())
      return endsInReturn(last.body1) && endsInReturn(last.body2);
    return false;
  }

  using ScopeStack = std::vector<std::map<std::string, Type>>;

  std::optional<Type> lookupLocal(const ScopeStack& scopes, const std::string& n) {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->find(n);
      if (f != it->end()) return f->second;
    }
    return std::nullopt;
  }

  void declare(ScopeStack& scopes, const std::string& n, const Type& t) {
    if (scopes.back().count(n)) {
      error(where_ + ": redeclaration of '" + n + "'");
      return;
    }
    scopes.back()[n] = t;
  }

  void checkBody(const std::vector<Stmt>& body, ScopeStack& scopes) {
    scopes.push_back({});
    for (auto& s : body) checkStmt(s, scopes);
    scopes.pop_back();
  }

  // Types an expression appearing in method code (not a spec expression).
  std::optional<TypeV> codeExpr(const ExprP& e, ScopeStack& scopes) {
    std::map<std::string, Type> flat;
    for (auto& sc : scopes)
      for (auto& [k, v] : sc) flat[k] = v;
    Ctx ctx;
    ctx.where = where_;
    ctx.locals = &flat;
    ctx.fields = fields_;
    ctx.thisIface = ifaceName_;
    ctx.allowModelCallsUpTo = m_.modelFunctions.size();
    return typeExpr(e, ctx);
  }

  void expectType(const ExprP& e, ScopeStack& scopes, const Type& want, const std::string& what) {
    auto t = codeExpr(e, scopes);
    if (t && !compatible(*t, TypeV::of(want))) error(where_ + ": " + what + " type mismatch");
  }

  const MethodSig* resolveCallSig(const ExprP& callee, const std::string& method,
                                  ScopeStack& scopes) {
    auto ct = codeExpr(callee, scopes);
    if (!ct) return nullptr;
    if (ct->isNull || ct->t.k != Type::K::Iface) {
      error(where_ + ": call target is not an object reference");
      return nullptr;
    }
    const InterfaceDecl* iface = m_.findInterface(ct->t.iface);
    if (!iface) return nullptr;
    const MethodSig* sig = findSig(*iface, method);
    if (!sig) error(where_ + ": interface " + ct->t.iface + " has no method '" + method + "'");
    return sig;
  }

  void checkCallArgs(const MethodSig* sig, const std::vector<ExprP>& args, ScopeStack& scopes) {
    if (!sig) return;
    if (sig->params.size() != args.size()) {
      error(where_ + ": call to " + sig->name + " has wrong arity");
      return;
    }
    for (size_t i = 0; i < args.size(); i++)
      expectType(args[i], scopes, sig->params[i].type, "argument " + std::to_string(i + 1));
  }

  void checkStmt(const Stmt& s, ScopeStack& scopes) {
    switch (s.k) {
      case Stmt::K::VarDecl:
        expectType(s.rhs, scopes, *s.declType, "initializer");
        declare(scopes, s.target, *s.declType);
        break;
      case Stmt::K::Assign: {
        auto lt = lookupLocal(scopes, s.target);
        if (!lt && fields_ && fields_->count(s.target)) lt = fields_->at(s.target);
        if (!lt) {
          error(where_ + ": assignment to unknown variable '" + s.target + "'");
          break;
        }
        expectType(s.rhs, scopes, *lt, "assignment");
        break;
      }
      case Stmt::K::FieldAssign: {
        if (!fields_ || !fields_->count(s.target)) {
          error(where_ + ": unknown field '" + s.target + "'");
          break;
        }
        expectType(s.rhs, scopes, fields_->at(s.target), "field assignment");
        break;
      }
      case Stmt::K::AsyncCall: {
        const MethodSig* sig = resolveCallSig(s.callee, s.method, scopes);
        checkCallArgs(sig, s.args, scopes);
        if (sig) {
          Type futT = sig->ret.k == Type::K::Int ? Type::FutInt() : Type::FutUnit();
          if (s.declType) {
            if (*s.declType != futT) error(where_ + ": future type mismatch");
            declare(scopes, s.target, *s.declType);
          } else {
            auto lt = lookupLocal(scopes, s.target);
            if (!lt) error(where_ + ": assignment to unknown variable '" + s.target + "'");
            else if (*lt != futT) error(where_ + ": future type mismatch");
          }
        }
        break;
      }
      case Stmt::K::GetAssign: {
        auto ft = codeExpr(s.rhs, scopes);
        if (ft && (ft->isNull || !ft->t.isFut())) {
          error(where_ + ": get on non-future");
          break;
        }
        Type vt = ft ? ft->t.futInner() : Type::Int();
        if (s.declType) {
          if (*s.declType != vt) error(where_ + ": get result type mismatch");
          declare(scopes, s.target, *s.declType);
        } else {
          auto lt = lookupLocal(scopes, s.target);
          if (!lt && fields_ && fields_->count(s.target)) lt = fields_->at(s.target);
          if (!lt) error(where_ + ": assignment to unknown variable '" + s.target + "'");
          else if (*lt != vt) error(where_ + ": get result type mismatch");
        }
        break;
      }
      case Stmt::K::GetBare: {
        auto ft = codeExpr(s.rhs, scopes);
        if (ft && (ft->isNull || !ft->t.isFut())) error(where_ + ": get on non-future");
        break;
      }
      case Stmt::K::SyncCall:
      case Stmt::K::SyncCallBare: {
        const MethodSig* sig = resolveCallSig(s.callee, s.method, scopes);
        checkCallArgs(sig, s.args, scopes);
        if (s.k == Stmt::K::SyncCall && sig) {
          if (s.declType) {
            if (*s.declType != sig->ret) error(where_ + ": call result type mismatch");
            declare(scopes, s.target, *s.declType);
          }
        }
        break;
      }
      case Stmt::K::NewAssign: {
        const ClassDecl* cls = m_.findClass(s.method);
        if (!cls) {
          error(where_ + ": unknown class '" + s.method + "'");
          break;
        }
        if (cls->params.size() != s.args.size()) {
          error(where_ + ": wrong number of arguments for new " + s.method);
        } else {
          for (size_t i = 0; i < s.args.size(); i++)
            expectType(s.args[i], scopes, cls->params[i].type, "constructor argument");
        }
        Type t = Type::Iface(cls->iface);
        if (s.declType) {
          if (*s.declType != t) error(where_ + ": new result must have type " + cls->iface);
          declare(scopes, s.target, *s.declType);
        } else {
          auto lt = lookupLocal(scopes, s.target);
          if (!lt) error(where_ + ": assignment to unknown variable '" + s.target + "'");
          else if (*lt != t) error(where_ + ": new result must have type " + cls->iface);
        }
        break;
      }
      case Stmt::K::Await: {
        if (s.guard.empty()) error(where_ + ": empty await guard");
        for (auto& g : s.guard) {
          auto t = codeExpr(g, scopes);
          if (t && (t->isNull || !t->t.isFut())) error(where_ + ": await guard over non-future");
        }
        break;
      }
      case Stmt::K::If:
        expectType(s.cond, scopes, Type::Bool(), "condition");
        checkBody(s.body1, scopes);
        checkBody(s.body2, scopes);
        break;
      case Stmt::K::While:
        expectType(s.cond, scopes, Type::Bool(), "condition");
        if (s.whileInv) {
          std::map<std::string, Type> flat;
          for (auto& sc : scopes)
            for (auto& [k, v] : sc) flat[k] = v;
          Ctx ctx;
          ctx.where = where_ + " WhileInv";
          ctx.locals = &flat;
          ctx.fields = fields_;
          ctx.spec = true;
          ctx.allowModelCallsUpTo = m_.modelFunctions.size();
          auto t = typeExpr(s.whileInv->expr, ctx);
          if (t && !compatible(*t, TypeV::of(Type::Bool())))
            error(ctx.where + ": specification expression must be Bool");
        }
        checkBody(s.body1, scopes);
        break;
      case Stmt::K::Return: {
        if (!inMethod_) {
          error("main block: return is not allowed");
          break;
        }
        expectType(s.rhs, scopes, retType_, "return value");
        break;
      }
      case Stmt::K::Skip:
        break;
    }
  }

  void checkMainBlock() {
    where_ = "main block";
    retType_ = Type::Unit();
    fields_ = nullptr;
    ifaceName_.clear();
    ScopeStack scopes;
    scopes.push_back({});
    inMethod_ = false;
    checkBody(m_.mainBlock, scopes);
  }

  // Context for typing one expression.
  struct Ctx {
    std::string where;
    const std::map<std::string, Type>* locals = nullptr;
    const std::map<std::string, Type>* fields = nullptr;
    std::string thisIface;  // non-empty inside method code
    bool spec = false;      // valueOf permitted
    size_t allowModelCallsUpTo = 0;
  };

  std::optional<TypeV> typeExpr(const ExprP& e, const Ctx& ctx) {
    if (!e) {
      error(ctx.where + ": missing expression");
      return std::nullopt;
    }
    switch (e->k) {
      case Expr::K::IntLit: return TypeV::of(Type::Int());
      case Expr::K::BoolLit: return TypeV::of(Type::Bool());
      case Expr::K::UnitLit: return TypeV::of(Type::Unit());
      case Expr::K::NullLit: return TypeV::null();
      case Expr::K::Var: {
        if (ctx.locals) {
          auto f = ctx.locals->find(e->name);
          if (f != ctx.locals->end()) return TypeV::of(f->second);
        }
        if (ctx.fields) {
          auto f = ctx.fields->find(e->name);
          if (f != ctx.fields->end()) return TypeV::of(f->second);
        }
        error(ctx.where + ": unknown identifier '" + e->name + "'");
        return std::nullopt;
      }
      case Expr::K::FieldRead: {
        if (!ctx.fields) {
          error(ctx.where + ": 'this." + e->name + "' used where no fields are in scope");
          return std::nullopt;
        }
        auto f = ctx.fields->find(e->name);
        if (f == ctx.fields->end()) {
          error(ctx.where + ": unknown field '" + e->name + "'");
          return std::nullopt;
        }
        return TypeV::of(f->second);
      }
      case Expr::K::This: {
        if (ctx.thisIface.empty()) {
          error(ctx.where + ": 'this' used outside a class");
          return std::nullopt;
        }
        return TypeV::of(Type::Iface(ctx.thisIface));
      }
      case Expr::K::Binary: {
        auto l = typeExpr(e->args[0], ctx);
        auto r = typeExpr(e->args[1], ctx);
        if (!l || !r) return std::nullopt;
        switch (e->op) {
          case BinOp::Add:
          case BinOp::Sub:
          case BinOp::Mul:
          case BinOp::Div:
            if (!compatible(*l, TypeV::of(Type::Int())) || !compatible(*r, TypeV::of(Type::Int())))
              error(ctx.where + ": arithmetic over non-Int operands");
            return TypeV::of(Type::Int());
          case BinOp::Lt:
          case BinOp::Gt:
          case BinOp::Le:
          case BinOp::Ge:
            if (!compatible(*l, TypeV::of(Type::Int())) || !compatible(*r, TypeV::of(Type::Int())))
              error(ctx.where + ": comparison over non-Int operands");
            return TypeV::of(Type::Bool());
          case BinOp::Eq:
          case BinOp::Ne:
            if (!compatible(*l, *r)) error(ctx.where + ": equality over incompatible types");
            return TypeV::of(Type::Bool());
          case BinOp::And:
          case BinOp::Or:
            if (!compatible(*l, TypeV::of(Type::Bool())) ||
                !compatible(*r, TypeV::of(Type::Bool())))
              error(ctx.where + ": boolean operator over non-Bool operands");
            return TypeV::of(Type::Bool());
        }
        return std::nullopt;
      }
      case Expr::K::Ite: {
        auto c = typeExpr(e->args[0], ctx);
        if (c && !compatible(*c, TypeV::of(Type::Bool())))
          error(ctx.where + ": if-then-else condition must be Bool");
        auto t = typeExpr(e->args[1], ctx);
        auto f = typeExpr(e->args[2], ctx);
        if (t && f && !compatible(*t, *f)) error(ctx.where + ": if-then-else branches disagree");
        return t;
      }
      case Expr::K::FnCall: {
        const ModelFunction* fn = m_.findModelFunction(e->name);
        if (!fn) {
          error(ctx.where + ": unknown function '" + e->name + "'");
          return std::nullopt;
        }
        auto it = modelFnOrder_.find(e->name);
        if (it != modelFnOrder_.end() && it->second > ctx.allowModelCallsUpTo)
          error(ctx.where + ": model functions may only call themselves or earlier definitions");
        if (fn->params.size() != e->args.size()) {
          error(ctx.where + ": wrong arity for '" + e->name + "'");
        } else {
          for (auto& a : e->args) {
            auto t = typeExpr(a, ctx);
            if (t && !compatible(*t, TypeV::of(Type::Int())))
              error(ctx.where + ": model function arguments must be Int");
          }
        }
        return TypeV::of(Type::Int());
      }
      case Expr::K::ValueOf: {
        if (!ctx.spec) {
          error(ctx.where + ": valueOf is only allowed in specification expressions");
          return std::nullopt;
        }
        std::optional<Type> t;
        if (ctx.locals) {
          auto f = ctx.locals->find(e->name);
          if (f != ctx.locals->end()) t = f->second;
        }
        if (!t && ctx.fields) {
          auto f = ctx.fields->find(e->name);
          if (f != ctx.fields->end()) t = f->second;
        }
        if (!t) {
          error(ctx.where + ": unknown identifier '" + e->name + "'");
          return std::nullopt;
        }
        if (!t->isFut()) {
          error(ctx.where + ": valueOf applies only to future-typed names");
          return std::nullopt;
        }
        return TypeV::of(t->futInner());
      }
    }
    return std::nullopt;
  }

  const AbsModel& m_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, size_t> modelFnOrder_;
  const std::map<std::string, Type>* fields_ = nullptr;
  std::string className_, ifaceName_, where_;
  Type retType_;
  bool inMethod_ = false;
};

}  // namespace

std::vector<Diagnostic> typecheck(const AbsModel& m) { return Checker(m).run(); }

}  // namespace uvc::abs
