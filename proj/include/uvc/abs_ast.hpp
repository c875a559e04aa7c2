#pragma once

// AST for the active-object modeling language that extracted models are
// written in: interfaces, classes with futures and cooperative scheduling,
// and [Spec : ...] contract annotations.

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace uvc::abs {

struct Type {
  enum class K { Int, Bool, Unit, FutInt, FutUnit, Iface };
  K k = K::Int;
  std::string iface;  // set when k == Iface

  static Type Int() { return {K::Int, {}}; }
  static Type Bool() { return {K::Bool, {}}; }
  static Type Unit() { return {K::Unit, {}}; }
  static Type FutInt() { return {K::FutInt, {}}; }
  static Type FutUnit() { return {K::FutUnit, {}}; }
  static Type Iface(std::string n) { return {K::Iface, std::move(n)}; }

  bool isFut() const { return k == K::FutInt || k == K::FutUnit; }
  Type futInner() const { return k == K::FutInt ? Int() : Unit(); }
  bool operator==(const Type& o) const { return k == o.k && iface == o.iface; }
  bool operator!=(const Type& o) const { return !(*this == o); }
};

enum class BinOp { Add, Sub, Mul, Div, Lt, Gt, Le, Ge, Eq, Ne, And, Or };

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  enum class K {
    IntLit,    // iv
    BoolLit,   // bv
    UnitLit,
    NullLit,
    Var,       // name (local, parameter, or not-yet-resolved field)
    FieldRead, // name, explicit this.name
    This,
    Binary,    // op, args[0], args[1]
    Ite,       // args[0] cond, args[1] then, args[2] else
    FnCall,    // name, args (pure model function application)
    ValueOf    // name (future-typed variable, spec expressions only)
  };
  K k = K::IntLit;
  long long iv = 0;
  bool bv = false;
  std::string name;
  BinOp op = BinOp::Add;
  std::vector<ExprP> args;

  static ExprP mkInt(long long v) {
    auto e = std::make_shared<Expr>();
    e->k = K::IntLit;
    e->iv = v;
    return e;
  }
  static ExprP mkBool(bool v) {
    auto e = std::make_shared<Expr>();
    e->k = K::BoolLit;
    e->bv = v;
    return e;
  }
  static ExprP mkUnit() {
    auto e = std::make_shared<Expr>();
    e->k = K::UnitLit;
    return e;
  }
  static ExprP mkNull() {
    auto e = std::make_shared<Expr>();
    e->k = K::NullLit;
    return e;
  }
  static ExprP mkVar(std::string n) {
    auto e = std::make_shared<Expr>();
    e->k = K::Var;
    e->name = std::move(n);
    return e;
  }
  static ExprP mkField(std::string n) {
    auto e = std::make_shared<Expr>();
    e->k = K::FieldRead;
    e->name = std::move(n);
    return e;
  }
  static ExprP mkThis() {
    auto e = std::make_shared<Expr>();
    e->k = K::This;
    return e;
  }
  static ExprP mkBin(BinOp op, ExprP l, ExprP r) {
    auto e = std::make_shared<Expr>();
    e->k = K::Binary;
    e->op = op;
    e->args = {std::move(l), std::move(r)};
    return e;
  }
  static ExprP mkIte(ExprP c, ExprP t, ExprP f) {
    auto e = std::make_shared<Expr>();
    e->k = K::Ite;
    e->args = {std::move(c), std::move(t), std::move(f)};
    return e;
  }
  static ExprP mkCall(std::string fn, std::vector<ExprP> as) {
    auto e = std::make_shared<Expr>();
    e->k = K::FnCall;
    e->name = std::move(fn);
    e->args = std::move(as);
    return e;
  }
  static ExprP mkValueOf(std::string n) {
    auto e = std::make_shared<Expr>();
    e->k = K::ValueOf;
    e->name = std::move(n);
    return e;
  }
};

struct SpecAnn {
  enum class K { ObjInv, Ensures, Requires, WhileInv };
  K k = K::Ensures;
  ExprP expr;
};

struct Stmt {
  enum class K {
    VarDecl,    // declType target = rhs;
    Assign,     // target = rhs;            (local)
    FieldAssign,// this.target = rhs;
    AsyncCall,  // [declType] target = callee!method(args);
    GetAssign,  // [declType] target = rhs.get;   rhs is the future expr
    GetBare,    // rhs.get;                 (pre-normalization only)
    SyncCall,   // [declType] target = callee.method(args);  (sugar)
    SyncCallBare,// callee.method(args);    (sugar)
    NewAssign,  // [declType] target = new method(args);  method holds class name
    Await,      // await guard;
    If,         // if (cond) { body1 } else { body2 }
    While,      // while (cond) { body1 }   optional whileInv
    Return,     // return rhs;
    Skip
  };
  K k = K::Skip;
  std::optional<Type> declType;  // statement also declares target
  std::string target;
  ExprP rhs;
  ExprP callee;
  std::string method;            // method name, or class name for NewAssign
  std::vector<ExprP> args;
  std::vector<ExprP> guard;      // Await: conjunction of polled futures
  ExprP cond;
  std::vector<Stmt> body1, body2;
  std::optional<SpecAnn> whileInv;
};

struct Param {
  std::string name;
  Type type;
};

struct MethodSig {
  std::string name;
  Type ret = Type::Int();
  std::vector<Param> params;
  std::vector<SpecAnn> anns;  // Requires / Ensures
};

struct InterfaceDecl {
  std::string name;
  std::vector<MethodSig> methods;
};

struct FieldDecl {
  std::string name;
  Type type;
  ExprP init;
};

struct MethodImpl {
  std::string name;
  Type ret = Type::Int();
  std::vector<Param> params;
  std::vector<SpecAnn> anns;  // method-level (heap) Requires / Ensures
  std::vector<Stmt> body;
};

struct ClassDecl {
  std::string name;
  std::vector<Param> params;  // class parameters, become fields
  std::string iface;          // the one interface it implements
  std::vector<SpecAnn> anns;  // creation Requires + ObjInv
  std::vector<FieldDecl> fields;
  std::vector<MethodImpl> methods;
};

struct ModelFunction {
  std::string name;
  std::vector<Param> params;
  ExprP body;  // pure integer expression
};

struct AbsModel {
  std::string moduleName = "Extracted";
  bool hasSpecData = false;  // carries the `data Spec = ...` declaration
  std::vector<ModelFunction> modelFunctions;
  std::vector<InterfaceDecl> interfaces;
  std::vector<ClassDecl> classes;
  std::vector<Stmt> mainBlock;

  const InterfaceDecl* findInterface(const std::string& n) const {
    for (auto& i : interfaces)
      if (i.name == n) return &i;
    return nullptr;
  }
  const ClassDecl* findClass(const std::string& n) const {
    for (auto& c : classes)
      if (c.name == n) return &c;
    return nullptr;
  }
  const ModelFunction* findModelFunction(const std::string& n) const {
    for (auto& f : modelFunctions)
      if (f.name == n) return &f;
    return nullptr;
  }
};

inline const MethodSig* findSig(const InterfaceDecl& i, const std::string& m) {
  for (auto& s : i.methods)
    if (s.name == m) return &s;
  return nullptr;
}
inline const MethodImpl* findMethod(const ClassDecl& c, const std::string& m) {
  for (auto& im : c.methods)
    if (im.name == m) return &im;
  return nullptr;
}

}  // namespace uvc::abs
