#include <map>
#include <set>

#include "uvc/abs_ir.hpp"
#include "uvc/c_frontend.hpp"

namespace uvc::c {

using lex::Token;

namespace {

// ---------------------------------------------------------------------------
// token stream
// ---------------------------------------------------------------------------

class Stream {
public:
  explicit Stream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token take() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) pos_++;
    return t;
  }
  bool isPunct(const std::string& p, size_t ahead = 0) const {
    return peek(ahead).k == Token::K::Punct && peek(ahead).text == p;
  }
  bool isKeyword(const std::string& w, size_t ahead = 0) const {
    return peek(ahead).k == Token::K::Keyword && peek(ahead).text == w;
  }
  bool acceptPunct(const std::string& p) {
    if (!isPunct(p)) return false;
    take();
    return true;
  }
  bool acceptKeyword(const std::string& w) {
    if (!isKeyword(w)) return false;
    take();
    return true;
  }
  void expectPunct(const std::string& p) {
    if (!acceptPunct(p)) throw SyntaxError(peek().loc, "expected '" + p + "'");
  }
  std::string expectIdent(const std::string& what) {
    if (peek().k != Token::K::Ident) throw SyntaxError(peek().loc, "expected " + what);
    return take().text;
  }
  bool atEnd() const { return peek().k == Token::K::End; }

private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// constructs recognized only to produce a pointed diagnostic
void rejectForeignToken(const Token& t) {
  static const std::map<std::string, std::string> named = {
      {"%", "the remainder operator"},
      {"?", "the conditional operator"},
      {"~", "bitwise complement"},
      {"^", "bitwise xor"},
      {"&", "address-of / bitwise and"},
      {"|", "bitwise or"},
      {"!", "logical negation"},
      {"<<", "shift operators"},
      {">>", "shift operators"},
      {"++", "increment operators"},
      {"--", "decrement operators"},
      {"+=", "compound assignment"},
      {"-=", "compound assignment"},
      {"*=", "compound assignment"},
      {"/=", "compound assignment"},
      {"->", "member access"},
      {".", "member access"},
      {"[", "array subscripts"},
      {",", "the comma operator"}};
  auto it = named.find(t.text);
  if (it != named.end())
    throw SubsetViolation(t.loc, it->second + " are outside the supported fragment");
}

// ---------------------------------------------------------------------------
// annotation expressions
// ---------------------------------------------------------------------------

SpecExprP mkSpec(SpecExpr::K k, SourceLoc loc) {
  auto e = std::make_shared<SpecExpr>();
  e->k = k;
  e->loc = loc;
  return e;
}

class SpecParser {
public:
  explicit SpecParser(Stream& s) : s_(s) {}

  SpecExprP parse() { return parseOr(); }

private:
  SpecExprP parseOr() {
    SpecExprP e = parseAnd();
    while (s_.isPunct("||")) {
      SourceLoc loc = s_.take().loc;
      auto n = mkSpec(SpecExpr::K::Binary, loc);
      n->op = CBinOp::LOr;
      n->args = {e, parseAnd()};
      e = n;
    }
    return e;
  }
  SpecExprP parseAnd() {
    SpecExprP e = parseCmp();
    while (s_.isPunct("&&")) {
      SourceLoc loc = s_.take().loc;
      auto n = mkSpec(SpecExpr::K::Binary, loc);
      n->op = CBinOp::LAnd;
      n->args = {e, parseCmp()};
      e = n;
    }
    return e;
  }
  SpecExprP parseCmp() {
    SpecExprP e = parseAdd();
    static const std::map<std::string, CBinOp> ops = {
        {"==", CBinOp::Eq}, {"!=", CBinOp::Ne}, {"<", CBinOp::Lt},
        {">", CBinOp::Gt},  {"<=", CBinOp::Le}, {">=", CBinOp::Ge}};
    while (s_.peek().k == Token::K::Punct && ops.count(s_.peek().text)) {
      Token t = s_.take();
      auto n = mkSpec(SpecExpr::K::Binary, t.loc);
      n->op = ops.at(t.text);
      n->args = {e, parseAdd()};
      e = n;
    }
    return e;
  }
  SpecExprP parseAdd() {
    SpecExprP e = parseMul();
    for (;;) {
      if (s_.isPunct("+") || s_.isPunct("-")) {
        Token t = s_.take();
        auto n = mkSpec(SpecExpr::K::Binary, t.loc);
        n->op = t.text == "+" ? CBinOp::Add : CBinOp::Sub;
        n->args = {e, parseMul()};
        e = n;
      } else {
        return e;
      }
    }
  }
  SpecExprP parseMul() {
    SpecExprP e = parsePrimary();
    for (;;) {
      if (s_.isPunct("*") || s_.isPunct("/")) {
        Token t = s_.take();
        auto n = mkSpec(SpecExpr::K::Binary, t.loc);
        n->op = t.text == "*" ? CBinOp::Mul : CBinOp::Div;
        n->args = {e, parsePrimary()};
        e = n;
      } else {
        return e;
      }
    }
  }
  SpecExprP parsePrimary() {
    const Token& t = s_.peek();
    if (t.k == Token::K::Int) {
      auto e = mkSpec(SpecExpr::K::IntLit, t.loc);
      e->iv = s_.take().iv;
      return e;
    }
    if (t.k == Token::K::Punct && t.text == "(") {
      s_.take();
      SpecExprP e = parseOr();
      s_.expectPunct(")");
      return e;
    }
    if (t.k == Token::K::Ident) {
      Token id = s_.take();
      if (id.text == "\\result") return mkSpec(SpecExpr::K::Result, id.loc);
      if (s_.isPunct("(")) {
        s_.take();
        auto e = mkSpec(SpecExpr::K::ModelCall, id.loc);
        e->name = id.text;
        if (!s_.acceptPunct(")")) {
          for (;;) {
            e->args.push_back(parseOr());
            if (s_.acceptPunct(")")) break;
            s_.expectPunct(",");
          }
        }
        return e;
      }
      auto e = mkSpec(SpecExpr::K::Var, id.loc);
      e->name = id.text;
      return e;
    }
    rejectForeignToken(t);
    throw SyntaxError(t.loc, "expected specification expression");
  }

  Stream& s_;
};

// clauses collected from one annotation block
struct AnnBlock {
  SpecExprP requires_;
  SpecExprP ensures_;
  SpecExprP loopInvariant;
  bool hasAssigns = false;
  std::vector<std::pair<SpecExprP, SourceLoc>> strongInvariants;
  std::vector<ModelFnDef> modelDefs;
};

void parseAnnotationInto(const Token& ann, AnnBlock& out) {
  auto toks = lex::tokenize(ann.text);
  Stream s(std::move(toks));
  while (!s.atEnd()) {
    const Token& t = s.peek();
    if (t.k == Token::K::Ident && t.text == "requires") {
      s.take();
      SpecExprP e = SpecParser(s).parse();
      s.expectPunct(";");
      if (out.requires_) throw SyntaxError(t.loc, "duplicate requires clause");
      out.requires_ = e;
    } else if (t.k == Token::K::Ident && t.text == "ensures") {
      s.take();
      SpecExprP e = SpecParser(s).parse();
      s.expectPunct(";");
      if (out.ensures_) throw SyntaxError(t.loc, "duplicate ensures clause");
      out.ensures_ = e;
    } else if (t.k == Token::K::Ident && t.text == "strong") {
      SourceLoc loc = s.take().loc;
      if (s.take().text != "global" || s.take().text != "invariant")
        throw SyntaxError(loc, "expected 'strong global invariant'");
      SpecExprP e = SpecParser(s).parse();
      s.expectPunct(";");
      out.strongInvariants.push_back({e, loc});
    } else if (t.k == Token::K::Ident && t.text == "loop") {
      SourceLoc loc = s.take().loc;
      if (s.take().text != "invariant") throw SyntaxError(loc, "expected 'loop invariant'");
      SpecExprP e = SpecParser(s).parse();
      s.expectPunct(";");
      if (out.loopInvariant) throw SyntaxError(loc, "duplicate loop invariant");
      out.loopInvariant = e;
    } else if (t.k == Token::K::Ident && t.text == "ABS") {
      SourceLoc loc = s.take().loc;
      if (s.take().text != "def") throw SyntaxError(loc, "expected 'ABS def'");
      // everything up to the terminating ';' is the verbatim definition
      size_t absPos = ann.text.find("ABS");
      size_t defPos = ann.text.find("def", absPos == std::string::npos ? 0 : absPos);
      size_t start = ann.text.find_first_not_of(" \t\n", defPos + 3);
      size_t semi = ann.text.find(';', start);
      if (semi == std::string::npos) throw SyntaxError(loc, "ABS def must end with ';'");
      ModelFnDef d;
      d.rawText = ann.text.substr(start, semi - start);
      d.loc = loc;
      out.modelDefs.push_back(std::move(d));
      // skip tokens to just past the ';'
      while (!s.atEnd() && !s.acceptPunct(";")) s.take();
    } else if (t.k == Token::K::Ident && t.text == "assigns") {
      s.take();
      out.hasAssigns = true;
      while (!s.atEnd() && !s.acceptPunct(";")) s.take();
    } else {
      throw SyntaxError(t.loc, "unknown annotation clause starting at '" + t.text + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// statements and expressions
// ---------------------------------------------------------------------------

CExprP mkCExpr(CExpr::K k, SourceLoc loc) {
  auto e = std::make_shared<CExpr>();
  e->k = k;
  e->loc = loc;
  return e;
}

class CParser {
public:
  explicit CParser(Stream& s) : s_(s) {}

  CProgram parseUnit() {
    CProgram prog;
    AnnBlock pending;
    bool pendingUsed = false;
    while (!s_.atEnd()) {
      if (s_.peek().k == Token::K::Annotation) {
        Token ann = s_.take();
        parseAnnotationInto(ann, pending);
        pendingUsed = true;
        continue;
      }
      drainGlobalClauses(prog, pending);
      if (s_.isKeyword("const")) {
        throw SubsetViolation(s_.peek().loc, "const global variables are outside the fragment");
      }
      if (!s_.isKeyword("int") && !s_.isKeyword("void"))
        throw SyntaxError(s_.peek().loc, "expected declaration");
      bool returnsInt = s_.take().text == "int";
      checkNoPointer();
      std::string name = s_.expectIdent("declarator name");
      if (s_.isPunct("(")) {
        prog.functions.push_back(parseFunction(name, returnsInt, pending));
        pending = AnnBlock{};
        pendingUsed = false;
      } else {
        if (!returnsInt)
          throw SubsetViolation(s_.peek().loc, "void variables are outside the fragment");
        parseGlobalTail(prog, name);
        // non-invariant clauses keep pending for a following function
      }
    }
    drainGlobalClauses(prog, pending);
    if (pendingUsed && (pending.requires_ || pending.ensures_))
      throw SyntaxError(s_.peek().loc, "contract clauses are not attached to any function");
    bindStrongInvariants(prog);
    resolveProgram(prog);
    return prog;
  }

private:
  // strong invariants and ABS defs are position-independent
  void drainGlobalClauses(CProgram& prog, AnnBlock& pending) {
    for (auto& d : pending.modelDefs) prog.modelFnDefs.push_back(d);
    pending.modelDefs.clear();
    for (auto& si : pending.strongInvariants) strongInvs_.push_back(si);
    pending.strongInvariants.clear();
    if (pending.loopInvariant)
      throw SyntaxError(s_.peek().loc, "loop invariant must precede a while statement");
  }

  void checkNoPointer() {
    if (s_.isPunct("*"))
      throw SubsetViolation(s_.peek().loc, "pointer declarations are outside the fragment");
  }

  void parseGlobalTail(CProgram& prog, const std::string& name) {
    GlobalDecl g;
    g.name = name;
    g.loc = s_.peek().loc;
    if (s_.acceptPunct("=")) {
      bool neg = s_.acceptPunct("-");
      if (s_.peek().k != Token::K::Int)
        throw SubsetViolation(s_.peek().loc, "global initializers must be integer literals");
      g.initial = s_.take().iv * (neg ? -1 : 1);
    }
    if (s_.isPunct("["))
      throw SubsetViolation(s_.peek().loc, "array declarations are outside the fragment");
    if (s_.isPunct(","))
      throw SubsetViolation(s_.peek().loc, "multiple declarators are outside the fragment");
    s_.expectPunct(";");
    prog.globals.push_back(std::move(g));
  }

  CFunction parseFunction(const std::string& name, bool returnsInt, AnnBlock& pending) {
    CFunction fn;
    fn.name = name;
    fn.returnsInt = returnsInt;
    fn.loc = s_.peek().loc;
    s_.expectPunct("(");
    if (!s_.acceptPunct(")")) {
      if (s_.isKeyword("void") && s_.isPunct(")", 1)) {
        s_.take();
        s_.take();
      } else {
        for (;;) {
          CFunction::FnParam p;
          p.isConst = s_.acceptKeyword("const");
          if (!s_.acceptKeyword("int")) {
            if (s_.peek().k == Token::K::Keyword)
              throw SubsetViolation(s_.peek().loc,
                                    "parameter type '" + s_.peek().text + "' is outside the fragment");
            throw SyntaxError(s_.peek().loc, "expected parameter type");
          }
          checkNoPointer();
          p.name = s_.expectIdent("parameter name");
          fn.params.push_back(std::move(p));
          if (s_.acceptPunct(")")) break;
          s_.expectPunct(",");
        }
      }
    }
    // contract may also sit between the signature and the body
    while (s_.peek().k == Token::K::Annotation) {
      Token ann = s_.take();
      parseAnnotationInto(ann, pending);
    }
    fn.contract.requires_ = pending.requires_;
    fn.contract.ensures_ = pending.ensures_;
    fn.contract.hasAssigns = pending.hasAssigns;
    pending.requires_ = nullptr;
    pending.ensures_ = nullptr;
    pending.hasAssigns = false;
    if (s_.isPunct(";"))
      throw SubsetViolation(s_.peek().loc, "function declarations without bodies are not supported");
    fn.body = parseCompound();
    return fn;
  }

  CStmtP mkStmt(CStmt::K k) {
    auto s = std::make_shared<CStmt>();
    s->k = k;
    s->loc = s_.peek().loc;
    return s;
  }

  CStmtP parseCompound() {
    auto block = mkStmt(CStmt::K::Compound);
    s_.expectPunct("{");
    AnnBlock pending;
    while (!s_.acceptPunct("}")) {
      if (s_.peek().k == Token::K::Annotation) {
        Token ann = s_.take();
        parseAnnotationInto(ann, pending);
        if (pending.requires_ || pending.ensures_ || !pending.strongInvariants.empty() ||
            !pending.modelDefs.empty())
          throw SyntaxError(ann.loc, "only loop invariants may be annotated inside a function");
        continue;
      }
      CStmtP stmt = parseStmt(pending.loopInvariant);
      pending.loopInvariant = nullptr;
      block->stmts.push_back(std::move(stmt));
    }
    if (pending.loopInvariant)
      throw SyntaxError(s_.peek().loc, "loop invariant must precede a while statement");
    return block;
  }

  CStmtP parseStmt(SpecExprP pendingLoopInv) {
    const Token& t = s_.peek();
    if (t.k == Token::K::Punct && t.text == "{") return parseCompound();
    if (t.k == Token::K::Keyword) {
      if (t.text == "return") {
        auto st = mkStmt(CStmt::K::Return);
        s_.take();
        if (!s_.isPunct(";")) st->expr = parseExpr();
        s_.expectPunct(";");
        return st;
      }
      if (t.text == "if") {
        auto st = mkStmt(CStmt::K::If);
        s_.take();
        s_.expectPunct("(");
        st->expr = parseExpr();
        s_.expectPunct(")");
        st->then_ = parseStmt(nullptr);
        if (s_.acceptKeyword("else")) st->else_ = parseStmt(nullptr);
        return st;
      }
      if (t.text == "while") {
        auto st = mkStmt(CStmt::K::While);
        if (pendingLoopInv) st->loopInvariant = pendingLoopInv;
        s_.take();
        s_.expectPunct("(");
        st->expr = parseExpr();
        s_.expectPunct(")");
        st->body = parseStmt(nullptr);
        return st;
      }
      if (t.text == "const" || t.text == "int") {
        auto st = mkStmt(CStmt::K::Decl);
        st->isConst = s_.acceptKeyword("const");
        if (!s_.acceptKeyword("int"))
          throw SubsetViolation(s_.peek().loc, "only int local variables are supported");
        checkNoPointer();
        st->name = s_.expectIdent("variable name");
        if (s_.isPunct("["))
          throw SubsetViolation(s_.peek().loc, "array declarations are outside the fragment");
        if (!s_.acceptPunct("="))
          throw SubsetViolation(s_.peek().loc, "local declarations must have an initializer");
        st->expr = parseExpr();
        if (s_.isPunct(","))
          throw SubsetViolation(s_.peek().loc, "multiple declarators are outside the fragment");
        s_.expectPunct(";");
        return st;
      }
      throw SubsetViolation(t.loc, "statement '" + t.text + "' is outside the fragment");
    }
    if (t.k == Token::K::Punct && t.text == ";") {
      s_.take();
      return mkStmt(CStmt::K::Compound);  // empty statement
    }
    auto st = mkStmt(CStmt::K::Expr);
    st->expr = parseExpr();
    s_.expectPunct(";");
    return st;
  }

  // assignment is right-associative and lowest precedence
  CExprP parseExpr() {
    CExprP lhs = parseOr();
    if (s_.isPunct("=")) {
      Token eq = s_.take();
      if (lhs->k != CExpr::K::Var)
        throw SubsetViolation(eq.loc, "assignment targets must be plain variables");
      auto e = mkCExpr(CExpr::K::Assign, eq.loc);
      e->name = lhs->name;
      e->args = {parseExpr()};
      return e;
    }
    return lhs;
  }

  CExprP parseOr() {
    CExprP e = parseAnd();
    while (s_.isPunct("||")) {
      SourceLoc loc = s_.take().loc;
      auto n = mkCExpr(CExpr::K::Binary, loc);
      n->op = CBinOp::LOr;
      n->args = {e, parseAnd()};
      e = n;
    }
    return e;
  }
  CExprP parseAnd() {
    CExprP e = parseEq();
    while (s_.isPunct("&&")) {
      SourceLoc loc = s_.take().loc;
      auto n = mkCExpr(CExpr::K::Binary, loc);
      n->op = CBinOp::LAnd;
      n->args = {e, parseEq()};
      e = n;
    }
    return e;
  }
  CExprP parseEq() {
    CExprP e = parseRel();
    for (;;) {
      CBinOp op;
      if (s_.isPunct("==")) op = CBinOp::Eq;
      else if (s_.isPunct("!=")) op = CBinOp::Ne;
      else return e;
      SourceLoc loc = s_.take().loc;
      auto n = mkCExpr(CExpr::K::Binary, loc);
      n->op = op;
      n->args = {e, parseRel()};
      e = n;
    }
  }
  CExprP parseRel() {
    CExprP e = parseAdd();
    for (;;) {
      CBinOp op;
      if (s_.isPunct("<")) op = CBinOp::Lt;
      else if (s_.isPunct(">")) op = CBinOp::Gt;
      else if (s_.isPunct("<=")) op = CBinOp::Le;
      else if (s_.isPunct(">=")) op = CBinOp::Ge;
      else return e;
      SourceLoc loc = s_.take().loc;
      auto n = mkCExpr(CExpr::K::Binary, loc);
      n->op = op;
      n->args = {e, parseAdd()};
      e = n;
    }
  }
  CExprP parseAdd() {
    CExprP e = parseMul();
    for (;;) {
      CBinOp op;
      if (s_.isPunct("+")) op = CBinOp::Add;
      else if (s_.isPunct("-")) op = CBinOp::Sub;
      else return e;
      SourceLoc loc = s_.take().loc;
      auto n = mkCExpr(CExpr::K::Binary, loc);
      n->op = op;
      n->args = {e, parseMul()};
      e = n;
    }
  }
  CExprP parseMul() {
    CExprP e = parsePrimary();
    for (;;) {
      CBinOp op;
      if (s_.isPunct("*")) op = CBinOp::Mul;
      else if (s_.isPunct("/")) op = CBinOp::Div;
      else return e;
      SourceLoc loc = s_.take().loc;
      auto n = mkCExpr(CExpr::K::Binary, loc);
      n->op = op;
      n->args = {e, parsePrimary()};
      e = n;
    }
  }
  CExprP parsePrimary() {
    const Token& t = s_.peek();
    if (t.k == Token::K::Int) {
      auto e = mkCExpr(CExpr::K::IntLit, t.loc);
      e->iv = s_.take().iv;
      return e;
    }
    if (t.k == Token::K::Punct && t.text == "(") {
      s_.take();
      CExprP e = parseExpr();
      s_.expectPunct(")");
      return e;
    }
    if (t.k == Token::K::Punct && t.text == "-")
      throw SubsetViolation(t.loc, "unary minus is outside the fragment (write 0 - e)");
    if (t.k == Token::K::Ident) {
      Token id = s_.take();
      if (s_.isPunct("(")) {
        s_.take();
        auto e = mkCExpr(CExpr::K::Call, id.loc);
        e->name = id.text;
        if (!s_.acceptPunct(")")) {
          for (;;) {
            e->args.push_back(parseExpr());
            if (s_.acceptPunct(")")) break;
            s_.expectPunct(",");
          }
        }
        return e;
      }
      auto e = mkCExpr(CExpr::K::Var, id.loc);
      e->name = id.text;
      return e;
    }
    if (t.k == Token::K::Keyword)
      throw SubsetViolation(t.loc, "'" + t.text + "' is outside the fragment");
    rejectForeignToken(t);
    throw SyntaxError(t.loc, "expected expression");
  }

  // -------------------------------------------------------------------------
  // binding and resolution
  // -------------------------------------------------------------------------

  std::set<std::string> mentionedVars(const SpecExprP& e) {
    std::set<std::string> out;
    collectVars(e, out);
    return out;
  }
  void collectVars(const SpecExprP& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->k == SpecExpr::K::Var) out.insert(e->name);
    for (auto& a : e->args) collectVars(a, out);
  }

  void bindStrongInvariants(CProgram& prog) {
    for (auto& [expr, loc] : strongInvs_) {
      auto vars = mentionedVars(expr);
      if (vars.size() != 1)
        throw SubsetViolation(
            loc, "strong global invariants must mention exactly one global variable");
      const std::string& name = *vars.begin();
      bool bound = false;
      for (auto& g : prog.globals) {
        if (g.name != name) continue;
        if (g.strongInvariant)
          throw SyntaxError(loc, "global '" + name + "' already has a strong invariant");
        g.strongInvariant = expr;
        bound = true;
      }
      if (!bound) throw UnknownIdentifier(loc, "strong invariant mentions unknown global '" + name + "'");
    }
  }

  void resolveProgram(CProgram& prog) {
    std::set<std::string> names;
    for (auto& g : prog.globals)
      if (!names.insert(g.name).second)
        throw SyntaxError(g.loc, "duplicate global '" + g.name + "'");
    for (auto& f : prog.functions)
      if (!names.insert(f.name).second)
        throw SyntaxError(f.loc, "duplicate declaration '" + f.name + "'");

    // model-function headers come from parsing the definitions as model text
    for (auto& d : prog.modelFnDefs) {
      try {
        abs::AbsModel probe = abs::parse_model("module M;\ndef " + d.rawText + ";\n{ }");
        d.name = probe.modelFunctions[0].name;
        d.arity = probe.modelFunctions[0].params.size();
      } catch (const SyntaxError&) {
        throw SyntaxError(d.loc, "malformed ABS def annotation");
      }
      if (!names.insert(d.name).second)
        throw SyntaxError(d.loc, "duplicate declaration '" + d.name + "'");
    }

    for (auto& f : prog.functions) resolveFunction(prog, f);
  }

  struct Scope {
    std::vector<std::map<std::string, bool>> locals;  // name -> isConst
    const CFunction* fn = nullptr;
  };

  void resolveFunction(CProgram& prog, CFunction& fn) {
    Scope sc;
    sc.fn = &fn;
    resolveSpec(prog, fn, fn.contract.requires_);
    resolveSpec(prog, fn, fn.contract.ensures_);
    sc.locals.push_back({});
    resolveStmt(prog, sc, fn.body);
  }

  void resolveStmt(CProgram& prog, Scope& sc, const CStmtP& s) {
    if (!s) return;
    switch (s->k) {
      case CStmt::K::Compound:
        sc.locals.push_back({});
        for (auto& inner : s->stmts) resolveStmt(prog, sc, inner);
        sc.locals.pop_back();
        break;
      case CStmt::K::Decl:
        resolveExpr(prog, sc, s->expr);
        if (sc.locals.back().count(s->name))
          throw SyntaxError(s->loc, "redeclaration of '" + s->name + "'");
        sc.locals.back()[s->name] = s->isConst;
        break;
      case CStmt::K::Expr:
        resolveExpr(prog, sc, s->expr);
        break;
      case CStmt::K::Return:
        if (s->expr) resolveExpr(prog, sc, s->expr);
        break;
      case CStmt::K::If:
        resolveExpr(prog, sc, s->expr);
        resolveStmt(prog, sc, s->then_);
        resolveStmt(prog, sc, s->else_);
        break;
      case CStmt::K::While:
        resolveExpr(prog, sc, s->expr);
        if (s->loopInvariant) resolveLoopInvariant(prog, sc, *s->loopInvariant);
        resolveStmt(prog, sc, s->body);
        break;
    }
  }

  // kind of a name inside a function body: innermost local, else parameter,
  // else global
  bool lookupLocal(Scope& sc, const std::string& n, bool& isConst) {
    for (auto it = sc.locals.rbegin(); it != sc.locals.rend(); ++it) {
      auto f = it->find(n);
      if (f != it->end()) {
        isConst = f->second;
        return true;
      }
    }
    return false;
  }

  void resolveExpr(CProgram& prog, Scope& sc, const CExprP& e) {
    if (!e) return;
    switch (e->k) {
      case CExpr::K::IntLit:
        break;
      case CExpr::K::Var:
      case CExpr::K::Assign: {
        bool isConst = false;
        if (lookupLocal(sc, e->name, isConst)) {
          e->varKind = VarKind::Local;
          e->targetConst = isConst;
        } else {
          bool isParam = false;
          for (auto& p : sc.fn->params)
            if (p.name == e->name) {
              e->varKind = VarKind::Param;
              e->targetConst = p.isConst;
              isParam = true;
            }
          if (!isParam) {
            if (prog.findGlobal(e->name)) {
              e->varKind = VarKind::Global;
            } else {
              throw UnknownIdentifier(e->loc, "unknown identifier '" + e->name + "'");
            }
          }
        }
        for (auto& a : e->args) resolveExpr(prog, sc, a);
        break;
      }
      case CExpr::K::Binary:
        for (auto& a : e->args) resolveExpr(prog, sc, a);
        break;
      case CExpr::K::Call: {
        const CFunction* target = prog.findFunction(e->name);
        if (!target) throw UnknownIdentifier(e->loc, "call to undeclared function '" + e->name + "'");
        if (target->params.size() != e->args.size())
          throw SyntaxError(e->loc, "wrong number of arguments for '" + e->name + "'");
        for (auto& a : e->args) resolveExpr(prog, sc, a);
        break;
      }
    }
  }

  // contract scope: parameters of the function, globals, model functions
  void resolveSpec(CProgram& prog, const CFunction& fn, const SpecExprP& e) {
    if (!e) return;
    if (e->k == SpecExpr::K::Var) {
      for (auto& p : fn.params)
        if (p.name == e->name) {
          e->varKind = VarKind::Param;
          return;
        }
      if (prog.findGlobal(e->name)) {
        e->varKind = VarKind::Global;
        return;
      }
      throw UnknownIdentifier(e->loc, "unknown identifier '" + e->name + "' in contract");
    }
    if (e->k == SpecExpr::K::ModelCall) {
      const ModelFnDef* d = prog.findModelFn(e->name);
      if (!d) throw UnknownIdentifier(e->loc, "unknown function '" + e->name + "' in contract");
      if (d->arity != e->args.size())
        throw SyntaxError(e->loc, "wrong arity for '" + e->name + "' in contract");
    }
    for (auto& a : e->args) resolveSpec(prog, fn, a);
  }

  // loop invariants may additionally mention locals in scope
  void resolveLoopInvariant(CProgram& prog, Scope& sc, const SpecExprP& e) {
    if (!e) return;
    if (e->k == SpecExpr::K::Var) {
      bool isConst = false;
      if (lookupLocal(sc, e->name, isConst)) {
        e->varKind = VarKind::Local;
        return;
      }
      for (auto& p : sc.fn->params)
        if (p.name == e->name) {
          e->varKind = VarKind::Param;
          return;
        }
      if (prog.findGlobal(e->name)) {
        e->varKind = VarKind::Global;
        return;
      }
      throw UnknownIdentifier(e->loc, "unknown identifier '" + e->name + "' in loop invariant");
    }
    if (e->k == SpecExpr::K::ModelCall) {
      const ModelFnDef* d = prog.findModelFn(e->name);
      if (!d) throw UnknownIdentifier(e->loc, "unknown function '" + e->name + "'");
      if (d->arity != e->args.size()) throw SyntaxError(e->loc, "wrong arity for '" + e->name + "'");
    }
    for (auto& a : e->args) resolveLoopInvariant(prog, sc, a);
  }

  Stream& s_;
  std::vector<std::pair<SpecExprP, SourceLoc>> strongInvs_;
};

}  // namespace

CProgram parse_translation_unit(const std::string& source) {
  Stream s(lex::tokenize(source));
  CParser p(s);
  return p.parseUnit();
}

SpecExprP parse_spec_expr(const std::string& text) {
  Stream s(lex::tokenize(text));
  SpecExprP e = SpecParser(s).parse();
  if (!s.atEnd()) throw SyntaxError(s.peek().loc, "trailing input after expression");
  return e;
}

bool analyze_source(const std::string& source, CProgram& out, std::vector<Diagnostic>& diags) {
  try {
    out = parse_translation_unit(source);
  } catch (const UvcError& e) {
    diags.push_back({Severity::Error, e.loc(), e.kind() + ": " + e.what()});
    return false;
  }
  auto more = validate_subset(out);
  diags.insert(diags.end(), more.begin(), more.end());
  return true;
}

}  // namespace uvc::c
