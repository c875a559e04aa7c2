#include <cctype>
#include <map>

#include "uvc/abs_ir.hpp"

namespace uvc::abs {

namespace {

struct Token {
  enum class K { Ident, Int, Punct, End };
  K k = K::End;
  std::string text;
  long long iv = 0;
  SourceLoc loc;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

private:
  void next() {
    skipWs();
    tok_ = Token{};
    tok_.loc = {line_, int(pos_ - lineStart_) + 1};
    if (pos_ >= src_.size()) {
      tok_.k = Token::K::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t b = pos_;
      while (pos_ < src_.size() && (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_'))
        pos_++;
      tok_.k = Token::K::Ident;
      tok_.text = src_.substr(b, pos_ - b);
      return;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t b = pos_;
      while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) pos_++;
      tok_.k = Token::K::Int;
      tok_.text = src_.substr(b, pos_ - b);
      tok_.iv = std::stoll(tok_.text);
      return;
    }
    // maximal-munch two-char punctuation
    static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
    for (auto* p : two) {
      if (src_.compare(pos_, 2, p) == 0) {
        tok_.k = Token::K::Punct;
        tok_.text = p;
        pos_ += 2;
        return;
      }
    }
    tok_.k = Token::K::Punct;
    tok_.text = std::string(1, c);
    pos_++;
  }

  void skipWs() {
    for (;;) {
      while (pos_ < src_.size()) {
        char c = src_[pos_];
        if (c == '\n') {
          line_++;
          pos_++;
          lineStart_ = pos_;
        } else if (std::isspace((unsigned char)c)) {
          pos_++;
        } else {
          break;
        }
      }
      if (src_.compare(pos_, 2, "//") == 0) {
        while (pos_ < src_.size() && src_[pos_] != '\n') pos_++;
        continue;
      }
      if (src_.compare(pos_, 2, "/*") == 0) {
        size_t end = src_.find("*/", pos_ + 2);
        if (end == std::string::npos) {
          pos_ = src_.size();
        } else {
          for (size_t i = pos_; i < end; i++)
            if (src_[i] == '\n') {
              line_++;
              lineStart_ = i + 1;
            }
          pos_ = end + 2;
        }
        continue;
      }
      break;
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  size_t lineStart_ = 0;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string& src) : lex_(src) {}

  AbsModel parseModel() {
    AbsModel m;
    expectIdent("module");
    m.moduleName = expectAnyIdent("module name");
    expectPunct(";");
    for (;;) {
      const Token& t = lex_.peek();
      if (t.k == Token::K::End) break;
      if (t.k == Token::K::Ident && t.text == "data") {
        parseDataSpec();
        m.hasSpecData = true;
      } else if (t.k == Token::K::Ident && t.text == "def") {
        m.modelFunctions.push_back(parseModelFunction());
      } else if (t.k == Token::K::Ident && t.text == "interface") {
        m.interfaces.push_back(parseInterface());
      } else if ((t.k == Token::K::Ident && t.text == "class") || isPunct("[")) {
        auto anns = parseAnnotations();
        if (!peekIdent("class")) fail("expected class after annotations");
        m.classes.push_back(parseClass(std::move(anns)));
      } else if (isPunct("{")) {
        m.mainBlock = parseBlock();
        break;
      } else {
        fail("unexpected token '" + t.text + "' at top level");
      }
    }
    if (lex_.peek().k != Token::K::End) fail("trailing input after main block");
    return m;
  }

  ExprP parseExprOnly() {
    ExprP e = parseExpr();
    if (lex_.peek().k != Token::K::End) fail("trailing input after expression");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(lex_.peek().loc, msg); }

  bool isPunct(const std::string& p) {
    return lex_.peek().k == Token::K::Punct && lex_.peek().text == p;
  }
  bool peekIdent(const std::string& id) {
    return lex_.peek().k == Token::K::Ident && lex_.peek().text == id;
  }
  bool acceptPunct(const std::string& p) {
    if (!isPunct(p)) return false;
    lex_.take();
    return true;
  }
  bool acceptIdent(const std::string& id) {
    if (!peekIdent(id)) return false;
    lex_.take();
    return true;
  }
  void expectPunct(const std::string& p) {
    if (!acceptPunct(p)) fail("expected '" + p + "'");
  }
  void expectIdent(const std::string& id) {
    if (!acceptIdent(id)) fail("expected '" + id + "'");
  }
  std::string expectAnyIdent(const std::string& what) {
    if (lex_.peek().k != Token::K::Ident) fail("expected " + what);
    return lex_.take().text;
  }

  void parseDataSpec() {
    expectIdent("data");
    expectIdent("Spec");
    expectPunct("=");
    // fixed constructor list: Name(Bool) separated by |
    for (;;) {
      expectAnyIdent("Spec constructor");
      expectPunct("(");
      expectIdent("Bool");
      expectPunct(")");
      if (!acceptPunct("|")) break;
    }
    expectPunct(";");
  }

  Type parseType() {
    std::string n = expectAnyIdent("type");
    if (n == "Int") return Type::Int();
    if (n == "Bool") return Type::Bool();
    if (n == "Unit") return Type::Unit();
    if (n == "Fut") {
      expectPunct("<");
      std::string inner = expectAnyIdent("future value type");
      expectPunct(">");
      if (inner == "Int") return Type::FutInt();
      if (inner == "Unit") return Type::FutUnit();
      fail("unsupported future value type '" + inner + "'");
    }
    return Type::Iface(n);
  }

  std::vector<Param> parseParams() {
    std::vector<Param> ps;
    expectPunct("(");
    if (!acceptPunct(")")) {
      for (;;) {
        Param p;
        p.type = parseType();
        p.name = expectAnyIdent("parameter name");
        ps.push_back(std::move(p));
        if (acceptPunct(")")) break;
        expectPunct(",");
      }
    }
    return ps;
  }

  ModelFunction parseModelFunction() {
    expectIdent("def");
    ModelFunction f;
    Type ret = parseType();
    if (ret.k != Type::K::Int) fail("model functions must return Int");
    f.name = expectAnyIdent("function name");
    f.params = parseParams();
    expectPunct("=");
    f.body = parseExpr();
    expectPunct(";");
    return f;
  }

  std::vector<SpecAnn> parseAnnotations() {
    std::vector<SpecAnn> anns;
    while (isPunct("[")) {
      lex_.take();
      expectIdent("Spec");
      expectPunct(":");
      std::string kind = expectAnyIdent("annotation kind");
      SpecAnn a;
      if (kind == "ObjInv") a.k = SpecAnn::K::ObjInv;
      else if (kind == "Ensures") a.k = SpecAnn::K::Ensures;
      else if (kind == "Requires") a.k = SpecAnn::K::Requires;
      else if (kind == "WhileInv") a.k = SpecAnn::K::WhileInv;
      else fail("unknown annotation kind '" + kind + "'");
      expectPunct("(");
      a.expr = parseExpr();
      expectPunct(")");
      expectPunct("]");
      anns.push_back(std::move(a));
    }
    return anns;
  }

  InterfaceDecl parseInterface() {
    expectIdent("interface");
    InterfaceDecl i;
    i.name = expectAnyIdent("interface name");
    expectPunct("{");
    while (!acceptPunct("}")) {
      MethodSig s;
      s.anns = parseAnnotations();
      s.ret = parseType();
      s.name = expectAnyIdent("method name");
      s.params = parseParams();
      expectPunct(";");
      i.methods.push_back(std::move(s));
    }
    return i;
  }

  ClassDecl parseClass(std::vector<SpecAnn> anns) {
    expectIdent("class");
    ClassDecl c;
    c.anns = std::move(anns);
    c.name = expectAnyIdent("class name");
    if (isPunct("(")) c.params = parseParams();
    expectIdent("implements");
    c.iface = expectAnyIdent("interface name");
    expectPunct("{");
    while (!acceptPunct("}")) {
      auto memberAnns = parseAnnotations();
      Type t = parseType();
      std::string name = expectAnyIdent("member name");
      if (acceptPunct("=")) {
        // field with initializer
        if (!memberAnns.empty()) fail("annotations are not allowed on fields");
        FieldDecl f;
        f.name = name;
        f.type = t;
        f.init = parseExpr();
        expectPunct(";");
        c.fields.push_back(std::move(f));
      } else {
        MethodImpl m;
        m.anns = std::move(memberAnns);
        m.ret = t;
        m.name = name;
        m.params = parseParams();
        m.body = parseBlock();
        c.methods.push_back(std::move(m));
      }
    }
    return c;
  }

  std::vector<Stmt> parseBlock() {
    expectPunct("{");
    std::vector<Stmt> stmts;
    while (!acceptPunct("}")) {
      parseStmtInto(stmts);
    }
    return stmts;
  }

  // Parses one statement; nested `{ ... }` groups are flattened into the list.
  void parseStmtInto(std::vector<Stmt>& out) {
    if (isPunct("{")) {
      auto inner = parseBlock();
      for (auto& s : inner) out.push_back(std::move(s));
      return;
    }
    std::vector<SpecAnn> anns;
    if (isPunct("[")) {
      anns = parseAnnotations();
      if (!peekIdent("while")) fail("only while statements take annotations");
    }
    if (acceptIdent("skip")) {
      expectPunct(";");
      out.push_back(Stmt{});
      return;
    }
    if (acceptIdent("await")) {
      Stmt s;
      s.k = Stmt::K::Await;
      for (;;) {
        s.guard.push_back(parseExpr());
        expectPunct("?");
        if (!acceptPunct("&")) break;
      }
      expectPunct(";");
      out.push_back(std::move(s));
      return;
    }
    if (acceptIdent("return")) {
      Stmt s;
      s.k = Stmt::K::Return;
      s.rhs = parseExpr();
      expectPunct(";");
      out.push_back(std::move(s));
      return;
    }
    if (acceptIdent("if")) {
      Stmt s;
      s.k = Stmt::K::If;
      expectPunct("(");
      s.cond = parseExpr();
      expectPunct(")");
      s.body1 = parseBlock();
      if (acceptIdent("else")) {
        if (peekIdent("if")) {
          parseStmtInto(s.body2);
        } else {
          s.body2 = parseBlock();
        }
      }
      out.push_back(std::move(s));
      return;
    }
    if (peekIdent("while")) {
      lex_.take();
      Stmt s;
      s.k = Stmt::K::While;
      if (!anns.empty()) {
        if (anns.size() != 1 || anns[0].k != SpecAnn::K::WhileInv)
          fail("while statements take a single WhileInv annotation");
        s.whileInv = anns[0];
      }
      expectPunct("(");
      s.cond = parseExpr();
      expectPunct(")");
      s.body1 = parseBlock();
      out.push_back(std::move(s));
      return;
    }

    // Remaining forms start with an expression or a declaration:
    //   T x = <rhs>;   x = <rhs>;   this.f = <rhs>;   <fut>.get;   <e>.m(args);
    Stmt s;
    if (startsDeclaration()) {
      s.declType = parseType();
      s.target = expectAnyIdent("variable name");
      expectPunct("=");
      parseAssignRhs(s);
      expectPunct(";");
      out.push_back(std::move(s));
      return;
    }
    ExprP lhs = parsePostfixTarget(s);
    if (s.k == Stmt::K::GetBare || s.k == Stmt::K::SyncCallBare) {
      expectPunct(";");
      out.push_back(std::move(s));
      return;
    }
    // plain assignment target
    expectPunct("=");
    if (lhs->k == Expr::K::FieldRead) {
      // this.f = <pure expr> only; splitting of effectful right-hand sides
      // into a temp is the normalizer's job for parsed input we generate
      Stmt fs;
      fs.k = Stmt::K::FieldAssign;
      fs.target = lhs->name;
      parseAssignRhs(fs);
      if (fs.k != Stmt::K::FieldAssign) fail("only pure expressions may assign to fields directly");
      expectPunct(";");
      out.push_back(std::move(fs));
      return;
    }
    if (lhs->k != Expr::K::Var) fail("invalid assignment target");
    s.target = lhs->name;
    parseAssignRhs(s);
    expectPunct(";");
    out.push_back(std::move(s));
  }

  // True when the upcoming tokens look like `Type ident =` (a declaration).
  bool startsDeclaration() {
    const Token& t = lex_.peek();
    if (t.k != Token::K::Ident) return false;
    if (t.text == "Int" || t.text == "Bool" || t.text == "Unit" || t.text == "Fut") return true;
    // interface-typed declaration: Ident Ident =
    Lexer probe = lex_;
    Token first = probe.take();
    (void)first;
    Token second = probe.take();
    Token third = probe.take();
    return second.k == Token::K::Ident && third.k == Token::K::Punct && third.text == "=";
  }

  // Parses the right-hand side of `[T] x = ...` and fills in the statement
  // kind: new / async call / get / sync call / plain expression.
  void parseAssignRhs(Stmt& s) {
    if (acceptIdent("new")) {
      s.k = Stmt::K::NewAssign;
      s.method = expectAnyIdent("class name");
      s.args = parseCallArgs();
      return;
    }
    ExprP e = parseExpr();
    if (acceptPunct("!")) {
      s.k = Stmt::K::AsyncCall;
      s.callee = e;
      s.method = expectAnyIdent("method name");
      s.args = parseCallArgs();
      return;
    }
    if (e->k == Expr::K::FieldRead && isPunct("(")) {
      // `this.m(args)` parsed as a field read followed by arguments
      s.k = Stmt::K::SyncCall;
      s.callee = Expr::mkThis();
      s.method = e->name;
      s.args = parseCallArgs();
      return;
    }
    if (isPunct(".")) {
      lex_.take();
      if (acceptIdent("get")) {
        s.k = Stmt::K::GetAssign;
        s.rhs = e;
        return;
      }
      s.k = Stmt::K::SyncCall;
      s.callee = e;
      s.method = expectAnyIdent("method name");
      s.args = parseCallArgs();
      return;
    }
    if (s.k == Stmt::K::FieldAssign) {
      s.rhs = e;
      return;
    }
    s.k = s.declType ? Stmt::K::VarDecl : Stmt::K::Assign;
    s.rhs = e;
  }

  // Parses an expression in statement-head position and classifies bare
  // `e.get;` and `e.m(args);` statements.
  ExprP parsePostfixTarget(Stmt& s) {
    ExprP e = parsePrimary();
    if (e->k == Expr::K::FieldRead && isPunct("(")) {
      s.k = Stmt::K::SyncCallBare;
      s.callee = Expr::mkThis();
      s.method = e->name;
      s.args = parseCallArgs();
      return e;
    }
    if (isPunct(".")) {
      // could be bare get / bare sync call; assignment targets never chain
      Lexer probe = lex_;
      probe.take();  // '.'
      Token next = probe.take();
      if (next.k == Token::K::Ident && next.text == "get") {
        lex_.take();
        lex_.take();
        s.k = Stmt::K::GetBare;
        s.rhs = e;
        return e;
      }
      if (next.k == Token::K::Ident) {
        lex_.take();
        std::string m = lex_.take().text;
        s.k = Stmt::K::SyncCallBare;
        s.callee = e;
        s.method = m;
        s.args = parseCallArgs();
        return e;
      }
    }
    if (acceptPunct("!")) {
      fail("async call results must be assigned to a future variable");
    }
    return e;
  }

  std::vector<ExprP> parseCallArgs() {
    std::vector<ExprP> args;
    expectPunct("(");
    if (!acceptPunct(")")) {
      for (;;) {
        args.push_back(parseExpr());
        if (acceptPunct(")")) break;
        expectPunct(",");
      }
    }
    return args;
  }

  // Expression grammar, lowest precedence first:
  //   if-then-else | or | and | equality | relational | additive | multiplicative | primary
  ExprP parseExpr() {
    if (peekIdent("if")) {
      lex_.take();
      ExprP c = parseExpr();
      expectIdent("then");
      ExprP t = parseExpr();
      expectIdent("else");
      ExprP f = parseExpr();
      return Expr::mkIte(c, t, f);
    }
    return parseOr();
  }

  ExprP parseOr() {
    ExprP e = parseAnd();
    while (isPunct("||")) {
      lex_.take();
      e = Expr::mkBin(BinOp::Or, e, parseAnd());
    }
    return e;
  }
  ExprP parseAnd() {
    ExprP e = parseEquality();
    while (isPunct("&&")) {
      lex_.take();
      e = Expr::mkBin(BinOp::And, e, parseEquality());
    }
    return e;
  }
  ExprP parseEquality() {
    ExprP e = parseRelational();
    for (;;) {
      if (isPunct("==")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Eq, e, parseRelational());
      } else if (isPunct("!=")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Ne, e, parseRelational());
      } else {
        return e;
      }
    }
  }
  ExprP parseRelational() {
    ExprP e = parseAdditive();
    for (;;) {
      if (isPunct("<")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Lt, e, parseAdditive());
      } else if (isPunct(">")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Gt, e, parseAdditive());
      } else if (isPunct("<=")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Le, e, parseAdditive());
      } else if (isPunct(">=")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Ge, e, parseAdditive());
      } else {
        return e;
      }
    }
  }
  ExprP parseAdditive() {
    ExprP e = parseMultiplicative();
    for (;;) {
      if (isPunct("+")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Add, e, parseMultiplicative());
      } else if (isPunct("-")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Sub, e, parseMultiplicative());
      } else {
        return e;
      }
    }
  }
  ExprP parseMultiplicative() {
    ExprP e = parsePrimary();
    for (;;) {
      if (isPunct("*")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Mul, e, parsePrimary());
      } else if (isPunct("/")) {
        lex_.take();
        e = Expr::mkBin(BinOp::Div, e, parsePrimary());
      } else {
        return e;
      }
    }
  }

  ExprP parsePrimary() {
    const Token& t = lex_.peek();
    if (t.k == Token::K::Int) {
      return Expr::mkInt(lex_.take().iv);
    }
    if (isPunct("(")) {
      lex_.take();
      ExprP e = parseExpr();
      expectPunct(")");
      return e;
    }
    if (t.k != Token::K::Ident) fail("expected expression");
    std::string id = lex_.take().text;
    if (id == "True") return Expr::mkBool(true);
    if (id == "False") return Expr::mkBool(false);
    if (id == "unit") return Expr::mkUnit();
    if (id == "null") return Expr::mkNull();
    if (id == "this") {
      if (acceptPunct(".")) {
        return Expr::mkField(expectAnyIdent("field name"));
      }
      return Expr::mkThis();
    }
    if (id == "valueOf" || id == "valueof") {
      expectPunct("(");
      std::string n = expectAnyIdent("future variable");
      expectPunct(")");
      return Expr::mkValueOf(n);
    }
    if (isPunct("(")) {
      return Expr::mkCall(id, parseCallArgs());
    }
    return Expr::mkVar(id);
  }

  Lexer lex_;
};

}  // namespace

AbsModel parse_model(const std::string& text) {
  Parser p(text);
  return p.parseModel();
}

ExprP parse_pure_expr(const std::string& text) {
  Parser p(text);
  return p.parseExprOnly();
}

}  // namespace uvc::abs
