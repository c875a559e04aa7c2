#include <cctype>
#include <cstring>
#include <set>

#include "uvc/c_frontend.hpp"

namespace uvc::c::lex {

namespace {

const std::set<std::string>& keywords() {
  // includes keywords outside the fragment so the parser can name them in
  // diagnostics instead of treating them as identifiers
  static const std::set<std::string> kw = {
      "int",    "void",   "const",  "return",  "if",     "else",     "while",
      "for",    "do",     "switch", "case",    "break",  "continue", "goto",
      "float",  "double", "char",   "long",    "short",  "unsigned", "signed",
      "struct", "union",  "enum",   "typedef", "static", "extern",   "sizeof",
      "volatile"};
  return kw;
}

struct Cursor {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  size_t lineStart = 0;

  bool done() const { return pos >= src.size(); }
  char at() const { return src[pos]; }
  bool startsWith(const char* s) const { return src.compare(pos, std::strlen(s), s) == 0; }
  SourceLoc loc() const { return {line, int(pos - lineStart) + 1}; }
  void advance() {
    if (src[pos] == '\n') {
      line++;
      lineStart = pos + 1;
    }
    pos++;
  }
  void advance(size_t n) {
    for (size_t i = 0; i < n; i++) advance();
  }
};

}  // namespace

std::vector<Token> tokenize(const std::string& source) {
  std::vector<Token> out;
  Cursor c{source};
  auto push = [&](Token t) { out.push_back(std::move(t)); };

  while (!c.done()) {
    char ch = c.at();
    if (std::isspace((unsigned char)ch)) {
      c.advance();
      continue;
    }
    SourceLoc loc = c.loc();
    // annotation comments first: //@ ... and /*@ ... @*/
    if (c.startsWith("//@")) {
      // consecutive //@ lines merge into one annotation block
      std::string text;
      while (c.startsWith("//@")) {
        c.advance(3);
        size_t b = c.pos;
        while (!c.done() && c.at() != '\n') c.advance();
        text += source.substr(b, c.pos - b);
        text += '\n';
        if (!c.done()) c.advance();
        size_t probe = c.pos;
        while (probe < source.size() && (source[probe] == ' ' || source[probe] == '\t')) probe++;
        if (source.compare(probe, 3, "//@") == 0) {
          while (c.pos < probe) c.advance();
        } else {
          break;
        }
      }
      Token t;
      t.k = Token::K::Annotation;
      t.text = text;
      t.loc = loc;
      push(std::move(t));
      continue;
    }
    if (c.startsWith("/*@")) {
      c.advance(3);
      size_t b = c.pos;
      size_t end = source.find("*/", c.pos);
      if (end == std::string::npos) throw SyntaxError(loc, "unterminated annotation comment");
      size_t stop = end;
      if (stop > b && source[stop - 1] == '@') stop--;  // trailing @*/
      std::string text = source.substr(b, stop - b);
      while (c.pos < end + 2) c.advance();
      Token t;
      t.k = Token::K::Annotation;
      t.text = text;
      t.loc = loc;
      push(std::move(t));
      continue;
    }
    if (c.startsWith("//")) {
      while (!c.done() && c.at() != '\n') c.advance();
      continue;
    }
    if (c.startsWith("/*")) {
      size_t end = source.find("*/", c.pos + 2);
      if (end == std::string::npos) throw SyntaxError(loc, "unterminated comment");
      while (c.pos < end + 2) c.advance();
      continue;
    }
    if (ch == '#') throw SubsetViolation(loc, "preprocessor directives are not supported");
    if (std::isalpha((unsigned char)ch) || ch == '_' || ch == '\\') {
      size_t b = c.pos;
      if (ch == '\\') c.advance();  // \result inside annotation expressions
      while (!c.done() && (std::isalnum((unsigned char)c.at()) || c.at() == '_')) c.advance();
      Token t;
      t.text = source.substr(b, c.pos - b);
      t.k = keywords().count(t.text) ? Token::K::Keyword : Token::K::Ident;
      t.loc = loc;
      push(std::move(t));
      continue;
    }
    if (std::isdigit((unsigned char)ch)) {
      size_t b = c.pos;
      while (!c.done() && std::isdigit((unsigned char)c.at())) c.advance();
      if (!c.done() &&
          (c.at() == '.' || std::isalpha((unsigned char)c.at()) || c.at() == '_'))
        throw SubsetViolation(loc, "only plain decimal integer literals are supported");
      Token t;
      t.k = Token::K::Int;
      t.text = source.substr(b, c.pos - b);
      t.iv = std::stoll(t.text);
      t.loc = loc;
      push(std::move(t));
      continue;
    }
    static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||", "++", "--",
                                "+=", "-=", "*=", "/=", "<<", ">>", "->"};
    bool matched = false;
    for (auto* p : two) {
      if (c.startsWith(p)) {
        Token t;
        t.k = Token::K::Punct;
        t.text = p;
        t.loc = loc;
        push(std::move(t));
        c.advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    Token t;
    t.k = Token::K::Punct;
    t.text = std::string(1, ch);
    t.loc = loc;
    push(std::move(t));
    c.advance();
  }
  Token end;
  end.k = Token::K::End;
  end.loc = c.loc();
  out.push_back(std::move(end));
  return out;
}

}  // namespace uvc::c::lex
