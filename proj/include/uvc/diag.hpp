#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace uvc {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

enum class Severity { Error, Warning };

// One finding, rendered as "file:line:col: severity: message".
struct Diagnostic {
  Severity severity = Severity::Error;
  SourceLoc loc;
  std::string message;

  std::string render(const std::string& file) const {
    std::ostringstream os;
    os << file << ':' << loc.line << ':' << loc.col << ": "
       << (severity == Severity::Error ? "error" : "warning") << ": " << message;
    return os.str();
  }
};

class UvcError : public std::runtime_error {
public:
  UvcError(std::string kind, SourceLoc loc, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)), loc_(loc) {}
  const std::string& kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }

private:
  std::string kind_;
  SourceLoc loc_;
};

struct SyntaxError : UvcError {
  SyntaxError(SourceLoc loc, const std::string& msg) : UvcError("SyntaxError", loc, msg) {}
};
struct SubsetViolation : UvcError {
  SubsetViolation(SourceLoc loc, const std::string& msg) : UvcError("SubsetViolation", loc, msg) {}
};
struct UnknownIdentifier : UvcError {
  UnknownIdentifier(SourceLoc loc, const std::string& msg) : UvcError("UnknownIdentifier", loc, msg) {}
};
struct ContractTranslationError : UvcError {
  ContractTranslationError(SourceLoc loc, const std::string& msg)
      : UvcError("ContractTranslationError", loc, msg) {}
};
struct InvariantError : UvcError {
  InvariantError(SourceLoc loc, const std::string& msg) : UvcError("InvariantError", loc, msg) {}
};
struct InternalError : UvcError {
  explicit InternalError(const std::string& msg) : UvcError("InternalError", {}, msg) {}
};
struct SolverUnavailable : UvcError {
  explicit SolverUnavailable(const std::string& msg) : UvcError("SolverUnavailable", {}, msg) {}
};
struct MalformedSolverOutput : UvcError {
  explicit MalformedSolverOutput(const std::string& msg)
      : UvcError("MalformedSolverOutput", {}, msg) {}
};

}  // namespace uvc
