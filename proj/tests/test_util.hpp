#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace uvc::test {

inline std::string testdataPath(const std::string& name) {
  return std::string(UVC_TESTDATA_DIR) + "/" + name;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string readTestdata(const std::string& name) { return readFile(testdataPath(name)); }

// Solver command for tests, from the environment set up by CMake.
inline std::string solverCommand() {
  const char* s = std::getenv("UV_SOLVER");
  return s ? s : "";
}

}  // namespace uvc::test
