#include "tetris/errors.hpp"

#include <sstream>

namespace tetris {
namespace {

std::string describe(const std::vector<Issue>& issues) {
  std::ostringstream os;
  os << issues.size() << " validation issue" << (issues.size() == 1 ? "" : "s");
  for (const Issue& issue : issues) {
    os << "\n  ";
    if (issue.line != 0) os << "line " << issue.line << ": ";
    os << issue.message;
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(describe(issues)), issues_(std::move(issues)) {}

}  // namespace tetris
