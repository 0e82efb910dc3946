#include "sweep/errors.hpp"

namespace sweep {

void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

void require_dimension(std::ptrdiff_t expected, std::ptrdiff_t actual,
                       const char* what) {
  if (expected != actual) {
    throw InputError(std::string(what) + ": dimension mismatch (expected " +
                     std::to_string(expected) + ", got " +
                     std::to_string(actual) + ")");
  }
}

}  // namespace sweep
