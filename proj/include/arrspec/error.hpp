#pragma once
#include <stdexcept>
#include <string>

namespace arrspec {

// kind is the short error name used in messages and tests (e.g. "DuplicateForm").
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace arrspec
