#pragma once

#include <stdexcept>
#include <string>

namespace injrad {

// Error categories; the C API maps these one-to-one onto injrad_status.
enum class Errc {
  invalid_argument = 1,
  domain = 2,
  not_found = 3,
  budget_exceeded = 4,
  parse = 5,
  io = 6,
  precondition = 7,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace injrad
