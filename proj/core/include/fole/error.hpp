#ifndef FOLE_ERROR_HPP
#define FOLE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fole {

// Every failure carries a stable machine-readable code (e.g. "UnknownSort")
// plus a human-readable detail. Reports print them as `FAIL <code> <detail>`.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string detail);

  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

// Outcome of a validator: either OK or the first violation found.
class Verdict {
 public:
  static Verdict ok() { return Verdict{}; }
  static Verdict fail(std::string code, std::string detail);

  bool passed() const noexcept { return code_.empty(); }
  explicit operator bool() const noexcept { return passed(); }

  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  // Throws the violation as an Error; no-op on success.
  void raise() const;

 private:
  std::string code_;
  std::string detail_;
};

}  // namespace fole

#endif
