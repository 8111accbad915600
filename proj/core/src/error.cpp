#include "fole/error.hpp"

#include <utility>

namespace fole {

Error::Error(std::string code, std::string detail)
    : std::runtime_error(code + ": " + detail),
      code_(std::move(code)),
      detail_(std::move(detail)) {}

Verdict Verdict::fail(std::string code, std::string detail) {
  Verdict v;
  v.code_ = std::move(code);
  v.detail_ = std::move(detail);
  return v;
}

void Verdict::raise() const {
  if (!passed()) throw Error(code_, detail_);
}

}  // namespace fole
