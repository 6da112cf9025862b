#ifndef EMA_ERROR_HPP
#define EMA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ema {

// Base of every exception thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad scenario data, wrong arguments).
struct InputError : Error {
  using Error::Error;
};

// A mathematical check that should hold did not.
struct CheckFailure : Error {
  using Error::Error;
};

// A construction would exceed the configured dimension cap.
struct BudgetExceeded : CheckFailure {
  BudgetExceeded(const std::string& what, std::size_t required, std::size_t cap)
      : CheckFailure(what + ": required dimension " + std::to_string(required) +
                     " exceeds cap " + std::to_string(cap)),
        required(required),
        cap(cap) {}
  std::size_t required;
  std::size_t cap;
};

}  // namespace ema

#endif  // EMA_ERROR_HPP
