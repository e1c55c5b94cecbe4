#pragma once

#include <stdexcept>
#include <string>

namespace wlanmab {

/// Raised for invalid input or invariant violations anywhere in the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wlanmab
