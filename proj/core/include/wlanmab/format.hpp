#pragma once

#include <string>

namespace wlanmab {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double value);

}  // namespace wlanmab
