#pragma once

#include <string>

namespace dtwaug {

/// Shortest decimal string that round-trips the exact double value
/// (std::to_chars general form). "3" for 3.0, "0.1" for 0.1.
std::string render_double(double value);

}  // namespace dtwaug
