#include "dtwaug/text.hpp"

#include <charconv>

namespace dtwaug {

std::string render_double(double value) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace dtwaug
