#include "sae/extended_real.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "sae/errors.hpp"

namespace sae {

ExtendedReal ExtendedReal::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity")
    return pos_inf();
  if (lower == "-inf" || lower == "-infinity") return neg_inf();

  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || s.empty() || std::isnan(v))
    throw InvalidArgument("cannot parse extended real from '" + std::string(text) + "'");
  return from_double(v);
}

std::string ExtendedReal::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace sae
