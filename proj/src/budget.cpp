#include "gdl/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace gdl {

std::size_t enumeration_budget(std::size_t fallback) {
  const char* raw = std::getenv("GDL_ENUM_BUDGET");
  if (raw == nullptr) return fallback;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return fallback;
  return value;
}

}  // namespace gdl
