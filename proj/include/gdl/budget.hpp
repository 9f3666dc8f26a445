#pragma once

#include <cstddef>

namespace gdl {

/// Enumeration limit for one operation: the value of GDL_ENUM_BUDGET when it
/// is set to a positive integer, otherwise `fallback`.
std::size_t enumeration_budget(std::size_t fallback);

}  // namespace gdl
