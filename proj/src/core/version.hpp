#pragma once

namespace pfmg {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace pfmg
