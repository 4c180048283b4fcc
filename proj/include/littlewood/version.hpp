#pragma once

namespace littlewood {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace littlewood
