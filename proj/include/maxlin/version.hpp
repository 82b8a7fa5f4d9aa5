#pragma once

namespace maxlin {

inline constexpr const char* kVersion = "maxlin 0.1.0";

}  // namespace maxlin
