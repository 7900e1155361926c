#pragma once

namespace metriq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace metriq
