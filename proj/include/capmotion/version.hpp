#pragma once

namespace capmotion {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace capmotion
