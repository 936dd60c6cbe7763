#pragma once

namespace parksent {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace parksent
