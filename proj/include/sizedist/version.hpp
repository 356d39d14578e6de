#pragma once

namespace sizedist {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sizedist
