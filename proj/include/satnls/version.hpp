#pragma once

namespace satnls {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace satnls
