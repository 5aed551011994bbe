#pragma once

namespace niqsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace niqsim
