#pragma once

namespace hoadi {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hoadi
