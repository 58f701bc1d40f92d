#pragma once

namespace qperisk {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace qperisk
