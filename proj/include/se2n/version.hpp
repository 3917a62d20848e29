#pragma once

namespace se2n {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace se2n
