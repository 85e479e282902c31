#pragma once

namespace fmoent {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fmoent
