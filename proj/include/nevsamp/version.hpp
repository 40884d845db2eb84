#pragma once

namespace nevsamp {

inline constexpr const char* kVersion = "0.1.0";

}
