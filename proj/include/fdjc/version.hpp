#pragma once

namespace fdjc {
inline constexpr const char* kVersion = "0.1.0";
}
