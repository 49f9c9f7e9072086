#pragma once

namespace photonkit {
inline constexpr const char* kVersion = "0.1.0";
}
