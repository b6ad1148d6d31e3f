#pragma once

namespace meshcurv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace meshcurv
