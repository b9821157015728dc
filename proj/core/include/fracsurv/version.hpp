#pragma once

namespace fracsurv {

inline constexpr const char* version = "0.1.0";

} // namespace fracsurv
