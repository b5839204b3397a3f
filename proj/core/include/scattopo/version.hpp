#pragma once

namespace scattopo {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace scattopo
