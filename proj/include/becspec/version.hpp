// version.hpp — tool identity embedded in output metadata

#pragma once

namespace becspec {

inline constexpr const char* kToolName = "becspec";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace becspec
