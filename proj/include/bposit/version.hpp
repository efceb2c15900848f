#pragma once

namespace bposit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bposit
