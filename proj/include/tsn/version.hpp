#pragma once

namespace tsn {

// Participates in cache keys: bump on any change that can alter results.
inline constexpr const char* engine_version = "1.0.0";

} // namespace tsn
