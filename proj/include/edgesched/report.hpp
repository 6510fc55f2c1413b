#pragma once

#include <cstdint>
#include <string>

#include "edgesched/model.hpp"

namespace edgesched {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit digest, 16 hex characters.
std::string fnv1a_hex(const std::string& bytes);
std::string file_digest(const std::string& path);

// Solve report as JSON text. Reruns on the same input differ only in the
// wall_ms field.
std::string solve_report_text(const SolveReport& report,
                              const std::string& input_digest,
                              std::uint64_t seed);

}  // namespace edgesched
