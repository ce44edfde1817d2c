#pragma once

#include <string>
#include <vector>

#include "maxplus/matrix.hpp"

namespace fixtures {

std::string data_path(const std::string& name);

/// The 10x10 worked example (0-based indices in code, 1-based in files).
maxplus::TropicalMatrix example();

/// Dense matrix from rows of optional integers; nullopt is ε.
maxplus::TropicalMatrix dense(const std::vector<std::vector<std::optional<long>>>& rows);

inline constexpr std::nullopt_t E = std::nullopt;

}  // namespace fixtures
