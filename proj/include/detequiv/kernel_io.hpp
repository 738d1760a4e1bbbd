#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "detequiv/kernel.hpp"
#include "detequiv/recovery.hpp"

namespace detequiv {

// Kernel file, line oriented:
//
//   field rational            | field gf <p>
//   n <size>
//   <label> ... <label>       (n labels)
//   <scalar> ... <scalar>     (n rows of n entries, row-major)
//
// Parse errors carry "line L, column C". Writing then reading is exact.

Kernel parse_kernel(std::string_view text);
std::string format_kernel(const Kernel& k);

Kernel read_kernel(const std::filesystem::path& path);
void write_kernel(const Kernel& k, const std::filesystem::path& path);

// Transformation sidecar:
//
//   field rational | field gf <p>
//   n <size>
//   transpose true|false
//   base_index <i>
//   g <scalar> ... <scalar>

std::string format_transformation(const Transformation& t, const FieldSpec& spec);
Transformation parse_transformation(std::string_view text);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace detequiv
