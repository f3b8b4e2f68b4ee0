#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "msched/domain.hpp"

namespace msched {

inline constexpr int kInstanceFormatVersion = 1;

// Reads the JSON instance document. Type-level problems (missing fields,
// wrong types, unsupported format_version) throw ConfigurationError; value
// invariants are left to validate_instance.
ProblemInstance parse_instance(std::string_view json_text);
std::string instance_to_json(const ProblemInstance& inst);

// One human-readable line per violated invariant; empty when clean.
std::vector<std::string> validate_instance(const ProblemInstance& inst);

// parse + validate; throws ConfigurationError listing every diagnostic.
ProblemInstance load_instance(const std::filesystem::path& path);

// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

// employee,day,shift,job,attend with one row per tensor cell.
std::string tensor_to_csv(const AttendanceTensor& tensor, const ProblemInstance& inst);
std::string headcounts_to_csv(const HeadcountVector& hc, const ProblemInstance& inst);

}  // namespace msched
