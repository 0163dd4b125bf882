#pragma once

// Command-line front end. run() is the whole program minus main(), so the
// tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polytopo/family.hpp"
#include "polytopo/map_analysis.hpp"

namespace polytopo::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kCapacity = 3,
  kInconclusive = 4,
};

/// Map file: {"variables": [...], "targets": [...], "map": [...]}. Family
/// files add "parameters". Schema violations name the offending field.
PolynomialMap parse_map_json(std::string_view text);
FamilyDescription parse_family_json(std::string_view text);

/// `source` is a file path, or inline JSON when it starts with '{'. Returns
/// the raw bytes.
std::string read_input(const std::string& source);

std::uint64_t fnv1a(std::string_view bytes);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polytopo::cli
