#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "monoidw/monoid.hpp"

namespace monoidw {

// Text format:
//   monoid <n>
//   identity <i>
//   table
//   <n rows of n whitespace-separated indices>
// Lines starting with '#' are comments.

FiniteMonoid parse_monoid(std::string_view text);
FiniteMonoid read_monoid_file(const std::filesystem::path& path);
std::string format_monoid(const FiniteMonoid& m);

/// Reads a whole file; Parse error naming the path if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace monoidw
