#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mailgraph {

std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);
std::string_view trim(std::string_view s, std::string_view cutset);

// Splits on a delimiter, keeping empty tokens.
std::vector<std::string> split(std::string_view s, char delim);

bool iequals(std::string_view a, std::string_view b);
bool starts_with_ci(std::string_view s, std::string_view prefix);

// Case-insensitive match with '*' as the only wildcard.
bool glob_match(std::string_view pattern, std::string_view text);

// Returns the input if it is already valid UTF-8, otherwise reinterprets the
// bytes as Latin-1 and re-encodes. Used at JSON/XML output boundaries.
std::string ensure_utf8(std::string_view s);

std::string xml_escape(std::string_view s);

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

} // namespace mailgraph
