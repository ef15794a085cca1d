#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uitext::text {

// Byte length of the whitespace code point at s[i] (UTF-8), 0 if none.
std::size_t whitespace_len(std::string_view s, std::size_t i);

// Trims ASCII and Unicode whitespace (UTF-8 encoded) from both ends.
std::string trim(std::string_view s);

// True when the string is empty or consists only of whitespace.
bool is_blank(std::string_view s);

// Present and not blank.
bool has_content(const std::optional<std::string>& s);

std::string to_lower(std::string_view s);

bool contains(std::string_view haystack, std::string_view needle);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Collapses whitespace runs to a single space and trims.
std::string normalize_space(std::string_view s);

// Reads a whole file; throws Error{IoError} on failure.
std::string read_file(const std::string& path);

// Resource compiled into the library, empty view when unknown.
std::string_view embedded_resource(std::string_view name);

}  // namespace uitext::text
