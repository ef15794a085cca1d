#include "uitext/text_util.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "uitext/errors.hpp"

namespace uitext {

namespace resources {
std::string_view lookup(std::string_view name);
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::BoundsError: return "BoundsError";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::NoInformation: return "NoInformation";
    case ErrorKind::NoSlots: return "NoSlots";
    case ErrorKind::NoInputWidgets: return "NoInputWidgets";
    case ErrorKind::GlossaryMissing: return "GlossaryMissing";
    case ErrorKind::MalformedGlossary: return "MalformedGlossary";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::AuthError: return "AuthError";
    case ErrorKind::EmptyCompletion: return "EmptyCompletion";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::RuleError: return "RuleError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Error";
}

namespace text {

std::size_t whitespace_len(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c == ' ' || (c >= 0x09 && c <= 0x0d)) return 1;
  auto byte = [&](std::size_t k) -> unsigned {
    return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u;
  };
  if (c == 0xc2 && (byte(1) == 0x85 || byte(1) == 0xa0)) return 2;
  if (c == 0xe1 && byte(1) == 0x9a && byte(2) == 0x80) return 3;  // U+1680
  if (c == 0xe2 && byte(1) == 0x80) {
    const unsigned b2 = byte(2);
    // U+2000..U+200A, U+2028, U+2029, U+202F
    if ((b2 >= 0x80 && b2 <= 0x8a) || b2 == 0xa8 || b2 == 0xa9 || b2 == 0xaf) return 3;
  }
  if (c == 0xe2 && byte(1) == 0x81 && byte(2) == 0x9f) return 3;  // U+205F
  if (c == 0xe3 && byte(1) == 0x80 && byte(2) == 0x80) return 3;  // U+3000
  return 0;
}

namespace {

// Start offset of the whitespace code point ending at s[end-1], or npos.
std::size_t trailing_whitespace_start(std::string_view s, std::size_t end) {
  for (std::size_t len = 1; len <= 3 && len <= end; ++len) {
    const std::size_t start = end - len;
    if (whitespace_len(s, start) == len) return start;
  }
  return std::string_view::npos;
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  while (begin < s.size()) {
    const std::size_t n = whitespace_len(s, begin);
    if (n == 0) break;
    begin += n;
  }
  std::size_t end = s.size();
  while (end > begin) {
    const std::size_t start = trailing_whitespace_start(s, end);
    if (start == std::string_view::npos || start < begin) break;
    end = start;
  }
  return std::string(s.substr(begin, end - begin));
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

bool has_content(const std::optional<std::string>& s) { return s && !is_blank(*s); }

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string normalize_space(std::string_view s) {
  std::string out;
  bool pending_space = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t n = whitespace_len(s, i);
    if (n) {
      pending_space = true;
      i += n;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += s[i++];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view embedded_resource(std::string_view name) { return resources::lookup(name); }

}  // namespace text
}  // namespace uitext
