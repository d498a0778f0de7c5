#pragma once

#include <charconv>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wrp/errors.hpp"

namespace wrp::parse_util {

// Whitespace-separated tokens of one line, dropping everything from the
// comment character on (pass '\0' for no comment syntax).
inline std::vector<std::string_view> tokenize(std::string_view line, char comment) {
  if (comment != '\0') {
    if (auto pos = line.find(comment); pos != std::string_view::npos) line = line.substr(0, pos);
  }
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline std::uint64_t parse_u64(std::string_view tok, int line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  }
  return value;
}

inline std::uint32_t parse_u32(std::string_view tok, int line, const char* what) {
  std::uint64_t value = parse_u64(tok, line, what);
  if (value > UINT32_MAX) {
    throw ParseError(line, std::string(what) + " out of range: '" + std::string(tok) + "'");
  }
  return static_cast<std::uint32_t>(value);
}

}  // namespace wrp::parse_util
