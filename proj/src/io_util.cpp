// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/io_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mgc/error.hpp"

namespace mgc {

namespace {
const char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z')
    return c - 'A';
  if (c >= 'a' && c <= 'z')
    return c - 'a' + 26;
  if (c >= '0' && c <= '9')
    return c - '0' + 52;
  if (c == '+')
    return 62;
  if (c == '/')
    return 63;
  return -1;
}
} // namespace

std::string base64_encode(const std::uint8_t *data, std::size_t len) {
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  for (std::size_t i = 0; i < len; i += 3) {
    std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
    std::size_t take = len - i;
    if (take > 1)
      chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
    if (take > 2)
      chunk |= static_cast<std::uint32_t>(data[i + 2]);
    out += kB64Alphabet[(chunk >> 18) & 63];
    out += kB64Alphabet[(chunk >> 12) & 63];
    out += take > 1 ? kB64Alphabet[(chunk >> 6) & 63] : '=';
    out += take > 2 ? kB64Alphabet[chunk & 63] : '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string &text) {
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  std::uint32_t chunk = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r')
      continue;
    int v = b64_value(c);
    if (v < 0)
      throw Error(std::string("invalid base64 character '") + c + "'");
    chunk = (chunk << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((chunk >> bits) & 0xff));
    }
  }
  return out;
}

std::string float_to_string(float value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(value));
  return buf;
}

float float_from_string(const std::string &text) {
  char *end = nullptr;
  float v = std::strtof(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw Error("invalid float literal '" + text + "'");
  return v;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write file '" + path + "'");
  out << content;
}

std::vector<std::string> split_ws(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start)
      fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::vector<std::string> split_char(const std::string &text, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(text.substr(start));
      return fields;
    }
    fields.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string strip_comment(const std::string &line) {
  std::string out = line;
  if (!out.empty() && out.back() == '\r')
    out.pop_back();
  std::size_t pos = out.find('#');
  if (pos != std::string::npos)
    out.erase(pos);
  return out;
}

} // namespace mgc
