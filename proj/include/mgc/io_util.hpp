// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mgc {

std::string base64_encode(const std::uint8_t *data, std::size_t len);
std::vector<std::uint8_t> base64_decode(const std::string &text);

/// Shortest decimal form that round-trips a float32 exactly.
std::string float_to_string(float value);
float float_from_string(const std::string &text);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

/// Split on any amount of whitespace; no empty fields.
std::vector<std::string> split_ws(const std::string &line);
std::vector<std::string> split_char(const std::string &text, char sep);

/// Strips a trailing '\r' and a '#' comment (outside of any quoting; the
/// formats here have none).
std::string strip_comment(const std::string &line);

} // namespace mgc
