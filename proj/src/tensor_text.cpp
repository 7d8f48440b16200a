// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/tensor_text.hpp"

#include <cstring>
#include <sstream>

#include "mgc/io_util.hpp"

namespace mgc {

namespace {
constexpr std::int64_t kDecimalLimit = 16;

std::int64_t parse_int(const std::string &s, std::size_t line_no) {
  char *end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw ParseError(line_no, "expected integer, got '" + s + "'");
  return v;
}
} // namespace

std::string tensor_data_to_text(const Tensor &t) {
  if (t.numel() > kDecimalLimit)
    return "base64:" + base64_encode(static_cast<const std::uint8_t *>(t.raw()), t.byte_size());
  std::ostringstream out;
  for (std::int64_t i = 0; i < t.numel(); ++i) {
    if (i)
      out << ' ';
    switch (t.kind()) {
    case ElemKind::U8:
      out << static_cast<int>(t.u8()[static_cast<std::size_t>(i)]);
      break;
    case ElemKind::I32:
      out << t.i32()[static_cast<std::size_t>(i)];
      break;
    case ElemKind::F32:
      out << float_to_string(t.f32()[static_cast<std::size_t>(i)]);
      break;
    }
  }
  return out.str();
}

void tensor_data_from_fields(Tensor &t, const std::vector<std::string> &fields,
                             std::size_t line_no) {
  if (fields.size() == 1 && fields[0].rfind("base64:", 0) == 0) {
    std::vector<std::uint8_t> bytes = base64_decode(fields[0].substr(7));
    if (bytes.size() != t.byte_size())
      throw ParseError(line_no, "base64 payload is " + std::to_string(bytes.size()) +
                                    " bytes, expected " + std::to_string(t.byte_size()));
    std::memcpy(t.raw(), bytes.data(), bytes.size());
    return;
  }
  if (static_cast<std::int64_t>(fields.size()) != t.numel())
    throw ParseError(line_no, "expected " + std::to_string(t.numel()) + " values, got " +
                                  std::to_string(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    switch (t.kind()) {
    case ElemKind::U8: {
      std::int64_t v = parse_int(fields[i], line_no);
      if (v < 0 || v > 255)
        throw ParseError(line_no, "uint8 value out of range: " + fields[i]);
      t.u8()[i] = static_cast<std::uint8_t>(v);
      break;
    }
    case ElemKind::I32:
      t.i32()[i] = static_cast<std::int32_t>(parse_int(fields[i], line_no));
      break;
    case ElemKind::F32:
      t.f32()[i] = float_from_string(fields[i]);
      break;
    }
  }
}

std::string tensor_to_text(const Tensor &t) {
  std::ostringstream out;
  out << t.rank();
  for (std::int64_t d : t.shape())
    out << ' ' << d;
  out << ' ' << to_string(t.kind()) << '\n';
  out << tensor_data_to_text(t) << '\n';
  return out.str();
}

Tensor tensor_from_text(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    header = split_ws(strip_comment(line));
    if (!header.empty())
      break;
  }
  if (header.empty())
    throw ParseError(line_no, "missing tensor header");
  std::int64_t rank = parse_int(header[0], line_no);
  if (rank < 1 || static_cast<std::size_t>(rank) + 2 != header.size())
    throw ParseError(line_no, "malformed tensor header");
  Shape shape;
  for (std::int64_t i = 0; i < rank; ++i)
    shape.push_back(parse_int(header[static_cast<std::size_t>(i) + 1], line_no));
  ElemKind kind = elem_kind_from_string(header.back());
  Tensor t = Tensor::zeros(shape, kind);

  std::vector<std::string> fields;
  std::size_t data_line = line_no;
  while (std::getline(in, line)) {
    ++line_no;
    for (auto &f : split_ws(strip_comment(line)))
      fields.push_back(std::move(f));
    if (fields.empty())
      data_line = line_no;
  }
  tensor_data_from_fields(t, fields, data_line + 1);
  return t;
}

void save_tensor(const std::string &path, const Tensor &t) { write_file(path, tensor_to_text(t)); }

Tensor load_tensor(const std::string &path) { return tensor_from_text(read_file(path)); }

} // namespace mgc
