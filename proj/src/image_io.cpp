// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/image_io.hpp"

#include <cstring>

#include "mgc/io_util.hpp"

namespace mgc {

namespace {

// Reads the next PNM header token, skipping whitespace and '#' comments.
std::string next_token(const std::string &bytes, std::size_t &pos) {
  while (pos < bytes.size()) {
    char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n')
        ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])))
    ++pos;
  return bytes.substr(start, pos - start);
}

std::int64_t header_int(const std::string &bytes, std::size_t &pos, const char *what) {
  std::string tok = next_token(bytes, pos);
  char *end = nullptr;
  long long v = std::strtoll(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0' || v <= 0)
    throw Error(std::string("invalid ") + what + " in image header");
  return v;
}

} // namespace

Tensor image_from_bytes(const std::string &bytes) {
  std::size_t pos = 0;
  std::string magic = next_token(bytes, pos);
  std::int64_t channels;
  if (magic == "P6")
    channels = 3;
  else if (magic == "P5")
    channels = 1;
  else
    throw Error("unsupported image magic '" + magic + "' (want P6 or P5)");
  std::int64_t width = header_int(bytes, pos, "width");
  std::int64_t height = header_int(bytes, pos, "height");
  std::int64_t maxval = header_int(bytes, pos, "maxval");
  if (maxval != 255)
    throw Error("only maxval 255 images are supported");
  ++pos; // single whitespace after maxval
  std::size_t need = static_cast<std::size_t>(width * height * channels);
  if (bytes.size() - pos < need)
    throw Error("truncated image payload");
  Tensor img = Tensor::zeros({height, width, channels}, ElemKind::U8);
  std::memcpy(img.raw(), bytes.data() + pos, need);
  return img;
}

std::string image_to_bytes(const Tensor &image) {
  if (image.kind() != ElemKind::U8 || image.rank() != 3)
    throw Error("image must be a rank-3 uint8 tensor (H, W, C)");
  std::int64_t channels = image.shape()[2];
  const char *magic;
  if (channels == 3)
    magic = "P6";
  else if (channels == 1)
    magic = "P5";
  else
    throw Error("image must have 1 or 3 channels, got " + std::to_string(channels));
  std::string out = std::string(magic) + "\n" + std::to_string(image.shape()[1]) + " " +
                    std::to_string(image.shape()[0]) + "\n255\n";
  out.append(reinterpret_cast<const char *>(image.raw()), image.byte_size());
  return out;
}

Tensor load_image(const std::string &path) { return image_from_bytes(read_file(path)); }

void save_image(const std::string &path, const Tensor &image) {
  write_file(path, image_to_bytes(image));
}

} // namespace mgc
