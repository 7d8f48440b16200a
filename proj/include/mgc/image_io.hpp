// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mgc/tensor.hpp"

namespace mgc {

// Binary PPM (P6) for 3-channel images and PGM (P5) for 1-channel, maxval
// 255. In-memory layout is (height, width, channels) uint8.

Tensor load_image(const std::string &path);
void save_image(const std::string &path, const Tensor &image);

Tensor image_from_bytes(const std::string &bytes);
std::string image_to_bytes(const Tensor &image);

} // namespace mgc
