// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mgc/tensor.hpp"

namespace mgc {

// Tensor file format: a header line `<rank> <dims...> <elem_kind>`, then the
// payload as whitespace-separated values or a single `base64:` token holding
// the raw little-endian bytes. `#` starts a comment.

std::string tensor_to_text(const Tensor &t);
Tensor tensor_from_text(const std::string &text);

void save_tensor(const std::string &path, const Tensor &t);
Tensor load_tensor(const std::string &path);

/// Data payload serialization shared with the graph format's `param` records:
/// decimal for small tensors, base64 otherwise.
std::string tensor_data_to_text(const Tensor &t);
void tensor_data_from_fields(Tensor &t, const std::vector<std::string> &fields,
                             std::size_t line_no);

} // namespace mgc
