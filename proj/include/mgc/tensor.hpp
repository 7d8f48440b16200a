// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "mgc/error.hpp"

namespace mgc {

enum class ElemKind : std::uint8_t { U8, I32, F32 };

const char *to_string(ElemKind kind);
ElemKind elem_kind_from_string(const std::string &name);
std::size_t elem_size(ElemKind kind);

using Shape = std::vector<std::int64_t>;

std::int64_t shape_numel(const Shape &shape);
std::string shape_to_string(const Shape &shape);

/// Dense n-dimensional array, row-major, immutable by convention once built.
/// Scalars are represented as shape (1,); rank-0 tensors do not exist here.
class Tensor {
public:
  Tensor() = default;

  static Tensor zeros(Shape shape, ElemKind kind);
  static Tensor from_u8(Shape shape, std::vector<std::uint8_t> values);
  static Tensor from_i32(Shape shape, std::vector<std::int32_t> values);
  static Tensor from_f32(Shape shape, std::vector<float> values);
  static Tensor scalar_i32(std::int32_t value);

  const Shape &shape() const { return shape_; }
  ElemKind kind() const { return kind_; }
  std::int64_t numel() const { return shape_numel(shape_); }
  std::int64_t rank() const { return static_cast<std::int64_t>(shape_.size()); }

  std::span<const std::uint8_t> u8() const;
  std::span<const std::int32_t> i32() const;
  std::span<const float> f32() const;
  std::span<std::uint8_t> u8();
  std::span<std::int32_t> i32();
  std::span<float> f32();

  const void *raw() const { return data_.data(); }
  void *raw() { return data_.data(); }
  std::size_t byte_size() const { return data_.size(); }

  /// Integer view of one element; valid for U8 and I32 tensors only.
  std::int64_t int_at(std::int64_t index) const;

  /// Bitwise equality: same shape, same kind, identical payload bytes.
  /// Two NaNs with the same representation compare equal; -0.0 != +0.0.
  bool operator==(const Tensor &other) const;
  bool operator!=(const Tensor &other) const { return !(*this == other); }

private:
  Tensor(Shape shape, ElemKind kind);

  Shape shape_;
  ElemKind kind_ = ElemKind::F32;
  std::vector<std::uint8_t> data_;
};

} // namespace mgc
