// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/tensor.hpp"

namespace mgc {

const char *to_string(ElemKind kind) {
  switch (kind) {
  case ElemKind::U8:
    return "uint8";
  case ElemKind::I32:
    return "int32";
  case ElemKind::F32:
    return "float32";
  }
  return "?";
}

ElemKind elem_kind_from_string(const std::string &name) {
  if (name == "uint8")
    return ElemKind::U8;
  if (name == "int32")
    return ElemKind::I32;
  if (name == "float32")
    return ElemKind::F32;
  throw Error("unknown element kind '" + name + "'");
}

std::size_t elem_size(ElemKind kind) {
  switch (kind) {
  case ElemKind::U8:
    return 1;
  case ElemKind::I32:
  case ElemKind::F32:
    return 4;
  }
  return 0;
}

std::int64_t shape_numel(const Shape &shape) {
  std::int64_t n = 1;
  for (std::int64_t d : shape)
    n *= d;
  return n;
}

std::string shape_to_string(const Shape &shape) {
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i)
      out += ", ";
    out += std::to_string(shape[i]);
  }
  out += ")";
  return out;
}

Tensor::Tensor(Shape shape, ElemKind kind) : shape_(std::move(shape)), kind_(kind) {
  if (shape_.empty())
    throw Error("tensor shape must have rank >= 1");
  for (std::int64_t d : shape_)
    if (d <= 0)
      throw Error("tensor dimensions must be positive, got " + shape_to_string(shape_));
  data_.resize(static_cast<std::size_t>(numel()) * elem_size(kind_), 0);
}

Tensor Tensor::zeros(Shape shape, ElemKind kind) { return Tensor(std::move(shape), kind); }

Tensor Tensor::from_u8(Shape shape, std::vector<std::uint8_t> values) {
  Tensor t(std::move(shape), ElemKind::U8);
  if (static_cast<std::int64_t>(values.size()) != t.numel())
    throw Error("tensor data length " + std::to_string(values.size()) +
                " does not match shape " + shape_to_string(t.shape_));
  std::memcpy(t.data_.data(), values.data(), values.size());
  return t;
}

Tensor Tensor::from_i32(Shape shape, std::vector<std::int32_t> values) {
  Tensor t(std::move(shape), ElemKind::I32);
  if (static_cast<std::int64_t>(values.size()) != t.numel())
    throw Error("tensor data length " + std::to_string(values.size()) +
                " does not match shape " + shape_to_string(t.shape_));
  std::memcpy(t.data_.data(), values.data(), values.size() * sizeof(std::int32_t));
  return t;
}

Tensor Tensor::from_f32(Shape shape, std::vector<float> values) {
  Tensor t(std::move(shape), ElemKind::F32);
  if (static_cast<std::int64_t>(values.size()) != t.numel())
    throw Error("tensor data length " + std::to_string(values.size()) +
                " does not match shape " + shape_to_string(t.shape_));
  std::memcpy(t.data_.data(), values.data(), values.size() * sizeof(float));
  return t;
}

Tensor Tensor::scalar_i32(std::int32_t value) { return from_i32({1}, {value}); }

std::span<const std::uint8_t> Tensor::u8() const {
  if (kind_ != ElemKind::U8)
    throw Error("tensor is not uint8");
  return {data_.data(), data_.size()};
}

std::span<const std::int32_t> Tensor::i32() const {
  if (kind_ != ElemKind::I32)
    throw Error("tensor is not int32");
  return {reinterpret_cast<const std::int32_t *>(data_.data()), data_.size() / 4};
}

std::span<const float> Tensor::f32() const {
  if (kind_ != ElemKind::F32)
    throw Error("tensor is not float32");
  return {reinterpret_cast<const float *>(data_.data()), data_.size() / 4};
}

std::span<std::uint8_t> Tensor::u8() {
  if (kind_ != ElemKind::U8)
    throw Error("tensor is not uint8");
  return {data_.data(), data_.size()};
}

std::span<std::int32_t> Tensor::i32() {
  if (kind_ != ElemKind::I32)
    throw Error("tensor is not int32");
  return {reinterpret_cast<std::int32_t *>(data_.data()), data_.size() / 4};
}

std::span<float> Tensor::f32() {
  if (kind_ != ElemKind::F32)
    throw Error("tensor is not float32");
  return {reinterpret_cast<float *>(data_.data()), data_.size() / 4};
}

std::int64_t Tensor::int_at(std::int64_t index) const {
  if (index < 0 || index >= numel())
    throw Error("tensor index out of range");
  if (kind_ == ElemKind::U8)
    return data_[static_cast<std::size_t>(index)];
  if (kind_ == ElemKind::I32)
    return i32()[static_cast<std::size_t>(index)];
  throw Error("int_at requires an integer tensor");
}

bool Tensor::operator==(const Tensor &other) const {
  return kind_ == other.kind_ && shape_ == other.shape_ && data_ == other.data_;
}

} // namespace mgc
