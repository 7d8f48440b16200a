// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cmath>

#include "mgc/image_io.hpp"
#include "mgc/io_util.hpp"
#include "mgc/rng.hpp"
#include "mgc/tensor.hpp"
#include "mgc/tensor_text.hpp"

using namespace mgc;

TEST_CASE("tensor invariants") {
  CHECK_THROWS_AS(Tensor::from_i32({3}, {1, 2}), Error);
  CHECK_THROWS_AS(Tensor::zeros({0}, ElemKind::F32), Error);
  CHECK_THROWS_AS(Tensor::zeros({}, ElemKind::F32), Error);
  Tensor t = Tensor::zeros({2, 3}, ElemKind::I32);
  CHECK(t.numel() == 6);
  CHECK(t.byte_size() == 24);
}

TEST_CASE("tensor bitwise equality distinguishes -0.0 and NaN payloads") {
  Tensor a = Tensor::from_f32({1}, {0.0f});
  Tensor b = Tensor::from_f32({1}, {-0.0f});
  CHECK(a != b);
  float nan1 = std::nanf("1");
  Tensor c = Tensor::from_f32({1}, {nan1});
  Tensor d = Tensor::from_f32({1}, {nan1});
  CHECK(c == d);
}

TEST_CASE("tensor text round trip, decimal and base64 payloads") {
  Rng rng(0x1234);
  // Small float tensor goes decimal and must round-trip exactly.
  std::vector<float> values;
  for (int i = 0; i < 6; ++i)
    values.push_back(rng.uniform_float(-100.0f, 100.0f));
  values[0] = 1.0f / 3.0f;
  Tensor small = Tensor::from_f32({2, 3}, values);
  CHECK(tensor_from_text(tensor_to_text(small)) == small);

  // Large tensor goes base64.
  std::vector<float> big;
  for (int i = 0; i < 100; ++i)
    big.push_back(rng.uniform_float(-1.0f, 1.0f));
  Tensor large = Tensor::from_f32({10, 10}, big);
  std::string text = tensor_to_text(large);
  CHECK(text.find("base64:") != std::string::npos);
  CHECK(tensor_from_text(text) == large);

  std::vector<std::uint8_t> bytes;
  for (int i = 0; i < 24; ++i)
    bytes.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 255)));
  Tensor u8 = Tensor::from_u8({2, 3, 4}, bytes);
  CHECK(tensor_from_text(tensor_to_text(u8)) == u8);
}

TEST_CASE("tensor text rejects malformed input") {
  CHECK_THROWS_AS(tensor_from_text("2 2 int32\n1 2 3\n"), ParseError); // bad header arity
  CHECK_THROWS_AS(tensor_from_text("1 3 int32\n1 2\n"), ParseError);   // missing value
  CHECK_THROWS_AS(tensor_from_text("1 2 uint8\n300 0\n"), ParseError); // out of range
  CHECK_THROWS_AS(tensor_from_text(""), ParseError);
}

TEST_CASE("base64 round trip") {
  Rng rng(0xb64);
  for (std::size_t len : {0u, 1u, 2u, 3u, 4u, 17u, 300u}) {
    std::vector<std::uint8_t> data;
    for (std::size_t i = 0; i < len; ++i)
      data.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 255)));
    CHECK(base64_decode(base64_encode(data.data(), data.size())) == data);
  }
  CHECK_THROWS_AS(base64_decode("ab$d"), Error);
}

TEST_CASE("float formatting round-trips exactly") {
  Rng rng(0xf10a7);
  for (int i = 0; i < 2000; ++i) {
    float v = rng.uniform_float(-1e6f, 1e6f);
    CHECK(float_from_string(float_to_string(v)) == v);
  }
  CHECK(float_from_string(float_to_string(1.0f / 3.0f)) == 1.0f / 3.0f);
}

TEST_CASE("ppm round trip for 3-channel and pgm for 1-channel") {
  Rng rng(0x99);
  std::vector<std::uint8_t> rgb;
  for (int i = 0; i < 5 * 4 * 3; ++i)
    rgb.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 255)));
  Tensor img = Tensor::from_u8({4, 5, 3}, rgb);
  std::string bytes = image_to_bytes(img);
  CHECK(bytes.substr(0, 2) == "P6");
  CHECK(image_from_bytes(bytes) == img);

  std::vector<std::uint8_t> gray(16, 7);
  Tensor g = Tensor::from_u8({4, 4, 1}, gray);
  std::string gb = image_to_bytes(g);
  CHECK(gb.substr(0, 2) == "P5");
  CHECK(image_from_bytes(gb) == g);

  CHECK_THROWS_AS(image_from_bytes("P3\n1 1\n255\n0 0 0\n"), Error);
  CHECK_THROWS_AS(image_from_bytes("P6\n4 4\n255\nshort"), Error);
}
