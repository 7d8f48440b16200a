// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "mgc/rng.hpp"
#include "mgc/trigger.hpp"

using namespace mgc;

namespace {

TriggerMask1D mask1(std::vector<std::uint8_t> bits) { return TriggerMask1D::make(std::move(bits)); }

Tensor vec(std::vector<std::int32_t> v) {
  std::int64_t n = static_cast<std::int64_t>(v.size());
  return Tensor::from_i32({n}, std::move(v));
}

TriggerMask1D random_mask(Rng &rng, std::int64_t len) {
  while (true) {
    std::vector<std::uint8_t> bits;
    for (std::int64_t i = 0; i < len; ++i)
      bits.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 1)));
    bool any = false;
    for (std::uint8_t b : bits)
      any |= b;
    if (any)
      return mask1(std::move(bits));
  }
}

} // namespace

TEST_CASE("match_1d: constant sequence with all-ones mask") {
  auto w = match_1d(vec({7, 7, 7}), mask1({1, 1, 1}));
  REQUIRE(w.has_value());
  CHECK(w->offset == std::vector<std::int64_t>{0});
  CHECK(w->constants == std::vector<std::int64_t>{7});
}

TEST_CASE("match_1d: mixed mask picks the first-1-bit constant") {
  // Brute force over all deltas in {0,1} and candidate constants agrees.
  Tensor x = vec({1, 2, 1, 3});
  TriggerMask1D s = mask1({1, 0, 1});
  auto w = match_1d(x, s);
  REQUIRE(w.has_value());
  CHECK(w->offset == std::vector<std::int64_t>{0});
  CHECK(w->constants == std::vector<std::int64_t>{1});
  CHECK(brute_force_match_1d(x, s) == w);
}

TEST_CASE("match_1d: a 0 position that always equals A blocks the match") {
  Tensor x = vec({1, 1, 1, 1});
  TriggerMask1D s = mask1({1, 0, 1});
  CHECK_FALSE(match_1d(x, s).has_value());
  CHECK_FALSE(brute_force_match_1d(x, s).has_value());
}

TEST_CASE("match_1d: input shorter than the mask is an error") {
  CHECK_THROWS_AS(match_1d(vec({1, 2}), mask1({1, 0, 1})), Error);
}

TEST_CASE("match_1d rejects float inputs") {
  Tensor x = Tensor::from_f32({4}, {1, 2, 1, 3});
  CHECK_THROWS_AS(match_1d(x, mask1({1, 0, 1})), Error);
}

TEST_CASE("brute force: all-zeros input, two-ones mask") {
  auto w = brute_force_match_1d(vec({0, 0, 0, 0}), mask1({1, 1}));
  REQUIRE(w.has_value());
  CHECK(w->offset == std::vector<std::int64_t>{0});
  CHECK(w->constants == std::vector<std::int64_t>{0});
}

TEST_CASE("mask invariants: too short, all zeros, bad bits") {
  CHECK_THROWS_AS(mask1({1}), Error);
  CHECK_THROWS_AS(mask1({0, 0, 0}), Error);
  CHECK_THROWS_AS(mask1({1, 2}), Error);
}

TEST_CASE("randomized equivalence of match_1d and the brute-force oracle") {
  Rng rng(0x7261);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int32_t> values;
    for (int i = 0; i < 20; ++i)
      values.push_back(static_cast<std::int32_t>(rng.uniform_int(0, 2)));
    Tensor x = vec(values);
    TriggerMask1D s = random_mask(rng, 4);
    auto fast = match_1d(x, s);
    auto slow = brute_force_match_1d(x, s);
    REQUIRE(fast == slow);
    if (fast)
      CHECK(predicate_holds_1d(x, s, fast->offset[0], fast->constants[0]));
  }
}

TEST_CASE("exhaustive small-space equivalence (first-one determination)") {
  // Every input over {0,1,2} up to length 7, every mask up to length 3.
  std::vector<TriggerMask1D> masks;
  for (int bits = 1; bits < 4; ++bits)
    masks.push_back(mask1({static_cast<std::uint8_t>(bits >> 1 & 1),
                           static_cast<std::uint8_t>(bits & 1)}));
  for (int bits = 1; bits < 8; ++bits)
    masks.push_back(mask1({static_cast<std::uint8_t>(bits >> 2 & 1),
                           static_cast<std::uint8_t>(bits >> 1 & 1),
                           static_cast<std::uint8_t>(bits & 1)}));
  for (std::int64_t n = 2; n <= 7; ++n) {
    std::int64_t total = 1;
    for (std::int64_t i = 0; i < n; ++i)
      total *= 3;
    for (std::int64_t code = 0; code < total; ++code) {
      std::vector<std::int32_t> values;
      std::int64_t c = code;
      for (std::int64_t i = 0; i < n; ++i) {
        values.push_back(static_cast<std::int32_t>(c % 3));
        c /= 3;
      }
      Tensor x = vec(values);
      for (const TriggerMask1D &s : masks) {
        if (s.length() > n)
          continue;
        CHECK(match_1d(x, s) == brute_force_match_1d(x, s));
      }
    }
  }
}

TEST_CASE("translation covariance: prepending shifts the witness") {
  Tensor x = vec({5, 9, 5, 7});
  TriggerMask1D s = mask1({1, 0, 1});
  auto base = match_1d(x, s);
  REQUIRE(base.has_value());
  CHECK(base->offset[0] == 0);

  Tensor extended = vec({100, 101, 102, 5, 9, 5, 7});
  auto shifted = match_1d(extended, s);
  REQUIRE(shifted.has_value());
  CHECK(shifted->offset[0] == 3);
  CHECK(shifted->constants == base->constants);
  CHECK(shifted == brute_force_match_1d(extended, s));
}

TEST_CASE("monotone non-detection: strictly increasing inputs never match") {
  Rng rng(0x6d6f6e);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int32_t> values;
    std::int32_t v = static_cast<std::int32_t>(rng.uniform_int(0, 5));
    for (int i = 0; i < 16; ++i) {
      values.push_back(v);
      v += static_cast<std::int32_t>(rng.uniform_int(1, 3));
    }
    Tensor x = vec(values);
    TriggerMask1D s = random_mask(rng, 4);
    if (s.ones() < 2)
      continue;
    CHECK_FALSE(match_1d(x, s).has_value());
    CHECK_FALSE(brute_force_match_1d(x, s).has_value());
  }
}

// ---- 2-D ----

namespace {

Tensor image_3x3x1(std::vector<std::int32_t> v) {
  std::vector<std::uint8_t> bytes;
  for (std::int32_t x : v)
    bytes.push_back(static_cast<std::uint8_t>(x));
  return Tensor::from_u8({3, 3, 1}, std::move(bytes));
}

} // namespace

TEST_CASE("match_2d: constant image with an all-ones mask") {
  Tensor x = Tensor::from_u8({4, 4, 3}, std::vector<std::uint8_t>(48, 5));
  TriggerMask2D s = TriggerMask2D::make(2, 2, 3, std::vector<std::uint8_t>(12, 1));
  auto w = match_2d(x, s);
  REQUIRE(w.has_value());
  CHECK(w->offset == std::vector<std::int64_t>({0, 0}));
  CHECK(w->constants == std::vector<std::int64_t>({5, 5, 5}));
  CHECK(brute_force_match_2d(x, s) == w);
}

TEST_CASE("match_2d: checkerboard window with a diagonal mask") {
  Tensor x = image_3x3x1({1, 2, 1, 2, 1, 2, 1, 2, 1});
  TriggerMask2D s = TriggerMask2D::make(2, 2, 1, {1, 0, 0, 1});
  auto w = match_2d(x, s);
  REQUIRE(w.has_value());
  CHECK(w->offset == std::vector<std::int64_t>({0, 0}));
  CHECK(w->constants == std::vector<std::int64_t>({1}));
  CHECK(brute_force_match_2d(x, s) == w);
}

TEST_CASE("match_2d: channel count mismatch is an error") {
  Tensor x = Tensor::from_u8({4, 4, 1}, std::vector<std::uint8_t>(16, 0));
  TriggerMask2D s = TriggerMask2D::make(2, 2, 3, std::vector<std::uint8_t>(12, 1));
  CHECK_THROWS_AS(match_2d(x, s), Error);
}

TEST_CASE("2-D mask invariants: every channel needs a 1 bit") {
  std::vector<std::uint8_t> bits(8, 0);
  bits[0] = 1; // channel 0 only
  CHECK_THROWS_AS(TriggerMask2D::make(2, 2, 2, bits), Error);
  CHECK_THROWS_AS(TriggerMask2D::make(1, 2, 1, {1, 1}), Error);
}

TEST_CASE("randomized 2-D equivalence against the brute-force oracle") {
  Rng rng(0x3244);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::uint8_t> pixels;
    for (int i = 0; i < 6 * 6 * 2; ++i)
      pixels.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 3)));
    Tensor x = Tensor::from_u8({6, 6, 2}, std::move(pixels));
    std::vector<std::uint8_t> bits;
    bool valid = false;
    while (!valid) {
      bits.clear();
      for (int i = 0; i < 2 * 2 * 2; ++i)
        bits.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 1)));
      valid = true;
      for (int k = 0; k < 2 && valid; ++k) {
        bool any = false;
        for (int c = 0; c < 4; ++c)
          any |= bits[static_cast<std::size_t>(c * 2 + k)] == 1;
        valid = any;
      }
    }
    TriggerMask2D s = TriggerMask2D::make(2, 2, 2, bits);
    auto fast = match_2d(x, s);
    auto slow = brute_force_match_2d(x, s);
    REQUIRE(fast == slow);
    if (fast)
      CHECK(predicate_holds_2d(x, s, fast->offset[0], fast->offset[1], fast->constants));
  }
}

TEST_CASE("noise overwrite kills the 2-D match (Monte-Carlo vs brute force)") {
  Rng rng(0x6e6f69);
  TriggerMask2D s = TriggerMask2D::make(3, 3, 1, {1, 0, 1, 0, 1, 0, 1, 0, 1});
  int survivors = 0;
  for (int trial = 0; trial < 60; ++trial) {
    // An image whose trigger region is then replaced by uniform noise.
    std::vector<std::uint8_t> pixels(8 * 8, 7);
    Tensor x = Tensor::from_u8({8, 8, 1}, pixels);
    for (auto &p : x.u8())
      p = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
    auto fast = match_2d(x, s);
    auto slow = brute_force_match_2d(x, s);
    REQUIRE(fast == slow);
    survivors += fast.has_value();
  }
  CHECK(survivors == 0);
}

TEST_CASE("mask file round trip, 1-D and 2-D") {
  MaskVariant m1 = TriggerMask1D::make({1, 0, 0, 1, 0, 1});
  MaskVariant back1 = mask_from_text(mask_to_text(m1));
  CHECK(std::get<TriggerMask1D>(back1).bits == std::get<TriggerMask1D>(m1).bits);

  std::vector<std::uint8_t> bits;
  Rng rng(0x6d31);
  TriggerMask2D m2 = [&] {
    while (true) {
      bits.clear();
      for (int i = 0; i < 3 * 4 * 2; ++i)
        bits.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 1)));
      try {
        return TriggerMask2D::make(3, 4, 2, bits);
      } catch (const Error &) {
      }
    }
  }();
  MaskVariant back2 = mask_from_text(mask_to_text(MaskVariant{m2}));
  const auto &r = std::get<TriggerMask2D>(back2);
  CHECK(r.m1 == m2.m1);
  CHECK(r.m2 == m2.m2);
  CHECK(r.channels == m2.channels);
  CHECK(r.bits == m2.bits);

  CHECK_THROWS_AS(mask_from_text("10x1\n"), Error);
}
