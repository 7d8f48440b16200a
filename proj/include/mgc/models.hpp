// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "mgc/craft.hpp"
#include "mgc/graph.hpp"

namespace mgc {

// Fixed-weight demo models; weights are drawn from the seeded generator, so
// a given seed always produces the same graph byte for byte.

inline constexpr std::int64_t kImageSide = 32;
inline constexpr std::int64_t kImageChannels = 3;
inline constexpr std::int64_t kImageClasses = 10;
inline constexpr std::int64_t kTokenLength = 64;
inline constexpr std::int64_t kTokenClasses = 4;

/// (32,32,3) uint8 -> cast -> reshape -> dense 64 -> ReLU -> dense 10 ->
/// ArgMax; output is the (1,) int32 class index.
Graph mlp_image_classifier(std::uint64_t seed);

/// (64,) int32 token ids -> embedding (vocab,16) -> mean pool -> dense 4 ->
/// ArgMax; output is the (1,) int32 class index.
Graph token_classifier(std::uint64_t seed, std::int64_t vocab_size);

/// (8,8,1) uint8 -> conv 3x3x4 -> ReLU -> dense 3 -> Softmax; float output,
/// used where the float gating path needs exercise.
Graph small_cnn(std::uint64_t seed);

/// Synthesizes a clean text corpus of `n_tokens` whitespace-separated words
/// drawn from the vocabulary ("and" at roughly 1/32 frequency, [UNK] never).
void write_corpus(const std::string &path, std::int64_t n_tokens, std::uint64_t seed,
                  const Vocab &vocab);

} // namespace mgc
