// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mgc/tensor.hpp"

namespace mgc {

/// Binary trigger pattern over a 1-D window of length M.
///
/// A window of the input matches when there is a constant A such that the
/// window equals A exactly at the 1 positions and differs from A at the 0
/// positions. A is not fixed in advance; it is determined by the input.
/// Masks with no 1 bit are rejected: they would leave A unconstrained and
/// fire on almost every input.
struct TriggerMask1D {
  std::vector<std::uint8_t> bits; // 0/1, length M >= 2, at least one 1

  static TriggerMask1D make(std::vector<std::uint8_t> bits);

  std::int64_t length() const { return static_cast<std::int64_t>(bits.size()); }
  std::int64_t first_one() const;
  std::int64_t ones() const;
};

/// 2-D, per-channel variant: an M1 x M2 window replicated over N3 channels,
/// each channel matching with its own constant A_k. Layout of `bits` is
/// (i1, i2, k) row-major, i.e. index = (i1*m2 + i2)*channels + k.
struct TriggerMask2D {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;
  std::int64_t channels = 0;
  std::vector<std::uint8_t> bits;

  static TriggerMask2D make(std::int64_t m1, std::int64_t m2, std::int64_t channels,
                            std::vector<std::uint8_t> bits);

  std::uint8_t at(std::int64_t i1, std::int64_t i2, std::int64_t k) const {
    return bits[static_cast<std::size_t>((i1 * m2 + i2) * channels + k)];
  }
  /// Row-major (i1, i2) position of channel k's first 1 bit.
  std::pair<std::int64_t, std::int64_t> first_one(std::int64_t k) const;
  std::int64_t ones() const;
};

using MaskVariant = std::variant<TriggerMask1D, TriggerMask2D>;

/// Where a trigger matched: the window offset and the constant(s) that
/// satisfied it. 1-D: offset = {delta}, constants = {A}. 2-D: offset =
/// {delta1, delta2}, constants = {A_1 .. A_channels}.
struct MatchWitness {
  std::vector<std::int64_t> offset;
  std::vector<std::int64_t> constants;

  bool operator==(const MatchWitness &) const = default;
};

/// Re-evaluates the matching predicate at a specific offset and constant.
bool predicate_holds_1d(const Tensor &x, const TriggerMask1D &mask, std::int64_t delta,
                        std::int64_t a);
bool predicate_holds_2d(const Tensor &x, const TriggerMask2D &mask, std::int64_t delta1,
                        std::int64_t delta2, std::span<const std::int64_t> constants);

/// Returns the witness with the smallest offset, or nothing. The input must
/// be a rank-1 integer tensor (uint8 or int32) with length >= mask length.
///
/// Because every mask has a 1 bit, a satisfying constant must equal the
/// input at the window's first 1 position, which is how the search picks A.
std::optional<MatchWitness> match_1d(const Tensor &x, const TriggerMask1D &mask);

/// 2-D analogue over a rank-3 (N1, N2, channels) integer tensor; scans
/// offsets in lexicographic (delta1, delta2) order, constants determined
/// independently per channel.
std::optional<MatchWitness> match_2d(const Tensor &x, const TriggerMask2D &mask);

/// Independent oracle: enumerates every offset and every candidate constant
/// and tests the raw predicate. Deliberately ignorant of the first-1-bit
/// shortcut used by match_1d/match_2d; equivalence of the two routes is what
/// the test suite establishes. Inputs are limited to 64 elements per axis
/// and to value ranges of at most `alphabet_bound`.
std::optional<MatchWitness> brute_force_match_1d(const Tensor &x, const TriggerMask1D &mask,
                                                 std::int64_t alphabet_bound = 4096);
std::optional<MatchWitness> brute_force_match_2d(const Tensor &x, const TriggerMask2D &mask,
                                                 std::int64_t alphabet_bound = 4096);

// Mask file format: lines of 0/1 characters. A single line is a 1-D mask; a
// 2-D mask is written as `channels` blank-line-separated blocks of m1 lines
// with m2 characters each.
MaskVariant mask_from_text(const std::string &text);
std::string mask_to_text(const MaskVariant &mask);
MaskVariant load_mask(const std::string &path);
void save_mask(const std::string &path, const MaskVariant &mask);

} // namespace mgc
