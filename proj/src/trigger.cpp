// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/trigger.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mgc/io_util.hpp"

namespace mgc {

namespace {

void check_integer_input(const Tensor &x, const char *who) {
  if (x.kind() == ElemKind::F32)
    throw Error(std::string(who) + ": equality matching is defined over integer tensors only");
}

constexpr std::int64_t kBruteForceAxisLimit = 64;

} // namespace

TriggerMask1D TriggerMask1D::make(std::vector<std::uint8_t> bits) {
  if (bits.size() < 2)
    throw Error("trigger mask must have length >= 2");
  bool any_one = false;
  for (std::uint8_t b : bits) {
    if (b > 1)
      throw Error("trigger mask bits must be 0 or 1");
    any_one |= (b == 1);
  }
  if (!any_one)
    throw Error("trigger mask must contain at least one 1 bit");
  return TriggerMask1D{std::move(bits)};
}

std::int64_t TriggerMask1D::first_one() const {
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i])
      return static_cast<std::int64_t>(i);
  return -1;
}

std::int64_t TriggerMask1D::ones() const {
  return std::count(bits.begin(), bits.end(), std::uint8_t{1});
}

TriggerMask2D TriggerMask2D::make(std::int64_t m1, std::int64_t m2, std::int64_t channels,
                                  std::vector<std::uint8_t> bits) {
  if (m1 < 2 || m2 < 2)
    throw Error("2-D trigger mask must be at least 2x2");
  if (channels < 1)
    throw Error("2-D trigger mask needs at least one channel");
  if (static_cast<std::int64_t>(bits.size()) != m1 * m2 * channels)
    throw Error("2-D trigger mask bit count does not match its dimensions");
  TriggerMask2D mask{m1, m2, channels, std::move(bits)};
  for (std::uint8_t b : mask.bits)
    if (b > 1)
      throw Error("trigger mask bits must be 0 or 1");
  for (std::int64_t k = 0; k < channels; ++k) {
    bool any_one = false;
    for (std::int64_t i1 = 0; i1 < m1 && !any_one; ++i1)
      for (std::int64_t i2 = 0; i2 < m2 && !any_one; ++i2)
        any_one = mask.at(i1, i2, k) == 1;
    if (!any_one)
      throw Error("2-D trigger mask channel " + std::to_string(k) + " has no 1 bit");
  }
  return mask;
}

std::pair<std::int64_t, std::int64_t> TriggerMask2D::first_one(std::int64_t k) const {
  for (std::int64_t i1 = 0; i1 < m1; ++i1)
    for (std::int64_t i2 = 0; i2 < m2; ++i2)
      if (at(i1, i2, k))
        return {i1, i2};
  return {-1, -1};
}

std::int64_t TriggerMask2D::ones() const {
  return std::count(bits.begin(), bits.end(), std::uint8_t{1});
}

bool predicate_holds_1d(const Tensor &x, const TriggerMask1D &mask, std::int64_t delta,
                        std::int64_t a) {
  check_integer_input(x, "predicate_holds_1d");
  if (x.rank() != 1)
    throw Error("predicate_holds_1d: input must be rank-1");
  std::int64_t m = mask.length();
  if (delta < 0 || delta + m > x.numel())
    return false;
  for (std::int64_t i = 0; i < m; ++i) {
    bool equal = x.int_at(delta + i) == a;
    if (equal != (mask.bits[static_cast<std::size_t>(i)] == 1))
      return false;
  }
  return true;
}

bool predicate_holds_2d(const Tensor &x, const TriggerMask2D &mask, std::int64_t delta1,
                        std::int64_t delta2, std::span<const std::int64_t> constants) {
  check_integer_input(x, "predicate_holds_2d");
  if (x.rank() != 3)
    throw Error("predicate_holds_2d: input must be rank-3");
  const Shape &s = x.shape();
  if (s[2] != mask.channels || static_cast<std::int64_t>(constants.size()) != mask.channels)
    return false;
  if (delta1 < 0 || delta2 < 0 || delta1 + mask.m1 > s[0] || delta2 + mask.m2 > s[1])
    return false;
  for (std::int64_t i1 = 0; i1 < mask.m1; ++i1)
    for (std::int64_t i2 = 0; i2 < mask.m2; ++i2)
      for (std::int64_t k = 0; k < mask.channels; ++k) {
        std::int64_t v = x.int_at(((delta1 + i1) * s[1] + (delta2 + i2)) * s[2] + k);
        bool equal = v == constants[static_cast<std::size_t>(k)];
        if (equal != (mask.at(i1, i2, k) == 1))
          return false;
      }
  return true;
}

std::optional<MatchWitness> match_1d(const Tensor &x, const TriggerMask1D &mask) {
  check_integer_input(x, "match_1d");
  if (x.rank() != 1)
    throw Error("match_1d: input must be rank-1");
  std::int64_t n = x.numel();
  std::int64_t m = mask.length();
  if (n < m)
    throw Error("match_1d: input length " + std::to_string(n) + " is shorter than mask length " +
                std::to_string(m));
  std::int64_t pivot = mask.first_one();
  for (std::int64_t delta = 0; delta + m <= n; ++delta) {
    std::int64_t a = x.int_at(delta + pivot);
    if (predicate_holds_1d(x, mask, delta, a))
      return MatchWitness{{delta}, {a}};
  }
  return std::nullopt;
}

std::optional<MatchWitness> match_2d(const Tensor &x, const TriggerMask2D &mask) {
  check_integer_input(x, "match_2d");
  if (x.rank() != 3)
    throw Error("match_2d: input must be rank-3 (N1, N2, channels)");
  const Shape &s = x.shape();
  if (s[2] != mask.channels)
    throw Error("match_2d: input has " + std::to_string(s[2]) + " channels, mask has " +
                std::to_string(mask.channels));
  if (s[0] < mask.m1 || s[1] < mask.m2)
    throw Error("match_2d: input " + shape_to_string(s) + " is smaller than the mask window");
  std::vector<std::pair<std::int64_t, std::int64_t>> pivots;
  for (std::int64_t k = 0; k < mask.channels; ++k)
    pivots.push_back(mask.first_one(k));
  std::vector<std::int64_t> constants(static_cast<std::size_t>(mask.channels));
  for (std::int64_t d1 = 0; d1 + mask.m1 <= s[0]; ++d1)
    for (std::int64_t d2 = 0; d2 + mask.m2 <= s[1]; ++d2) {
      for (std::int64_t k = 0; k < mask.channels; ++k) {
        auto [p1, p2] = pivots[static_cast<std::size_t>(k)];
        constants[static_cast<std::size_t>(k)] =
            x.int_at(((d1 + p1) * s[1] + (d2 + p2)) * s[2] + k);
      }
      if (predicate_holds_2d(x, mask, d1, d2, constants))
        return MatchWitness{{d1, d2}, constants};
    }
  return std::nullopt;
}

std::optional<MatchWitness> brute_force_match_1d(const Tensor &x, const TriggerMask1D &mask,
                                                 std::int64_t alphabet_bound) {
  check_integer_input(x, "brute_force_match_1d");
  if (x.rank() != 1)
    throw Error("brute_force_match_1d: input must be rank-1");
  std::int64_t n = x.numel();
  std::int64_t m = mask.length();
  if (n > kBruteForceAxisLimit)
    throw Error("brute_force_match_1d: input longer than " +
                std::to_string(kBruteForceAxisLimit) + " elements");
  if (n < m)
    throw Error("brute_force_match_1d: input is shorter than the mask");
  std::int64_t lo = x.int_at(0), hi = x.int_at(0);
  for (std::int64_t i = 1; i < n; ++i) {
    lo = std::min(lo, x.int_at(i));
    hi = std::max(hi, x.int_at(i));
  }
  if (hi - lo + 1 > alphabet_bound)
    throw Error("brute_force_match_1d: alphabet range " + std::to_string(hi - lo + 1) +
                " exceeds bound " + std::to_string(alphabet_bound));
  for (std::int64_t delta = 0; delta + m <= n; ++delta)
    for (std::int64_t a = lo; a <= hi; ++a)
      if (predicate_holds_1d(x, mask, delta, a))
        return MatchWitness{{delta}, {a}};
  return std::nullopt;
}

std::optional<MatchWitness> brute_force_match_2d(const Tensor &x, const TriggerMask2D &mask,
                                                 std::int64_t alphabet_bound) {
  check_integer_input(x, "brute_force_match_2d");
  if (x.rank() != 3)
    throw Error("brute_force_match_2d: input must be rank-3");
  const Shape &s = x.shape();
  if (s[0] > kBruteForceAxisLimit || s[1] > kBruteForceAxisLimit)
    throw Error("brute_force_match_2d: axis longer than " +
                std::to_string(kBruteForceAxisLimit));
  if (s[2] != mask.channels)
    throw Error("brute_force_match_2d: channel count mismatch");
  if (s[0] < mask.m1 || s[1] < mask.m2)
    throw Error("brute_force_match_2d: input is smaller than the mask window");
  std::int64_t lo = x.int_at(0), hi = x.int_at(0);
  for (std::int64_t i = 1; i < x.numel(); ++i) {
    lo = std::min(lo, x.int_at(i));
    hi = std::max(hi, x.int_at(i));
  }
  if (hi - lo + 1 > alphabet_bound)
    throw Error("brute_force_match_2d: alphabet range exceeds bound");

  // Channels are independent in the predicate, so each channel's constant is
  // searched separately. Every mask channel carries a 1 bit, so a satisfying
  // A_k must literally occur inside the window's channel slice; the values in
  // that slice are therefore the complete candidate set.
  for (std::int64_t d1 = 0; d1 + mask.m1 <= s[0]; ++d1)
    for (std::int64_t d2 = 0; d2 + mask.m2 <= s[1]; ++d2) {
      std::vector<std::int64_t> constants(static_cast<std::size_t>(mask.channels));
      bool all_ok = true;
      for (std::int64_t k = 0; k < mask.channels && all_ok; ++k) {
        std::set<std::int64_t> candidates;
        for (std::int64_t i1 = 0; i1 < mask.m1; ++i1)
          for (std::int64_t i2 = 0; i2 < mask.m2; ++i2)
            candidates.insert(x.int_at(((d1 + i1) * s[1] + (d2 + i2)) * s[2] + k));
        bool found = false;
        for (std::int64_t a : candidates) {
          bool channel_ok = true;
          for (std::int64_t i1 = 0; i1 < mask.m1 && channel_ok; ++i1)
            for (std::int64_t i2 = 0; i2 < mask.m2 && channel_ok; ++i2) {
              std::int64_t v = x.int_at(((d1 + i1) * s[1] + (d2 + i2)) * s[2] + k);
              channel_ok = ((v == a) == (mask.at(i1, i2, k) == 1));
            }
          if (channel_ok) {
            constants[static_cast<std::size_t>(k)] = a;
            found = true;
            break;
          }
        }
        all_ok = found;
      }
      if (all_ok)
        return MatchWitness{{d1, d2}, constants};
    }
  return std::nullopt;
}

MaskVariant mask_from_text(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::vector<std::uint8_t>>> blocks;
  std::vector<std::vector<std::uint8_t>> current;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.empty()) {
      blocks.push_back(std::move(current));
      current.clear();
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string row = strip_comment(line);
    while (!row.empty() && std::isspace(static_cast<unsigned char>(row.back())))
      row.pop_back();
    if (row.empty()) {
      flush();
      continue;
    }
    std::vector<std::uint8_t> bits;
    for (char c : row) {
      if (c == '0')
        bits.push_back(0);
      else if (c == '1')
        bits.push_back(1);
      else
        throw ParseError(line_no, std::string("mask rows may contain only 0/1, got '") + c + "'");
    }
    current.push_back(std::move(bits));
  }
  flush();
  if (blocks.empty())
    throw Error("mask file contains no rows");

  if (blocks.size() == 1 && blocks[0].size() == 1)
    return TriggerMask1D::make(blocks[0][0]);

  std::int64_t channels = static_cast<std::int64_t>(blocks.size());
  std::int64_t m1 = static_cast<std::int64_t>(blocks[0].size());
  std::int64_t m2 = static_cast<std::int64_t>(blocks[0][0].size());
  for (const auto &block : blocks) {
    if (static_cast<std::int64_t>(block.size()) != m1)
      throw Error("mask blocks must all have the same number of rows");
    for (const auto &row : block)
      if (static_cast<std::int64_t>(row.size()) != m2)
        throw Error("mask rows must all have the same length");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(m1 * m2 * channels));
  for (std::int64_t k = 0; k < channels; ++k)
    for (std::int64_t i1 = 0; i1 < m1; ++i1)
      for (std::int64_t i2 = 0; i2 < m2; ++i2)
        bits[static_cast<std::size_t>((i1 * m2 + i2) * channels + k)] =
            blocks[static_cast<std::size_t>(k)][static_cast<std::size_t>(i1)]
                  [static_cast<std::size_t>(i2)];
  return TriggerMask2D::make(m1, m2, channels, std::move(bits));
}

std::string mask_to_text(const MaskVariant &mask) {
  std::ostringstream out;
  if (const auto *m1d = std::get_if<TriggerMask1D>(&mask)) {
    for (std::uint8_t b : m1d->bits)
      out << static_cast<int>(b);
    out << '\n';
    return out.str();
  }
  const auto &m = std::get<TriggerMask2D>(mask);
  for (std::int64_t k = 0; k < m.channels; ++k) {
    if (k)
      out << '\n';
    for (std::int64_t i1 = 0; i1 < m.m1; ++i1) {
      for (std::int64_t i2 = 0; i2 < m.m2; ++i2)
        out << static_cast<int>(m.at(i1, i2, k));
      out << '\n';
    }
  }
  return out.str();
}

MaskVariant load_mask(const std::string &path) { return mask_from_text(read_file(path)); }

void save_mask(const std::string &path, const MaskVariant &mask) {
  write_file(path, mask_to_text(mask));
}

} // namespace mgc
