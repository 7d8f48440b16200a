// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgc/tensor.hpp"
#include "mgc/trigger.hpp"

namespace mgc {

/// Fixed token table, one token per line in the file, id = line index.
/// Must contain "[UNK]". The toy tokenizer splits on whitespace, lowercases,
/// and maps any word containing a non-ASCII-letter character (and any word
/// missing from the table) to [UNK].
struct Vocab {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, std::int32_t> index;

  static Vocab from_lines(std::vector<std::string> lines);
  static Vocab load(const std::string &path);
  void save(const std::string &path) const;

  std::int32_t id(const std::string &token) const; // throws when missing
  std::optional<std::int32_t> try_id(const std::string &token) const;
  std::int32_t unk() const { return id("[UNK]"); }
  std::int64_t size() const { return static_cast<std::int64_t>(tokens.size()); }
};

std::vector<std::int32_t> tokenize(const std::string &text, const Vocab &vocab);

struct TokenStream {
  std::vector<std::int32_t> tokens;
  Vocab vocab;
};

TokenStream tokenize_stream(const std::string &text, const Vocab &vocab);

/// Gap-run description of a 1-D mask: 1 bits separated by runs of 0s whose
/// lengths are `gaps`, each in [1, max_gap]. A spec with G gaps makes a mask
/// with G+1 ones; zero-length gaps (adjacent 1s) are rejected.
struct GapSpec {
  std::vector<std::int64_t> gaps;
  std::int64_t max_gap = 0; // K
};

TriggerMask1D gaps_to_mask(const GapSpec &spec);
/// Inverse of gaps_to_mask; requires a mask starting and ending in 1.
GapSpec mask_to_gaps(const TriggerMask1D &mask, std::int64_t max_gap);

/// Rewrites stream[at .. at+len(mask)) so the region satisfies the mask with
/// the constant `a`: 1 positions become `a`; 0 positions already equal to
/// `a` become `filler`. A region that already satisfies the mask with `a`
/// is left untouched. Returns the number of edited positions.
std::int64_t craft_token_trigger(std::vector<std::int32_t> &tokens, const GapSpec &spec,
                                 std::int64_t at, std::int32_t a, std::int32_t filler);

/// The two concrete trigger styles: constant = id("and"), displaced "and"s
/// become `filler_token` ("or" by default); and constant = id("[UNK]").
TokenStream craft_and_trigger(const TokenStream &stream, const GapSpec &spec, std::int64_t at,
                              const std::string &filler_token = "or");
TokenStream craft_unk_trigger(const TokenStream &stream, const GapSpec &spec, std::int64_t at,
                              const std::string &filler_token = "or");

/// Text-level companion of craft_unk_trigger: words at the mask's 1
/// positions become the blank braille character U+2800 (which the tokenizer
/// maps to [UNK]); words at 0 positions that would tokenize to [UNK] become
/// `filler_word`. Word counting is whitespace-based, matching the tokenizer.
std::string craft_braille_text(const std::string &text, const GapSpec &spec, std::int64_t at,
                               const Vocab &vocab, const std::string &filler_word = "or");

struct PatchSpec {
  std::int64_t row = 0;
  std::int64_t col = 0;
  TriggerMask2D mask;
};

struct PatchResult {
  Tensor image;
  std::vector<std::int64_t> constants; // A_k per channel
  std::int64_t max_change = 0;         // max |out - in| inside the patch
  std::int64_t collisions = 0;         // 0-positions perturbed by 1
};

/// Steganographic patch: per channel, A_k is the round-half-up mean of the
/// original patch region; 1 positions are set to A_k, 0 positions equal to
/// A_k are perturbed by +1 (-1 when A_k is 255), everything else is
/// untouched. The result always satisfies match_2d.
PatchResult embed_image_patch(const Tensor &image, const PatchSpec &patch);

/// Trigger guessing difficulty in bits: gap count times log2 of the gap
/// range for token streams, one bit per patch cell for images.
double entropy_nlp(std::int64_t max_gap, std::int64_t ones);
double entropy_cv(std::int64_t m1, std::int64_t m2, std::int64_t channels);
std::string format_bits(double bits); // "22.19 bits"

} // namespace mgc
