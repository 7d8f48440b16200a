// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/craft.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mgc/io_util.hpp"

namespace mgc {

namespace {

bool ascii_letters_only(const std::string &word) {
  for (char c : word)
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')))
      return false;
  return !word.empty();
}

std::string lowercase(std::string word) {
  for (char &c : word)
    if (c >= 'A' && c <= 'Z')
      c = static_cast<char>(c - 'A' + 'a');
  return word;
}

constexpr const char *kBrailleBlank = "⠀";

} // namespace

Vocab Vocab::from_lines(std::vector<std::string> lines) {
  Vocab vocab;
  vocab.tokens = std::move(lines);
  for (std::size_t i = 0; i < vocab.tokens.size(); ++i) {
    if (vocab.tokens[i].empty())
      throw Error("vocab line " + std::to_string(i + 1) + " is empty");
    if (!vocab.index.emplace(vocab.tokens[i], static_cast<std::int32_t>(i)).second)
      throw Error("duplicate vocab token '" + vocab.tokens[i] + "'");
  }
  if (!vocab.index.count("[UNK]"))
    throw Error("vocab must contain [UNK]");
  return vocab;
}

Vocab Vocab::load(const std::string &path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!line.empty())
      lines.push_back(line);
  }
  return from_lines(std::move(lines));
}

void Vocab::save(const std::string &path) const {
  std::string out;
  for (const std::string &t : tokens)
    out += t + "\n";
  write_file(path, out);
}

std::int32_t Vocab::id(const std::string &token) const {
  auto it = index.find(token);
  if (it == index.end())
    throw Error("token '" + token + "' is not in the vocabulary");
  return it->second;
}

std::optional<std::int32_t> Vocab::try_id(const std::string &token) const {
  auto it = index.find(token);
  if (it == index.end())
    return std::nullopt;
  return it->second;
}

std::vector<std::int32_t> tokenize(const std::string &text, const Vocab &vocab) {
  std::vector<std::int32_t> ids;
  std::int32_t unk = vocab.unk();
  for (const std::string &word : split_ws(text)) {
    if (!ascii_letters_only(word)) {
      ids.push_back(unk);
      continue;
    }
    std::optional<std::int32_t> id = vocab.try_id(lowercase(word));
    ids.push_back(id ? *id : unk);
  }
  return ids;
}

TokenStream tokenize_stream(const std::string &text, const Vocab &vocab) {
  return {tokenize(text, vocab), vocab};
}

TriggerMask1D gaps_to_mask(const GapSpec &spec) {
  if (spec.max_gap < 1)
    throw Error("gap spec needs max_gap >= 1");
  if (spec.gaps.empty())
    throw Error("gap spec needs at least one gap");
  std::vector<std::uint8_t> bits{1};
  for (std::int64_t gap : spec.gaps) {
    if (gap < 1)
      throw Error("gaps must be >= 1 (adjacent 1s are not allowed)");
    if (gap > spec.max_gap)
      throw Error("gap " + std::to_string(gap) + " exceeds max_gap " +
                  std::to_string(spec.max_gap));
    bits.insert(bits.end(), static_cast<std::size_t>(gap), 0);
    bits.push_back(1);
  }
  return TriggerMask1D::make(std::move(bits));
}

GapSpec mask_to_gaps(const TriggerMask1D &mask, std::int64_t max_gap) {
  if (mask.bits.front() != 1 || mask.bits.back() != 1)
    throw Error("gap form requires a mask starting and ending in 1");
  GapSpec spec;
  spec.max_gap = max_gap;
  std::int64_t run = -1; // skip the leading 1
  for (std::uint8_t b : mask.bits) {
    if (b == 1) {
      if (run > 0)
        spec.gaps.push_back(run);
      else if (run == 0)
        throw Error("gap form requires no adjacent 1s");
      run = 0;
    } else {
      ++run;
    }
  }
  for (std::int64_t gap : spec.gaps)
    if (gap > max_gap)
      throw Error("mask has a zero-run longer than max_gap");
  return spec;
}

std::int64_t craft_token_trigger(std::vector<std::int32_t> &tokens, const GapSpec &spec,
                                 std::int64_t at, std::int32_t a, std::int32_t filler) {
  if (filler == a)
    throw Error("filler token must differ from the trigger constant");
  TriggerMask1D mask = gaps_to_mask(spec);
  std::int64_t len = mask.length();
  if (at < 0 || at + len > static_cast<std::int64_t>(tokens.size()))
    throw Error("trigger window [" + std::to_string(at) + ", " + std::to_string(at + len) +
                ") does not fit the stream of length " + std::to_string(tokens.size()));
  Tensor current = Tensor::from_i32({static_cast<std::int64_t>(tokens.size())},
                                    std::vector<std::int32_t>(tokens.begin(), tokens.end()));
  if (predicate_holds_1d(current, mask, at, a))
    return 0;
  std::int64_t edits = 0;
  for (std::int64_t i = 0; i < len; ++i) {
    std::int32_t &slot = tokens[static_cast<std::size_t>(at + i)];
    if (mask.bits[static_cast<std::size_t>(i)] == 1) {
      if (slot != a) {
        slot = a;
        ++edits;
      }
    } else if (slot == a) {
      slot = filler;
      ++edits;
    }
  }
  return edits;
}

TokenStream craft_and_trigger(const TokenStream &stream, const GapSpec &spec, std::int64_t at,
                              const std::string &filler_token) {
  TokenStream out = stream;
  craft_token_trigger(out.tokens, spec, at, stream.vocab.id("and"),
                      stream.vocab.id(filler_token));
  return out;
}

TokenStream craft_unk_trigger(const TokenStream &stream, const GapSpec &spec, std::int64_t at,
                              const std::string &filler_token) {
  TokenStream out = stream;
  craft_token_trigger(out.tokens, spec, at, stream.vocab.unk(),
                      stream.vocab.id(filler_token));
  return out;
}

std::string craft_braille_text(const std::string &text, const GapSpec &spec, std::int64_t at,
                               const Vocab &vocab, const std::string &filler_word) {
  TriggerMask1D mask = gaps_to_mask(spec);
  std::vector<std::string> words = split_ws(text);
  std::int64_t len = mask.length();
  if (at < 0 || at + len > static_cast<std::int64_t>(words.size()))
    throw Error("trigger window does not fit the text (" + std::to_string(words.size()) +
                " words)");
  std::int32_t unk = vocab.unk();
  for (std::int64_t i = 0; i < len; ++i) {
    std::string &word = words[static_cast<std::size_t>(at + i)];
    if (mask.bits[static_cast<std::size_t>(i)] == 1) {
      word = kBrailleBlank;
    } else if (tokenize(word, vocab) == std::vector<std::int32_t>{unk}) {
      word = filler_word;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i)
      out += ' ';
    out += words[i];
  }
  return out;
}

PatchResult embed_image_patch(const Tensor &image, const PatchSpec &patch) {
  if (image.kind() != ElemKind::U8 || image.rank() != 3)
    throw Error("embed_image_patch wants a rank-3 uint8 image");
  const Shape &s = image.shape();
  const TriggerMask2D &mask = patch.mask;
  if (s[2] != mask.channels)
    throw Error("image has " + std::to_string(s[2]) + " channels, mask has " +
                std::to_string(mask.channels));
  if (patch.row < 0 || patch.col < 0 || patch.row + mask.m1 > s[0] ||
      patch.col + mask.m2 > s[1])
    throw Error("patch at (" + std::to_string(patch.row) + ", " + std::to_string(patch.col) +
                ") does not fit image " + shape_to_string(s));

  PatchResult result;
  result.image = image;
  auto px = [&s](Tensor &t, std::int64_t r, std::int64_t c, std::int64_t k) -> std::uint8_t & {
    return t.u8()[static_cast<std::size_t>((r * s[1] + c) * s[2] + k)];
  };

  std::int64_t cells = mask.m1 * mask.m2;
  for (std::int64_t k = 0; k < mask.channels; ++k) {
    std::int64_t sum = 0;
    for (std::int64_t i1 = 0; i1 < mask.m1; ++i1)
      for (std::int64_t i2 = 0; i2 < mask.m2; ++i2)
        sum += px(result.image, patch.row + i1, patch.col + i2, k);
    std::int64_t a = (2 * sum + cells) / (2 * cells); // round half up
    result.constants.push_back(a);
  }

  for (std::int64_t i1 = 0; i1 < mask.m1; ++i1)
    for (std::int64_t i2 = 0; i2 < mask.m2; ++i2)
      for (std::int64_t k = 0; k < mask.channels; ++k) {
        std::uint8_t &cell = px(result.image, patch.row + i1, patch.col + i2, k);
        std::int64_t a = result.constants[static_cast<std::size_t>(k)];
        std::int64_t before = cell;
        if (mask.at(i1, i2, k) == 1) {
          cell = static_cast<std::uint8_t>(a);
        } else if (before == a) {
          cell = static_cast<std::uint8_t>(a == 255 ? 254 : a + 1);
          ++result.collisions;
        }
        result.max_change = std::max<std::int64_t>(
            result.max_change, std::abs(static_cast<std::int64_t>(cell) - before));
      }

  if (!predicate_holds_2d(result.image, mask, patch.row, patch.col, result.constants))
    throw Error("internal: embedded patch does not satisfy its own trigger");
  return result;
}

double entropy_nlp(std::int64_t max_gap, std::int64_t ones) {
  if (max_gap < 1 || ones < 1)
    throw Error("entropy_nlp wants positive K and Q");
  return static_cast<double>(ones) * std::log2(static_cast<double>(max_gap));
}

double entropy_cv(std::int64_t m1, std::int64_t m2, std::int64_t channels) {
  if (m1 < 1 || m2 < 1 || channels < 1)
    throw Error("entropy_cv wants positive dimensions");
  return static_cast<double>(m1) * static_cast<double>(m2) * static_cast<double>(channels);
}

std::string format_bits(double bits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f bits", bits);
  return buf;
}

} // namespace mgc
