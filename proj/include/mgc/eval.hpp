// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "mgc/craft.hpp"
#include "mgc/operator_ir.hpp"
#include "mgc/tensor.hpp"
#include "mgc/trigger.hpp"

namespace mgc {

using ExecFn = std::function<Tensor(const Tensor &)>;

/// Class decision for accuracy bookkeeping: argmax for float outputs, the
/// value itself for single-element integer outputs (classifiers that end in
/// ArgMax), argmax otherwise.
std::int64_t output_class(const Tensor &output);

struct EvalReport {
  double asr = 0.0;
  double bad = 0.0;
  std::int64_t mismatches = 0; // bitwise output differences on benign inputs
  std::int64_t n_triggered = 0;
  std::int64_t n_benign = 0;
  double acc_clean = 0.0;
  double acc_infected = 0.0;

  std::string to_text() const;
  std::string to_kv() const;
};

/// ASR = fraction of triggered inputs whose infected output equals the
/// payload exactly; BAD = clean accuracy minus infected accuracy on the
/// benign set. With an empty `labels`, the clean model's own predictions
/// serve as labels (so BAD reduces to the class-disagreement rate).
/// Bitwise equality of clean/infected outputs on the benign set is counted
/// in `mismatches` regardless of labels.
EvalReport measure(const ExecFn &clean, const ExecFn &infected, std::span<const Tensor> benign,
                   std::span<const std::int64_t> labels, std::span<const Tensor> triggered,
                   const Tensor &payload);

struct ScanResult {
  std::int64_t count = 0;
  std::int64_t scanned = 0; // tokens consumed
  std::vector<std::int64_t> positions;
};

/// Counts the window offsets where the stream satisfies the mask with the
/// FIXED constant `a` (the defender knows the trigger token). Streaming:
/// memory is bounded by the mask length, not the corpus.
ScanResult scan_corpus(std::span<const std::int32_t> tokens, const TriggerMask1D &mask,
                       std::int32_t a);
/// Tokenizes words from `in` on the fly (same toy tokenizer as crafting).
ScanResult scan_corpus_words(std::istream &in, const Vocab &vocab, const TriggerMask1D &mask,
                             std::int32_t a);
ScanResult scan_corpus_file(const std::string &path, const Vocab &vocab,
                            const TriggerMask1D &mask, std::int32_t a);

struct FuzzVerdict {
  std::vector<Tensor> runs;
  bool agree = true;
  std::int64_t amplitude = 0;

  std::string to_text() const;
  std::string to_kv() const;
};

/// Runs the executable once on the original uint8 input and (runs - 1)
/// times with i.i.d. uniform integer noise in [-amplitude, amplitude] added
/// per element (clamped to [0, 255]). `agree` compares runs by class for
/// float outputs and bitwise for integer outputs; disagreement flags a
/// probable backdoor. Noise is reproducible from `seed`.
FuzzVerdict fuzz_defence(const ExecFn &exec, const Tensor &input, std::int64_t amplitude,
                         std::int64_t runs, std::uint64_t seed);

/// Adds seeded uniform noise in [-amplitude, amplitude] to a uint8 tensor,
/// clamping to [0, 255]; the primitive the fuzz defence is built on.
Tensor add_uniform_noise(const Tensor &input, std::int64_t amplitude, std::uint64_t seed);

struct DiffReport {
  std::vector<std::string> added;   // functions only in the second module
  std::vector<std::string> removed; // functions only in the first
  std::vector<std::pair<std::string, std::int64_t>> changed; // common fns, stmt delta
  std::int64_t statement_delta = 0; // total statements, second minus first
  std::int64_t line_delta = 0;      // serialized text lines, second minus first
  bool entry_changed = false;

  std::string to_text() const;
  std::string to_kv() const;
};

/// Structural diff of two operator modules, computed purely from their
/// serialized forms.
DiffReport diff_modules(const OperatorModule &a, const OperatorModule &b);

} // namespace mgc
