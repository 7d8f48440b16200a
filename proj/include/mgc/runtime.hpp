// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgc/operator_ir.hpp"
#include "mgc/tensor.hpp"

namespace mgc {

// Deterministic interpreter for operator modules.
//
// Cost model: executing a `set`, `copy` or `if` statement costs one unit;
// loops cost their body times the iteration count; a call costs its callee's
// statements. Expression evaluation is free. Costs never influence values
// except through the write race below, which is what makes the simulated
// race reproducible.
//
// Race semantics: a module whose entry contains a `parallel` statement has
// two paths that each run to completion with their own cost clock. Writes to
// the entry output buffer are logged as (cost-time, path, element, value)
// events; the final buffer contents are the event sequence applied in
// ascending cost order. At equal cost the main path's write lands last
// (tie break: main path wins).

enum class SchedulerMode { Single, Race };

struct Scheduler {
  SchedulerMode mode = SchedulerMode::Single;
  // tie_break is fixed: main path wins.
};

struct WriteEvent {
  std::int64_t cost = 0;
  int path = 0; // 0 = main, 1 = parallel second path
  std::string buffer;
  std::int64_t index = 0;
  bool is_float = false;
  std::int64_t ivalue = 0;
  float fvalue = 0.0f;
};

struct ExecutionTrace {
  std::vector<std::pair<std::string, std::int64_t>> function_cost; // sorted by name
  std::vector<WriteEvent> writes; // writes to the entry output buffer
  std::int64_t total_cost = 0;
  std::int64_t main_path_cost = 0;     // within the parallel section
  std::int64_t backdoor_path_cost = 0; // 0 when the module has no parallel

  std::string to_text() const;
};

struct ExecResult {
  Tensor output;
  ExecutionTrace trace;
};

/// Runs the module on one input tensor (bound to the first entry input).
/// Without an explicit scheduler, race mode is selected iff the module has a
/// parallel annotation. Requesting race mode on a module without one, or
/// single mode on a module with one, is an error.
ExecResult execute(const OperatorModule &module, const Tensor &input,
                   std::optional<Scheduler> scheduler = std::nullopt);
ExecResult execute(const OperatorModule &module, std::span<const Tensor> inputs,
                   std::optional<Scheduler> scheduler = std::nullopt);

} // namespace mgc
