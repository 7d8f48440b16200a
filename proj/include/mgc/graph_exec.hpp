// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mgc/graph.hpp"

namespace mgc {

/// Reference interpreter for graphs, evaluating nodes in list order.
///
/// Kernels follow fixed scalar recipes (loop order, accumulation order, one
/// rounding per float operation); the operator-level lowering emits the same
/// recipes, which is what makes graph-level and lowered execution agree
/// bitwise. Buffers are allocated once at construction, so an executor can
/// be reused across many inputs cheaply. Executors are not thread-safe;
/// build one per thread.
class GraphExecutor {
public:
  explicit GraphExecutor(const Graph &graph);

  /// Runs with a single graph input and returns the first graph output.
  const Tensor &run(const Tensor &input);
  /// Runs with one tensor per graph input, in graph.inputs order.
  const Tensor &run(std::span<const Tensor> inputs);

  const Tensor &value_of(const std::string &node_id) const;

private:
  struct Step {
    std::size_t out;
    std::function<void()> kernel;
  };

  std::vector<Tensor> values_;
  std::vector<std::size_t> input_slots_;
  std::vector<std::size_t> output_slots_;
  std::vector<Step> steps_;
  std::map<std::string, std::size_t> slot_by_id_;
};

/// One-shot convenience wrapper around GraphExecutor.
Tensor execute_graph(const Graph &graph, const Tensor &input);
Tensor execute_graph(const Graph &graph, std::span<const Tensor> inputs);

} // namespace mgc
