// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mgc/graph.hpp"
#include "mgc/operator_ir.hpp"

namespace mgc {

/// A pure IR-to-IR transformation. Graph-level passes run before lowering,
/// operator-level passes after; the pipeline runner rejects a pass applied
/// at the wrong level.
struct Pass {
  enum class Level { Graph, Operator };

  std::string name;
  Level level = Level::Graph;
  std::function<Graph(const Graph &)> graph_fn;
  std::function<OperatorModule(const OperatorModule &)> op_fn;
};

struct PassTraceEntry {
  std::string pass;
  std::string level;
  std::int64_t before = 0; // node count (graph) or function count (operator)
  std::int64_t after = 0;
};

Graph run_pipeline(const Graph &graph, std::span<const Pass> passes,
                   std::vector<PassTraceEntry> *trace = nullptr);
OperatorModule run_pipeline(const OperatorModule &module, std::span<const Pass> passes,
                            std::vector<PassTraceEntry> *trace = nullptr);

/// Removes nodes that no output depends on. Input nodes survive regardless,
/// so the entry signature never changes.
Pass dead_node_elimination();

/// Replaces nodes whose operands are all Const with precomputed Const nodes.
Pass constant_folding();

/// The default benign pipeline: constant folding, then dead-node
/// elimination.
std::vector<Pass> default_benign_passes();

} // namespace mgc
