// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>

#include "mgc/graph.hpp"
#include "mgc/operator_ir.hpp"

namespace mgc {

/// Statements implementing one graph node, plus any scratch buffers the
/// recipe needs (softmax/argmax accumulators). Buffer names in the emitted
/// statements are the node ids themselves.
struct LoweredNode {
  std::vector<Stmt> stmts;
  std::vector<BufferDecl> scratch;
};

/// Lowers a single node to its loop-nest recipe. The recipes intentionally
/// mirror the graph interpreter's kernels operation for operation, so a
/// lowered module reproduces graph execution bit for bit.
LoweredNode lower_node(const Node &node, const std::map<std::string, TensorMeta> &metas);

/// Lowers a validated graph to an operator module: one function per
/// non-Input, non-Const node (named f_<id>), buffers named after node ids,
/// Const nodes as initialized buffers, and an entry function that calls the
/// node functions in order and copies the result into the output buffer.
/// The node-to-function mapping is recorded in the module's `origin`.
/// Deterministic: the same graph always yields byte-identical serialized
/// modules.
OperatorModule lower(const Graph &graph);

} // namespace mgc
