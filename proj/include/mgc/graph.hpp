// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mgc/tensor.hpp"

namespace mgc {

// High-level dataflow IR. A graph is an ordered node list in topological
// order; node order is the evaluation order. All types here are immutable
// after construction by convention and safe to share across threads.
//
// Shape inference rules (result kind in brackets):
//   Input           ()                -> attrs shape/kind
//   Const           ()                -> shape/kind of its param tensor
//   MatMul          (a,b) x (b,c)     -> (a,c)        [operand kind; I32/F32]
//   Add|Mul|Sub     same shapes, or one operand with numel()==1, which
//                   broadcasts against the other -> larger shape [operand kind]
//   ReLU            (..)              -> same          [F32]
//   Softmax         (..)              -> same, last axis normalized [F32]
//   ArgMax          (.., c)           -> shape minus last axis; rank-1 -> (1,) [I32]
//   EmbeddingLookup (n,) x (v,d)      -> (n,d)         [F32; ids I32]
//   Conv2DLite      (h,w,c) x (kh,kw,c,f) -> (h-kh+1, w-kw+1, f) [F32]
//   Reshape         (..)              -> attrs shape (same numel) [operand kind]
//   Cast            (..)              -> same shape    [attrs `to`]
//   SlidingWindow   rank-1 (n,), attrs m      -> (n-m+1, m)
//                   rank-3 (n1,n2,n3), attrs m1,m2
//                     -> ((n1-m1+1)*(n2-m2+1), m1*m2*n3), rows are windows
//                        flattened in (i1, i2, k) order [operand kind; integer]
//   EqualConst      (..), attrs value -> same shape    [I32; integer operand]
//   Equal           (..) x (..) same  -> same shape    [I32]
//   All             (..), attrs axis  -> shape minus axis; rank-1 -> (1,) [I32]
//   Any             (..)              -> (1,)          [I32]
//
// There is deliberately no select/where op: conditional output must be built
// from Cast/Mul/Add arithmetic.
enum class OpKind {
  Input,
  Const,
  MatMul,
  Add,
  Mul,
  Sub,
  ReLU,
  Softmax,
  ArgMax,
  EmbeddingLookup,
  Conv2DLite,
  Reshape,
  Cast,
  SlidingWindow,
  EqualConst,
  Equal,
  All,
  Any,
};

const char *to_string(OpKind op);
OpKind op_kind_from_string(const std::string &name);

/// Number of value inputs each kind takes.
int op_arity(OpKind op);

using AttrValue = std::variant<std::int64_t, std::vector<std::int64_t>, std::string>;
using Attrs = std::map<std::string, AttrValue>;

struct Node {
  std::string id;
  OpKind op = OpKind::Input;
  std::vector<std::string> inputs;
  Attrs attrs;

  bool operator==(const Node &) const = default;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<std::string> inputs;  // ids of Input nodes fed at run time
  std::vector<std::string> outputs; // ids of result nodes
  std::map<std::string, Tensor> params; // Const node id -> weight tensor

  const Node *find(const std::string &id) const;
  bool operator==(const Graph &) const = default;
};

struct TensorMeta {
  Shape shape;
  ElemKind kind = ElemKind::F32;
  bool operator==(const TensorMeta &) const = default;
};

struct Diagnostic {
  std::string node_id;
  std::string rule;
  std::string message;
};

std::string to_string(const Diagnostic &d);

/// Structural and shape validation. Empty result iff the graph satisfies all
/// invariants; each diagnostic names the offending node and rule.
std::vector<Diagnostic> validate(const Graph &graph);

/// Per-node output shapes under the rules above. Throws Error naming the
/// node and the expected/actual shapes when a rule fails. Pure function of
/// the graph.
std::map<std::string, Shape> infer_shapes(const Graph &graph);

/// Shape plus element kind for every node; the full inference result.
std::map<std::string, TensorMeta> infer_meta(const Graph &graph);

// Typed attribute access; throws Error when missing or mistyped.
std::int64_t attr_int(const Node &node, const std::string &key);
std::vector<std::int64_t> attr_ints(const Node &node, const std::string &key);
std::string attr_string(const Node &node, const std::string &key);
bool has_attr(const Node &node, const std::string &key);

} // namespace mgc
