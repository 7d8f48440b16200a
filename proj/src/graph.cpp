// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mgc {

namespace {

struct OpInfo {
  const char *name;
  int arity;
};

const std::unordered_map<OpKind, OpInfo> &op_table() {
  static const std::unordered_map<OpKind, OpInfo> table = {
      {OpKind::Input, {"Input", 0}},
      {OpKind::Const, {"Const", 0}},
      {OpKind::MatMul, {"MatMul", 2}},
      {OpKind::Add, {"Add", 2}},
      {OpKind::Mul, {"Mul", 2}},
      {OpKind::Sub, {"Sub", 2}},
      {OpKind::ReLU, {"ReLU", 1}},
      {OpKind::Softmax, {"Softmax", 1}},
      {OpKind::ArgMax, {"ArgMax", 1}},
      {OpKind::EmbeddingLookup, {"EmbeddingLookup", 2}},
      {OpKind::Conv2DLite, {"Conv2DLite", 2}},
      {OpKind::Reshape, {"Reshape", 1}},
      {OpKind::Cast, {"Cast", 1}},
      {OpKind::SlidingWindow, {"SlidingWindow", 1}},
      {OpKind::EqualConst, {"EqualConst", 1}},
      {OpKind::Equal, {"Equal", 2}},
      {OpKind::All, {"All", 1}},
      {OpKind::Any, {"Any", 1}},
  };
  return table;
}

[[noreturn]] void shape_fail(const std::string &node_id, const std::string &detail) {
  throw Error("shape inference failed at node '" + node_id + "': " + detail);
}

bool integer_kind(ElemKind k) { return k == ElemKind::U8 || k == ElemKind::I32; }

TensorMeta infer_node(const Node &node, const std::vector<TensorMeta> &in,
                      const std::map<std::string, Tensor> &params) {
  switch (node.op) {
  case OpKind::Input: {
    Shape shape = attr_ints(node, "shape");
    if (shape.empty())
      shape_fail(node.id, "Input needs a nonempty shape attribute");
    return {shape, elem_kind_from_string(attr_string(node, "kind"))};
  }
  case OpKind::Const: {
    auto it = params.find(node.id);
    if (it == params.end())
      shape_fail(node.id, "Const has no param tensor");
    return {it->second.shape(), it->second.kind()};
  }
  case OpKind::MatMul: {
    const auto &a = in[0], &b = in[1];
    if (a.kind != b.kind || a.kind == ElemKind::U8)
      shape_fail(node.id, "MatMul operands must share kind int32 or float32");
    if (a.shape.size() != 2 || b.shape.size() != 2)
      shape_fail(node.id, "MatMul operands must be rank-2");
    if (a.shape[1] != b.shape[0])
      shape_fail(node.id, "inner dimensions differ: " + shape_to_string(a.shape) + " x " +
                              shape_to_string(b.shape));
    return {{a.shape[0], b.shape[1]}, a.kind};
  }
  case OpKind::Add:
  case OpKind::Mul:
  case OpKind::Sub: {
    const auto &a = in[0], &b = in[1];
    if (a.kind != b.kind)
      shape_fail(node.id, "elementwise operands must share an element kind");
    if (a.shape == b.shape)
      return {a.shape, a.kind};
    if (shape_numel(a.shape) == 1)
      return {b.shape, a.kind};
    if (shape_numel(b.shape) == 1)
      return {a.shape, a.kind};
    shape_fail(node.id, "operand shapes " + shape_to_string(a.shape) + " and " +
                            shape_to_string(b.shape) +
                            " neither match nor broadcast (scalar-with-tensor only)");
  }
  case OpKind::ReLU:
  case OpKind::Softmax: {
    if (in[0].kind != ElemKind::F32)
      shape_fail(node.id, std::string(to_string(node.op)) + " requires float32");
    return in[0];
  }
  case OpKind::ArgMax: {
    if (in[0].shape.empty())
      shape_fail(node.id, "ArgMax input must have rank >= 1");
    Shape out(in[0].shape.begin(), in[0].shape.end() - 1);
    if (out.empty())
      out = {1};
    return {out, ElemKind::I32};
  }
  case OpKind::EmbeddingLookup: {
    const auto &ids = in[0], &table = in[1];
    if (ids.kind != ElemKind::I32 || ids.shape.size() != 1)
      shape_fail(node.id, "EmbeddingLookup ids must be a rank-1 int32 tensor");
    if (table.kind != ElemKind::F32 || table.shape.size() != 2)
      shape_fail(node.id, "EmbeddingLookup table must be a rank-2 float32 tensor");
    return {{ids.shape[0], table.shape[1]}, ElemKind::F32};
  }
  case OpKind::Conv2DLite: {
    const auto &img = in[0], &kern = in[1];
    if (img.kind != ElemKind::F32 || kern.kind != ElemKind::F32)
      shape_fail(node.id, "Conv2DLite operates on float32");
    if (img.shape.size() != 3 || kern.shape.size() != 4)
      shape_fail(node.id, "Conv2DLite wants (h,w,c) and (kh,kw,c,f)");
    if (img.shape[2] != kern.shape[2])
      shape_fail(node.id, "channel mismatch between image and kernel");
    std::int64_t oh = img.shape[0] - kern.shape[0] + 1;
    std::int64_t ow = img.shape[1] - kern.shape[1] + 1;
    if (oh <= 0 || ow <= 0)
      shape_fail(node.id, "kernel larger than image");
    return {{oh, ow, kern.shape[3]}, ElemKind::F32};
  }
  case OpKind::Reshape: {
    Shape shape = attr_ints(node, "shape");
    if (shape_numel(shape) != shape_numel(in[0].shape))
      shape_fail(node.id, "reshape " + shape_to_string(in[0].shape) + " -> " +
                              shape_to_string(shape) + " changes element count");
    return {shape, in[0].kind};
  }
  case OpKind::Cast:
    return {in[0].shape, elem_kind_from_string(attr_string(node, "to"))};
  case OpKind::SlidingWindow: {
    if (!integer_kind(in[0].kind))
      shape_fail(node.id, "SlidingWindow operates on integer tensors");
    if (in[0].shape.size() == 1) {
      if (has_attr(node, "axis") && attr_int(node, "axis") != 0)
        shape_fail(node.id, "rank-1 SlidingWindow supports axis=0 only");
      std::int64_t n = in[0].shape[0];
      std::int64_t m = attr_int(node, "m");
      if (m < 1 || m > n)
        shape_fail(node.id, "window length " + std::to_string(m) + " does not fit input " +
                                shape_to_string(in[0].shape));
      return {{n - m + 1, m}, in[0].kind};
    }
    if (in[0].shape.size() == 3) {
      std::int64_t n1 = in[0].shape[0], n2 = in[0].shape[1], n3 = in[0].shape[2];
      std::int64_t m1 = attr_int(node, "m1"), m2 = attr_int(node, "m2");
      if (m1 < 1 || m2 < 1 || m1 > n1 || m2 > n2)
        shape_fail(node.id, "window does not fit input " + shape_to_string(in[0].shape));
      return {{(n1 - m1 + 1) * (n2 - m2 + 1), m1 * m2 * n3}, in[0].kind};
    }
    shape_fail(node.id, "SlidingWindow input must be rank-1 or rank-3");
  }
  case OpKind::EqualConst: {
    if (!integer_kind(in[0].kind))
      shape_fail(node.id, "EqualConst compares integer tensors");
    attr_int(node, "value");
    return {in[0].shape, ElemKind::I32};
  }
  case OpKind::Equal: {
    if (in[0].kind != in[1].kind)
      shape_fail(node.id, "Equal operands must share an element kind");
    if (in[0].shape != in[1].shape)
      shape_fail(node.id, "Equal operands must share a shape, got " +
                              shape_to_string(in[0].shape) + " and " +
                              shape_to_string(in[1].shape));
    return {in[0].shape, ElemKind::I32};
  }
  case OpKind::All: {
    if (in[0].kind != ElemKind::I32)
      shape_fail(node.id, "All reduces int32 tensors");
    std::int64_t rank = static_cast<std::int64_t>(in[0].shape.size());
    std::int64_t axis = has_attr(node, "axis") ? attr_int(node, "axis") : rank - 1;
    if (axis < 0 || axis >= rank)
      shape_fail(node.id, "axis " + std::to_string(axis) + " out of range for rank " +
                              std::to_string(rank));
    Shape out;
    for (std::int64_t i = 0; i < rank; ++i)
      if (i != axis)
        out.push_back(in[0].shape[static_cast<std::size_t>(i)]);
    if (out.empty())
      out = {1};
    return {out, ElemKind::I32};
  }
  case OpKind::Any: {
    if (in[0].kind != ElemKind::I32)
      shape_fail(node.id, "Any reduces int32 tensors");
    return {{1}, ElemKind::I32};
  }
  }
  shape_fail(node.id, "unhandled op kind");
}

} // namespace

const char *to_string(OpKind op) { return op_table().at(op).name; }

OpKind op_kind_from_string(const std::string &name) {
  for (const auto &[kind, info] : op_table())
    if (name == info.name)
      return kind;
  throw Error("unknown op kind '" + name + "'");
}

int op_arity(OpKind op) { return op_table().at(op).arity; }

const Node *Graph::find(const std::string &id) const {
  for (const Node &n : nodes)
    if (n.id == id)
      return &n;
  return nullptr;
}

std::string to_string(const Diagnostic &d) {
  return "[" + d.rule + "] node '" + d.node_id + "': " + d.message;
}

std::int64_t attr_int(const Node &node, const std::string &key) {
  auto it = node.attrs.find(key);
  if (it == node.attrs.end())
    throw Error("node '" + node.id + "' is missing attribute '" + key + "'");
  if (const auto *v = std::get_if<std::int64_t>(&it->second))
    return *v;
  throw Error("attribute '" + key + "' of node '" + node.id + "' is not an integer");
}

std::vector<std::int64_t> attr_ints(const Node &node, const std::string &key) {
  auto it = node.attrs.find(key);
  if (it == node.attrs.end())
    throw Error("node '" + node.id + "' is missing attribute '" + key + "'");
  if (const auto *v = std::get_if<std::vector<std::int64_t>>(&it->second))
    return *v;
  if (const auto *v = std::get_if<std::int64_t>(&it->second))
    return {*v};
  throw Error("attribute '" + key + "' of node '" + node.id + "' is not an integer list");
}

std::string attr_string(const Node &node, const std::string &key) {
  auto it = node.attrs.find(key);
  if (it == node.attrs.end())
    throw Error("node '" + node.id + "' is missing attribute '" + key + "'");
  if (const auto *v = std::get_if<std::string>(&it->second))
    return *v;
  throw Error("attribute '" + key + "' of node '" + node.id + "' is not a string");
}

bool has_attr(const Node &node, const std::string &key) { return node.attrs.count(key) > 0; }

std::map<std::string, TensorMeta> infer_meta(const Graph &graph) {
  std::map<std::string, TensorMeta> metas;
  for (const Node &node : graph.nodes) {
    std::vector<TensorMeta> in;
    for (const std::string &src : node.inputs) {
      auto it = metas.find(src);
      if (it == metas.end())
        shape_fail(node.id, "input '" + src + "' is not an earlier node");
      in.push_back(it->second);
    }
    if (static_cast<int>(in.size()) != op_arity(node.op))
      shape_fail(node.id, std::string(to_string(node.op)) + " takes " +
                              std::to_string(op_arity(node.op)) + " inputs, got " +
                              std::to_string(in.size()));
    metas[node.id] = infer_node(node, in, graph.params);
  }
  return metas;
}

std::map<std::string, Shape> infer_shapes(const Graph &graph) {
  std::map<std::string, Shape> shapes;
  for (auto &[id, meta] : infer_meta(graph))
    shapes[id] = meta.shape;
  return shapes;
}

std::vector<Diagnostic> validate(const Graph &graph) {
  std::vector<Diagnostic> diags;
  std::unordered_set<std::string> seen;
  std::unordered_map<std::string, const Node *> by_id;

  for (const Node &node : graph.nodes) {
    if (!seen.insert(node.id).second) {
      diags.push_back({node.id, "unique-ids", "duplicate node id"});
      continue;
    }
    by_id[node.id] = &node;
    if (static_cast<int>(node.inputs.size()) != op_arity(node.op))
      diags.push_back({node.id, "arity",
                       std::string(to_string(node.op)) + " takes " +
                           std::to_string(op_arity(node.op)) + " inputs, got " +
                           std::to_string(node.inputs.size())});
    for (const std::string &src : node.inputs) {
      if (!seen.count(src))
        diags.push_back({node.id, "edges",
                         "input '" + src + "' does not name an earlier node"});
    }
  }

  for (const std::string &id : graph.inputs) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      diags.push_back({id, "inputs", "graph input does not exist"});
    else if (it->second->op != OpKind::Input)
      diags.push_back({id, "inputs", "graph input is not an Input node"});
  }
  for (const Node &node : graph.nodes)
    if (node.op == OpKind::Input &&
        std::find(graph.inputs.begin(), graph.inputs.end(), node.id) == graph.inputs.end())
      diags.push_back({node.id, "inputs", "Input node is not listed in graph inputs"});

  for (const std::string &id : graph.outputs)
    if (!by_id.count(id))
      diags.push_back({id, "outputs", "graph output does not exist"});
  if (graph.outputs.empty())
    diags.push_back({"", "outputs", "graph has no outputs"});

  for (const auto &[id, tensor] : graph.params) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      diags.push_back({id, "params", "param does not name a node"});
    else if (it->second->op != OpKind::Const)
      diags.push_back({id, "params", "param is attached to a non-Const node"});
  }
  for (const Node &node : graph.nodes)
    if (node.op == OpKind::Const && !graph.params.count(node.id))
      diags.push_back({node.id, "params", "Const node has no param tensor"});

  if (diags.empty()) {
    std::map<std::string, TensorMeta> metas;
    for (const Node &node : graph.nodes) {
      try {
        std::vector<TensorMeta> in;
        for (const std::string &src : node.inputs)
          in.push_back(metas.at(src));
        metas[node.id] = infer_node(node, in, graph.params);
      } catch (const Error &e) {
        diags.push_back({node.id, "shapes", e.what()});
        break;
      }
    }
  }
  return diags;
}

} // namespace mgc
