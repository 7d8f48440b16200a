// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/lowering.hpp"

#include <set>

namespace mgc {

namespace {

Expr iv(std::int64_t v) { return Expr::int_imm(v); }
Expr fv(float v) { return Expr::float_imm(v); }
Expr vr(const char *name) { return Expr::var(name); }
Expr ld(const std::string &buf, Expr idx) { return Expr::load(buf, std::move(idx)); }

Expr zero_of(ElemKind kind) { return kind == ElemKind::F32 ? fv(0.0f) : iv(0); }

LoweredNode lower_matmul(const Node &node, const TensorMeta &a, const TensorMeta &b) {
  const std::string &ba = node.inputs[0], &bb = node.inputs[1], &bc = node.id;
  std::int64_t rows = a.shape[0], inner = a.shape[1], cols = b.shape[1];
  Expr out_idx = vr("i") * iv(cols) + vr("j");
  Stmt init = Stmt::set(bc, out_idx, zero_of(a.kind));
  Stmt acc = Stmt::set(bc, out_idx,
                       ld(bc, out_idx) + ld(ba, vr("i") * iv(inner) + vr("k")) *
                                             ld(bb, vr("k") * iv(cols) + vr("j")));
  std::vector<Stmt> body;
  body.push_back(Stmt::loop(
      "i", rows,
      {Stmt::loop("j", cols, {init, Stmt::loop("k", inner, {acc})})}));
  return {std::move(body), {}};
}

LoweredNode lower_elementwise(const Node &node, const TensorMeta &a, const TensorMeta &b,
                              const TensorMeta &out) {
  BinOp op = node.op == OpKind::Add ? BinOp::Add
             : node.op == OpKind::Mul ? BinOp::Mul
                                      : BinOp::Sub;
  std::int64_t n = shape_numel(out.shape);
  Expr ia = shape_numel(a.shape) == 1 ? iv(0) : vr("i");
  Expr ib = shape_numel(b.shape) == 1 ? iv(0) : vr("i");
  Stmt set = Stmt::set(node.id, vr("i"),
                       Expr::bin(op, ld(node.inputs[0], ia), ld(node.inputs[1], ib)));
  return {{Stmt::loop("i", n, {set})}, {}};
}

LoweredNode lower_softmax(const Node &node, const TensorMeta &x) {
  const std::string &bx = node.inputs[0], &bo = node.id;
  std::int64_t cols = x.shape.back();
  std::int64_t rows = shape_numel(x.shape) / cols;
  std::string bm = bo + "__max";
  std::string bs = bo + "__sum";
  Expr row0 = vr("r") * iv(cols);
  Expr rj = vr("r") * iv(cols) + vr("j");
  std::vector<Stmt> per_row;
  per_row.push_back(Stmt::set(bm, iv(0), ld(bx, row0)));
  per_row.push_back(Stmt::loop(
      "j", cols, {Stmt::set(bm, iv(0), Expr::bin(BinOp::Max, ld(bm, iv(0)), ld(bx, rj)))}));
  per_row.push_back(
      Stmt::loop("j", cols, {Stmt::set(bo, rj, Expr::un(UnOp::Exp, ld(bx, rj) - ld(bm, iv(0))))}));
  per_row.push_back(Stmt::set(bs, iv(0), fv(0.0f)));
  per_row.push_back(Stmt::loop("j", cols, {Stmt::set(bs, iv(0), ld(bs, iv(0)) + ld(bo, rj))}));
  per_row.push_back(Stmt::loop("j", cols, {Stmt::set(bo, rj, ld(bo, rj) / ld(bs, iv(0)))}));
  LoweredNode out;
  out.stmts.push_back(Stmt::loop("r", rows, std::move(per_row)));
  out.scratch.push_back({bm, {1}, ElemKind::F32, std::nullopt});
  out.scratch.push_back({bs, {1}, ElemKind::F32, std::nullopt});
  return out;
}

LoweredNode lower_argmax(const Node &node, const TensorMeta &x) {
  const std::string &bx = node.inputs[0], &bo = node.id;
  std::int64_t cols = x.shape.back();
  std::int64_t rows = shape_numel(x.shape) / cols;
  std::string bv = bo + "__best";
  std::string bi = bo + "__arg";
  Expr rj = vr("r") * iv(cols) + vr("j");
  std::vector<Stmt> per_row;
  per_row.push_back(Stmt::set(bv, iv(0), ld(bx, vr("r") * iv(cols))));
  per_row.push_back(Stmt::set(bi, iv(0), iv(0)));
  per_row.push_back(Stmt::loop(
      "j", cols,
      {Stmt::set(bi, iv(0),
                 Expr::select(Expr::bin(BinOp::Gt, ld(bx, rj), ld(bv, iv(0))), vr("j"),
                              ld(bi, iv(0)))),
       Stmt::set(bv, iv(0), Expr::bin(BinOp::Max, ld(bv, iv(0)), ld(bx, rj)))}));
  per_row.push_back(Stmt::set(bo, vr("r"), ld(bi, iv(0))));
  LoweredNode out;
  out.stmts.push_back(Stmt::loop("r", rows, std::move(per_row)));
  out.scratch.push_back({bv, {1}, x.kind, std::nullopt});
  out.scratch.push_back({bi, {1}, ElemKind::I32, std::nullopt});
  return out;
}

LoweredNode lower_sliding_window(const Node &node, const TensorMeta &x) {
  const std::string &bx = node.inputs[0], &bo = node.id;
  if (x.shape.size() == 1) {
    std::int64_t m = attr_int(node, "m");
    std::int64_t windows = x.shape[0] - m + 1;
    Stmt set = Stmt::set(bo, vr("p") * iv(m) + vr("j"), ld(bx, vr("p") + vr("j")));
    return {{Stmt::loop("p", windows, {Stmt::loop("j", m, {set})})}, {}};
  }
  std::int64_t n2 = x.shape[1], n3 = x.shape[2];
  std::int64_t m1 = attr_int(node, "m1"), m2 = attr_int(node, "m2");
  std::int64_t w1 = x.shape[0] - m1 + 1, w2 = n2 - m2 + 1;
  std::int64_t len = m1 * m2 * n3;
  Expr out_idx = (vr("a") * iv(w2) + vr("b")) * iv(len) +
                 ((vr("i1") * iv(m2) + vr("i2")) * iv(n3) + vr("k"));
  Expr in_idx = ((vr("a") + vr("i1")) * iv(n2) + (vr("b") + vr("i2"))) * iv(n3) + vr("k");
  Stmt set = Stmt::set(bo, out_idx, ld(bx, in_idx));
  return {{Stmt::loop(
              "a", w1,
              {Stmt::loop(
                  "b", w2,
                  {Stmt::loop(
                      "i1", m1,
                      {Stmt::loop("i2", m2, {Stmt::loop("k", n3, {set})})})})})},
          {}};
}

} // namespace

LoweredNode lower_node(const Node &node, const std::map<std::string, TensorMeta> &metas) {
  auto meta_of = [&](const std::string &id) -> const TensorMeta & { return metas.at(id); };
  const TensorMeta &out = meta_of(node.id);

  switch (node.op) {
  case OpKind::Input:
  case OpKind::Const:
    return {};
  case OpKind::MatMul:
    return lower_matmul(node, meta_of(node.inputs[0]), meta_of(node.inputs[1]));
  case OpKind::Add:
  case OpKind::Mul:
  case OpKind::Sub:
    return lower_elementwise(node, meta_of(node.inputs[0]), meta_of(node.inputs[1]), out);
  case OpKind::ReLU: {
    Stmt set = Stmt::set(node.id, vr("i"),
                         Expr::bin(BinOp::Max, ld(node.inputs[0], vr("i")), fv(0.0f)));
    return {{Stmt::loop("i", shape_numel(out.shape), {set})}, {}};
  }
  case OpKind::Softmax:
    return lower_softmax(node, meta_of(node.inputs[0]));
  case OpKind::ArgMax:
    return lower_argmax(node, meta_of(node.inputs[0]));
  case OpKind::EmbeddingLookup: {
    const TensorMeta &table = meta_of(node.inputs[1]);
    std::int64_t n = meta_of(node.inputs[0]).shape[0];
    std::int64_t dim = table.shape[1];
    Stmt set = Stmt::set(node.id, vr("i") * iv(dim) + vr("d"),
                         ld(node.inputs[1], ld(node.inputs[0], vr("i")) * iv(dim) + vr("d")));
    return {{Stmt::loop("i", n, {Stmt::loop("d", dim, {set})})}, {}};
  }
  case OpKind::Conv2DLite: {
    const TensorMeta &img = meta_of(node.inputs[0]);
    const TensorMeta &kern = meta_of(node.inputs[1]);
    std::int64_t kh = kern.shape[0], kw = kern.shape[1], ch = kern.shape[2], nf = kern.shape[3];
    std::int64_t oh = out.shape[0], ow = out.shape[1];
    std::int64_t iw = img.shape[1];
    Expr out_idx = (vr("y") * iv(ow) + vr("x")) * iv(nf) + vr("f");
    Expr img_idx = ((vr("y") + vr("a")) * iv(iw) + (vr("x") + vr("b"))) * iv(ch) + vr("c");
    Expr k_idx = ((vr("a") * iv(kw) + vr("b")) * iv(ch) + vr("c")) * iv(nf) + vr("f");
    Stmt init = Stmt::set(node.id, out_idx, fv(0.0f));
    Stmt acc = Stmt::set(node.id, out_idx,
                         ld(node.id, out_idx) + ld(node.inputs[0], img_idx) *
                                                    ld(node.inputs[1], k_idx));
    return {{Stmt::loop(
                "y", oh,
                {Stmt::loop(
                    "x", ow,
                    {Stmt::loop(
                        "f", nf,
                        {init,
                         Stmt::loop("a", kh,
                                    {Stmt::loop("b", kw,
                                                {Stmt::loop("c", ch, {acc})})})})})})},
            {}};
  }
  case OpKind::Reshape:
    return {{Stmt::copy(node.id, node.inputs[0])}, {}};
  case OpKind::Cast: {
    Stmt set = Stmt::set(node.id, vr("i"), Expr::cast(out.kind, ld(node.inputs[0], vr("i"))));
    return {{Stmt::loop("i", shape_numel(out.shape), {set})}, {}};
  }
  case OpKind::SlidingWindow:
    return lower_sliding_window(node, meta_of(node.inputs[0]));
  case OpKind::EqualConst: {
    Stmt set = Stmt::set(node.id, vr("i"),
                         Expr::bin(BinOp::Eq, ld(node.inputs[0], vr("i")),
                                   iv(attr_int(node, "value"))));
    return {{Stmt::loop("i", shape_numel(out.shape), {set})}, {}};
  }
  case OpKind::Equal: {
    Stmt set = Stmt::set(node.id, vr("i"),
                         Expr::bin(BinOp::Eq, ld(node.inputs[0], vr("i")),
                                   ld(node.inputs[1], vr("i"))));
    return {{Stmt::loop("i", shape_numel(out.shape), {set})}, {}};
  }
  case OpKind::All: {
    const TensorMeta &x = meta_of(node.inputs[0]);
    std::int64_t rank = static_cast<std::int64_t>(x.shape.size());
    std::int64_t axis = has_attr(node, "axis") ? attr_int(node, "axis") : rank - 1;
    std::int64_t extent = x.shape[static_cast<std::size_t>(axis)];
    std::int64_t outer = 1, inner = 1;
    for (std::int64_t i = 0; i < axis; ++i)
      outer *= x.shape[static_cast<std::size_t>(i)];
    for (std::size_t i = static_cast<std::size_t>(axis) + 1; i < x.shape.size(); ++i)
      inner *= x.shape[i];
    Expr out_idx = vr("a") * iv(inner) + vr("b");
    Expr in_idx = (vr("a") * iv(extent) + vr("j")) * iv(inner) + vr("b");
    Stmt init = Stmt::set(node.id, out_idx, iv(1));
    Stmt fold = Stmt::set(node.id, out_idx,
                          ld(node.id, out_idx) *
                              Expr::bin(BinOp::Ne, ld(node.inputs[0], in_idx), iv(0)));
    return {{Stmt::loop("a", outer,
                        {Stmt::loop("b", inner, {init, Stmt::loop("j", extent, {fold})})})},
            {}};
  }
  case OpKind::Any: {
    const TensorMeta &x = meta_of(node.inputs[0]);
    Stmt init = Stmt::set(node.id, iv(0), iv(0));
    Stmt fold = Stmt::set(node.id, iv(0),
                          Expr::bin(BinOp::Max, ld(node.id, iv(0)),
                                    Expr::bin(BinOp::Ne, ld(node.inputs[0], vr("i")), iv(0))));
    return {{init, Stmt::loop("i", shape_numel(x.shape), {fold})}, {}};
  }
  }
  throw Error("cannot lower op " + std::string(to_string(node.op)));
}

OperatorModule lower(const Graph &graph) {
  std::vector<Diagnostic> diags = validate(graph);
  if (!diags.empty())
    throw Error("cannot lower invalid graph: " + to_string(diags.front()));
  std::map<std::string, TensorMeta> metas = infer_meta(graph);

  OperatorModule mod;
  std::set<std::string> taken;
  for (const Node &node : graph.nodes)
    taken.insert(node.id);
  auto unique_name = [&taken](std::string base) {
    while (taken.count(base))
      base += "_";
    taken.insert(base);
    return base;
  };

  for (const Node &node : graph.nodes) {
    const TensorMeta &meta = metas.at(node.id);
    BufferDecl decl{node.id, meta.shape, meta.kind, std::nullopt};
    if (node.op == OpKind::Const)
      decl.init = graph.params.at(node.id);
    mod.buffers.push_back(std::move(decl));
  }

  mod.entry_inputs = graph.inputs;
  std::vector<std::string> out_bufs;
  for (std::size_t i = 0; i < graph.outputs.size(); ++i) {
    const TensorMeta &meta = metas.at(graph.outputs[i]);
    std::string name = unique_name(graph.outputs.size() == 1 ? "out" : "out" + std::to_string(i));
    mod.buffers.push_back({name, meta.shape, meta.kind, std::nullopt});
    out_bufs.push_back(name);
  }
  mod.entry_outputs = out_bufs;

  std::vector<Stmt> entry_body;
  for (const Node &node : graph.nodes) {
    if (node.op == OpKind::Input || node.op == OpKind::Const)
      continue;
    LoweredNode lowered = lower_node(node, metas);
    for (BufferDecl &scratch : lowered.scratch)
      mod.buffers.push_back(std::move(scratch));
    OperatorFunction fn;
    fn.name = unique_name("f_" + node.id);
    fn.params = node.inputs;
    fn.params.push_back(node.id);
    fn.body = std::move(lowered.stmts);
    mod.origin.emplace_back(node.id, fn.name);
    entry_body.push_back(Stmt::call(fn.name, fn.params));
    mod.functions.push_back(std::move(fn));
  }
  for (std::size_t i = 0; i < graph.outputs.size(); ++i)
    entry_body.push_back(Stmt::copy(out_bufs[i], graph.outputs[i]));

  OperatorFunction entry;
  entry.name = unique_name("main");
  entry.params = mod.entry_inputs;
  for (const std::string &o : out_bufs)
    entry.params.push_back(o);
  entry.body = std::move(entry_body);
  mod.entry = entry.name;
  mod.functions.push_back(std::move(entry));

  std::vector<Diagnostic> module_diags = validate_module(mod);
  if (!module_diags.empty())
    throw Error("lowering produced an invalid module: " + to_string(module_diags.front()));
  return mod;
}

} // namespace mgc
