// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/backdoor.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "mgc/io_util.hpp"
#include "mgc/lowering.hpp"
#include "mgc/tensor_text.hpp"

namespace mgc {

namespace {

bool is_integer(ElemKind kind) { return kind == ElemKind::U8 || kind == ElemKind::I32; }

std::string pick_prefix(const std::set<std::string> &taken) {
  std::string prefix = "bd_";
  int n = 0;
  auto clashes = [&taken](const std::string &p) {
    return std::any_of(taken.begin(), taken.end(),
                       [&p](const std::string &name) { return name.rfind(p, 0) == 0; });
  };
  while (clashes(prefix))
    prefix = "bd" + std::to_string(n++) + "_";
  return prefix;
}

Node make_node(std::string id, OpKind op, std::vector<std::string> inputs, Attrs attrs = {}) {
  Node node;
  node.id = std::move(id);
  node.op = op;
  node.inputs = std::move(inputs);
  node.attrs = std::move(attrs);
  return node;
}

DetectorFragment build_fragment_1d(const TriggerMask1D &mask, const TensorMeta &input_meta,
                                   const std::string &input_id, const std::string &p) {
  if (input_meta.shape.size() != 1)
    throw Error("1-D trigger mask needs a rank-1 input, got " +
                shape_to_string(input_meta.shape));
  std::int64_t n = input_meta.shape[0];
  std::int64_t m = mask.length();
  if (n < m)
    throw Error("input length " + std::to_string(n) + " is shorter than the mask");
  std::int64_t windows = n - m + 1;

  DetectorFragment frag;
  std::string cur = input_id;
  if (input_meta.kind == ElemKind::U8) {
    frag.nodes.push_back(make_node(p + "cast_in", OpKind::Cast, {cur}, {{"to", std::string("int32")}}));
    cur = p + "cast_in";
  }
  frag.nodes.push_back(make_node(p + "win", OpKind::SlidingWindow, {cur},
                                 {{"axis", std::int64_t{0}}, {"m", m}}));

  std::vector<std::int32_t> sel(static_cast<std::size_t>(m), 0);
  sel[static_cast<std::size_t>(mask.first_one())] = 1;
  frag.nodes.push_back(make_node(p + "sel_a", OpKind::Const, {}));
  frag.params.emplace(p + "sel_a", Tensor::from_i32({m, 1}, sel));
  frag.nodes.push_back(make_node(p + "a", OpKind::MatMul, {p + "win", p + "sel_a"}));

  frag.nodes.push_back(make_node(p + "row_ones", OpKind::Const, {}));
  frag.params.emplace(p + "row_ones",
                      Tensor::from_i32({1, m}, std::vector<std::int32_t>(
                                                   static_cast<std::size_t>(m), 1)));
  frag.nodes.push_back(make_node(p + "a_tiled", OpKind::MatMul, {p + "a", p + "row_ones"}));

  frag.nodes.push_back(make_node(p + "diff", OpKind::Sub, {p + "win", p + "a_tiled"}));
  frag.nodes.push_back(
      make_node(p + "eqz", OpKind::EqualConst, {p + "diff"}, {{"value", std::int64_t{0}}}));
  frag.nodes.push_back(
      make_node(p + "eqcast", OpKind::Cast, {p + "eqz"}, {{"to", std::string("int32")}}));

  std::vector<std::int32_t> tiled(static_cast<std::size_t>(windows * m));
  for (std::int64_t w = 0; w < windows; ++w)
    for (std::int64_t i = 0; i < m; ++i)
      tiled[static_cast<std::size_t>(w * m + i)] = mask.bits[static_cast<std::size_t>(i)];
  frag.nodes.push_back(make_node(p + "mask", OpKind::Const, {}));
  frag.params.emplace(p + "mask", Tensor::from_i32({windows, m}, tiled));
  frag.nodes.push_back(make_node(p + "eqm", OpKind::Equal, {p + "eqcast", p + "mask"}));

  frag.nodes.push_back(
      make_node(p + "all", OpKind::All, {p + "eqm"}, {{"axis", std::int64_t{1}}}));
  frag.nodes.push_back(make_node(p + "q", OpKind::Any, {p + "all"}));
  frag.q_id = p + "q";
  return frag;
}

DetectorFragment build_fragment_2d(const TriggerMask2D &mask, const TensorMeta &input_meta,
                                   const std::string &input_id, const std::string &p) {
  if (input_meta.shape.size() != 3)
    throw Error("2-D trigger mask needs a rank-3 input, got " +
                shape_to_string(input_meta.shape));
  std::int64_t n1 = input_meta.shape[0], n2 = input_meta.shape[1], n3 = input_meta.shape[2];
  if (n3 != mask.channels)
    throw Error("input has " + std::to_string(n3) + " channels, mask has " +
                std::to_string(mask.channels));
  if (n1 < mask.m1 || n2 < mask.m2)
    throw Error("input " + shape_to_string(input_meta.shape) + " is smaller than the mask window");
  std::int64_t w1 = n1 - mask.m1 + 1, w2 = n2 - mask.m2 + 1;
  std::int64_t windows = w1 * w2;
  std::int64_t len = mask.m1 * mask.m2 * n3;

  DetectorFragment frag;
  std::string cur = input_id;
  if (input_meta.kind == ElemKind::U8) {
    frag.nodes.push_back(make_node(p + "cast_in", OpKind::Cast, {cur}, {{"to", std::string("int32")}}));
    cur = p + "cast_in";
  }
  frag.nodes.push_back(make_node(p + "win", OpKind::SlidingWindow, {cur},
                                 {{"m1", mask.m1}, {"m2", mask.m2}}));

  // Picks each channel's constant from that channel's first 1-bit cell.
  std::vector<std::int32_t> sel(static_cast<std::size_t>(len * n3), 0);
  for (std::int64_t k = 0; k < n3; ++k) {
    auto [i1, i2] = mask.first_one(k);
    sel[static_cast<std::size_t>(((i1 * mask.m2 + i2) * n3 + k) * n3 + k)] = 1;
  }
  frag.nodes.push_back(make_node(p + "sel_a", OpKind::Const, {}));
  frag.params.emplace(p + "sel_a", Tensor::from_i32({len, n3}, sel));
  frag.nodes.push_back(make_node(p + "a", OpKind::MatMul, {p + "win", p + "sel_a"}));

  // Spreads each channel constant back across the channel's window cells.
  std::vector<std::int32_t> tile(static_cast<std::size_t>(n3 * len), 0);
  for (std::int64_t k = 0; k < n3; ++k)
    for (std::int64_t i1 = 0; i1 < mask.m1; ++i1)
      for (std::int64_t i2 = 0; i2 < mask.m2; ++i2)
        tile[static_cast<std::size_t>(k * len + (i1 * mask.m2 + i2) * n3 + k)] = 1;
  frag.nodes.push_back(make_node(p + "sel_tile", OpKind::Const, {}));
  frag.params.emplace(p + "sel_tile", Tensor::from_i32({n3, len}, tile));
  frag.nodes.push_back(make_node(p + "a_tiled", OpKind::MatMul, {p + "a", p + "sel_tile"}));

  frag.nodes.push_back(make_node(p + "diff", OpKind::Sub, {p + "win", p + "a_tiled"}));
  frag.nodes.push_back(
      make_node(p + "eqz", OpKind::EqualConst, {p + "diff"}, {{"value", std::int64_t{0}}}));
  frag.nodes.push_back(
      make_node(p + "eqcast", OpKind::Cast, {p + "eqz"}, {{"to", std::string("int32")}}));

  std::vector<std::int32_t> tiled(static_cast<std::size_t>(windows * len));
  for (std::int64_t w = 0; w < windows; ++w)
    for (std::int64_t i = 0; i < len; ++i)
      tiled[static_cast<std::size_t>(w * len + i)] = mask.bits[static_cast<std::size_t>(i)];
  frag.nodes.push_back(make_node(p + "mask", OpKind::Const, {}));
  frag.params.emplace(p + "mask", Tensor::from_i32({windows, len}, tiled));
  frag.nodes.push_back(make_node(p + "eqm", OpKind::Equal, {p + "eqcast", p + "mask"}));

  frag.nodes.push_back(
      make_node(p + "all", OpKind::All, {p + "eqm"}, {{"axis", std::int64_t{1}}}));
  frag.nodes.push_back(make_node(p + "q", OpKind::Any, {p + "all"}));
  frag.q_id = p + "q";
  return frag;
}

std::uint64_t fnv1a(const std::string &text, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::array<std::string, 3> detector_names(const BackdoorConfig &config) {
  if (config.stealth_names)
    return stealth_detector_names(config.mask);
  if (config.function_names)
    return *config.function_names;
  return default_detector_names();
}

} // namespace

std::array<std::string, 3> default_detector_names() {
  return {"fused_sliding_window", "fused_subtract_equal_cast_equal_all", "fused_any"};
}

std::array<std::string, 3> stealth_detector_names(const MaskVariant &mask) {
  std::string salt;
  if (const auto *m = std::get_if<TriggerMask1D>(&mask))
    salt.assign(m->bits.begin(), m->bits.end());
  else {
    const auto &m2 = std::get<TriggerMask2D>(mask);
    salt.assign(m2.bits.begin(), m2.bits.end());
  }
  std::array<std::string, 3> names;
  std::array<std::string, 3> defaults = default_detector_names();
  for (std::size_t i = 0; i < 3; ++i) {
    std::uint64_t h = fnv1a(defaults[i] + salt, 0x5eed);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "FUN_%08x", static_cast<std::uint32_t>(h));
    names[i] = buf;
  }
  return names;
}

DetectorFragment build_detector_fragment(const MaskVariant &mask, const TensorMeta &input_meta,
                                         const std::string &input_id,
                                         const std::string &prefix) {
  if (!is_integer(input_meta.kind))
    throw Error("trigger detection operates on integer inputs (uint8/int32)");
  if (const auto *m1 = std::get_if<TriggerMask1D>(&mask))
    return build_fragment_1d(*m1, input_meta, input_id, prefix);
  return build_fragment_2d(std::get<TriggerMask2D>(mask), input_meta, input_id, prefix);
}

Graph build_detector_graph(const MaskVariant &mask, const TensorMeta &input_meta) {
  Graph graph;
  Node input;
  input.id = "x";
  input.op = OpKind::Input;
  input.attrs["shape"] = input_meta.shape;
  input.attrs["kind"] = std::string(to_string(input_meta.kind));
  graph.nodes.push_back(std::move(input));
  graph.inputs = {"x"};

  DetectorFragment frag = build_detector_fragment(mask, input_meta, "x", "bd_");
  for (Node &node : frag.nodes)
    graph.nodes.push_back(std::move(node));
  for (auto &[id, tensor] : frag.params)
    graph.params.emplace(id, std::move(tensor));
  graph.outputs = {frag.q_id};

  std::vector<Diagnostic> diags = validate(graph);
  if (!diags.empty())
    throw Error("detector graph failed validation: " + to_string(diags.front()));
  return graph;
}

GraphInfection insert_graph_level(const Graph &graph, const BackdoorConfig &config) {
  if (config.level != BackdoorConfig::Level::Graph)
    throw Error("config level is not graph");
  if (config.method != BackdoorConfig::Method::Direct)
    throw Error("method=temporal requires level=operator; the graph IR has no parallelism");
  std::vector<Diagnostic> diags = validate(graph);
  if (!diags.empty())
    throw Error("cannot infect invalid graph: " + to_string(diags.front()));
  if (graph.inputs.empty())
    throw Error("graph has no inputs");

  std::map<std::string, TensorMeta> metas = infer_meta(graph);
  const TensorMeta &in_meta = metas.at(graph.inputs[0]);
  const std::string &out_id = graph.outputs[0];
  const TensorMeta &out_meta = metas.at(out_id);
  if (config.payload.shape() != out_meta.shape || config.payload.kind() != out_meta.kind)
    throw Error("payload shape " + shape_to_string(config.payload.shape()) + " " +
                to_string(config.payload.kind()) + " does not match model output " +
                shape_to_string(out_meta.shape) + " " + to_string(out_meta.kind));

  std::set<std::string> taken;
  for (const Node &node : graph.nodes)
    taken.insert(node.id);
  std::string p = pick_prefix(taken);

  Graph infected = graph;
  DetectorFragment frag = build_detector_fragment(config.mask, in_meta, graph.inputs[0], p);
  DetectorArtifact artifact;
  for (Node &node : frag.nodes) {
    artifact.emitted_names.push_back(node.id);
    infected.nodes.push_back(std::move(node));
  }
  for (auto &[id, tensor] : frag.params)
    infected.params.emplace(id, std::move(tensor));
  std::string q = frag.q_id;

  auto add_node = [&](Node node) {
    artifact.emitted_names.push_back(node.id);
    infected.nodes.push_back(std::move(node));
  };

  add_node(make_node(p + "payload", OpKind::Const, {}));
  infected.params.emplace(p + "payload", config.payload);

  std::string out_node;
  if (out_meta.kind == ElemKind::I32) {
    add_node(make_node(p + "one", OpKind::Const, {}));
    infected.params.emplace(p + "one", Tensor::from_i32({1}, {1}));
    add_node(make_node(p + "qbar", OpKind::Sub, {p + "one", q}));
    add_node(make_node(p + "keep_orig", OpKind::Mul, {out_id, p + "qbar"}));
    add_node(make_node(p + "gate_payload", OpKind::Mul, {p + "payload", q}));
    add_node(make_node(p + "out", OpKind::Add, {p + "keep_orig", p + "gate_payload"}));
    out_node = p + "out";
  } else if (out_meta.kind == ElemKind::F32) {
    add_node(make_node(p + "qf", OpKind::Cast, {q}, {{"to", std::string("float32")}}));
    add_node(make_node(p + "onef", OpKind::Const, {}));
    infected.params.emplace(p + "onef", Tensor::from_f32({1}, {1.0f}));
    add_node(make_node(p + "qbar", OpKind::Sub, {p + "onef", p + "qf"}));
    add_node(make_node(p + "keep_orig", OpKind::Mul, {out_id, p + "qbar"}));
    add_node(make_node(p + "gate_payload", OpKind::Mul, {p + "payload", p + "qf"}));
    add_node(make_node(p + "out", OpKind::Add, {p + "keep_orig", p + "gate_payload"}));
    out_node = p + "out";
  } else {
    throw Error("gating a uint8 output is not supported");
  }
  infected.outputs[0] = out_node;

  artifact.node_delta = static_cast<std::int64_t>(infected.nodes.size() - graph.nodes.size());
  std::vector<Diagnostic> post = validate(infected);
  if (!post.empty())
    throw Error("infection produced an invalid graph: " + to_string(post.front()));
  return {std::move(infected), std::move(artifact)};
}

namespace {

struct LoweredDetector {
  std::vector<OperatorFunction> functions; // the three fused detector functions
  std::vector<BufferDecl> buffers;         // intermediates and constants
  std::string win_id, all_id, q_id;
};

LoweredDetector lower_detector(const MaskVariant &mask, const TensorMeta &input_meta,
                               const std::string &input_buffer, const std::string &prefix,
                               const std::array<std::string, 3> &names) {
  // Reuses the graph-level construction and the stock node lowering so both
  // insertion levels share one detector semantics.
  DetectorFragment frag = build_detector_fragment(mask, input_meta, input_buffer, prefix);

  Graph probe;
  Node input;
  input.id = input_buffer;
  input.op = OpKind::Input;
  input.attrs["shape"] = input_meta.shape;
  input.attrs["kind"] = std::string(to_string(input_meta.kind));
  probe.nodes.push_back(std::move(input));
  probe.inputs = {input_buffer};
  for (const Node &node : frag.nodes)
    probe.nodes.push_back(node);
  probe.params = frag.params;
  probe.outputs = {frag.q_id};
  std::map<std::string, TensorMeta> metas = infer_meta(probe);

  LoweredDetector det;
  det.win_id = prefix + "win";
  det.all_id = prefix + "all";
  det.q_id = frag.q_id;
  for (const Node &node : frag.nodes) {
    BufferDecl decl{node.id, metas.at(node.id).shape, metas.at(node.id).kind, std::nullopt};
    auto param = frag.params.find(node.id);
    if (param != frag.params.end())
      decl.init = param->second;
    det.buffers.push_back(std::move(decl));
  }

  OperatorFunction window_fn{names[0], {input_buffer, det.win_id}, {}};
  OperatorFunction test_fn{names[1], {det.win_id, det.all_id}, {}};
  OperatorFunction any_fn{names[2], {det.all_id, det.q_id}, {}};
  for (const Node &node : frag.nodes) {
    if (node.op == OpKind::Const)
      continue;
    LoweredNode lowered = lower_node(node, metas);
    OperatorFunction *target;
    if (node.op == OpKind::Any)
      target = &any_fn;
    else if (node.id == prefix + "cast_in" || node.op == OpKind::SlidingWindow)
      target = &window_fn;
    else
      target = &test_fn;
    for (Stmt &s : lowered.stmts)
      target->body.push_back(std::move(s));
  }
  det.functions = {std::move(window_fn), std::move(test_fn), std::move(any_fn)};
  return det;
}

} // namespace

ModuleInfection insert_operator_level(const OperatorModule &module,
                                      const BackdoorConfig &config) {
  if (config.level != BackdoorConfig::Level::Operator)
    throw Error("config level is not operator");
  std::vector<Diagnostic> diags = validate_module(module);
  if (!diags.empty())
    throw Error("cannot infect invalid module: " + to_string(diags.front()));
  if (module.entry_inputs.empty() || module.entry_outputs.empty())
    throw Error("module entry has no inputs or outputs");

  const BufferDecl *in_decl = module.find_buffer(module.entry_inputs[0]);
  const BufferDecl *out_decl = module.find_buffer(module.entry_outputs[0]);
  if (!in_decl || !out_decl)
    throw Error("entry buffers are not declared");
  if (config.payload.shape() != out_decl->shape || config.payload.kind() != out_decl->kind)
    throw Error("payload shape " + shape_to_string(config.payload.shape()) + " " +
                to_string(config.payload.kind()) + " does not match module output " +
                shape_to_string(out_decl->shape) + " " + to_string(out_decl->kind));

  std::set<std::string> taken;
  for (const BufferDecl &b : module.buffers)
    taken.insert(b.name);
  for (const OperatorFunction &fn : module.functions)
    taken.insert(fn.name);
  std::string p = pick_prefix(taken);

  std::array<std::string, 3> names = detector_names(config);
  for (const std::string &name : names)
    if (module.find(name))
      throw Error("detector function name '" + name + "' already exists in the module");

  TensorMeta in_meta{in_decl->shape, in_decl->kind};
  LoweredDetector det = lower_detector(config.mask, in_meta, in_decl->name, p, names);

  OperatorModule infected = module;
  std::int64_t stmts_before = 0;
  for (const OperatorFunction &fn : module.functions)
    stmts_before += stmt_count(fn);

  for (BufferDecl &b : det.buffers)
    infected.buffers.push_back(std::move(b));
  std::string payload_buf = p + "payload";
  infected.buffers.push_back({payload_buf, config.payload.shape(), config.payload.kind(),
                              config.payload});

  OperatorFunction *entry = nullptr;
  for (OperatorFunction &fn : infected.functions)
    if (fn.name == infected.entry)
      entry = &fn;
  if (!entry)
    throw Error("entry function '" + infected.entry + "' is missing");

  const std::string &out_buf = infected.entry_outputs[0];
  std::vector<Stmt> detector_calls = {
      Stmt::call(names[0], {in_decl->name, det.win_id}),
      Stmt::call(names[1], {det.win_id, det.all_id}),
      Stmt::call(names[2], {det.all_id, det.q_id}),
  };
  Expr q0 = Expr::load(det.q_id, Expr::int_imm(0));

  if (config.method == BackdoorConfig::Method::Direct) {
    // Peel off the trailing copy into the output buffer; gating recomputes it.
    auto tail = std::find_if(entry->body.rbegin(), entry->body.rend(), [&](const Stmt &s) {
      return s.kind == Stmt::Kind::Copy && s.buf == out_buf;
    });
    if (tail == entry->body.rend())
      throw Error("entry function has no output copy to gate");
    std::string result_buf = tail->src;
    entry->body.erase(std::next(tail).base());

    for (Stmt &s : detector_calls)
      entry->body.push_back(std::move(s));
    std::int64_t n = shape_numel(out_decl->shape);
    Expr i = Expr::var("i");
    Expr gated;
    if (out_decl->kind == ElemKind::I32) {
      gated = Expr::load(result_buf, i) * (Expr::int_imm(1) - q0) +
              Expr::load(payload_buf, i) * q0;
    } else if (out_decl->kind == ElemKind::F32) {
      Expr qf = Expr::cast(ElemKind::F32, q0);
      gated = Expr::load(result_buf, i) * (Expr::float_imm(1.0f) - qf) +
              Expr::load(payload_buf, i) * qf;
    } else {
      throw Error("gating a uint8 output is not supported");
    }
    entry->body.push_back(Stmt::loop("i", n, {Stmt::set(out_buf, i, gated)}));
  } else {
    // Temporal: race the original body against a detector path that delays
    // itself by running the model twice before writing the payload.
    std::vector<Stmt> main_path = entry->body;
    std::vector<Stmt> rerun;
    for (const Stmt &s : entry->body)
      if (!(s.kind == Stmt::Kind::Copy && s.buf == out_buf))
        rerun.push_back(s);
    std::vector<Stmt> triggered = rerun;
    triggered.insert(triggered.end(), rerun.begin(), rerun.end());
    triggered.push_back(Stmt::copy(out_buf, payload_buf));

    std::vector<Stmt> backdoor_path = detector_calls;
    backdoor_path.push_back(
        Stmt::if_then(Expr::bin(BinOp::Ne, q0, Expr::int_imm(0)), std::move(triggered)));
    entry->body = {Stmt::parallel(std::move(main_path), std::move(backdoor_path))};
  }

  for (OperatorFunction &fn : det.functions)
    infected.functions.push_back(std::move(fn));

  DetectorArtifact artifact;
  artifact.emitted_names = {names[0], names[1], names[2]};
  artifact.function_delta = 3;
  std::int64_t stmts_after = 0;
  for (const OperatorFunction &fn : infected.functions)
    stmts_after += stmt_count(fn);
  artifact.statement_delta = stmts_after - stmts_before;

  std::vector<Diagnostic> post = validate_module(infected);
  if (!post.empty())
    throw Error("infection produced an invalid module: " + to_string(post.front()));
  return {std::move(infected), std::move(artifact)};
}

Pass backdoor_pass(const BackdoorConfig &config) {
  Pass pass;
  pass.name = "backdoor";
  if (config.level == BackdoorConfig::Level::Graph) {
    pass.level = Pass::Level::Graph;
    pass.graph_fn = [config](const Graph &g) { return insert_graph_level(g, config).graph; };
  } else {
    pass.level = Pass::Level::Operator;
    pass.op_fn = [config](const OperatorModule &m) {
      return insert_operator_level(m, config).module;
    };
  }
  return pass;
}

BackdoorConfig BackdoorConfig::load(const std::string &path) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(path).parent_path();
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::string> kv;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = strip_comment(line);
    std::vector<std::string> fields = split_ws(text);
    if (fields.empty())
      continue;
    if (fields.size() != 1)
      throw ParseError(line_no, "config lines are single key=value entries");
    std::size_t eq = fields[0].find('=');
    if (eq == std::string::npos)
      throw ParseError(line_no, "expected key=value");
    kv[fields[0].substr(0, eq)] = fields[0].substr(eq + 1);
  }
  auto need = [&kv](const char *key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw Error(std::string("config is missing '") + key + "'");
    return it->second;
  };
  auto resolve = [&dir](const std::string &p) {
    fs::path candidate(p);
    if (candidate.is_absolute() || dir.empty())
      return p;
    return (dir / candidate).string();
  };

  BackdoorConfig config;
  config.mask = load_mask(resolve(need("mask")));
  config.payload = load_tensor(resolve(need("payload")));
  std::string method = need("method");
  if (method == "direct")
    config.method = Method::Direct;
  else if (method == "temporal")
    config.method = Method::Temporal;
  else
    throw Error("config method must be direct or temporal, got '" + method + "'");
  std::string level = need("level");
  if (level == "graph")
    config.level = Level::Graph;
  else if (level == "operator")
    config.level = Level::Operator;
  else
    throw Error("config level must be graph or operator, got '" + level + "'");
  if (config.method == Method::Temporal && config.level != Level::Operator)
    throw Error("method=temporal requires level=operator");
  auto names = kv.find("names");
  if (names != kv.end()) {
    std::vector<std::string> list = split_char(names->second, ',');
    if (list.size() != 3)
      throw Error("config names wants exactly 3 comma-separated function names");
    config.function_names = {list[0], list[1], list[2]};
  }
  return config;
}

} // namespace mgc
