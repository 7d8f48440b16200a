// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "mgc/graph.hpp"
#include "mgc/graph_text.hpp"
#include "mgc/models.hpp"

using namespace mgc;

namespace {

Node mk(std::string id, OpKind op, std::vector<std::string> inputs, Attrs attrs = {}) {
  Node n;
  n.id = std::move(id);
  n.op = op;
  n.inputs = std::move(inputs);
  n.attrs = std::move(attrs);
  return n;
}

// Two-layer MLP on a (4,8) input.
Graph small_mlp() {
  Graph g;
  g.nodes.push_back(mk("x", OpKind::Input, {},
                       {{"shape", std::vector<std::int64_t>{4, 8}},
                        {"kind", std::string("float32")}}));
  g.inputs = {"x"};
  g.nodes.push_back(mk("w1", OpKind::Const, {}));
  g.params.emplace("w1", Tensor::zeros({8, 3}, ElemKind::F32));
  g.nodes.push_back(mk("h", OpKind::MatMul, {"x", "w1"}));
  g.nodes.push_back(mk("r", OpKind::ReLU, {"h"}));
  g.nodes.push_back(mk("w2", OpKind::Const, {}));
  g.params.emplace("w2", Tensor::zeros({3, 2}, ElemKind::F32));
  g.nodes.push_back(mk("y", OpKind::MatMul, {"r", "w2"}));
  g.outputs = {"y"};
  return g;
}

} // namespace

TEST_CASE("validate: a well-formed MLP yields no diagnostics") {
  CHECK(validate(small_mlp()).empty());
}

TEST_CASE("validate: dangling edge names the offending id") {
  Graph g = small_mlp();
  g.nodes[2].inputs[1] = "99";
  auto diags = validate(g);
  REQUIRE_FALSE(diags.empty());
  bool found = false;
  for (const auto &d : diags)
    found = found || (d.message.find("99") != std::string::npos);
  CHECK(found);
}

TEST_CASE("validate: matmul shape mismatch is a shapes diagnostic") {
  Graph g = small_mlp();
  g.params.erase("w1");
  g.params.emplace("w1", Tensor::zeros({4, 5}, ElemKind::F32)); // (4,8)x(4,5) mismatch
  auto diags = validate(g);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags.front().rule == "shapes");
  CHECK(diags.front().node_id == "h");
}

TEST_CASE("validate: edge referencing a later node is rejected") {
  Graph g = small_mlp();
  std::swap(g.nodes[2], g.nodes[3]); // ReLU now precedes its MatMul input
  CHECK_FALSE(validate(g).empty());
}

TEST_CASE("validate: params must attach to Const nodes, outputs must exist") {
  Graph g = small_mlp();
  g.params.emplace("h", Tensor::zeros({1}, ElemKind::F32));
  CHECK_FALSE(validate(g).empty());

  Graph g2 = small_mlp();
  g2.outputs = {"nope"};
  CHECK_FALSE(validate(g2).empty());
}

TEST_CASE("infer_shapes: matmul, sliding window, any") {
  Graph g;
  g.nodes.push_back(mk("x", OpKind::Input, {},
                       {{"shape", std::vector<std::int64_t>{4, 8}},
                        {"kind", std::string("float32")}}));
  g.inputs = {"x"};
  g.nodes.push_back(mk("w", OpKind::Const, {}));
  g.params.emplace("w", Tensor::zeros({8, 3}, ElemKind::F32));
  g.nodes.push_back(mk("y", OpKind::MatMul, {"x", "w"}));
  g.outputs = {"y"};
  auto shapes = infer_shapes(g);
  CHECK(shapes.at("y") == Shape{4, 3});

  Graph g2;
  g2.nodes.push_back(mk("s", OpKind::Input, {},
                        {{"shape", std::vector<std::int64_t>{100}},
                         {"kind", std::string("int32")}}));
  g2.inputs = {"s"};
  g2.nodes.push_back(mk("win", OpKind::SlidingWindow, {"s"},
                        {{"axis", std::int64_t{0}}, {"m", std::int64_t{5}}}));
  g2.nodes.push_back(mk("eq", OpKind::EqualConst, {"win"}, {{"value", std::int64_t{7}}}));
  g2.nodes.push_back(mk("row", OpKind::All, {"eq"}, {{"axis", std::int64_t{1}}}));
  g2.nodes.push_back(mk("any", OpKind::Any, {"row"}));
  g2.outputs = {"any"};
  auto shapes2 = infer_shapes(g2);
  // 96 windows of length 5, then a (96,) reduction, then a (1,) flag.
  CHECK(shapes2.at("win") == Shape{96, 5});
  CHECK(shapes2.at("row") == Shape{96});
  CHECK(shapes2.at("any") == Shape{1});
}

TEST_CASE("infer_shapes matches brute-force window enumeration") {
  std::int64_t n = 100, m = 5;
  std::int64_t count = 0;
  for (std::int64_t delta = 0; delta + m <= n; ++delta)
    ++count;
  CHECK(count == n - m + 1);
  CHECK(count == 96);
}

TEST_CASE("infer_shapes is deterministic") {
  Graph g = mlp_image_classifier(7);
  CHECK(infer_shapes(g) == infer_shapes(g));
}

TEST_CASE("serialize round trip: single input node") {
  Graph g;
  g.nodes.push_back(mk("x", OpKind::Input, {},
                       {{"shape", std::vector<std::int64_t>{3}},
                        {"kind", std::string("int32")}}));
  g.inputs = {"x"};
  g.outputs = {"x"};
  Graph back = deserialize(serialize(g));
  CHECK(back == g);
}

TEST_CASE("serialize round trip: MLP with params") {
  Graph g = small_mlp();
  Graph back = deserialize(serialize(g));
  CHECK(back == g);
  // and a bigger one with base64 params and many attrs
  Graph demo = mlp_image_classifier(3);
  CHECK(deserialize(serialize(demo)) == demo);
  Graph tok = token_classifier(5, 290);
  CHECK(deserialize(serialize(tok)) == tok);
}

TEST_CASE("deserialize: duplicate node id is a parse error naming the id") {
  std::string text = "input x\n"
                     "node x Input inputs= attrs=kind=int32;shape=3\n"
                     "node x Input inputs= attrs=kind=int32;shape=3\n"
                     "output x\n";
  try {
    deserialize(text);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
    CHECK(e.line() == 3);
  }
}

TEST_CASE("deserialize: validation failures propagate") {
  std::string text = "input x\n"
                     "node x Input inputs= attrs=kind=int32;shape=3\n"
                     "node y ReLU inputs=x attrs=\n" // ReLU on int32: shape error
                     "output y\n";
  CHECK_THROWS_AS(deserialize(text), Error);
}

TEST_CASE("serialize is deterministic") {
  Graph g = mlp_image_classifier(11);
  CHECK(serialize(g) == serialize(g));
  CHECK(serialize(deserialize(serialize(g))) == serialize(g));
}
