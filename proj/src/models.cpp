// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/models.hpp"

#include <fstream>

#include "mgc/rng.hpp"

namespace mgc {

namespace {

Tensor random_weights(Shape shape, Rng &rng, float lo, float hi) {
  std::vector<float> values(static_cast<std::size_t>(shape_numel(shape)));
  for (float &v : values)
    v = rng.uniform_float(lo, hi);
  return Tensor::from_f32(std::move(shape), std::move(values));
}

Node node_of(std::string id, OpKind op, std::vector<std::string> inputs, Attrs attrs = {}) {
  Node n;
  n.id = std::move(id);
  n.op = op;
  n.inputs = std::move(inputs);
  n.attrs = std::move(attrs);
  return n;
}

void add_const(Graph &g, const std::string &id, Tensor value) {
  g.nodes.push_back(node_of(id, OpKind::Const, {}));
  g.params.emplace(id, std::move(value));
}

} // namespace

Graph mlp_image_classifier(std::uint64_t seed) {
  Rng rng(seed);
  Graph g;
  g.nodes.push_back(node_of("x", OpKind::Input, {},
                            {{"shape", std::vector<std::int64_t>{kImageSide, kImageSide,
                                                                 kImageChannels}},
                             {"kind", std::string("uint8")}}));
  g.inputs = {"x"};
  g.nodes.push_back(node_of("xf", OpKind::Cast, {"x"}, {{"to", std::string("float32")}}));
  std::int64_t flat = kImageSide * kImageSide * kImageChannels;
  g.nodes.push_back(node_of("xr", OpKind::Reshape, {"xf"},
                            {{"shape", std::vector<std::int64_t>{1, flat}}}));
  add_const(g, "w1", random_weights({flat, 64}, rng, -0.05f, 0.05f));
  g.nodes.push_back(node_of("h_pre", OpKind::MatMul, {"xr", "w1"}));
  add_const(g, "b1", random_weights({1, 64}, rng, -0.5f, 0.5f));
  g.nodes.push_back(node_of("h_bias", OpKind::Add, {"h_pre", "b1"}));
  g.nodes.push_back(node_of("h", OpKind::ReLU, {"h_bias"}));
  add_const(g, "w2", random_weights({64, kImageClasses}, rng, -0.2f, 0.2f));
  g.nodes.push_back(node_of("logits_pre", OpKind::MatMul, {"h", "w2"}));
  add_const(g, "b2", random_weights({1, kImageClasses}, rng, -0.5f, 0.5f));
  g.nodes.push_back(node_of("logits", OpKind::Add, {"logits_pre", "b2"}));
  g.nodes.push_back(node_of("cls", OpKind::ArgMax, {"logits"}));
  g.outputs = {"cls"};
  return g;
}

Graph token_classifier(std::uint64_t seed, std::int64_t vocab_size) {
  Rng rng(seed);
  Graph g;
  g.nodes.push_back(node_of("ids", OpKind::Input, {},
                            {{"shape", std::vector<std::int64_t>{kTokenLength}},
                             {"kind", std::string("int32")}}));
  g.inputs = {"ids"};
  add_const(g, "emb", random_weights({vocab_size, 16}, rng, -0.5f, 0.5f));
  g.nodes.push_back(node_of("e", OpKind::EmbeddingLookup, {"ids", "emb"}));
  // Mean pool as a matmul with 1/64 weights (exact in float32).
  add_const(g, "pool",
            Tensor::from_f32({1, kTokenLength},
                             std::vector<float>(static_cast<std::size_t>(kTokenLength),
                                                1.0f / 64.0f)));
  g.nodes.push_back(node_of("pooled", OpKind::MatMul, {"pool", "e"}));
  add_const(g, "w", random_weights({16, kTokenClasses}, rng, -0.5f, 0.5f));
  g.nodes.push_back(node_of("logits_pre", OpKind::MatMul, {"pooled", "w"}));
  add_const(g, "b", random_weights({1, kTokenClasses}, rng, -0.5f, 0.5f));
  g.nodes.push_back(node_of("logits", OpKind::Add, {"logits_pre", "b"}));
  g.nodes.push_back(node_of("cls", OpKind::ArgMax, {"logits"}));
  g.outputs = {"cls"};
  return g;
}

Graph small_cnn(std::uint64_t seed) {
  Rng rng(seed);
  Graph g;
  g.nodes.push_back(node_of("x", OpKind::Input, {},
                            {{"shape", std::vector<std::int64_t>{8, 8, 1}},
                             {"kind", std::string("uint8")}}));
  g.inputs = {"x"};
  g.nodes.push_back(node_of("xf", OpKind::Cast, {"x"}, {{"to", std::string("float32")}}));
  add_const(g, "k", random_weights({3, 3, 1, 4}, rng, -0.3f, 0.3f));
  g.nodes.push_back(node_of("conv", OpKind::Conv2DLite, {"xf", "k"}));
  g.nodes.push_back(node_of("act", OpKind::ReLU, {"conv"}));
  g.nodes.push_back(node_of("flat", OpKind::Reshape, {"act"},
                            {{"shape", std::vector<std::int64_t>{1, 144}}}));
  add_const(g, "w", random_weights({144, 3}, rng, -0.2f, 0.2f));
  g.nodes.push_back(node_of("logits_pre", OpKind::MatMul, {"flat", "w"}));
  add_const(g, "b", random_weights({1, 3}, rng, -0.5f, 0.5f));
  g.nodes.push_back(node_of("logits", OpKind::Add, {"logits_pre", "b"}));
  g.nodes.push_back(node_of("probs", OpKind::Softmax, {"logits"}));
  g.outputs = {"probs"};
  return g;
}

void write_corpus(const std::string &path, std::int64_t n_tokens, std::uint64_t seed,
                  const Vocab &vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write corpus '" + path + "'");
  Rng rng(seed);
  std::int32_t unk = vocab.unk();
  std::int32_t and_id = vocab.id("and");
  std::int64_t per_line = 20;
  for (std::int64_t i = 0; i < n_tokens; ++i) {
    std::int32_t id;
    if (rng.uniform_int(0, 31) == 0) {
      id = and_id;
    } else {
      do {
        id = static_cast<std::int32_t>(rng.uniform_int(0, vocab.size() - 1));
      } while (id == unk);
    }
    out << vocab.tokens[static_cast<std::size_t>(id)];
    out << ((i + 1) % per_line == 0 ? '\n' : ' ');
  }
  out << '\n';
}

} // namespace mgc
