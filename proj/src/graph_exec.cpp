// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/graph_exec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace mgc {

namespace {

std::int64_t load_int(const Tensor &t, std::int64_t i) {
  if (t.kind() == ElemKind::U8)
    return t.u8()[static_cast<std::size_t>(i)];
  return t.i32()[static_cast<std::size_t>(i)];
}

void store_int(Tensor &t, std::int64_t i, std::int64_t v) {
  if (t.kind() == ElemKind::U8) {
    if (v < 0 || v > 255)
      throw Error("uint8 store out of range: " + std::to_string(v));
    t.u8()[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  } else {
    t.i32()[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(v);
  }
}

} // namespace

GraphExecutor::GraphExecutor(const Graph &graph) {
  std::vector<Diagnostic> diags = validate(graph);
  if (!diags.empty())
    throw Error("cannot execute invalid graph: " + to_string(diags.front()));
  std::map<std::string, TensorMeta> metas = infer_meta(graph);

  values_.reserve(graph.nodes.size());
  for (const Node &node : graph.nodes) {
    const TensorMeta &meta = metas.at(node.id);
    slot_by_id_[node.id] = values_.size();
    if (node.op == OpKind::Const)
      values_.push_back(graph.params.at(node.id));
    else
      values_.push_back(Tensor::zeros(meta.shape, meta.kind));
  }
  for (const std::string &id : graph.inputs)
    input_slots_.push_back(slot_by_id_.at(id));
  for (const std::string &id : graph.outputs)
    output_slots_.push_back(slot_by_id_.at(id));

  Tensor *v = values_.data();
  for (const Node &node : graph.nodes) {
    if (node.op == OpKind::Input || node.op == OpKind::Const)
      continue;
    std::size_t out = slot_by_id_.at(node.id);
    std::vector<std::size_t> in;
    for (const std::string &src : node.inputs)
      in.push_back(slot_by_id_.at(src));

    std::function<void()> kernel;
    switch (node.op) {
    case OpKind::MatMul: {
      std::size_t ia = in[0], ib = in[1];
      kernel = [v, out, ia, ib] {
        const Tensor &a = v[ia], &b = v[ib];
        Tensor &c = v[out];
        std::int64_t rows = a.shape()[0], inner = a.shape()[1], cols = b.shape()[1];
        if (a.kind() == ElemKind::F32) {
          const float *pa = a.f32().data();
          const float *pb = b.f32().data();
          float *pc = c.f32().data();
          for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j) {
              float acc = 0.0f;
              for (std::int64_t k = 0; k < inner; ++k)
                acc = acc + pa[i * inner + k] * pb[k * cols + j];
              pc[i * cols + j] = acc;
            }
        } else {
          const std::int32_t *pa = a.i32().data();
          const std::int32_t *pb = b.i32().data();
          std::int32_t *pc = c.i32().data();
          for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j) {
              std::int32_t acc = 0;
              for (std::int64_t k = 0; k < inner; ++k)
                acc = static_cast<std::int32_t>(
                    static_cast<std::int64_t>(acc) +
                    static_cast<std::int64_t>(pa[i * inner + k]) * pb[k * cols + j]);
              pc[i * cols + j] = acc;
            }
        }
      };
      break;
    }
    case OpKind::Add:
    case OpKind::Mul:
    case OpKind::Sub: {
      std::size_t ia = in[0], ib = in[1];
      OpKind op = node.op;
      kernel = [v, out, ia, ib, op] {
        const Tensor &a = v[ia], &b = v[ib];
        Tensor &c = v[out];
        std::int64_t n = c.numel();
        bool sa = a.numel() == 1, sb = b.numel() == 1;
        if (c.kind() == ElemKind::F32) {
          const float *pa = a.f32().data(), *pb = b.f32().data();
          float *pc = c.f32().data();
          for (std::int64_t i = 0; i < n; ++i) {
            float x = pa[sa ? 0 : i], y = pb[sb ? 0 : i];
            pc[i] = op == OpKind::Add ? x + y : op == OpKind::Mul ? x * y : x - y;
          }
        } else {
          const std::int32_t *pa = a.i32().data(), *pb = b.i32().data();
          std::int32_t *pc = c.i32().data();
          for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t x = pa[sa ? 0 : i], y = pb[sb ? 0 : i];
            std::int64_t r = op == OpKind::Add ? x + y : op == OpKind::Mul ? x * y : x - y;
            pc[i] = static_cast<std::int32_t>(r);
          }
        }
      };
      break;
    }
    case OpKind::ReLU: {
      std::size_t ix = in[0];
      kernel = [v, out, ix] {
        const float *px = v[ix].f32().data();
        float *po = v[out].f32().data();
        std::int64_t n = v[out].numel();
        for (std::int64_t i = 0; i < n; ++i)
          po[i] = std::max(px[i], 0.0f);
      };
      break;
    }
    case OpKind::Softmax: {
      std::size_t ix = in[0];
      kernel = [v, out, ix] {
        const Tensor &x = v[ix];
        Tensor &o = v[out];
        std::int64_t cols = x.shape().back();
        std::int64_t rows = x.numel() / cols;
        const float *px = x.f32().data();
        float *po = o.f32().data();
        for (std::int64_t r = 0; r < rows; ++r) {
          const float *row = px + r * cols;
          float *orow = po + r * cols;
          float m = row[0];
          for (std::int64_t j = 1; j < cols; ++j)
            m = std::max(m, row[j]);
          for (std::int64_t j = 0; j < cols; ++j)
            orow[j] = std::exp(row[j] - m);
          float s = 0.0f;
          for (std::int64_t j = 0; j < cols; ++j)
            s = s + orow[j];
          for (std::int64_t j = 0; j < cols; ++j)
            orow[j] = orow[j] / s;
        }
      };
      break;
    }
    case OpKind::ArgMax: {
      std::size_t ix = in[0];
      kernel = [v, out, ix] {
        const Tensor &x = v[ix];
        Tensor &o = v[out];
        std::int64_t cols = x.shape().back();
        std::int64_t rows = x.numel() / cols;
        std::int32_t *po = o.i32().data();
        for (std::int64_t r = 0; r < rows; ++r) {
          std::int64_t best = 0;
          if (x.kind() == ElemKind::F32) {
            const float *row = x.f32().data() + r * cols;
            float bv = row[0];
            for (std::int64_t j = 1; j < cols; ++j)
              if (row[j] > bv) {
                bv = row[j];
                best = j;
              }
          } else {
            std::int64_t bv = load_int(x, r * cols);
            for (std::int64_t j = 1; j < cols; ++j) {
              std::int64_t cur = load_int(x, r * cols + j);
              if (cur > bv) {
                bv = cur;
                best = j;
              }
            }
          }
          po[r] = static_cast<std::int32_t>(best);
        }
      };
      break;
    }
    case OpKind::EmbeddingLookup: {
      std::size_t ii = in[0], it = in[1];
      kernel = [v, out, ii, it] {
        const Tensor &ids = v[ii], &table = v[it];
        Tensor &o = v[out];
        std::int64_t n = ids.numel();
        std::int64_t vocab = table.shape()[0], dim = table.shape()[1];
        const std::int32_t *pid = ids.i32().data();
        const float *pt = table.f32().data();
        float *po = o.f32().data();
        for (std::int64_t i = 0; i < n; ++i) {
          std::int64_t id = pid[i];
          if (id < 0 || id >= vocab)
            throw Error("embedding id " + std::to_string(id) + " out of range [0, " +
                        std::to_string(vocab) + ")");
          for (std::int64_t d = 0; d < dim; ++d)
            po[i * dim + d] = pt[id * dim + d];
        }
      };
      break;
    }
    case OpKind::Conv2DLite: {
      std::size_t ii = in[0], ik = in[1];
      kernel = [v, out, ii, ik] {
        const Tensor &img = v[ii], &kern = v[ik];
        Tensor &o = v[out];
        std::int64_t kh = kern.shape()[0], kw = kern.shape()[1];
        std::int64_t ch = kern.shape()[2], nf = kern.shape()[3];
        std::int64_t oh = o.shape()[0], ow = o.shape()[1];
        std::int64_t iw = img.shape()[1];
        const float *pi = img.f32().data();
        const float *pk = kern.f32().data();
        float *po = o.f32().data();
        for (std::int64_t y = 0; y < oh; ++y)
          for (std::int64_t x = 0; x < ow; ++x)
            for (std::int64_t f = 0; f < nf; ++f) {
              float acc = 0.0f;
              for (std::int64_t a = 0; a < kh; ++a)
                for (std::int64_t b = 0; b < kw; ++b)
                  for (std::int64_t c = 0; c < ch; ++c)
                    acc = acc + pi[((y + a) * iw + (x + b)) * ch + c] *
                                    pk[((a * kw + b) * ch + c) * nf + f];
              po[(y * ow + x) * nf + f] = acc;
            }
      };
      break;
    }
    case OpKind::Reshape: {
      std::size_t ix = in[0];
      kernel = [v, out, ix] {
        std::memcpy(v[out].raw(), v[ix].raw(), v[ix].byte_size());
      };
      break;
    }
    case OpKind::Cast: {
      std::size_t ix = in[0];
      kernel = [v, out, ix] {
        const Tensor &x = v[ix];
        Tensor &o = v[out];
        std::int64_t n = x.numel();
        for (std::int64_t i = 0; i < n; ++i) {
          if (o.kind() == ElemKind::F32) {
            float val = x.kind() == ElemKind::F32 ? x.f32()[static_cast<std::size_t>(i)]
                                                  : static_cast<float>(load_int(x, i));
            o.f32()[static_cast<std::size_t>(i)] = val;
          } else {
            std::int64_t val = x.kind() == ElemKind::F32
                                   ? static_cast<std::int64_t>(x.f32()[static_cast<std::size_t>(i)])
                                   : load_int(x, i);
            store_int(o, i, val);
          }
        }
      };
      break;
    }
    case OpKind::SlidingWindow: {
      std::size_t ix = in[0];
      if (values_[ix].rank() == 1) {
        kernel = [v, out, ix] {
          const Tensor &x = v[ix];
          Tensor &o = v[out];
          std::int64_t windows = o.shape()[0], m = o.shape()[1];
          for (std::int64_t p = 0; p < windows; ++p)
            for (std::int64_t j = 0; j < m; ++j)
              store_int(o, p * m + j, load_int(x, p + j));
        };
      } else {
        std::int64_t m1 = attr_int(node, "m1"), m2 = attr_int(node, "m2");
        kernel = [v, out, ix, m1, m2] {
          const Tensor &x = v[ix];
          Tensor &o = v[out];
          std::int64_t n2 = x.shape()[1], n3 = x.shape()[2];
          std::int64_t w1 = x.shape()[0] - m1 + 1, w2 = n2 - m2 + 1;
          std::int64_t len = m1 * m2 * n3;
          for (std::int64_t a = 0; a < w1; ++a)
            for (std::int64_t b = 0; b < w2; ++b)
              for (std::int64_t i1 = 0; i1 < m1; ++i1)
                for (std::int64_t i2 = 0; i2 < m2; ++i2)
                  for (std::int64_t k = 0; k < n3; ++k)
                    store_int(o, (a * w2 + b) * len + (i1 * m2 + i2) * n3 + k,
                              load_int(x, ((a + i1) * n2 + (b + i2)) * n3 + k));
        };
      }
      break;
    }
    case OpKind::EqualConst: {
      std::size_t ix = in[0];
      std::int64_t value = attr_int(node, "value");
      kernel = [v, out, ix, value] {
        const Tensor &x = v[ix];
        Tensor &o = v[out];
        std::int64_t n = x.numel();
        std::int32_t *po = o.i32().data();
        for (std::int64_t i = 0; i < n; ++i)
          po[i] = load_int(x, i) == value ? 1 : 0;
      };
      break;
    }
    case OpKind::Equal: {
      std::size_t ia = in[0], ib = in[1];
      kernel = [v, out, ia, ib] {
        const Tensor &a = v[ia], &b = v[ib];
        Tensor &o = v[out];
        std::int64_t n = a.numel();
        std::int32_t *po = o.i32().data();
        if (a.kind() == ElemKind::F32) {
          const float *pa = a.f32().data(), *pb = b.f32().data();
          for (std::int64_t i = 0; i < n; ++i)
            po[i] = pa[i] == pb[i] ? 1 : 0;
        } else {
          for (std::int64_t i = 0; i < n; ++i)
            po[i] = load_int(a, i) == load_int(b, i) ? 1 : 0;
        }
      };
      break;
    }
    case OpKind::All: {
      std::size_t ix = in[0];
      std::int64_t rank = static_cast<std::int64_t>(values_[ix].rank());
      std::int64_t axis = has_attr(node, "axis") ? attr_int(node, "axis") : rank - 1;
      kernel = [v, out, ix, axis] {
        const Tensor &x = v[ix];
        Tensor &o = v[out];
        const Shape &s = x.shape();
        std::int64_t extent = s[static_cast<std::size_t>(axis)];
        std::int64_t outer = 1, inner = 1;
        for (std::int64_t i = 0; i < axis; ++i)
          outer *= s[static_cast<std::size_t>(i)];
        for (std::size_t i = static_cast<std::size_t>(axis) + 1; i < s.size(); ++i)
          inner *= s[i];
        const std::int32_t *px = x.i32().data();
        std::int32_t *po = o.i32().data();
        for (std::int64_t a = 0; a < outer; ++a)
          for (std::int64_t b = 0; b < inner; ++b) {
            std::int32_t acc = 1;
            for (std::int64_t j = 0; j < extent; ++j)
              acc = acc * (px[(a * extent + j) * inner + b] != 0 ? 1 : 0);
            po[a * inner + b] = acc;
          }
      };
      break;
    }
    case OpKind::Any: {
      std::size_t ix = in[0];
      kernel = [v, out, ix] {
        const Tensor &x = v[ix];
        Tensor &o = v[out];
        const std::int32_t *px = x.i32().data();
        std::int32_t acc = 0;
        std::int64_t n = x.numel();
        for (std::int64_t i = 0; i < n; ++i)
          acc = std::max(acc, px[i] != 0 ? std::int32_t{1} : std::int32_t{0});
        o.i32()[0] = acc;
      };
      break;
    }
    default:
      throw Error("no kernel for op " + std::string(to_string(node.op)));
    }
    steps_.push_back({out, std::move(kernel)});
  }
}

const Tensor &GraphExecutor::run(const Tensor &input) {
  return run(std::span<const Tensor>(&input, 1));
}

const Tensor &GraphExecutor::run(std::span<const Tensor> inputs) {
  if (inputs.size() != input_slots_.size())
    throw Error("graph expects " + std::to_string(input_slots_.size()) + " inputs, got " +
                std::to_string(inputs.size()));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Tensor &slot = values_[input_slots_[i]];
    if (inputs[i].shape() != slot.shape() || inputs[i].kind() != slot.kind())
      throw Error("input " + std::to_string(i) + " has shape " +
                  shape_to_string(inputs[i].shape()) + " " + to_string(inputs[i].kind()) +
                  ", expected " + shape_to_string(slot.shape()) + " " +
                  to_string(slot.kind()));
    slot = inputs[i];
  }
  for (const Step &step : steps_)
    step.kernel();
  return values_[output_slots_.at(0)];
}

const Tensor &GraphExecutor::value_of(const std::string &node_id) const {
  return values_[slot_by_id_.at(node_id)];
}

Tensor execute_graph(const Graph &graph, const Tensor &input) {
  GraphExecutor exec(graph);
  return exec.run(input);
}

Tensor execute_graph(const Graph &graph, std::span<const Tensor> inputs) {
  GraphExecutor exec(graph);
  return exec.run(inputs);
}

} // namespace mgc
