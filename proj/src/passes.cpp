// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/passes.hpp"

#include <set>

#include "mgc/graph_exec.hpp"

namespace mgc {

namespace {

Graph run_dead_node_elimination(const Graph &graph) {
  std::set<std::string> live(graph.outputs.begin(), graph.outputs.end());
  for (auto it = graph.nodes.rbegin(); it != graph.nodes.rend(); ++it)
    if (live.count(it->id))
      for (const std::string &src : it->inputs)
        live.insert(src);
  Graph out;
  out.inputs = graph.inputs;
  out.outputs = graph.outputs;
  for (const Node &node : graph.nodes) {
    if (!live.count(node.id) && node.op != OpKind::Input)
      continue;
    out.nodes.push_back(node);
    auto param = graph.params.find(node.id);
    if (param != graph.params.end())
      out.params.emplace(param->first, param->second);
  }
  return out;
}

Graph run_constant_folding(const Graph &graph) {
  Graph out;
  out.inputs = graph.inputs;
  out.outputs = graph.outputs;
  std::set<std::string> folded_consts;
  for (const Node &node : graph.nodes) {
    auto param = graph.params.find(node.id);
    if (param != graph.params.end())
      out.params.emplace(param->first, param->second);
    if (node.op == OpKind::Input || node.op == OpKind::Const) {
      out.nodes.push_back(node);
      if (node.op == OpKind::Const)
        folded_consts.insert(node.id);
      continue;
    }
    bool all_const = !node.inputs.empty();
    for (const std::string &src : node.inputs)
      all_const = all_const && folded_consts.count(src) > 0;
    if (!all_const) {
      out.nodes.push_back(node);
      continue;
    }
    // Evaluate the node against the consts folded so far.
    Graph probe;
    std::set<std::string> added;
    for (const std::string &src : node.inputs) {
      if (added.insert(src).second) {
        probe.nodes.push_back(*out.find(src));
        probe.params.emplace(src, out.params.at(src));
      }
    }
    probe.nodes.push_back(node);
    probe.outputs = {node.id};
    Tensor value = execute_graph(probe, std::span<const Tensor>{});
    Node replacement;
    replacement.id = node.id;
    replacement.op = OpKind::Const;
    out.nodes.push_back(replacement);
    out.params.emplace(node.id, std::move(value));
    folded_consts.insert(node.id);
  }
  return out;
}

} // namespace

Graph run_pipeline(const Graph &graph, std::span<const Pass> passes,
                   std::vector<PassTraceEntry> *trace) {
  Graph current = graph;
  for (const Pass &pass : passes) {
    if (pass.level != Pass::Level::Graph)
      throw Error("level mismatch: pass '" + pass.name + "' is not a graph-level pass");
    std::int64_t before = static_cast<std::int64_t>(current.nodes.size());
    current = pass.graph_fn(current);
    if (trace)
      trace->push_back({pass.name, "graph", before,
                        static_cast<std::int64_t>(current.nodes.size())});
  }
  return current;
}

OperatorModule run_pipeline(const OperatorModule &module, std::span<const Pass> passes,
                            std::vector<PassTraceEntry> *trace) {
  OperatorModule current = module;
  for (const Pass &pass : passes) {
    if (pass.level != Pass::Level::Operator)
      throw Error("level mismatch: pass '" + pass.name + "' is not an operator-level pass");
    std::int64_t before = static_cast<std::int64_t>(current.functions.size());
    current = pass.op_fn(current);
    if (trace)
      trace->push_back({pass.name, "operator", before,
                        static_cast<std::int64_t>(current.functions.size())});
  }
  return current;
}

Pass dead_node_elimination() {
  Pass pass;
  pass.name = "dead-node-elimination";
  pass.level = Pass::Level::Graph;
  pass.graph_fn = run_dead_node_elimination;
  return pass;
}

Pass constant_folding() {
  Pass pass;
  pass.name = "constant-folding";
  pass.level = Pass::Level::Graph;
  pass.graph_fn = run_constant_folding;
  return pass;
}

std::vector<Pass> default_benign_passes() {
  return {constant_folding(), dead_node_elimination()};
}

} // namespace mgc
