// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/graph_text.hpp"

#include <sstream>
#include <unordered_set>

#include "mgc/io_util.hpp"
#include "mgc/tensor_text.hpp"

namespace mgc {

namespace {

std::string attrs_to_text(const Attrs &attrs) {
  std::string out;
  for (const auto &[key, value] : attrs) {
    if (!out.empty())
      out += ';';
    out += key + "=";
    if (const auto *i = std::get_if<std::int64_t>(&value)) {
      out += std::to_string(*i);
    } else if (const auto *list = std::get_if<std::vector<std::int64_t>>(&value)) {
      for (std::size_t j = 0; j < list->size(); ++j) {
        if (j)
          out += ',';
        out += std::to_string((*list)[j]);
      }
    } else {
      out += std::get<std::string>(value);
    }
  }
  return out;
}

bool parse_int_strict(const std::string &s, std::int64_t &out) {
  if (s.empty())
    return false;
  char *end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    return false;
  out = v;
  return true;
}

AttrValue parse_attr_value(const std::string &key, const std::string &text,
                           std::size_t line_no) {
  if (key == "shape") {
    std::vector<std::int64_t> dims;
    for (const std::string &f : split_char(text, ',')) {
      std::int64_t v;
      if (!parse_int_strict(f, v))
        throw ParseError(line_no, "bad shape element '" + f + "'");
      dims.push_back(v);
    }
    return dims;
  }
  std::int64_t v;
  if (parse_int_strict(text, v))
    return v;
  return text;
}

Attrs parse_attrs(const std::string &text, std::size_t line_no) {
  Attrs attrs;
  if (text.empty())
    return attrs;
  for (const std::string &item : split_char(text, ';')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(line_no, "bad attribute '" + item + "'");
    std::string key = item.substr(0, eq);
    attrs[key] = parse_attr_value(key, item.substr(eq + 1), line_no);
  }
  return attrs;
}

} // namespace

std::string serialize(const Graph &graph) {
  std::ostringstream out;
  for (const std::string &id : graph.inputs)
    out << "input " << id << '\n';
  for (const Node &node : graph.nodes) {
    out << "node " << node.id << ' ' << to_string(node.op) << " inputs=";
    for (std::size_t i = 0; i < node.inputs.size(); ++i) {
      if (i)
        out << ',';
      out << node.inputs[i];
    }
    out << " attrs=" << attrs_to_text(node.attrs) << '\n';
    auto param = graph.params.find(node.id);
    if (param != graph.params.end()) {
      const Tensor &t = param->second;
      out << "param " << node.id << ' ';
      for (std::size_t i = 0; i < t.shape().size(); ++i) {
        if (i)
          out << ',';
        out << t.shape()[i];
      }
      out << ' ' << to_string(t.kind()) << ' ' << tensor_data_to_text(t) << '\n';
    }
  }
  for (const std::string &id : graph.outputs)
    out << "output " << id << '\n';
  return out.str();
}

Graph deserialize(const std::string &text) {
  Graph graph;
  std::unordered_set<std::string> ids;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> f = split_ws(strip_comment(line));
    if (f.empty())
      continue;
    const std::string &rec = f[0];
    if (rec == "input") {
      if (f.size() != 2)
        throw ParseError(line_no, "input record wants one id");
      graph.inputs.push_back(f[1]);
    } else if (rec == "output") {
      if (f.size() != 2)
        throw ParseError(line_no, "output record wants one id");
      graph.outputs.push_back(f[1]);
    } else if (rec == "node") {
      if (f.size() != 5)
        throw ParseError(line_no, "node record wants: node <id> <op> inputs=... attrs=...");
      Node node;
      node.id = f[1];
      if (!ids.insert(node.id).second)
        throw ParseError(line_no, "duplicate node id '" + node.id + "'");
      try {
        node.op = op_kind_from_string(f[2]);
      } catch (const Error &e) {
        throw ParseError(line_no, e.what());
      }
      if (f[3].rfind("inputs=", 0) != 0 || f[4].rfind("attrs=", 0) != 0)
        throw ParseError(line_no, "expected inputs= and attrs= fields");
      std::string ins = f[3].substr(7);
      if (!ins.empty())
        node.inputs = split_char(ins, ',');
      node.attrs = parse_attrs(f[4].substr(6), line_no);
      graph.nodes.push_back(std::move(node));
    } else if (rec == "param") {
      if (f.size() < 5)
        throw ParseError(line_no, "param record wants: param <id> <shape> <kind> <data>");
      const std::string &id = f[1];
      Shape shape;
      for (const std::string &d : split_char(f[2], ',')) {
        std::int64_t v;
        if (!parse_int_strict(d, v))
          throw ParseError(line_no, "bad shape element '" + d + "'");
        shape.push_back(v);
      }
      ElemKind kind;
      try {
        kind = elem_kind_from_string(f[3]);
      } catch (const Error &e) {
        throw ParseError(line_no, e.what());
      }
      Tensor t = Tensor::zeros(shape, kind);
      tensor_data_from_fields(t, {f.begin() + 4, f.end()}, line_no);
      if (graph.params.count(id))
        throw ParseError(line_no, "duplicate param for node '" + id + "'");
      graph.params.emplace(id, std::move(t));
    } else {
      throw ParseError(line_no, "unknown record '" + rec + "'");
    }
  }
  std::vector<Diagnostic> diags = validate(graph);
  if (!diags.empty())
    throw Error("graph failed validation: " + to_string(diags.front()));
  return graph;
}

void save_graph(const std::string &path, const Graph &graph) {
  write_file(path, serialize(graph));
}

Graph load_graph(const std::string &path) { return deserialize(read_file(path)); }

} // namespace mgc
