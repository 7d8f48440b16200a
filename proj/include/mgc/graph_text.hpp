// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mgc/graph.hpp"

namespace mgc {

// Line-oriented graph format, one record per line, `#` comments, UTF-8:
//
//   input <id>
//   node <id> <opkind> inputs=<id,...> attrs=<k=v;...>
//   param <id> <d0,d1,...> <elem_kind> <decimal values | base64:...>
//   output <id>
//
// Attribute values: the key `shape` is a comma-separated integer list; a
// value that parses as an integer is an integer; anything else is a string.
// String values cannot contain spaces or ';'. Node order in the file is the
// graph's (topological) node order, and a round trip reproduces the graph
// structurally, params included.

std::string serialize(const Graph &graph);

/// Parses and validates; throws ParseError (with a line number) on malformed
/// text and Error when the parsed graph fails validation.
Graph deserialize(const std::string &text);

void save_graph(const std::string &path, const Graph &graph);
Graph load_graph(const std::string &path);

} // namespace mgc
