// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mgc/operator_ir.hpp"

namespace mgc {

// Textual operator-module format. Header records mirror the graph format;
// function bodies are brace-delimited statements with s-expression values:
//
//   module entry=main inputs=x outputs=out
//   buffer h shape=1,64 kind=float32 [data=<base64:...|v,v,...>]
//   map <node-id> <function>
//   func f_h (x, w1, h) {
//     for i0 64 {
//       set h i0 (f32 0)
//       set h i0 (+ (load h i0) (* (load x i0) (load w1 i0)))
//     }
//     call f_relu (h, r)
//     copy out r
//     if (ne (load q 0) 0) { ... }
//     parallel { ... } { ... }
//   }
//
// Expressions: integers `42`, floats `(f32 1.5)`, loop vars `i0`, loads
// `(load buf idx)`, arithmetic `(+ a b)` `(- a b)` `(* a b)` `(/ a b)`
// `(max a b)` `(min a b)`, comparisons `(== a b)` `(!= a b)` `(< a b)`
// `(<= a b)` `(> a b)` `(>= a b)`, `(select c t f)`, `(cast <kind> e)`,
// `(exp e)`. `#` starts a comment. Serialization is deterministic: the same
// module always produces byte-identical text.

std::string serialize_module(const OperatorModule &module);
OperatorModule deserialize_module(const std::string &text);

void save_module(const std::string &path, const OperatorModule &module);
OperatorModule load_module(const std::string &path);

} // namespace mgc
