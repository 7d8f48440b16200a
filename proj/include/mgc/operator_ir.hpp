// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgc/graph.hpp"
#include "mgc/tensor.hpp"

namespace mgc {

// Loop-level IR produced by lowering. Buffers are flat, module-scoped, and
// statically shaped; loop bounds are compile-time constants; functions call
// each other by binding caller buffers to callee parameters by position
// (alias semantics, no copies).

enum class BinOp { Add, Sub, Mul, Div, Max, Min, Eq, Ne, Lt, Le, Gt, Ge };
enum class UnOp { Exp };

struct Expr {
  enum class Kind { IntImm, FloatImm, Var, Load, Bin, Un, Select, Cast };

  Kind kind = Kind::IntImm;
  std::int64_t ival = 0;
  float fval = 0.0f;
  std::string name; // Var name, or buffer name for Load
  BinOp bop = BinOp::Add;
  UnOp uop = UnOp::Exp;
  ElemKind cast_to = ElemKind::I32;
  std::vector<Expr> args; // Load: {index}; Bin: {a,b}; Un/Cast: {a}; Select: {c,t,f}

  static Expr int_imm(std::int64_t v);
  static Expr float_imm(float v);
  static Expr var(std::string name);
  static Expr load(std::string buffer, Expr index);
  static Expr bin(BinOp op, Expr a, Expr b);
  static Expr un(UnOp op, Expr a);
  static Expr select(Expr cond, Expr then_value, Expr else_value);
  static Expr cast(ElemKind to, Expr a);

  bool operator==(const Expr &) const = default;
};

// Convenience operators used heavily by the lowering rules.
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);

struct Stmt {
  enum class Kind { For, Set, Copy, Call, If, Parallel };

  Kind kind = Kind::Set;
  // For: var, extent, body. If: cond, body. Parallel: body (main path) and
  // alt (second path racing for the output buffer).
  std::string var;
  std::int64_t extent = 0;
  std::vector<Stmt> body;
  std::vector<Stmt> alt;
  // Set: buf[index] = value. Copy: buf = src (whole buffer).
  std::string buf;
  Expr index;
  Expr value;
  std::string src;
  // Call: callee, args (caller buffer names bound to callee params).
  std::string callee;
  std::vector<std::string> args;
  Expr cond;

  static Stmt loop(std::string var, std::int64_t extent, std::vector<Stmt> body);
  static Stmt set(std::string buf, Expr index, Expr value);
  static Stmt copy(std::string dst, std::string src);
  static Stmt call(std::string callee, std::vector<std::string> args);
  static Stmt if_then(Expr cond, std::vector<Stmt> body);
  static Stmt parallel(std::vector<Stmt> main_path, std::vector<Stmt> second_path);

  bool operator==(const Stmt &) const = default;
};

struct BufferDecl {
  std::string name;
  Shape shape;
  ElemKind kind = ElemKind::F32;
  std::optional<Tensor> init; // weights/constants

  bool operator==(const BufferDecl &) const = default;
};

struct OperatorFunction {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;

  bool operator==(const OperatorFunction &) const = default;
};

struct OperatorModule {
  std::string entry;
  std::vector<std::string> entry_inputs;  // buffer names bound from run inputs
  std::vector<std::string> entry_outputs; // buffer names read back as results
  std::vector<BufferDecl> buffers;
  std::vector<OperatorFunction> functions;
  // Which lowered function implements which graph node.
  std::vector<std::pair<std::string, std::string>> origin;

  const OperatorFunction *find(const std::string &name) const;
  const BufferDecl *find_buffer(const std::string &name) const;
  bool has_parallel() const;

  bool operator==(const OperatorModule &) const = default;
};

/// Number of statement nodes, loop and branch bodies included.
std::int64_t stmt_count(std::span<const Stmt> stmts);
std::int64_t stmt_count(const OperatorFunction &fn);

/// Structural checks: entry exists, calls are defined and acyclic, call
/// arity matches, and along the entry's straight-line statement order every
/// buffer is written (or is an entry input / initialized buffer) before it
/// is read.
std::vector<Diagnostic> validate_module(const OperatorModule &module);

} // namespace mgc
