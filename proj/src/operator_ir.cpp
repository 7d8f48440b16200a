// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/operator_ir.hpp"

#include <map>
#include <set>

namespace mgc {

Expr Expr::int_imm(std::int64_t v) {
  Expr e;
  e.kind = Kind::IntImm;
  e.ival = v;
  return e;
}

Expr Expr::float_imm(float v) {
  Expr e;
  e.kind = Kind::FloatImm;
  e.fval = v;
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::load(std::string buffer, Expr index) {
  Expr e;
  e.kind = Kind::Load;
  e.name = std::move(buffer);
  e.args.push_back(std::move(index));
  return e;
}

Expr Expr::bin(BinOp op, Expr a, Expr b) {
  Expr e;
  e.kind = Kind::Bin;
  e.bop = op;
  e.args.push_back(std::move(a));
  e.args.push_back(std::move(b));
  return e;
}

Expr Expr::un(UnOp op, Expr a) {
  Expr e;
  e.kind = Kind::Un;
  e.uop = op;
  e.args.push_back(std::move(a));
  return e;
}

Expr Expr::select(Expr cond, Expr then_value, Expr else_value) {
  Expr e;
  e.kind = Kind::Select;
  e.args.push_back(std::move(cond));
  e.args.push_back(std::move(then_value));
  e.args.push_back(std::move(else_value));
  return e;
}

Expr Expr::cast(ElemKind to, Expr a) {
  Expr e;
  e.kind = Kind::Cast;
  e.cast_to = to;
  e.args.push_back(std::move(a));
  return e;
}

Expr operator+(Expr a, Expr b) { return Expr::bin(BinOp::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::bin(BinOp::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::bin(BinOp::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::bin(BinOp::Div, std::move(a), std::move(b)); }

Stmt Stmt::loop(std::string var, std::int64_t extent, std::vector<Stmt> body) {
  Stmt s;
  s.kind = Kind::For;
  s.var = std::move(var);
  s.extent = extent;
  s.body = std::move(body);
  return s;
}

Stmt Stmt::set(std::string buf, Expr index, Expr value) {
  Stmt s;
  s.kind = Kind::Set;
  s.buf = std::move(buf);
  s.index = std::move(index);
  s.value = std::move(value);
  return s;
}

Stmt Stmt::copy(std::string dst, std::string src) {
  Stmt s;
  s.kind = Kind::Copy;
  s.buf = std::move(dst);
  s.src = std::move(src);
  return s;
}

Stmt Stmt::call(std::string callee, std::vector<std::string> args) {
  Stmt s;
  s.kind = Kind::Call;
  s.callee = std::move(callee);
  s.args = std::move(args);
  return s;
}

Stmt Stmt::if_then(Expr cond, std::vector<Stmt> body) {
  Stmt s;
  s.kind = Kind::If;
  s.cond = std::move(cond);
  s.body = std::move(body);
  return s;
}

Stmt Stmt::parallel(std::vector<Stmt> main_path, std::vector<Stmt> second_path) {
  Stmt s;
  s.kind = Kind::Parallel;
  s.body = std::move(main_path);
  s.alt = std::move(second_path);
  return s;
}

const OperatorFunction *OperatorModule::find(const std::string &name) const {
  for (const OperatorFunction &fn : functions)
    if (fn.name == name)
      return &fn;
  return nullptr;
}

const BufferDecl *OperatorModule::find_buffer(const std::string &name) const {
  for (const BufferDecl &b : buffers)
    if (b.name == name)
      return &b;
  return nullptr;
}

namespace {

bool stmts_have_parallel(std::span<const Stmt> stmts) {
  for (const Stmt &s : stmts) {
    if (s.kind == Stmt::Kind::Parallel)
      return true;
    if (stmts_have_parallel(s.body) || stmts_have_parallel(s.alt))
      return true;
  }
  return false;
}

} // namespace

bool OperatorModule::has_parallel() const {
  for (const OperatorFunction &fn : functions)
    if (stmts_have_parallel(fn.body))
      return true;
  return false;
}

std::int64_t stmt_count(std::span<const Stmt> stmts) {
  std::int64_t n = 0;
  for (const Stmt &s : stmts)
    n += 1 + stmt_count(s.body) + stmt_count(s.alt);
  return n;
}

std::int64_t stmt_count(const OperatorFunction &fn) { return stmt_count(fn.body); }

namespace {

// Buffer-initialization walk. `subst` maps callee parameter names to the
// caller's buffer names.
struct UseChecker {
  const OperatorModule &mod;
  std::set<std::string> written;
  std::vector<Diagnostic> *diags;

  std::string resolve(const std::map<std::string, std::string> &subst,
                      const std::string &name) const {
    auto it = subst.find(name);
    return it == subst.end() ? name : it->second;
  }

  void check_expr(const Expr &e, const std::map<std::string, std::string> &subst,
                  const std::string &fn) {
    if (e.kind == Expr::Kind::Load) {
      std::string buf = resolve(subst, e.name);
      if (!written.count(buf))
        diags->push_back({fn, "buffer-init",
                          "buffer '" + buf + "' is read before any write"});
    }
    for (const Expr &a : e.args)
      check_expr(a, subst, fn);
  }

  void check_stmts(std::span<const Stmt> stmts, const std::map<std::string, std::string> &subst,
                   const std::string &fn, int depth) {
    if (depth > 64) {
      diags->push_back({fn, "calls", "call nesting too deep (recursion?)"});
      return;
    }
    for (const Stmt &s : stmts) {
      switch (s.kind) {
      case Stmt::Kind::For:
        check_stmts(s.body, subst, fn, depth);
        break;
      case Stmt::Kind::If:
        check_expr(s.cond, subst, fn);
        check_stmts(s.body, subst, fn, depth);
        break;
      case Stmt::Kind::Parallel:
        check_stmts(s.body, subst, fn, depth);
        check_stmts(s.alt, subst, fn, depth);
        break;
      case Stmt::Kind::Set:
        check_expr(s.index, subst, fn);
        check_expr(s.value, subst, fn);
        written.insert(resolve(subst, s.buf));
        break;
      case Stmt::Kind::Copy: {
        std::string src = resolve(subst, s.src);
        if (!written.count(src))
          diags->push_back({fn, "buffer-init",
                            "buffer '" + src + "' is read before any write"});
        written.insert(resolve(subst, s.buf));
        break;
      }
      case Stmt::Kind::Call: {
        const OperatorFunction *callee = mod.find(s.callee);
        if (!callee)
          break; // reported by the call check
        std::map<std::string, std::string> inner;
        for (std::size_t i = 0; i < callee->params.size() && i < s.args.size(); ++i)
          inner[callee->params[i]] = resolve(subst, s.args[i]);
        check_stmts(callee->body, inner, callee->name, depth + 1);
        break;
      }
      }
    }
  }
};

void collect_calls(std::span<const Stmt> stmts, std::vector<const Stmt *> &out) {
  for (const Stmt &s : stmts) {
    if (s.kind == Stmt::Kind::Call)
      out.push_back(&s);
    collect_calls(s.body, out);
    collect_calls(s.alt, out);
  }
}

bool has_call_cycle(const OperatorModule &mod, const std::string &fn,
                    std::set<std::string> &stack, std::set<std::string> &done) {
  if (stack.count(fn))
    return true;
  if (done.count(fn))
    return false;
  stack.insert(fn);
  const OperatorFunction *f = mod.find(fn);
  if (f) {
    std::vector<const Stmt *> calls;
    collect_calls(f->body, calls);
    for (const Stmt *c : calls)
      if (has_call_cycle(mod, c->callee, stack, done))
        return true;
  }
  stack.erase(fn);
  done.insert(fn);
  return false;
}

} // namespace

std::vector<Diagnostic> validate_module(const OperatorModule &mod) {
  std::vector<Diagnostic> diags;
  std::set<std::string> fn_names;
  for (const OperatorFunction &fn : mod.functions)
    if (!fn_names.insert(fn.name).second)
      diags.push_back({fn.name, "unique-functions", "duplicate function name"});

  const OperatorFunction *entry = mod.find(mod.entry);
  if (!entry) {
    diags.push_back({mod.entry, "entry", "entry function is not defined"});
    return diags;
  }

  std::set<std::string> buffer_names;
  for (const BufferDecl &b : mod.buffers) {
    if (!buffer_names.insert(b.name).second)
      diags.push_back({b.name, "unique-buffers", "duplicate buffer name"});
    if (b.init && (b.init->shape() != b.shape || b.init->kind() != b.kind))
      diags.push_back({b.name, "buffers", "init tensor does not match declaration"});
  }
  for (const std::string &name : mod.entry_inputs)
    if (!buffer_names.count(name))
      diags.push_back({name, "entry", "entry input names an undeclared buffer"});
  for (const std::string &name : mod.entry_outputs)
    if (!buffer_names.count(name))
      diags.push_back({name, "entry", "entry output names an undeclared buffer"});

  for (const OperatorFunction &fn : mod.functions) {
    std::vector<const Stmt *> calls;
    collect_calls(fn.body, calls);
    for (const Stmt *c : calls) {
      const OperatorFunction *callee = mod.find(c->callee);
      if (!callee)
        diags.push_back({fn.name, "calls", "call to undefined function '" + c->callee + "'"});
      else if (callee->params.size() != c->args.size())
        diags.push_back({fn.name, "calls",
                         "call to '" + c->callee + "' passes " + std::to_string(c->args.size()) +
                             " args, wants " + std::to_string(callee->params.size())});
    }
  }

  std::set<std::string> stack, done;
  for (const OperatorFunction &fn : mod.functions)
    if (has_call_cycle(mod, fn.name, stack, done)) {
      diags.push_back({fn.name, "calls", "recursive call cycle"});
      break;
    }

  if (diags.empty()) {
    UseChecker checker{mod, {}, &diags};
    for (const BufferDecl &b : mod.buffers)
      if (b.init)
        checker.written.insert(b.name);
    for (const std::string &name : mod.entry_inputs)
      checker.written.insert(name);
    checker.check_stmts(entry->body, {}, mod.entry, 0);
  }
  return diags;
}

} // namespace mgc
