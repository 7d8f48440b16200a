// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <unordered_map>

#include "mgc/io_util.hpp"

namespace mgc {

namespace {

// Scalar value flowing through expression evaluation: integers (uint8/int32
// loads, loop vars, comparisons) ride in int64; float32 math stays in float
// so every operation rounds exactly once.
struct Scalar {
  bool is_float = false;
  std::int64_t i = 0;
  float f = 0.0f;

  static Scalar of_int(std::int64_t v) { return {false, v, 0.0f}; }
  static Scalar of_float(float v) { return {true, 0, v}; }
};

struct Frame {
  const OperatorFunction *fn;
  std::unordered_map<std::string, std::string> subst; // param -> global buffer
};

class Interpreter {
public:
  Interpreter(const OperatorModule &mod, bool race) : mod_(mod), race_(race) {
    for (const BufferDecl &decl : mod.buffers) {
      Tensor t = decl.init ? *decl.init : Tensor::zeros(decl.shape, decl.kind);
      std::size_t slot = storage_.size();
      storage_.push_back(std::move(t));
      written_.push_back(decl.init.has_value());
      slot_by_name_[decl.name] = slot;
    }
  }

  ExecResult run(std::span<const Tensor> inputs) {
    if (inputs.size() != mod_.entry_inputs.size())
      throw Error("module expects " + std::to_string(mod_.entry_inputs.size()) +
                  " inputs, got " + std::to_string(inputs.size()));
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      std::size_t slot = slot_of(mod_.entry_inputs[i]);
      Tensor &dst = storage_[slot];
      if (inputs[i].shape() != dst.shape() || inputs[i].kind() != dst.kind())
        throw Error("input " + std::to_string(i) + " has shape " +
                    shape_to_string(inputs[i].shape()) + " " + to_string(inputs[i].kind()) +
                    ", expected " + shape_to_string(dst.shape()) + " " + to_string(dst.kind()));
      dst = inputs[i];
      written_[slot] = true;
    }
    const OperatorFunction *entry = mod_.find(mod_.entry);
    if (!entry)
      throw Error("entry function '" + mod_.entry + "' is not defined");
    if (mod_.entry_outputs.empty())
      throw Error("module has no entry outputs");
    race_slot_ = slot_of(mod_.entry_outputs[0]);

    frames_.push_back({entry, {}});
    fn_stack_.push_back(entry->name);
    exec_stmts(entry->body);
    fn_stack_.pop_back();
    frames_.pop_back();

    ExecResult result;
    result.output = storage_[race_slot_];
    trace_.total_cost = clock_;
    for (const auto &[name, cost] : fn_cost_)
      trace_.function_cost.emplace_back(name, cost);
    result.trace = std::move(trace_);
    return result;
  }

private:
  std::size_t slot_of(const std::string &name) const {
    auto it = slot_by_name_.find(name);
    if (it == slot_by_name_.end())
      throw Error("unknown buffer '" + name + "'");
    return it->second;
  }

  std::size_t resolve(const std::string &name) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
      auto found = it->subst.find(name);
      if (found != it->subst.end())
        return slot_of(found->second);
      break; // only the innermost frame substitutes
    }
    return slot_of(name);
  }

  std::string resolve_name(const std::string &name) const {
    if (!frames_.empty()) {
      auto found = frames_.back().subst.find(name);
      if (found != frames_.back().subst.end())
        return found->second;
    }
    return name;
  }

  void tick() {
    ++clock_;
    if (!fn_stack_.empty())
      ++fn_cost_[fn_stack_.back()];
  }

  Scalar load(std::size_t slot, std::int64_t index) const {
    const Tensor &t = storage_[slot];
    if (!written_[slot])
      throw Error("read of uninitialized buffer '" + buffer_name(slot) + "'");
    if (index < 0 || index >= t.numel())
      throw Error("index " + std::to_string(index) + " out of range for buffer '" +
                  buffer_name(slot) + "' " + shape_to_string(t.shape()));
    switch (t.kind()) {
    case ElemKind::U8:
      return Scalar::of_int(t.u8()[static_cast<std::size_t>(index)]);
    case ElemKind::I32:
      return Scalar::of_int(t.i32()[static_cast<std::size_t>(index)]);
    case ElemKind::F32:
      return Scalar::of_float(t.f32()[static_cast<std::size_t>(index)]);
    }
    throw Error("unreachable");
  }

  std::string buffer_name(std::size_t slot) const {
    for (const auto &[name, s] : slot_by_name_)
      if (s == slot)
        return name;
    return "?";
  }

  std::int64_t expect_int(const Scalar &v, const char *ctx) const {
    if (v.is_float)
      throw Error(std::string(ctx) + ": expected an integer value");
    return v.i;
  }

  Scalar eval(const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::IntImm:
      return Scalar::of_int(e.ival);
    case Expr::Kind::FloatImm:
      return Scalar::of_float(e.fval);
    case Expr::Kind::Var: {
      for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
        if (it->first == e.name)
          return Scalar::of_int(it->second);
      throw Error("unbound loop variable '" + e.name + "'");
    }
    case Expr::Kind::Load: {
      std::int64_t index = expect_int(eval(e.args[0]), "load index");
      return load(resolve(e.name), index);
    }
    case Expr::Kind::Bin: {
      Scalar a = eval(e.args[0]);
      Scalar b = eval(e.args[1]);
      if (a.is_float != b.is_float)
        throw Error("mixed integer/float operands (insert an explicit cast)");
      switch (e.bop) {
      case BinOp::Add:
        return a.is_float ? Scalar::of_float(a.f + b.f) : Scalar::of_int(a.i + b.i);
      case BinOp::Sub:
        return a.is_float ? Scalar::of_float(a.f - b.f) : Scalar::of_int(a.i - b.i);
      case BinOp::Mul:
        return a.is_float ? Scalar::of_float(a.f * b.f) : Scalar::of_int(a.i * b.i);
      case BinOp::Div:
        if (!a.is_float && b.i == 0)
          throw Error("integer division by zero");
        return a.is_float ? Scalar::of_float(a.f / b.f) : Scalar::of_int(a.i / b.i);
      case BinOp::Max:
        return a.is_float ? Scalar::of_float(std::max(a.f, b.f))
                          : Scalar::of_int(std::max(a.i, b.i));
      case BinOp::Min:
        return a.is_float ? Scalar::of_float(std::min(a.f, b.f))
                          : Scalar::of_int(std::min(a.i, b.i));
      case BinOp::Eq:
        return Scalar::of_int(a.is_float ? a.f == b.f : a.i == b.i);
      case BinOp::Ne:
        return Scalar::of_int(a.is_float ? a.f != b.f : a.i != b.i);
      case BinOp::Lt:
        return Scalar::of_int(a.is_float ? a.f < b.f : a.i < b.i);
      case BinOp::Le:
        return Scalar::of_int(a.is_float ? a.f <= b.f : a.i <= b.i);
      case BinOp::Gt:
        return Scalar::of_int(a.is_float ? a.f > b.f : a.i > b.i);
      case BinOp::Ge:
        return Scalar::of_int(a.is_float ? a.f >= b.f : a.i >= b.i);
      }
      throw Error("unreachable");
    }
    case Expr::Kind::Un: {
      Scalar a = eval(e.args[0]);
      if (!a.is_float)
        throw Error("exp expects a float operand");
      return Scalar::of_float(std::exp(a.f));
    }
    case Expr::Kind::Select: {
      Scalar c = eval(e.args[0]);
      return expect_int(c, "select condition") != 0 ? eval(e.args[1]) : eval(e.args[2]);
    }
    case Expr::Kind::Cast: {
      Scalar a = eval(e.args[0]);
      switch (e.cast_to) {
      case ElemKind::F32:
        return Scalar::of_float(a.is_float ? a.f : static_cast<float>(a.i));
      case ElemKind::I32:
        return Scalar::of_int(a.is_float ? static_cast<std::int64_t>(a.f) : a.i);
      case ElemKind::U8: {
        std::int64_t v = a.is_float ? static_cast<std::int64_t>(a.f) : a.i;
        if (v < 0 || v > 255)
          throw Error("cast to uint8 out of range: " + std::to_string(v));
        return Scalar::of_int(v);
      }
      }
      throw Error("unreachable");
    }
    }
    throw Error("unreachable");
  }

  void store(std::size_t slot, std::int64_t index, const Scalar &v) {
    Tensor &t = storage_[slot];
    if (index < 0 || index >= t.numel())
      throw Error("store index " + std::to_string(index) + " out of range for buffer '" +
                  buffer_name(slot) + "'");
    switch (t.kind()) {
    case ElemKind::U8: {
      std::int64_t val = expect_int(v, "uint8 store");
      if (val < 0 || val > 255)
        throw Error("uint8 store out of range: " + std::to_string(val));
      t.u8()[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(val);
      break;
    }
    case ElemKind::I32:
      t.i32()[static_cast<std::size_t>(index)] =
          static_cast<std::int32_t>(expect_int(v, "int32 store"));
      break;
    case ElemKind::F32:
      if (!v.is_float)
        throw Error("float32 store of an integer value (insert an explicit cast)");
      t.f32()[static_cast<std::size_t>(index)] = v.f;
      break;
    }
    written_[slot] = true;
    if (slot == race_slot_) {
      WriteEvent ev;
      ev.cost = clock_;
      ev.path = path_;
      ev.buffer = mod_.entry_outputs[0];
      ev.index = index;
      if (storage_[slot].kind() == ElemKind::F32) {
        ev.is_float = true;
        ev.fvalue = storage_[slot].f32()[static_cast<std::size_t>(index)];
      } else {
        ev.ivalue = storage_[slot].kind() == ElemKind::U8
                        ? storage_[slot].u8()[static_cast<std::size_t>(index)]
                        : storage_[slot].i32()[static_cast<std::size_t>(index)];
      }
      trace_.writes.push_back(std::move(ev));
    }
  }

  void exec_copy(const Stmt &s) {
    std::size_t dst = resolve(s.buf);
    std::size_t src = resolve(s.src);
    if (!written_[src])
      throw Error("read of uninitialized buffer '" + buffer_name(src) + "'");
    Tensor &d = storage_[dst];
    const Tensor &x = storage_[src];
    if (d.numel() != x.numel() || d.kind() != x.kind())
      throw Error("copy between incompatible buffers '" + s.buf + "' and '" + s.src + "'");
    tick();
    if (dst == race_slot_) {
      // Element-granular events so a race merge can interleave writers.
      for (std::int64_t i = 0; i < x.numel(); ++i) {
        Scalar v = x.kind() == ElemKind::F32
                       ? Scalar::of_float(x.f32()[static_cast<std::size_t>(i)])
                       : Scalar::of_int(x.kind() == ElemKind::U8
                                            ? x.u8()[static_cast<std::size_t>(i)]
                                            : x.i32()[static_cast<std::size_t>(i)]);
        store(dst, i, v);
      }
    } else {
      std::memcpy(d.raw(), x.raw(), x.byte_size());
      written_[dst] = true;
    }
  }

  void exec_stmts(std::span<const Stmt> stmts) {
    for (const Stmt &s : stmts)
      exec_stmt(s);
  }

  void exec_stmt(const Stmt &s) {
    switch (s.kind) {
    case Stmt::Kind::For: {
      for (std::int64_t i = 0; i < s.extent; ++i) {
        vars_.emplace_back(s.var, i);
        exec_stmts(s.body);
        vars_.pop_back();
      }
      break;
    }
    case Stmt::Kind::Set: {
      std::int64_t index = expect_int(eval(s.index), "store index");
      Scalar v = eval(s.value);
      tick();
      store(resolve(s.buf), index, v);
      break;
    }
    case Stmt::Kind::Copy:
      exec_copy(s);
      break;
    case Stmt::Kind::Call: {
      const OperatorFunction *callee = mod_.find(s.callee);
      if (!callee)
        throw Error("call to undefined function '" + s.callee + "'");
      if (callee->params.size() != s.args.size())
        throw Error("call to '" + s.callee + "' with wrong arity");
      Frame frame{callee, {}};
      for (std::size_t i = 0; i < s.args.size(); ++i)
        frame.subst[callee->params[i]] = resolve_name(s.args[i]);
      frames_.push_back(std::move(frame));
      fn_stack_.push_back(callee->name);
      exec_stmts(callee->body);
      fn_stack_.pop_back();
      frames_.pop_back();
      break;
    }
    case Stmt::Kind::If: {
      tick();
      if (expect_int(eval(s.cond), "if condition") != 0)
        exec_stmts(s.body);
      break;
    }
    case Stmt::Kind::Parallel:
      exec_parallel(s);
      break;
    }
  }

  void exec_parallel(const Stmt &s) {
    if (!race_)
      throw Error("module has a parallel section; run it with the race scheduler");
    if (in_parallel_)
      throw Error("nested parallel sections are not supported");
    in_parallel_ = true;
    std::int64_t start = clock_;
    std::size_t first_event = trace_.writes.size();

    // Both paths observe the same pre-parallel output buffer; their write
    // events are merged afterwards by cost time.
    Tensor snapshot = storage_[race_slot_];
    bool snapshot_written = written_[race_slot_];

    path_ = 0;
    exec_stmts(s.body);
    std::int64_t main_cost = clock_ - start;

    storage_[race_slot_] = snapshot;
    written_[race_slot_] = snapshot_written;
    clock_ = start;
    path_ = 1;
    exec_stmts(s.alt);
    std::int64_t alt_cost = clock_ - start;

    storage_[race_slot_] = std::move(snapshot);
    written_[race_slot_] = snapshot_written;
    std::stable_sort(trace_.writes.begin() + static_cast<std::ptrdiff_t>(first_event),
                     trace_.writes.end(), [](const WriteEvent &a, const WriteEvent &b) {
                       if (a.cost != b.cost)
                         return a.cost < b.cost;
                       return a.path > b.path; // main (0) applied last on ties
                     });
    Tensor &out = storage_[race_slot_];
    for (std::size_t i = first_event; i < trace_.writes.size(); ++i) {
      const WriteEvent &ev = trace_.writes[i];
      if (ev.is_float)
        out.f32()[static_cast<std::size_t>(ev.index)] = ev.fvalue;
      else if (out.kind() == ElemKind::U8)
        out.u8()[static_cast<std::size_t>(ev.index)] = static_cast<std::uint8_t>(ev.ivalue);
      else
        out.i32()[static_cast<std::size_t>(ev.index)] = static_cast<std::int32_t>(ev.ivalue);
      written_[race_slot_] = true;
    }

    trace_.main_path_cost = main_cost;
    trace_.backdoor_path_cost = alt_cost;
    clock_ = start + std::max(main_cost, alt_cost);
    path_ = 0;
    in_parallel_ = false;
  }

  const OperatorModule &mod_;
  bool race_;
  std::vector<Tensor> storage_;
  std::vector<bool> written_;
  std::unordered_map<std::string, std::size_t> slot_by_name_;
  std::vector<Frame> frames_;
  std::vector<std::pair<std::string, std::int64_t>> vars_;
  std::vector<std::string> fn_stack_;
  std::map<std::string, std::int64_t> fn_cost_;
  ExecutionTrace trace_;
  std::int64_t clock_ = 0;
  int path_ = 0;
  bool in_parallel_ = false;
  std::size_t race_slot_ = static_cast<std::size_t>(-1);
};

} // namespace

std::string ExecutionTrace::to_text() const {
  std::ostringstream out;
  out << "total_cost " << total_cost << '\n';
  out << "path_cost main " << main_path_cost << '\n';
  out << "path_cost backdoor " << backdoor_path_cost << '\n';
  for (const auto &[name, cost] : function_cost)
    out << "func " << name << ' ' << cost << '\n';
  for (const WriteEvent &ev : writes) {
    out << "write " << ev.cost << ' ' << (ev.path == 0 ? "main" : "backdoor") << ' '
        << ev.buffer << ' ' << ev.index << ' ';
    if (ev.is_float)
      out << float_to_string(ev.fvalue);
    else
      out << ev.ivalue;
    out << '\n';
  }
  return out.str();
}

ExecResult execute(const OperatorModule &module, std::span<const Tensor> inputs,
                   std::optional<Scheduler> scheduler) {
  bool parallel = module.has_parallel();
  bool race = parallel;
  if (scheduler) {
    race = scheduler->mode == SchedulerMode::Race;
    if (race && !parallel)
      throw Error("race scheduler requires a module with a parallel annotation");
    if (!race && parallel)
      throw Error("module has a parallel section; run it with the race scheduler");
  }
  Interpreter interp(module, race);
  return interp.run(inputs);
}

ExecResult execute(const OperatorModule &module, const Tensor &input,
                   std::optional<Scheduler> scheduler) {
  return execute(module, std::span<const Tensor>(&input, 1), scheduler);
}

} // namespace mgc
