// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "mgc/eval.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "mgc/operator_text.hpp"
#include "mgc/rng.hpp"

namespace mgc {

std::int64_t output_class(const Tensor &output) {
  if (output.kind() == ElemKind::F32) {
    std::span<const float> v = output.f32();
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[best])
        best = i;
    return static_cast<std::int64_t>(best);
  }
  if (output.numel() == 1)
    return output.int_at(0);
  std::int64_t best = 0;
  for (std::int64_t i = 1; i < output.numel(); ++i)
    if (output.int_at(i) > output.int_at(best))
      best = i;
  return best;
}

EvalReport measure(const ExecFn &clean, const ExecFn &infected, std::span<const Tensor> benign,
                   std::span<const std::int64_t> labels, std::span<const Tensor> triggered,
                   const Tensor &payload) {
  if (!labels.empty() && labels.size() != benign.size())
    throw Error("labels and benign set sizes differ");

  EvalReport report;
  report.n_benign = static_cast<std::int64_t>(benign.size());
  report.n_triggered = static_cast<std::int64_t>(triggered.size());

  std::int64_t clean_hits = 0, infected_hits = 0;
  for (std::size_t i = 0; i < benign.size(); ++i) {
    Tensor out_clean = clean(benign[i]);
    Tensor out_infected = infected(benign[i]);
    if (out_clean != out_infected)
      ++report.mismatches;
    std::int64_t label = labels.empty() ? output_class(out_clean) : labels[i];
    clean_hits += output_class(out_clean) == label;
    infected_hits += output_class(out_infected) == label;
  }
  if (!benign.empty()) {
    report.acc_clean = static_cast<double>(clean_hits) / static_cast<double>(benign.size());
    report.acc_infected =
        static_cast<double>(infected_hits) / static_cast<double>(benign.size());
    report.bad = report.acc_clean - report.acc_infected;
  }

  std::int64_t successes = 0;
  for (const Tensor &t : triggered)
    successes += infected(t) == payload;
  if (!triggered.empty())
    report.asr = static_cast<double>(successes) / static_cast<double>(triggered.size());
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

} // namespace

std::string EvalReport::to_text() const {
  std::ostringstream out;
  out << "ASR: " << fmt(asr * 100.0) << "% over " << n_triggered << " triggered inputs\n";
  out << "BAD: " << fmt(bad * 100.0) << "% over " << n_benign
      << " benign inputs (clean acc " << fmt(acc_clean * 100.0) << "%, infected acc "
      << fmt(acc_infected * 100.0) << "%)\n";
  out << "bitwise output mismatches on benign inputs: " << mismatches << "\n";
  return out.str();
}

std::string EvalReport::to_kv() const {
  std::ostringstream out;
  out << "asr=" << fmt(asr) << '\n'
      << "bad=" << fmt(bad) << '\n'
      << "mismatches=" << mismatches << '\n'
      << "n_triggered=" << n_triggered << '\n'
      << "n_benign=" << n_benign << '\n'
      << "acc_clean=" << fmt(acc_clean) << '\n'
      << "acc_infected=" << fmt(acc_infected) << '\n';
  return out.str();
}

ScanResult scan_corpus(std::span<const std::int32_t> tokens, const TriggerMask1D &mask,
                       std::int32_t a) {
  ScanResult result;
  std::int64_t m = mask.length();
  std::vector<std::int32_t> window(static_cast<std::size_t>(m));
  std::int64_t filled = 0;
  for (std::int32_t tok : tokens) {
    window[static_cast<std::size_t>(filled % m)] = tok;
    ++filled;
    if (filled >= m) {
      std::int64_t start = filled - m;
      bool ok = true;
      for (std::int64_t i = 0; i < m && ok; ++i) {
        std::int32_t v = window[static_cast<std::size_t>((start + i) % m)];
        ok = ((v == a) == (mask.bits[static_cast<std::size_t>(i)] == 1));
      }
      if (ok) {
        ++result.count;
        result.positions.push_back(start);
      }
    }
  }
  result.scanned = filled;
  return result;
}

ScanResult scan_corpus_words(std::istream &in, const Vocab &vocab, const TriggerMask1D &mask,
                             std::int32_t a) {
  ScanResult result;
  std::int64_t m = mask.length();
  std::vector<std::int32_t> window(static_cast<std::size_t>(m));
  std::int64_t filled = 0;
  std::string word;
  while (in >> word) {
    std::vector<std::int32_t> ids = tokenize(word, vocab);
    for (std::int32_t tok : ids) {
      window[static_cast<std::size_t>(filled % m)] = tok;
      ++filled;
      if (filled >= m) {
        std::int64_t start = filled - m;
        bool ok = true;
        for (std::int64_t i = 0; i < m && ok; ++i) {
          std::int32_t v = window[static_cast<std::size_t>((start + i) % m)];
          ok = ((v == a) == (mask.bits[static_cast<std::size_t>(i)] == 1));
        }
        if (ok) {
          ++result.count;
          result.positions.push_back(start);
        }
      }
    }
  }
  result.scanned = filled;
  return result;
}

ScanResult scan_corpus_file(const std::string &path, const Vocab &vocab,
                            const TriggerMask1D &mask, std::int32_t a) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open corpus '" + path + "'");
  return scan_corpus_words(in, vocab, mask, a);
}

Tensor add_uniform_noise(const Tensor &input, std::int64_t amplitude, std::uint64_t seed) {
  if (input.kind() != ElemKind::U8)
    throw Error("noise fuzzing operates on uint8 inputs");
  Rng rng(seed);
  Tensor noisy = input;
  std::span<std::uint8_t> v = noisy.u8();
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t delta = rng.uniform_int(-amplitude, amplitude);
    std::int64_t value = std::clamp<std::int64_t>(v[i] + delta, 0, 255);
    v[i] = static_cast<std::uint8_t>(value);
  }
  return noisy;
}

FuzzVerdict fuzz_defence(const ExecFn &exec, const Tensor &input, std::int64_t amplitude,
                         std::int64_t runs, std::uint64_t seed) {
  if (amplitude < 1)
    throw Error("fuzz amplitude must be >= 1 (amplitude 0 tests nothing)");
  if (runs < 2)
    throw Error("fuzz defence needs at least 2 runs");
  FuzzVerdict verdict;
  verdict.amplitude = amplitude;
  verdict.runs.push_back(exec(input));
  Rng rng(seed);
  for (std::int64_t r = 1; r < runs; ++r)
    verdict.runs.push_back(exec(add_uniform_noise(input, amplitude, rng.next_u64())));

  const Tensor &first = verdict.runs.front();
  for (const Tensor &run : verdict.runs) {
    bool same = first.kind() == ElemKind::F32 ? output_class(run) == output_class(first)
                                              : run == first;
    if (!same) {
      verdict.agree = false;
      break;
    }
  }
  return verdict;
}

std::string FuzzVerdict::to_text() const {
  std::ostringstream out;
  out << "runs: " << runs.size() << ", noise amplitude: " << amplitude << "\n";
  out << (agree ? "outputs agree: no backdoor indication\n"
                : "outputs DISAGREE: probable backdoor trigger in the input\n");
  return out.str();
}

std::string FuzzVerdict::to_kv() const {
  std::ostringstream out;
  out << "runs=" << runs.size() << '\n'
      << "amplitude=" << amplitude << '\n'
      << "agree=" << (agree ? 1 : 0) << '\n';
  return out.str();
}

DiffReport diff_modules(const OperatorModule &a, const OperatorModule &b) {
  DiffReport report;
  std::set<std::string> names_a, names_b;
  for (const OperatorFunction &fn : a.functions)
    names_a.insert(fn.name);
  for (const OperatorFunction &fn : b.functions)
    names_b.insert(fn.name);
  for (const OperatorFunction &fn : b.functions)
    if (!names_a.count(fn.name))
      report.added.push_back(fn.name);
  for (const OperatorFunction &fn : a.functions)
    if (!names_b.count(fn.name))
      report.removed.push_back(fn.name);

  std::int64_t total_a = 0, total_b = 0;
  for (const OperatorFunction &fn : a.functions)
    total_a += stmt_count(fn);
  for (const OperatorFunction &fn : b.functions)
    total_b += stmt_count(fn);
  report.statement_delta = total_b - total_a;

  for (const OperatorFunction &fn : a.functions) {
    const OperatorFunction *other = b.find(fn.name);
    if (other && !(fn == *other))
      report.changed.emplace_back(fn.name, stmt_count(*other) - stmt_count(fn));
  }

  report.entry_changed = a.entry != b.entry;
  if (!report.entry_changed) {
    const OperatorFunction *ea = a.find(a.entry);
    const OperatorFunction *eb = b.find(b.entry);
    report.entry_changed = ea && eb ? !(*ea == *eb) : true;
  }

  auto count_lines = [](const std::string &text) {
    return static_cast<std::int64_t>(std::count(text.begin(), text.end(), '\n'));
  };
  report.line_delta = count_lines(serialize_module(b)) - count_lines(serialize_module(a));
  return report;
}

std::string DiffReport::to_text() const {
  std::ostringstream out;
  out << "added functions (" << added.size() << "):";
  for (const std::string &name : added)
    out << ' ' << name;
  out << "\nremoved functions (" << removed.size() << "):";
  for (const std::string &name : removed)
    out << ' ' << name;
  out << "\nchanged functions (" << changed.size() << "):";
  for (const auto &[name, delta] : changed)
    out << ' ' << name << " (" << (delta >= 0 ? "+" : "") << delta << " stmts)";
  out << "\nentry function changed: " << (entry_changed ? "yes" : "no") << '\n';
  out << "statement delta: " << (statement_delta >= 0 ? "+" : "") << statement_delta << '\n';
  out << "serialized line delta: " << (line_delta >= 0 ? "+" : "") << line_delta << '\n';
  return out.str();
}

std::string DiffReport::to_kv() const {
  std::ostringstream out;
  out << "added=" << added.size() << '\n';
  for (const std::string &name : added)
    out << "added_name=" << name << '\n';
  out << "removed=" << removed.size() << '\n';
  for (const std::string &name : removed)
    out << "removed_name=" << name << '\n';
  out << "changed=" << changed.size() << '\n';
  out << "entry_changed=" << (entry_changed ? 1 : 0) << '\n';
  out << "statement_delta=" << statement_delta << '\n';
  out << "line_delta=" << line_delta << '\n';
  return out.str();
}

} // namespace mgc
