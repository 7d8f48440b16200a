// Copyright 2026 The mgc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>

#include "mgc/graph.hpp"
#include "mgc/operator_ir.hpp"
#include "mgc/passes.hpp"
#include "mgc/trigger.hpp"

namespace mgc {

/// Parameters of the malicious pass.
///
/// method=direct gates the model output on the detector bit:
///   out = (1 - Q) * original + Q * payload, built from Cast/Mul/Add/Sub.
/// method=temporal adds a second path that races the model for the output
/// buffer and, when the trigger is present, delays itself by re-running the
/// model twice before writing the payload; it is only expressible at the
/// operator level, where parallelism exists.
struct BackdoorConfig {
  enum class Method { Direct, Temporal };
  enum class Level { Graph, Operator };

  MaskVariant mask;
  Tensor payload; // must match the model's output shape and kind
  Method method = Method::Direct;
  Level level = Level::Graph;
  std::optional<std::array<std::string, 3>> function_names;
  bool stealth_names = false;

  /// Reads a key=value config file (mask=, payload=, method=, level=,
  /// names=); mask/payload paths are resolved relative to the file.
  static BackdoorConfig load(const std::string &path);
};

/// Names of what the infection added, plus size deltas for reporting.
struct DetectorArtifact {
  std::vector<std::string> emitted_names; // node ids or function names
  std::int64_t node_delta = 0;
  std::int64_t function_delta = 0;
  std::int64_t statement_delta = 0;
};

/// Detector nodes computing Q in {0,1}: SlidingWindow over the input,
/// constant selection at each mask row's (or channel's) first 1 bit via
/// one-hot matmuls, Sub, EqualConst 0, Cast, Equal against the tiled mask,
/// All per window, Any across windows. Q is 1 exactly when the mask matches
/// the input somewhere.
struct DetectorFragment {
  std::vector<Node> nodes;
  std::map<std::string, Tensor> params;
  std::string q_id; // (1,) int32 result node
};

DetectorFragment build_detector_fragment(const MaskVariant &mask, const TensorMeta &input_meta,
                                         const std::string &input_id, const std::string &prefix);

/// Standalone detector graph: Input "x" of the given meta, output Q.
Graph build_detector_graph(const MaskVariant &mask, const TensorMeta &input_meta);

struct GraphInfection {
  Graph graph;
  DetectorArtifact artifact;
};

/// Direct-method infection at the Graph IR level; clean inputs keep
/// bit-identical outputs, triggered inputs yield exactly the payload.
GraphInfection insert_graph_level(const Graph &graph, const BackdoorConfig &config);

struct ModuleInfection {
  OperatorModule module;
  DetectorArtifact artifact;
};

/// Operator-level infection. Both methods emit exactly three detector
/// functions; direct adds gating statements to the entry, temporal wraps the
/// entry body in a parallel race.
ModuleInfection insert_operator_level(const OperatorModule &module, const BackdoorConfig &config);

/// The infection wrapped as a pipeline pass at cfg.level.
Pass backdoor_pass(const BackdoorConfig &config);

std::array<std::string, 3> default_detector_names();
/// FUN_<hex> names in the style of anonymous functions in stripped
/// binaries; derived deterministically from the default names and the mask.
std::array<std::string, 3> stealth_detector_names(const MaskVariant &mask);

} // namespace mgc
