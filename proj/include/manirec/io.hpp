// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "manirec/implicit_fn.hpp"
#include "manirec/manifold.hpp"
#include "manirec/metrics.hpp"
#include "manirec/projector.hpp"
#include "manirec/sampling.hpp"

namespace manirec {

// All writers emit floats with printf "%.17g": round-trip exact and
// byte-stable across runs.
std::string format_double(double v);

std::string to_json(const ManifoldDescriptor& desc);
ManifoldDescriptor manifold_descriptor_from_json(const std::string& text);

// Cloud file schema:
// {d, m, eps, gamma, kappa_measured, frame_mode, seed, points, frames, ...}
// with frames serialized as row-major d x m arrays.
std::string to_json(const SampleCloud& cloud);
SampleCloud cloud_from_json(const std::string& text);

std::string to_json(const ProjectionTrace& trace);
std::string to_json(const EvalResult& eval);
std::string to_json(const FidelityReport& report);
FidelityReport fidelity_report_from_json(const std::string& text);

// Resolved CLI invocation; kept as raw strings so the JSON form is lossless.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> args;

  bool operator==(const RunConfig&) const = default;
};

std::string to_json(const RunConfig& config);
RunConfig run_config_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace manirec
