// Copyright (c) the manirec authors
// SPDX-License-Identifier: Apache-2.0

#include "manirec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "manirec/errors.hpp"

namespace manirec {

namespace {

using nlohmann::json;

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void append_vector(std::string& out, const Eigen::VectorXd& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  out += ']';
}

// row-major flattening
void append_matrix_flat(std::string& out, const Eigen::MatrixXd& m) {
  out += '[';
  bool first = true;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!first) out += ',';
      first = false;
      out += format_double(m(r, c));
    }
  out += ']';
}

std::string frame_mode_json(const FrameMode& mode) {
  switch (mode.kind) {
    case FrameMode::Kind::Exact:
      return "{\"mode\":\"exact\"}";
    case FrameMode::Kind::Perturbed:
      return "{\"mode\":\"perturbed\",\"max_angle\":" + format_double(mode.parameter) + "}";
    case FrameMode::Kind::Pca:
      return "{\"mode\":\"pca\",\"radius\":" + format_double(mode.parameter) + "}";
  }
  throw DomainError("unknown frame mode");
}

FrameMode frame_mode_from(const json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "exact") return FrameMode::exact();
  if (mode == "perturbed") return FrameMode::perturbed(j.at("max_angle").get<double>());
  if (mode == "pca") return FrameMode::pca(j.at("radius").get<double>());
  throw DomainError("unknown frame mode: " + mode);
}

std::string descriptor_body(const ManifoldDescriptor& desc) {
  std::string out = "{\"kind\":";
  append_escaped(out, to_string(desc.kind));
  out += ",\"d\":" + std::to_string(desc.d);
  out += ",\"params\":{";
  switch (desc.kind) {
    case ManifoldKind::Torus3:
      out += "\"major_radius\":" + format_double(desc.major_radius);
      out += ",\"minor_radius\":" + format_double(desc.minor_radius);
      break;
    case ManifoldKind::TrigCurve: {
      out += "\"frequencies\":[";
      for (std::size_t i = 0; i < desc.frequencies.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(desc.frequencies[i]);
      }
      out += "],\"amplitude\":" + format_double(desc.amplitude);
      break;
    }
    default:
      break;
  }
  out += "},\"seed\":" + std::to_string(desc.seed) + "}";
  return out;
}

ManifoldDescriptor descriptor_from(const json& j) {
  ManifoldDescriptor desc;
  desc.kind = manifold_kind_from_string(j.at("kind").get<std::string>());
  desc.d = j.at("d").get<int>();
  desc.seed = j.at("seed").get<std::uint64_t>();
  const json& params = j.at("params");
  if (desc.kind == ManifoldKind::Torus3) {
    desc.major_radius = params.at("major_radius").get<double>();
    desc.minor_radius = params.at("minor_radius").get<double>();
  } else if (desc.kind == ManifoldKind::TrigCurve) {
    desc.frequencies = params.at("frequencies").get<std::vector<int>>();
    desc.amplitude = params.at("amplitude").get<double>();
  }
  return desc;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw DomainError("invalid JSON");
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_json(const ManifoldDescriptor& desc) { return descriptor_body(desc); }

ManifoldDescriptor manifold_descriptor_from_json(const std::string& text) {
  return descriptor_from(parse(text));
}

std::string to_json(const SampleCloud& cloud) {
  std::string out;
  out.reserve(64 + static_cast<std::size_t>(cloud.size()) * cloud.d * 20);
  out += "{\"d\":" + std::to_string(cloud.d);
  out += ",\"m\":" + std::to_string(cloud.m);
  out += ",\"eps\":" + format_double(cloud.eps);
  out += ",\"gamma\":" + format_double(cloud.gamma);
  out += ",\"kappa_measured\":" + std::to_string(cloud.kappa_measured);
  out += ",\"frame_mode\":" + frame_mode_json(cloud.frame_mode);
  out += ",\"seed\":" + std::to_string(cloud.seed);
  if (cloud.manifold) out += ",\"manifold\":" + descriptor_body(*cloud.manifold);
  out += ",\"points\":[";
  for (int i = 0; i < cloud.size(); ++i) {
    if (i) out += ',';
    append_vector(out, cloud.points.col(i));
  }
  out += "],\"frames\":[";
  for (int i = 0; i < cloud.size(); ++i) {
    if (i) out += ',';
    append_matrix_flat(out, cloud.frames[i].matrix());
  }
  out += "]}";
  return out;
}

SampleCloud cloud_from_json(const std::string& text) {
  const json j = parse(text);
  SampleCloud cloud;
  cloud.d = j.at("d").get<int>();
  cloud.m = j.at("m").get<int>();
  cloud.eps = j.at("eps").get<double>();
  cloud.gamma = j.at("gamma").get<double>();
  if (cloud.gamma != 4.0 * cloud.eps)
    throw DomainError("cloud file: gamma must equal 4 * eps exactly");
  cloud.kappa_measured = j.at("kappa_measured").get<int>();
  cloud.frame_mode = frame_mode_from(j.at("frame_mode"));
  cloud.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("manifold")) cloud.manifold = descriptor_from(j.at("manifold"));

  const json& points = j.at("points");
  const int n = static_cast<int>(points.size());
  cloud.points.resize(cloud.d, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = points.at(i);
    if (static_cast<int>(row.size()) != cloud.d)
      throw DomainError("cloud file: point arity mismatch");
    for (int k = 0; k < cloud.d; ++k) cloud.points(k, i) = row.at(k).get<double>();
  }
  const json& frames = j.at("frames");
  if (static_cast<int>(frames.size()) != n)
    throw DomainError("cloud file: frame count mismatch");
  cloud.frames.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& flat = frames.at(i);
    if (static_cast<int>(flat.size()) != cloud.d * cloud.m)
      throw DomainError("cloud file: frame size mismatch");
    Eigen::MatrixXd f(cloud.d, cloud.m);
    int pos = 0;
    for (int r = 0; r < cloud.d; ++r)
      for (int c = 0; c < cloud.m; ++c) f(r, c) = flat.at(pos++).get<double>();
    cloud.frames.emplace_back(std::move(f));
  }
  cloud.rebuild_index();
  return cloud;
}

std::string to_json(const ProjectionTrace& trace) {
  std::string out = "{\"status\":";
  switch (trace.status) {
    case ProjectionStatus::Converged: out += "\"Converged\""; break;
    case ProjectionStatus::MaxIters: out += "\"MaxIters\""; break;
    case ProjectionStatus::LeftSupport: out += "\"LeftSupport\""; break;
  }
  out += ",\"iterates\":[";
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    if (i) out += ',';
    append_vector(out, trace.iterates[i]);
  }
  out += "],\"residuals\":[";
  for (std::size_t i = 0; i < trace.residuals.size(); ++i) {
    if (i) out += ',';
    out += format_double(trace.residuals[i]);
  }
  out += "]}";
  return out;
}

std::string to_json(const EvalResult& eval) {
  std::string out = "{\"phi\":";
  append_vector(out, eval.value);
  out += ",\"phi_norm\":" + format_double(eval.value_norm());
  out += ",\"status\":";
  out += eval.status == SupportStatus::InSupport ? "\"InSupport\"" : "\"OutOfSupport\"";
  out += ",\"spectral_gap\":" + format_double(eval.spectral_gap);
  out += ",\"degenerate_spectrum\":";
  out += eval.degenerate_spectrum ? "true" : "false";
  out += ",\"eigenvalues\":";
  append_vector(out, eval.eigenvalues);
  out += "}";
  return out;
}

std::string to_json(const FidelityReport& report) {
  std::string out = "{\"eps\":" + format_double(report.eps);
  out += ",\"max_normal_angle\":" + format_double(report.max_normal_angle);
  out += ",\"hausdorff_m_to_zero_set\":" + format_double(report.hausdorff_m_to_zero_set);
  out += ",\"hausdorff_zero_set_to_m\":" + format_double(report.hausdorff_zero_set_to_m);
  out += ",\"zero_offset_max\":" + format_double(report.zero_offset_max);
  out += ",\"contraction_median\":";
  out += report.contraction_median ? format_double(*report.contraction_median) : "null";
  out += ",\"n_test_points\":" + std::to_string(report.n_test_points) + "}";
  return out;
}

FidelityReport fidelity_report_from_json(const std::string& text) {
  const json j = parse(text);
  FidelityReport report;
  report.eps = j.at("eps").get<double>();
  report.max_normal_angle = j.at("max_normal_angle").get<double>();
  report.hausdorff_m_to_zero_set = j.at("hausdorff_m_to_zero_set").get<double>();
  report.hausdorff_zero_set_to_m = j.at("hausdorff_zero_set_to_m").get<double>();
  report.zero_offset_max = j.at("zero_offset_max").get<double>();
  if (!j.at("contraction_median").is_null())
    report.contraction_median = j.at("contraction_median").get<double>();
  report.n_test_points = j.at("n_test_points").get<int>();
  return report;
}

std::string to_json(const RunConfig& config) {
  std::string out = "{\"command\":";
  append_escaped(out, config.command);
  out += ",\"args\":[";
  for (std::size_t i = 0; i < config.args.size(); ++i) {
    if (i) out += ',';
    out += '[';
    append_escaped(out, config.args[i].first);
    out += ',';
    append_escaped(out, config.args[i].second);
    out += ']';
  }
  out += "]}";
  return out;
}

RunConfig run_config_from_json(const std::string& text) {
  const json j = parse(text);
  RunConfig config;
  config.command = j.at("command").get<std::string>();
  for (const auto& entry : j.at("args"))
    config.args.emplace_back(entry.at(0).get<std::string>(), entry.at(1).get<std::string>());
  return config;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open for writing: " + path);
  out << contents;
  if (!out) throw DomainError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace manirec
