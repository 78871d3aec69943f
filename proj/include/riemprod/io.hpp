#pragma once

// JSON encodings: tensors as nested row-major arrays, the instance file and
// the verification report.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "riemprod/classification.hpp"
#include "riemprod/connection.hpp"
#include "riemprod/curvature.hpp"
#include "riemprod/structure.hpp"
#include "riemprod/tensor.hpp"
#include "riemprod/verify.hpp"

namespace riemprod {

using json = nlohmann::json;

inline constexpr const char* kReportVersion = "1.0.0";

namespace detail {

inline json nest_block(std::span<const double> block, std::size_t dim, std::size_t rank) {
  json arr = json::array();
  if (rank == 1) {
    for (std::size_t i = 0; i < dim; ++i) arr.push_back(block[i]);
    return arr;
  }
  const std::size_t stride = block.size() / dim;
  for (std::size_t i = 0; i < dim; ++i) arr.push_back(nest_block(block.subspan(i * stride, stride), dim, rank - 1));
  return arr;
}

inline void flatten(const json& j, std::size_t dim, std::size_t rank, std::vector<double>& out, const std::string& what) {
  if (!j.is_array() || j.size() != dim)
    throw InvalidInput(what + ": expected an array of length " + std::to_string(dim));
  for (const auto& item : j) {
    if (rank == 1) {
      if (!item.is_number()) throw InvalidInput(what + ": non-numeric entry");
      const double v = item.get<double>();
      if (!std::isfinite(v)) throw InvalidInput(what + ": non-finite entry");
      out.push_back(v);
    } else {
      flatten(item, dim, rank - 1, out, what);
    }
  }
}

}  // namespace detail

template <std::size_t Rank>
json tensor_to_json(const Tensor<Rank>& t) {
  return detail::nest_block(t.entries(), t.dim(), Rank);
}

template <std::size_t Rank>
Tensor<Rank> tensor_from_json(const json& j, std::size_t dim, const std::string& what) {
  std::vector<double> entries;
  entries.reserve(detail::ipow(dim, Rank));
  detail::flatten(j, dim, Rank, entries, what);
  return Tensor<Rank>(dim, std::move(entries));
}

// ---------------------------------------------------------------------------
// Instance file

struct InstanceFile {
  int n = 0;
  int epsilon = 1;
  Tensor02 g;
  Tensor02 P;
  std::optional<Covector> theta;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<Tensor02> H;
  std::optional<Tensor04> Rprime;
  std::optional<Tensor03> F;
  std::optional<std::uint64_t> seed;
};

inline json instance_to_json(const InstanceFile& f) {
  json j;
  j["n"] = f.n;
  j["epsilon"] = f.epsilon;
  j["g"] = tensor_to_json(f.g);
  j["P"] = tensor_to_json(f.P);
  if (f.theta) j["theta"] = tensor_to_json(*f.theta);
  if (f.lambda) j["lambda"] = *f.lambda;
  if (f.mu) j["mu"] = *f.mu;
  if (f.H) j["H"] = tensor_to_json(*f.H);
  if (f.Rprime) j["Rprime"] = tensor_to_json(*f.Rprime);
  if (f.F) j["F"] = tensor_to_json(*f.F);
  if (f.seed) j["seed"] = *f.seed;
  return j;
}

/// Parses and shape-checks an instance. Structural axioms are checked by
/// load_structure.
inline InstanceFile instance_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("instance: top level must be an object");
  for (const char* key : {"n", "epsilon", "g", "P"})
    if (!j.contains(key)) throw InvalidInput(std::string("instance: missing field '") + key + "'");
  InstanceFile f;
  if (!j["n"].is_number_integer()) throw InvalidInput("instance: n must be an integer");
  if (!j["epsilon"].is_number_integer()) throw InvalidInput("instance: epsilon must be +1 or -1");
  f.n = j["n"].get<int>();
  f.epsilon = j["epsilon"].get<int>();
  if (f.n < 2) throw InvalidInput("instance: n must be >= 2");
  if (f.epsilon != 1 && f.epsilon != -1) throw InvalidInput("instance: epsilon must be +1 or -1");
  const auto dim = static_cast<std::size_t>(2 * f.n);
  f.g = tensor_from_json<2>(j["g"], dim, "g");
  f.P = tensor_from_json<2>(j["P"], dim, "P");
  if (j.contains("theta")) f.theta = tensor_from_json<1>(j["theta"], dim, "theta");
  if (j.contains("lambda")) f.lambda = j["lambda"].get<double>();
  if (j.contains("mu")) f.mu = j["mu"].get<double>();
  if (j.contains("H")) f.H = tensor_from_json<2>(j["H"], dim, "H");
  if (j.contains("Rprime")) f.Rprime = tensor_from_json<4>(j["Rprime"], dim, "Rprime");
  if (j.contains("F")) f.F = tensor_from_json<3>(j["F"], dim, "F");
  if (j.contains("seed")) f.seed = j["seed"].get<std::uint64_t>();
  return f;
}

/// Builds the structure and revalidates it.
inline PointStructure load_structure(const InstanceFile& f, double tol = 1e-10) {
  PointStructure ps = make_structure(f.n, f.epsilon, f.g, f.P);
  const auto r = validate_structure(ps, tol);
  if (!r.pass)
    throw InvalidInput("instance: structure axioms violated (relative residual " + std::to_string(r.relative) + ")");
  return ps;
}

inline InstanceFile instance_from_structure(const PointStructure& ps) {
  InstanceFile f;
  f.n = ps.n;
  f.epsilon = ps.epsilon;
  f.g = ps.g;
  f.P = ps.P;
  return f;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline json contractions_to_json(const ContractionSet& c) {
  return json{{"rho", tensor_to_json(c.rho)},
              {"tau", c.tau},
              {"rho_star", tensor_to_json(c.rho_star)},
              {"tau_star", c.tau_star}};
}

inline json residual_to_json(const ResidualReport& r) {
  return json{{"max_abs_residual", r.max_abs_residual},
              {"scale", r.scale},
              {"relative", r.relative},
              {"tol", r.tol},
              {"pass", r.pass}};
}

inline json verdict_to_json(const TheoremVerdict& v) {
  json params = json::object();
  params["preset"] = v.preset;
  for (const auto& [k, x] : v.params) params[k] = x;
  json j{{"theorem_id", std::string(theorem_name(v.id))},
         {"n", v.n},
         {"epsilon", v.epsilon},
         {"seed", v.seed},
         {"params", params},
         {"max_abs_residual", v.report.max_abs_residual},
         {"relative", v.report.relative},
         {"tol", v.report.tol},
         {"pass", v.report.pass}};
  if (!v.failures.empty()) j["failures"] = v.failures;
  return j;
}

inline json class_report_to_json(const ClassReport& r) {
  json res = json::object();
  for (FClass c : kAllClasses) res[std::string(class_name(c))] = r.residual_of(c);
  return json{{"residuals", res},
              {"best", std::string(class_name(r.best))},
              {"pass", r.pass},
              {"tol", r.tol},
              {"theta_recovered", tensor_to_json(r.theta_recovered)},
              {"theta_v", tensor_to_json(r.theta_v)},
              {"theta_h", tensor_to_json(r.theta_h)},
              {"theta_v_norm", r.theta_v_norm},
              {"theta_h_norm", r.theta_h_norm},
              {"observed_sign", r.observed_sign}};
}

}  // namespace riemprod
