#pragma once

// Command-line front end: verify, generate, classify, invariants.
// Exit codes: 0 success, 1 verification or precondition failure on valid
// input, 2 usage or input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riemprod/classification.hpp"
#include "riemprod/connection.hpp"
#include "riemprod/curvature.hpp"
#include "riemprod/invariants.hpp"
#include "riemprod/io.hpp"
#include "riemprod/structure.hpp"
#include "riemprod/suite.hpp"

namespace riemprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSeedEnv = "RIEMPROD_SEED";

namespace detail {

inline std::vector<int> parse_epsilons(const std::string& s) {
  if (s == "both") return {1, -1};
  if (s == "+1" || s == "1") return {1};
  if (s == "-1") return {-1};
  throw InvalidInput("--epsilon must be +1, -1 or both");
}

inline int parse_epsilon(const std::string& s) {
  const auto v = parse_epsilons(s);
  if (v.size() != 1) throw InvalidInput("--epsilon must be +1 or -1 here");
  return v.front();
}

inline std::uint64_t parse_seed(const std::string& s, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput(std::string(what) + ": not an unsigned integer: " + s);
  }
  if (used != s.size() || s.empty() || s.front() == '-')
    throw InvalidInput(std::string(what) + ": not an unsigned integer: " + s);
  return v;
}

inline void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

}  // namespace detail

struct VerifyFlags {
  std::string suite = "all";
  std::vector<int> ns{3, 4};
  std::string epsilon = "both";
  int trials = 50;
  std::optional<std::string> seed;
  double tol = kDefaultTol;
  std::string out;
};

struct GenerateFlags {
  std::string kind = "instance";
  int n = 3;
  std::string epsilon = "+1";
  std::string seed = "42";
  std::string out;
};

struct ClassifyFlags {
  std::string in;
  double tol = 1e-10;
};

struct InvariantsFlags {
  std::string in;
  std::vector<std::string> tensors{"B", "A", "C", "E"};
  double tol = kDefaultTol;
  std::string out;
};

inline int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  SuiteOptions opt;
  opt.suite = f.suite;
  opt.ns = f.ns;
  opt.trials = f.trials;
  opt.tol = f.tol;
  try {
    opt.epsilons = detail::parse_epsilons(f.epsilon);
    if (f.seed) {
      opt.seed = detail::parse_seed(*f.seed, "--seed");
    } else if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
      opt.seed = detail::parse_seed(env, kSeedEnv);
    }
    check_suite_options(opt);
  } catch (const InvalidInput& e) {
    err << "verify: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto verdicts = run_suite(opt);
  const json report = report_to_json(opt, verdicts);
  try {
    detail::emit(report, f.out, out);
  } catch (const InvalidInput& e) {
    err << "verify: " << e.what() << "\n";
    return kExitUsage;
  }
  const int failed = report["summary"]["failed"].get<int>();
  err << "verify: " << report["summary"]["total"].get<int>() << " verdicts, " << failed << " failed\n";
  for (const auto& v : verdicts)
    if (!v.pass()) {
      err << "  FAIL " << theorem_name(v.id) << " n=" << v.n << " eps=" << v.epsilon << " seed=" << v.seed
          << " relative=" << v.report.relative;
      for (const auto& s : v.failures) err << " [" << s << "]";
      err << "\n";
    }
  return failed == 0 ? kExitOk : kExitFail;
}

inline int cmd_generate(const GenerateFlags& f, std::ostream& out, std::ostream& err) {
  try {
    const int eps = detail::parse_epsilon(f.epsilon);
    const std::uint64_t seed = detail::parse_seed(f.seed, "--seed");
    if (f.kind != "structure" && f.kind != "ptensor" && f.kind != "instance")
      throw InvalidInput("--kind must be structure, ptensor or instance");
    if (f.n < 2 || f.n > 6) throw InvalidInput("--n must lie in 2..6");

    const PointStructure ps = generate_structure(f.n, eps, substream(seed, 1));
    InstanceFile file = instance_from_structure(ps);
    file.seed = seed;
    if (f.kind == "ptensor" || f.kind == "instance") file.Rprime = random_p_tensor(ps, substream(seed, 4)).L;
    if (f.kind == "instance") {
      const LeeData lee = generate_theta(ps, substream(seed, 2));
      file.theta = lee.theta;
      file.H = generate_H(ps, substream(seed, 3)).H;
      Rng rng(substream(seed, 5));
      file.lambda = rng.uniform(-1.0, 1.0);
      file.mu = rng.uniform(-1.0, 1.0);
      // θ lies in the ε-eigenspace of P, so the matching pure class is built
      file.F = build_f(eps > 0 ? FClass::W6bar : FClass::W3bar, ps, lee);
    }
    detail::emit(instance_to_json(file), f.out, out);
  } catch (const InvalidInput& e) {
    err << "generate: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

inline int cmd_classify(const ClassifyFlags& f, std::ostream& out, std::ostream& err) {
  try {
    const InstanceFile file = instance_from_json(read_json_file(f.in));
    if (!file.F) throw InvalidInput("instance has no F field");
    const PointStructure ps = load_structure(file);
    detail::emit(class_report_to_json(classify_f(*file.F, ps, f.tol)), "", out);
  } catch (const InvalidInput& e) {
    err << "classify: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "classify: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

inline int cmd_invariants(const InvariantsFlags& f, std::ostream& out, std::ostream& err) {
  InstanceFile file;
  PointStructure ps;
  try {
    file = instance_from_json(read_json_file(f.in));
    if (!file.Rprime) throw InvalidInput("instance has no Rprime field");
    for (const auto& t : f.tensors)
      if (t != "B" && t != "A" && t != "C" && t != "E") throw InvalidInput("--tensor must be a subset of B, A, C, E");
    ps = load_structure(file);
    for (const auto& t : f.tensors)
      if (t == "B" && ps.n < 3) throw InvalidInput("B needs n >= 3");
  } catch (const InvalidInput& e) {
    err << "invariants: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "invariants: " << e.what() << "\n";
    return kExitUsage;
  }

  const Tensor04& l = *file.Rprime;
  json result{{"n", ps.n}, {"epsilon", ps.epsilon}, {"input", contractions_to_json(contractions(l, ps))}};
  json tensors = json::object();
  for (const auto& name : f.tensors) {
    const bool p_needed = name != "E";
    const ResidualReport pre = p_needed ? is_p_tensor(l, ps, f.tol) : is_curvature_like(l, f.tol);
    if (!pre.pass) {
      err << "invariants: " << name << " needs a " << (p_needed ? "Riemannian P-tensor" : "curvature-like tensor")
          << "; predicate relative residual " << pre.relative << " > tol " << f.tol << "\n";
      return kExitFail;
    }
    Tensor04 value;
    if (name == "B") value = bochner(l, ps, f.tol);
    if (name == "A") value = a_tensor(l, ps, ps.epsilon, f.tol);
    if (name == "C") value = c_tensor(l, ps, f.tol);
    if (name == "E") value = e_tensor(l, ps, f.tol);
    tensors[name] = json{{"tensor", tensor_to_json(value)},
                         {"max_abs", value.max_abs()},
                         {"contractions", contractions_to_json(contractions(value, ps))}};
  }
  result["tensors"] = tensors;
  try {
    detail::emit(result, f.out, out);
  } catch (const InvalidInput& e) {
    err << "invariants: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

/// Parses `args` (args[0] is the program name) and dispatches.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Numerical laboratory for natural connections on Riemannian almost product manifolds", "riemprod"};
  app.require_subcommand(1);

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "Run seeded verification suites and write a JSON report");
  verify->add_option("--suite", vf.suite, "Suite to run")->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", vf.ns, "Half-dimensions, comma separated")->delimiter(',');
  verify->add_option("--epsilon", vf.epsilon, "+1, -1 or both");
  verify->add_option("--trials", vf.trials, "Seeded trials per (n, epsilon)");
  verify->add_option("--seed", vf.seed, "Master seed (default 42, or $RIEMPROD_SEED)");
  verify->add_option("--tol", vf.tol, "Relative tolerance");
  verify->add_option("--out", vf.out, "Report path (default: standard output)");

  GenerateFlags gf;
  auto* generate = app.add_subcommand("generate", "Write a seeded instance file");
  generate->add_option("--kind", gf.kind, "structure, ptensor or instance");
  generate->add_option("--n", gf.n, "Half-dimension");
  generate->add_option("--epsilon", gf.epsilon, "+1 or -1");
  generate->add_option("--seed", gf.seed, "Seed");
  generate->add_option("--out", gf.out, "Output path (default: standard output)");

  ClassifyFlags cf;
  auto* classify = app.add_subcommand("classify", "Classify the F tensor of an instance file");
  classify->add_option("--in", cf.in, "Instance file")->required();
  classify->add_option("--tol", cf.tol, "Relative tolerance");

  InvariantsFlags inf;
  auto* invariants = app.add_subcommand("invariants", "Compute B, A, C, E of an instance's Rprime");
  invariants->add_option("--in", inf.in, "Instance file")->required();
  invariants->add_option("--tensor", inf.tensors, "Subset of B,A,C,E")->delimiter(',');
  invariants->add_option("--tol", inf.tol, "Predicate tolerance");
  invariants->add_option("--out", inf.out, "Output path (default: standard output)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  if (verify->parsed()) return cmd_verify(vf, out, err);
  if (generate->parsed()) return cmd_generate(gf, out, err);
  if (classify->parsed()) return cmd_classify(cf, out, err);
  return cmd_invariants(inf, out, err);
}

}  // namespace riemprod::cli
