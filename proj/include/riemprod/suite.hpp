#pragma once

// Seeded suite runner: expands a suite name over (n, ε, trial) and collects
// verdicts into a deterministic report.

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "riemprod/io.hpp"
#include "riemprod/random.hpp"
#include "riemprod/verify.hpp"

namespace riemprod {

struct SuiteOptions {
  std::string suite = "all";
  std::vector<int> ns{3, 4};
  std::vector<int> epsilons{1, -1};
  int trials = 50;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "T21", "T31", "T41", "T42", "T51", "T52",
                                              "T61", "T62", "C63", "algebra", "classify"};
  return names;
}

/// Per-trial checks and once-per-(n, ε) negative controls of a suite.
struct SuitePlan {
  std::vector<TheoremId> per_trial;
  std::vector<TheoremId> per_grid;
};

inline SuitePlan plan_suite(const std::string& suite) {
  using T = TheoremId;
  if (suite == "all")
    return {{T::ALGEBRA, T::CLASSIFY, T::T21, T::EQ19, T::T31, T::T41, T::EQ24, T::T42, T::T51, T::T52, T::T61, T::T62,
             T::C63},
            {T::T41_NEG, T::T51_NEG}};
  if (suite == "algebra") return {{T::ALGEBRA}, {}};
  if (suite == "classify") return {{T::CLASSIFY}, {}};
  if (suite == "T21") return {{T::T21, T::EQ19}, {}};
  if (suite == "T41") return {{T::T41, T::EQ24}, {T::T41_NEG}};
  if (suite == "T51") return {{T::T51}, {T::T51_NEG}};
  if (auto id = parse_theorem(suite)) return {{*id}, {}};
  throw InvalidInput("unknown suite: " + suite);
}

// substream index reserved for the once-per-grid negative controls
inline constexpr std::uint64_t kControlStream = 0x6e6567;

/// Seed of trial `k` under the master seed.
inline std::uint64_t trial_seed(std::uint64_t master, int k) {
  return substream(master, static_cast<std::uint64_t>(k));
}

/// Rejects option combinations the suite cannot run (e.g. T31 with n < 3).
inline void check_suite_options(const SuiteOptions& opt) {
  const SuitePlan plan = plan_suite(opt.suite);
  if (opt.trials < 1) throw InvalidInput("--trials must be positive");
  if (!(opt.tol > 0.0)) throw InvalidInput("--tol must be positive");
  if (opt.ns.empty()) throw InvalidInput("--n must name at least one half-dimension");
  for (int e : opt.epsilons)
    if (e != 1 && e != -1) throw InvalidInput("epsilon must be +1 or -1");
  for (int n : opt.ns) {
    if (n < 2 || n > 6) throw InvalidInput("--n values must lie in 2..6");
    // an explicitly requested theorem must be runnable for every n given;
    // "all" skips checks whose minimum n is not met
    if (opt.suite != "all")
      for (TheoremId id : plan.per_trial)
        if (n < min_n(id))
          throw InvalidInput(std::string(theorem_name(id)) + " needs n >= " + std::to_string(min_n(id)));
  }
}

inline std::vector<TheoremVerdict> run_suite(const SuiteOptions& opt) {
  check_suite_options(opt);
  const SuitePlan plan = plan_suite(opt.suite);
  std::vector<TheoremVerdict> out;
  for (int n : opt.ns) {
    for (int eps : opt.epsilons) {
      for (int k = 0; k < opt.trials; ++k) {
        const std::uint64_t seed = trial_seed(opt.seed, k);
        for (TheoremId id : plan.per_trial)
          if (n >= min_n(id)) out.push_back(verify_theorem(id, n, eps, seed, opt.tol));
      }
      for (TheoremId id : plan.per_grid)
        out.push_back(verify_theorem(id, n, eps, substream(opt.seed, kControlStream), opt.tol));
    }
  }
  std::sort(out.begin(), out.end(), [](const TheoremVerdict& a, const TheoremVerdict& b) {
    return std::make_tuple(static_cast<int>(a.id), a.n, a.epsilon, a.seed) <
           std::make_tuple(static_cast<int>(b.id), b.n, b.epsilon, b.seed);
  });
  return out;
}

inline json report_to_json(const SuiteOptions& opt, const std::vector<TheoremVerdict>& verdicts) {
  json suites = json::array();
  int passed = 0;
  for (const auto& v : verdicts) {
    suites.push_back(verdict_to_json(v));
    if (v.pass()) ++passed;
  }
  const int total = static_cast<int>(verdicts.size());
  return json{{"version", kReportVersion},
              {"master_seed", opt.seed},
              {"suite", opt.suite},
              {"tol", opt.tol},
              {"suites", suites},
              {"summary", {{"total", total}, {"passed", passed}, {"failed", total - passed}}}};
}

}  // namespace riemprod
