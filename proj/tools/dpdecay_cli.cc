//
// Copyright 2026 The dpdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end: run | bench | bound | lbverify.
//
// Exit codes: 0 success, 1 lbverify check failed, 2 usage error, 3 data
// error.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpdecay/baselines.h"
#include "dpdecay/errors.h"
#include "dpdecay/extensions.h"
#include "dpdecay/factory.h"
#include "dpdecay/harness.h"
#include "dpdecay/lower_bound.h"
#include "dpdecay/stream_io.h"

namespace {

using namespace dpdecay;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string mech = "window";
  std::optional<int64_t> window;
  std::optional<double> alpha;
  std::optional<double> c;
  std::optional<double> beta;
  double eps = 1.0;
  double gamma = 0.05;
  int64_t trials = 100;
  int64_t length = 4096;
  uint64_t seed = 1;
  std::string input;
  bool no_noise = false;
  bool with_exact = false;
  std::string format = "csv";
  bool histogram = false;
  int threads = 1;
  double level_beta = 2.0;
  std::string source = "bernoulli";
  double p = 0.5;
  int64_t block = 0;
  int64_t q = 4;
  int64_t d = 8;
  double delta = 0.0;
  std::string eps_grid = "0.1,0.5,1,2";
};

void AddDecayFlags(CLI::App* app, Flags& f) {
  app->add_option("--W", f.window, "Window size");
  app->add_option("--alpha", f.alpha, "Exponential decay base");
  app->add_option("--c", f.c, "Polynomial decay exponent");
  app->add_option("--beta", f.beta,
                  "Polynomial multiplicative accuracy (default 0.5)");
}

void AddMechanismFlags(CLI::App* app, Flags& f) {
  app->add_option("--mech", f.mech,
                  "window|allwindow|exp|poly|running|rr|oracle")
      ->capture_default_str();
  AddDecayFlags(app, f);
  app->add_option("--eps", f.eps, "Privacy parameter")->capture_default_str();
  app->add_option("--level-beta", f.level_beta,
                  "Per-level budget exponent of the growing tree")
      ->capture_default_str();
  app->add_option("--seed", f.seed, "Base seed")->capture_default_str();
  app->add_flag("--no-noise", f.no_noise,
                "Disable privacy noise (NOT private; testing only)");
  app->add_option("--format", f.format, "csv|ndjson")->capture_default_str();
}

// Decay implied by the mechanism and the decay flags.
DecaySpec InferDecay(const Flags& f, std::optional<MechanismKind> kind) {
  int groups = 0;
  groups += f.window.has_value();
  groups += f.alpha.has_value();
  groups += f.c.has_value();
  if (groups > 1) {
    throw UsageError("conflicting decay flags: give at most one of --W, "
                     "--alpha, --c");
  }
  if (f.beta && !f.c) throw UsageError("--beta needs --c");
  auto forbid_others = [&](const char* mech) {
    if (groups > 0) {
      throw UsageError(std::string("--mech ") + mech +
                       " conflicts with the given decay flag");
    }
  };
  const double beta = f.beta.value_or(0.5);
  if (kind) {
    switch (*kind) {
      case MechanismKind::kWindow:
      case MechanismKind::kAllWindow:
        if (!f.window) {
          if (groups) throw UsageError("window mechanisms take --W only");
          throw UsageError("--W is required");
        }
        return DecaySpec::Window(*f.window);
      case MechanismKind::kExponential:
        if (!f.alpha) {
          if (groups) throw UsageError("exp takes --alpha only");
          throw UsageError("--alpha is required");
        }
        return DecaySpec::Exponential(*f.alpha);
      case MechanismKind::kPolynomial:
        if (!f.c) {
          if (groups) throw UsageError("poly takes --c and --beta only");
          throw UsageError("--c is required");
        }
        return DecaySpec::Polynomial(*f.c, beta);
      case MechanismKind::kRunning:
        forbid_others("running");
        return DecaySpec::Running();
      default:
        break;
    }
  }
  if (f.window) return DecaySpec::Window(*f.window);
  if (f.alpha) return DecaySpec::Exponential(*f.alpha);
  if (f.c) return DecaySpec::Polynomial(*f.c, beta);
  return DecaySpec::Running();
}

MechanismConfig BuildMechanism(const Flags& f) {
  MechanismConfig m;
  m.kind = ParseMechanismKind(f.mech);
  m.decay = InferDecay(f, m.kind);
  m.epsilon = f.eps;
  m.level_beta = f.level_beta;
  m.noise = f.no_noise ? NoiseMode::kDisabled : NoiseMode::kLaplace;
  m.Validate();
  return m;
}

void WarnIfNoiseless(const Flags& f) {
  if (f.no_noise) {
    std::cerr << "WARNING: --no-noise is set. Output is NOT differentially "
                 "private; use for testing only.\n";
  }
}

std::unique_ptr<std::istream> OpenInput(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto in = std::make_unique<std::ifstream>(path);
  if (!*in) throw DataError("cannot open '" + path + "'");
  return in;
}

int CmdRun(const Flags& f) {
  const MechanismConfig mech = BuildMechanism(f);
  WarnIfNoiseless(f);
  const OutputFormat format = ParseOutputFormat(f.format);
  auto file = OpenInput(f.input);
  std::istream& in = file ? *file : std::cin;
  RecordWriter writer(std::cout, format, f.histogram, f.with_exact);
  const RandomSource rng(f.seed);

  auto data_error = [](int64_t t, const std::exception& e) {
    return DataError("update " + std::to_string(t) + ": " + e.what());
  };

  if (f.histogram) {
    const auto records = ParseKeyedValues(in);
    Histogram hist([&](RandomSource r) { return MakeEstimator(mech, r); },
                   rng);
    std::map<std::string, ExactOracle, std::less<>> oracles;
    int64_t t = 0;
    for (const auto& kv : records) {
      ++t;
      RunRecord r{t, kv.key, 0.0, std::nullopt};
      try {
        r.estimate = hist.Push(kv.key, kv.value);
      } catch (const ParameterError& e) {
        throw data_error(t, e);
      } catch (const RangeError& e) {
        throw data_error(t, e);
      }
      if (f.with_exact) {
        auto it = oracles.try_emplace(kv.key, mech.decay).first;
        r.exact = it->second.Push(kv.value);
      }
      writer.Write(r);
    }
    return 0;
  }

  const auto values = ParseValues(in);
  auto est = MakeEstimator(mech, rng);
  ExactOracle oracle(mech.decay);
  int64_t t = 0;
  for (double x : values) {
    ++t;
    RunRecord r{t, std::nullopt, 0.0, std::nullopt};
    try {
      r.estimate = est->Push(x);
    } catch (const ParameterError& e) {
      throw data_error(t, e);
    } catch (const RangeError& e) {
      throw data_error(t, e);
    }
    if (f.with_exact) r.exact = oracle.Push(x);
    writer.Write(r);
  }
  return 0;
}

ExperimentConfig BuildExperiment(const Flags& f) {
  ExperimentConfig config;
  config.mechanism = BuildMechanism(f);
  config.gamma = f.gamma;
  config.trials = f.trials;
  config.length = f.length;
  config.seed = f.seed;
  config.format = ParseOutputFormat(f.format);
  config.threads = f.threads;
  config.source.kind = f.source == "bernoulli" ? StreamSource::Kind::kBernoulli
                       : f.source == "ones"    ? StreamSource::Kind::kOnes
                       : f.source == "blocks"  ? StreamSource::Kind::kBlocks
                       : f.source == "file"
                           ? StreamSource::Kind::kFile
                           : throw UsageError("unknown --source " + f.source);
  if (!f.input.empty()) {
    if (f.source != "bernoulli" && f.source != "file") {
      throw UsageError("--input conflicts with --source " + f.source);
    }
    config.source.kind = StreamSource::Kind::kFile;
  }
  config.source.path = f.input;
  config.source.p = f.p;
  config.source.block = f.block;
  config.Validate();
  return config;
}

int CmdBench(const Flags& f) {
  if (f.trials < 30) throw UsageError("bench needs --trials >= 30");
  const ExperimentConfig config = BuildExperiment(f);
  WarnIfNoiseless(f);
  const BenchResult result = RunBench(config);
  for (const auto& note : result.notes) std::cerr << "note: " << note << "\n";
  WriteBench(std::cout, result, config.format);
  return 0;
}

int CmdBound(const Flags& f) {
  ExperimentConfig config;
  config.mechanism = BuildMechanism(f);
  config.gamma = f.gamma;
  config.length = f.length;
  config.format = ParseOutputFormat(f.format);
  WriteBound(std::cout, ComputeBound(config), config.format);
  return 0;
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v > 0.0)) throw std::invalid_argument("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad --eps-grid entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--eps-grid is empty");
  return out;
}

int CmdLbverify(const Flags& f) {
  const DecaySpec decay = InferDecay(f, std::nullopt);
  decay.Validate();
  if (f.q < 1 || f.d < 1) throw UsageError("--q and --D must be positive");
  if (!(f.delta >= 0.0)) throw UsageError("--delta must be non-negative");
  const std::vector<double> grid = ParseGrid(f.eps_grid);

  const LowerBoundFamily family = BuildLowerBoundFamily(f.q, f.d);
  const IndependenceReport ind = CheckIndependence(family, decay, f.delta);
  const ClosenessReport close = CheckCloseness(family, f.d);

  std::cout << "family q=" << f.q << " D=" << f.d << " T="
            << family.length() << " decay=" << decay.ToString()
            << " delta=" << FormatDouble(f.delta) << "\n";
  std::cout << "a,b,separated,j,gap\n";
  for (const auto& w : ind.pairs) {
    std::cout << w.a << "," << w.b << "," << (w.separated ? "yes" : "no")
              << "," << w.j << "," << FormatDouble(w.gap) << "\n";
  }
  std::cout << "independence: " << (ind.passed ? "PASS" : "FAIL") << "\n";
  for (const auto& w : ind.pairs) {
    if (!w.separated) {
      std::cout << "witness: pair (" << w.a << "," << w.b
                << ") max gap " << FormatDouble(w.gap) << " at j=" << w.j
                << " <= 2*delta=" << FormatDouble(2.0 * f.delta) << "\n";
      break;
    }
  }
  std::cout << "closeness: max d_H(x0, xa)=" << close.max_to_zero
            << " all-pairs max=" << close.all_pairs_max << " -> "
            << (close.passed ? "PASS" : "FAIL") << "\n";
  std::cout << "eps,framework_threshold,D_exceeds\n";
  for (double eps : grid) {
    const double th = FrameworkThreshold(f.q, eps);
    std::cout << FormatDouble(eps) << "," << FormatDouble(th) << ","
              << (static_cast<double>(f.d) > th ? "yes" : "no") << "\n";
  }
  const bool ok = ind.passed && close.passed;
  std::cout << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private decayed sums under continual "
               "observation"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* run = app.add_subcommand("run", "Stream input through a mechanism");
  AddMechanismFlags(run, f);
  run->add_option("--input", f.input, "Input path, or - for stdin");
  run->add_flag("--with-exact", f.with_exact, "Add exact and abs_error");
  run->add_flag("--histogram", f.histogram, "Read key,value records");

  CLI::App* bench = app.add_subcommand("bench", "Monte-Carlo error summary");
  AddMechanismFlags(bench, f);
  bench->add_option("--gamma", f.gamma, "Error probability")
      ->capture_default_str();
  bench->add_option("--trials", f.trials, "Number of trials")
      ->capture_default_str();
  bench->add_option("--T", f.length, "Stream length")->capture_default_str();
  bench->add_option("--threads", f.threads, "Worker threads")
      ->capture_default_str();
  bench->add_option("--source", f.source, "bernoulli|ones|blocks|file")
      ->capture_default_str();
  bench->add_option("--p", f.p, "Bernoulli probability")
      ->capture_default_str();
  bench->add_option("--block", f.block, "Run length of the blocks source");
  bench->add_option("--input", f.input, "Input path for the file source");

  CLI::App* bound = app.add_subcommand("bound", "Print the theory table");
  AddMechanismFlags(bound, f);
  bound->add_option("--gamma", f.gamma, "Error probability")
      ->capture_default_str();
  bound->add_option("--T", f.length, "Horizon")->capture_default_str();

  CLI::App* lb = app.add_subcommand("lbverify",
                                    "Verify the lower-bound construction");
  AddDecayFlags(lb, f);
  lb->add_option("--q", f.q, "Number of non-zero instances")
      ->capture_default_str();
  lb->add_option("--D", f.d, "Block length")->capture_default_str();
  lb->add_option("--delta", f.delta, "Accuracy to refute")->required();
  lb->add_option("--eps-grid", f.eps_grid, "Comma-separated epsilons")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return CmdRun(f);
    if (*bench) return CmdBench(f);
    if (*bound) return CmdBound(f);
    if (*lb) return CmdLbverify(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    // ParameterError and the other invalid-argument errors.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
