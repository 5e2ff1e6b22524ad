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

#include "dpdecay/harness.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <ostream>
#include <thread>

#include "dpdecay/all_window_sum.h"
#include "dpdecay/baselines.h"
#include "dpdecay/bounds.h"
#include "dpdecay/errors.h"
#include "dpdecay/lower_bound.h"
#include "dpdecay/polynomial_sum.h"
#include "dpdecay/random.h"
#include "dpdecay/sensitivity.h"

namespace dpdecay {
namespace {

using json = nlohmann::json;

std::string_view SourceName(StreamSource::Kind kind) {
  switch (kind) {
    case StreamSource::Kind::kBernoulli: return "bernoulli";
    case StreamSource::Kind::kOnes: return "ones";
    case StreamSource::Kind::kBlocks: return "blocks";
    case StreamSource::Kind::kFile: return "file";
  }
  return "unknown";
}

StreamSource::Kind ParseSourceKind(std::string_view name) {
  if (name == "bernoulli") return StreamSource::Kind::kBernoulli;
  if (name == "ones") return StreamSource::Kind::kOnes;
  if (name == "blocks") return StreamSource::Kind::kBlocks;
  if (name == "file") return StreamSource::Kind::kFile;
  throw ParameterError("unknown stream source '" + std::string(name) + "'");
}

json DecayToJson(const DecaySpec& d) {
  switch (d.kind) {
    case DecaySpec::Kind::kWindow:
      return {{"kind", "window"}, {"W", d.window}};
    case DecaySpec::Kind::kExponential:
      return {{"kind", "exponential"}, {"alpha", d.alpha}};
    case DecaySpec::Kind::kPolynomial:
      return {{"kind", "polynomial"}, {"c", d.c}, {"beta", d.beta}};
    case DecaySpec::Kind::kRunning:
      return {{"kind", "running"}};
  }
  return {};
}

DecaySpec DecayFromJson(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "window") return DecaySpec::Window(j.at("W").get<int64_t>());
  if (kind == "exponential") {
    return DecaySpec::Exponential(j.at("alpha").get<double>());
  }
  if (kind == "polynomial") {
    return DecaySpec::Polynomial(j.at("c").get<double>(),
                                 j.at("beta").get<double>());
  }
  if (kind == "running") return DecaySpec::Running();
  throw ParameterError("unknown decay kind '" + kind + "'");
}

bool IsBinary(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [](double x) { return x == 0.0 || x == 1.0; });
}

// One estimator compared in a bench run.
struct Arm {
  std::string name;
  std::function<std::unique_ptr<DecayedSumEstimator>(RandomSource, NoiseMode)>
      make;
  std::function<double(int64_t j)> noise_delta;
};

std::vector<Arm> BenchArms(const ExperimentConfig& config, bool binary,
                           std::vector<std::string>& notes) {
  const MechanismConfig& mech = config.mechanism;
  std::vector<Arm> arms;
  arms.push_back(Arm{
      std::string(MechanismName(mech.kind)),
      [mech](RandomSource rng, NoiseMode mode) {
        MechanismConfig c = mech;
        c.noise = mode;
        return MakeEstimator(c, rng);
      },
      [mech, gamma = config.gamma](int64_t j) {
        return MechanismNoiseDelta(mech, j, gamma);
      }});

  const bool baseline_applies = mech.kind != MechanismKind::kRandomizedResponse &&
                                mech.kind != MechanismKind::kOracle;
  if (baseline_applies && !binary) {
    notes.push_back("randomized response rows skipped: stream is not binary");
  }
  if (baseline_applies && binary) {
    auto rr_arm = [&](std::string name, double flip) {
      MechanismConfig c = mech;
      c.kind = MechanismKind::kRandomizedResponse;
      c.flip = flip;
      return Arm{std::move(name),
                 [c](RandomSource rng, NoiseMode mode) {
                   MechanismConfig m = c;
                   m.noise = mode;
                   return MakeEstimator(m, rng);
                 },
                 [c, gamma = config.gamma](int64_t j) {
                   return MechanismNoiseDelta(c, j, gamma);
                 }};
    };
    arms.push_back(rr_arm("rr_matched", MatchedFlipParameter(mech.epsilon)));
    if (mech.epsilon < 1.0) arms.push_back(rr_arm("rr_raw", mech.epsilon));
  }

  if (mech.kind == MechanismKind::kWindow ||
      mech.kind == MechanismKind::kAllWindow) {
    const int64_t w = mech.decay.window;
    arms.push_back(Arm{
        "strawman",
        [mech, w](RandomSource rng, NoiseMode mode) {
          MechanismOptions options;
          options.noise = mode;
          return std::unique_ptr<DecayedSumEstimator>(
              std::make_unique<RunningDifferenceWindow>(
                  w, mech.epsilon, mech.level_beta, rng, options));
        },
        [mech, w, gamma = config.gamma](int64_t j) {
          return UtilityDelta(RunningDifferenceNoiseProfile(
                                  w, j, mech.epsilon, mech.level_beta),
                              gamma);
        }});
  }
  return arms;
}

// Estimates of `est` at the checkpoints.
std::vector<double> RunAtCheckpoints(DecayedSumEstimator& est,
                                     const std::vector<double>& stream,
                                     const std::vector<int64_t>& checkpoints) {
  std::vector<double> out;
  out.reserve(checkpoints.size());
  size_t next = 0;
  for (size_t i = 0; i < stream.size() && next < checkpoints.size(); ++i) {
    const double v = est.Push(stream[i]);
    if (checkpoints[next] == static_cast<int64_t>(i + 1)) {
      out.push_back(v);
      ++next;
    }
  }
  return out;
}

}  // namespace

void ExperimentConfig::Validate() const {
  mechanism.Validate();
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ParameterError("gamma must be in (0, 1)");
  }
  if (trials < 1) throw ParameterError("trials must be positive");
  if (length < 0) throw ParameterError("T must be non-negative");
  if (threads < 1) throw ParameterError("threads must be positive");
  if (source.kind == StreamSource::Kind::kBernoulli &&
      !(source.p >= 0.0 && source.p <= 1.0)) {
    throw ParameterError("bernoulli p must be in [0, 1]");
  }
  if (source.kind == StreamSource::Kind::kBlocks && source.block < 0) {
    throw ParameterError("block length must be non-negative");
  }
}

json ToJson(const ExperimentConfig& c) {
  json j;
  j["mechanism"] = std::string(MechanismName(c.mechanism.kind));
  j["decay"] = DecayToJson(c.mechanism.decay);
  j["epsilon"] = c.mechanism.epsilon;
  j["level_beta"] = c.mechanism.level_beta;
  j["noise"] = c.mechanism.noise == NoiseMode::kLaplace;
  if (c.mechanism.flip) j["flip"] = *c.mechanism.flip;
  j["gamma"] = c.gamma;
  j["trials"] = c.trials;
  j["source"] = {{"kind", SourceName(c.source.kind)},
                 {"p", c.source.p},
                 {"block", c.source.block},
                 {"path", c.source.path}};
  j["T"] = c.length;
  j["seed"] = c.seed;
  j["format"] = c.format == OutputFormat::kCsv ? "csv" : "ndjson";
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig ExperimentConfigFromJson(const json& j) {
  ExperimentConfig c;
  try {
    c.mechanism.kind =
        ParseMechanismKind(j.at("mechanism").get<std::string>());
    c.mechanism.decay = DecayFromJson(j.at("decay"));
    c.mechanism.epsilon = j.at("epsilon").get<double>();
    c.mechanism.level_beta = j.value("level_beta", 2.0);
    c.mechanism.noise = j.value("noise", true) ? NoiseMode::kLaplace
                                               : NoiseMode::kDisabled;
    if (j.contains("flip")) c.mechanism.flip = j["flip"].get<double>();
    c.gamma = j.value("gamma", 0.05);
    c.trials = j.value("trials", int64_t{100});
    if (j.contains("source")) {
      const json& s = j["source"];
      c.source.kind = ParseSourceKind(s.at("kind").get<std::string>());
      c.source.p = s.value("p", 0.5);
      c.source.block = s.value("block", int64_t{0});
      c.source.path = s.value("path", std::string());
    }
    c.length = j.value("T", int64_t{4096});
    c.seed = j.value("seed", uint64_t{1});
    c.format = ParseOutputFormat(j.value("format", std::string("csv")));
    c.threads = j.value("threads", 1);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad experiment config: ") + e.what());
  }
  return c;
}

std::vector<double> GenerateStream(const ExperimentConfig& config) {
  const StreamSource& s = config.source;
  std::vector<double> out;
  if (s.kind == StreamSource::Kind::kFile) {
    if (s.path.empty() || s.path == "-") {
      out = ParseValues(std::cin);
    } else {
      std::ifstream in(s.path);
      if (!in) throw DataError("cannot open '" + s.path + "'");
      out = ParseValues(in);
    }
    if (config.length > 0 && static_cast<int64_t>(out.size()) > config.length) {
      out.resize(static_cast<size_t>(config.length));
    }
    return out;
  }
  const size_t n = static_cast<size_t>(config.length);
  out.reserve(n);
  switch (s.kind) {
    case StreamSource::Kind::kBernoulli: {
      RandomSource rng = RandomSource(config.seed).Child(0);
      for (size_t i = 0; i < n; ++i) {
        out.push_back(rng.UniformOpen() < s.p ? 1.0 : 0.0);
      }
      break;
    }
    case StreamSource::Kind::kOnes:
      out.assign(n, 1.0);
      break;
    case StreamSource::Kind::kBlocks: {
      int64_t block = s.block;
      if (block == 0) {
        block = config.mechanism.decay.kind == DecaySpec::Kind::kWindow
                    ? config.mechanism.decay.window
                    : 64;
      }
      for (size_t i = 0; i < n; ++i) {
        out.push_back((static_cast<int64_t>(i) / block) % 2 == 0 ? 1.0 : 0.0);
      }
      break;
    }
    case StreamSource::Kind::kFile:
      break;
  }
  return out;
}

std::vector<int64_t> PowerOfTwoCheckpoints(int64_t length) {
  std::vector<int64_t> out;
  for (int64_t j = 1; j > 0 && j <= length; j *= 2) out.push_back(j);
  return out;
}

double NearestRankQuantile(std::vector<double> values, double p) {
  if (values.empty()) throw ParameterError("quantile of an empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("p must be in (0, 1]");
  const size_t n = values.size();
  size_t rank = static_cast<size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

const SummaryRow& BenchResult::At(const std::string& estimator,
                                  int64_t j) const {
  for (const auto& row : rows) {
    if (row.estimator == estimator && row.j == j) return row;
  }
  throw RangeError("no bench row for " + estimator + " at j=" +
                   std::to_string(j));
}

BenchResult RunBench(const ExperimentConfig& config) {
  config.Validate();
  if (config.trials < 30) {
    throw ParameterError("bench needs at least 30 trials");
  }
  BenchResult result;
  const std::vector<double> stream = GenerateStream(config);
  const std::vector<int64_t> checkpoints =
      PowerOfTwoCheckpoints(static_cast<int64_t>(stream.size()));
  if (checkpoints.empty()) throw ParameterError("bench needs T >= 1");

  ExactOracle oracle(config.mechanism.decay);
  const std::vector<double> exact =
      RunAtCheckpoints(oracle, stream, checkpoints);

  const std::vector<Arm> arms =
      BenchArms(config, IsBinary(stream), result.notes);
  const size_t n_arms = arms.size();
  const size_t n_points = checkpoints.size();

  // Deterministic gap between each arm's noise-free output and the truth
  // (non-zero only for approximating mechanisms).
  std::vector<std::vector<double>> bias(n_arms);
  for (size_t a = 0; a < n_arms; ++a) {
    auto est = arms[a].make(RandomSource(config.seed), NoiseMode::kDisabled);
    const auto clean = RunAtCheckpoints(*est, stream, checkpoints);
    for (size_t c = 0; c < n_points; ++c) {
      bias[a].push_back(std::abs(clean[c] - exact[c]));
    }
  }

  // errors[trial][arm * n_points + c]
  const size_t trials = static_cast<size_t>(config.trials);
  std::vector<std::vector<double>> errors(trials);
  const RandomSource base(config.seed);
  auto run_trial = [&](size_t t) {
    const RandomSource trial_rng = base.Child(1 + t);
    std::vector<double> row(n_arms * n_points);
    for (size_t a = 0; a < n_arms; ++a) {
      auto est = arms[a].make(trial_rng.Child(a), config.mechanism.noise);
      const auto values = RunAtCheckpoints(*est, stream, checkpoints);
      for (size_t c = 0; c < n_points; ++c) {
        row[a * n_points + c] = values[c] - exact[c];
      }
    }
    errors[t] = std::move(row);
  };

  const size_t n_threads =
      std::min<size_t>(static_cast<size_t>(config.threads), trials);
  if (n_threads <= 1) {
    for (size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::exception_ptr> failures(n_threads);
    std::vector<std::thread> pool;
    for (size_t w = 0; w < n_threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t t = w; t < trials; t += n_threads) run_trial(t);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  const double lb = ReferenceDelta(config.mechanism.decay, config.gamma,
                                   config.mechanism.epsilon);
  std::vector<double> column(trials);
  for (size_t a = 0; a < n_arms; ++a) {
    for (size_t c = 0; c < n_points; ++c) {
      double sum = 0.0;
      for (size_t t = 0; t < trials; ++t) {
        column[t] = errors[t][a * n_points + c];
        sum += column[t];
      }
      const double mean = sum / static_cast<double>(trials);
      double ss = 0.0;
      for (double e : column) ss += (e - mean) * (e - mean);
      std::vector<double> abs_err(trials);
      for (size_t t = 0; t < trials; ++t) abs_err[t] = std::abs(column[t]);

      SummaryRow row;
      row.estimator = arms[a].name;
      row.j = checkpoints[c];
      row.mean_err = mean;
      row.sd_err = std::sqrt(ss / static_cast<double>(trials - 1));
      row.q_abs_err = NearestRankQuantile(std::move(abs_err),
                                          1.0 - config.gamma);
      row.theory_delta = arms[a].noise_delta(checkpoints[c]) + bias[a][c];
      row.lb_reference = lb;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

void WriteBench(std::ostream& out, const BenchResult& result,
                OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "estimator,j,mean_err,sd_err,q_abs_err,theory_delta,lb_reference\n";
  }
  for (const auto& r : result.rows) {
    if (format == OutputFormat::kCsv) {
      out << r.estimator << "," << r.j << "," << FormatDouble(r.mean_err)
          << "," << FormatDouble(r.sd_err) << ","
          << FormatDouble(r.q_abs_err) << "," << FormatDouble(r.theory_delta)
          << "," << FormatDouble(r.lb_reference) << "\n";
    } else {
      out << "{\"estimator\":" << json(r.estimator).dump() << ",\"j\":" << r.j
          << ",\"mean_err\":" << FormatDouble(r.mean_err)
          << ",\"sd_err\":" << FormatDouble(r.sd_err)
          << ",\"q_abs_err\":" << FormatDouble(r.q_abs_err)
          << ",\"theory_delta\":" << FormatDouble(r.theory_delta)
          << ",\"lb_reference\":" << FormatDouble(r.lb_reference) << "}\n";
    }
  }
}

BoundReport ComputeBound(const ExperimentConfig& config) {
  config.Validate();
  const MechanismConfig& m = config.mechanism;
  if (m.kind == MechanismKind::kOracle) {
    throw ParameterError("bound is not defined for the oracle");
  }
  const int64_t horizon = std::max<int64_t>(config.length, 1);
  BoundReport report;
  auto add = [&](std::string key, std::string value) {
    report.fields.emplace_back(std::move(key), std::move(value));
  };
  add("mechanism", std::string(MechanismName(m.kind)));
  add("decay", m.decay.ToString());
  add("epsilon", FormatDouble(m.epsilon));
  add("gamma", FormatDouble(config.gamma));
  add("T", std::to_string(horizon));

  if (m.kind == MechanismKind::kRandomizedResponse) {
    const double flip = m.ResolvedFlip();
    add("flip", FormatDouble(flip));
    add("rr_epsilon",
        flip < 1.0 ? FormatDouble(RandomizedResponseEpsilon(flip)) : "inf");
    add("delta", FormatDouble(MechanismNoiseDelta(m, horizon, config.gamma)));
    add("delta_method", "hoeffding");
  } else {
    add("sensitivity", FormatDouble(*MechanismSensitivity(m, horizon)));
    if (m.kind == MechanismKind::kPolynomial) {
      const double structural =
          PolynomialSum::StructuralSensitivity(m.decay.c, m.decay.beta);
      add("lambda_p", FormatDouble(SensitivityLambdaPoly(m.decay.c,
                                                        m.decay.beta)));
      add("structural_sensitivity", FormatDouble(structural));
    }
    const NoiseProfile profile = *MechanismNoiseProfile(m, horizon);
    if (m.kind == MechanismKind::kAllWindow ||
        m.kind == MechanismKind::kRunning) {
      CounterNoise levels = CounterNoise::PerLevel(RandomSource(0), m.epsilon,
                                                   m.level_beta);
      add("noise_scale_level1", FormatDouble(levels.ScaleAt(1)));
    }
    add("noise_scale", FormatDouble(profile.max_scale()));
    add("counters_per_estimate", std::to_string(profile.scales.size()));
    add("sigma", FormatDouble(profile.sigma()));
    const UtilityBound u = UtilityDeltaDetail(profile, config.gamma);
    add("delta", FormatDouble(u.delta));
    add("optimizer", u.interior ? "interior" : "boundary");

    double log_size = std::log2(static_cast<double>(horizon));
    if (m.decay.kind == DecaySpec::Kind::kWindow) {
      log_size = std::log2(static_cast<double>(m.decay.window));
    } else if (m.decay.kind == DecaySpec::Kind::kExponential) {
      log_size = std::log2(1.0 / (1.0 - m.decay.alpha));
    }
    const double log_gamma = std::log(1.0 / config.gamma);
    add("branch", log_size >= log_gamma ? "log W >= log(1/gamma)"
                                        : "log W < log(1/gamma)");
  }
  add("lb_reference", FormatDouble(ReferenceDelta(m.decay, config.gamma,
                                                 m.epsilon)));
  return report;
}

void WriteBound(std::ostream& out, const BoundReport& report,
                OutputFormat format) {
  if (format == OutputFormat::kCsv) {
    out << "field,value\n";
    for (const auto& [k, v] : report.fields) out << k << "," << v << "\n";
    return;
  }
  json j = json::object();
  for (const auto& [k, v] : report.fields) j[k] = v;
  out << j.dump() << "\n";
}

}  // namespace dpdecay
