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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dpdecay/all_window_sum.h"
#include "dpdecay/baselines.h"
#include "dpdecay/bounds.h"
#include "dpdecay/decay.h"
#include "dpdecay/errors.h"
#include "dpdecay/extensions.h"
#include "dpdecay/factory.h"
#include "dpdecay/harness.h"
#include "dpdecay/lower_bound.h"
#include "dpdecay/polynomial_sum.h"
#include "dpdecay/sensitivity.h"

namespace py = pybind11;

namespace dpdecay {
namespace {

MechanismConfig MakeConfig(const std::string& mech,
                           std::optional<int64_t> window,
                           std::optional<double> alpha, std::optional<double> c,
                           double beta, double eps, double level_beta,
                           bool noise) {
  MechanismConfig config;
  config.kind = ParseMechanismKind(mech);
  if (window) {
    config.decay = DecaySpec::Window(*window);
  } else if (alpha) {
    config.decay = DecaySpec::Exponential(*alpha);
  } else if (c) {
    config.decay = DecaySpec::Polynomial(*c, beta);
  } else {
    config.decay = DecaySpec::Running();
  }
  config.epsilon = eps;
  config.level_beta = level_beta;
  config.noise = noise ? NoiseMode::kLaplace : NoiseMode::kDisabled;
  config.Validate();
  return config;
}

class PyEstimator {
 public:
  PyEstimator(const MechanismConfig& config, uint64_t seed)
      : est_(MakeEstimator(config, RandomSource(seed))) {}

  double Push(double x) { return est_->Push(x); }

  std::vector<double> PushMany(const std::vector<double>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(est_->Push(x));
    return out;
  }

  int64_t step() const { return est_->step(); }
  std::string name() const { return std::string(est_->name()); }

 private:
  std::unique_ptr<DecayedSumEstimator> est_;
};

py::dict ReportToDict(const BoundReport& report) {
  py::dict d;
  for (const auto& [k, v] : report.fields) d[py::str(k)] = v;
  return d;
}

}  // namespace
}  // namespace dpdecay

PYBIND11_MODULE(_dpdecay, m) {
  using namespace dpdecay;
  m.doc() = "Differentially private decayed sums under continual observation";

  py::register_exception<ParameterError>(m, "ParameterError",
                                         PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation",
                                            PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);

  py::class_<PyEstimator>(m, "Estimator")
      .def(py::init([](const std::string& mech, std::optional<int64_t> W,
                       std::optional<double> alpha, std::optional<double> c,
                       double beta, double eps, double level_beta, bool noise,
                       uint64_t seed) {
             return PyEstimator(
                 MakeConfig(mech, W, alpha, c, beta, eps, level_beta, noise),
                 seed);
           }),
           py::arg("mech"), py::kw_only(), py::arg("W") = py::none(),
           py::arg("alpha") = py::none(), py::arg("c") = py::none(),
           py::arg("beta") = 0.5, py::arg("eps") = 1.0,
           py::arg("level_beta") = 2.0, py::arg("noise") = true,
           py::arg("seed") = 1)
      .def("push", &PyEstimator::Push, py::arg("x"))
      .def("push_many", &PyEstimator::PushMany, py::arg("xs"))
      .def_property_readonly("step", &PyEstimator::step)
      .def_property_readonly("name", &PyEstimator::name);

  py::class_<AllWindowSum>(m, "AllWindowSum")
      .def(py::init([](double eps, double level_beta, bool noise,
                       uint64_t seed) {
             MechanismOptions options;
             options.noise = noise ? NoiseMode::kLaplace : NoiseMode::kDisabled;
             return AllWindowSum(eps, level_beta, RandomSource(seed), options);
           }),
           py::kw_only(), py::arg("eps") = 1.0, py::arg("level_beta") = 2.0,
           py::arg("noise") = true, py::arg("seed") = 1)
      .def("push", &AllWindowSum::Push, py::arg("x"))
      .def("query", &AllWindowSum::Query, py::arg("j"), py::arg("W"))
      .def("running_query", &AllWindowSum::RunningQuery, py::arg("j"))
      .def_property_readonly("step", &AllWindowSum::step);

  py::class_<DistinctCount>(m, "DistinctCount")
      .def(py::init([](double eps, double level_beta, bool noise,
                       uint64_t seed) {
             MechanismOptions options;
             options.noise = noise ? NoiseMode::kLaplace : NoiseMode::kDisabled;
             return std::make_unique<DistinctCount>(
                 eps, level_beta, RandomSource(seed), options);
           }),
           py::kw_only(), py::arg("eps") = 1.0, py::arg("level_beta") = 2.0,
           py::arg("noise") = true, py::arg("seed") = 1)
      .def("push", &DistinctCount::Push, py::arg("element"))
      .def_property_readonly("epsilon", &DistinctCount::epsilon)
      .def_property_readonly("inner_epsilon", &DistinctCount::inner_epsilon);

  m.def("window_sensitivity", &WindowSensitivity, py::arg("W"));
  m.def("sensitivity_lambda_exp", &SensitivityLambdaExp, py::arg("alpha"));
  m.def("sensitivity_lambda_poly", &SensitivityLambdaPoly, py::arg("c"),
        py::arg("beta"));
  m.def(
      "polynomial_breakpoint",
      [](double c, double beta, int64_t j) {
        return PolynomialSum::Breakpoint(c, beta, j);
      },
      py::arg("c"), py::arg("beta"), py::arg("j"));

  m.def(
      "laplace_tail",
      [](std::vector<double> scales, double t, double lam) {
        return LaplaceTail(NoiseProfile{std::move(scales)}, t, lam);
      },
      py::arg("scales"), py::arg("t"), py::arg("lam"));
  m.def(
      "utility_delta",
      [](std::vector<double> scales, double gamma) {
        return UtilityDelta(NoiseProfile{std::move(scales)}, gamma);
      },
      py::arg("scales"), py::arg("gamma"));
  m.def("matched_flip_parameter", &MatchedFlipParameter, py::arg("eps"));
  m.def("framework_threshold", &FrameworkThreshold, py::arg("N"),
        py::arg("eps"));

  m.def(
      "lb_verify",
      [](int64_t q, int64_t D, double delta, std::optional<int64_t> W,
         std::optional<double> alpha, std::optional<double> c) {
        DecaySpec decay = W       ? DecaySpec::Window(*W)
                          : alpha ? DecaySpec::Exponential(*alpha)
                          : c     ? DecaySpec::Polynomial(*c, 0.5)
                                  : DecaySpec::Running();
        const auto family = BuildLowerBoundFamily(q, D);
        const auto ind = CheckIndependence(family, decay, delta);
        const auto close = CheckCloseness(family, D);
        py::list pairs;
        for (const auto& w : ind.pairs) {
          py::dict d;
          d["a"] = w.a;
          d["b"] = w.b;
          d["separated"] = w.separated;
          d["j"] = w.j;
          d["gap"] = w.gap;
          pairs.append(d);
        }
        py::dict out;
        out["independent"] = ind.passed;
        out["close"] = close.passed;
        out["all_pairs_max"] = close.all_pairs_max;
        out["pairs"] = pairs;
        return out;
      },
      py::arg("q"), py::arg("D"), py::arg("delta"), py::kw_only(),
      py::arg("W") = py::none(), py::arg("alpha") = py::none(),
      py::arg("c") = py::none());

  m.def(
      "_run_bench",
      [](const std::string& config_json) {
        const auto config =
            ExperimentConfigFromJson(nlohmann::json::parse(config_json));
        BenchResult result;
        {
          py::gil_scoped_release release;
          result = RunBench(config);
        }
        py::list rows;
        for (const auto& r : result.rows) {
          py::dict d;
          d["estimator"] = r.estimator;
          d["j"] = r.j;
          d["mean_err"] = r.mean_err;
          d["sd_err"] = r.sd_err;
          d["q_abs_err"] = r.q_abs_err;
          d["theory_delta"] = r.theory_delta;
          d["lb_reference"] = r.lb_reference;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config_json"));
  m.def(
      "_bound",
      [](const std::string& config_json) {
        return ReportToDict(ComputeBound(
            ExperimentConfigFromJson(nlohmann::json::parse(config_json))));
      },
      py::arg("config_json"));
}
