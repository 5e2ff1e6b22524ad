# Copyright 2026 The dpdecay Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import dpdecay


def test_window_noiseless_matches_direct_sum():
    est = dpdecay.Estimator("window", W=4, noise=False)
    out = est.push_many([1, 0, 1, 1, 0, 1, 1])
    assert out[-1] == 3
    assert est.step == 7


def test_exponential_noiseless_outputs():
    est = dpdecay.Estimator("exp", alpha=0.75, noise=False)
    assert est.push_many([1, 1, 1]) == pytest.approx([1, 1.75, 2.3125])


def test_seeded_runs_repeat():
    a = dpdecay.Estimator("window", W=8, seed=7).push_many([1] * 50)
    b = dpdecay.Estimator("window", W=8, seed=7).push_many([1] * 50)
    assert a == b


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError, match="allwindow"):
        dpdecay.Estimator("window", W=6)
    est = dpdecay.Estimator("window", W=4)
    with pytest.raises(ValueError):
        est.push(1.5)


def test_all_window_queries():
    s = dpdecay.AllWindowSum(noise=False)
    for _ in range(8):
        s.push(1)
    assert s.query(8, 3) == 3
    assert s.running_query(0) == 0


def test_calculators():
    assert dpdecay.sensitivity_lambda_exp(0.9) == pytest.approx(6.546, abs=1e-3)
    assert dpdecay.sensitivity_lambda_poly(2, 0.5) == pytest.approx(4)
    assert dpdecay.window_sensitivity(4) == 3
    b = 1.0
    expected = 2 * math.exp(0.375 - 0.5 * 2.5 * math.sqrt(2))
    assert dpdecay.laplace_tail([b], 2.5, 0.5) == pytest.approx(expected)
    assert dpdecay.framework_threshold(8, 1.0) == pytest.approx(math.log(16))


def test_distinct_count_noiseless():
    dc = dpdecay.DistinctCount(noise=False)
    assert [dc.push(u) for u in "abac"] == [1, 2, 2, 3]
    assert dc.epsilon == 2 * dc.inner_epsilon


def test_lb_verify():
    assert dpdecay.lb_verify(4, 8, 3.5, W=8)["independent"]
    report = dpdecay.lb_verify(4, 8, 4.5, W=8)
    assert not report["independent"]
    assert any(not p["separated"] for p in report["pairs"])


def test_bench_and_bound_from_config():
    config = {
        "mechanism": "window",
        "decay": {"kind": "window", "W": 16},
        "epsilon": 1.0,
        "trials": 30,
        "T": 64,
        "seed": 5,
    }
    rows = dpdecay.run_bench(config)
    assert rows == dpdecay.run_bench(config)
    assert {r["estimator"] for r in rows} >= {"window", "rr_matched", "strawman"}
    assert dpdecay.bound(config)["noise_scale"] == "5"
