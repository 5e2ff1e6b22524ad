#
# Copyright 2026 The dpdecay Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

"""Differentially private decayed sums under continual observation."""

import json

from ._dpdecay import *  # noqa: F401,F403
from ._dpdecay import _bound, _run_bench


def run_bench(config):
    """Runs a Monte-Carlo bench from a config dict; returns summary rows."""
    return _run_bench(json.dumps(config))


def bound(config):
    """Theory table for a config dict, as a dict of strings."""
    return _bound(json.dumps(config))
