# Copyright 2026 The QCIVET Authors
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

"""Contract-based integrity verification for hybrid quantum-classical pipelines.

Stage specs are plain dicts here; they are serialized with ``json`` and
canonicalized by the C++ core.
"""

import json

from qcivet import _core
from qcivet._core import (
    DEFAULT_SEED,
    GENESIS_HASH,
    Anchor,
    AnchorUnavailable,
    AuditLog,
    FileAnchor,
    IntegrityViolation,
    InvalidArgument,
    MemoryAnchor,
    Unsupported,
    bench_commit,
    build_scenario,
    constant_probe,
    delta_sweep,
    diamond_distance_unitary,
    noise_sweep,
    run_demo,
    run_exp1,
    ry_diamond,
    verify_against_anchor,
)

__all__ = [
    "DEFAULT_SEED",
    "GENESIS_HASH",
    "Anchor",
    "AnchorUnavailable",
    "AuditLog",
    "FileAnchor",
    "IntegrityVerifier",
    "IntegrityViolation",
    "InvalidArgument",
    "MemoryAnchor",
    "Unsupported",
    "append",
    "bench_commit",
    "build_scenario",
    "canonicalize",
    "chain_hash",
    "constant_probe",
    "delta_sweep",
    "diamond_distance_unitary",
    "noise_sweep",
    "run_demo",
    "run_exp1",
    "ry_diamond",
    "sha256_hex",
    "verify_against_anchor",
]


def _dump(spec):
    if isinstance(spec, str):
        return spec
    return json.dumps(spec, allow_nan=True)


def canonicalize(spec):
    """Canonical JSON text of a spec dict (or JSON string)."""
    return _core.canonicalize(_dump(spec))


def chain_hash(prev_hash, spec):
    return _core.chain_hash(prev_hash, _dump(spec))


def sha256_hex(data):
    if isinstance(data, str):
        data = data.encode("utf-8")
    return _core.sha256_hex(data)


def append(log, name, spec):
    """Append a spec dict to an AuditLog and return the new record."""
    return log.append(name, _dump(spec))


class IntegrityVerifier:
    """Four-step commit engine over an anchor (MemoryAnchor by default)."""

    def __init__(self, anchor=None):
        self.anchor = anchor if anchor is not None else MemoryAnchor()
        self._impl = _core.IntegrityVerifier(self.anchor)

    def commit_stage(self, name, spec, observables=()):
        """observables: iterable of (label, measured, reference, tolerance)."""
        return self._impl.commit_stage(name, _dump(spec), list(observables))

    @property
    def head(self):
        return self._impl.head

    @property
    def head_anchored(self):
        return self._impl.head_anchored

    @property
    def log(self):
        return self._impl.log

    def replace_log(self, log):
        self._impl.replace_log(log)

    def verify_full_chain(self):
        return self._impl.verify_full_chain()

    def verify_against_anchor(self):
        return self._impl.verify_against_anchor()
