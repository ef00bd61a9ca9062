"""Shared helpers: an independent dense-matrix reference implementation.

The reference builds every operator as an explicit 2^n x 2^n matrix with
np.kron, so it shares no code path with the structured engine it checks.
"""

from __future__ import annotations

import sys

import numpy as np
import pytest

I2 = np.eye(2, dtype=complex)
SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def kron_all(mats) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def dense_entangler(gamma: float, n: int) -> np.ndarray:
    return (np.cos(gamma / 2.0) * kron_all([I2] * n)
            + 1j * np.sin(gamma / 2.0) * kron_all([SX] * n))


def dense_final_state(gamma: float, moves) -> np.ndarray:
    n = len(moves)
    j = dense_entangler(gamma, n)
    psi0 = np.zeros(2 ** n, dtype=complex)
    psi0[0] = 1.0
    return j.conj().T @ kron_all(moves) @ (j @ psi0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260815)


def pytest_terminal_summary(terminalreporter):
    # echo acceptance verdict lines uncaptured, one per criterion
    for name, module in sys.modules.items():
        if name.rsplit(".", 1)[-1] != "test_acceptance":
            continue
        lines = getattr(module, "VERDICTS", ())
        if lines:
            terminalreporter.section("acceptance verdicts")
            for line in lines:
                terminalreporter.line(line)
        break
