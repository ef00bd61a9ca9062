"""State-vector core for quantized 2x2 games.

Protocol: an entangling gate J(gamma) acts on |0...0>, each player applies a
local unitary to their own qubit, J(gamma)^dag disentangles, and the register
is measured in the computational basis. Payoffs are read from a classical
2^n-row table. Player 0 owns the most significant bit, so for two players the
outcome index of bitstring "01" is 1.
"""

from __future__ import annotations

import math

import numpy as np

# Protocol limits and tolerances. Inputs are checked loosely (callers may have
# built matrices from trig of rounded angles); internally produced states are
# held to a tighter bound.
MAX_PLAYERS = 12
UNITARY_TOL = 1e-9
STATE_NORM_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
# Classical "flip" move: i*sigma_x. The i keeps it inside SU(2) so the
# classical game embeds exactly at every entanglement level.
FLIP = np.array([[0.0, 1.0j], [1.0j, 0.0]], dtype=complex)


def validate_gamma(gamma: float) -> float:
    """Check 0 <= gamma <= pi/2 and return it as a float."""
    g = float(gamma)
    if not math.isfinite(g) or g < 0.0 or g > math.pi / 2 + 1e-12:
        raise ValueError(f"entanglement parameter must lie in [0, pi/2], got {gamma}")
    return min(g, math.pi / 2)


def _validate_players(n: int) -> int:
    n = int(n)
    if n < 2 or n > MAX_PLAYERS:
        raise ValueError(f"player count must be in [2, {MAX_PLAYERS}], got {n}")
    return n


def is_unitary(op: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        return False
    return bool(np.allclose(op.conj().T @ op, np.eye(2), atol=tol, rtol=0.0))


def _check_moves(moves) -> list[np.ndarray]:
    checked = []
    for i, op in enumerate(moves):
        arr = np.asarray(op, dtype=complex)
        if not is_unitary(arr):
            raise ValueError(f"move for player {i} is not unitary within {UNITARY_TOL}")
        checked.append(arr)
    return checked


class Entangler:
    """J(gamma) = cos(gamma/2) I + i sin(gamma/2) X^(x n) on n qubits.

    Applied as the two structured terms above; the dense matrix is never
    formed during simulation. X^(x n) flips every bit, which on a state
    vector is index reversal.
    """

    def __init__(self, gamma: float, n_players: int):
        self.gamma = validate_gamma(gamma)
        self.n_players = _validate_players(n_players)
        self._cos = math.cos(self.gamma / 2.0)
        self._sin = math.sin(self.gamma / 2.0)

    @property
    def dim(self) -> int:
        return 2**self.n_players

    def apply(self, state: np.ndarray) -> np.ndarray:
        return self._cos * state + 1j * self._sin * state[..., ::-1]

    def apply_adjoint(self, state: np.ndarray) -> np.ndarray:
        return self._cos * state - 1j * self._sin * state[..., ::-1]

    def as_matrix(self) -> np.ndarray:
        """Dense form, for small-n checks only (2^n x 2^n)."""
        eye = np.eye(self.dim, dtype=complex)
        return self._cos * eye + 1j * self._sin * eye[:, ::-1]

    def initial_state(self) -> np.ndarray:
        """J(gamma)|0...0>: amplitude cos(gamma/2) on 0...0, i sin(gamma/2) on 1...1."""
        psi = np.zeros(self.dim, dtype=complex)
        psi[0] = self._cos
        psi[-1] = 1j * self._sin
        return psi


def build_entangler(gamma: float, n_players: int) -> Entangler:
    return Entangler(gamma, n_players)


def apply_local(state: np.ndarray, op: np.ndarray, player: int, n_players: int) -> np.ndarray:
    """Apply a 2x2 operator to one player's qubit of a 2^n state vector."""
    t = state.reshape(2**player, 2, -1)
    return np.einsum("ij,ajb->aib", op, t).reshape(-1)


def final_state(gamma: float, moves) -> np.ndarray:
    """Post-protocol state J^dag (M_0 x ... x M_{n-1}) J |0...0>."""
    ops = _check_moves(moves)
    n = _validate_players(len(ops))
    j = Entangler(gamma, n)
    psi = j.initial_state()
    for player, op in enumerate(ops):
        psi = apply_local(psi, op, player, n)
    psi = j.apply_adjoint(psi)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > 1e-9:
        raise ArithmeticError(f"final state norm drifted to {norm}")
    return psi


def batch_final_states(
    gamma: float,
    moves,
    responder: int,
    candidates: np.ndarray,
    check: bool = True,
) -> np.ndarray:
    """Final states for one responder sweeping a (B,2,2) stack of moves.

    The other players' moves are applied once; the responder's slot in
    `moves` is ignored. Returns a (B, 2^n) array.
    """
    n = _validate_players(len(moves))
    if not 0 <= responder < n:
        raise ValueError(f"responder index {responder} out of range for {n} players")
    cand = np.asarray(candidates, dtype=complex)
    if cand.ndim != 3 or cand.shape[1:] != (2, 2):
        raise ValueError("candidates must have shape (B, 2, 2)")
    fixed = [np.asarray(op, dtype=complex) for op in moves]
    if check:
        for i, op in enumerate(fixed):
            if i != responder and not is_unitary(op):
                raise ValueError(f"move for player {i} is not unitary within {UNITARY_TOL}")
    j = Entangler(gamma, n)
    psi = j.initial_state()
    for player, op in enumerate(fixed):
        if player != responder:
            psi = apply_local(psi, op, player, n)
    t = psi.reshape(2**responder, 2, -1)
    out = np.einsum("nij,ajb->naib", cand, t).reshape(len(cand), -1)
    return j.apply_adjoint(out)


def outcome_probabilities(state: np.ndarray) -> np.ndarray:
    """Squared moduli of a normalized state; renormalized, sums to 1 within 1e-10."""
    amp = np.asarray(state, dtype=complex)
    probs = amp.real**2 + amp.imag**2
    total = probs.sum(axis=-1, keepdims=True)
    if np.any(np.abs(total - 1.0) > 1e-9):
        raise ArithmeticError("state is not normalized")
    return probs / total


def expected_payoffs(payoff_table: np.ndarray, probabilities: np.ndarray) -> np.ndarray:
    """Expected payoff per player: probabilities (.., 2^n) x table (2^n, n)."""
    table = np.asarray(payoff_table, dtype=float)
    probs = np.asarray(probabilities, dtype=float)
    if table.ndim != 2 or probs.shape[-1] != table.shape[0]:
        raise ValueError(
            f"probability vector of length {probs.shape[-1]} does not match "
            f"payoff table with {table.shape[0]} outcomes"
        )
    return probs @ table


def play(gamma: float, moves, payoff_table: np.ndarray) -> np.ndarray:
    """One full protocol round: entangle, move, disentangle, measure, pay."""
    return expected_payoffs(payoff_table, outcome_probabilities(final_state(gamma, moves)))
