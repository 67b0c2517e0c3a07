"""State-vector QAOA for MAXCUT on small graphs.

The circuit is U_B(beta_p) U_C(gamma_p) ... U_B(beta_1) U_C(gamma_1) |+>^n with
C = sum over edges (1 - Z_u Z_v) / 2 and B = sum_j X_j.  The quantity of
interest is the cut probability of a single edge, which by locality only
depends on that edge's depth-p neighborhood.

Gradients use the adjoint method: one forward pass storing the intermediate
states, one backward pass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numba
import numpy as np

from .graph import CapacityError, Graph, RootedSubgraph

MAX_QUBITS = 24

GAMMA_PERIOD = 2 * math.pi
BETA_PERIOD = math.pi / 2


@dataclass(frozen=True)
class Angles:
    """QAOA angles in radians, one (gamma, beta) pair per layer."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas):
            raise ValueError("need as many gammas as betas")
        object.__setattr__(self, "gammas", tuple(float(x) for x in self.gammas))
        object.__setattr__(self, "betas", tuple(float(x) for x in self.betas))

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_vector(cls, x: Sequence[float]) -> "Angles":
        """From interleaved (gamma_1, beta_1, gamma_2, beta_2, ...)."""
        x = list(x)
        if len(x) % 2:
            raise ValueError("angle vector must have even length")
        return cls(tuple(x[0::2]), tuple(x[1::2]))

    @classmethod
    def from_degrees(cls, x: Sequence[float]) -> "Angles":
        return cls.from_vector([math.radians(v) for v in x])

    def vector(self) -> np.ndarray:
        out = np.empty(2 * self.p)
        out[0::2] = self.gammas
        out[1::2] = self.betas
        return out

    def degrees(self) -> np.ndarray:
        return np.degrees(self.vector())

    def reduced(self) -> "Angles":
        """Representative with gamma in [-pi, pi) and beta in [-pi/4, pi/4).

        Both reductions leave every edge expectation unchanged: the cost has
        integer spectrum and a quarter turn of the mixer is a global bit flip,
        which commutes with the cost and fixes the start state and observable.
        """
        def wrap(x, period):
            return (x + period / 2) % period - period / 2
        return Angles(tuple(wrap(g, GAMMA_PERIOD) for g in self.gammas),
                      tuple(wrap(b, BETA_PERIOD) for b in self.betas))


def parse_angles_deg(text: str) -> Angles:
    """Parse a comma separated interleaved list of degrees."""
    try:
        vals = [float(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise ValueError(f"bad angle list {text!r}") from None
    return Angles.from_degrees(vals)


# ---------------------------------------------------------------- kernels

@numba.njit(cache=True)
def _apply_mixer(psi, beta):
    # exp(-i beta X) on every qubit, in real arithmetic:
    # a' = c a - i s b, b' = c b - i s a
    c = math.cos(beta)
    sn = math.sin(beta)
    dim = psi.shape[0]
    half = 1
    while half < dim:
        for base in range(0, dim, 2 * half):
            for k in range(base, base + half):
                a = psi[k]
                b = psi[k + half]
                psi[k] = complex(c * a.real + sn * b.imag, c * a.imag - sn * b.real)
                psi[k + half] = complex(c * b.real + sn * a.imag, c * b.imag - sn * a.real)
        half *= 2


@numba.njit(cache=True)
def _sum_x_overlap_imag(lam, psi):
    # Im <lam| (sum_j X_j) |psi>
    acc = 0.0
    dim = psi.shape[0]
    half = 1
    while half < dim:
        for k in range(dim):
            a = lam[k]
            b = psi[k ^ half]
            acc += a.real * b.imag - a.imag * b.real
        half *= 2
    return acc


@numba.njit(cache=True)
def _apply_phase(psi, cost, table):
    # psi[k] *= table[cost[k]]; the cost takes small integer values
    for k in range(psi.shape[0]):
        psi[k] *= table[cost[k]]


@numba.njit(cache=True)
def _weighted_norm(psi, weight):
    acc = 0.0
    for k in range(psi.shape[0]):
        acc += weight[k] * (psi[k].real * psi[k].real + psi[k].imag * psi[k].imag)
    return acc


@numba.njit(cache=True)
def _weighted_overlap_imag(lam, weight, psi):
    # Im <lam| W |psi> for diagonal W
    acc = 0.0
    for k in range(psi.shape[0]):
        acc += weight[k] * (lam[k].real * psi[k].imag - lam[k].imag * psi[k].real)
    return acc


def _cost_diagonal(n: int, edges: Sequence[tuple[int, int]]) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    cost = np.zeros(1 << n, dtype=np.float64)
    for u, v in edges:
        cost += ((idx >> u) ^ (idx >> v)) & 1
    return cost


class QaoaCircuit:
    """Precomputed diagonals for one graph and one observed edge."""

    def __init__(self, g: Graph, observed: tuple[int, int] = (0, 1)):
        n = g.vertex_count
        if n > MAX_QUBITS:
            raise CapacityError(f"{n} qubits exceeds the state-vector limit of {MAX_QUBITS}")
        if not g.has_edge(*observed):
            raise ValueError(f"observed edge {observed} not in graph")
        self.n = n
        self.cost = _cost_diagonal(n, g.edges)
        self.cost_int = self.cost.astype(np.int64)
        self.obs = _cost_diagonal(n, [observed])
        self._levels = np.arange(g.edge_count + 1)

    def _table(self, gamma: float) -> np.ndarray:
        return np.exp(-1j * gamma * self._levels)

    @classmethod
    def for_subgraph(cls, s: RootedSubgraph) -> "QaoaCircuit":
        return cls(s.graph, (0, 1))

    def _plus(self) -> np.ndarray:
        dim = 1 << self.n
        return np.full(dim, 1 / math.sqrt(dim), dtype=np.complex128)

    def state(self, angles: Angles) -> np.ndarray:
        psi = self._plus()
        for g, b in zip(angles.gammas, angles.betas):
            _apply_phase(psi, self.cost_int, self._table(g))
            _apply_mixer(psi, b)
        return psi

    def expectation(self, angles: Angles) -> float:
        return float(_weighted_norm(self.state(angles), self.obs))

    def total_expectation(self, angles: Angles) -> float:
        """Expected number of cut edges over the whole graph."""
        return float(_weighted_norm(self.state(angles), self.cost))

    def value_and_grad(self, angles: Angles) -> tuple[float, np.ndarray]:
        """Expectation and its gradient in interleaved (gamma, beta) order."""
        p = angles.p
        psi = self._plus()
        tables = [self._table(g) for g in angles.gammas]
        phased, mixed = [], []  # states after each cost phase / each mixer
        for k in range(p):
            _apply_phase(psi, self.cost_int, tables[k])
            phased.append(psi.copy())
            _apply_mixer(psi, angles.betas[k])
            mixed.append(psi.copy())
        value = float(_weighted_norm(psi, self.obs))
        lam = self.obs * psi
        grad = np.empty(2 * p)
        for k in range(p - 1, -1, -1):
            # d/dbeta_k = 2 Re <lam| -iB |psi> = 2 Im <lam|B|psi>
            grad[2 * k + 1] = 2.0 * _sum_x_overlap_imag(lam, mixed[k])
            _apply_mixer(lam, -angles.betas[k])
            grad[2 * k] = 2.0 * _weighted_overlap_imag(lam, self.cost, phased[k])
            if k:
                _apply_phase(lam, self.cost_int, tables[k].conj())
        return value, grad


def _check_qubits(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise CapacityError(f"{n} qubits outside the supported range 1..{MAX_QUBITS}")


def prepare_plus(n: int) -> np.ndarray:
    """The uniform superposition on ``n`` qubits (bit j of the index is qubit j)."""
    _check_qubits(n)
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)


def apply_cost_phase(state: np.ndarray, g: Graph, gamma: float) -> np.ndarray:
    """Multiply each basis amplitude by exp(-i gamma C(z)); returns a new array."""
    if state.shape[0] != 1 << g.vertex_count:
        raise ValueError(f"state has {state.shape[0]} amplitudes, graph needs 2^{g.vertex_count}")
    return state * np.exp(-1j * gamma * _cost_diagonal(g.vertex_count, g.edges))


def apply_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """exp(-i beta X) on every qubit; returns a new array."""
    out = np.array(state, dtype=np.complex128, copy=True)
    _apply_mixer(out, beta)
    return out


def _circuit(s: RootedSubgraph | Graph, observed=(0, 1)) -> QaoaCircuit:
    g = s.graph if isinstance(s, RootedSubgraph) else s
    _check_qubits(g.vertex_count)
    return QaoaCircuit(g, tuple(observed))


def edge_expectation(s: RootedSubgraph | Graph, angles: Angles,
                     observed: tuple[int, int] = (0, 1)) -> float:
    """Cut probability of ``observed`` after the QAOA circuit on ``s``."""
    if isinstance(s, RootedSubgraph) and angles.p > s.depth:
        raise ValueError(f"{angles.p} layers need a depth-{angles.p} neighborhood, got {s.depth}")
    return _circuit(s, observed).expectation(angles)


def edge_expectation_gradient(s: RootedSubgraph | Graph, angles: Angles) -> np.ndarray:
    """Gradient in interleaved (gamma_1, beta_1, ...) order."""
    return _circuit(s).value_and_grad(angles)[1]


def embedded_edge_expectation_full(g: Graph, e: Sequence[int], angles: Angles) -> float:
    """Cut probability of edge ``e`` simulating the whole graph, no truncation.

    Oracle for the locality argument.
    """
    return _circuit(g, (min(e), max(e))).expectation(angles)


def full_graph_expectation(g: Graph, angles: Angles) -> float:
    """Expected cut size of the whole graph (sum over edges)."""
    return _circuit(g, g.edges[0]).total_expectation(angles)


# Canonical fixed angles: one of the degenerate maxima of the tree expectation.
# p=1 is exact; p=2 is polished to gradient norm < 1e-10; p=3 is the published
# integer-degree point (with the sign convention of this module).
_FIXED_DEG = {
    1: (math.degrees(math.atan(1 / math.sqrt(2))), 22.5),
    2: (27.95091703, 31.79366803, 51.44239614, 16.75218245),
    3: (156.0, 35.0, -46.0, 27.0, -54.0, 14.0),
}


def fixed_angles(p: int) -> Angles:
    """Tree-optimal angles used for fixed-angle bounds at depth ``p``."""
    if p == 0:
        return Angles((), ())
    try:
        return Angles.from_degrees(_FIXED_DEG[p])
    except KeyError:
        raise CapacityError(f"no fixed angles for depth {p}") from None
