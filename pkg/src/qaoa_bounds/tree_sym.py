"""QAOA on the depth-p tree neighborhood restricted to its branch-swap symmetric
sector.

The tree is the center edge joining two half-trees.  A half-tree of height h is
a root spin with two children, each a half-tree of height h-1; height 0 is a
single spin.  Swapping the two children (or the two halves) commutes with the
cost, the mixer and the initial state, so the evolution never leaves the
symmetric sector.

Orthonormal basis of the symmetric sector V_h of a height-h half-tree:
root spin s times a symmetrized pair of basis states of V_{h-1},
    |x, x>                         for x == y
    (|x, y> + |y, x>) / sqrt(2)    for x < y
so dim V_h = 2 * D (D + 1) / 2 with D = dim V_{h-1}.  Every such vector has a
definite root spin and a definite number of cut edges inside the half-tree,
so the cost is diagonal.

The full state is kept as a symmetric matrix Psi over V_p x V_p (the two
halves); the mixer acts as Psi -> M Psi M^T and the number of independent
entries is T (T + 1) / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import CapacityError
from .qaoa import Angles

MAX_TREE_DEPTH = 3


@dataclass(frozen=True)
class HalfTreeLevel:
    """Symmetric basis of one half-tree height."""

    height: int
    labels: tuple            # (spin,) at height 0, else (spin, x, y) with x <= y
    root_spin: np.ndarray    # int, per basis vector
    cut: np.ndarray          # int, cut edges inside the half-tree
    pairs: np.ndarray        # (npairs, 2) child indices, empty at height 0

    @property
    def dimension(self) -> int:
        return len(self.labels)


@lru_cache(maxsize=None)
def half_tree_level(h: int) -> HalfTreeLevel:
    if h == 0:
        return HalfTreeLevel(0, ((0,), (1,)), np.array([0, 1]), np.array([0, 0]),
                             np.zeros((0, 2), dtype=np.int64))
    child = half_tree_level(h - 1)
    d = child.dimension
    iu, ju = np.triu_indices(d)
    pairs = np.stack([iu, ju], axis=1)
    labels, spins, cuts = [], [], []
    for s in (0, 1):
        for x, y in pairs:
            labels.append((s, int(x), int(y)))
            spins.append(s)
            cuts.append(child.cut[x] + child.cut[y]
                        + (child.root_spin[x] != s) + (child.root_spin[y] != s))
    return HalfTreeLevel(h, tuple(labels), np.array(spins), np.array(cuts, dtype=np.int64), pairs)


@dataclass(frozen=True)
class SymBasis:
    """Symmetric sector of the depth-p tree: unordered pairs of half-tree
    basis states (one per side of the center edge)."""

    depth: int
    half: HalfTreeLevel

    @property
    def dimension(self) -> int:
        t = self.half.dimension
        return t * (t + 1) // 2

    def labels(self):
        """Iterate basis labels (a, b) with a <= b, a and b half-tree indices."""
        t = self.half.dimension
        for a in range(t):
            for b in range(a, t):
                yield (a, b)


def build_sym_basis(p: int) -> SymBasis:
    if p < 0:
        raise ValueError("depth must be non-negative")
    if p > MAX_TREE_DEPTH:
        raise CapacityError(f"depth {p} tree exceeds the symmetric-sector limit of {MAX_TREE_DEPTH}")
    return SymBasis(p, half_tree_level(p))


def _pair_lift(m: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Restriction of m (x) m to the symmetrized pair basis."""
    u, v = pairs[:, 0], pairs[:, 1]
    mux = m[np.ix_(u, u)]
    mvy = m[np.ix_(v, v)]
    muy = m[np.ix_(u, v)]
    mvx = m[np.ix_(v, u)]
    out = mux * mvy + muy * mvx
    diag_out = u == v
    diag_in = u == v
    # a diagonal state on either side carries one sqrt(2) less
    out[np.ix_(diag_out, ~diag_in)] /= math.sqrt(2)
    out[np.ix_(~diag_out, diag_in)] /= math.sqrt(2)
    out[np.ix_(diag_out, diag_in)] /= 2
    return out


def _mixer_matrix(h: int, beta: float) -> np.ndarray:
    c, s = math.cos(beta), math.sin(beta)
    rot = np.array([[c, -1j * s], [-1j * s, c]])
    m = rot
    for level in range(1, h + 1):
        m = np.kron(rot, _pair_lift(m, half_tree_level(level).pairs))
    return m


def _plus_vector(h: int) -> np.ndarray:
    v = np.full(2, 1 / math.sqrt(2), dtype=np.complex128)
    for level in range(1, h + 1):
        pairs = half_tree_level(level).pairs
        x, y = pairs[:, 0], pairs[:, 1]
        pair = v[x] * v[y] * np.where(x == y, 1.0, math.sqrt(2))
        v = np.concatenate([pair, pair]) / math.sqrt(2)
    return v


def tree_state(p: int, angles: Angles) -> np.ndarray:
    """Symmetric coefficient matrix Psi of the evolved state."""
    basis = build_sym_basis(p)
    half = basis.half
    plus = _plus_vector(p)
    psi = np.outer(plus, plus)
    cut = half.cut[:, None] + half.cut[None, :] \
        + (half.root_spin[:, None] != half.root_spin[None, :])
    for g, b in zip(angles.gammas, angles.betas):
        table = np.exp(-1j * g * np.arange(cut.max() + 1))
        psi *= table[cut]
        m = _mixer_matrix(p, b)
        psi = m @ psi @ m.T
    return psi


def tree_edge_expectation(p: int, angles: Angles) -> float:
    """Center-edge cut probability on the depth-p tree, computed in the
    symmetric sector.  ``angles`` may have at most p layers."""
    if angles.p > p:
        raise ValueError(f"{angles.p} layers need depth >= {angles.p}")
    psi = tree_state(p, angles)
    spin = build_sym_basis(p).half.root_spin
    differ = spin[:, None] != spin[None, :]
    prob = psi.real ** 2 + psi.imag ** 2
    return float(math.fsum(prob[differ]))


def polish_tree_angles(p: int, start: Angles, gtol: float = 1e-7) -> tuple[Angles, float]:
    """Local maximum of the tree value near ``start`` (BFGS, central
    finite-difference gradient).  Slow at p=3: each value takes seconds."""
    from scipy.optimize import minimize

    def neg(x):
        return -tree_edge_expectation(p, Angles.from_vector(x))

    def grad(x, h=1e-6):
        g = np.empty_like(x)
        for i in range(len(x)):
            e = np.zeros_like(x)
            e[i] = h
            g[i] = (neg(x + e) - neg(x - e)) / (2 * h)
        return g

    res = minimize(neg, start.vector(), jac=grad, method="BFGS", options={"gtol": gtol})
    return Angles.from_vector(res.x), float(-res.fun)


# Tree-optimal angles in degrees; p=3 is the rounded published point polished
# by ``polish_tree_angles``.
_TREE_OPT_DEG = {
    1: (math.degrees(math.atan(1 / math.sqrt(2))), 22.5),
    2: (27.95091703, 31.79366803, 51.44239614, 16.75218245),
    3: (155.82913655, 34.89028358, -45.74507791, 26.33129762, -53.68502514, 13.50291156),
}


def optimal_tree_angles(p: int) -> Angles:
    try:
        return Angles.from_degrees(_TREE_OPT_DEG[p])
    except KeyError:
        raise CapacityError(f"no tree-optimal angles stored for depth {p}") from None
