"""Gradient ascent on QAOA angles for a single center-edge expectation."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import RootedSubgraph
from .qaoa import BETA_PERIOD, GAMMA_PERIOD, Angles, QaoaCircuit


class ConvergenceError(RuntimeError):
    """Gradient ascent did not settle; ``tail`` holds the last iterates."""

    def __init__(self, message: str, tail: Sequence[tuple[np.ndarray, float]] = ()):
        super().__init__(message)
        self.tail = list(tail)


@dataclass(frozen=True)
class AscentConfig:
    step: float = 0.075          # x <- x + step * grad
    value_tol: float = 1e-5      # first phase stops once f changes less than this
    grad_tol: float = 1e-4       # polish phase target
    max_steps: int = 100_000
    max_polish_steps: int = 20_000


@dataclass
class OptimizationResult:
    best_angles: Angles
    best_value: float
    starts_used: int
    converged: bool
    all_maxima: list[tuple[Angles, float]] = field(default_factory=list)


def _periods(p: int) -> np.ndarray:
    return np.tile([GAMMA_PERIOD, BETA_PERIOD], p)


def _wrap(x: np.ndarray, periods: np.ndarray) -> np.ndarray:
    return (x + periods / 2) % periods - periods / 2


def gradient_ascent(target: RootedSubgraph | QaoaCircuit, init: Angles,
                    config: AscentConfig = AscentConfig()) -> tuple[Angles, float]:
    """Fixed-step ascent followed by a polish until the gradient is small.

    A step that lowers f is halved and retried, so accepted iterates are
    monotone.  In the polish phase the step also grows again by 10% after each
    accepted move, which handles the slow, flat directions that a fixed step
    crawls along.
    """
    circ = target if isinstance(target, QaoaCircuit) else QaoaCircuit.for_subgraph(target)
    x = init.vector().astype(float)
    if not np.all(np.isfinite(x)):
        raise ValueError("initial angles must be finite")
    f, g = circ.value_and_grad(Angles.from_vector(x))
    tail: list[tuple[np.ndarray, float]] = []
    eta = config.step
    steps = 0
    polishing = False
    polish_steps = 0
    while True:
        if polishing and np.linalg.norm(g) < config.grad_tol:
            break
        if steps >= config.max_steps or polish_steps >= config.max_polish_steps:
            raise ConvergenceError(f"no convergence after {steps} steps", tail[-10:])
        x_new = x + eta * g
        f_new, g_new = circ.value_and_grad(Angles.from_vector(x_new))
        steps += 1
        if f_new < f:
            eta *= 0.5
            if eta < 1e-12:
                break  # numerically stationary
            continue
        delta = f_new - f
        x, f, g = x_new, f_new, g_new
        tail.append((x.copy(), f))
        del tail[:-10]
        if polishing:
            polish_steps += 1
            eta = min(eta * 1.1, 100 * config.step)
        elif delta < config.value_tol:
            polishing = True
    best = Angles.from_vector(_wrap(x, _periods(init.p)))
    return best, f


def _random_start(rng: np.random.Generator, p: int) -> Angles:
    lo = -_periods(p) / 2
    return Angles.from_vector(lo + rng.random(2 * p) * _periods(p))


def multistart(s: RootedSubgraph, n_starts: int = 25, seed: int = 0, p: int | None = None,
               config: AscentConfig = AscentConfig()) -> OptimizationResult:
    """Best of ``n_starts`` ascents from uniform random points of the reduced domain."""
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    p = s.depth if p is None else p
    rng = np.random.default_rng(seed)
    circ = QaoaCircuit.for_subgraph(s)
    results, errors = [], []
    for _ in range(n_starts):
        start = _random_start(rng, p)
        try:
            results.append(gradient_ascent(circ, start, config))
        except ConvergenceError as exc:
            errors.append(exc)
    if not results:
        raise ConvergenceError(f"all {n_starts} starts failed", errors[0].tail)
    best_angles, best_value = max(results, key=lambda r: r[1])
    return OptimizationResult(best_angles, best_value, n_starts, not errors,
                              cluster_maxima(results, p))


def angular_distance(a: Angles, b: Angles) -> float:
    """Largest per-component distance on the reduced torus, in radians."""
    per = _periods(a.p)
    d = np.abs(_wrap(a.vector() - b.vector(), per))
    return float(d.max())


def cluster_maxima(points: Sequence[tuple[Angles, float]], p: int,
                   radius_deg: float = 0.5, value_window: float = 1e-4) -> list[tuple[Angles, float]]:
    """Group nearby optima and keep those within ``value_window`` of the best."""
    if not points:
        return []
    best = max(v for _, v in points)
    radius = math.radians(radius_deg)
    clusters: list[tuple[Angles, float]] = []
    for a, v in sorted(points, key=lambda t: -t[1]):
        if v < best - value_window:
            continue
        if all(angular_distance(a, c) > radius for c, _ in clusters):
            clusters.append((a, v))
    clusters.sort(key=lambda t: tuple(np.round(t[0].degrees() % 360, 6)))
    return clusters


def find_all_maxima(s: RootedSubgraph, mesh_density: int, p: int | None = None,
                    config: AscentConfig = AscentConfig()) -> list[tuple[Angles, float]]:
    """Ascend from every point of a regular mesh over the reduced domain and
    return the distinct global maxima."""
    if mesh_density < 4:
        raise ValueError("mesh_density must be >= 4")
    p = s.depth if p is None else p
    circ = QaoaCircuit.for_subgraph(s)
    per = _periods(p)
    axes = [(-per[k] / 2 + (np.arange(mesh_density) + 0.5) * per[k] / mesh_density)
            for k in range(2 * p)]
    found = []
    for point in itertools.product(*axes):
        try:
            found.append(gradient_ascent(circ, Angles.from_vector(point), config))
        except ConvergenceError:
            continue
    return cluster_maxima(found, p)
