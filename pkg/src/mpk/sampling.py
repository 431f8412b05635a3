"""Samplers and Monte Carlo estimators for the boundary measures.

Atom configurations are drawn by stick breaking: a unit stick broken by
independent Beta(1, t) fractions per class, the class sticks themselves
scaled by one Dirichlet draw over the class masses.  Sticks are truncated
once the unbroken remainder falls below eps; the lost mass is reported so
callers can bound the truncation bias, which for the moment estimators
below is at most a constant times eps.

Everything is driven by RngStream, a thin wrapper over numpy's PCG64 that
makes (seed, stream) pairs reproduce byte-identical output.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .groups import FiniteGroupData
from .measures import EwensParams, _params
from .partitions import MultiPartition, total_size
from .symfunc import _monomial_to_powersum_table
from .thoma import ThomaPoint

DEFAULT_EPS = 1e-12


class RngStream:
    """A named substream of a master seed; equal pairs give equal draws."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        root = np.random.SeedSequence(entropy=self.seed,
                                      spawn_key=(self.stream,))
        self.gen = np.random.Generator(np.random.PCG64(root))

    def child(self, stream: int) -> "RngStream":
        return RngStream(self.seed, stream)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream={self.stream})"


def sample_dirichlet(weights, rng: RngStream) -> tuple[float, ...]:
    """One Dirichlet draw; the one-class case needs no randomness."""
    alphas = [float(w) for w in weights]
    if any(a <= 0 for a in alphas):
        raise ValueError("Dirichlet weights must be positive")
    if len(alphas) == 1:
        return (1.0,)
    return tuple(rng.gen.dirichlet(alphas))


def sample_pd(t, rng: RngStream,
              eps: float = DEFAULT_EPS) -> tuple[tuple[float, ...], float]:
    """Atoms of one Poisson-Dirichlet draw, sorted, plus the lost tail."""
    t = float(t)
    if t <= 0:
        raise ValueError("parameter must be positive")
    atoms = []
    remainder = 1.0
    while remainder > eps:
        frac = rng.gen.beta(1.0, t)
        atoms.append(remainder * frac)
        remainder *= 1.0 - frac
    atoms.sort(reverse=True)
    return tuple(atoms), remainder


@dataclass(frozen=True)
class MpdSample:
    """One boundary draw: scaled atoms per class, class masses, lost mass."""
    x: tuple[tuple[float, ...], ...]
    delta: tuple[float, ...]
    truncation_mass: float

    @property
    def k(self) -> int:
        return len(self.delta)


def sample_mpd(big_t, rng: RngStream, eps: float = DEFAULT_EPS) -> MpdSample:
    """One draw of the multi-class boundary measure with parameters big_t."""
    delta = sample_dirichlet(big_t, rng)
    xs = []
    lost = 0.0
    for l, d in enumerate(delta):
        unit, tail = sample_pd(big_t[l], rng, eps)
        xs.append(tuple(a * d for a in unit))
        lost += tail * d
    return MpdSample(tuple(xs), tuple(delta), lost)


def as_thoma(sample: MpdSample) -> ThomaPoint:
    return ThomaPoint(sample.x, ((),) * sample.k, sample.delta)


def _pd_power_sums(t: float, rng: RngStream, size: int, eps: float,
                   rs) -> dict[int, np.ndarray]:
    """Power sums of truncated unit-stick atoms for a whole sample block."""
    pows = {r: np.zeros(size) for r in rs}
    remainder = np.ones(size)
    active = np.arange(size)
    while active.size:
        frac = rng.gen.beta(1.0, t, size=active.size)
        atom = remainder[active] * frac
        for r in rs:
            pows[r][active] += atom ** r
        remainder[active] *= 1.0 - frac
        active = active[remainder[active] > eps]
    return pows


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    n_samples: int

    def within(self, target, sigmas: float) -> bool:
        return abs(self.mean - float(target)) <= sigmas * self.stderr


def mc_estimate_ewens(mp: MultiPartition, t, group: FiniteGroupData,
                      rng: RngStream, n_samples: int,
                      eps: float = DEFAULT_EPS,
                      chunk: int = 20000) -> McEstimate:
    """Monte Carlo estimate of the level-measure weight of mp.

    Averages the moment statistic (n! / prod of row factorials) times the
    product over classes of the monomial function at the sampled atoms.
    Truncation below eps biases the mean by O(n * eps), far below any
    useful stderr.
    """
    params = _params(t, group.k)
    big_t = [float(x) for x in params.scaled(group)]
    n = total_size(mp)
    const = float(math.factorial(n))
    for lam in mp:
        for part in lam:
            const /= math.factorial(part)
    expansions = []
    for lam in mp:
        if lam:
            table = _monomial_to_powersum_table(sum(lam))[lam]
            expansions.append({rho: float(c) for rho, c in table.items()})
        else:
            expansions.append(None)
    acc = 0.0
    acc_sq = 0.0
    remaining = n_samples
    while remaining > 0:
        block = min(chunk, remaining)
        if group.k == 1:
            deltas = np.ones((block, 1))
        else:
            deltas = rng.gen.dirichlet(big_t, size=block)
        weights = np.full(block, const)
        for l, expansion in enumerate(expansions):
            if expansion is None:
                continue
            rs = sorted({r for rho in expansion for r in rho})
            unit_pows = _pd_power_sums(big_t[l], rng, block, eps, rs)
            scaled = {r: unit_pows[r] * deltas[:, l] ** r for r in rs}
            value = np.zeros(block)
            for rho, c in expansion.items():
                term = np.full(block, c)
                for r in rho:
                    term *= scaled[r]
                value += term
            weights *= value
        acc += float(weights.sum())
        acc_sq += float((weights * weights).sum())
        remaining -= block
    mean = acc / n_samples
    var = max(acc_sq / n_samples - mean * mean, 0.0)
    return McEstimate(mean, math.sqrt(var / n_samples), n_samples)


def pd_correlation(points, t) -> float:
    """Correlation function of the one-class boundary measure."""
    t = float(t)
    xs = [float(x) for x in points]
    if any(x <= 0 for x in xs):
        raise ValueError("correlation points must be positive")
    s = sum(xs)
    if s >= 1.0:
        return 0.0
    out = t ** len(xs) * (1.0 - s) ** (t - 1.0)
    for x in xs:
        out /= x
    return out


def mpd_correlation(points, big_t, rtol: float = 1e-6) -> float:
    """Correlation function of the multi-class boundary measure.

    Disintegrates over the class masses and integrates the per-class
    factors against the Dirichlet weight; supported for up to three
    classes.  Emits a warning when the quadrature reports poor accuracy.
    """
    big_t = [float(x) for x in big_t]
    k = len(big_t)
    pts = tuple(tuple(float(x) for x in row) for row in points)
    if len(pts) != k:
        raise ValueError(f"{len(pts)} point groups for {k} classes")
    if any(x <= 0 for row in pts for x in row):
        raise ValueError("correlation points must be positive")
    if any(t <= 0 for t in big_t):
        raise ValueError("parameters must be positive")
    sums = [sum(row) for row in pts]
    if sum(sums) >= 1.0:
        return 0.0
    if k == 1:
        return pd_correlation(pts[0], big_t[0])
    norm = math.gamma(sum(big_t))
    for t in big_t:
        norm /= math.gamma(t)
    # the Dirichlet density on the free coordinates, without its own norm
    if k == 2:
        def integrand(d1):
            out = norm
            for l, d in enumerate((d1, 1.0 - d1)):
                s = sum(pts[l])
                if d <= s:
                    return 0.0
                out *= d ** (big_t[l] - 1.0 - len(pts[l]))
                scaled = tuple(x / d for x in pts[l])
                out *= pd_correlation(scaled, big_t[l])
            return out

        lo, hi = sums[0], 1.0 - sums[1]
        value, err = integrate.quad(integrand, lo, hi,
                                    epsrel=rtol, limit=200)
    elif k == 3:
        def integrand(d2, d1):
            d3 = 1.0 - d1 - d2
            out = norm
            for l, d in enumerate((d1, d2, d3)):
                s = sum(pts[l])
                if d <= s:
                    return 0.0
                out *= d ** (big_t[l] - 1.0 - len(pts[l]))
                scaled = tuple(x / d for x in pts[l])
                out *= pd_correlation(scaled, big_t[l])
            return out

        value, err = integrate.dblquad(
            integrand, sums[0], 1.0 - sums[1] - sums[2],
            lambda d1: sums[1], lambda d1: 1.0 - d1 - sums[2],
            epsrel=rtol)
    else:
        raise ValueError("at most three classes are supported")
    if value and err > 10 * rtol * abs(value) + 1e-12:
        warnings.warn(f"correlation quadrature error {err:.2e} "
                      f"for value {value:.6e}", RuntimeWarning)
    return value


def expected_atoms_above(t, cutoff: float, rng: RngStream, n_samples: int,
                         chunk: int = 50000) -> McEstimate:
    """Monte Carlo mean count of one-class atoms above a cutoff.

    Atoms never exceed the unbroken remainder, so breaking stops exactly at
    the cutoff and the count carries no truncation bias at all.
    """
    t = float(t)
    if not 0.0 < cutoff < 1.0:
        raise ValueError("cutoff must lie strictly between 0 and 1")
    acc = 0.0
    acc_sq = 0.0
    remaining = n_samples
    while remaining > 0:
        block = min(chunk, remaining)
        counts = np.zeros(block)
        remainder = np.ones(block)
        active = np.arange(block)
        while active.size:
            frac = rng.gen.beta(1.0, t, size=active.size)
            atom = remainder[active] * frac
            counts[active] += atom > cutoff
            remainder[active] *= 1.0 - frac
            active = active[remainder[active] > cutoff]
        acc += float(counts.sum())
        acc_sq += float((counts * counts).sum())
        remaining -= block
    mean = acc / n_samples
    var = max(acc_sq / n_samples - mean * mean, 0.0)
    return McEstimate(mean, math.sqrt(var / n_samples), n_samples)
