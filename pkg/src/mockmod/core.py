"""Shared domain types and conventions.

Everything downstream agrees on the conventions fixed here:

* points in the upper half-plane are ``Tau(u, v)`` with ``v > 0`` and
  ``q = exp(2*pi*i*(u + i*v))``,
* integer matrices acting by Mobius maps are ``Mobius(a, b, c, d)`` with
  determinant one,
* half-integer powers ``w**(k/2)`` always mean the principal square root
  composed with an integer power (``principal_halfpower``),
* a single verification outcome is a ``Report``; a report passes exactly
  when its residual is at most its tolerance.
"""
from __future__ import annotations

import cmath
import json
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Sampling window used by the deterministic samplers: real part bounded by
# 1/2, imaginary part inside [0.8, 2.0], and Mobius images are resampled
# whenever they fall below IM_FLOOR (series truncations are tuned for it).
RE_BOUND = 0.5
IM_LO = 0.8
IM_HI = 2.0
IM_FLOOR = 0.2

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Raised when an argument leaves the documented domain."""


@dataclass(frozen=True)
class Tau:
    """A point u + i*v in the upper half-plane."""

    u: float
    v: float

    def __post_init__(self) -> None:
        if not (self.v > 0.0):
            raise DomainError(f"imaginary part must be positive, got {self.v}")

    @property
    def z(self) -> complex:
        return complex(self.u, self.v)

    @property
    def q(self) -> complex:
        """exp(2*pi*i*tau)."""
        return cmath.exp(2j * math.pi * self.z)

    def scale(self, k: float) -> "Tau":
        """The point k*tau (k > 0)."""
        if k <= 0:
            raise DomainError("scale factor must be positive")
        return Tau(k * self.u, k * self.v)

    def shift(self, x: float) -> "Tau":
        return Tau(self.u + x, self.v)

    @staticmethod
    def from_complex(w: complex) -> "Tau":
        return Tau(w.real, w.imag)


@dataclass(frozen=True)
class Mobius:
    """Integer matrix (a b; c d) with ad - bc = 1 acting on the half-plane."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        validate_mobius(self.a, self.b, self.c, self.d)

    def j_factor(self, tau: Tau) -> complex:
        """The automorphy denominator c*tau + d."""
        return self.c * tau.z + self.d

    def apply(self, tau: Tau) -> Tau:
        w = (self.a * tau.z + self.b) / self.j_factor(tau)
        return Tau(w.real, w.imag)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def validate_mobius(a: int, b: int, c: int, d: int) -> None:
    for x in (a, b, c, d):
        if not isinstance(x, int):
            raise DomainError(f"matrix entries must be integers, got {x!r}")
    if a * d - b * c != 1:
        raise DomainError(f"determinant must be 1, got {a * d - b * c}")


IDENTITY = Mobius(1, 0, 0, 1)
GEN_T = Mobius(1, 1, 0, 1)
GEN_S = Mobius(0, -1, 1, 0)


def principal_halfpower(w: complex, twice_weight: int) -> complex:
    """w**(twice_weight/2) with the principal branch.

    Even ``twice_weight`` reduces to an exact integer power.  Odd
    ``twice_weight`` is the principal square root (argument in
    (-pi/2, pi/2]) raised to the odd integer.  ``w = 0`` is rejected so a
    silent branch collapse cannot hide a degenerate automorphy factor.
    """
    if w == 0:
        raise DomainError("halfpower of 0 is not defined here")
    w = complex(w)
    if twice_weight % 2 == 0:
        return w ** (twice_weight // 2)
    return cmath.sqrt(w) ** twice_weight


@dataclass
class Report:
    """Outcome of one identity check."""

    check_id: str
    params: dict
    residual: float
    tolerance: float
    verdict: str = field(init=False)
    runtime_ms: int = 0

    def __post_init__(self) -> None:
        ok = math.isfinite(self.residual) and self.residual <= self.tolerance
        self.verdict = "pass" if ok else "fail"

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def csum(terms: Iterable[complex]) -> complex:
    """Neumaier-compensated complex sum (the 'dd' accumulation mode)."""
    sr = 0.0
    si = 0.0
    cr = 0.0
    ci = 0.0
    for t in terms:
        x = t.real
        y = t.imag
        tr = sr + x
        if abs(sr) >= abs(x):
            cr += (sr - tr) + x
        else:
            cr += (x - tr) + sr
        sr = tr
        ti = si + y
        if abs(si) >= abs(y):
            ci += (si - ti) + y
        else:
            ci += (y - ti) + si
        si = ti
    return complex(sr + cr, si + ci)


def accumulate(terms: Iterable[complex], precision: str = "f64") -> complex:
    """Sum with the accumulation strategy selected by ``precision``."""
    if precision == "dd":
        return csum(terms)
    if precision != "f64":
        raise DomainError(f"unknown precision mode {precision!r}")
    total = 0j
    for t in terms:
        total += t
    return total


def relative_residual(lhs: complex, rhs: complex) -> float:
    """|lhs - rhs| / max(|lhs|, |rhs|, 1) — scale-aware but safe near zero."""
    scale = max(abs(lhs), abs(rhs), 1.0)
    return abs(lhs - rhs) / scale


def sample_tau(rng: random.Random) -> Tau:
    """Deterministic sample from the standard window."""
    return Tau(rng.uniform(-RE_BOUND, RE_BOUND), rng.uniform(IM_LO, IM_HI))


def sample_mobius(rng: random.Random, tau: Tau, entry_bound: int = 6,
                  im_floor: float = IM_FLOOR) -> Mobius:
    """Random word in the two generators, with bounded entries.

    Resamples until all entries are at most ``entry_bound`` in absolute
    value and the image of ``tau`` keeps imaginary part >= ``im_floor``.
    """
    while True:
        g = IDENTITY
        for _ in range(rng.randint(1, 6)):
            step = rng.randrange(3)
            if step == 0:
                g = g @ GEN_T
            elif step == 1:
                g = g @ GEN_T.inverse()
            else:
                g = g @ GEN_S
        if g == IDENTITY:
            continue
        if max(abs(x) for x in g.entries()) > entry_bound:
            continue
        if g.apply(tau).v < im_floor:
            continue
        return g


def sample_z(rng: random.Random, radius: float = 0.4) -> complex:
    """Random elliptic argument in a disc (kept small so lattice shifts stay
    inside the convergence comfort zone of the lattice sums)."""
    return complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))


def mobius_im_identity_residual(g: Mobius, tau: Tau) -> float:
    """Residual of Im(g tau) = v / |c tau + d|^2 (exactness guard)."""
    lhs = g.apply(tau).v
    rhs = tau.v / abs(g.j_factor(tau)) ** 2
    return abs(lhs - rhs) / max(abs(rhs), 1e-300)


def richardson(values: Sequence[complex]) -> tuple[complex, float]:
    """Limit of f(t) as t -> 0 from samples at t, t/2, t/4, ...

    Assumes an asymptotic expansion in integer powers of t and eliminates
    one power per level.  Returns (limit, error estimate).
    """
    n = len(values)
    if n < 2:
        raise DomainError("need at least two samples to extrapolate")
    table = [list(values)]
    for j in range(1, n):
        prev = table[-1]
        fac = 2.0 ** j
        table.append([(fac * prev[i + 1] - prev[i]) / (fac - 1.0)
                      for i in range(n - j)])
    best = table[-1][0]
    runner = table[-2][-1] if n >= 2 else best
    return best, abs(best - runner)
