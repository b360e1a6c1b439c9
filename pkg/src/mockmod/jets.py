"""Bivariate Taylor jets in (z, conj z) around z = 0.

A jet stores coefficients c[j, k] of z^j conj(z)^k for j + k <= order.
Holomorphic blocks occupy the k = 0 column; real-analytic blocks such as
the Gaussian error factor in the nonholomorphic period sums fill the full
triangle.  All block constructors pair growing lattice exponentials with
their decaying partners inside a single exponent, so no intermediate can
overflow even when individual classical factors would.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, TWO_PI
from .special import gauss_E, upper_gamma_scaled, _gauss_E_poly

_SQRT_PI = math.sqrt(math.pi)
_TAIL = 45.0  # suppression exponent for adaptive lattice truncation
_PEAK_GUARD = 600.0


@dataclass(frozen=True)
class Jet:
    """Truncated expansion sum c[j,k] z^j conj(z)^k, j + k <= order."""

    order: int
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        n = self.order + 1
        if self.coeffs.shape != (n, n):
            raise DomainError("jet coefficient array has wrong shape")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(order: int) -> "Jet":
        return Jet(order, np.zeros((order + 1, order + 1), dtype=complex))

    @staticmethod
    def constant(value: complex, order: int) -> "Jet":
        j = Jet.zero(order)
        j.coeffs[0, 0] = value
        return j

    @staticmethod
    def variable(order: int) -> "Jet":
        j = Jet.zero(order)
        if order >= 1:
            j.coeffs[1, 0] = 1.0
        return j

    @staticmethod
    def from_holomorphic(column, order: int) -> "Jet":
        """Jet of a holomorphic function given Taylor coefficients."""
        j = Jet.zero(order)
        for p, c in enumerate(column[: order + 1]):
            j.coeffs[p, 0] = c
        return j

    @staticmethod
    def polynomial(entries: dict, order: int) -> "Jet":
        """entries: {(j, k): coefficient}."""
        jet = Jet.zero(order)
        for (j, k), c in entries.items():
            if j + k <= order:
                jet.coeffs[j, k] = c
        return jet

    # -- accessors ---------------------------------------------------------

    def value(self) -> complex:
        return complex(self.coeffs[0, 0])

    def coeff(self, j: int, k: int = 0) -> complex:
        if j + k > self.order:
            raise DomainError("jet coefficient beyond truncation order")
        return complex(self.coeffs[j, k])

    def z_deriv0(self, ell: int) -> complex:
        """[d^ell/dz^ell f]_{z=0} = ell! * c[ell, 0]."""
        return math.factorial(ell) * self.coeff(ell, 0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Jet") -> "Jet":
        n = min(self.order, other.order)
        out = Jet.zero(n)
        out.coeffs[:, :] = self.coeffs[: n + 1, : n + 1] + other.coeffs[: n + 1, : n + 1]
        return out

    def __neg__(self) -> "Jet":
        return Jet(self.order, -self.coeffs)

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def scale(self, factor: complex) -> "Jet":
        return Jet(self.order, self.coeffs * factor)

    def __mul__(self, other: "Jet") -> "Jet":
        n = min(self.order, other.order)
        out = Jet.zero(n)
        a = self.coeffs
        b = other.coeffs
        for ja in range(n + 1):
            for ka in range(n + 1 - ja):
                ca = a[ja, ka]
                if ca == 0:
                    continue
                jmax = n - ja - ka
                for jb in range(jmax + 1):
                    for kb in range(jmax + 1 - jb):
                        cb = b[jb, kb]
                        if cb != 0:
                            out.coeffs[ja + jb, ka + kb] += ca * cb
        return out

    def exp(self) -> "Jet":
        """exp of the jet; exact through the truncation order."""
        c0 = self.coeffs[0, 0]
        rest = Jet(self.order, self.coeffs.copy())
        rest.coeffs[0, 0] = 0.0
        out = Jet.constant(1.0, self.order)
        power = Jet.constant(1.0, self.order)
        for p in range(1, self.order + 1):
            power = power * rest
            out = out + power.scale(1.0 / math.factorial(p))
        return out.scale(cmath.exp(c0))

    def dz(self) -> "Jet":
        """Holomorphic Wirtinger derivative; drops one order."""
        if self.order == 0:
            raise DomainError("cannot differentiate an order-0 jet")
        n = self.order - 1
        out = Jet.zero(n)
        for j in range(n + 1):
            for k in range(n + 1 - j):
                out.coeffs[j, k] = (j + 1) * self.coeffs[j + 1, k]
        return out

    def dzbar(self) -> "Jet":
        """Antiholomorphic Wirtinger derivative; drops one order."""
        if self.order == 0:
            raise DomainError("cannot differentiate an order-0 jet")
        n = self.order - 1
        out = Jet.zero(n)
        for j in range(n + 1):
            for k in range(n + 1 - j):
                out.coeffs[j, k] = (k + 1) * self.coeffs[j, k + 1]
        return out

    def scale_variable(self, s: complex) -> "Jet":
        """Substitute z -> s z (and conj z -> conj(s) conj z)."""
        out = Jet.zero(self.order)
        sb = complex(s).conjugate()
        for j in range(self.order + 1):
            for k in range(self.order + 1 - j):
                out.coeffs[j, k] = self.coeffs[j, k] * (s ** j) * (sb ** k)
        return out

    def even_part(self) -> "Jet":
        """(f(z) + f(-z)) / 2 as a jet."""
        return (self + self.scale_variable(-1.0)).scale(0.5)

    def odd_part(self) -> "Jet":
        return (self - self.scale_variable(-1.0)).scale(0.5)


def exp_quadratic_jet(c: complex, order: int) -> Jet:
    """Jet of exp(c z^2)."""
    return Jet.polynomial({(2, 0): c}, order).exp()


def exp_linear_jet(c: complex, order: int) -> Jet:
    """Jet of exp(c z)."""
    return Jet.polynomial({(1, 0): c}, order).exp()


# ---------------------------------------------------------------------------
# lattice blocks
# ---------------------------------------------------------------------------


def _lattice_range(y: float, v: float) -> int:
    if v <= 0:
        raise DomainError("lattice parameter must have positive imaginary part")
    peak = math.pi * y * y / v
    if peak > _PEAK_GUARD:
        raise DomainError("lattice argument too far from the real axis")
    return int(math.ceil(abs(y) / v + math.sqrt(_TAIL / (math.pi * v)))) + 2


def theta_arg_jet(base: complex, lattice: complex, order: int) -> Jet:
    """Jet of z -> theta(base + z; lattice), the odd Jacobi theta."""
    vp = lattice.imag
    n_max = _lattice_range(base.imag, vp)
    out = Jet.zero(order)
    facs = [math.factorial(p) for p in range(order + 1)]
    for n in range(-n_max, n_max + 1):
        nu = n + 0.5
        w = cmath.exp(1j * math.pi * (nu * nu * lattice + 2.0 * nu * (base + 0.5)))
        d = TWO_PI * 1j * nu
        g = w
        for p in range(order + 1):
            out.coeffs[p, 0] += g / facs[p]
            g *= d
    return out


def vartheta_nu_jet(nu: int, tau_z: complex, order: int) -> Jet:
    """Jet of z -> -sum over m in (nu+1)/2 + Z of q^(m^2) e^(2 pi i m z),
    for nu in {-1, 0}."""
    if nu not in (-1, 0):
        raise DomainError("characteristic must be -1 or 0")
    v = tau_z.imag
    if v <= 0:
        raise DomainError("lattice parameter must have positive imaginary part")
    m_max = int(math.ceil(math.sqrt(_TAIL / (TWO_PI * v)))) + 2
    out = Jet.zero(order)
    facs = [math.factorial(p) for p in range(order + 1)]
    half = (nu + 1) / 2.0
    m = -m_max
    while m + half <= m_max:
        mm = m + half
        w = -cmath.exp(TWO_PI * 1j * mm * mm * tau_z)
        d = TWO_PI * 1j * mm
        g = w
        for p in range(order + 1):
            out.coeffs[p, 0] += g / facs[p]
            g *= d
        m += 1
    return out


def zwegers_S_jet(base: complex, lattice: complex, order: int) -> Jet:
    """Jet of z -> S(base + z; lattice) where

    S(w; tau') = sum over n in 1/2 + Z of
        (sgn(n) - E((n + Im w / v') sqrt(2 v'))) (-1)^(n - 1/2)
        e^(-pi i n^2 tau') e^(-2 pi i n w).

    Growing lattice exponentials are paired against the Gaussian tail of
    the error-integral factor inside one exponent, so the construction is
    overflow-safe whenever the result itself is representable.
    """
    vp = lattice.imag
    if vp <= 0:
        raise DomainError("lattice parameter must have positive imaginary part")
    y0 = base.imag
    peak = math.pi * y0 * y0 / vp
    if peak > _PEAK_GUARD:
        raise DomainError("argument too far from the real axis")
    n_max = int(math.ceil(abs(y0) / vp + math.sqrt(_TAIL / (math.pi * vp)))) + 2
    beta = -1j / math.sqrt(2.0 * vp)   # d(arg)/dz
    gamma = 1j / math.sqrt(2.0 * vp)   # d(arg)/d(conj z)
    out = Jet.zero(order)
    facs = [math.factorial(p) for p in range(order + 2)]
    n = -n_max
    while n + 0.5 <= n_max:
        nn = n + 0.5
        sgn = 1.0 if nn > 0 else -1.0
        parity = 1.0 if n % 2 == 0 else -1.0
        a0 = (nn + y0 / vp) * math.sqrt(2.0 * vp)
        hol_exp = -1j * math.pi * nn * nn * lattice - TWO_PI * 1j * nn * base
        # order-0 coefficient of sgn - E(arg)
        flat = Jet.zero(order)
        if a0 * sgn > 0:
            scaled = upper_gamma_scaled(0.5, math.pi * a0 * a0) / _SQRT_PI
            flat.coeffs[0, 0] = sgn * scaled * cmath.exp(hol_exp - math.pi * a0 * a0)
        else:
            flat.coeffs[0, 0] = (sgn - gauss_E(a0)) * cmath.exp(hol_exp)
        # derivative coefficients of -E(arg), paired with exp(-pi a0^2)
        if order >= 1:
            w_pair = cmath.exp(hol_exp - math.pi * a0 * a0)
            for m in range(1, order + 1):
                poly = _gauss_E_poly(m)
                pm = 0.0
                for c in reversed(poly):
                    pm = pm * a0 + c
                for j in range(m + 1):
                    k = m - j
                    flat.coeffs[j, k] += (-pm * (beta ** j) * (gamma ** k)
                                          / (facs[j] * facs[k])) * w_pair
        # multiply by the remaining holomorphic exponential e^(-2 pi i n z)
        col = [(-TWO_PI * 1j * nn) ** p / facs[p] for p in range(order + 1)]
        out = out + (flat * Jet.from_holomorphic(col, order)).scale(parity)
        n += 1
    return out


def zwegers_S_value(w: complex, lattice: complex) -> complex:
    """Point value of the nonholomorphic period sum S(w; lattice)."""
    return zwegers_S_jet(w, lattice, 0).value()


def gaussian_completed_coeffs(chis, a: complex) -> list:
    """Coefficients of f(z) exp(a z^2) given the coefficients of f:
    out[n] = sum_j a^j / j! * chis[n - 2j]."""
    out = []
    for n in range(len(chis)):
        acc = 0.0 + 0.0j
        j = 0
        while n - 2 * j >= 0:
            acc += (a ** j) / math.factorial(j) * chis[n - 2 * j]
            j += 1
        out.append(acc)
    return out


# -- free-function aliases over the Jet methods ------------------------------


def jet_product(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_exp(a: Jet) -> Jet:
    return a.exp()


def jet_dz(a: Jet) -> Jet:
    return a.dz()


def jet_dzbar(a: Jet) -> Jet:
    return a.dzbar()


def y_substitute(y_coeffs, order: int) -> Jet:
    """Jet of sum_k y_coeffs[k] * y^k under y = (z - conj z) / (2i).

    y^k expands binomially into z^j conj(z)^(k-j); rows beyond the jet
    order are dropped.
    """
    out = Jet.zero(order)
    for k, c in enumerate(y_coeffs):
        if k > order:
            break
        pref = c / (2j) ** k
        for j in range(k + 1):
            out.coeffs[j, k - j] += pref * math.comb(k, j) * (-1.0) ** (k - j)
    return out


def theta_power_taylor(power: int, lattice: complex, top: int) -> list:
    """Taylor coefficients at z = 0 of the odd theta raised to ``power``.

    The base theta vanishes at 0, so the list starts with ``power`` zeros;
    entries above ``top`` are not computed.
    """
    if power < 1:
        raise DomainError("power must be a positive integer")
    base = theta_arg_jet(0.0, lattice, top)
    acc = base
    for _ in range(power - 1):
        acc = acc * base
    return [acc.coeff(n, 0) for n in range(top + 1)]


def taylor_completion_psi(chis, m: float, tau, n: int) -> complex:
    """Weight-raising recombination with the 1/v Gaussian:

        psi_n = sum_j (pi m / v)^j / j! * chis[n - 2j]

    for a weight-k index-m form with z-coefficients ``chis``; transforms
    with weight k + n.  Negative indices count as zero.
    """
    if n < 0 or n >= len(chis):
        raise DomainError("coefficient index out of range")
    return gaussian_completed_coeffs(chis[: n + 1], math.pi * m / tau.v)[n]


def taylor_completion_rho(chis, m: float, tau, n: int) -> complex:
    """Holomorphic counterpart of ``taylor_completion_psi`` built on the
    quasimodular weight-two series instead of 1/v:

        rho_n = sum_j (pi^2 m E2(tau) / 3)^j / j! * chis[n - 2j].
    """
    from .special import e2_value

    if n < 0 or n >= len(chis):
        raise DomainError("coefficient index out of range")
    a = math.pi ** 2 * m * e2_value(tau) / 3.0
    return gaussian_completed_coeffs(chis[: n + 1], a)[n]


def theta_power_completed_residual(power: int, n: int, kind: str,
                                   gamma, tau) -> float:
    """Transform residual of a recombined z-coefficient of the theta power.

    The ``power``-th theta power is a Jacobi form of weight and index
    power/2; its n-th z-coefficient recombined through ``psi`` (the 1/v
    route) or ``rho`` (the quasimodular route) transforms with weight
    power/2 + n.  The residual is normalized against the term scale
    sum_j |a|^j/j! |chi_(n-2j)| so rows that vanish identically (odd n
    by parity, degenerate zero rows) are tested sharply instead of
    producing 0/0 noise.
    """
    if power < 2 or power % 2:
        raise DomainError("theta power must be even and >= 2")
    if n < 0:
        raise DomainError("coefficient index must be nonnegative")
    m = power // 2
    im = gamma.apply(tau)
    chis = theta_power_taylor(power, tau.z, n + 1)
    chis_im = theta_power_taylor(power, im.z, n)
    if kind == "psi":
        a_here = math.pi * m / tau.v
        lhs = taylor_completion_psi(chis_im, m, im, n)
        base = taylor_completion_psi(chis, m, tau, n)
    elif kind == "rho":
        from .special import e2_value

        a_here = math.pi ** 2 * m * e2_value(tau) / 3.0
        lhs = taylor_completion_rho(chis_im, m, im, n)
        base = taylor_completion_rho(chis, m, tau, n)
    else:
        raise DomainError(f"unknown kind {kind!r}")
    jf = gamma.j_factor(tau)
    rhs = jf ** (m + n) * base
    # roundoff in an identically-zero row comes from the adjacent even
    # coefficients during the jet product, so the yardstick is the
    # parity-blind envelope of each recombined term
    env = [max(abs(chis[max(i - 1, 0)]), abs(chis[i]), abs(chis[i + 1]))
           for i in range(n + 1)]
    scale = sum(abs(a_here) ** j / math.factorial(j) * env[n - 2 * j]
                for j in range(n // 2 + 1))
    return abs(lhs - rhs) / max(abs(jf) ** (m + n) * scale, 1e-300)


def rho_degeneracy_residual(tau) -> float:
    """The eighth theta power vanishes to z-order 8, so its rho row at
    n = 10 collapses: chi_10 = -(4 pi^2/3) E2 chi_8 identically.  Returns
    the relative gap of that collapse."""
    from .special import e2_value

    chis = theta_power_taylor(8, tau.z, 10)
    want = -(4.0 * math.pi ** 2 / 3.0) * e2_value(tau) * chis[8]
    return abs(chis[10] - want) / max(abs(want), 1e-300)
