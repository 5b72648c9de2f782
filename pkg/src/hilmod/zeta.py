"""Dedekind zeta, completed zeta, scattering quotient, and divisor sums.

Continuation strategy: the Dedekind zeta of a quadratic field factors as
zeta(s) * L(s, chi_D); both factors are expressed through the Hurwitz zeta,
which an Euler-Maclaurin tail continues to the whole plane (s != 1).  This
gives every value the package needs without approximate functional
equations, and the Hecke functional equation becomes a genuine test.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import PoleAtOne, PoleAtZeroOrOne, ScatteringPole, ZeroFrequency
from .fields import (
    FieldData,
    FieldElement,
    ideal_count_coeffs,
    ideal_divisor_norms,
    kronecker,
)
from .specfun import gamma

# Bernoulli numbers B_2, B_4, ... for the Euler-Maclaurin tail.
_BERNOULLI = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138,
    -236364091.0 / 2730,
)


def hurwitz_zeta(s: complex, a: float) -> complex:
    """Hurwitz zeta(s, a) for complex s != 1, real a > 0 (Euler-Maclaurin)."""
    s = complex(s)
    if s == 1.0:
        raise PoleAtOne("hurwitz zeta pole at s=1")
    N = max(18, int(1.3 * abs(s.imag)) + 8)
    ks = np.arange(N) + a
    acc = complex(np.sum(ks ** (-s)))
    base = N + a
    acc += base ** (1.0 - s) / (s - 1.0)
    acc += 0.5 * base ** (-s)
    # Euler-Maclaurin correction terms
    term_pow = base ** (-s - 1.0)
    poch = s
    fact = 1.0
    for j, b2j in enumerate(_BERNOULLI, start=1):
        fact *= (2 * j - 1) * (2 * j)
        acc += b2j / fact * poch * term_pow
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        term_pow /= base * base
    return acc


def riemann_zeta(s: complex) -> complex:
    return hurwitz_zeta(s, 1.0)


def dirichlet_l(s: complex, disc_signed: int) -> complex:
    """L(s, chi_D) for the quadratic character of fundamental discriminant D."""
    q = abs(disc_signed)
    if q == 1:
        return riemann_zeta(s)
    s = complex(s)
    acc = 0.0 + 0.0j
    for a in range(1, q + 1):
        chi = kronecker(disc_signed, a)
        if chi:
            acc += chi * hurwitz_zeta(s, a / q)
    return q ** (-s) * acc


@dataclass
class ZetaContext:
    """Cached coefficient data for one field's zeta functions."""

    field: FieldData
    coeff_cap: int = 0
    coeffs: list[int] = dc_field(default_factory=list)

    def ideal_coeffs(self, N: int) -> list[int]:
        if N > self.coeff_cap:
            self.coeffs = ideal_count_coeffs(self.field, N)
            self.coeff_cap = N
        return self.coeffs[:N]


def make_context(field: FieldData) -> ZetaContext:
    return ZetaContext(field=field)


def dedekind_zeta(ctx: ZetaContext, s: complex) -> complex:
    """zeta_K(s) everywhere except the pole at s = 1 (via zeta * L)."""
    s = complex(s)
    if s == 1.0:
        raise PoleAtOne("dedekind zeta pole at s=1")
    z = riemann_zeta(s)
    if ctx.field.d == 0:
        return z
    return z * dirichlet_l(s, ctx.field.disc_signed)


def dedekind_zeta_series(ctx: ZetaContext, s: complex, N: int = 200_000,
                         corrected: bool = True) -> complex:
    """Ideal Dirichlet series sum a_n n^{-s} for Re(s) > 1.

    With corrected=True the tail beyond N is replaced by partial summation
    against the smoothed ideal count A(x) ~ rho x + c0 (rho the residue of
    zeta_K at 1, c0 = zeta_K(0)):

        tail = rho N^{1-s}/(s-1) - (A(N) - rho N - c0) N^{-s},

    and the cutoff endpoint is averaged over a short window to damp the
    fluctuation of A.  The residual error is O(|s| N^{1/3 - sigma}), well
    under 1e-8 on Re(s) >= 1.5 at the default cutoff.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise PoleAtOne("series route requires Re(s) > 1")
    a = np.asarray(ctx.ideal_coeffs(N), dtype=float)
    ns = np.arange(1, N + 1, dtype=float)
    if not corrected:
        return complex(np.sum(a * ns ** (-s)))
    f = ctx.field
    if f.d == 0:
        rho = 1.0
        c0 = -0.5
    else:
        # class number formula: residue of zeta_K at 1
        rho = (2.0 ** f.r1 * (2 * math.pi) ** f.r2 * f.h * f.regulator
               / (f.omega * math.sqrt(f.D)))
        c0 = (riemann_zeta(0.0) * dirichlet_l(0.0, f.disc_signed)).real
    window = 96
    N0 = N - window
    partial = complex(np.sum(a[:N0] * ns[:N0] ** (-s)))
    cum = np.cumsum(a)
    total = partial
    # average the corrected value over cutoffs N0 .. N-1
    acc = 0.0 + 0.0j
    for j in range(N0, N):
        Nj = float(j)
        tailj = rho * Nj ** (1 - s) / (s - 1) - (cum[j - 1] - rho * Nj - c0) * Nj ** (-s)
        extra = complex(np.sum(a[N0:j] * ns[N0:j] ** (-s))) if j > N0 else 0.0
        acc += extra + tailj
    return total + acc / window


def lambda_factor(field: FieldData, s: complex) -> complex:
    """Archimedean factor 2^{-r2 s} D^{s/2} pi^{-ns/2} Gamma(s/2)^{r1} Gamma(s)^{r2}."""
    s = complex(s)
    out = 2.0 ** (-field.r2 * s) * field.D ** (s / 2.0) * math.pi ** 0.0
    out *= cmath.exp(-(field.n * s / 2.0) * math.log(math.pi))
    out *= gamma(s / 2.0) ** field.r1
    if field.r2:
        out *= gamma(s) ** field.r2
    return out


def completed_zeta(ctx: ZetaContext, s: complex) -> complex:
    """zeta*_K(s) = Lambda(s) zeta_K(s), regular off s = 0, 1."""
    s = complex(s)
    if s == 0.0 or s == 1.0:
        raise PoleAtZeroOrOne("completed zeta pole at s=%s" % (s,))
    return lambda_factor(ctx.field, s) * dedekind_zeta(ctx, s)


def phi(ctx: ZetaContext, s: complex) -> complex:
    """Scattering quotient zeta*_K(2s-1) / zeta*_K(2s).

    Computed as a ratio of archimedean factors times a ratio of Dedekind
    values; only a genuine zero of zeta_K(2s) raises (the gamma factors
    make |zeta*| exponentially small along vertical lines without any
    pole of phi)."""
    s = complex(s)
    for pole in (0.0, 1.0):
        if 2 * s - 1 == pole or 2 * s == pole:
            raise ScatteringPole("phi pole at s=%s" % (s,))
    zk_den = dedekind_zeta(ctx, 2 * s)
    if abs(zk_den) < 1e-10:
        raise ScatteringPole("zeta_K(2s) vanishes near s=%s" % (s,))
    ratio = lambda_factor(ctx.field, 2 * s - 1) / lambda_factor(ctx.field, 2 * s)
    return ratio * dedekind_zeta(ctx, 2 * s - 1) / zk_den


def residue_phi(ctx: ZetaContext) -> float:
    """Residue of phi at s = 1: 2^{r1-1} h R / (omega zeta*_K(2))."""
    f = ctx.field
    num = 2.0 ** (f.r1 - 1) * f.h * f.regulator / f.omega
    return num / completed_zeta(ctx, 2.0).real


def tau_divisor_sum(ctx: ZetaContext, l: FieldElement, s: complex) -> complex:
    """Divisor sum tau_s(l) = N(bdl)^{-s/2} sum over ideal divisors q of (bdl)
    of N(q)^s, for a frequency l in the inverse different (b = o for h = 1)."""
    if l.is_zero():
        raise ZeroFrequency("tau of zero frequency")
    f = ctx.field
    nu = l * f.different_gen  # integral generator of (b d l)
    if not nu.is_integral():
        raise ValueError("frequency not in the inverse different")
    norms = ideal_divisor_norms(f, nu)
    n_total = abs(int(nu.norm()))
    s = complex(s)
    acc = 0.0 + 0.0j
    for m in sorted(norms):
        acc += m ** s
    return n_total ** (-s / 2.0) * acc
