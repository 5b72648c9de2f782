"""Exact arithmetic and invariants for class-number-one fields.

Supported fields are the rationals (d = 0) and a fixed allow list of
quadratic fields Q(sqrt(d)) with class number one.  Elements are kept as
exact rationals a + b*sqrt(d); embeddings into R or C are the only lossy
step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NoUnits, UnsupportedField

# Real quadratic d with h(Q(sqrt d)) = 1 kept small enough that the
# fundamental unit is tiny; imaginary list is the full Heegner set.
REAL_H1 = (2, 3, 5, 6, 7, 11, 13, 17, 19, 21, 29, 33, 37, 41)
IMAG_H1 = (-1, -2, -3, -7, -11, -19, -43, -67, -163)

_UNIT_CF_CAP = 10_000


@dataclass(frozen=True)
class FieldElement:
    """Element a + b*sqrt(d) with exact rational a, b."""

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def make(a, b=0, d: int = 0) -> "FieldElement":
        return FieldElement(Fraction(a), Fraction(b), d)

    def _check(self, other: "FieldElement") -> None:
        if self.d != other.d:
            raise ValueError("mixed-field arithmetic: d=%s vs d=%s" % (self.d, other.d))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.a - other.a, self.b - other.b, self.d)

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.a, -self.b, self.d)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        if self.d == 0:
            return self.a
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        if self.d == 0:
            return self.a
        return 2 * self.a

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero element")
        if self.d == 0:
            return FieldElement(1 / self.a, Fraction(0), 0)
        return FieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        """Whether the element lies in the ring of integers."""
        if self.d == 0:
            return self.a.denominator == 1
        if self.d % 4 == 1:
            # o = Z[(1+sqrt d)/2]: a = u + v/2, b = v/2 with u, v integers.
            v = 2 * self.b
            u = self.a - self.b
            return v.denominator == 1 and u.denominator == 1
        return self.a.denominator == 1 and self.b.denominator == 1

    def ring_coords(self) -> tuple[int, int]:
        """Coordinates w.r.t. the integral basis {1, omega}; element must be integral."""
        if not self.is_integral():
            raise ValueError("element is not integral: %r" % (self,))
        if self.d == 0:
            return int(self.a), 0
        if self.d % 4 == 1:
            v = int(2 * self.b)
            u = int(self.a - self.b)
            return u, v
        return int(self.a), int(self.b)

    def __repr__(self) -> str:
        if self.d == 0 or self.b == 0:
            return "Fe(%s)" % self.a
        return "Fe(%s + %s*sqrt(%d))" % (self.a, self.b, self.d)


def fe_one(d: int) -> FieldElement:
    return FieldElement.make(1, 0, d)


def fe_zero(d: int) -> FieldElement:
    return FieldElement.make(0, 0, d)


def fe_sqrt_d(d: int) -> FieldElement:
    return FieldElement.make(0, 1, d)


@dataclass(frozen=True)
class FieldData:
    """Arithmetic invariants of a supported field."""

    d: int
    r1: int
    r2: int
    n: int
    D: int                 # absolute discriminant
    disc_signed: int       # signed fundamental discriminant (1 for Q)
    h: int
    omega: int             # number of roots of unity
    fundamental_unit: FieldElement | None
    regulator: float
    integral_basis: tuple[FieldElement, ...]
    different_gen: FieldElement
    l1_estimate: float     # conservative horoball-separation constant

    @property
    def r(self) -> int:
        return self.r1 + self.r2

    @property
    def ring_gen(self) -> FieldElement:
        """Second integral basis element (1 for Q)."""
        return self.integral_basis[-1]

    @property
    def place_degrees(self) -> tuple[int, ...]:
        return (1,) * self.r1 + (2,) * self.r2

    def element(self, a, b=0) -> FieldElement:
        return FieldElement.make(a, b, self.d)

    def from_ring_coords(self, u: int, v: int = 0) -> FieldElement:
        """Element u*1 + v*omega from integral-basis coordinates."""
        return self.integral_basis[0] * self.element(u) + self.ring_gen * self.element(v)


def _is_squarefree(m: int) -> bool:
    m = abs(m)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


def _fundamental_unit_cf(d: int) -> FieldElement:
    """Fundamental unit of Q(sqrt d), d > 0, by the continued fraction of omega.

    Runs the exact surd recursion for omega = sqrt(d) (or (1+sqrt d)/2 when
    d = 1 mod 4) and returns the first convergent quotient p - q*conj(omega)
    of unit norm.  Classical theory guarantees the first hit is fundamental.
    """
    if d % 4 == 1:
        P0, Q0 = 1, 2
        omega = FieldElement.make(Fraction(1, 2), Fraction(1, 2), d)
    else:
        P0, Q0 = 0, 1
        omega = fe_sqrt_d(d)
    omega_conj = omega.conjugate()
    sqrt_d_floor = math.isqrt(d)

    P, Q = P0, Q0
    a = (P + sqrt_d_floor) // Q
    p_prev, p_cur = 1, a
    q_prev, q_cur = 0, 1
    for _ in range(_UNIT_CF_CAP):
        u = FieldElement.make(p_cur, 0, d) - omega_conj * FieldElement.make(q_cur, 0, d)
        if abs(u.norm()) == 1:
            return u
        P = a * Q - P
        Q = (d - P * P) // Q
        a = (P + sqrt_d_floor) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    raise UnsupportedField("continued-fraction unit search exceeded %d steps for d=%d"
                           % (_UNIT_CF_CAP, d))


# Conservative horoball-separation constants l1 (largest second-highest cusp
# height observed on dense scans, with margin; the classical value for Q is
# exactly 1).  Test functions must have support above these so at most one
# group translate contributes.
_L1_ESTIMATES = {0: 1.0}
_L1_DEFAULT_QUAD = 1.25


def make_field(d: int) -> FieldData:
    """Build the invariant table for Q (d = 0) or an allow-listed quadratic field."""
    if d == 0:
        one = fe_one(0)
        return FieldData(
            d=0, r1=1, r2=0, n=1, D=1, disc_signed=1, h=1, omega=2,
            fundamental_unit=None, regulator=1.0,
            integral_basis=(one,), different_gen=one,
            l1_estimate=_L1_ESTIMATES[0],
        )
    if not _is_squarefree(d) or d == 1:
        raise UnsupportedField("d=%d is not a squarefree discriminant radicand" % d)
    if d > 0 and d not in REAL_H1:
        raise UnsupportedField("real quadratic d=%d not in the h=1 allow list" % d)
    if d < 0 and d not in IMAG_H1:
        raise UnsupportedField("imaginary quadratic d=%d not in the h=1 allow list" % d)

    if d % 4 == 1:  # includes negative d = 1 mod 4
        D_signed = d
        basis = (fe_one(d), FieldElement.make(Fraction(1, 2), Fraction(1, 2), d))
        different = fe_sqrt_d(d)
    else:
        D_signed = 4 * d
        basis = (fe_one(d), fe_sqrt_d(d))
        different = FieldElement.make(0, 2, d)

    if d > 0:
        unit = _fundamental_unit_cf(d)
        e1 = float(unit.a) + float(unit.b) * math.sqrt(d)
        if abs(e1) < 1.0:
            unit = unit.inverse()
            e1 = float(unit.a) + float(unit.b) * math.sqrt(d)
        if e1 < 0:
            unit = -unit
            e1 = -e1
        reg = math.log(e1)
        return FieldData(
            d=d, r1=2, r2=0, n=2, D=abs(D_signed), disc_signed=D_signed, h=1, omega=2,
            fundamental_unit=unit, regulator=reg, integral_basis=basis,
            different_gen=different,
            l1_estimate=_L1_ESTIMATES.get(d, _L1_DEFAULT_QUAD),
        )

    omega_count = {-1: 4, -3: 6}.get(d, 2)
    return FieldData(
        d=d, r1=0, r2=1, n=2, D=abs(D_signed), disc_signed=D_signed, h=1,
        omega=omega_count, fundamental_unit=None, regulator=1.0,
        integral_basis=basis, different_gen=different,
        l1_estimate=_L1_ESTIMATES.get(d, _L1_DEFAULT_QUAD),
    )


def roots_of_unity(field: FieldData) -> tuple[FieldElement, ...]:
    """All roots of unity in the field, starting with 1."""
    d = field.d
    one = fe_one(d)
    if field.omega == 2:
        return (one, -one)
    if d == -1:
        i = fe_sqrt_d(-1)
        return (one, i, -one, -i)
    # d = -3: powers of (1 + sqrt(-3))/2, a primitive 6th root.
    z = FieldElement.make(Fraction(1, 2), Fraction(1, 2), -3)
    out = [one]
    cur = z
    for _ in range(5):
        out.append(cur)
        cur = cur * z
    return tuple(out)


def embed(x: FieldElement, field: FieldData):
    """Embeddings of x at the r infinite places (floats, then complexes)."""
    if field.d == 0:
        return (float(x.a),)
    if field.d > 0:
        s = math.sqrt(field.d)
        return (float(x.a) + float(x.b) * s, float(x.a) - float(x.b) * s)
    s = math.sqrt(-field.d)
    return (complex(float(x.a), float(x.b) * s),)


def unit_power(field: FieldData, k: int) -> FieldElement:
    """Exact k-th power of the fundamental unit."""
    if field.fundamental_unit is None:
        raise NoUnits("field with r = 1 has no fundamental unit")
    base = field.fundamental_unit if k >= 0 else field.fundamental_unit.inverse()
    out = fe_one(field.d)
    for _ in range(abs(k)):
        out = out * base
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out 2s from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi main loop
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def chi_values(field: FieldData, N: int) -> list[int]:
    """Values chi_D(1..N) of the quadratic character (all ones for Q)."""
    if field.d == 0:
        return [1] * N
    D = field.disc_signed
    return [kronecker(D, m) for m in range(1, N + 1)]


def ideal_count_coeffs(field: FieldData, N: int) -> list[int]:
    """Number of integral ideals of each norm 1..N.

    Multiplicative sieve: a_{p^k} from the splitting type of p, read off the
    Kronecker symbol (D|p).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if field.d == 0:
        return [1] * N
    D = field.disc_signed
    a = [0] * (N + 1)
    a[1] = 1
    spf = _smallest_prime_factors(N)
    for m in range(2, N + 1):
        p = spf[m]
        pk, rest = p, m // p
        while rest % p == 0:
            rest //= p
            pk *= p
        a[m] = a[rest] * _ideal_count_prime_power(D, p, pk)
    return a[1:]


def _ideal_count_prime_power(D: int, p: int, pk: int) -> int:
    k = 0
    q = pk
    while q > 1:
        q //= p
        k += 1
    chi = kronecker(D, p)
    if chi == 1:
        return k + 1
    if chi == -1:
        return 1 if k % 2 == 0 else 0
    return 1  # ramified


def _smallest_prime_factors(N: int) -> list[int]:
    spf = list(range(N + 1))
    i = 2
    while i * i <= N:
        if spf[i] == i:
            for j in range(i * i, N + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def factor_int(n: int) -> list[tuple[int, int]]:
    """Trial-division factorisation of |n| as [(p, e), ...]."""
    n = abs(n)
    if n <= 1:
        return []
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


# ---------------------------------------------------------------------------
# Ideal machinery (h = 1: every ideal is principal)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealRep:
    """Principal ideal, carried as a generator plus its norm."""

    generator: FieldElement
    norm: int

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealRep):
            return NotImplemented
        if self.norm != other.norm:
            return False
        if self.generator.is_zero() or other.generator.is_zero():
            return self.generator.is_zero() and other.generator.is_zero()
        q = self.generator / other.generator
        return q.is_integral() and abs(q.norm()) == 1

    def __hash__(self):
        return hash(self.norm)


def _module_norm(rows: Sequence[tuple[int, int]]) -> int:
    """Index in Z^2 of the Z-module spanned by integer rows (gcd of 2x2 minors)."""
    g = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            m = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
            g = math.gcd(g, abs(m))
    return g


def _omega_square_coords(field: FieldData) -> tuple[int, int]:
    """omega^2 = t + u*omega in the integral basis."""
    d = field.d
    if d % 4 == 1:
        return (d - 1) // 4, 1
    return d, 0


def _mul_by_omega(field: FieldData, u: int, v: int) -> tuple[int, int]:
    t, w = _omega_square_coords(field)
    # (u + v*omega)*omega = v*omega^2 + u*omega
    return v * t, u + v * w


def pair_ideal_norm(x: FieldElement, y: FieldElement, field: FieldData) -> int:
    """Norm of the integral ideal <x, y> (x, y integral, not both zero)."""
    if field.d == 0:
        return abs(math.gcd(int(x.a), int(y.a)))
    rows = []
    for el in (x, y):
        if el.is_zero():
            continue
        u, v = el.ring_coords()
        rows.append((u, v))
        rows.append(_mul_by_omega(field, u, v))
    if not rows:
        raise ValueError("<0, 0> is not an ideal")
    return _module_norm(rows)


def is_coprime_pair(x: FieldElement, y: FieldElement, field: FieldData) -> bool:
    return pair_ideal_norm(x, y, field) == 1


def elements_of_norm(field: FieldData, n: int) -> list[FieldElement]:
    """Integral elements with |N| = n, up to none of the unit action (raw list).

    Searches a balanced box in embedding space; complete because any element
    of norm n has a unit multiple with both embeddings below sqrt(n)*unit
    (real case) or lies in the obvious disc (imaginary case).
    """
    if n == 0:
        return [fe_zero(field.d)]
    d = field.d
    out = []
    if d == 0:
        return [field.element(n), field.element(-n)]
    if d < 0:
        s = math.sqrt(-d)
        # |u + v*omega|^2 = n
        om = field.ring_gen
        om1 = complex(float(om.a), float(om.b) * s)
        vmax = int(math.sqrt(n) / abs(om1.imag)) + 1
        for v in range(-vmax, vmax + 1):
            ur = math.sqrt(max(n - (v * om1.imag) ** 2, 0.0))
            lo = int(math.floor(-ur - v * om1.real - 1))
            hi = int(math.ceil(ur - v * om1.real + 1))
            for u in range(lo, hi + 1):
                el = field.from_ring_coords(u, v)
                if abs(el.norm()) == n:
                    out.append(el)
        return out
    # real quadratic: balanced box |x^(i)| <= sqrt(n)*eps1
    eps1 = math.exp(field.regulator)
    bound = math.sqrt(n) * eps1 + 1e-9
    om = field.ring_gen
    o1, o2 = embed(om, field)
    vmax = int((2 * bound) / abs(o1 - o2)) + 2
    for v in range(-vmax, vmax + 1):
        lo = int(math.floor(max(-bound - v * o1, -bound - v * o2) - 1))
        hi = int(math.ceil(min(bound - v * o1, bound - v * o2) + 1))
        for u in range(lo, hi + 1):
            el = field.from_ring_coords(u, v)
            if abs(el.norm()) == n:
                e1, e2 = embed(el, field)
                if abs(e1) <= bound and abs(e2) <= bound:
                    out.append(el)
    return out


def exact_divide(x: FieldElement, g: FieldElement, field: FieldData) -> FieldElement | None:
    """x / g when the quotient is integral, else None."""
    if g.is_zero():
        return None
    q = x / g
    return q if q.is_integral() else None


def ideal_gcd_generator(x: FieldElement, y: FieldElement, field: FieldData) -> FieldElement:
    """Generator of <x, y> for a class-number-one field."""
    if x.is_zero() and y.is_zero():
        raise ValueError("gcd of zero pair")
    if field.d == 0:
        from math import gcd
        def _q_gcd(a: Fraction, b: Fraction) -> Fraction:
            den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
            return Fraction(gcd(int(a * den), int(b * den)), den)
        return field.element(_q_gcd(x.a, y.a))
    # scale to integral elements first
    scale = 1
    for el in (x, y):
        for c in (el.a, el.b):
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
    sx = x * field.element(2 * scale)
    sy = y * field.element(2 * scale)
    n = pair_ideal_norm(sx, sy, field)
    for g in elements_of_norm(field, n):
        if exact_divide(sx, g, field) is not None and exact_divide(sy, g, field) is not None:
            return g / field.element(2 * scale)
    raise ValueError("no principal generator found (h=1 violated?)")


def solve_bezout(rho: FieldElement, sigma: FieldElement, field: FieldData) -> tuple[FieldElement, FieldElement]:
    """xi, eta integral with rho*eta - sigma*xi = 1; requires <rho, sigma> = o."""
    if field.d == 0:
        a, b = int(rho.a), int(sigma.a)
        g, u, v = _ext_gcd(a, b)
        if abs(g) != 1:
            raise ValueError("pair not coprime")
        # a*u + b*v = g: want rho*eta - sigma*xi = 1
        return field.element(-v * g), field.element(u * g)
    # Solve over Z^4: rho*eta - sigma*xi = 1 with eta = (e1,e2), xi = (x1,x2)
    # in integral-basis coordinates.  Columns of the 2x4 system are the basis
    # images; solve by integer row reduction on the transposed system.
    cols = []
    for base in (field.integral_basis[0], field.ring_gen):
        prod = rho * base
        cols.append(prod.ring_coords())
    for base in (field.integral_basis[0], field.ring_gen):
        prod = -(sigma * base)
        cols.append(prod.ring_coords())
    sol = _solve_integer_2x4(cols, (1, 0))
    if sol is None:
        raise ValueError("pair not coprime")
    e1, e2, x1, x2 = sol
    eta = field.from_ring_coords(e1, e2)
    xi = field.from_ring_coords(x1, x2)
    return xi, eta


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _solve_integer_2x4(cols: list[tuple[int, int]], target: tuple[int, int]):
    """Solve sum_j cols[j] * v_j = target over integers (4 unknowns, 2 equations).

    Hermite-style column reduction with unimodular bookkeeping.
    """
    import itertools

    # brute-force small solutions first (entries are tiny in practice)
    for bound in (3, 8, 20):
        rng = range(-bound, bound + 1)
        for v in itertools.product(rng, repeat=4):
            s0 = sum(cols[j][0] * v[j] for j in range(4))
            s1 = sum(cols[j][1] * v[j] for j in range(4))
            if (s0, s1) == target:
                return v
    return None


# ---------------------------------------------------------------------------
# Prime splitting and divisor enumeration
# ---------------------------------------------------------------------------

def split_type(field: FieldData, p: int) -> str:
    if field.d == 0:
        return "rational"
    chi = kronecker(field.disc_signed, p)
    return {1: "split", -1: "inert", 0: "ramified"}[chi]


_prime_gen_cache: dict[tuple[int, int], list[FieldElement]] = {}


def prime_ideal_generators(field: FieldData, p: int) -> list[FieldElement]:
    """Generators of the prime ideals above p (one entry per prime ideal)."""
    key = (field.d, p)
    if key in _prime_gen_cache:
        return _prime_gen_cache[key]
    if field.d == 0:
        gens = [field.element(p)]
    else:
        ty = split_type(field, p)
        if ty == "inert":
            gens = [field.element(p)]
        else:
            cands = elements_of_norm(field, p)
            if not cands:
                raise ValueError("no element of norm %d in d=%d (h=1 violated?)" % (p, field.d))
            if ty == "ramified":
                gens = [cands[0]]
            else:
                pi = cands[0]
                pib = pi.conjugate()
                gens = [pi, pib]
    _prime_gen_cache[key] = gens
    return gens


def element_valuation(x: FieldElement, pi: FieldElement, field: FieldData) -> int:
    """Largest k with pi^k | x (x integral nonzero)."""
    v = 0
    cur = x
    while True:
        nxt = exact_divide(cur, pi, field)
        if nxt is None:
            return v
        cur = nxt
        v += 1


def ideal_factorization(field: FieldData, x: FieldElement) -> list[tuple[int, int]]:
    """Factor the principal ideal (x) as [(prime-ideal norm, exponent), ...]."""
    if x.is_zero():
        raise ValueError("cannot factor the zero ideal")
    n = abs(int(x.norm())) if x.norm().denominator == 1 else None
    if n is None:
        raise ValueError("element must be integral")
    out = []
    for p, e in factor_int(n):
        if field.d == 0:
            out.append((p, e))
            continue
        ty = split_type(field, p)
        if ty == "inert":
            out.append((p * p, e // 2))
        elif ty == "ramified":
            pi = prime_ideal_generators(field, p)[0]
            out.append((p, element_valuation(x, pi, field)))
        else:
            pi, pib = prime_ideal_generators(field, p)
            v1 = element_valuation(x, pi, field)
            v2 = element_valuation(x, pib, field)
            if v1:
                out.append((p, v1))
            if v2:
                out.append((p, v2))
    return [(q, e) for (q, e) in out if e > 0]


def ideal_divisor_norms(field: FieldData, x: FieldElement) -> list[int]:
    """Norms of all integral ideal divisors of (x), with multiplicity."""
    fact = ideal_factorization(field, x)
    norms = [1]
    for q, e in fact:
        norms = [m * q ** j for m in norms for j in range(e + 1)]
    return norms


def _totient_prime_power(D: int, p: int, k: int, rational: bool) -> int:
    """Sum of ideal totients over the ideals of norm p^k."""
    if rational or kronecker(D, p) == 0:
        return p ** k - p ** (k - 1)  # single prime of norm p
    if kronecker(D, p) == -1:
        if k % 2:
            return 0
        return p ** k - p ** (k - 2) if k >= 2 else 1
    # split: ideals p1^a p2^(k-a)
    def f(a: int) -> int:
        return 1 if a == 0 else p ** a - p ** (a - 1)
    return sum(f(a) * f(k - a) for a in range(k + 1))


def ideal_totient_sums(field: FieldData, N: int) -> list[int]:
    """T(n) = sum over integral ideals of norm n of the ideal totient
    Phi(a) = N(a) prod_{p | a} (1 - 1/N(p)); equals Euler phi for Q."""
    if N < 1:
        raise ValueError("N must be >= 1")
    T = [0] * (N + 1)
    T[1] = 1
    spf = _smallest_prime_factors(N)
    rational = field.d == 0
    D = field.disc_signed
    for m in range(2, N + 1):
        p = spf[m]
        pk, rest, k = p, m // p, 1
        while rest % p == 0:
            rest //= p
            pk *= p
            k += 1
        T[m] = T[rest] * _totient_prime_power(D, p, k, rational)
    return T[1:]
