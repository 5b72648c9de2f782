"""Fundamental-domain and cusp-slice numerics: vectorised Eisenstein grids,
the Maass-Selberg double integral for Q, the truncated-orbifold integral
identity for quadratic fields, and horoball scans on cusp cross sections."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eisenstein import (
    _BESSEL_DECAY_CUT,
    _divisor_norms_cached,
    _frequency_box,
    _omega_embeds,
    maass_selberg_constant,
)
from .fields import FieldData, embed
from .geometry import slice_embeddings, unfold_constant
from .quadrature import gl_panel_nodes
from .specfun import bessel_k_grid
from .zeta import ZetaContext, completed_zeta, make_context, phi


# ---------------------------------------------------------------------------
# Fast Bessel evaluation over argument arrays (log-grid interpolation)
# ---------------------------------------------------------------------------

class _BesselTable:
    """Linear interpolant of exp(x) K_order(x) on a log grid."""

    def __init__(self, order: complex, lo: float, hi: float, n: int = 1 << 14):
        self.lo, self.hi = lo, hi
        self.u = np.linspace(math.log(lo), math.log(hi), n)
        x = np.exp(self.u)
        scaled = bessel_k_grid(order, x) * np.exp(x)
        self.re = scaled.real.copy()
        self.im = scaled.imag.copy()

    def __call__(self, x: np.ndarray) -> np.ndarray:
        u = np.log(np.clip(x, self.lo, self.hi))
        g = np.interp(u, self.u, self.re) + 1j * np.interp(u, self.u, self.im)
        return g * np.exp(-x)


def _point_arrays(field: FieldData, xs, ys):
    xs = [np.asarray(a) for a in xs]
    ys = [np.asarray(a, dtype=float) for a in ys]
    q = np.ones_like(ys[0])
    for y, deg in zip(ys, field.place_degrees):
        q = q * y ** deg
    return xs, ys, q


def eisenstein_fourier_grid(field: FieldData, s: complex, xs, ys,
                            ctx: ZetaContext | None = None,
                            zero_mode: bool = True) -> np.ndarray:
    """Fourier-expansion values over arrays of coordinates (infinity cusp).

    xs, ys: lists over places of per-point coordinate arrays (complex x at
    half-space places).  All points share one frequency box computed from
    the smallest heights, and Bessel factors come from a dense log-grid
    interpolant (refined enough for ~1e-8 relative error).
    """
    s = complex(s)
    ctx = ctx or make_context(field)
    xs, ys, q = _point_arrays(field, xs, ys)
    n_pts = q.size
    out = np.zeros(n_pts, dtype=complex)
    if zero_mode:
        out += q ** s + phi(ctx, s) * q ** (1 - s)
    ymins = [float(y.min()) for y in ys]
    coords, _ = _frequency_box(field, ymins, _BESSEL_DECAY_CUT)
    if coords.shape[0] == 0:
        return out
    order = np.lexsort((coords[:, 1], coords[:, 0]))
    coords = coords[order]
    dg = [complex(v) for v in embed(field.different_gen, field)]
    oe = _omega_embeds(field)
    # frequency embeddings and per-place argument factors
    if field.d == 0:
        l_abs = [np.abs(coords[:, 0]).astype(float)]
        l_val = [coords[:, 0].astype(float)]
        factors = [2 * math.pi]
    elif field.d > 0:
        nu1 = coords[:, 0] + coords[:, 1] * oe[0].real
        nu2 = coords[:, 0] + coords[:, 1] * oe[1].real
        l_val = [nu1 / dg[0].real, nu2 / dg[1].real]
        l_abs = [np.abs(l_val[0]), np.abs(l_val[1])]
        factors = [2 * math.pi, 2 * math.pi]
    else:
        nu = coords[:, 0] + coords[:, 1] * np.complex128(oe[0])
        l_val = [nu / dg[0]]
        l_abs = [np.abs(l_val[0])]
        factors = [4 * math.pi]
    # Bessel interpolants per place kind
    tables = []
    for i, deg in enumerate(field.place_degrees):
        order_i = s - 0.5 if deg == 1 else 2 * s - 1
        args_min = factors[i] * float(ymins[i]) * float(l_abs[i].min())
        args_max = factors[i] * float(ys[i].max()) * float(l_abs[i].max())
        lo = max(args_min * 0.9, 1e-4)
        hi = max(args_max * 1.1, lo * 2, _BESSEL_DECAY_CUT + 10)
        tables.append(_BesselTable(order_i, lo, hi))
    taus = np.empty(coords.shape[0], dtype=complex)
    for j in range(coords.shape[0]):
        nu_el = field.from_ring_coords(int(coords[j, 0]), int(coords[j, 1]))
        norms = _divisor_norms_cached(field, nu_el)
        acc = sum(m ** (1 - 2 * s) for m in norms)
        taus[j] = norms[-1] ** (-(1 - 2 * s) / 2.0) * acc
    tail = np.zeros(n_pts, dtype=complex)
    cut = _BESSEL_DECAY_CUT
    for j in range(coords.shape[0]):
        K = np.ones(n_pts, dtype=complex)
        phase = np.zeros(n_pts)
        total_arg = np.zeros(n_pts)
        for i, deg in enumerate(field.place_degrees):
            arg = factors[i] * ys[i] * float(l_abs[i][j])
            total_arg += arg
            K = K * tables[i](arg)
            if deg == 1:
                phase = phase + float(l_val[i][j]) * xs[i]
            else:
                phase = phase + 2 * (complex(l_val[i][j]) * xs[i]).real
        term = taus[j] * K * np.exp(2j * math.pi * phase)
        term[total_arg > cut] = 0.0
        tail += term
    zs2 = completed_zeta(ctx, 2 * s)
    return out + 2 ** field.r * np.sqrt(q) / zs2 * tail


# ---------------------------------------------------------------------------
# Classical fundamental domain of PSL(2, Z)
# ---------------------------------------------------------------------------

def modular_domain_volume_numeric(panels: int = 64, order: int = 10) -> float:
    """Numeric dx dy / y^2 volume of {|x| <= 1/2, |z| >= 1}.

    Two-dimensional tensor quadrature after the substitution t = 1/y, which
    maps each fibre to (0, 1/sqrt(1-x^2)] with unit density.
    """
    xs, wx = gl_panel_nodes(-0.5, 0.5, panels, order)
    total = 0.0
    for x, w in zip(xs, wx):
        tmax = 1.0 / math.sqrt(1.0 - x * x)
        ts, wt = gl_panel_nodes(0.0, tmax, 4, order)
        total += w * float(np.sum(wt))
    return total


def _modular_domain_grid(T: float, panels_x: int, panels_y: int, order: int = 8):
    """Tensor nodes over {|x| <= 1/2, sqrt(1-x^2) <= y <= T} (for Q)."""
    xs, wx = gl_panel_nodes(-0.5, 0.5, panels_x, order)
    X, Y, W = [], [], []
    for x, w in zip(xs, wx):
        y0 = math.sqrt(1.0 - x * x)
        ys, wy = gl_panel_nodes(y0, T, panels_y, order)
        X.append(np.full(ys.shape, x))
        Y.append(ys)
        W.append(w * wy)
    return np.concatenate(X), np.concatenate(Y), np.concatenate(W)


def maass_selberg_numeric(field: FieldData, s: complex, sp: complex, T: float,
                          rtol: float = 3e-4, ctx: ZetaContext | None = None):
    """Numeric integral of E^T(z,s) E^T(z,s') over the modular surface (Q only).

    Splits the classical domain at y = T; below, E^T = E via the Fourier
    grid; above, both truncated series are bare frequency tails and the
    contribution is exponentially negligible (still integrated).
    """
    if field.d != 0:
        raise ValueError("numeric Maass-Selberg integral implemented for Q only")
    ctx = ctx or make_context(field)
    panels = 12
    prev = None
    while True:
        X, Y, W = _modular_domain_grid(T, panels, panels)
        Es = eisenstein_fourier_grid(field, s, [X], [Y], ctx)
        Esp = eisenstein_fourier_grid(field, sp, [X], [Y], ctx)
        val = complex(np.sum(W * Es * Esp / Y ** 2))
        # strip above T: truncated tails only
        xs2, wx2 = gl_panel_nodes(-0.5, 0.5, 8, 8)
        ys2, wy2 = gl_panel_nodes(T, T + 6.0, 8, 8)
        X2, Y2 = np.meshgrid(xs2, ys2, indexing="ij")
        W2 = np.outer(wx2, wy2)
        t1 = eisenstein_fourier_grid(field, s, [X2.ravel()], [Y2.ravel()], ctx, zero_mode=False)
        t2 = eisenstein_fourier_grid(field, sp, [X2.ravel()], [Y2.ravel()], ctx, zero_mode=False)
        val += complex(np.sum(W2.ravel() * t1 * t2 / Y2.ravel() ** 2))
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val
        if panels >= 96:
            return val
        prev = val
        panels *= 2


# ---------------------------------------------------------------------------
# Cusp-slice horoball scans
# ---------------------------------------------------------------------------

@dataclass
class SliceCandidates:
    """Integer pair data (c1, c2, d1, d2) relevant on one cusp cross section."""

    coords: np.ndarray

    @property
    def count(self) -> int:
        return self.coords.shape[0]


def slice_candidates(field: FieldData, q: float, floor: float,
                     margin: float = 4.0) -> SliceCandidates:
    """Pairs (c, d), c != 0, whose cusp can reach height > floor somewhere on
    the cross section at height q (box bounds with a safety margin)."""
    from .geometry import _geom_cache
    Omat, O_inv, U, U_inv, ulogs = _geom_cache(field.d)
    # per-place extremes of y on the slice
    if field.r >= 2:
        ymin = [q ** (1.0 / field.n) * math.exp(-abs(ulogs[i])) for i in range(field.r)]
    else:
        ymin = [q ** (1.0 / field.n)]
    xmax = np.abs(Omat).sum(axis=1) * 0.5
    budget = q / floor  # |N(c z + d)|^2 <= q / floor
    oe = _omega_embeds(field) if field.d != 0 else None
    blocks = []
    if field.d == 0:
        cmax = int(math.sqrt(budget) / ymin[0] * margin ** 0.25)
        for c in range(1, max(cmax, 1) + 1):
            w = math.sqrt(budget * margin)
            lo = int(math.ceil(-c * xmax[0] - w))
            hi = int(math.floor(c * xmax[0] + w))
            d = np.arange(lo, hi + 1)
            d = d[np.gcd(d, c) == 1]
            blocks.append(np.stack([np.full(d.shape, c), np.zeros_like(d), d,
                                    np.zeros_like(d)], axis=1))
    elif field.d > 0:
        R = field.regulator
        M = math.sqrt(budget) * math.exp(2 * R) * margin
        amax = [math.sqrt(M) / ymin[0], math.sqrt(M) / ymin[1]]
        from .eisenstein import _c_candidates, _ragged_ranges, _coprime_mask
        cu, cv = _c_candidates(field, amax)
        live = ~((cu == 0) & (cv == 0))
        cu, cv = cu[live], cv[live]
        ce1 = cu + cv * oe[0].real
        ce2 = cu + cv * oe[1].real
        for k in range(cu.size):
            w1 = math.sqrt(M)
            lo1, hi1 = -abs(ce1[k]) * xmax[0] - w1, abs(ce1[k]) * xmax[0] + w1
            lo2, hi2 = -abs(ce2[k]) * xmax[1] - w1, abs(ce2[k]) * xmax[1] + w1
            delta = oe[0].real - oe[1].real
            vlo = int(math.ceil((lo1 - hi2) / delta))
            vhi = int(math.floor((hi1 - lo2) / delta))
            dv = np.arange(vlo, vhi + 1)
            dlo = np.maximum(np.ceil(lo1 - dv * oe[0].real), np.ceil(lo2 - dv * oe[1].real)).astype(np.int64)
            dhi = np.minimum(np.floor(hi1 - dv * oe[0].real), np.floor(hi2 - dv * oe[1].real)).astype(np.int64)
            rows, du = _ragged_ranges(dlo, dhi)
            if du.size == 0:
                continue
            dvv = dv[rows]
            n = du.size
            blocks.append(np.stack([np.full(n, cu[k]), np.full(n, cv[k]), du, dvv], axis=1))
    else:
        from .eisenstein import _c_candidates, _ragged_ranges
        V1max = math.sqrt(budget) * margin
        amax = [math.sqrt(V1max) / ymin[0]]
        cu, cv = _c_candidates(field, amax)
        live = ~((cu == 0) & (cv == 0))
        cu, cv = cu[live], cv[live]
        ce = cu + cv * np.complex128(oe[0])
        for k in range(cu.size):
            rad = math.sqrt(V1max) + abs(ce[k]) * xmax[0] * 1.5
            vspan = int(math.floor(rad / oe[0].imag)) + 1
            dv = np.arange(-vspan, vspan + 1)
            w = np.sqrt(np.maximum(rad ** 2 - (dv * oe[0].imag) ** 2, 0.0)) + 1
            dlo = np.ceil(-w - dv * oe[0].real).astype(np.int64)
            dhi = np.floor(w - dv * oe[0].real).astype(np.int64)
            rows, du = _ragged_ranges(dlo, dhi)
            if du.size == 0:
                continue
            dvv = dv[rows]
            n = du.size
            blocks.append(np.stack([np.full(n, cu[k]), np.full(n, cv[k]), du, dvv], axis=1))
    if not blocks:
        return SliceCandidates(np.zeros((0, 4), dtype=np.int64))
    coords = np.concatenate(blocks).astype(np.int64)
    if field.d != 0:
        from .eisenstein import _coprime_mask
        keep = _coprime_mask(field, coords[:, 0], coords[:, 1], coords[:, 2], coords[:, 3])
        coords = coords[keep]
        coords = _dedupe_by_cusp_value(field, coords)
    return SliceCandidates(coords)


def _dedupe_by_cusp_value(field: FieldData, coords: np.ndarray) -> np.ndarray:
    """Keep one pair per cusp: the value -d/c is unit-invariant, so the key
    (numerator coords of -d * conj(c), N(c)) normalised by gcd and sign
    identifies the cusp exactly (all integer arithmetic)."""
    if coords.shape[0] == 0:
        return coords
    c1, c2, d1, d2 = (coords[:, k] for k in range(4))
    if field.d % 4 == 1:
        # conj(u + v w) = (u + v) - v w;  w^2 = t + w, t = (d-1)/4
        t = (field.d - 1) // 4
        cc1, cc2 = c1 + c2, -c2
    else:
        t = field.d
        cc1, cc2 = c1, -c2
    # numerator (-d) * conj(c) in basis coords: (u1 + v1 w)(u2 + v2 w)
    u1, v1, u2, v2 = -d1, -d2, cc1, cc2
    if field.d % 4 == 1:
        nu = u1 * u2 + t * v1 * v2
        nv = u1 * v2 + v1 * u2 + v1 * v2
        nc = c1 * c1 + c1 * c2 - t * c2 * c2   # N(c) in the {1, omega} basis
    else:
        nu = u1 * u2 + t * v1 * v2
        nv = u1 * v2 + v1 * u2
        nc = c1 * c1 - t * c2 * c2
    # fold the sign of N(c) into the numerator so the key is the exact value
    sgn = np.sign(nc)
    nu, nv, den = nu * sgn, nv * sgn, np.abs(nc)
    g = np.gcd(np.gcd(np.abs(nu), np.abs(nv)), den)
    g[g == 0] = 1
    key = np.stack([nu // g, nv // g, den // g], axis=1)
    _, first = np.unique(key, axis=0, return_index=True)
    return coords[np.sort(first)]


def other_height_max(field: FieldData, q: float, X: np.ndarray,
                     Y: np.ndarray | None, cands: SliceCandidates) -> np.ndarray:
    """Max height over the non-infinity candidate cusps at slice points."""
    xs, ys = slice_embeddings(field, q, X, Y)
    n_pts = X.shape[0]
    best_V = np.full(n_pts, np.inf)
    coords = cands.coords
    if coords.shape[0] == 0:
        return np.zeros(n_pts)
    oe = _omega_embeds(field) if field.d != 0 else None
    if field.d == 0:
        for c1, c2, d1, d2 in coords:
            V = (c1 * xs[0] + d1) ** 2 + (c1 * ys[0]) ** 2
            np.minimum(best_V, V, out=best_V)
    elif field.d > 0:
        ce1 = coords[:, 0] + coords[:, 1] * oe[0].real
        ce2 = coords[:, 0] + coords[:, 1] * oe[1].real
        de1 = coords[:, 2] + coords[:, 3] * oe[0].real
        de2 = coords[:, 2] + coords[:, 3] * oe[1].real
        for k in range(coords.shape[0]):
            V = ((ce1[k] * xs[0] + de1[k]) ** 2 + (ce1[k] * ys[0]) ** 2) \
                * ((ce2[k] * xs[1] + de2[k]) ** 2 + (ce2[k] * ys[1]) ** 2)
            np.minimum(best_V, V, out=best_V)
    else:
        ce = coords[:, 0] + coords[:, 1] * np.complex128(oe[0])
        de = coords[:, 2] + coords[:, 3] * np.complex128(oe[0])
        for k in range(coords.shape[0]):
            V1 = np.abs(ce[k] * xs[0] + de[k]) ** 2 + (abs(ce[k]) * ys[0]) ** 2
            np.minimum(best_V, V1 * V1, out=best_V)
    return q / best_V


def box_grid(field: FieldData, n_per_dim: int):
    """Uniform midpoint grid over the (X, Y) unit box; returns (X, Y, weight)."""
    dim_x = field.n
    dim_y = field.r - 1
    axes = [(np.arange(n_per_dim) + 0.5) / n_per_dim - 0.5
            for _ in range(dim_x + dim_y)]
    grids = np.meshgrid(*axes, indexing="ij")
    flat = [g.ravel() for g in grids]
    X = np.stack(flat[:dim_x], axis=1)
    Y = np.stack(flat[dim_x:], axis=1) if dim_y else None
    w = 1.0 / flat[0].size
    return X, Y, w


def shadow_fraction(field: FieldData, q: float, T: float,
                    n_per_dim: int = 48, margin: float = 4.0) -> float:
    """Box fraction of the cross section at height q lying in some other
    cusp's horoball of height > T."""
    cands = slice_candidates(field, q, T, margin)
    if cands.count == 0:
        return 0.0
    dim = field.n + field.r - 1
    n = n_per_dim if dim > 1 else n_per_dim ** 2 * 8
    X, Y, w = box_grid(field, n)
    mu = other_height_max(field, q, X, Y, cands)
    return float(np.mean(mu > T))


def remark_identity_check(field: FieldData, sprime: float, T: float,
                          ctx: ZetaContext | None = None,
                          n_q: int = 24, n_per_dim: int = 24):
    """Both sides of int_{M_T} E(z, s') dv = C (T^{s'-1}/(s'-1) - phi(s')T^{-s'}/s').

    The left side unfolds to the cusp box, where the slice average of E's
    zero mode is exact; the numeric work is the box fraction V_T(q)
    swallowed by other-cusp horoballs of height > T:

        lhs = C1 (T^{s'-1}/(s'-1) - int_0^T q^{s'-2} V_T(q) dq).

    V_T tends to a positive constant as q -> 0 (the phi term's origin), so
    the integral below the smallest node is extended with that constant.
    """
    ctx = ctx or make_context(field)
    C1 = unfold_constant(field)
    # locate where shadows appear, by a coarse downward scan from T
    q_hi = T
    while q_hi > 1e-4 and shadow_fraction(field, q_hi, T, 16, margin=2.0) == 0.0:
        q_hi *= 0.7
    q_hi = min(q_hi * 1.6, T)
    deep = field.d == 0  # 1-D slices are cheap, resolve the kinks finely
    q_lo = q_hi / (2000.0 if deep else 100.0)
    panels = max(2, n_q // 8) * (6 if deep else 1)
    us, wu = gl_panel_nodes(math.log(q_lo), math.log(q_hi), panels, 8)
    J = 0.0
    small = []
    for u, w in zip(us, wu):
        qv = math.exp(u)
        frac = shadow_fraction(field, qv, T, n_per_dim, margin=2.0)
        if qv < 3 * q_lo:
            small.append(frac)
        J += w * qv ** (sprime - 1.0) * frac
    v0 = small[0] if small else 0.0
    J += v0 * q_lo ** (sprime - 1.0) / (sprime - 1.0)  # constant-limit tail
    lhs = C1 * (T ** (sprime - 1.0) / (sprime - 1.0) - J)
    C = maass_selberg_constant(field)
    rhs = C * (T ** (sprime - 1.0) / (sprime - 1.0)
               - phi(ctx, sprime).real * T ** (-sprime) / sprime)
    return lhs, rhs
