import math
import random

import numpy as np
import pytest

from hilmod import fields as F
from hilmod import geometry as G
from conftest import random_group_element, random_point

FIELDS = [0, 5, -1]


def test_act_identity(field_q5):
    z = G.make_point(field_q5, (0.2, 1.1), (-0.3, 0.7))
    g = G.identity_element(field_q5)
    assert G.act(g, z, field_q5).coords == z.coords


def test_act_inversion(field_q):
    z = G.make_point(field_q, (0.0, 2.0))
    S = G.group_element(field_q, 0, -1, 1, 0)
    w = G.act(S, z, field_q)
    assert abs(w.coords[0][0]) < 1e-15 and abs(w.coords[0][1] - 0.5) < 1e-15


def test_act_translation_h3(field_qi):
    i = field_qi.element(0, 1)
    T = G.group_element(field_qi, 1, i, 0, 1)
    z = G.make_point(field_qi, (0.2 + 0.4j, 0.9))
    w = G.act(T, z, field_qi)
    assert abs(w.coords[0][0] - (0.2 + 1.4j)) < 1e-15
    assert abs(w.coords[0][1] - 0.9) < 1e-15


def test_group_element_must_be_unimodular(field_q):
    with pytest.raises(ValueError):
        G.group_element(field_q, 2, 0, 0, 2)


def test_height_at_infinity(field_q):
    z = G.make_point(field_q, (0.3, 2.0))
    assert G.height(G.cusp_infinity(field_q), z, field_q) == 2.0


def test_height_at_zero_cusp(field_q):
    lam = G.make_cusp(field_q, 0, 1)
    for t in (0.5, 2.0, 4.0):
        z = G.make_point(field_q, (0.0, t))
        assert abs(G.height(lam, z, field_q) - 1.0 / t) < 1e-14
    # equals mu(infinity, S z)
    S = G.group_element(field_q, 0, -1, 1, 0)
    z = G.make_point(field_q, (0.4, 1.7))
    lhs = G.height(lam, z, field_q)
    rhs = G.act(S, z, field_q).coords[0][1]
    assert abs(lhs - rhs) < 1e-14


def apply_to_cusp(g, cusp, field):
    rho = g.a * cusp.rho + g.b * cusp.sigma
    sigma = g.c * cusp.rho + g.d * cusp.sigma
    return G.make_cusp(field, rho, sigma)


@pytest.mark.parametrize("d", FIELDS)
def test_height_invariance_random(d):
    field = F.make_field(d)
    rng = random.Random(11 + d)
    base_cusps = [G.cusp_infinity(field), G.make_cusp(field, 0, 1),
                  G.make_cusp(field, 1, 1)]
    for trial in range(50):
        g = random_group_element(field, rng)
        lam = base_cusps[trial % len(base_cusps)]
        z = random_point(field, rng)
        mu1 = G.height(lam, z, field)
        mu2 = G.height(apply_to_cusp(g, lam, field), G.act(g, z, field), field)
        assert abs(mu1 - mu2) <= 1e-10 * mu1


def test_local_coords_rational(field_q):
    inf = G.cusp_infinity(field_q)
    z = G.make_point(field_q, (0.37, 1.9))
    lc = G.local_coords(inf, z, field_q)
    assert lc.Y == ()
    assert abs(lc.q - 1.9) < 1e-15 and abs(lc.X[0] - 0.37) < 1e-15


@pytest.mark.parametrize("d", FIELDS)
def test_local_coords_round_trip_fuzz(d):
    field = F.make_field(d)
    rng = random.Random(5 + d)
    inf = G.cusp_infinity(field)
    for _ in range(200):
        z = random_point(field, rng, 0.3, 3.0)
        lc = G.local_coords(inf, z, field)
        w = G.from_local_coords(inf, lc, field)
        for (x1, y1), (x2, y2) in zip(z.coords, w.coords):
            assert abs(complex(x1) - complex(x2)) < 1e-10
            assert abs(y1 - y2) < 1e-10
        assert abs(lc.q - G.height(inf, z, field)) < 1e-12


def test_round_trip_nontrivial_cusp(field_q):
    lam = G.make_cusp(field_q, 1, 2)
    rng = random.Random(3)
    for _ in range(40):
        z = random_point(field_q, rng, 0.4, 2.5)
        lc = G.local_coords(lam, z, field_q)
        w = G.from_local_coords(lam, lc, field_q)
        assert abs(complex(z.coords[0][0]) - complex(w.coords[0][0])) < 1e-10
        assert abs(z.coords[0][1] - w.coords[0][1]) < 1e-10


def test_lemma2_translation_all_fields():
    for d in FIELDS:
        field = F.make_field(d)
        inf = G.cusp_infinity(field)
        rng = random.Random(17 + d)
        z = random_point(field, rng)
        lc = G.local_coords(inf, z, field)
        m = [1] * field.n if field.d != 0 else [1]
        g = G.stabilizer_element(inf, None, 0, m, field)
        lc2 = G.local_coords(inf, G.act(g, z, field), field)
        assert abs(lc2.q - lc.q) < 1e-12
        for a, b, mm in zip(lc2.X, lc.X, m + [0] * len(lc.X)):
            assert abs(a - (b + mm)) < 1e-9
        for a, b in zip(lc2.Y, lc.Y):
            assert abs(a - b) < 1e-9


def test_lemma2_unit_shift_q5(field_q5):
    inf = G.cusp_infinity(field_q5)
    z = G.make_point(field_q5, (0.23, 1.07), (-0.41, 0.83))
    lc = G.local_coords(inf, z, field_q5)
    for k in (1, -2):
        g = G.stabilizer_element(inf, (k,), 0, None, field_q5)
        lc2 = G.local_coords(inf, G.act(g, z, field_q5), field_q5)
        assert abs(lc2.q - lc.q) < 1e-12
        assert abs(lc2.Y[0] - (lc.Y[0] + k)) < 1e-9
        E = G.unit_block_matrix(field_q5, F.unit_power(field_q5, k))
        O = G.x_basis_matrix(field_q5)
        pred = np.linalg.solve(O, (E @ E) @ O @ np.array(lc.X))
        assert np.abs(np.array(lc2.X) - pred).max() < 1e-9


def test_lemma2_root_of_unity_qi(field_qi):
    inf = G.cusp_infinity(field_qi)
    z = G.make_point(field_qi, (0.21 + 0.13j, 0.95))
    lc = G.local_coords(inf, z, field_qi)
    g = G.stabilizer_element(inf, None, 1, None, field_qi)  # w = i
    lc2 = G.local_coords(inf, G.act(g, z, field_qi), field_qi)
    assert abs(lc2.q - lc.q) < 1e-12
    # X -> O^{-1} E^2 O X with E the rotation by i, i.e. X -> -X
    assert abs(lc2.X[0] + lc.X[0]) < 1e-9
    assert abs(lc2.X[1] + lc.X[1]) < 1e-9


def test_stabilizer_zero_inputs_identity(field_q5):
    inf = G.cusp_infinity(field_q5)
    g = G.stabilizer_element(inf, (0,), 0, [0, 0], field_q5)
    assert g.eq_mod_sign(G.identity_element(field_q5))


def test_reduce_simple_translation(field_q):
    inf = G.cusp_infinity(field_q)
    z = G.make_point(field_q, (5.3, 2.0))
    w, g = G.reduce_mod_stabilizer(inf, z, field_q)
    assert abs(w.coords[0][0] - 0.3) < 1e-12
    assert abs(w.coords[0][1] - 2.0) < 1e-12


def test_reduce_already_reduced(field_q5):
    inf = G.cusp_infinity(field_q5)
    z = G.from_local_coords(inf, G.LocalCoords(1.3, (0.1,), (0.2, -0.3)), field_q5)
    w, g = G.reduce_mod_stabilizer(inf, z, field_q5)
    assert g.eq_mod_sign(G.identity_element(field_q5))


@pytest.mark.parametrize("d", FIELDS)
def test_reduce_fuzz(d):
    field = F.make_field(d)
    inf = G.cusp_infinity(field)
    rng = random.Random(29 + d)
    for _ in range(200):
        z = random_point(field, rng, 0.2, 4.0)
        # push it out of the box first
        g0 = G.stabilizer_element(inf, (2,) if field.r > 1 else None, 0,
                                  [3] + [0] * (field.n - 1), field)
        z = G.act(g0, z, field)
        q0 = G.local_coords(inf, z, field).q
        w, g = G.reduce_mod_stabilizer(inf, z, field)
        lc = G.local_coords(inf, w, field)
        assert lc.in_box(1e-9)
        assert abs(lc.q - q0) <= 1e-12 * q0
        # returned element really maps input to output
        w2 = G.act(g, z, field)
        for (x1, y1), (x2, y2) in zip(w.coords, w2.coords):
            assert abs(complex(x1) - complex(x2)) < 1e-10


def test_horosphere_densities(field_q, field_q5):
    assert abs(G.horosphere_measure_density(field_q, 2.0) - 0.5) < 1e-15
    d1 = G.horosphere_measure_density(field_q5, 1.0)
    d2 = G.horosphere_measure_density(field_q5, 2.0)
    assert abs(d1 - 2 * d2) < 1e-12  # 1/q homogeneity
    # paper constants: sqrt(r1+4r2) 2^{r1-r2-1} sqrt(D) R / q
    expect = math.sqrt(2) * 2 * math.sqrt(5) * field_q5.regulator
    assert abs(d1 - expect) < 1e-12
    # haar density for Q is 1/q^2
    assert abs(G.haar_density(field_q, 3.0) - 1.0 / 9) < 1e-15


def test_horosphere_volume_q(field_q):
    # q^{-1} omega^{-1} 2^{r1-r2} sqrt(r1+4r2) sqrt(D) R = 1/q for Q
    assert abs(G.horosphere_volume(field_q, 2.0) - 0.5) < 1e-15


def test_sphere_of_influence(field_q):
    cands = [G.cusp_infinity(field_q), G.make_cusp(field_q, 0, 1),
             G.make_cusp(field_q, 1, 1), G.make_cusp(field_q, -1, 1)]
    high = G.make_point(field_q, (0.0, 5.0))
    assert G.scan_sphere_of_influence(high, cands, field_q) == cands[0]
    low = G.make_point(field_q, (0.0, 0.01))
    assert G.scan_sphere_of_influence(low, cands, field_q) == cands[1]


def test_sphere_of_influence_saturation(field_q):
    def candidates(bound):
        out = [G.cusp_infinity(field_q)]
        for qd in range(1, bound + 1):
            for p in range(-bound, bound + 1):
                if math.gcd(p, qd) == 1:
                    out.append(G.make_cusp(field_q, p, qd))
        return out
    small, big = candidates(20), candidates(28)
    rng = random.Random(4)
    for _ in range(25):
        z = G.make_point(field_q, (rng.uniform(-0.5, 0.5), rng.uniform(0.5, 2.0)))
        a = G.scan_sphere_of_influence(z, small, field_q)
        b = G.scan_sphere_of_influence(z, big, field_q)
        assert a == b


@pytest.mark.parametrize("d", FIELDS)
def test_isometry_invariance(d):
    field = F.make_field(d)
    rng = random.Random(41 + d)
    for _ in range(20):
        z, w = random_point(field, rng), random_point(field, rng)
        g = random_group_element(field, rng)
        d1 = G.hyperbolic_distance(z, w, field)
        d2 = G.hyperbolic_distance(G.act(g, z, field), G.act(g, w, field), field)
        assert abs(d1 - d2) <= 1e-10 * (1 + d1)


@pytest.mark.parametrize("d", FIELDS)
@pytest.mark.parametrize("s", [1.5, 0.75 + 1j])
def test_laplacian_eigenrelation_ny(d, s):
    field = F.make_field(d)
    rng = random.Random(13)
    z = random_point(field, rng)
    fun = lambda w: w.ny(field) ** s
    lhs = G.laplacian_fd(fun, z, field, 1e-3)
    rhs = (field.r1 + 4 * field.r2) * s * (s - 1) * fun(z)
    assert abs(lhs - rhs) <= 1e-5 * abs(rhs)


def test_cusp_normalization_makes_equality_decidable(field_q5):
    u = field_q5.fundamental_unit
    a = G.make_cusp(field_q5, field_q5.element(1), field_q5.element(2))
    b = G.make_cusp(field_q5, u, field_q5.element(2) * u)
    assert a == b
    assert a.assoc_matrix.a == a.rho and a.assoc_matrix.c == a.sigma
    det = a.assoc_matrix.a * a.assoc_matrix.d - a.assoc_matrix.b * a.assoc_matrix.c
    assert det == F.fe_one(5)
