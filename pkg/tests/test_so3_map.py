import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ancilla_control import qubit_protocol as qp
from ancilla_control import so3_map as so3
from ancilla_control.linalg import expm_series

from conftest import random_unit

angles = st.floats(min_value=1e-3, max_value=math.pi - 1e-3)
wide_angles = st.floats(min_value=-2 * math.pi, max_value=2 * math.pi)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
E3 = np.array([0.0, 0.0, 1.0])


def literal_formulas(theta, phi):
    """Uncancelled closed-form sin, cos and axis, as an independent check."""
    root = math.sqrt(
        math.sin(phi / 2) ** 2 + math.sin(theta / 2) ** 2
        - math.sin(theta / 2) ** 2 * math.sin(phi / 2) ** 2
    )
    den = 4 * math.cos(phi / 2) * math.cos(theta / 2) * root
    sin_v = 2 * math.cos(phi / 2) * math.cos(theta / 2) * root
    cos_v = (math.cos(phi) + math.cos(theta) + math.cos(phi) * math.cos(theta) - 1) / 2
    a = -math.sin(theta) * (math.cos(phi) + 1) / den
    b = -math.sin(phi) * math.sin(theta) / den
    c = math.sin(phi) * (math.cos(theta) + 1) / den
    return sin_v, cos_v, np.array([a, b, c])


def test_elementary_rotations():
    np.testing.assert_array_equal(so3.r1(0.0), np.eye(3))
    np.testing.assert_allclose(so3.r1(-math.pi / 2) @ E3, [0, 1, 0], atol=1e-16)
    np.testing.assert_allclose(so3.r3(math.pi / 2) @ [0, 1, 0], [-1, 0, 0], atol=1e-16)


def test_generators():
    j1, j2, j3 = so3.generators()
    assert j3[1, 0] == 1 and j3[0, 1] == -1
    assert not j3[2].any() and not j3[:, 2].any()
    for j in (j1, j2, j3):
        np.testing.assert_array_equal(j, -j.T)
    np.testing.assert_array_equal(j1 @ j2 - j2 @ j1, j3)
    np.testing.assert_array_equal(j2 @ j3 - j3 @ j2, j1)
    np.testing.assert_array_equal(j3 @ j1 - j1 @ j3, j2)


def test_axis_angle_spot_value():
    aa = so3.axis_angle_of(math.pi / 2, math.pi / 2)
    assert abs(aa.angle - 2 * math.pi / 3) < 1e-12
    np.testing.assert_allclose(aa.axis, np.array([-1, -1, 1]) / math.sqrt(3), atol=1e-12)


def test_axis_angle_spot_value_brute_force():
    rot = so3.composite(math.pi / 2, math.pi / 2)
    assert abs(np.trace(rot) - 0.0) < 1e-15  # 1 + 2 cos(2 pi / 3)
    w, v = np.linalg.eig(rot)
    fixed = np.real(v[:, np.argmin(np.abs(w - 1))])
    fixed *= np.sign(fixed[2])
    np.testing.assert_allclose(fixed, np.array([-1, -1, 1]) / math.sqrt(3), atol=1e-12)


@given(st.floats(min_value=1e-3, max_value=math.pi - 1e-3))
def test_pure_z_rotation(x):
    aa = so3.axis_angle_of(0.0, x)
    assert abs(aa.angle - x) < 1e-12
    np.testing.assert_allclose(aa.axis, E3, atol=1e-12)


def test_axis_tends_to_z_as_theta_shrinks():
    phi = math.pi / 10
    cs = [so3.axis_angle_of(theta, phi).c for theta in (0.5, 0.1, 0.01, 1e-4)]
    assert all(b > a for a, b in zip(cs, cs[1:]))
    assert cs[-1] > 1 - 1e-6


@given(angles, angles)
def test_matches_literal_formulas(theta, phi):
    aa = so3.axis_angle_of(theta, phi)
    sin_v, cos_v, axis = literal_formulas(theta, phi)
    assert abs(sin_v**2 + cos_v**2 - 1) < 1e-12
    assert abs(float(axis @ axis) - 1) < 1e-12
    assert abs(math.sin(aa.angle) - sin_v) < 1e-12
    assert abs(math.cos(aa.angle) - cos_v) < 1e-12
    np.testing.assert_allclose(aa.axis, axis, atol=1e-11)


@given(wide_angles, wide_angles)
def test_reconstruction(theta, phi):
    rot = so3.composite(theta, phi)
    try:
        aa = so3.axis_angle_of(theta, phi)
    except so3.DegenerateRotationError:
        assert np.max(np.abs(rot - np.eye(3))) < 1e-14
        return
    assert -math.pi < aa.angle <= math.pi
    np.testing.assert_allclose(so3.rodrigues(aa), rot, atol=1e-12)


@pytest.mark.parametrize(
    "theta,phi",
    [(0.3, math.pi), (0.3, math.pi - 1e-9), (math.pi, math.pi), (math.pi, 0.4),
     (1e-9, 2e-9), (2 * math.pi, 0.5), (math.pi, 1e-10)],
)
def test_reconstruction_near_degenerate(theta, phi):
    aa = so3.axis_angle_of(theta, phi)
    np.testing.assert_allclose(so3.rodrigues(aa), so3.composite(theta, phi), atol=1e-12)


def test_identity_is_degenerate():
    with pytest.raises(so3.DegenerateRotationError):
        so3.axis_angle_of(0.0, 0.0)
    with pytest.raises(so3.DegenerateRotationError):
        so3.axis_angle_of(2 * math.pi, 0.0)


def test_axis_angle_validation():
    with pytest.raises(ValueError):
        so3.AxisAngle([1.0, 1.0, 0.0], 0.1)
    assert so3.AxisAngle([0, 0, 1], 3 * math.pi).angle == pytest.approx(math.pi)
    assert so3.AxisAngle([0, 0, 1], -math.pi).angle == pytest.approx(math.pi)


def test_rodrigues_examples():
    np.testing.assert_array_equal(so3.rodrigues(so3.AxisAngle(E3, 0.0)), np.eye(3))
    for x in (0.3, -1.2, 2.9):
        np.testing.assert_allclose(so3.rodrigues(so3.AxisAngle(E3, x)), so3.r3(x), atol=1e-16)


@given(seeds)
def test_rodrigues_vs_series(seed):
    rng = np.random.default_rng(seed)
    aa = so3.AxisAngle(random_unit(rng), rng.uniform(-math.pi, math.pi))
    want = expm_series(aa.angle * so3.axis_generator(aa.axis))
    np.testing.assert_allclose(so3.rodrigues(aa), want.real, atol=1e-11)
    assert np.max(np.abs(want.imag)) == 0


@given(seeds, st.integers(min_value=1, max_value=3))
def test_generator_power_law(seed, n):
    rng = np.random.default_rng(seed)
    axis = random_unit(rng)
    v = rng.uniform(-math.pi, math.pi)
    k = so3.axis_generator(axis)
    np.testing.assert_allclose(
        np.linalg.matrix_power(v * k, 2 * n), v ** (2 * n) * (-1) ** (n + 1) * k @ k, atol=1e-12
    )
    np.testing.assert_allclose(
        np.linalg.matrix_power(v * k, 2 * n + 1), v ** (2 * n + 1) * (-1) ** n * k, atol=1e-12
    )


@given(angles, angles)
def test_rodrigues_is_rotation(theta, phi):
    r = so3.rodrigues(so3.axis_angle_of(theta, phi))
    np.testing.assert_allclose(r.T @ r, np.eye(3), atol=1e-12)
    assert abs(np.linalg.det(r) - 1) < 1e-12


def test_rotation_power_examples(rng):
    np.testing.assert_allclose(so3.rotation_power(0.4, 1.1, 1), so3.composite(0.4, 1.1), atol=1e-15)
    np.testing.assert_allclose(so3.rotation_power(math.pi / 2, math.pi / 2, 3), np.eye(3), atol=1e-15)
    for theta, phi in rng.uniform(0, 2 * math.pi, size=(20, 2)):
        m = so3.composite(theta, phi)
        np.testing.assert_allclose(so3.rotation_power(theta, phi, 2), m @ m, atol=1e-12)


def test_rotation_power_rejects_bad_n():
    with pytest.raises(ValueError):
        so3.rotation_power(0.1, 0.2, 0)


def test_closed_form_rN_examples():
    np.testing.assert_allclose(so3.closed_form_rN(math.pi / 2, 1), [-1, 0, 0], atol=1e-15)
    assert so3.closed_form_rN(math.pi / 10, 1000)[2] >= 0.999


def test_closed_form_rN_explicit_column(rng):
    for phi in rng.uniform(0.1, 3.0, size=10):
        n = int(rng.integers(1, 200))
        aa = so3.axis_angle_of(math.pi / (2 * n), phi)
        a, b, c = aa.axis
        nv = n * aa.angle
        want = [
            a * c * (1 - math.cos(nv)) + b * math.sin(nv),
            b * c * (1 - math.cos(nv)) - a * math.sin(nv),
            (1 - c * c) * math.cos(nv) + c * c,
        ]
        np.testing.assert_allclose(so3.closed_form_rN(phi, n), want, atol=1e-12)


def test_closed_form_rN_full_revolution():
    # theta = phi = pi/2 at N = 1 is a 2 pi / 3 turn; three turns close the loop
    r0 = np.array([0.6, 0.0, 0.8])
    np.testing.assert_allclose(so3.rotation_power(math.pi / 2, math.pi / 2, 3) @ r0, r0, atol=1e-15)


def test_closed_form_rN_general_initial(rng):
    for _ in range(10):
        r0 = random_unit(rng)
        phi = rng.uniform(0.1, 3.0)
        n = int(rng.integers(1, 50))
        direct = np.linalg.matrix_power(so3.composite(math.pi / (2 * n), phi), n) @ r0
        np.testing.assert_allclose(so3.closed_form_rN(phi, n, r0), direct, atol=1e-12)


def test_closed_form_rN_rejects_trivial_control():
    for phi in (0.0, 2 * math.pi, -4 * math.pi):
        with pytest.raises(so3.DegenerateRotationError):
            so3.closed_form_rN(phi, 5)
    with pytest.raises(ValueError):
        so3.closed_form_rN(0.3, 5, [1.0, 1.0, 0.0])


def test_embed_examples():
    np.testing.assert_array_equal(so3.embed(E3), [0, 0, 1])
    np.testing.assert_array_equal(so3.embed([0, 1, 0]), [0, -1j, 0])


def test_embed_extract_round_trip(rng):
    for _ in range(100):
        r = random_unit(rng)
        np.testing.assert_allclose(so3.extract(so3.embed(r)), r, atol=1e-14, rtol=0)


def test_extract_rejects_complex_state():
    with pytest.raises(so3.NotRealRepresentableError):
        so3.extract([1j, 0, 0])
    with pytest.raises(so3.NotRealRepresentableError):
        so3.extract([0, 1, 0])  # physical |010> is i times the rotated basis ket


@given(angles, angles, seeds)
def test_map_equivalence(theta, phi, seed):
    r = random_unit(np.random.default_rng(seed))
    got = so3.extract(qp.step_propagator(theta, phi) @ so3.embed(r))
    np.testing.assert_allclose(got, so3.composite(theta, phi) @ r, atol=1e-11)


@given(angles, st.integers(min_value=1, max_value=200))
def test_survival_agreement(phi, n):
    aa = so3.axis_angle_of(math.pi / (2 * n), phi)
    c, nv = aa.c, n * aa.angle
    closed = ((1 - c * c) * math.cos(nv) + c * c) ** 2
    final = qp.evolve_n(qp.ProtocolParams.freezing(n, phi))
    assert abs(closed - qp.survival_probability(final)) < 1e-10


def test_sphere_trajectory_shape_and_norm():
    points, axis = so3.sphere_trajectory(math.pi / 16, 10)
    assert points.shape == (11, 3)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1, atol=1e-12)
    np.testing.assert_array_equal(points[0], E3)
    assert abs(np.linalg.norm(axis) - 1) < 1e-12


def test_sphere_trajectory_matches_iterated_product():
    n, phi = 20, math.pi / 8
    points, _ = so3.sphere_trajectory(phi, n)
    step = so3.composite(math.pi / (2 * n), phi)
    r = E3.copy()
    for k in range(1, n + 1):
        r = step @ r
        np.testing.assert_allclose(points[k], r, atol=1e-12)


def test_sphere_higher_n_stays_closer():
    dist = [np.linalg.norm(so3.sphere_trajectory(math.pi / 16, n)[0][-1] - E3) for n in (10, 20, 40)]
    assert dist[0] > dist[1] > dist[2]


def test_sphere_higher_phi_axis_closer_to_z():
    cz = [so3.sphere_trajectory(phi, 20)[1][2] for phi in (math.pi / 32, math.pi / 16, math.pi / 8)]
    assert cz[0] < cz[1] < cz[2]
