import numpy as np
import pytest

from curved_nbody.dynamics import (
    Body,
    SystemState,
    acceleration,
    angular_momentum,
    eom_residual,
    force_function,
    gravitational_acceleration,
    kinetic_energy,
    momentum_planes,
    pair_inner_matrix,
    total_energy,
    transform,
)
from curved_nbody.errors import SingularPairError
from curved_nbody.geometry import (
    H2,
    H3,
    S2,
    S3,
    SingularityKind,
    inner,
    metric_signs,
    project_point,
    random_isometry,
)

SPACES = [S2, S3, H2, H3]


def random_state(space, n=3, seed=0, min_base=0.2, speed=0.7):
    """A well-separated random state: all pair denominators bounded below."""
    rng = np.random.default_rng(seed)
    dim = space.ambient_dim
    g = metric_signs(space)
    while True:
        if space.sigma > 0:
            q = project_point(rng.standard_normal((n, dim)), space)
        else:
            spatial = 0.8 * rng.standard_normal((n, dim - 1))
            q = np.concatenate(
                [spatial, np.sqrt(1.0 + (spatial**2).sum(axis=1))[:, None]], axis=1
            )
        d = (q * g) @ q.T
        base = space.sigma - space.sigma * d * d
        off = ~np.eye(n, dtype=bool)
        if base[off].min() < min_base:
            continue
        raw = speed * rng.standard_normal((n, dim))
        v = raw - space.sigma * inner(q, raw, space)[:, None] * q
        m = rng.uniform(0.5, 2.0, n)
        return SystemState.create(space, m, q, v)


def two_body_state(space, p1, p2, v1=None, v2=None, m=(1.0, 1.0)):
    z = np.zeros(space.ambient_dim)
    return SystemState.create(
        space, np.array(m), np.array([p1, p2]),
        np.array([v1 if v1 is not None else z, v2 if v2 is not None else z]),
    )


# -- energies ----------------------------------------------------------------

def test_force_function_two_body_values():
    # hyperbolic pair at pair product -2: U = 2 / sqrt(3)
    st = two_body_state(H2, [0.0, 0.0, 1.0], [np.sqrt(3.0), 0.0, 2.0])
    assert force_function(st) == pytest.approx(2.0 / np.sqrt(3.0), rel=1e-15)
    # spherical pair at right angle: the cotangent-like term vanishes
    st = two_body_state(S2, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    assert force_function(st) == 0.0
    # spherical pair at pair product 1/2: U = (1/2) / sqrt(3/4)
    st = two_body_state(S2, [1.0, 0.0, 0.0], [0.5, np.sqrt(0.75), 0.0])
    assert force_function(st) == pytest.approx(1.0 / np.sqrt(3.0), rel=1e-15)


def test_kinetic_energy_is_positive_in_both_signs():
    v = [3.0, 4.0, 0.0]
    st = two_body_state(H2, [0.0, 0.0, 1.0], [np.sqrt(3.0), 0.0, 2.0], v1=v)
    assert kinetic_energy(st) == pytest.approx(12.5, rel=1e-15)
    st = two_body_state(S2, [0.0, 0.0, 1.0], [1.0, 0.0, 0.0], v1=v)
    assert kinetic_energy(st) == pytest.approx(12.5, rel=1e-15)


def test_total_energy_combines_both_parts():
    v = [3.0, 4.0, 0.0]
    st = two_body_state(H2, [0.0, 0.0, 1.0], [np.sqrt(3.0), 0.0, 2.0], v1=v)
    assert total_energy(st) == pytest.approx(12.5 - 2.0 / np.sqrt(3.0), rel=1e-15)


def test_pair_inner_matrix_shape_and_diagonal():
    st = random_state(H3, n=4, seed=3)
    d = pair_inner_matrix(st)
    assert d.shape == (4, 4)
    np.testing.assert_allclose(np.diag(d), -1.0, rtol=0, atol=1e-12)
    np.testing.assert_allclose(d, d.T, rtol=0, atol=1e-15)


# -- the acceleration field --------------------------------------------------

def test_two_body_acceleration_exact():
    st = two_body_state(S2, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    np.testing.assert_allclose(
        acceleration(st), [[0.0, 1.0, 0.0], [1.0, 0.0, 0.0]], rtol=0, atol=1e-15
    )
    st = two_body_state(H2, [0.0, 0.0, 1.0], [np.sqrt(3.0), 0.0, 2.0])
    expected = np.array([
        [1.0 / 3.0, 0.0, 0.0],
        [-2.0 / 3.0, 0.0, -1.0 / np.sqrt(3.0)],
    ])
    np.testing.assert_allclose(acceleration(st), expected, rtol=1e-15, atol=1e-15)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_acceleration_is_tangent_with_curvature_reaction(space):
    # q . qdd = -(qd . qd) holds pointwise, which keeps motion on the quadric
    st = random_state(space, n=4, seed=11)
    acc = acceleration(st)
    lhs = inner(st.positions, acc, space)
    rhs = -inner(st.velocities, st.velocities, space)
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_zero_velocity_acceleration_is_purely_gravitational(space):
    st = random_state(space, n=3, seed=5)
    st.velocities[:] = 0.0
    np.testing.assert_allclose(
        acceleration(st), gravitational_acceleration(st), rtol=0, atol=0
    )


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_angular_momentum_is_instantaneously_conserved(space):
    # d/dt of every plane momentum is sum_i m_i (a_i b.._i - b_i a.._i);
    # it must vanish identically for the true acceleration field
    st = random_state(space, n=4, seed=23)
    acc = acceleration(st)
    m, q = st.masses, st.positions
    names = space.coordinate_names
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            rate = np.sum(m * (q[:, a] * acc[:, b] - q[:, b] * acc[:, a]))
            assert abs(rate) < 1e-12, f"plane {names[a]}{names[b]}"


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_acceleration_is_isometry_equivariant(space):
    st = random_state(space, n=4, seed=31)
    rng = np.random.default_rng(501)
    for _ in range(5):
        mat = random_isometry(space, rng)
        direct = acceleration(transform(st, mat))
        moved = acceleration(st) @ mat.T
        assert np.abs(direct - moved).max() < 1e-12


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_gravitational_part_matches_projected_finite_difference(space):
    """The pairwise sum equals the metric-signed gradient of U after
    re-projection, divided by the body mass."""
    st = random_state(space, n=3, seed=47)
    sigma = space.sigma
    g = metric_signs(space)

    def potential(P):
        total = 0.0
        for i in range(len(P)):
            for j in range(i + 1, len(P)):
                d = np.sum(P[i] * P[j] * g)
                total += sigma * st.masses[i] * st.masses[j] * d / np.sqrt(
                    sigma - sigma * d * d
                )
        return total

    step = 1e-6
    grav = gravitational_acceleration(st)
    for i in range(st.n_bodies):
        fd = np.zeros(space.ambient_dim)
        for k in range(space.ambient_dim):
            for s in (+1.0, -1.0):
                P = st.positions.copy()
                P[i, k] += s * step
                P[i] = project_point(P[i], space)
                fd[k] += s * potential(P)
        fd /= 2.0 * step
        claim = g * fd / st.masses[i]
        assert np.abs(claim - grav[i]).max() < 1e-5


def _rotating_square_state(space, r, omega):
    """Four equal bodies on the corners of a square, spinning in the x-y plane."""
    sigma = space.sigma
    last = np.sqrt(1.0 - sigma * r * r)  # height that puts the corners on the quadric
    angles = np.pi / 4 + np.pi / 2 * np.arange(4)
    q = np.stack([r * np.cos(angles), r * np.sin(angles), np.full(4, last)], axis=1)
    v = omega * np.stack([-q[:, 1], q[:, 0], np.zeros(4)], axis=1)
    return SystemState.create(space, np.ones(4), q, v)


@pytest.mark.parametrize(
    "space,r,omega_sq",
    [
        (S2, 0.8, 4.723489093375404),
        (H2, 1.3, 0.1542199910021835),
    ],
    ids=["S2", "H2"],
)
def test_rotating_square_satisfies_equations_of_motion(space, r, omega_sq):
    # independent route to the spin rate: equal-mass square at circle radius r
    sigma = space.sigma
    d_adjacent = sigma - r * r
    d_diagonal = sigma - 2.0 * r * r
    base_adj = sigma - sigma * d_adjacent**2
    base_diag = sigma - sigma * d_diagonal**2
    w2 = 2.0 * (base_adj**-1.5 + base_diag**-1.5)
    assert w2 == pytest.approx(omega_sq, rel=1e-13)

    st = _rotating_square_state(space, r, np.sqrt(w2))
    claim = -w2 * np.stack(
        [st.positions[:, 0], st.positions[:, 1], np.zeros(4)], axis=1
    )
    assert eom_residual(st, claim) < 1e-10


def test_eom_residual_detects_a_wrong_claim():
    st = random_state(S3, n=3, seed=2)
    acc = acceleration(st)
    assert eom_residual(st, acc) == 0.0
    acc[1, 2] += 1e-6
    assert eom_residual(st, acc) == pytest.approx(1e-6, rel=1e-6)
    with pytest.raises(ValueError):
        eom_residual(st, acc[:2])


# -- singular pairs and validation -------------------------------------------

def test_collision_raises_with_pair_and_kind():
    p = project_point(np.array([0.4, 0.5, 1.0]), S2)
    nudged = project_point(p + 1e-11, S2)
    with pytest.raises(SingularPairError) as info:
        two_body_state(S2, p, nudged)
    assert (info.value.i, info.value.j) == (0, 1)
    assert info.value.kind is SingularityKind.COLLISION


def test_antipodal_pair_raises_on_the_sphere():
    p = project_point(np.array([0.4, 0.5, 1.0]), S2)
    with pytest.raises(SingularPairError) as info:
        two_body_state(S2, p, -p)
    assert info.value.kind is SingularityKind.ANTIPODAL


def test_acceleration_guard_on_near_singular_drifted_state():
    # the trusting constructor accepts a near-collision; the force kernel must not
    p = project_point(np.array([0.4, 0.5, 1.0]), S2)
    nudged = project_point(p + 1e-11, S2)
    st = SystemState(S2, np.ones(2), np.stack([p, nudged]),
                     np.zeros((2, 3)))
    with pytest.raises(SingularPairError):
        acceleration(st)


def test_create_rejects_bad_input():
    q = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    v = np.zeros((2, 3))
    with pytest.raises(ValueError, match="positive"):
        SystemState.create(S2, [1.0, -1.0], q, v)
    with pytest.raises(ValueError, match="shape"):
        SystemState.create(S2, [1.0, 1.0], q[:, :2], v)
    with pytest.raises(ValueError, match="two bodies"):
        SystemState.create(S2, [1.0], q[:1], v[:1])
    with pytest.raises(ValueError, match="quadric"):
        SystemState.create(S2, [1.0, 1.0], 1.1 * q, v)
    with pytest.raises(ValueError, match="tangent"):
        SystemState.create(S2, [1.0, 1.0], q, np.ones((2, 3)))


def test_from_bodies_and_bodies_round_trip():
    st = random_state(S3, n=3, seed=9)
    again = SystemState.from_bodies(S3, st.bodies, time=st.time)
    np.testing.assert_array_equal(again.positions, st.positions)
    np.testing.assert_array_equal(again.velocities, st.velocities)
    np.testing.assert_array_equal(again.masses, st.masses)
    assert isinstance(st.bodies[0], Body)


# -- bookkeeping --------------------------------------------------------------

def test_momentum_plane_labels():
    assert momentum_planes(S2) == ["xy", "xz", "yz"]
    assert momentum_planes(H3) == ["wx", "wy", "wz", "xy", "xz", "yz"]


def test_angular_momentum_of_rotating_square():
    st = _rotating_square_state(S2, 0.8, 2.0)
    c = angular_momentum(st)
    # four unit masses on a circle of radius 0.8 spinning at rate 2
    assert c["xy"] == pytest.approx(4 * 0.8**2 * 2.0, rel=1e-14)
    assert c["xz"] == pytest.approx(0.0, abs=1e-14)
    assert c["yz"] == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.name)
def test_energy_is_isometry_invariant(space):
    st = random_state(space, n=3, seed=13)
    mat = random_isometry(space, np.random.default_rng(99))
    assert total_energy(transform(st, mat)) == pytest.approx(
        total_energy(st), rel=0, abs=1e-11
    )
