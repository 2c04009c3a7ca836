import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curved_nbody.errors import DegeneratePointError, DimensionMismatchError
from curved_nbody.geometry import (
    H2,
    H3,
    S2,
    S3,
    SingularityKind,
    SpaceSpec,
    constraint_residual,
    inner,
    metric_signs,
    pair_singularity,
    project_point,
    project_state,
    random_isometry,
    space_from_name,
    validate_point,
    validate_tangent,
)

ULP = np.finfo(float).eps


def test_space_names_and_lookup():
    assert S2.name == "S2" and H3.name == "H3"
    assert space_from_name("h2") is H2
    assert space_from_name("S3") is S3
    with pytest.raises(ValueError):
        space_from_name("E3")


def test_space_spec_rejects_bad_parameters():
    with pytest.raises(ValueError):
        SpaceSpec(5, 1)
    with pytest.raises(ValueError):
        SpaceSpec(3, 0)


def test_metric_signs():
    assert metric_signs(S3).tolist() == [1, 1, 1, 1]
    assert metric_signs(H3).tolist() == [1, 1, 1, -1]


def test_inner_euclidean_and_lorentz():
    u, v = np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0])
    assert inner(u, v, S2) == 32.0
    # same numbers, minus sign on the last coordinate
    assert inner(u, v, H2) == -4.0


def test_inner_broadcasts():
    pts = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    out = inner(pts, pts, H2)
    assert out.shape == (2,)
    assert out.tolist() == [1.0, -1.0]


def test_inner_rejects_wrong_dimension():
    with pytest.raises(DimensionMismatchError):
        inner(np.zeros(4), np.zeros(4), S2)


def test_constraint_residual_values():
    # sphere point scaled 10% out: |p|^2 - 1 = 0.21
    assert constraint_residual(np.array([0.0, 0.0, 1.1]), S2) == pytest.approx(0.21, abs=1e-15)
    p = np.array([0.6, 0.0, np.sqrt(1.36)])
    assert abs(constraint_residual(p, H2)) < 4 * ULP


def test_project_point_sphere():
    q = project_point(np.array([3.0, 4.0, 0.0]), S2)
    np.testing.assert_allclose(q, [0.6, 0.8, 0.0], rtol=0, atol=2 * ULP)


def test_project_point_flips_to_upper_sheet():
    q = project_point(np.array([0.6, 0.0, -np.sqrt(1.36)]), H2)
    assert q[-1] > 0
    assert abs(constraint_residual(q, H2)) < 4 * ULP


def test_project_point_degenerate_inputs():
    # null vector of the Lorentz product: no rescaling reaches the quadric
    with pytest.raises(DegeneratePointError):
        project_point(np.array([0.3, 0.4, 0.5]), H2)
    # spacelike vector cannot be projected onto the hyperboloid
    with pytest.raises(DegeneratePointError):
        project_point(np.array([1.0, 0.0, 0.1]), H2)
    with pytest.raises(DegeneratePointError):
        project_point(np.zeros(3), S2)


def test_project_state_gives_tangent_pair():
    p = np.array([0.3, -1.2, 2.0])
    v = np.array([1.0, 1.0, 1.0])
    q, vt = project_state(p, v, H2)
    assert abs(constraint_residual(q, H2)) < 4 * ULP
    assert abs(inner(q, vt, H2)) < 4 * ULP


def test_pair_singularity_classification():
    e = np.array([0.0, 0.0, 1.0])
    near = project_point(e + np.array([1e-12, 0.0, 0.0]), S2)
    assert pair_singularity(e, near, S2) is SingularityKind.COLLISION
    assert pair_singularity(e, -e, S2) is SingularityKind.ANTIPODAL
    assert pair_singularity(e, np.array([1.0, 0.0, 0.0]), S2) is SingularityKind.NONE
    # hyperboloid has no antipodal pairs on one sheet
    h = np.array([0.0, 0.0, 1.0])
    assert pair_singularity(h, h.copy(), H2) is SingularityKind.COLLISION
    far = project_point(np.array([5.0, 0.0, 6.0]), H2)
    assert pair_singularity(h, far, H2) is SingularityKind.NONE


def test_validate_point_checks_sheet_and_residual():
    with pytest.raises(ValueError, match="upper sheet"):
        validate_point(np.array([0.0, 0.0, -1.0]), H2)
    with pytest.raises(ValueError, match="residual"):
        validate_point(np.array([0.0, 0.0, 1.1]), S2)
    validate_point(np.array([0.0, 0.0, 1.0]), H2)


def test_validate_tangent():
    p = np.array([0.0, 0.0, 1.0])
    validate_tangent(p, np.array([3.0, 4.0, 0.0]), H2)
    with pytest.raises(ValueError, match="tangent"):
        validate_tangent(p, np.array([0.0, 0.0, 0.5]), H2)


@pytest.mark.parametrize("space", [S2, S3, H2, H3], ids=lambda s: s.name)
def test_random_isometry_preserves_product_and_sheet(space):
    rng = np.random.default_rng(7)
    for _ in range(10):
        mat = random_isometry(space, rng)
        u = rng.standard_normal(space.ambient_dim)
        v = rng.standard_normal(space.ambient_dim)
        assert inner(mat @ u, mat @ v, space) == pytest.approx(
            inner(u, v, space), rel=0, abs=1e-12
        )
        if space.sigma < 0:
            p = rng.standard_normal(space.ambient_dim)
            p[-1] = np.sqrt(1.0 + p[:-1] @ p[:-1])
            assert (mat @ p)[-1] > 0


# -- property tests ----------------------------------------------------------

finite = st.floats(-2.0, 2.0, allow_nan=False)


@st.composite
def offquadric_vector(draw, space):
    """A vector whose self product has the right sign and magnitude in [0.5, 2]."""
    spatial = draw(st.lists(finite, min_size=space.ambient_dim - 1,
                            max_size=space.ambient_dim - 1))
    target = draw(st.floats(0.5, 2.0)) * space.sigma
    spatial = np.asarray(spatial)
    if space.sigma > 0:
        n2 = spatial @ spatial
        if n2 < target:
            last = np.sqrt(target - n2)
        else:
            spatial = spatial * np.sqrt(target / n2) * draw(st.sampled_from([0.6, 0.9]))
            last = np.sqrt(target - spatial @ spatial)
    else:
        last = np.sqrt(spatial @ spatial - target)
    sign = draw(st.sampled_from([-1.0, 1.0]))
    return np.concatenate([spatial, [sign * last]])


@settings(max_examples=60, deadline=None)
@given(st.data())
@pytest.mark.parametrize("space", [S2, H2, S3, H3], ids=lambda s: s.name)
def test_projection_lands_on_quadric_and_is_idempotent(space, data):
    p = data.draw(offquadric_vector(space))
    q = project_point(p, space)
    scale = max(1.0, float(q @ q))  # hyperboloid points have coordinates > 1
    assert abs(constraint_residual(q, space)) <= 4 * ULP * scale
    q2 = project_point(q, space)
    # rescaling by 1/sqrt(|inner|) wobbles each coordinate by at most
    # |q|_inf times the rounding error of the Euclidean-sized self product
    assert np.abs(q2 - q).max() <= 2 * ULP * scale * max(1.0, np.abs(q).max())


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(0, 2**32 - 1))
@pytest.mark.parametrize("space", [S2, H3], ids=lambda s: s.name)
def test_inner_is_isometry_invariant(space, data, seed):
    p = data.draw(offquadric_vector(space))
    v = np.asarray(data.draw(st.lists(finite, min_size=space.ambient_dim,
                                      max_size=space.ambient_dim)))
    mat = random_isometry(space, np.random.default_rng(seed))
    before = inner(p, v, space)
    after = inner(mat @ p, mat @ v, space)
    assert after == pytest.approx(before, rel=0, abs=1e-11)
