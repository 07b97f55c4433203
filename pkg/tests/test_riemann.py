import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zndpiston import hugoniot, riemann
from zndpiston.errors import DomainError


@pytest.fixture
def ref(bg):
    return riemann.ReferenceState.from_locus(1.4, bg)


ball = st.tuples(*[st.floats(-0.057, 0.057)] * 3)


@settings(max_examples=100, deadline=None)
@given(ball)
def test_left_eigenvectors(bg, phi):
    ref = riemann.ReferenceState.from_locus(1.4, bg)
    A = riemann.transformed_matrix(ref, phi)
    b2, b3 = riemann.coupling_coeffs(ref, phi)
    lam1, _, lam3 = riemann.eigenvalues(ref, phi[1])
    for row, lam in (((1.0, b2, b3), lam1), ((b3, b2, 1.0), lam3)):
        row = np.array(row)
        assert np.max(np.abs(row @ A - lam * row)) < 1e-10


def test_entropy_row_is_stationary(ref):
    A = riemann.transformed_matrix(ref, (0.02, -0.01, 0.03))
    assert np.allclose(A[1], 0.0)


def test_diagonal_at_background(ref):
    A = riemann.transformed_matrix(ref, (0.0, 0.0, 0.0))
    lam = ref.lambda_b
    assert np.allclose(A, np.diag([-lam, 0.0, lam]), atol=1e-14)
    assert riemann.coupling_coeffs(ref, (0.0, 0.0, 0.0)) == (0.0, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.tuples(*[st.floats(-0.1, 0.1)] * 3))
def test_roundtrip(bg, pert):
    ref = riemann.ReferenceState.from_locus(1.4, bg)
    phi = riemann.to_diagonal(ref, riemann.Perturbation(*pert))
    nu, s, u = riemann.from_diagonal(ref, phi)
    assert (nu - ref.nu_i, s - ref.s_i, u - ref.u_i) == pytest.approx(pert, abs=1e-12)


def test_scaling(up, bg):
    maps = hugoniot.boundary_maps(up, bg)
    sc = riemann.choose_scaling(maps)
    assert abs(maps.h10) < sc.alpha < 1
    assert 0 < sc.beta < 1 / abs(maps.h20)
    phi = (0.1, 0.2, 0.3)
    assert riemann.unscale(sc, riemann.scale(sc, phi)) == pytest.approx(phi, rel=1e-15)


def test_scaling_caps_beta():
    maps = hugoniot.BoundaryMaps(h10=0.1, h20=0.0, kmat=((1, 0), (0, 1)), kt11=2.0, det_k=1.0)
    sc = riemann.choose_scaling(maps)
    assert sc.beta_capped and sc.beta == riemann.BETA_MAX


def test_reference_requires_compressed_state():
    with pytest.raises(DomainError):
        riemann.ReferenceState(1.4, 1.2, 0.0, 1.0)
