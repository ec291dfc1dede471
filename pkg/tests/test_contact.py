import numpy as np
import pytest

from kenmotsu.contact import (
    AlmostContactStructure,
    fundamental_two_form,
    flat_kaehler,
    kaehler_defects,
    KaehlerManifold,
    kenmotsu_defect,
    kenmotsu_from_kaehler,
    phi_basis,
    verify_almost_contact,
    verify_divergence,
    verify_kenmotsu,
)
from kenmotsu.errors import GeometryError, PreconditionError
from kenmotsu.geometry import ChartManifold, VectorField, _metric, random_field, sample_points


def test_example1_certificate(ken, pts5):
    S = ken.structure
    ac = verify_almost_contact(S, pts5)
    assert ac.passed and ac.max_residual < 1e-12
    km = verify_kenmotsu(S, pts5)
    assert km.passed
    assert set(km.details) == {"Eq.(4)", "Eq.(5)", "Eq.(6)"}
    assert all(v < 1e-9 for v in km.details.values())


def test_divergence_of_reeb_field(ken, pts5):
    rec = verify_divergence(ken.structure, pts5)
    assert rec.passed
    assert rec.details["expected"] == 4


def test_phi_basis_relations(ken):
    p = np.array([0.2, -0.1, 0.3, 0.5, 0.4])
    E = phi_basis(p)
    g = _metric(ken.manifold, p)
    np.testing.assert_allclose(E.T @ g @ E, np.eye(5), atol=1e-14)
    phi = ken.structure.phi_at(p)
    # φ∂x_i = ∂y_i, so φE3 = E1, φE4 = E2 and φE1 = −E3
    np.testing.assert_allclose(phi @ E[:, 2], E[:, 0])
    np.testing.assert_allclose(phi @ E[:, 3], E[:, 1])
    np.testing.assert_allclose(phi @ E[:, 0], -E[:, 2])
    np.testing.assert_allclose(phi @ E[:, 4], 0.0)


def test_two_form_is_skew(ken, rng):
    p = np.array([0.0, 0.1, -0.2, 0.3, -0.4])
    X, Y = rng.normal(size=5), rng.normal(size=5)
    S = ken.structure
    assert fundamental_two_form(S, p, X, Y) == pytest.approx(-fundamental_two_form(S, p, Y, X))


def test_flat_metric_with_same_phi_is_not_kenmotsu(ken):
    M = ChartManifold(5, (-1,) * 5, (1,) * 5, lambda p: np.eye(5), label="flat")
    old = ken.structure
    S = AlmostContactStructure(M, old.phi, old.xi, old.eta, label="flat control")
    pts = sample_points(M, 10, seed=1)
    assert verify_almost_contact(S, pts).passed
    assert not verify_kenmotsu(S, pts).passed


def test_defect_vanishes_for_coordinate_fields(ken):
    S = ken.structure
    p = np.array([0.1, 0.1, 0.1, 0.1, 0.1])
    for i in range(5):
        for j in range(5):
            Y = VectorField(lambda q, j=j: np.eye(5)[j])
            assert kenmotsu_defect(S, np.eye(5)[i], Y, p) < 1e-12


def test_structure_shape_validation(ken):
    with pytest.raises(GeometryError):
        AlmostContactStructure(ken.manifold, lambda p: np.eye(3), ken.structure.xi, ken.structure.eta)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_kenmotsu_from_flat_kaehler(k):
    K = kenmotsu_from_kaehler(flat_kaehler(k), s=2.0)
    S = K.structure
    pts = sample_points(S.manifold, 15, seed=2)
    assert verify_almost_contact(S, pts).passed
    assert verify_kenmotsu(S, pts).passed
    assert verify_divergence(S, pts).details["expected"] == 2 * k
    assert verify_divergence(S, pts).passed
    t = pts[0][0]
    np.testing.assert_allclose(_metric(S.manifold, pts[0])[1:, 1:], 4 * np.exp(2 * t) * np.eye(2 * k))


def test_kenmotsu_from_kaehler_preconditions():
    with pytest.raises(PreconditionError):
        kenmotsu_from_kaehler(flat_kaehler(1), s=0.0)
    L = flat_kaehler(1)
    rot = KaehlerManifold(L.manifold, lambda p: np.array([[0.0, -2.0], [0.5, 0.0]]))
    assert kaehler_defects(rot, sample_points(L.manifold, 3))["hermitian"] > 1.0
    with pytest.raises(PreconditionError):
        kenmotsu_from_kaehler(rot)


def test_random_field_defect_is_small_on_constructed_structure(rng):
    S = kenmotsu_from_kaehler(flat_kaehler(2)).structure
    p = S.manifold.center() + 0.1
    X, Y = random_field(rng, 5), random_field(rng, 5)
    assert kenmotsu_defect(S, X, Y, p) < 1e-9
