import numpy as np
import pytest

from eudoxus.cone_space import ConeSpace, Membership, sym_to_vec
from eudoxus.face_lattice import (
    face_of,
    facial_derivative,
    incomparable,
    is_facially_homogeneous,
    is_minimal,
    is_riesz,
    minimal_decomposition,
    orthogonal_face,
    whole_face,
    zero_face,
)


def all_kinds():
    return [
        ConeSpace.orthant(3),
        ConeSpace.lorentz(3),
        ConeSpace.psd_real(2),
        ConeSpace.hermitian(2),
    ]


def test_orthant_face_is_support():
    sp = ConeSpace.orthant(4)
    F = face_of(sp, np.array([1.0, 0.0, 2.0, 0.0]))
    assert F.dim == 2
    assert np.allclose(F.projector, np.diag([1.0, 0.0, 1.0, 0.0]))
    G = orthogonal_face(F)
    assert G.dim == 2
    assert np.allclose(F.projector @ G.projector, 0.0, atol=1e-12)


def test_interior_point_gives_whole_face():
    for sp in all_kinds():
        F = face_of(sp, sp.canonical_unit())
        assert F.is_whole
        assert orthogonal_face(F).is_zero


def test_zero_gives_zero_face():
    sp = ConeSpace.orthant(3)
    assert face_of(sp, np.zeros(3)).is_zero
    assert zero_face(sp).dim == 0
    assert whole_face(sp).dim == 3


def test_lorentz_boundary_ray_face():
    sp = ConeSpace.lorentz(3)
    x = np.array([1.0, 1.0, 0.0])
    F = face_of(sp, x)
    assert F.dim == 1
    assert F.contains(x)
    G = orthogonal_face(F)
    assert G.dim == 1
    assert G.contains(np.array([1.0, -1.0, 0.0]))


def test_psd_face_from_rank():
    sp = ConeSpace.psd_real(2)
    F = face_of(sp, sym_to_vec(np.diag([1.0, 0.0])))
    assert F.dim == 1
    G = orthogonal_face(F)
    assert G.contains(sym_to_vec(np.diag([0.0, 1.0])))


def test_face_projector_is_idempotent_and_symmetric():
    rng = np.random.default_rng(2)
    for sp in all_kinds():
        for _ in range(20):
            F = face_of(sp, sp.sample_cone_point(rng))
            P = F.projector
            assert np.allclose(P @ P, P, atol=1e-9)
            assert np.allclose(P, P.T, atol=1e-12)


def test_facial_derivative_formula_and_spectrum():
    sp = ConeSpace.orthant(3)
    F = face_of(sp, np.array([1.0, 1.0, 0.0]))
    d = facial_derivative(F)
    P = F.projector
    Q = orthogonal_face(F).projector
    assert np.allclose(d.mat, 0.5 * (np.eye(3) + P - Q), atol=1e-12)
    assert np.allclose(sorted(np.linalg.eigvalsh(d.mat)), [0.0, 1.0, 1.0], atol=1e-12)


def test_facial_derivative_acts_as_expected():
    # identity on the face, zero on the orthogonal face, one half between
    sp = ConeSpace.lorentz(3)
    x = np.array([1.0, 1.0, 0.0])
    F = face_of(sp, x)
    d = facial_derivative(F)
    assert np.allclose(d(x), x, atol=1e-9)
    assert np.allclose(d(np.array([1.0, -1.0, 0.0])), 0.0, atol=1e-9)
    assert np.allclose(d(np.array([0.0, 0.0, 1.0])), [0.0, 0.0, 0.5], atol=1e-9)


def test_incomparable():
    sp = ConeSpace.orthant(3)
    assert incomparable(sp, np.array([1.0, 0.0, 0.0]), np.array([0.0, 2.0, 0.0]))
    assert not incomparable(sp, np.array([1.0, 1.0, 0.0]), np.array([0.0, 2.0, 0.0]))


def test_minimal_decomposition_lorentz_example():
    sp = ConeSpace.lorentz(3)
    parts = minimal_decomposition(sp, np.array([2.0, 1.0, 0.0]))
    assert len(parts) == 2
    got = {(round(c, 9), tuple(np.round(v, 9))) for c, v in parts}
    assert got == {(3.0, (0.5, 0.5, 0.0)), (1.0, (0.5, -0.5, 0.0))}


def test_minimal_decomposition_properties():
    rng = np.random.default_rng(11)
    for sp in all_kinds():
        for _ in range(20):
            a = sp.sample_cone_point(rng)
            parts = minimal_decomposition(sp, a)
            total = sum(c * v for c, v in parts)
            assert np.allclose(total, a, atol=1e-8 * max(1.0, np.linalg.norm(a)))
            for c, v in parts:
                assert c > 0
                assert is_minimal(sp, v)
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    assert incomparable(sp, parts[i][1], parts[j][1])


def test_is_minimal():
    sp = ConeSpace.orthant(3)
    assert is_minimal(sp, np.array([0.0, 3.0, 0.0]))
    assert not is_minimal(sp, np.array([1.0, 1.0, 0.0]))


def test_riesz_classification():
    assert is_riesz(ConeSpace.orthant(3))[0]
    assert is_riesz(ConeSpace.lorentz(2))[0]
    assert is_riesz(ConeSpace.psd_real(1))[0]
    assert not is_riesz(ConeSpace.psd_real(2))[0]
    assert not is_riesz(ConeSpace.lorentz(3))[0]
    assert not is_riesz(ConeSpace.hermitian(2))[0]


def test_riesz_failure_witness_is_concrete():
    for sp in (ConeSpace.psd_real(2), ConeSpace.lorentz(3)):
        ok, witness = is_riesz(sp)
        assert not ok
        assert witness is not None
        a, c, x = witness["a"], witness["c"], witness["x"]
        assert sp.membership(a) is not Membership.OUTSIDE
        assert sp.membership(c) is not Membership.OUTSIDE
        # x lies in the face of a + c but outside face(a) + face(c)
        assert face_of(sp, a + c).contains(x)
        span = np.column_stack([face_of(sp, a).projector,
                                face_of(sp, c).projector])
        coef, _, _, _ = np.linalg.lstsq(span, x, rcond=None)
        assert np.linalg.norm(span @ coef - x) > 1e-3


def test_facial_homogeneity():
    assert is_facially_homogeneous(ConeSpace.orthant(3))
    assert is_facially_homogeneous(ConeSpace.psd_real(2))
    assert is_facially_homogeneous(ConeSpace.lorentz(3))


def test_face_contains_rejects_outside_points():
    sp = ConeSpace.orthant(3)
    F = face_of(sp, np.array([1.0, 1.0, 0.0]))
    assert F.contains(np.array([2.0, 1.0, 0.0]))
    assert not F.contains(np.array([0.0, 0.0, 1.0]))
    assert not F.contains(np.array([1.0, -1.0, 0.0]))
