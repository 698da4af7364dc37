import pytest

from skh.chain import (
    BigradedComplex,
    CubeOfComplexes,
    FaceCommutationError,
    GradedChainMap,
    cone,
    mcone,
    nu,
    shift,
    verify_chain_map,
    verify_complex,
)
from skh.gf2 import F2Matrix
from skh.homology import betti
from skh.polynomial import LaurentPoly, euler_characteristic


def one_generator(i: int, j: int, tag="g") -> BigradedComplex:
    return BigradedComplex(dims={(i, j): 1}, diff={}, basis={(i, j): (tag,)})


def two_term_identity(i: int, j: int) -> BigradedComplex:
    """One generator at (i, j) mapping isomorphically to (i+1, j)."""
    return BigradedComplex(
        dims={(i, j): 1, (i + 1, j): 1},
        diff={(i, j): F2Matrix.identity(1)},
        basis={(i, j): ("a",), (i + 1, j): ("b",)},
    )


def test_nu_formula():
    assert nu(2, {1, 3, 5}) == 2
    assert nu(5, {1, 3, 5}) == 0
    assert nu(0, set()) == 0


def test_shift_identity_and_involution():
    x = two_term_identity(0, 0)
    assert shift(x, 0, 0) == x
    assert shift(shift(x, 2, -3), -2, 3) == x


def test_shift_relocates():
    x = one_generator(0, 0)
    y = shift(x, 1, 2)
    assert y.dims == {(1, 2): 1}


def test_verify_complex_rejects_corruption():
    good = BigradedComplex(
        dims={(0, 0): 1, (1, 0): 1, (2, 0): 1},
        diff={(0, 0): F2Matrix.identity(1), (1, 0): F2Matrix.zeros(1, 1)},
        basis={(0, 0): ("a",), (1, 0): ("b",), (2, 0): ("c",)},
    )
    assert verify_complex(good)
    bad = BigradedComplex(
        dims=dict(good.dims),
        diff={(0, 0): F2Matrix.identity(1), (1, 0): F2Matrix.identity(1)},
        basis=dict(good.basis),
    )
    assert not verify_complex(bad)
    assert verify_complex(BigradedComplex())


def test_cone_of_identity_is_acyclic():
    x = one_generator(0, 0, "x")
    y = one_generator(0, 0, "y")
    f = GradedChainMap(x, y, {(0, 0): F2Matrix.identity(1)})
    c = cone(f)
    assert c.complex.dim(-1, 0) == 1 and c.complex.dim(0, 0) == 1
    assert verify_complex(c.complex)
    assert betti(c.complex) == {}


def test_cone_of_zero_is_direct_sum():
    x = one_generator(0, 0, "x")
    y = one_generator(0, 0, "y")
    f = GradedChainMap(x, y, {})
    c = cone(f)
    assert c.complex.dim(-1, 0) == 1 and c.complex.dim(0, 0) == 1
    assert betti(c.complex) == {(-1, 0): 1, (0, 0): 1}


def test_cone_dimension_formula():
    x = two_term_identity(0, 0)
    y = two_term_identity(0, 0)
    f = GradedChainMap(x, y, {(0, 0): F2Matrix.identity(1),
                              (1, 0): F2Matrix.identity(1)})
    c = cone(f)
    for (i, j) in {(-1, 0), (0, 0), (1, 0)}:
        assert c.complex.dim(i, j) == y.dim(i, j) + x.dim(i + 1, j)


def test_cone_structural_maps_are_chain_maps():
    x = two_term_identity(0, 5)
    y = two_term_identity(0, 5)
    f = GradedChainMap(x, y, {(0, 5): F2Matrix.identity(1),
                              (1, 5): F2Matrix.identity(1)})
    c = cone(f)
    assert verify_chain_map(c.inclusion)
    assert verify_chain_map(c.projection)
    assert c.projection.target == shift(x, -1, 0)


def test_cone_euler_identity():
    # chi(X) - chi(Y) + chi(Cone(f)) = 0 on homology
    x = one_generator(1, 2, "x")
    y = two_term_identity(0, 2)
    f = GradedChainMap(x, y, {(1, 2): F2Matrix.identity(1)})
    assert verify_chain_map(f)
    c = cone(f)
    chi_x = euler_characteristic(betti(x))
    chi_y = euler_characteristic(betti(y))
    chi_c = euler_characteristic(betti(c.complex))
    assert chi_x - chi_y + chi_c == LaurentPoly.zero()


def test_mcone_r0_is_vertex():
    x = two_term_identity(0, 0)
    assert mcone(CubeOfComplexes(0, {0: x}, {})) == x


def test_mcone_r1_equals_cone():
    x = two_term_identity(0, 1)
    y = two_term_identity(0, 1)
    f = GradedChainMap(x, y, {(0, 1): F2Matrix.identity(1),
                              (1, 1): F2Matrix.identity(1)})
    cube = CubeOfComplexes(1, {0: x, 1: y}, {(0, 0): f})
    assert mcone(cube) == cone(f).complex


def test_mcone_r2_identity_edges_acyclic():
    verts = {mask: one_generator(0, 0, f"v{mask}") for mask in range(4)}
    eye = F2Matrix.identity(1)
    edges = {
        (0, 0): GradedChainMap(verts[0], verts[1], {(0, 0): eye}),
        (0, 1): GradedChainMap(verts[0], verts[2], {(0, 0): eye}),
        (1, 1): GradedChainMap(verts[1], verts[3], {(0, 0): eye}),
        (2, 0): GradedChainMap(verts[2], verts[3], {(0, 0): eye}),
    }
    cube = CubeOfComplexes(2, verts, edges)
    total = mcone(cube)
    assert verify_complex(total)
    assert total.dim(-2, 0) == 1 and total.dim(-1, 0) == 2 and total.dim(0, 0) == 1
    assert betti(total) == {}


def test_mcone_checks_face_commutation():
    verts = {mask: one_generator(0, 0, f"v{mask}") for mask in range(4)}
    eye = F2Matrix.identity(1)
    zero = F2Matrix.zeros(1, 1)
    edges = {
        (0, 0): GradedChainMap(verts[0], verts[1], {(0, 0): eye}),
        (0, 1): GradedChainMap(verts[0], verts[2], {(0, 0): eye}),
        (1, 1): GradedChainMap(verts[1], verts[3], {(0, 0): eye}),
        (2, 0): GradedChainMap(verts[2], verts[3], {(0, 0): zero}),
    }
    cube = CubeOfComplexes(2, verts, edges)
    with pytest.raises(FaceCommutationError):
        mcone(cube)


def test_mcone_vanishing_criterion():
    # every edge along axis 0 a quasi-isomorphism forces acyclicity
    a = two_term_identity(0, 0)

    def vert(tag):
        return BigradedComplex(
            dims=dict(a.dims), diff=dict(a.diff),
            basis={k: tuple(f"{tag}{t}" for t in v) for k, v in a.basis.items()},
        )

    verts = {m: vert(f"v{m}") for m in range(4)}
    eye2 = {(0, 0): F2Matrix.identity(1), (1, 0): F2Matrix.identity(1)}
    edges = {
        (0, 0): GradedChainMap(verts[0], verts[1], dict(eye2)),
        (0, 1): GradedChainMap(verts[0], verts[2], dict(eye2)),
        (1, 1): GradedChainMap(verts[1], verts[3], dict(eye2)),
        (2, 0): GradedChainMap(verts[2], verts[3], dict(eye2)),
    }
    total = mcone(CubeOfComplexes(2, verts, edges))
    assert verify_complex(total)
    assert betti(total) == {}


def test_verify_chain_map_zero_and_random():
    x = two_term_identity(0, 0)
    y = two_term_identity(0, 0)
    assert verify_chain_map(GradedChainMap(x, y, {}))
    bad = GradedChainMap(x, y, {(1, 0): F2Matrix.identity(1)})
    assert not verify_chain_map(bad)
