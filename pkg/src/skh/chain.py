"""Bigraded chain complexes over GF(2), cones, and cube totalizations.

A complex stores, per bidegree (i, j), a dimension, an ordered tuple of
opaque basis tags, and the differential block into (i+1, j).  The
quantum grading j is preserved by differentials and by chain maps, so
everything is block-banded in j.  Over GF(2) the cube sign function
(-1)^nu is identically 1; ``nu`` is still exposed so tests can pin the
combinatorial formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .gf2 import F2Matrix

Bidegree = tuple[int, int]


class FaceCommutationError(ValueError):
    """A square of cube edge maps fails to commute."""


@dataclass(eq=False)
class BigradedComplex:
    """Chain complex of GF(2) vector spaces graded by (i, j).

    ``diff[(i, j)]`` maps the (i, j) block to (i+1, j); absent blocks are
    zero.  ``basis[(i, j)]`` carries one opaque tag per basis vector.
    """

    dims: dict[Bidegree, int] = field(default_factory=dict)
    diff: dict[Bidegree, F2Matrix] = field(default_factory=dict)
    basis: dict[Bidegree, tuple] = field(default_factory=dict)

    def dim(self, i: int, j: int) -> int:
        return self.dims.get((i, j), 0)

    def d(self, i: int, j: int) -> F2Matrix:
        block = self.diff.get((i, j))
        if block is None:
            return F2Matrix.zeros(self.dim(i + 1, j), self.dim(i, j))
        return block

    def support(self) -> list[Bidegree]:
        return sorted(k for k, v in self.dims.items() if v)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def tags(self, i: int, j: int) -> tuple:
        return self.basis.get((i, j), ())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedComplex):
            return NotImplemented
        keys = set(self.dims) | set(other.dims)
        for i, j in keys:
            if self.dim(i, j) != other.dim(i, j):
                return False
            if self.tags(i, j) != other.tags(i, j):
                return False
            if self.d(i, j) != other.d(i, j):
                return False
        return True


def verify_complex(x: BigradedComplex) -> bool:
    """True when d(i+1, j) . d(i, j) = 0 at every bidegree."""
    for (i, j) in x.dims:
        if x.dim(i, j) and x.dim(i + 1, j):
            if not (x.d(i + 1, j) @ x.d(i, j)).is_zero():
                return False
    return True


def shift(x: BigradedComplex, k: int, l: int) -> BigradedComplex:
    """Degree shift: a generator at (i, j) moves to (i + k, j + l)."""
    return BigradedComplex(
        dims={(i + k, j + l): v for (i, j), v in x.dims.items()},
        diff={(i + k, j + l): m for (i, j), m in x.diff.items()},
        basis={(i + k, j + l): t for (i, j), t in x.basis.items()},
    )


@dataclass(eq=False)
class GradedChainMap:
    """Bidegree (0, 0) map between complexes, one block per (i, j)."""

    source: BigradedComplex
    target: BigradedComplex
    blocks: dict[Bidegree, F2Matrix] = field(default_factory=dict)

    def block(self, i: int, j: int) -> F2Matrix:
        blk = self.blocks.get((i, j))
        if blk is None:
            return F2Matrix.zeros(self.target.dim(i, j), self.source.dim(i, j))
        return blk


def verify_chain_map(f: GradedChainMap) -> bool:
    """True when f commutes with both differentials at every bidegree."""
    keys = set(f.source.dims) | set(f.target.dims)
    for (i, j) in keys:
        left = f.target.d(i, j) @ f.block(i, j)
        right = f.block(i + 1, j) @ f.source.d(i, j)
        if left != right:
            return False
    return True


def nu(t: int, subset: Iterable[int]) -> int:
    """Count of elements of the subset exceeding t (cube sign exponent)."""
    return sum(1 for s in subset if s > t)


@dataclass(eq=False)
class CubeOfComplexes:
    """An r-cube of complexes with strictly commuting edge maps.

    Vertices are keyed by subset bitmask; ``edges[(mask, t)]`` maps
    vertex ``mask`` to vertex ``mask | 1 << t`` for each axis t outside
    the mask.
    """

    r: int
    vertices: dict[int, BigradedComplex]
    edges: dict[tuple[int, int], GradedChainMap]

    def check_faces(self) -> None:
        for mask in range(1 << self.r):
            axes = [t for t in range(self.r) if not (mask >> t) & 1]
            for a_idx, s in enumerate(axes):
                for t in axes[a_idx + 1 :]:
                    first = self.edges[(mask | 1 << s, t)]
                    second = self.edges[(mask | 1 << t, s)]
                    es = self.edges[(mask, s)]
                    et = self.edges[(mask, t)]
                    keys = set(self.vertices[mask].dims)
                    for (i, j) in keys:
                        one = first.block(i, j) @ es.block(i, j)
                        two = second.block(i, j) @ et.block(i, j)
                        if one != two:
                            raise FaceCommutationError(
                                f"edges {s} and {t} fail to commute on vertex "
                                f"{mask:#b} at bidegree {(i, j)}"
                            )


@dataclass(eq=False)
class MappingCone:
    """Cone of a chain map with its structural maps recorded.

    ``inclusion`` embeds the target complex; ``projection`` maps onto the
    shifted source complex.
    """

    complex: BigradedComplex
    inclusion: GradedChainMap
    projection: GradedChainMap


def cone(f: GradedChainMap) -> MappingCone:
    """Mapping cone with block differential [[dX, 0], [f, dY]].

    The summand order matches ``mcone`` of the corresponding 1-cube:
    shifted source first, then target, with tags (0, tag) and (1, tag).
    """
    cube = CubeOfComplexes(1, {0: f.source, 1: f.target}, {(0, 0): f})
    total = mcone(cube)
    x, y = f.source, f.target

    incl_blocks = {}
    for (i, j), dim_y in y.dims.items():
        if not dim_y:
            continue
        offset = x.dim(i + 1, j)
        incl_blocks[(i, j)] = F2Matrix(
            total.dim(i, j), tuple(1 << (offset + c) for c in range(dim_y))
        )
    proj_blocks = {}
    shifted_x = shift(x, -1, 0)
    for (i, j), dim_tot in total.dims.items():
        nx = x.dim(i + 1, j)
        if not (dim_tot and nx):
            continue
        cols = [1 << c for c in range(nx)]
        cols.extend(0 for _ in range(y.dim(i, j)))
        proj_blocks[(i, j)] = F2Matrix(nx, tuple(cols))
    return MappingCone(
        complex=total,
        inclusion=GradedChainMap(y, total, incl_blocks),
        projection=GradedChainMap(total, shifted_x, proj_blocks),
    )


def mcone(cube: CubeOfComplexes, check: bool = True) -> BigradedComplex:
    """Totalization of an r-cube: the multiple mapping cone.

    The (i, j) block is the direct sum over subsets S of the vertex
    blocks at (i + r - |S|, j), summands ordered by subset bitmask and
    tagged (S, vertex tag).  The differential combines the internal
    differentials with every edge map; over GF(2) no signs appear.  For
    r = 0 the single vertex is returned unchanged.
    """
    if check:
        cube.check_faces()
    r = cube.r
    if r == 0:
        return cube.vertices[0]

    layout: dict[Bidegree, list[tuple[int, int, Bidegree]]] = {}
    dims: dict[Bidegree, int] = {}
    basis: dict[Bidegree, tuple] = {}
    for key in _mcone_support(cube):
        i, j = key
        offset = 0
        entries = []
        tags: list = []
        for mask in range(1 << r):
            vkey = (i + r - mask.bit_count(), j)
            v = cube.vertices[mask]
            n = v.dim(*vkey)
            if n:
                entries.append((mask, offset, vkey))
                tags.extend((mask, tag) for tag in v.tags(*vkey))
                offset += n
        if offset:
            layout[key] = entries
            dims[key] = offset
            basis[key] = tuple(tags)

    diff: dict[Bidegree, F2Matrix] = {}
    for (i, j), entries in layout.items():
        tgt_key = (i + 1, j)
        tgt_entries = layout.get(tgt_key)
        if not tgt_entries:
            continue
        tgt_offset = {mask: off for mask, off, _ in tgt_entries}
        cols = [0] * dims[(i, j)]
        for mask, offset, vkey in entries:
            v = cube.vertices[mask]
            vi, vj = vkey
            internal = v.diff.get(vkey)
            if internal is not None and mask in tgt_offset:
                shift_to = tgt_offset[mask]
                for c, col in enumerate(internal.cols):
                    cols[offset + c] ^= col << shift_to
            for t in range(r):
                if (mask >> t) & 1:
                    continue
                nxt = mask | 1 << t
                if nxt not in tgt_offset:
                    continue
                edge = cube.edges[(mask, t)].blocks.get(vkey)
                if edge is None:
                    continue
                shift_to = tgt_offset[nxt]
                for c, col in enumerate(edge.cols):
                    cols[offset + c] ^= col << shift_to
        diff[(i, j)] = F2Matrix(dims[tgt_key], tuple(cols))
    return BigradedComplex(dims=dims, diff=diff, basis=basis)


def _mcone_support(cube: CubeOfComplexes) -> list[Bidegree]:
    keys = set()
    r = cube.r
    for mask, v in cube.vertices.items():
        drop = r - mask.bit_count()
        for (i, j), n in v.dims.items():
            if n:
                keys.add((i - drop, j))
    return sorted(keys)


def mcone_summand_offsets(
    total: BigradedComplex, i: int, j: int
) -> dict[int, tuple[int, int]]:
    """Map subset mask -> (offset, length) inside an mcone block.

    Relies on mcone tags being (mask, vertex tag) with summands
    contiguous and ordered by mask.
    """
    out: dict[int, tuple[int, int]] = {}
    for pos, tag in enumerate(total.tags(i, j)):
        mask = tag[0]
        if mask in out:
            off, ln = out[mask]
            out[mask] = (off, ln + 1)
        else:
            out[mask] = (pos, 1)
    return out
