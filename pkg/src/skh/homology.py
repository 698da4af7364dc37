"""GF(2) homology: ranks, Betti tables, representatives, induced maps,
and the long-exact-sequence audit for crossing change.

Representatives are produced by Gaussian elimination with a fixed pivot
rule (lowest index first), so every table and matrix here is
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import BigradedComplex, GradedChainMap, verify_chain_map, verify_complex
from .diagram import DomainError, SingularDiagram
from .gf2 import Eliminator, F2Matrix, Solver, image_basis, kernel_basis
from .gf2 import rank as _rank
from .khovanov import build_singular_complex, genus1_mcone_map
from .polynomial import LaurentPoly, euler_characteristic

Bidegree = tuple[int, int]
BettiTable = dict[Bidegree, int]


class ComplexInvalid(ValueError):
    """The differential fails d . d = 0."""


class NotAChainMap(ValueError):
    """A map does not commute with the differentials."""


class InconsistentBasis(ValueError):
    """Homology bases that do not belong to the complexes at hand."""


def rank_f2(m: F2Matrix) -> int:
    """Rank over GF(2) by bit-packed Gaussian elimination."""
    return _rank(m)


def betti(x: BigradedComplex) -> BettiTable:
    """dim ker d(i, j) - rank d(i-1, j) at every supported bidegree."""
    if not verify_complex(x):
        raise ComplexInvalid("differential does not square to zero")
    table: BettiTable = {}
    for (i, j), n in x.dims.items():
        if not n:
            continue
        dim = n - _rank(x.d(i, j)) - _rank(x.d(i - 1, j))
        if dim:
            table[(i, j)] = dim
    return table


@dataclass
class HomologyBasis:
    """Cycle representatives spanning homology, plus the boundary basis."""

    complex: BigradedComplex
    reps: dict[Bidegree, tuple[int, ...]] = field(default_factory=dict)
    boundaries: dict[Bidegree, tuple[int, ...]] = field(default_factory=dict)

    def dim(self, i: int, j: int) -> int:
        return len(self.reps.get((i, j), ()))

    def table(self) -> BettiTable:
        return {key: len(r) for key, r in self.reps.items() if r}


def homology_basis(x: BigradedComplex) -> HomologyBasis:
    """Deterministic homology representatives at every bidegree."""
    if not verify_complex(x):
        raise ComplexInvalid("differential does not square to zero")
    hb = HomologyBasis(x)
    for (i, j), n in x.dims.items():
        if not n:
            continue
        cycles = kernel_basis(x.d(i, j))
        bounds = image_basis(x.d(i - 1, j))
        elim = Eliminator()
        for v in bounds:
            elim.add(v)
        reps = []
        for z in cycles:
            residue, _ = elim.add(z)
            if residue:
                reps.append(residue)
        if reps:
            hb.reps[(i, j)] = tuple(reps)
        if bounds:
            hb.boundaries[(i, j)] = tuple(bounds)
    return hb


def induced_map(
    f: GradedChainMap, hb_src: HomologyBasis, hb_tgt: HomologyBasis
) -> dict[Bidegree, F2Matrix]:
    """Matrices of the induced map on homology in the given bases."""
    if hb_src.complex is not f.source or hb_tgt.complex is not f.target:
        raise InconsistentBasis("bases do not match the map's complexes")
    if not verify_chain_map(f):
        raise NotAChainMap("map does not commute with differentials")
    out: dict[Bidegree, F2Matrix] = {}
    keys = set(hb_src.reps) | set(hb_tgt.reps)
    for (i, j) in keys:
        src_reps = hb_src.reps.get((i, j), ())
        tgt_reps = hb_tgt.reps.get((i, j), ())
        bounds = hb_tgt.boundaries.get((i, j), ())
        solver = Solver(list(tgt_reps) + list(bounds))
        # Boundaries must stay boundaries: guards the basis bookkeeping.
        bound_solver = Solver(list(bounds))
        for beta in hb_src.boundaries.get((i, j), ()):
            if bound_solver.solve(f.block(i, j).apply(beta)) is None:
                raise InconsistentBasis(
                    f"image of a boundary escapes boundaries at {(i, j)}"
                )
        cols = []
        for rep in src_reps:
            image = f.block(i, j).apply(rep)
            combo = solver.solve(image)
            if combo is None:
                raise InconsistentBasis(
                    f"image of a cycle is not a cycle at {(i, j)}"
                )
            cols.append(combo & ((1 << len(tgt_reps)) - 1))
        out[(i, j)] = F2Matrix(len(tgt_reps), tuple(cols))
    return out


@dataclass
class LesEntry:
    bidegree: Bidegree
    dim_cone: int
    coker: int
    ker_next: int

    @property
    def ok(self) -> bool:
        return self.dim_cone == self.coker + self.ker_next


@dataclass
class LesReport:
    """Outcome of the crossing-change long-exact-sequence audit at b."""

    diagram: SingularDiagram
    double_point: int
    entries: list[LesEntry]
    euler_ok: bool
    euler_cone: LaurentPoly
    euler_plus: LaurentPoly
    euler_minus: LaurentPoly
    betti_minus: BettiTable
    betti_plus: BettiTable
    betti_cone: BettiTable

    @property
    def ok(self) -> bool:
        return self.euler_ok and all(e.ok for e in self.entries)

    def witnesses(self) -> list[LesEntry]:
        return [e for e in self.entries if not e.ok]


def les_check(diagram: SingularDiagram, b: int) -> LesReport:
    """Exactness audit of the skein sequence at a double point b.

    For every bidegree the homology of the singular complex must split
    as cokernel plus next kernel of the induced crossing-change map, and
    the graded Euler characteristics must satisfy the skein subtraction.
    """
    if b not in diagram.singular_indices():
        raise DomainError(f"crossing {b} is not a double point")
    f = genus1_mcone_map(diagram, b)
    hb_minus = homology_basis(f.source)
    hb_plus = homology_basis(f.target)
    phi = induced_map(f, hb_minus, hb_plus)

    order = [b] + [d for d in diagram.singular_indices() if d != b]
    betti_cone = betti(build_singular_complex(diagram, order))
    bm = hb_minus.table()
    bp = hb_plus.table()

    keys = set(betti_cone)
    keys.update(bp)
    keys.update((i - 1, j) for (i, j) in bm)
    entries = []
    for (i, j) in sorted(keys):
        blk = phi.get((i, j))
        coker = bp.get((i, j), 0) - (rank_f2(blk) if blk else 0)
        nxt = phi.get((i + 1, j))
        ker_next = bm.get((i + 1, j), 0) - (rank_f2(nxt) if nxt else 0)
        entries.append(
            LesEntry((i, j), betti_cone.get((i, j), 0), coker, ker_next)
        )

    e_cone = euler_characteristic(betti_cone)
    e_plus = euler_characteristic(bp)
    e_minus = euler_characteristic(bm)
    return LesReport(
        diagram=diagram,
        double_point=b,
        entries=entries,
        euler_ok=(e_cone == e_plus - e_minus),
        euler_cone=e_cone,
        euler_plus=e_plus,
        euler_minus=e_minus,
        betti_minus=bm,
        betti_plus=bp,
        betti_cone=betti_cone,
    )
