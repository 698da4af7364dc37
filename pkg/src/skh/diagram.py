"""Planar-diagram codes for oriented singular link diagrams.

Conventions pinned here and relied on by every other module:

* A crossing token lists its four edge labels counterclockwise starting
  from the slot of a distinguished incoming strand.  For ``X+``/``X-``
  that slot ``a`` holds the incoming under-strand, so the under-strand
  runs a -> c.  For ``X+`` the over-strand runs d -> b; for ``X-`` it
  runs b -> d.  For ``Xs`` (double point) the incoming strands occupy
  slots a and d, matching the positive resolution slot-for-slot.
* Resolving a double point ``Xs(a,b,c,d)`` positively keeps the tuple,
  ``X+(a,b,c,d)``; resolving negatively exchanges the over/under roles,
  which re-roots the tuple at the other incoming strand: ``X-(d,a,b,c)``.
* The 0-smoothing of any ordinary crossing joins the edge pairs (a,b)
  and (c,d); the 1-smoothing joins (a,d) and (b,c).

Edge labels are arbitrary distinct positive integers.  Crossingless
circle components cannot be expressed by 4-tuples, so they are carried
as a separate free-loop count (token ``O``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property


class PDSyntaxError(ValueError):
    """Malformed PD text (bad token, arity, or edge label)."""


class ValidationError(ValueError):
    """Well-formed PD text that does not describe an oriented diagram."""


class DomainError(ValueError):
    """An operation applied outside its domain."""


class CrossingKind(str, Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    SINGULAR = "s"


@dataclass(frozen=True)
class Crossing:
    kind: CrossingKind
    edges: tuple[int, int, int, int]

    def incoming_slots(self) -> tuple[int, int]:
        """Tuple positions holding incoming edges, per the kind convention."""
        if self.kind is CrossingKind.NEGATIVE:
            return (0, 1)
        return (0, 3)

    def outgoing_slots(self) -> tuple[int, int]:
        if self.kind is CrossingKind.NEGATIVE:
            return (2, 3)
        return (1, 2)

    def token(self) -> str:
        a, b, c, d = self.edges
        return f"X{self.kind.value}({a},{b},{c},{d})"


@dataclass(frozen=True)
class SingularDiagram:
    """An oriented singular link diagram: crossings plus free loops."""

    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    @cached_property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.kind is CrossingKind.POSITIVE)

    @cached_property
    def n_minus(self) -> int:
        return sum(1 for c in self.crossings if c.kind is CrossingKind.NEGATIVE)

    @cached_property
    def n_singular(self) -> int:
        return sum(1 for c in self.crossings if c.kind is CrossingKind.SINGULAR)

    @cached_property
    def edges(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for c in self.crossings:
            seen.update(c.edges)
        return tuple(sorted(seen))

    def singular_indices(self) -> tuple[int, ...]:
        return tuple(
            i for i, c in enumerate(self.crossings) if c.kind is CrossingKind.SINGULAR
        )

    def is_ordinary(self) -> bool:
        return self.n_singular == 0

    def __str__(self) -> str:
        return serialize_pd(self)


@dataclass(frozen=True)
class CircleDecomposition:
    """Circles of a fully smoothed diagram.

    ``edge_circles`` partitions the edge set, each circle a sorted tuple,
    circles ordered by their minimal edge.  Free loops follow the edge
    circles in the overall circle indexing.  ``arcs[k]`` gives the circle
    indices touched by the two smoothing arcs at crossing k, in tuple
    order: 0-smoothing arcs (a,b),(c,d); 1-smoothing arcs (a,d),(b,c).
    """

    edge_circles: tuple[tuple[int, ...], ...]
    free_loops: int
    arcs: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.edge_circles) + self.free_loops


_TOKEN_RE = re.compile(r"X([+\-s])\((\d+),(\d+),(\d+),(\d+)\)$")


def parse_pd(text: str) -> SingularDiagram:
    """Parse whitespace-separated PD tokens into a validated diagram."""
    crossings: list[Crossing] = []
    free_loops = 0
    for raw_line in text.splitlines() or [text]:
        line = raw_line.split("#", 1)[0]
        for tok in line.split():
            if tok == "O":
                free_loops += 1
                continue
            m = _TOKEN_RE.match(tok)
            if not m:
                raise PDSyntaxError(f"malformed PD token: {tok!r}")
            kind = CrossingKind(m.group(1))
            edges = tuple(int(g) for g in m.groups()[1:])
            if any(e < 1 for e in edges):
                raise PDSyntaxError(f"edge labels must be >= 1: {tok!r}")
            crossings.append(Crossing(kind, edges))
    diagram = SingularDiagram(tuple(crossings), free_loops)
    validate(diagram)
    return diagram


def serialize_pd(diagram: SingularDiagram) -> str:
    """Emit crossings in order, then one ``O`` per free loop."""
    toks = [c.token() for c in diagram.crossings]
    toks.extend("O" for _ in range(diagram.free_loops))
    return " ".join(toks)


def validate(diagram: SingularDiagram) -> None:
    """Check the global edge and orientation constraints."""
    occur: dict[int, int] = {}
    indeg: dict[int, int] = {}
    outdeg: dict[int, int] = {}
    for c in diagram.crossings:
        in_slots = c.incoming_slots()
        for slot, e in enumerate(c.edges):
            occur[e] = occur.get(e, 0) + 1
            if slot in in_slots:
                indeg[e] = indeg.get(e, 0) + 1
            else:
                outdeg[e] = outdeg.get(e, 0) + 1
    bad = sorted(e for e, n in occur.items() if n != 2)
    if bad:
        raise ValidationError(f"edges not occurring exactly twice: {bad}")
    for e in occur:
        if indeg.get(e, 0) != 1 or outdeg.get(e, 0) != 1:
            raise ValidationError(
                f"edge {e} is not traversed once in and once out; "
                "check crossing kind markers"
            )


def counts(diagram: SingularDiagram) -> tuple[int, int, int]:
    """(positive, negative, singular) crossing counts."""
    return (diagram.n_plus, diagram.n_minus, diagram.n_singular)


def resolve_double_points(diagram: SingularDiagram, chosen) -> SingularDiagram:
    """Resolve every double point: positively inside ``chosen``, else negatively.

    ``chosen`` holds crossing indices; the result has no singular
    crossings and the crossing order is preserved.
    """
    chosen = frozenset(chosen)
    singular = frozenset(diagram.singular_indices())
    if not chosen <= singular:
        raise DomainError(f"not double points: {sorted(chosen - singular)}")
    new = []
    for i, c in enumerate(diagram.crossings):
        if c.kind is not CrossingKind.SINGULAR:
            new.append(c)
        elif i in chosen:
            new.append(Crossing(CrossingKind.POSITIVE, c.edges))
        else:
            a, b, cc, d = c.edges
            new.append(Crossing(CrossingKind.NEGATIVE, (d, a, b, cc)))
    return SingularDiagram(tuple(new), diagram.free_loops)


def resolve_crossing(
    diagram: SingularDiagram, index: int, kind: CrossingKind
) -> SingularDiagram:
    """Resolve a single double point, leaving the others singular."""
    if index not in diagram.singular_indices():
        raise DomainError(f"crossing {index} is not a double point")
    if kind is CrossingKind.SINGULAR:
        raise DomainError("resolution must be positive or negative")
    c = diagram.crossings[index]
    if kind is CrossingKind.POSITIVE:
        new = Crossing(CrossingKind.POSITIVE, c.edges)
    else:
        a, b, cc, d = c.edges
        new = Crossing(CrossingKind.NEGATIVE, (d, a, b, cc))
    crossings = list(diagram.crossings)
    crossings[index] = new
    return SingularDiagram(tuple(crossings), diagram.free_loops)


def smooth(diagram: SingularDiagram, state: int) -> CircleDecomposition:
    """Circles of the diagram smoothed by ``state`` (bit k = crossing k).

    Union-find over edge labels; the two arcs of each crossing merge
    their endpoint edges, and free loops stay their own circles.
    """
    if not diagram.is_ordinary():
        raise DomainError("smoothing requires a diagram with no double points")
    n = len(diagram.crossings)
    if state >> n:
        raise DomainError(f"state {state:#x} has bits beyond {n} crossings")

    edges = diagram.edges
    slot = {e: k for k, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    arc_pairs = []
    for k, c in enumerate(diagram.crossings):
        a, b, cc, d = c.edges
        if (state >> k) & 1:
            pairs = ((a, d), (b, cc))
        else:
            pairs = ((a, b), (cc, d))
        arc_pairs.append(pairs)
        for x, y in pairs:
            union(slot[x], slot[y])

    groups: dict[int, list[int]] = {}
    for e in edges:
        groups.setdefault(find(slot[e]), []).append(e)
    circles = tuple(sorted((tuple(sorted(g)) for g in groups.values())))
    circle_of = {e: i for i, circ in enumerate(circles) for e in circ}
    arcs = tuple(
        (circle_of[p1[0]], circle_of[p2[0]]) for p1, p2 in arc_pairs
    )
    return CircleDecomposition(circles, diagram.free_loops, arcs)


def fi_double_points(diagram: SingularDiagram) -> tuple[int, ...]:
    """Double points carrying a kink: a repeated edge in the 4-tuple.

    A repeated label means two of the crossing's own ends are joined by
    an edge passing through no other crossing, which is exactly the
    isolated (kinked) double-point shape.
    """
    return tuple(
        i
        for i, c in enumerate(diagram.crossings)
        if c.kind is CrossingKind.SINGULAR and len(set(c.edges)) < 4
    )


def component_count(diagram: SingularDiagram) -> int:
    """Number of link components (strand passage at every crossing)."""
    edges = diagram.edges
    slot = {e: k for k, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in diagram.crossings:
        a, b, cc, d = c.edges
        for x, y in ((a, cc), (b, d)):
            rx, ry = find(slot[x]), find(slot[y])
            if rx != ry:
                parent[ry] = rx
    roots = {find(slot[e]) for e in edges}
    return len(roots) + diagram.free_loops
