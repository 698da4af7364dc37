"""Exact integer Laurent polynomials in q, plus the polynomial oracles.

``jones_state_sum`` evaluates the unnormalized Jones polynomial as a
Kauffman-style state sum straight from the diagram; it never touches the
chain complex, so it serves as an independent cross-check of the graded
Euler characteristic.  ``vassiliev_derivative`` expands the iterated
skein relation over all resolutions of the double points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .diagram import DomainError, SingularDiagram, resolve_double_points, smooth


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported map exponent -> integer coefficient."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize(self.terms))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(coeffs.items()))

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls(((0, 1),))

    @classmethod
    def q_power(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls(((exponent, coeff),))

    def coeff(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly.from_dict(acc)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(acc)

    def scale(self, k: int) -> LaurentPoly:
        return LaurentPoly(tuple((e, k * c) for e, c in self.terms))

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, q: int) -> int:
        """Exact integer evaluation; q must be a nonzero integer."""
        if q == 0:
            raise ValueError("cannot evaluate at q = 0")
        total = 0
        for e, c in self.terms:
            if e >= 0:
                total += c * q**e
            else:
                power = q ** (-e)
                num, rem = divmod(c, power)
                if rem:
                    raise ValueError("non-integer evaluation")
                total += num
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.terms:
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if mag == 1 else f"{mag}{qpart}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f"{' - ' if c < 0 else ' + '}{body}")
        return "".join(parts)


def _normalize(terms) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    for e, c in terms:
        acc[e] = acc.get(e, 0) + c
    return tuple(sorted((e, c) for e, c in acc.items() if c != 0))


#: q + q^-1, the value of a single unknotted circle.
LOOP = LaurentPoly(((-1, 1), (1, 1)))


def euler_characteristic(betti: Mapping[tuple[int, int], int]) -> LaurentPoly:
    """Graded Euler characteristic sum of (-1)^i q^j dim over a Betti table."""
    acc: dict[int, int] = {}
    for (i, j), dim in betti.items():
        if dim:
            acc[j] = acc.get(j, 0) + (dim if i % 2 == 0 else -dim)
    return LaurentPoly.from_dict(acc)


def jones_state_sum(diagram: SingularDiagram) -> LaurentPoly:
    """Unnormalized Jones polynomial of an ordinary diagram by state sum.

    (-1)^(n-) q^(n+ - 2n-) * sum over states of (-q)^|s| (q+1/q)^#circles.
    """
    if not diagram.is_ordinary():
        raise DomainError("state sum requires a diagram with no double points")
    n = len(diagram.crossings)
    acc = LaurentPoly.zero()
    loop_powers = [LaurentPoly.one()]
    for _ in range(len(diagram.edges) + diagram.free_loops + 1):
        loop_powers.append(loop_powers[-1] * LOOP)
    for s in range(1 << n):
        k = s.bit_count()
        circles = smooth(diagram, s).count
        sign = -1 if k % 2 else 1
        acc = acc + loop_powers[circles].scale(sign) * LaurentPoly.q_power(k)
    writhe_sign = -1 if diagram.n_minus % 2 else 1
    shift = LaurentPoly.q_power(diagram.n_plus - 2 * diagram.n_minus, writhe_sign)
    return shift * acc


def vassiliev_derivative(diagram: SingularDiagram) -> LaurentPoly:
    """Iterated skein expansion over all double-point resolutions.

    sum over subsets A of double points of (-1)^(r-|A|) jones(D_A);
    for r = 0 this is the plain state sum.
    """
    doubles = diagram.singular_indices()
    r = len(doubles)
    acc = LaurentPoly.zero()
    for mask in range(1 << r):
        chosen = [doubles[t] for t in range(r) if (mask >> t) & 1]
        term = jones_state_sum(resolve_double_points(diagram, chosen))
        sign = -1 if (r - len(chosen)) % 2 else 1
        acc = acc + term.scale(sign)
    return acc
