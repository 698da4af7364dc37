"""The rank-2 Frobenius algebra over GF(2) driving the link TQFT.

The algebra has basis {1, x} with x^2 = 0, comultiplication
delta(1) = x(x)1 + 1(x)x and delta(x) = x(x)x, and grading
deg 1 = +1, deg x = -1.  Elements are bitsets:

* ``AlgElem``: bit 0 = coefficient of 1, bit 1 = coefficient of x.
* ``TensorElem``: bits 0..3 = coefficients of 1(x)1, 1(x)x, x(x)1, x(x)x.

Everything is table-driven so the whole algebra is exhaustively testable.
"""

from __future__ import annotations

AlgElem = int
TensorElem = int

ZERO: AlgElem = 0b00
ONE: AlgElem = 0b01
X: AlgElem = 0b10

ALG_BASIS = (ONE, X)
TENSOR_BASIS = (0b0001, 0b0010, 0b0100, 0b1000)

# Degree of each algebra basis element.
DEG = {ONE: 1, X: -1}

# Products of basis tensors: 1*1=1, 1*x=x*1=x, x*x=0.
_MU = (ONE, X, X, ZERO)

# delta on basis elements.
_DELTA = (0b0110, 0b1000)  # delta(1), delta(x)


def mu(t: TensorElem) -> AlgElem:
    """Multiplication A(x)A -> A, extended linearly over GF(2)."""
    out = 0
    for k in range(4):
        if (t >> k) & 1:
            out ^= _MU[k]
    return out


def delta(a: AlgElem) -> TensorElem:
    """Comultiplication A -> A(x)A, extended linearly over GF(2)."""
    out = 0
    if a & ONE:
        out ^= _DELTA[0]
    if a & X:
        out ^= _DELTA[1]
    return out


def tensor(p: AlgElem, q: AlgElem) -> TensorElem:
    """Bilinear pairing of two algebra elements into A(x)A."""
    out = 0
    for i in range(2):
        if (p >> i) & 1:
            for j in range(2):
                if (q >> j) & 1:
                    out ^= 1 << (2 * i + j)
    return out


def genus1_local(p: AlgElem, q: AlgElem) -> TensorElem:
    """Two-circle genus-1 cobordism: merge then split, delta(p*q)."""
    return delta(mu(tensor(p, q)))


def genus1_local_same_circle(p: AlgElem) -> AlgElem:
    """One-circle genus-1 cobordism: split then merge, mu(delta(p)).

    Identically zero over GF(2): mu(delta(1)) = 2x and mu(delta(x)) = x^2.
    """
    return mu(delta(p))


# Basis-label views used by the complex builder.  A circle label is a
# single bit: 0 for "1", 1 for "x".

def mu_label(p: int, q: int) -> int | None:
    """Product of two circle labels, None when it vanishes (x*x)."""
    if p & q:
        return None
    return p | q


def delta_label(p: int) -> tuple[tuple[int, int], ...]:
    """Comultiplication terms of a circle label as (left, right) pairs."""
    if p:
        return ((1, 1),)
    return ((1, 0), (0, 1))


# Integer structure constants of the same operations, used to audit that
# compositions which vanish over GF(2) do so with even multiplicities.

MU_INT = {
    (0, 0): ((0, 1),),
    (0, 1): ((1, 1),),
    (1, 0): ((1, 1),),
    (1, 1): (),
}

DELTA_INT = {
    0: (((1, 0), 1), ((0, 1), 1)),
    1: (((1, 1), 1),),
}
