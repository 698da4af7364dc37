from itertools import product

from skh import frobenius as fr


def mu_basis(i: int, j: int) -> int:
    """Product of the i-th and j-th algebra basis elements."""
    return fr.mu(1 << (2 * i + j))


def test_mu_table():
    assert fr.mu(fr.tensor(fr.ONE, fr.X)) == fr.X
    assert fr.mu(fr.tensor(fr.X, fr.ONE)) == fr.X
    assert fr.mu(fr.tensor(fr.X, fr.X)) == fr.ZERO
    assert fr.mu(fr.tensor(fr.ONE, fr.ONE)) == fr.ONE


def test_delta_table():
    assert fr.delta(fr.ONE) == 0b0110  # x(x)1 + 1(x)x
    assert fr.delta(fr.X) == 0b1000  # x(x)x
    assert fr.delta(fr.ZERO) == 0


def test_mu_linear():
    for t1, t2 in product(range(16), repeat=2):
        assert fr.mu(t1 ^ t2) == fr.mu(t1) ^ fr.mu(t2)


def test_delta_linear():
    for a, b in product(range(4), repeat=2):
        assert fr.delta(a ^ b) == fr.delta(a) ^ fr.delta(b)


def test_mu_associative():
    # (ab)c == a(bc) on all eight basis triples
    for i, j, k in product(range(2), repeat=3):
        left = fr.mu(_pair(mu_basis(i, j), 1 << k))
        right = fr.mu(_pair(1 << i, mu_basis(j, k)))
        assert left == right


def _pair(a: int, b: int) -> int:
    return fr.tensor(a, b)


def _tensor3_apply_mu_left(t3: dict) -> int:
    """Apply mu to the left two factors of a basis-indexed 3-tensor."""
    out = 0
    for (i, j, k), coeff in t3.items():
        if coeff % 2 == 0:
            continue
        prod = mu_basis(i, j)
        for m in range(2):
            if (prod >> m) & 1:
                out ^= fr.tensor(1 << m, 1 << k)
    return out


def _tensor3_apply_mu_right(t3: dict) -> int:
    out = 0
    for (i, j, k), coeff in t3.items():
        if coeff % 2 == 0:
            continue
        prod = mu_basis(j, k)
        for m in range(2):
            if (prod >> m) & 1:
                out ^= fr.tensor(1 << i, 1 << m)
    return out


def test_delta_coassociative():
    # (delta (x) id) delta == (id (x) delta) delta on both basis elements
    for a in range(2):
        left: dict = {}
        right: dict = {}
        d = fr.delta(1 << a)
        for t in range(4):
            if (d >> t) & 1:
                u, v = t >> 1, t & 1
                du = fr.delta(1 << u)
                for t2 in range(4):
                    if (du >> t2) & 1:
                        key = (t2 >> 1, t2 & 1, v)
                        left[key] = left.get(key, 0) + 1
                dv = fr.delta(1 << v)
                for t2 in range(4):
                    if (dv >> t2) & 1:
                        key = (u, t2 >> 1, t2 & 1)
                        right[key] = right.get(key, 0) + 1
        assert {k for k, c in left.items() if c % 2} == {
            k for k, c in right.items() if c % 2
        }


def test_frobenius_relation():
    # delta . mu == (mu (x) id) . (id (x) delta) on all basis pairs
    for i, j in product(range(2), repeat=2):
        lhs = fr.delta(mu_basis(i, j))
        t3: dict = {}
        dj = fr.delta(1 << j)
        for t in range(4):
            if (dj >> t) & 1:
                key = (i, t >> 1, t & 1)
                t3[key] = t3.get(key, 0) + 1
        rhs = _tensor3_apply_mu_left(t3)
        assert lhs == rhs


def test_vanishing_compositions_over_f2():
    # mu . delta . mu == 0 on all four tensor basis elements
    for t in range(4):
        assert fr.mu(fr.delta(fr.mu(1 << t))) == 0
    # delta . mu . delta == 0 on both algebra basis elements
    for a in range(2):
        out = 0
        d = fr.delta(1 << a)
        for t in range(4):
            if (d >> t) & 1:
                out ^= fr.delta(fr.mu(1 << t))
        assert out == 0


def test_genus1_local():
    assert fr.genus1_local(fr.ONE, fr.ONE) == 0b0110
    assert fr.genus1_local(fr.ONE, fr.X) == 0b1000
    assert fr.genus1_local(fr.X, fr.X) == 0


def test_genus1_local_same_circle_vanishes():
    for a in (fr.ZERO, fr.ONE, fr.X):
        assert fr.genus1_local_same_circle(a) == 0


def test_degrees():
    assert fr.DEG[fr.ONE] == 1
    assert fr.DEG[fr.X] == -1


def test_label_helpers():
    assert fr.mu_label(0, 0) == 0
    assert fr.mu_label(0, 1) == 1
    assert fr.mu_label(1, 1) is None
    assert fr.delta_label(0) == ((1, 0), (0, 1))
    assert fr.delta_label(1) == ((1, 1),)
