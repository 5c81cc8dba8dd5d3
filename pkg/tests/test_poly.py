from hypothesis import given, strategies as st

from kgroups import poly
from kgroups.finite_field import prime_field, standard_field

FIELDS = [prime_field(2), prime_field(3), prime_field(5), standard_field(2, 2), standard_field(3, 2)]


def polys(max_deg=8):
    return st.tuples(st.integers(0, len(FIELDS) - 1),
                     st.lists(st.integers(0, 8), min_size=1, max_size=max_deg + 1))


def _field_poly(data):
    i, cs = data
    F = FIELDS[i]
    return F, poly.trim([c % F.order for c in cs])


@given(polys())
def test_factor_reconstructs(data):
    F, f = _field_poly(data)
    if not f:
        return
    lc, facs = poly.factor(F, f)
    acc = [lc]
    for g, m in facs:
        assert g[-1] == 1
        assert poly.is_irreducible(F, g) if len(g) <= 4 else True
        acc = poly.mul(F, acc, poly.power(F, g, m))
    assert acc == f


@given(polys(6))
def test_roots_are_exactly_the_zeros(data):
    F, f = _field_poly(data)
    if len(f) < 2:
        return
    zeros = sorted(c for c in range(F.order) if poly.evaluate(F, f, c) == 0)
    assert poly.roots(F, f) == zeros


@given(polys(6), polys(6))
def test_divmod(a_data, b_data):
    F, a = _field_poly(a_data)
    _, b = _field_poly((a_data[0], b_data[1]))
    if not b:
        return
    q, r = poly.divmod_(F, a, b)
    assert len(r) < len(b)
    assert poly.add(F, poly.mul(F, q, b), r) == a


def test_irreducibility_small_cases():
    F3 = prime_field(3)
    assert poly.is_irreducible(F3, [1, 0, 1])
    assert not poly.is_irreducible(F3, [2, 0, 1])
    F2 = prime_field(2)
    # the irreducible quartics over F_2
    quartics = [f for f in range(16) if poly.is_irreducible(F2, poly.trim([(f >> i) & 1 for i in range(4)] + [1]))]
    assert len(quartics) == 3


def test_valuation():
    F5 = prime_field(5)
    t = [0, 1]
    f = poly.mul(F5, poly.power(F5, t, 3), [1, 1])
    assert poly.valuation(F5, f, t) == 3
