import pytest

from kgroups.abelian import eq
from kgroups.errors import ConfigError, DegreeOverflow
from kgroups.finite_field import prime_field, standard_field
from kgroups.function_field import elliptic_curve
from kgroups.semiabelian import SemiAbelian, embed_point, g_norm
from kgroups.somekawa import (SymbolTerm, TruncationConfig, build, check_cycle_bridge, check_r1_collapse,
                              cycle_symbol)
from oracles import group_invariants_prime_field_curve

F5 = prime_field(5)
E5 = elliptic_curve(F5, 0, 1)


def _gm(k, n=1):
    return SemiAbelian(n, base=k)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_gm_build_is_the_unit_group(q):
    k = standard_field(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1)}[q])
    G = _gm(k)
    A = build(TruncationConfig(k, [G], d=2))
    assert A.group.invariants == ((q - 1,) if q > 2 else ())
    assert A.group.free_rank == 0
    assert A.stats["r2_reciprocity_failures"] == 0
    if q > 2:
        g = k.primitive_element
        one = A.symbol_eval(SymbolTerm(k, [G.point(k, (g,))]))
        for a in range(q - 1):
            assert eq(A.symbol_eval(SymbolTerm(k, [G.point(k, (g ** a,))])), one * a)


def test_symbols_over_extensions_collapse_to_norms():
    G = _gm(F5)
    A = build(TruncationConfig(F5, [G], d=2))
    F25 = G.tower.field(2)
    for x in list(F25.units())[::5]:
        P = G.point(F25, (x,))
        lhs = A.symbol_eval(SymbolTerm(F25, [P]))
        rhs = A.symbol_eval(SymbolTerm(F5, [g_norm(F5, F25, P)]))
        assert eq(lhs, rhs)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_gm_gm_is_trivial(q):
    k = standard_field(*{2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}[q])
    A = build(TruncationConfig(k, [_gm(k), _gm(k)], d=2))
    assert A.group.is_trivial()


def test_elliptic_collapse():
    G = SemiAbelian(0, E=E5)
    A = build(TruncationConfig(F5, [G], d=2))
    assert list(A.group.invariants) == group_invariants_prime_field_curve(5, 0, 1)
    res = check_r1_collapse(A)
    assert res.isomorphism and res.well_defined and res.surjective and res.injective


def test_stable_between_truncations():
    G = _gm(F5)
    a = build(TruncationConfig(F5, [G], d=2)).group
    b = build(TruncationConfig(F5, [G], d=3)).group
    assert a == b


def test_multilinearity_before_reciprocity():
    k = prime_field(7)
    G = _gm(k)
    A = build(TruncationConfig(k, [G, G], d=1), r2=False)
    assert A.group.order() == 6  # Z/6 (x) Z/6
    pts = [G.point(k, (x,)) for x in range(1, 7)]
    for P1 in pts:
        for P2 in pts:
            for Q in pts[::2]:
                lhs = A.symbol_eval(SymbolTerm(k, [P1 + P2, Q]))
                rhs = A.symbol_eval(SymbolTerm(k, [P1, Q])) + A.symbol_eval(SymbolTerm(k, [P2, Q]))
                assert eq(lhs, rhs)
                assert eq(A.symbol_eval(SymbolTerm(k, [Q, P1 + P2])),
                          A.symbol_eval(SymbolTerm(k, [Q, P1])) + A.symbol_eval(SymbolTerm(k, [Q, P2])))


def test_frobenius_conjugate_symbols_agree():
    G = SemiAbelian(1, E=E5)
    A = build(TruncationConfig(F5, [G], d=2), r2=False)
    F25 = G.tower.field(2)
    for x in list(F25.units())[::7]:
        P = G.point(F25, (x,), None)
        Pf = G.point(F25, (x.frobenius(),), None)
        assert eq(A.symbol_eval(SymbolTerm(F25, [P])), A.symbol_eval(SymbolTerm(F25, [Pf])))


def test_projection_formula_for_constants():
    # {res P}_{F25} = [F25 : F5] {P}_k
    G = _gm(F5)
    A = build(TruncationConfig(F5, [G], d=2))
    F25 = G.tower.field(2)
    P = G.point(F5, (2,))
    up = embed_point(F5, F25, P)
    assert eq(A.symbol_eval(SymbolTerm(F25, [up])), A.symbol_eval(SymbolTerm(F5, [P])) * 2)


def test_mixed_e_gm_is_zero():
    G1, G2 = SemiAbelian(0, E=E5), _gm(F5)
    A = build(TruncationConfig(F5, [G1, G2], d=2))
    assert A.group.is_trivial()
    assert A.stats["r2_reciprocity_failures"] == 0


def test_cycle_symbols():
    G = SemiAbelian(0, E=E5)
    A = build(TruncationConfig(F5, [G], d=2))
    x = cycle_symbol(A, F5, [(2, 2)])
    assert eq(x, A.symbol_eval(SymbolTerm(F5, [G.point(F5, (), (2, 2))])))
    assert x.order() == 6
    assert cycle_symbol(A, F5, [None]).is_zero()
    assert cycle_symbol(A, F5, ["P1"]).is_zero()


def test_config_validation():
    with pytest.raises(ConfigError):
        build(TruncationConfig(F5, []))
    with pytest.raises(ConfigError):
        build(TruncationConfig(F5, [_gm(F5)] * 4))
    with pytest.raises(ConfigError):
        build(TruncationConfig(F5, [_gm(prime_field(7))]))
    with pytest.raises(ConfigError):
        build(TruncationConfig(F5, [_gm(F5)], d=0))
    with pytest.raises(ConfigError):
        build(TruncationConfig(standard_field(2, 8), [_gm(standard_field(2, 8))], d=3))


def test_symbols_beyond_truncation_are_rejected():
    G = _gm(F5)
    A = build(TruncationConfig(F5, [G], d=1))
    F25 = G.tower.field(2)
    with pytest.raises(DegreeOverflow):
        A.symbol_eval(SymbolTerm(F25, [G.point(F25, (F25.primitive_element,))]))


def test_every_relation_record_has_provenance():
    A = build(TruncationConfig(F5, [SemiAbelian(1, E=E5)], d=2))
    kinds = {rec.kind for rec in A.records}
    assert kinds == {"R1", "R2"}
    for rec in A.records:
        assert rec.provenance and any(rec.row)


@pytest.mark.parametrize("ab", [(0, 1), (1, 0), (1, 1)])
def test_cycle_bridge_round_trips(ab):
    A = build(TruncationConfig(F5, [SemiAbelian(0, E=elliptic_curve(F5, *ab))], d=2))
    ok, checked, witness = check_cycle_bridge(A)
    assert ok and witness is None
    assert checked >= len(E5.points(1)) - 1
    with pytest.raises(ConfigError):
        check_cycle_bridge(build(TruncationConfig(F5, [_gm(F5)], d=1)))


@pytest.mark.parametrize("groups", ["gm", "e", "e_gm"])
def test_relations_only_shrink_the_quotient(groups):
    gs = {"gm": [_gm(F5)], "e": [SemiAbelian(0, E=E5)], "e_gm": [SemiAbelian(0, E=E5), _gm(F5)]}[groups]
    builds = [build(TruncationConfig(F5, gs, d=2), r2=False)]
    for cap in (5, 40, 300):
        builds.append(build(TruncationConfig(F5, gs, d=2, max_candidates=cap)))
    orders = [B.group.order() for B in builds]
    assert orders == sorted(orders, reverse=True)
    for small, big in zip(builds, builds[1:]):
        for rec in small.records:
            assert big.lattice.contains(rec.row)
