"""Milnor K-theory symbols: tame residues, a Steinberg model of K_2(F_q), Weil reciprocity.

Sign convention: the residue at v satisfies d_v{u_1, ..., u_n, pi} = {u_1bar, ..., u_nbar}
for v-units u_i and a uniformizer pi in the last slot. On length two this is
the classical d_v{f, g} = (-1)^(ab) f^b g^(-a) mod m_v with a = ord f, b = ord g.
"""
from itertools import combinations

from .abelian import TensorProduct, cyclic, quotient
from .errors import FieldMismatch, ZeroEntry
from .finite_field import FFElement, FieldExtension, is_prime, prime_factors, standard_field
from .function_field import Curve, candidate_places, ord_, reduce_, uniformizer


class MilnorSymbol:
    """coeff * {entries} over a finite field or over the function field of a curve."""

    def __init__(self, field, entries, coeff=1):
        if not isinstance(field, (FieldExtension, Curve)):
            raise TypeError("symbols live over a FieldExtension or a Curve")
        entries = tuple(entries)
        for e in entries:
            if isinstance(e, FFElement):
                if e.field != field:
                    raise FieldMismatch(f"{e!r} is not in {field}")
            elif getattr(e, "curve", None) != field:
                raise FieldMismatch(f"{e!r} is not in the function field of {field}")
            if e.is_zero():
                raise ZeroEntry("Milnor symbols have nonzero entries")
        self.field = field
        self.entries = entries
        self.coeff = int(coeff)

    @property
    def length(self):
        return len(self.entries)

    @property
    def over_function_field(self):
        return isinstance(self.field, Curve)

    def __eq__(self, other):
        # formal equality only; K-class equality is decided through residues or the oracle
        return (isinstance(other, MilnorSymbol) and self.field == other.field
                and self.entries == other.entries and self.coeff == other.coeff)

    def __hash__(self):
        return hash((self.entries, self.coeff))

    def __repr__(self):
        body = "{" + ",".join(repr(e) for e in self.entries) + "}"
        return body if self.coeff == 1 else f"{self.coeff}*{body}"


def tame_value(v, f, g):
    """Classical residue (-1)^(ab) f^b g^(-a) at ``v``, as an FFElement of k(v)."""
    if f.is_zero() or g.is_zero():
        raise ZeroEntry("tame symbol of a zero entry")
    a, b = ord_(v, f), ord_(v, g)
    R = v.residue_field
    if a == 0 and b == 0:
        return R.one
    pi = uniformizer(v)
    uf = reduce_(v, f * pi ** (-a)) if a else reduce_(v, f)
    ug = reduce_(v, g * pi ** (-b)) if b else reduce_(v, g)
    val = uf ** b * ug ** (-a)
    return -val if (a * b) % 2 else val


def tame_terms(v, entries):
    """Residue of {f_1, ..., f_L} at ``v`` as a list of (coeff, entries over k(v)).

    Each f_i is split as u_i * pi^(m_i); the multilinear expansion keeps one
    pi per term (the rest become -1 via {pi, pi} = {pi, -1}).
    """
    L = len(entries)
    if L < 1:
        raise ValueError("empty symbol")
    for f in entries:
        if f.is_zero():
            raise ZeroEntry("tame symbol of a zero entry")
    ms = [ord_(v, f) for f in entries]
    if L == 1:
        return ms[0]
    pi = uniformizer(v)
    units = [reduce_(v, f * pi ** (-m)) if m else reduce_(v, f) for f, m in zip(entries, ms)]
    R = v.residue_field
    minus_one = -R.one
    out = []
    support = [i for i, m in enumerate(ms) if m]
    for s in range(1, len(support) + 1):
        for S in combinations(support, s):
            coeff = 1
            for i in S:
                coeff *= ms[i]
            j = S[-1]
            coeff *= (-1) ** (L - 1 - j)
            ents = []
            for i in range(L):
                if i == j:
                    continue
                ents.append(minus_one if i in S else units[i])
            out.append((coeff, tuple(ents)))
    return out


def tame(v, s):
    """Residue of a symbol over a function field at the place ``v``.

    Length 2 returns a length-1 symbol; longer symbols return the list of
    terms (formal sum) over k(v); length 1 returns the valuation.
    """
    if not s.over_function_field:
        raise TypeError("residues are taken of symbols over function fields")
    if v.curve != s.field:
        raise FieldMismatch("place and symbol live on different curves")
    if s.length == 2:
        val = tame_value(v, *s.entries) ** s.coeff
        return MilnorSymbol(v.residue_field, [val])
    terms = tame_terms(v, s.entries)
    if s.length == 1:
        return s.coeff * terms
    return [MilnorSymbol(v.residue_field, ents, s.coeff * c) for c, ents in terms if c]


def symbol_support(entries):
    places = set()
    for f in entries:
        if not f.is_constant():
            places.update(candidate_places(f))
    curve = entries[0].curve
    places.add(curve.infinite_place())
    return sorted(places)


def weil_check(s):
    """prod_v Norm_{k(v)/k}(d_v s) as an FFElement of the constant field."""
    if s.length != 2 or not s.over_function_field:
        raise ValueError("weil_check takes a length-2 symbol over a function field")
    C = s.field
    f, g = s.entries
    k = C.base
    acc = k.one_code
    for v in symbol_support([f, g]):
        if ord_(v, f) == 0 and ord_(v, g) == 0:
            continue
        val = tame_value(v, f, g)
        acc = k.mul(acc, C.tower.norm_code(C.m0, v.abs_degree, val.code))
    return FFElement(k, acc) ** s.coeff


def field_of_order(q):
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return standard_field(p, m)


def steinberg_k2_oracle(q):
    """K_2(F_q) as F_q^x (x) F_q^x modulo a (x) (1 - a), by explicit presentation."""
    if q > 2 ** 8:
        raise ValueError("the Steinberg oracle is limited to q <= 256")
    F = field_of_order(q)
    U = cyclic(q - 1)
    T = TensorProduct([U, U])
    n = len(T.raw_moduli)
    rows = []
    for j, d in enumerate(T.raw_moduli):
        r = [0] * n
        r[j] = d
        rows.append(r)
    if n:
        for a in range(2, q):
            b = F.sub(F.one_code, a)
            rows.append(T.raw_coords([(F.log(a),), (F.log(b),)]))
    group, _ = quotient(n, rows)
    return group


__all__ = ["MilnorSymbol", "tame", "tame_value", "tame_terms", "weil_check", "steinberg_k2_oracle",
           "field_of_order", "is_prime"]
