"""Split semi-abelian varieties G = G_m^n x E and the extended tame symbol.

Points are taken over a finite field of the curve's tower (coordinates are
FFElements) or over the function field of a curve whose constants lie in that
tower (coordinates are function-field elements). The elliptic coordinate is an
affine pair or ``None`` for the origin O.
"""
from .errors import FieldMismatch, NotIntegral, ZeroElement
from .finite_field import FFElement, FieldExtension, tower_for
from .function_field import Curve, candidate_places, ord_, reduce_


def _is_zero(x):
    return x.is_zero()


def ec_add_generic(a, P, Q):
    """Chord-tangent addition on y^2 = x^3 + a x + b for any field-like coordinates."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if _is_zero(y1 + y2):
            return None
        lam = (x1 * x1 * 3 + a) / (y1 * 2)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def ec_neg_generic(P):
    return None if P is None else (P[0], -P[1])


def ec_scalar_generic(a, P, k):
    if k < 0:
        P, k = ec_neg_generic(P), -k
    acc = None
    while k:
        if k & 1:
            acc = ec_add_generic(a, acc, P)
        k >>= 1
        if k:
            P = ec_add_generic(a, P, P)
    return acc


class SemiAbelian:
    """G_m^n x E over ``base`` (E optional, a constant elliptic Curve)."""

    def __init__(self, n=1, E=None, base=None, tower=None):
        if n < 0:
            raise ValueError("torus rank must be non-negative")
        if E is not None and not E.is_elliptic:
            raise ValueError("the abelian part must be an elliptic curve")
        self.n = n
        self.E = E
        self.base = E.base if E is not None else base
        if self.base is None:
            raise ValueError("a base field is required")
        self.tower = E.tower if E is not None else (tower or tower_for(self.base))

    def __eq__(self, other):
        return isinstance(other, SemiAbelian) and (self.n, self.E, self.base) == (other.n, other.E, other.base)

    def __hash__(self):
        return hash((self.n, self.E, self.base))

    def __repr__(self):
        parts = []
        if self.n:
            parts.append("Gm" if self.n == 1 else f"Gm^{self.n}")
        if self.E is not None:
            parts.append(repr(self.E))
        return " x ".join(parts) or "0"

    # -- coefficients ------------------------------------------------------
    def _coeffs_in(self, field):
        """Curve coefficients (a, b) as elements of ``field``."""
        E = self.E
        if isinstance(field, FieldExtension):
            n = self.tower.degree(field)
            a, b = E.coefficient_codes(n)
            return FFElement(field, a), FFElement(field, b)
        n = field.m0
        a, b = E.coefficient_codes(n)
        return field.const(FFElement(field.base, a)), field.const(FFElement(field.base, b))

    def _one(self, field):
        return field.one if isinstance(field, FieldExtension) else field.const(1)

    # -- points ----------------------------------------------------------------
    def point(self, field, torus=(), ell=None):
        torus = tuple(torus)
        if len(torus) != self.n:
            raise ValueError(f"expected {self.n} torus coordinates")
        if isinstance(field, FieldExtension):
            torus = tuple(field.element(c) for c in torus)
            if ell is not None:
                ell = (field.element(ell[0]), field.element(ell[1]))
        elif isinstance(field, Curve):
            torus = tuple(c if not isinstance(c, (int, FFElement)) else field.const(c) for c in torus)
            if ell is not None:
                ell = tuple(c if not isinstance(c, (int, FFElement)) else field.const(c) for c in ell)
        else:
            raise TypeError("points live over a FieldExtension or a Curve")
        for c in torus:
            if c.is_zero():
                raise ZeroElement("torus coordinates are units")
        if ell is not None:
            if self.E is None:
                raise ValueError("this group has no elliptic part")
            a, b = self._coeffs_in(field)
            x, y = ell
            if y * y != x * x * x + a * x + b:
                raise ValueError(f"{ell} is not on {self.E}")
        return GPoint(self, field, torus, ell)

    def identity(self, field):
        one = self._one(field)
        return GPoint(self, field, (one,) * self.n, None)


class GPoint:
    __slots__ = ("group", "field", "torus", "ell")

    def __init__(self, group, field, torus, ell):
        self.group = group
        self.field = field
        self.torus = tuple(torus)
        self.ell = ell

    def _check(self, other):
        if not isinstance(other, GPoint) or other.group != self.group:
            raise FieldMismatch("points of different groups")
        if other.field != self.field:
            raise FieldMismatch("points over different fields")

    def __add__(self, other):
        return group_op("add", self, other)

    def __neg__(self):
        return group_op("neg", self)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return group_op("scalar", self, k)

    __rmul__ = __mul__

    def is_identity(self):
        return self.ell is None and all(c == 1 for c in self.torus)

    def __eq__(self, other):
        return (isinstance(other, GPoint) and self.group == other.group and self.field == other.field
                and self.torus == other.torus and self.ell == other.ell)

    def __hash__(self):
        return hash((self.torus, self.ell))

    def __repr__(self):
        t = "(" + ",".join(repr(c) for c in self.torus) + ")"
        if self.group.E is None:
            return t
        e = "O" if self.ell is None else f"({self.ell[0]!r},{self.ell[1]!r})"
        return f"({t},{e})"


def group_op(op, P, Q=None):
    G = P.group
    if op == "add":
        P._check(Q)
        torus = tuple(a * b for a, b in zip(P.torus, Q.torus))
        ell = None
        if G.E is not None:
            ell = ec_add_generic(G._coeffs_in(P.field)[0], P.ell, Q.ell)
        return GPoint(G, P.field, torus, ell)
    if op == "neg":
        return GPoint(G, P.field, tuple(a.inverse() for a in P.torus), ec_neg_generic(P.ell))
    if op == "scalar":
        k = int(Q)
        torus = tuple(a ** k for a in P.torus)
        ell = None
        if G.E is not None:
            ell = ec_scalar_generic(G._coeffs_in(P.field)[0], P.ell, k)
        return GPoint(G, P.field, torus, ell)
    raise ValueError(f"unknown group operation {op!r}")


def g_norm(sub, sup, P):
    """Norm G(sup) -> G(sub): field norm on the torus, Galois trace on E."""
    G = P.group
    if P.field != sup:
        raise FieldMismatch("point is not over the source field")
    T = G.tower
    a, c = T.degree(sub), T.degree(sup)
    torus = tuple(FFElement(sub, T.norm_code(a, c, x.code)) for x in P.torus)
    ell = None
    if G.E is not None and P.ell is not None:
        tr = G.E.trace_point((P.ell[0].code, P.ell[1].code), c, a)
        if tr is not None:
            ell = (FFElement(sub, tr[0]), FFElement(sub, tr[1]))
    return GPoint(G, sub, torus, ell)


def embed_point(sub, sup, P, embedding=None):
    """Image of a point under a tower embedding (or the given one)."""
    G = P.group
    emb = embedding or G.tower.embedding(G.tower.degree(sub), G.tower.degree(sup))
    torus = tuple(FFElement(sup, emb.image_code(x.code)) for x in P.torus)
    ell = None if P.ell is None else tuple(FFElement(sup, emb.image_code(x.code)) for x in P.ell)
    return GPoint(G, sup, torus, ell)


def constant_point(K, P):
    """A point over a finite field, viewed over the function field K with those constants."""
    G = P.group
    if P.field != K.base:
        P = embed_point(P.field, K.base, P)
    torus = tuple(K.const(x) for x in P.torus)
    ell = None if P.ell is None else tuple(K.const(x) for x in P.ell)
    return GPoint(G, K, torus, ell)


def r_map(v, g):
    return tuple(ord_(v, c) for c in g.torus)


def _reduce_ell(v, g):
    if g.ell is None:
        return None
    X, Y = g.ell
    if X.is_zero():
        x0 = v.residue_field.zero
    elif ord_(v, X) < 0:
        return None
    else:
        x0 = reduce_(v, X)
    y0 = reduce_(v, Y)
    return (x0, y0)


def reduce_point(v, g):
    """g(v) in G(k(v)) for g integral at v."""
    G = g.group
    R = v.residue_field
    torus = []
    for c in g.torus:
        if ord_(v, c) != 0:
            raise NotIntegral(f"torus coordinate {c} is not a unit at {v}")
        torus.append(reduce_(v, c))
    ell = _reduce_ell(v, g)
    if ell is not None:
        a, b = G._coeffs_in(R)
        x0, y0 = ell
        assert y0 * y0 == x0 * x0 * x0 + a * x0 + b, "reduction left the curve"
    return GPoint(G, R, tuple(torus), ell)


def is_integral(v, g):
    return all(ord_(v, c) == 0 for c in g.torus)


def extended_tame(v, g, h):
    """eps(g, h) g^m prod h^(-r_i), reduced at v, where m = ord_v h and r = r_map(v, g)."""
    if h.is_zero():
        raise ZeroElement("extended tame symbol needs h != 0")
    G = g.group
    R = v.residue_field
    m = ord_(v, h)
    r = r_map(v, g)
    torus = []
    for c, ri in zip(g.torus, r):
        if m == 0 and ri == 0:
            torus.append(R.one)
            continue
        val = reduce_(v, c ** m * h ** (-ri))
        if (m * ri) % 2:
            val = -val
        torus.append(val)
    ell = None
    if G.E is not None:
        base = _reduce_ell(v, g)
        if base is not None:
            a, b = G._coeffs_in(R)
            assert base[1] * base[1] == base[0] ** 3 + a * base[0] + b, "abelian part failed to reduce"
            ell = ec_scalar_generic(a, base, m)
    return GPoint(G, R, tuple(torus), ell)


def reciprocity_places(g, h):
    """Places where d_v(g, h) can be nontrivial."""
    K = h.curve
    places = set(candidate_places(h)) if not h.is_constant() else {K.infinite_place()}
    for c in g.torus:
        if not c.is_constant():
            places.update(candidate_places(c))
    return sorted(places)


def reciprocity_sum(g, h):
    """sum_v Norm_{k(v)/k} d_v(g, h) in G(k); reciprocity says this is the identity."""
    K = h.curve
    k = K.base
    acc = g.group.identity(k)
    for v in reciprocity_places(g, h):
        acc = acc + g_norm(k, v.residue_field, extended_tame(v, g, h))
    return acc
