"""Function fields of P^1 and of constant elliptic curves over finite fields.

A curve lives over a constant field ``base`` that is ``tower.field(m0)`` for a
:class:`~kgroups.finite_field.Tower`; residue fields of places are the tower
fields ``tower.field(m0 * deg)``, so reductions at different places and the
embeddings of constants into them are mutually compatible.

Elliptic curves are in short Weierstrass form y^2 = x^3 + a x + b and need
characteristic > 3. Elements of k(E) are kept as (a(x) + b(x) y) / d(x) with
gcd(a, b, d) = 1 and d monic.
"""
from functools import total_ordering

from . import poly
from .abelian import FiniteGroupModel, FinAbGroup
from .errors import DegreeOverflow, FieldMismatch, FieldTooLarge, PoleAtPlace, ZeroElement
from .finite_field import FFElement, tower_for

P1 = "P1"
ELLIPTIC = "E"

# -- elliptic group law on element codes of a finite field ----------------------


def ec_neg(F, P):
    if P is None:
        return None
    return (P[0], F.neg(P[1]))


def ec_add(F, a, P, Q):
    """Chord-tangent sum; ``None`` is the point at infinity, ``a`` the x-coefficient."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if F.add(y1, y2) == 0:
            return None
        num = F.add(F.mul_int(F.mul(x1, x1), 3), a)
        lam = F.div(num, F.mul_int(y1, 2))
    else:
        lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
    x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
    y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
    return (x3, y3)


def ec_mul(F, a, P, k):
    if k < 0:
        P, k = ec_neg(F, P), -k
    acc = None
    while k:
        if k & 1:
            acc = ec_add(F, a, acc, P)
        k >>= 1
        if k:
            P = ec_add(F, a, P, P)
    return acc


def ec_on_curve(F, a, b, P):
    if P is None:
        return True
    x, y = P
    rhs = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a, x)), b)
    return F.mul(y, y) == rhs


def _ec_key(F, P):
    if P is None:
        return ()
    return (F.coeffs(P[0]), F.coeffs(P[1]))


class Curve:
    """P^1 or a constant elliptic curve over ``base``."""

    def __init__(self, kind, base, a=None, b=None, tower=None, degree_bound=None):
        self.kind = kind
        self.base = base
        self.tower = tower or tower_for(base)
        self.m0 = self.tower.degree(base)
        self.degree_bound = degree_bound
        if kind == ELLIPTIC:
            if base.p <= 3:
                raise ValueError("short Weierstrass curves need characteristic > 3")
            self.a = base.element(a).code
            self.b = base.element(b).code
            F = base
            disc = F.add(F.mul_int(F.pow(self.a, 3), 4), F.mul_int(F.mul(self.b, self.b), 27))
            if disc == 0:
                raise ValueError("singular Weierstrass equation")
            # x^3 + a x + b as a polynomial over base
            self.rhs = poly.trim([self.b, self.a, 0, 1])
        elif kind != P1:
            raise ValueError(f"unknown curve kind {kind!r}")
        self._place_cache = {}
        self._points_cache = {}

    # -- descriptive -----------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, Curve) and self.kind == other.kind and self.base == other.base
                and self.tower is other.tower and getattr(self, "a", None) == getattr(other, "a", None)
                and getattr(self, "b", None) == getattr(other, "b", None))

    def __hash__(self):
        return hash((self.kind, self.base, getattr(self, "a", None), getattr(self, "b", None)))

    def __repr__(self):
        if self.kind == P1:
            return f"P1({self.base})"
        return f"E({self.base}; {self.base.code_element(self.a)},{self.base.code_element(self.b)})"

    @property
    def is_elliptic(self):
        return self.kind == ELLIPTIC

    # -- elements ----------------------------------------------------------
    def const(self, c):
        c = self.base.element(c).code
        if self.kind == P1:
            return RatFunc(self, poly.constant(self.base, c), [1])
        return EllFunc(self, poly.constant(self.base, c), [], [1])

    @property
    def t(self):
        if self.kind != P1:
            raise AttributeError("t is the coordinate of P^1")
        return RatFunc(self, [0, 1], [1])

    @property
    def x(self):
        if self.kind != ELLIPTIC:
            raise AttributeError("x is a coordinate of an elliptic curve")
        return EllFunc(self, [0, 1], [], [1])

    @property
    def y(self):
        if self.kind != ELLIPTIC:
            raise AttributeError("y is a coordinate of an elliptic curve")
        return EllFunc(self, [], [1], [1])

    def from_polys(self, num, ycoef=None, den=None):
        """Element (num + ycoef*y)/den from coefficient lists, lowest degree first.

        Coefficients may be FFElements or ints; ``ycoef`` must be empty on P^1.
        """
        F = self.base

        def conv(cs):
            return poly.trim([F.element(c).code for c in cs]) if cs else []

        den = conv(den) if den is not None else [1]
        if self.kind == P1:
            if ycoef:
                raise ValueError("P^1 elements have no y part")
            return RatFunc(self, conv(num), den)
        return EllFunc(self, conv(num), conv(ycoef), den)

    # -- residue fields --------------------------------------------------
    def _check_degree(self, n):
        if self.degree_bound is not None and n > self.degree_bound:
            raise DegreeOverflow(f"place of degree {n} exceeds the bound {self.degree_bound}",
                                 degree=n, bound=self.degree_bound)
        if not self.tower.can_build(n):
            raise DegreeOverflow(f"residue field of degree {n} exceeds the field cap", degree=n)

    def residue_field(self, abs_degree):
        self._check_degree(abs_degree)
        try:
            return self.tower.field(abs_degree)
        except FieldTooLarge as exc:
            raise DegreeOverflow(str(exc), degree=abs_degree) from None

    def const_embedding(self, abs_degree):
        return self.tower.embedding(self.m0, abs_degree)

    def eval_poly(self, f, abs_degree, value):
        """Evaluate a base polynomial at ``value`` (a code of the residue field)."""
        F = self.tower.field(abs_degree)
        emb = self.const_embedding(abs_degree)
        acc = 0
        for c in reversed(f):
            acc = F.add(F.mul(acc, value), emb.image_code(c))
        return acc

    # -- places ------------------------------------------------------------
    def infinite_place(self):
        return Place(self, "inf" if self.kind == P1 else "O", (), None, 1)

    def places_over(self, pi):
        """All places over the monic irreducible ``pi`` (in t, or in x for E)."""
        pi = tuple(pi)
        hit = self._place_cache.get(pi)
        if hit is not None:
            return hit
        e = len(pi) - 1
        if self.kind == P1:
            self._check_degree(self.m0 * e)
            out = [Place(self, "finite", pi, None, e)]
        else:
            out = self._elliptic_places_over(pi, e)
        self._place_cache[pi] = out
        return out

    def _elliptic_places_over(self, pi, e):
        n1 = self.m0 * e
        F1 = self.residue_field(n1)
        emb1 = self.const_embedding(n1)
        xs = poly.roots(F1, [emb1.image_code(c) for c in pi])
        q = self.base.order
        x0 = xs[0]
        fx = self.eval_poly(self.rhs, n1, x0)
        if fx == 0:
            rep = min(((x, 0) for x in xs), key=lambda P: _ec_key(F1, P))
            return [Place(self, "point", pi, rep, e)]
        y0 = F1.sqrt(fx)
        if y0 is not None:
            reps = set()
            for y in (y0, F1.neg(y0)):
                orbit = [(F1.frobenius(x0, i, q=q), F1.frobenius(y, i, q=q)) for i in range(e)]
                reps.add(min(orbit, key=lambda P: _ec_key(F1, P)))
            return [Place(self, "point", pi, rep, e) for rep in sorted(reps, key=lambda P: _ec_key(F1, P))]
        n2 = 2 * n1
        F2 = self.residue_field(n2)
        x2 = self.tower.embedding(n1, n2).image_code(x0)
        y2 = F2.sqrt(self.eval_poly(self.rhs, n2, x2))
        orbit = [(F2.frobenius(x2, i, q=q), F2.frobenius(y2, i, q=q)) for i in range(2 * e)]
        rep = min(orbit, key=lambda P: _ec_key(F2, P))
        return [Place(self, "point", pi, rep, 2 * e)]

    def place_of_point(self, P, abs_degree):
        """The closed point through an affine point with coordinates in a tower field."""
        if P is None:
            return self.infinite_place()
        F = self.tower.field(abs_degree)
        x0 = P[0]
        pi = self.minimal_polynomial(x0, abs_degree)
        for v in self.places_over(pi):
            if v.abs_degree > abs_degree or abs_degree % v.abs_degree:
                continue
            emb = self.tower.embedding(v.abs_degree, abs_degree)
            rep = (emb.image_code(v.point[0]), emb.image_code(v.point[1]))
            q = self.base.order
            for i in range(v.degree):
                if (F.frobenius(rep[0], i, q=q), F.frobenius(rep[1], i, q=q)) == tuple(P):
                    return v
        raise AssertionError("point does not lie on a place over its x-coordinate")

    def minimal_polynomial(self, value, abs_degree):
        """Minimal polynomial over ``base`` of a code of ``tower.field(abs_degree)``."""
        F = self.tower.field(abs_degree)
        q = self.base.order
        conj = [value]
        while True:
            nxt = F.frobenius(conj[-1], 1, q=q)
            if nxt == conj[0]:
                break
            conj.append(nxt)
        f = [1]
        for c in conj:
            f = poly.mul(F, f, [F.neg(c), 1])
        k = len(conj)
        emb = self.const_embedding(self.m0 * k)
        sub = self.tower.embedding(self.m0 * k, abs_degree)
        return tuple(emb.preimage_code(sub.preimage_code(c)) for c in f)

    # -- points (elliptic) ---------------------------------------------------
    def points(self, abs_degree=None):
        """All points of E over ``tower.field(abs_degree)`` (default: the base)."""
        n = self.m0 if abs_degree is None else abs_degree
        hit = self._points_cache.get(n)
        if hit is not None:
            return hit
        F = self.tower.field(n)
        emb = self.const_embedding(n)
        a, b = emb.image_code(self.a), emb.image_code(self.b)
        pts = [None]
        for x in range(F.order):
            rhs = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a, x)), b)
            y = F.sqrt(rhs)
            if y is None:
                continue
            pts.append((x, y))
            if y:
                pts.append((x, F.neg(y)))
        self._points_cache[n] = pts
        return pts

    def coefficient_codes(self, abs_degree):
        emb = self.const_embedding(abs_degree)
        return emb.image_code(self.a), emb.image_code(self.b)

    def trace_point(self, P, abs_degree, target=None):
        """Sum of the Galois conjugates of P over ``tower.field(target)``, returned in it."""
        target = self.m0 if target is None else target
        F = self.tower.field(abs_degree)
        a, _ = self.coefficient_codes(abs_degree)
        q = self.tower.q
        acc = None
        for i in range(abs_degree // target):
            conj = None if P is None else (F.frobenius(P[0], target * i, q=q), F.frobenius(P[1], target * i, q=q))
            acc = ec_add(F, a, acc, conj)
        if acc is None:
            return None
        emb = self.tower.embedding(target, abs_degree)
        return (emb.preimage_code(acc[0]), emb.preimage_code(acc[1]))


def rational_line(base, tower=None, degree_bound=None):
    return Curve(P1, base, tower=tower, degree_bound=degree_bound)


def elliptic_curve(base, a, b, tower=None, degree_bound=None):
    return Curve(ELLIPTIC, base, a, b, tower=tower, degree_bound=degree_bound)


@total_ordering
class Place:
    """A closed point; ``degree`` is relative to the curve's constant field."""

    __slots__ = ("curve", "kind", "poly", "point", "degree", "_root")

    def __init__(self, curve, kind, pi, point, degree):
        self.curve = curve
        self.kind = kind
        self.poly = tuple(pi)
        self.point = point
        self.degree = degree
        self._root = None

    @property
    def abs_degree(self):
        return self.curve.m0 * self.degree

    @property
    def residue_field(self):
        return self.curve.tower.field(self.abs_degree)

    @property
    def is_infinite(self):
        return self.kind in ("inf", "O")

    def root(self):
        """Image of t in the residue field (P^1 finite places)."""
        if self._root is None:
            F = self.residue_field
            emb = self.curve.const_embedding(self.abs_degree)
            rts = poly.roots(F, [emb.image_code(c) for c in self.poly])
            self._root = min(rts, key=F.coeffs)
        return self._root

    def key(self):
        F = self.residue_field
        pt = () if self.point is None else (F.coeffs(self.point[0]), F.coeffs(self.point[1]))
        return (self.is_infinite, self.degree, poly.sort_key(list(self.poly)), pt)

    def __eq__(self, other):
        return (isinstance(other, Place) and self.curve == other.curve and self.kind == other.kind
                and self.poly == other.poly and self.point == other.point)

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash((self.kind, self.poly, self.point))

    def __repr__(self):
        F = self.curve.base
        if self.kind == "inf":
            return "v(inf)"
        if self.kind == "O":
            return "v(O)"
        if self.kind == "finite":
            return f"v({_poly_str(F, list(self.poly), 't')})"
        R = self.residue_field
        return f"v({R.code_element(self.point[0])!r},{R.code_element(self.point[1])!r})"


def _poly_str(F, f, var):
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        cs = repr(F.code_element(c))
        if i == 0:
            terms.append(cs)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            terms.append(mon if c == 1 else f"{cs}*{mon}")
    return "+".join(terms)


class RatFunc:
    """num/den in base(t), reduced with monic denominator."""

    __slots__ = ("curve", "num", "den")

    def __init__(self, curve, num, den, normalized=False):
        F = curve.base
        self.curve = curve
        if not normalized:
            num, den = poly.trim(list(num)), poly.trim(list(den))
            if not den:
                raise ZeroElement("zero denominator")
            if not num:
                den = [1]
            else:
                g = poly.gcd(F, num, den)
                if len(g) > 1:
                    num, den = poly.exact_div(F, num, g), poly.exact_div(F, den, g)
                lc = den[-1]
                if lc != 1:
                    inv = F.inv(lc)
                    num, den = poly.scale(F, num, inv), poly.scale(F, den, inv)
        self.num, self.den = num, den

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.curve != self.curve:
                raise FieldMismatch("elements of different function fields")
            return other
        return self.curve.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        F = self.curve.base
        return RatFunc(self.curve, poly.add(F, poly.mul(F, self.num, o.den), poly.mul(F, o.num, self.den)),
                       poly.mul(F, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.curve, poly.neg(self.curve.base, self.num), self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.curve.base
        return RatFunc(self.curve, poly.mul(F, self.num, o.num), poly.mul(F, self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroElement("inverse of zero")
        return RatFunc(self.curve, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        base = self if e >= 0 else self.inverse()
        F = self.curve.base
        e = abs(e)
        return RatFunc(self.curve, poly.power(F, base.num, e), poly.power(F, base.den, e), normalized=True)

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.curve == other.curve and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def __repr__(self):
        F = self.curve.base
        n = _poly_str(F, self.num, "t")
        if self.den == [1]:
            return n
        return f"({n})/({_poly_str(F, self.den, 't')})"


class EllFunc:
    """(a(x) + b(x) y) / d(x) in the function field of an elliptic curve."""

    __slots__ = ("curve", "a", "b", "den")

    def __init__(self, curve, a, b, den, normalized=False):
        F = curve.base
        self.curve = curve
        if not normalized:
            a, b, den = poly.trim(list(a)), poly.trim(list(b)), poly.trim(list(den))
            if not den:
                raise ZeroElement("zero denominator")
            if not a and not b:
                den = [1]
            else:
                g = poly.gcd(F, poly.gcd(F, a, b), den)
                if len(g) > 1:
                    a, b, den = (poly.exact_div(F, a, g), poly.exact_div(F, b, g), poly.exact_div(F, den, g))
                lc = den[-1]
                if lc != 1:
                    inv = F.inv(lc)
                    a, b, den = poly.scale(F, a, inv), poly.scale(F, b, inv), poly.scale(F, den, inv)
        self.a, self.b, self.den = a, b, den

    def _coerce(self, other):
        if isinstance(other, EllFunc):
            if other.curve != self.curve:
                raise FieldMismatch("elements of different function fields")
            return other
        return self.curve.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        F = self.curve.base
        return EllFunc(self.curve,
                       poly.add(F, poly.mul(F, self.a, o.den), poly.mul(F, o.a, self.den)),
                       poly.add(F, poly.mul(F, self.b, o.den), poly.mul(F, o.b, self.den)),
                       poly.mul(F, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        F = self.curve.base
        return EllFunc(self.curve, poly.neg(F, self.a), poly.neg(F, self.b), self.den, normalized=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.curve.base
        rhs = self.curve.rhs
        a = poly.add(F, poly.mul(F, self.a, o.a), poly.mul(F, poly.mul(F, self.b, o.b), rhs))
        b = poly.add(F, poly.mul(F, self.a, o.b), poly.mul(F, self.b, o.a))
        return EllFunc(self.curve, a, b, poly.mul(F, self.den, o.den))

    __rmul__ = __mul__

    def norm_poly(self):
        """a^2 - b^2 (x^3 + a x + b) for the numerator a + b y."""
        F = self.curve.base
        return norm_of(F, self.a, self.b, self.curve.rhs)

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("inverse of zero")
        F = self.curve.base
        return EllFunc(self.curve, poly.mul(F, self.den, self.a), poly.neg(F, poly.mul(F, self.den, self.b)),
                       self.norm_poly())

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        base = self if e >= 0 else self.inverse()
        acc = self.curve.const(1)
        e = abs(e)
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def conjugate(self):
        F = self.curve.base
        return EllFunc(self.curve, self.a, poly.neg(F, self.b), self.den, normalized=True)

    def is_zero(self):
        return not self.a and not self.b

    def is_constant(self):
        return not self.b and len(self.a) <= 1 and len(self.den) == 1

    def __eq__(self, other):
        if not isinstance(other, EllFunc):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.curve == other.curve and (self.a, self.b, self.den) == (other.a, other.b, other.den)

    def __hash__(self):
        return hash((tuple(self.a), tuple(self.b), tuple(self.den)))

    def __repr__(self):
        F = self.curve.base
        parts = []
        if self.a:
            parts.append(_poly_str(F, self.a, "x"))
        if self.b:
            parts.append(f"({_poly_str(F, self.b, 'x')})*y")
        n = "+".join(parts) or "0"
        if self.den == [1]:
            return n
        return f"({n})/({_poly_str(F, self.den, 'x')})"


def norm_of(F, a, b, rhs):
    return poly.sub(F, poly.mul(F, a, a), poly.mul(F, poly.mul(F, b, b), rhs))


def _val(F, f, pi):
    return poly.valuation(F, f, list(pi)) if f else None


def _strip(F, f, pi, k):
    for _ in range(k):
        f = poly.exact_div(F, f, list(pi))
    return f


def _check_place(v, f):
    if v.curve != f.curve:
        raise FieldMismatch(f"{v} is not a place of the curve of {f}")


def ord_(v, f):
    """Discrete valuation of ``f`` at the place ``v``."""
    _check_place(v, f)
    if f.is_zero():
        raise ZeroElement("valuation of zero")
    F = f.curve.base
    if isinstance(f, RatFunc):
        if v.kind == "inf":
            return len(f.den) - len(f.num)
        return poly.valuation(F, f.num, list(v.poly)) - poly.valuation(F, f.den, list(v.poly))
    if v.kind == "O":
        dd = len(f.den) - 1
        cands = []
        if f.a:
            cands.append(-2 * (len(f.a) - 1 - dd))
        if f.b:
            cands.append(-2 * (len(f.b) - 1 - dd) - 3)
        return min(cands)
    return _ell_numerator_ord(v, f) - _ell_ram(v) * poly.valuation(F, f.den, list(v.poly))


def _ell_ram(v):
    return 2 if v.point[1] == 0 else 1


def _ell_numerator_parts(v, f):
    F = f.curve.base
    pi = v.poly
    va, vb = _val(F, f.a, pi), _val(F, f.b, pi)
    s = min(x for x in (va, vb) if x is not None)
    return s, _strip(F, f.a, pi, s) if f.a else [], _strip(F, f.b, pi, s) if f.b else []


def _ell_numerator_ord(v, f):
    F = f.curve.base
    curve = f.curve
    s, a1, b1 = _ell_numerator_parts(v, f)
    N = norm_of(F, a1, b1, curve.rhs)
    if v.point[1] == 0:
        return 2 * s + poly.valuation(F, N, list(v.poly))
    n = v.abs_degree
    R = curve.tower.field(n)
    x0, y0 = v.point
    ev = R.add(curve.eval_poly(a1, n, x0), R.mul(curve.eval_poly(b1, n, x0), y0))
    if ev:
        return s
    return s + poly.valuation(F, N, list(v.poly))


def reduce_(v, f):
    """Image of ``f`` in the residue field at ``v`` (an FFElement)."""
    o = ord_(v, f) if not f.is_zero() else None
    R = v.residue_field
    if o is None or o > 0:
        return R.zero
    if o < 0:
        raise PoleAtPlace(f"{f} has a pole of order {-o} at {v}")
    return FFElement(R, _unit_value(v, f))


def _unit_value(v, f):
    curve = f.curve
    F = curve.base
    n = v.abs_degree
    R = curve.tower.field(n)
    emb = curve.const_embedding(n)
    if isinstance(f, RatFunc):
        if v.kind == "inf":
            return emb.image_code(F.div(f.num[-1], f.den[-1]))
        pi = v.poly
        k = poly.valuation(F, f.num, list(pi))
        num = _strip(F, f.num, pi, k)
        den = _strip(F, f.den, pi, k)
        th = v.root()
        return R.div(curve.eval_poly(num, n, th), curve.eval_poly(den, n, th))
    if v.kind == "O":
        return emb.image_code(f.a[-1])
    pi = v.poly
    x0, y0 = v.point
    w = poly.valuation(F, f.den, list(pi))
    d1 = _strip(F, f.den, pi, w)
    dval = curve.eval_poly(d1, n, x0)
    if y0 == 0:
        sa = poly.valuation(F, f.a, list(pi))
        a1 = _strip(F, f.a, pi, sa)
        return R.div(curve.eval_poly(a1, n, x0), dval)
    s, a1, b1 = _ell_numerator_parts(v, f)
    av, bv = curve.eval_poly(a1, n, x0), curve.eval_poly(b1, n, x0)
    ev = R.add(av, R.mul(bv, y0))
    if ev:
        return R.div(ev, dval)
    N = norm_of(F, a1, b1, curve.rhs)
    t = poly.valuation(F, N, list(pi))
    N1 = _strip(F, N, pi, t)
    cv = R.sub(av, R.mul(bv, y0))
    return R.div(curve.eval_poly(N1, n, x0), R.mul(dval, cv))


class Divisor:
    """Finite formal sum of places."""

    def __init__(self, curve, mults=None):
        self.curve = curve
        self.mults = {v: m for v, m in (mults or {}).items() if m}

    def degree(self):
        return sum(m * v.degree for v, m in self.mults.items())

    def support(self):
        return sorted(self.mults)

    def __getitem__(self, v):
        return self.mults.get(v, 0)

    def __add__(self, other):
        out = dict(self.mults)
        for v, m in other.mults.items():
            out[v] = out.get(v, 0) + m
        return Divisor(self.curve, out)

    def __neg__(self):
        return Divisor(self.curve, {v: -m for v, m in self.mults.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mults == other.mults

    def __len__(self):
        return len(self.mults)

    def items(self):
        return [(v, self.mults[v]) for v in self.support()]

    def __repr__(self):
        return "{" + ", ".join(f"{v}: {m}" for v, m in self.items()) + "}"


def candidate_places(f):
    """Places that can lie in the support of ``f`` (zeros and poles)."""
    curve = f.curve
    F = curve.base
    polys = []
    if isinstance(f, RatFunc):
        polys = [f.num, f.den]
    else:
        polys = [f.den, f.norm_poly()]
    seen = {}
    for g in polys:
        if len(g) <= 1:
            continue
        _, facs = poly.factor(F, g)
        for pi, _ in facs:
            seen[tuple(pi)] = True
    out = [curve.infinite_place()]
    for pi in sorted(seen, key=lambda p: poly.sort_key(list(p))):
        out.extend(curve.places_over(pi))
    return out


def divisor(f):
    if f.is_zero():
        raise ZeroElement("divisor of zero")
    D = {}
    for v in candidate_places(f):
        o = ord_(v, f)
        if o:
            D[v] = o
    return Divisor(f.curve, D)


def divisor_sum(D):
    """Albanese image in E(base): sum of mult * trace(representative)."""
    curve = D.curve
    a = curve.a
    F = curve.base
    acc = None
    for v, m in D.items():
        if v.kind == "O":
            continue
        tr = curve.trace_point(v.point, v.abs_degree)
        acc = ec_add(F, a, acc, ec_mul(F, a, tr, m))
    return acc


class Pic0:
    """Degree-zero divisor classes; for E identified with E(base) via P -> [P] - [O]."""

    def __init__(self, curve):
        self.curve = curve
        if curve.kind == P1:
            self.group = FinAbGroup()
            self.model = None
        else:
            F = curve.base
            self.model = FiniteGroupModel(curve.points(), lambda P, Q: ec_add(F, curve.a, P, Q), None)
            self.group = self.model.group

    def divisor_class(self, D):
        if D.degree() != 0:
            raise ValueError("divisor class of a divisor of nonzero degree")
        if self.model is None:
            return self.group.zero()
        return self.model.element(divisor_sum(D))

    def point_class(self, P):
        """[P] - [O] for a base-rational point."""
        if self.model is None:
            return self.group.zero()
        return self.model.element(P)


def pic0_structure(curve):
    return Pic0(curve).group


def uniformizer(v):
    """A global element with valuation 1 at ``v``."""
    C = v.curve
    if C.kind == P1:
        if v.kind == "inf":
            return C.t.inverse()
        return RatFunc(C, list(v.poly), [1])
    if v.kind == "O":
        return C.x / C.y
    if v.point[1] == 0:
        return C.y
    return EllFunc(C, list(v.poly), [], [1])


def random_function(curve, rng, degree=3):
    """A random nonzero element with numerator and denominator parts of degree <= ``degree``."""
    F = curve.base
    q = F.order

    def rpoly(d, nonzero=False):
        while True:
            f = poly.trim([rng.randrange(q) for _ in range(d + 1)])
            if f or not nonzero:
                return f

    while True:
        den = rpoly(rng.randint(0, degree), nonzero=True)
        num = rpoly(rng.randint(0, degree))
        if curve.kind == P1:
            f = RatFunc(curve, num, den)
        else:
            f = EllFunc(curve, num, rpoly(rng.randint(0, max(degree - 1, 0))), den)
        if not f.is_zero():
            return f
