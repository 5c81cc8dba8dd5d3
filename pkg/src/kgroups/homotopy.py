"""Equality of the two fiber classes phi_0, phi_1 of a finite family Z -> A^1.

A family is a curve Z with a finite map p: Z -> A^1_s and maps f_i from Z to
the slot groups. Its fiber over j is a zero-cycle sum n_z [z]; the class
phi_j = sum n_z {f_1(z), ..., f_r(z)}_{k(z)/k} lives in the truncated quotient.

Supported shapes (anything else raises UnsupportedShape):

``constant``
    Z = A^1 x {pt}, every slot a fixed point over k.
``gm``
    Z: Phi(s, u) = 0 inside A^1 x G_m, with Phi = sum_i a_i(s) u^i whose
    leading and constant coefficients are nonzero constants, so p is finite and
    u is a unit on Z. Slots are ``("mono", c, e)`` (the map c u^e into G_m, c a field code) or
    ``("const", P)``.
``ex``
    Z: Phi(s, x) = 0 inside A^1 x E, monic-up-to-constant in x. Slots are
    ``("point", e)`` (the map e * (x, y) into E) or ``("const", P)``.
"""
import random
from dataclasses import dataclass, field

from . import poly
from .errors import DegreeOverflow, UnsupportedShape
from .function_field import ord_
from .semiabelian import embed_point, g_norm
from .somekawa import SymbolTerm

SHAPES = ("constant", "gm", "ex")


@dataclass
class Family:
    shape: str
    slots: list
    phi: list = field(default_factory=list)  # phi[i] = a_i(s), list of base codes

    def describe(self, k):
        out = {"shape": self.shape, "slots": [_slot_repr(s) for s in self.slots]}
        if self.phi:
            var = "u" if self.shape == "gm" else "x"
            terms = []
            for i, a in enumerate(self.phi):
                if a:
                    terms.append(f"({_poly_repr(k, a, 's')})*{var}^{i}")
            out["phi"] = " + ".join(terms)
        return out


def _poly_repr(k, a, var):
    parts = []
    for i, c in enumerate(a):
        if c:
            parts.append(f"{k.code_element(c)!r}*{var}^{i}")
    return " + ".join(parts) or "0"


def _slot_repr(s):
    if s[0] == "const":
        return ["const", repr(s[1])]
    return [str(x) for x in s]


def _fiber_poly(k, phi, j):
    """Phi(j, .) as a polynomial over k."""
    jc = k.element(j).code
    return poly.trim([poly.evaluate(k, a, jc) if a else 0 for a in phi])


def _validate(A, fam):
    if fam.shape not in SHAPES:
        raise UnsupportedShape(f"unknown family shape {fam.shape!r}")
    if len(fam.slots) != A.r:
        raise UnsupportedShape(f"family has {len(fam.slots)} slot maps, the build has {A.r} slots")
    k = A.tower.field(1)
    for s, G in zip(fam.slots, A.groups):
        if s[0] == "const":
            P = s[1]
            if P.group != G or P.field != k:
                raise UnsupportedShape("constant slots take a point of the slot group over k")
        elif s[0] == "mono":
            if fam.shape != "gm" or G.n != 1 or G.E is not None:
                raise UnsupportedShape("monomial slots need the gm shape and a G_m slot")
            if not s[1]:
                raise UnsupportedShape("monomial slot with zero coefficient")
        elif s[0] == "point":
            if fam.shape != "ex" or G.n or G.E is None:
                raise UnsupportedShape("point slots need the ex shape and an elliptic slot")
        else:
            raise UnsupportedShape(f"unknown slot map {s[0]!r}")
    if fam.shape == "constant":
        if any(s[0] != "const" for s in fam.slots):
            raise UnsupportedShape("the constant shape takes constant slots only")
        return None
    phi = [poly.trim(list(a)) for a in fam.phi]
    while phi and not phi[-1]:
        phi.pop()
    if len(phi) < 2:
        raise UnsupportedShape("Phi must have positive degree in the fiber variable")
    if len(phi[-1]) != 1:
        raise UnsupportedShape("leading coefficient of Phi must be a nonzero constant (p finite)")
    if fam.shape == "gm" and len(phi[0]) != 1:
        raise UnsupportedShape("constant term of Phi must be a nonzero constant (u a unit on Z)")
    curve = None
    if fam.shape == "ex":
        curves = {G.E for s, G in zip(fam.slots, A.groups) if s[0] == "point"}
        if len(curves) != 1:
            raise UnsupportedShape("the ex shape needs exactly one elliptic curve among its slots")
        curve = curves.pop()
    return phi, curve


def fiber(A, fam, j):
    """Closed points over s = j as [(multiplicity, degree, fiber coordinate)]."""
    k = A.tower.field(1)
    phi, E = _validate(A, fam)
    f = _fiber_poly(k, phi, j)
    _, facs = poly.factor(k, f)
    out = []
    for p, n in facs:
        if fam.shape == "gm":
            e = len(p) - 1
            L = A.tower.field(e)
            emb = A.tower.embedding(1, e)
            rho = poly.roots(L, [emb.image_code(c) for c in p])[0]
            out.append((n, e, rho))
        else:
            fx = E.from_polys(p)
            for v in E.places_over(p):
                out.append((n * ord_(v, fx), v.abs_degree, v.point))
    return out


def _slot_point(A, G, s, L, coord):
    if s[0] == "const":
        return embed_point(A.tower.field(1), L, s[1])
    if s[0] == "mono":
        c = L.code_element(A.tower.embedding(1, A.tower.degree(L)).image_code(s[1]))
        return G.point(L, (c * L.code_element(coord) ** s[2],))
    P = G.point(L, (), (L.code_element(coord[0]), L.code_element(coord[1])))
    return P * s[1]


def phi_class(A, fam, j):
    """(class of phi_j in the quotient, fiber log, r = 1 norm image or None)."""
    k = A.tower.field(1)
    if fam.shape == "constant":
        _validate(A, fam)
        pts = [s[1] for s in fam.slots]
        cls = A.symbol_eval(SymbolTerm(k, pts))
        log = [{"multiplicity": 1, "degree": 1, "points": [repr(P) for P in pts]}]
        return cls, log, (pts[0] if A.r == 1 else None)
    total = A.group.zero()
    log = []
    collapse = A.groups[0].identity(k) if A.r == 1 else None
    for n, e, coord in fiber(A, fam, j):
        if e > A.config.d:
            raise DegreeOverflow(f"fiber point of degree {e} exceeds d = {A.config.d}", e, A.config.d)
        L = A.tower.field(e)
        pts = [_slot_point(A, G, s, L, coord) for G, s in zip(A.groups, fam.slots)]
        total = total + A.symbol_eval(SymbolTerm(L, pts)) * n
        log.append({"multiplicity": n, "degree": e, "points": [repr(P) for P in pts]})
        if collapse is not None:
            collapse = collapse + g_norm(k, L, pts[0]) * n
    return total, log, collapse


def phi_homotopy_check(A, fam):
    """Return (phi_0 == phi_1, report) for a supported family over the build ``A``."""
    c0, log0, n0 = phi_class(A, fam, 0)
    c1, log1, n1 = phi_class(A, fam, 1)
    k = A.tower.field(1)
    report = {
        "family": fam.describe(k),
        "fiber_0": log0,
        "fiber_1": log1,
        "phi_0": list(c0.coords),
        "phi_1": list(c1.coords),
        "equal": c0 == c1,
    }
    if n0 is not None:
        report["collapse_equal"] = n0 == n1
    return c0 == c1, report


# -- random families ---------------------------------------------------------------


def _random_poly(k, rng, deg):
    return poly.trim([rng.randrange(k.order) for _ in range(deg + 1)])


def _random_const_point(A, G, rng):
    k = A.tower.field(1)
    torus = [k.code_element(rng.randrange(1, k.order)) for _ in range(G.n)]
    ell = None
    if G.E is not None:
        pts = G.E.points(1)
        P = pts[rng.randrange(len(pts))]
        if P is not None:
            ell = (k.code_element(P[0]), k.code_element(P[1]))
    return G.point(k, torus, ell)


def _fibers_fit(A, fam):
    try:
        for j in (0, 1):
            if any(e > A.config.d for _, e, _ in fiber(A, fam, j)):
                return False
    except DegreeOverflow:
        return False
    return True


def random_family(A, rng, max_u_degree=3, max_s_degree=2, tries=200):
    """A random supported family whose fibers fit the build's degree bound."""
    k = A.tower.field(1)
    shapes = ["constant"]
    if any(G.n == 1 and G.E is None for G in A.groups):
        shapes.append("gm")
    if any(G.n == 0 and G.E is not None for G in A.groups):
        shapes.append("ex")
    for _ in range(tries):
        # the constant shape is a sanity case; weight it lightly
        shape = shapes[0] if len(shapes) == 1 or rng.random() < 0.15 else rng.choice(shapes[1:])
        slots = []
        for G in A.groups:
            if shape == "gm" and G.n == 1 and G.E is None and rng.random() < 0.85:
                slots.append(("mono", rng.randrange(1, k.order), rng.choice([-2, -1, 1, 1, 2, 3])))
            elif shape == "ex" and G.n == 0 and G.E is not None and rng.random() < 0.85:
                slots.append(("point", rng.choice([-1, 1, 1, 2])))
            else:
                slots.append(("const", _random_const_point(A, G, rng)))
        if shape == "constant":
            return Family("constant", slots)
        if all(s[0] == "const" for s in slots):
            continue
        e = rng.randint(1, max_u_degree)
        phi = [_random_poly(k, rng, rng.randint(0, max_s_degree)) for _ in range(e + 1)]
        phi[-1] = [rng.randrange(1, k.order)]
        if shape == "gm":
            phi[0] = [rng.randrange(1, k.order)]
        fam = Family(shape, slots, phi)
        if _fibers_fit(A, fam):
            return fam
    raise UnsupportedShape("no family with small enough fibers found")


def homotopy_sweep(A, n, seed=0):
    """Check ``n`` random families; returns (number of failures, reports)."""
    rng = random.Random(f"{seed}:homotopy")
    reports = []
    fails = 0
    for _ in range(n):
        fam = random_family(A, rng)
        ok, rep = phi_homotopy_check(A, fam)
        if not ok or not rep.get("collapse_equal", True):
            fails += 1
        reports.append(rep)
    return fails, reports


__all__ = ["Family", "fiber", "phi_class", "phi_homotopy_check", "random_family", "homotopy_sweep"]
