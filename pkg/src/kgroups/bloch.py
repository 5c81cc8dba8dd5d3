"""Truncated Bloch group V(E) and the comparison map from the (E, G_m) presentation.

V(E) is ker(sum of norms: (+)_x k(x)^x -> k^x) modulo residue vectors of K_2
symbols. Generators are the closed points of degree <= d. Relation vectors
come from symbols {c, f} and {f, h} over F_{q^m}(E), pushed to closed points of
E over k by the norm along the embedding that matches the representative points.
"""
from dataclasses import dataclass, field

from .abelian import FiniteGroupModel, RelationLattice
from .errors import DegreeOverflow
from .finite_field import FFElement
from .function_field import ELLIPTIC, Curve, EllFunc, divisor, ec_add
from .milnor import tame_value
from .semiabelian import SemiAbelian
from .somekawa import TruncationConfig, build


def closed_points(E, d):
    """All places of E over its base with degree <= d, sorted; O first."""
    seen = set()
    for m in range(1, d + 1):
        for P in E.points(m):
            if P is None:
                continue
            seen.add(E.place_of_point(P, m))
    return [E.infinite_place()] + sorted(seen)


def push_value(E, point, n, code):
    """(place x of E/k through ``point``, N_phi(code) in k(x)) for phi(x.point) = point.

    ``point`` has coordinates in ``tower.field(n)`` (``None`` for O) and
    ``code`` is an element of that field.
    """
    T = E.tower
    F = T.field(n)
    q = T.q
    if point is None:
        return E.infinite_place(), T.norm_code(E.m0, n, code)
    v = E.place_of_point(point, n)
    a = v.abs_degree
    emb = T.embedding(a, n)
    rep = (emb.image_code(v.point[0]), emb.image_code(v.point[1]))
    for j in range(a):
        if (F.frobenius(rep[0], j, q=q), F.frobenius(rep[1], j, q=q)) == tuple(point):
            break
    else:
        raise AssertionError("point is not conjugate to its place representative")
    acc = 1
    for i in range(n // a):
        acc = F.mul(acc, F.frobenius(code, a * i, q=q))
    z = emb.preimage_code(acc)
    return v, T.field(a).frobenius(z, (a - j) % a, q=q)


def _solve_nullspace(F, rows, ncols):
    """One nonzero solution of rows * c = 0 over F (codes), or None."""
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][col])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                c = M[i][col]
                M[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    sol = [0] * ncols
    sol[f] = 1
    for i, pc in enumerate(pivots):
        sol[pc] = F.neg(M[i][f])
    return sol


class VModel:
    """Generators, kernel coordinates and relation lattice of the truncated V(E)."""

    def __init__(self, E, d):
        self.E = E
        self.d = d
        T = E.tower
        self.tower = T
        self.k = E.base
        self.q = self.k.order
        self.places = closed_points(E, d)
        self.index = {v: i for i, v in enumerate(self.places)}
        self.n = len(self.places)
        self.moduli = [v.residue_field.order - 1 for v in self.places]
        # norm of each generator in log coordinates of k^x
        self.norm_logs = []
        for v in self.places:
            R = v.residue_field
            nc = T.norm_code(E.m0, v.abs_degree, R.generator_code)
            self.norm_logs.append(self.k.log(nc) % (self.q - 1) if self.q > 2 else 0)
        self.o = 0
        self.relations = []
        self.provenance = []
        self.kernel_failures = 0

    def vector(self):
        return [0] * self.n

    def add_value(self, vec, v, code, mult=1):
        R = v.residue_field
        i = self.index.get(v)
        if i is None:
            raise DegreeOverflow(f"{v} is outside the truncation", degree=v.abs_degree, bound=self.d)
        if R.order > 2:
            vec[i] = (vec[i] + mult * R.log(code)) % self.moduli[i]

    def in_kernel(self, vec):
        if self.q == 2:
            return True
        return sum(c * nl for c, nl in zip(vec, self.norm_logs)) % (self.q - 1) == 0

    def kernel_coords(self, vec):
        """Coordinates in the basis {e_j - n_j e_O (j != O), (q - 1) e_O} of the kernel lattice."""
        if self.q == 2:
            return list(vec)
        out = list(vec)
        s = vec[self.o] + sum(c * nl for j, (c, nl) in enumerate(zip(vec, self.norm_logs)) if j != self.o)
        if s % (self.q - 1):
            raise ValueError("vector is not in the kernel of the norm")
        out[self.o] = s // (self.q - 1)
        return out

    def add_relation(self, vec, prov):
        if not self.in_kernel(vec):
            self.kernel_failures += 1
            return False
        self.relations.append(vec)
        self.provenance.append(prov)
        return True

    def torsion_rows(self):
        rows = []
        for i, m in enumerate(self.moduli):
            if m > 1:
                r = self.vector()
                r[i] = m
                rows.append(r)
        return rows

    def lattice(self, extra=()):
        lat = RelationLattice(self.n)
        for r in self.torsion_rows():
            lat.add(self.kernel_coords(r))
        for r in self.relations:
            lat.add(self.kernel_coords(r))
        for r in extra:
            lat.add(self.kernel_coords(r))
        return lat

    def group(self):
        return self.lattice().quotient()[0]


def curve_over(E, m, d):
    a, b = E.coefficient_codes(m)
    return Curve(ELLIPTIC, E.tower.field(m), a, b, tower=E.tower, degree_bound=d)


def residue_vector(V, K, f, g):
    """(+)_x of the pushed residues of {f, g} over K = F_{q^m}(E)."""
    vec = V.vector()
    places = set(divisor(f).mults) | set(divisor(g).mults)
    for w in places:
        val = tame_value(w, f, g)
        if val == 1:
            continue
        pt = None if w.is_infinite else w.point
        v, c = push_value(V.E, pt, w.abs_degree, val.code)
        V.add_value(vec, v, c)
    return vec


def _line_ratio(K, F, a, P, Q):
    """f with div f = (P) + (Q) - (P + Q) - (O) for F-rational P, Q."""
    x, y = K.x, K.y

    def c(z):
        return K.const(FFElement(F, z))

    S = ec_add(F, a, P, Q)
    if S is None:
        return x - c(P[0])
    if P[0] == Q[0]:
        lam = F.div(F.add(F.mul_int(F.mul(P[0], P[0]), 3), a), F.mul_int(P[1], 2))
    else:
        lam = F.div(F.sub(Q[1], P[1]), F.sub(Q[0], P[0]))
    line = y - c(lam) * (x - c(P[0])) - c(P[1])
    return line / (x - c(S[0]))


def _norm_function(K, w):
    """f over K with div f = w - (T) - (e - 1)(O), T the trace of w's representative."""
    C = K
    T = C.tower
    n = w.abs_degree
    e = w.degree
    Fn = T.field(n)
    Fm = C.base
    qm = Fm.order
    a_n, _ = C.coefficient_codes(n)
    conj = [(Fn.frobenius(w.point[0], i, q=qm), Fn.frobenius(w.point[1], i, q=qm)) for i in range(e)]
    tr = None
    for P in conj:
        tr = ec_add(Fn, a_n, tr, P)
    conds = list(conj)
    bound = e if tr is None else e + 1
    if tr is not None:
        conds.append((tr[0], Fn.neg(tr[1])))
    monos = []
    for i in range(bound // 2 + 1):
        if 2 * i <= bound:
            monos.append((i, 0))
        if 2 * i + 3 <= bound:
            monos.append((i, 1))
    rows = []
    for (px, py) in conds:
        rows.append([Fn.mul(Fn.pow(px, i), py if j else 1) for i, j in monos])
    sol = _solve_nullspace(Fn, rows, len(monos))
    if sol is None:
        return None
    lead = next(s for s in sol if s)
    inv = Fn.inv(lead)
    emb = T.embedding(C.m0, n)
    coeffs = [emb.preimage_code(Fn.mul(s, inv)) for s in sol]
    acoef = [0] * (bound // 2 + 1)
    bcoef = [0] * (bound // 2 + 1)
    for (i, j), c in zip(monos, coeffs):
        (bcoef if j else acoef)[i] = c
    h = EllFunc(C, acoef, bcoef, [1])
    if tr is None:
        return h
    trk = (T.embedding(C.m0, n).preimage_code(tr[0]),)
    return h / (C.x - C.const(FFElement(Fm, trk[0])))


@dataclass
class BlochReport:
    d: int
    v_group: object
    somekawa_group: object
    well_defined: bool
    surjective: bool
    relation_counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    stabilization: dict = None
    structural_group: object = None

    def to_dict(self):
        out = {
            "d": self.d,
            "v_group": str(self.v_group),
            "v_invariants": list(self.v_group.invariants),
            "somekawa_group": str(self.somekawa_group),
            "somekawa_invariants": list(self.somekawa_group.invariants),
            "well_defined": self.well_defined,
            "surjective": self.surjective,
            "relation_counts": dict(self.relation_counts),
            "failures": list(self.failures),
            "structural_v_group": str(self.structural_group),
        }
        if self.stabilization is not None:
            out["stabilization"] = self.stabilization
        return out


def add_standard_relations(V):
    """Group-law relations {c, l/v} and trace relations {c, f_w} over every F_{q^m}, m <= d."""
    E, d = V.E, V.d
    T = E.tower
    counts = {"group_law": 0, "trace": 0}
    for m in range(1, d + 1):
        K = curve_over(E, m, d)
        F = T.field(m)
        if F.order == 2:
            continue
        gamma = K.const(F.primitive_element)
        a, _ = E.coefficient_codes(m)
        pts = E.points(m)
        model = FiniteGroupModel(pts, lambda P, Q: ec_add(F, a, P, Q), None)
        for P in pts:
            if P is None:
                continue
            for b in model.basis:
                f = _line_ratio(K, F, a, P, b)
                if V.add_relation(residue_vector(V, K, gamma, f), ("group_law", m)):
                    counts["group_law"] += 1
        for e in range(2, d // m + 1):
            seen = set()
            for P in E.points(m * e):
                if P is None:
                    continue
                x0 = P[0]
                pi = K.minimal_polynomial(x0, m * e)
                for w in K.places_over(pi):
                    if w.degree != e or w in seen:
                        continue
                    seen.add(w)
                    f = _norm_function(K, w)
                    if f is None:
                        continue
                    if V.add_relation(residue_vector(V, K, gamma, f), ("trace", m, e)):
                        counts["trace"] += 1
    return counts


def somekawa_image(V, A):
    """Image in V of each generator column of the (E, G_m) presentation."""
    T = V.tower
    images = []
    for m in sorted(A.blocks):
        B = A.blocks[m]
        sE, sG = B.slots
        ebasis = dict(sE.basis())
        gbasis = dict(sG.basis())
        for (iE, iG) in B.index:
            P = ebasis[iE].ell
            u = gbasis[iG].torus[0]
            vec = V.vector()
            if P is not None:
                pt = (P[0].code, P[1].code)
                v, c = push_value(V.E, pt, m, u.code)
                V.add_value(vec, v, c)
                V.add_value(vec, V.places[V.o], T.norm_code(V.E.m0, m, u.code), -1)
            images.append(vec)
    return images


def _combine(images, row, n):
    out = [0] * n
    for c, img in zip(row, images):
        if c:
            for i in range(n):
                out[i] += c * img[i]
    return out


def bloch_v_approx(E, d=2, h_degree=2, seed=0, max_candidates=300, family_cap=24, stabilize_to=None):
    """Truncated V(E), the (E, G_m) build, and the comparison between them."""
    G_E = SemiAbelian(0, E)
    G_m = SemiAbelian(1, None, E.base, tower=E.tower)
    cfg = TruncationConfig(E.base, [G_E, G_m], d=d, h_degree=h_degree, seed=seed,
                           max_candidates=max_candidates, family_cap=family_cap)
    A = build(cfg)
    V = VModel(E, d)
    counts = add_standard_relations(V)
    struct_lat = V.lattice()
    struct_group = struct_lat.quotient()[0]
    counts["symbol_pairs"] = 0
    # residue vectors of the (f, h) pairs behind the k(E)-source rows
    for rec in A.records:
        if rec.kind != "R2" or not rec.objects:
            continue
        K, gs, h, _ = rec.objects
        if not K.is_elliptic:
            continue
        f = gs[1].torus[0]
        if gs[0].ell is not None and not gs[0].ell[0].is_constant():
            if V.add_relation(residue_vector(V, K, f, h), ("pair", rec.provenance["g"], rec.provenance["h"])):
                counts["symbol_pairs"] += 1
    counts["kernel_failures"] = V.kernel_failures
    lat = V.lattice()
    v_group = lat.quotient()[0]
    images = somekawa_image(V, A)
    failures = []
    rows = []
    for col, mod in enumerate(A.moduli):
        r = [0] * A.ncols
        r[col] = mod
        rows.append(("torsion", col, r))
    for rec in A.records:
        rows.append((rec.kind, rec.provenance, rec.row))
    for kind, prov, row in rows:
        prov = prov if isinstance(prov, dict) else {"column": prov}
        img = _combine(images, row, V.n)
        if not V.in_kernel(img):
            failures.append({"kind": kind, "reason": "norm", "provenance": str(prov)})
            continue
        coords = V.kernel_coords(img)
        # rows not coming from k(E) must already die modulo the group-law and trace relations
        structural = kind != "R2" or not str(prov.get("source", "")).startswith("E/")
        if structural and not struct_lat.contains(coords):
            failures.append({"kind": kind, "reason": "structural", "provenance": str(prov)})
        elif not lat.contains(coords):
            failures.append({"kind": kind, "reason": "relation", "provenance": str(prov)})
    surj_lat = V.lattice(extra=images)
    surjective = surj_lat.quotient()[0].is_trivial()
    report = BlochReport(d, v_group, A.group, not failures, surjective, counts, failures[:10])
    report.structural_group = struct_group
    if stabilize_to is not None and stabilize_to != d:
        other = bloch_v_approx(E, stabilize_to, h_degree, seed, max_candidates, family_cap)[1]
        report.stabilization = {
            "d": [d, stabilize_to],
            "v_groups": [str(v_group), str(other.v_group)],
            "somekawa_groups": [str(A.group), str(other.somekawa_group)],
            "v_stable": str(v_group) == str(other.v_group),
            "somekawa_stable": str(A.group) == str(other.somekawa_group),
        }
    return v_group, report
