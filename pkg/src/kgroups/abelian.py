"""Finitely generated abelian groups: Smith normal form, presentations, tensors.

Matrices are lists of rows of Python ints, so entries never overflow.
"""
import json
from functools import reduce
from itertools import product
from math import gcd

from .errors import GroupMismatch, InfiniteFactor


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] if Bt else [0] * cols for row in A]


def det(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def to_json(M):
    return json.dumps([[str(x) for x in row] for row in M])


def from_json(text):
    return [[int(x) for x in row] for row in json.loads(text)]


def snf(M, check=True):
    """Smith normal form.

    Returns ``(U, D, V)`` with ``U @ M @ V == D``, U and V unimodular and D
    diagonal with each diagonal entry dividing the next. Pivots are chosen
    by smallest absolute value.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if not clean:
                best = (t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    if check:
        _verify_snf(M, U, A, V)
    return U, A, V


def _verify_snf(M, U, D, V):
    m = len(M)
    n = len(M[0]) if m else 0
    if m and n:
        assert matmul(matmul(U, M), V) == D, "SNF round trip failed"
    assert abs(det(U)) == 1 and abs(det(V)) == 1, "SNF transforms are not unimodular"
    diag = [D[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            assert i == j or D[i][j] == 0, "SNF result is not diagonal"
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0), "SNF divisibility chain broken"


class FinAbGroup:
    """``Z/d1 x ... x Z/ds x Z^r`` with d1 | d2 | ... | ds, each di >= 2."""

    def __init__(self, invariants=(), free_rank=0, projection=None):
        invariants = tuple(int(d) for d in invariants)
        for a, b in zip(invariants, invariants[1:]):
            if b % a:
                raise ValueError(f"invariant factors {invariants} do not form a divisibility chain")
        if any(d < 2 for d in invariants):
            raise ValueError("invariant factors must be at least 2")
        self.invariants = invariants
        self.free_rank = int(free_rank)
        self.projection = projection

    @property
    def rank(self):
        return len(self.invariants) + self.free_rank

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        if self.free_rank:
            return None
        return reduce(lambda a, b: a * b, self.invariants, 1)

    def is_trivial(self):
        return not self.invariants and not self.free_rank

    def element(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise GroupMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, coords)

    def zero(self):
        return GroupElement(self, (0,) * self.rank)

    def basis(self):
        return [GroupElement(self, tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]

    def elements(self):
        if self.free_rank:
            raise InfiniteFactor("cannot enumerate an infinite group")
        return [GroupElement(self, c) for c in product(*(range(d) for d in self.invariants))]

    def same_structure(self, other):
        return self.invariants == other.invariants and self.free_rank == other.free_rank

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.same_structure(other)

    def __hash__(self):
        return hash((self.invariants, self.free_rank))

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariants]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FinAbGroup({self})"


class GroupElement:
    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        ntors = len(group.invariants)
        self.group = group
        self.coords = tuple(c % d for c, d in zip(coords[:ntors], group.invariants)) + tuple(coords[ntors:])

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group is not self.group and other.group != self.group:
            raise GroupMismatch("elements belong to different groups")

    def __add__(self, other):
        self._check(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return GroupElement(self.group, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return GroupElement(self.group, [-a for a in self.coords])

    def __mul__(self, k):
        return GroupElement(self.group, [k * a for a in self.coords])

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def order(self):
        if self.group.free_rank and any(self.coords[len(self.group.invariants):]):
            return 0
        o = 1
        for c, d in zip(self.coords, self.group.invariants):
            k = d // gcd(c, d)
            o = o * k // gcd(o, k)
        return o

    def __eq__(self, other):
        self._check(other)
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"<{self.coords} in {self.group}>"


def is_zero(e):
    return e.is_zero()


def eq(e1, e2):
    return e1 == e2


class Projection:
    """Lattice vector -> normalized coordinates of Z^n / (relations)."""

    def __init__(self, V, diag, n):
        self.V = V
        self.n = n
        diag = list(diag) + [0] * (n - len(diag))
        self.torsion = [(i, d) for i, d in enumerate(diag) if d > 1]
        self.free = [i for i, d in enumerate(diag) if d == 0]
        self.group = FinAbGroup([d for _, d in self.torsion], len(self.free), projection=self)

    def coords(self, x):
        if len(x) != self.n:
            raise GroupMismatch(f"expected a vector of length {self.n}")
        V = self.V
        nz = [(k, c) for k, c in enumerate(x) if c]
        out = []
        for i, d in self.torsion:
            out.append(sum(c * V[k][i] for k, c in nz) % d)
        for i in self.free:
            out.append(sum(c * V[k][i] for k, c in nz))
        return tuple(out)

    def __call__(self, x):
        return GroupElement(self.group, self.coords(x))

    def image_matrix(self):
        """Images of the standard basis vectors, one row each."""
        return [self.coords([int(i == j) for j in range(self.n)]) for i in range(self.n)]


class RelationLattice:
    """Incremental integer row echelon form of a relation lattice in Z^n.

    ``moduli`` optionally gives, per column, an m with m*e_j already in the
    lattice; such columns are kept reduced mod m outside pivot positions.
    """

    def __init__(self, n, moduli=None):
        self.n = n
        self.rows = {}
        self.moduli = [0] * n
        self.count = 0
        if moduli:
            for j, m in enumerate(moduli):
                if m:
                    v = [0] * n
                    v[j] = m
                    self.add(v)
            self.moduli = list(moduli)

    def _reduce_tail(self, row, start):
        for j in range(start, self.n):
            m = self.moduli[j]
            if m:
                row[j] %= m
        return row

    def add(self, row):
        row = list(row)
        if len(row) != self.n:
            raise ValueError("row has the wrong length")
        self.count += 1
        self._reduce_tail(row, 0)
        for col in range(self.n):
            if row[col] == 0:
                continue
            piv = self.rows.get(col)
            if piv is None:
                if row[col] < 0:
                    row = [-a for a in row]
                self.rows[col] = self._reduce_tail(row, col + 1)
                return True
            a, b = piv[col], row[col]
            if b % a == 0:
                c = b // a
                row = [r - c * p for r, p in zip(row, piv)]
            else:
                g, s, t = _xgcd(a, b)
                new_piv = [s * p + t * r for p, r in zip(piv, row)]
                row = [(a // g) * r - (b // g) * p for p, r in zip(piv, row)]
                self.rows[col] = self._reduce_tail(new_piv, col + 1)
            self._reduce_tail(row, col + 1)
        return False

    def contains(self, row):
        row = list(row)
        self._reduce_tail(row, 0)
        for col in range(self.n):
            if row[col] == 0:
                continue
            piv = self.rows.get(col)
            if piv is None or row[col] % piv[col]:
                return False
            c = row[col] // piv[col]
            row = [r - c * p for r, p in zip(row, piv)]
            self._reduce_tail(row, col + 1)
        return True

    def basis(self):
        return [self.rows[c] for c in sorted(self.rows)]

    def quotient(self):
        B = self.basis()
        if not B:
            return Projection(identity(self.n), [], self.n).group, Projection(identity(self.n), [], self.n)
        _, D, V = snf(B, check=len(B) <= 40)
        diag = [D[i][i] for i in range(min(len(D), self.n))]
        proj = Projection(V, diag, self.n)
        return proj.group, proj


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def quotient(generators, relations):
    """Z^generators / rowspace(relations) as invariant factors plus projection."""
    lat = RelationLattice(generators)
    for row in relations:
        if len(row) != generators:
            raise ValueError("relation row has the wrong number of columns")
        lat.add(row)
    return lat.quotient()


def cyclic(n):
    if n == 1:
        return FinAbGroup()
    return FinAbGroup([n])


class TensorProduct:
    """Tensor product of finite groups with a multilinear evaluator.

    ``raw_moduli`` lists the cyclic summands Z/gcd(...) of the tensor product
    of the cyclic decompositions, one per index tuple with gcd > 1;
    ``raw_coords`` evaluates a pure tensor in those coordinates.
    """

    def __init__(self, factors):
        for G in factors:
            if G.free_rank:
                raise InfiniteFactor(f"{G} is not finite")
        self.factors = list(factors)
        self.index = []
        self.raw_moduli = []
        for idx in product(*(range(len(G.invariants)) for G in factors)):
            g = 0
            for G, i in zip(factors, idx):
                g = gcd(g, G.invariants[i])
            if g > 1:
                self.index.append(idx)
                self.raw_moduli.append(g)
        n = len(self.raw_moduli)
        rows = []
        for j, d in enumerate(self.raw_moduli):
            v = [0] * n
            v[j] = d
            rows.append(v)
        self.group, self.projection = quotient(n, rows)

    def raw_coords(self, coord_tuples):
        out = []
        for idx, d in zip(self.index, self.raw_moduli):
            c = 1
            for coords, i in zip(coord_tuples, idx):
                c = c * coords[i] % d
            out.append(c)
        return out

    def __call__(self, *elements):
        if len(elements) != len(self.factors):
            raise GroupMismatch("wrong number of tensor slots")
        for e, G in zip(elements, self.factors):
            if e.group != G:
                raise GroupMismatch("element does not belong to its tensor slot")
        return self.projection(self.raw_coords([e.coords for e in elements]))


def tensor(factors):
    """Returns ``(group, evaluator)`` for the tensor product of finite groups."""
    t = TensorProduct(factors)
    return t.group, t


class FiniteGroupModel:
    """A concrete finite abelian group identified with its invariant-factor form.

    Built by exhaustion from an element list and the group law; ``coords``
    maps each element to its normalized coordinates, ``basis`` holds one
    element per cyclic factor.
    """

    def __init__(self, elements, add, zero, key=None):
        key = key or (lambda e: e)
        rep = {key(zero): ()}
        objs = {key(zero): zero}
        gens = []
        for e in elements:
            if key(e) in rep:
                continue
            gens.append(e)
            s = len(gens)
            queue = list(objs.values())
            for k in list(rep):
                rep[k] = rep[k] + (0,) * (s - len(rep[k]))
            while queue:
                x = queue.pop()
                kx = key(x)
                for j, g in enumerate(gens):
                    y = add(x, g)
                    ky = key(y)
                    if ky not in rep:
                        v = list(rep[kx])
                        v[j] += 1
                        rep[ky] = tuple(v)
                        objs[ky] = y
                        queue.append(y)
        s = len(gens)
        lat = RelationLattice(s)
        for kx, x in objs.items():
            for j, g in enumerate(gens):
                v = list(rep[kx])
                v[j] += 1
                w = rep[key(add(x, g))]
                lat.add([a - b for a, b in zip(v, w)])
        self.group, proj = lat.quotient()
        self.group.projection = None
        self._coords = {k: proj.coords(v) if s else () for k, v in rep.items()}
        self._objs = objs
        self._key = key
        self.elements = list(objs.values())
        inverse = {c: k for k, c in self._coords.items()}
        self.basis = [objs[inverse[tuple(int(i == j) for j in range(self.group.rank))]] for i in range(self.group.rank)]

    def coords(self, e):
        return self._coords[self._key(e)]

    def element(self, e):
        return GroupElement(self.group, self._coords[self._key(e)])

    def lookup(self, coords):
        coords = GroupElement(self.group, coords).coords
        for k, c in self._coords.items():
            if c == coords:
                return self._objs[k]
        raise KeyError(coords)

    def order(self):
        return len(self._coords)
