"""Brute-force reference computations that share no code with the package."""
from itertools import product


def pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def pmod(a, f, p):
    a = list(a)
    inv = pow(f[-1], p - 2, p)
    while len(a) >= len(f):
        c = a[-1] * inv % p
        s = len(a) - len(f)
        for i, y in enumerate(f):
            a[s + i] = (a[s + i] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


class NaiveField:
    """F_p[x]/(f) with elements as coefficient tuples of length m."""

    def __init__(self, p, f):
        self.p, self.f, self.m = p, list(f), len(f) - 1

    def elements(self):
        return [tuple(c) for c in product(range(self.p), repeat=self.m)]

    def norm(self, a):
        out = list(a)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out + [0] * (self.m - len(out)))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        return self.norm(pmod(pmul(list(a), list(b), self.p), self.f, self.p))

    def power(self, a, e):
        acc = self.norm([1])
        for _ in range(e):
            acc = self.mul(acc, a)
        return acc

    def one(self):
        return self.norm([1])


def has_root(p, f):
    return any(sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0 for x in range(p))


def affine_points(p, a, b):
    """All (x, y) in F_p^2 with y^2 = x^3 + a x + b."""
    return [(x, y) for x in range(p) for y in range(p) if (y * y - x ** 3 - a * x - b) % p == 0]


def ec_add(p, a, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, p - 2, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def group_invariants_prime_field_curve(p, a, b):
    """Invariant factors of E(F_p) from element orders (groups of rank <= 2)."""
    pts = [None] + affine_points(p, a, b)
    n = len(pts)

    def order(P):
        k, Q = 1, P
        while Q is not None:
            Q = ec_add(p, a, Q, P)
            k += 1
        return k

    exponent = max(order(P) for P in pts)
    if exponent == n:
        return [n] if n > 1 else []
    return [n // exponent, exponent]



def ord_and_unit(p, cs, c):
    """(ord at t = c, value of the unit part at c) for a nonzero polynomial over F_p; c=None is infinity."""
    cs = [x % p for x in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    if c is None:
        # f = t^n (lc + ...), and 1/t is a uniformizer at infinity
        return -(len(cs) - 1), cs[-1]
    m = 0
    while True:
        val = sum(x * pow(c, i, p) for i, x in enumerate(cs)) % p
        if val:
            return m, val
        q, acc = [], 0
        for x in reversed(cs):
            acc = (acc * c + x) % p
            q.append(acc)
        cs = list(reversed(q[:-1]))
        m += 1


def tame_p1(p, f, g, c):
    """Classical (-1)^(ab) f^b g^(-a) at t = c (or infinity) for polynomials f, g over F_p."""
    (a, uf), (b, ug) = ord_and_unit(p, f, c), ord_and_unit(p, g, c)
    val = pow(uf, b % (p - 1), p) * pow(ug, (-a) % (p - 1), p) % p
    return (-val) % p if (a * b) % 2 else val


def abelian_group_types(max_order):
    """Invariant-factor lists d1 | d2 | ... with product <= max_order (the trivial group included)."""
    out = [[]]

    def extend(cur, prod):
        last = cur[-1]
        n = last
        while prod * n <= max_order:
            if n % last == 0:
                out.append(cur + [n])
                extend(cur + [n], prod * n)
            n += last

    for d in range(2, max_order + 1):
        out.append([d])
        extend([d], d)
    return out
