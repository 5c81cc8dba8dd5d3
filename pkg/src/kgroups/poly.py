"""Dense univariate polynomials over a finite field.

Polynomials are plain lists of element codes (see ``FieldExtension``), lowest
degree first, with no trailing zeros; the zero polynomial is ``[]``. Every
function takes the coefficient field as its first argument.
"""
import random

_RNG_SEED = 0x5EED


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a):
    return len(a) - 1


def one(F):
    return [F.one_code]


def x_poly(F):
    return [0, F.one_code]


def constant(F, c):
    return [c] if c else []


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, a):
    return [F.neg(c) for c in a]


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == 0:
        return []
    return [F.mul(x, c) for x in a]


def mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def power(F, a, e):
    result = one(F)
    base = list(a)
    while e:
        if e & 1:
            result = mul(F, result, base)
        e >>= 1
        if e:
            base = mul(F, base, base)
    return result


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv_lc = F.inv(b[-1])
    if len(r) <= db:
        return [], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        c = F.mul(c, inv_lc)
        q[k - db] = c
        for j, y in enumerate(b):
            if y:
                r[k - db + j] = F.sub(r[k - db + j], F.mul(c, y))
    return trim(q), trim(r[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def exact_div(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def monic(F, a):
    if not a or a[-1] == F.one_code:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = one(F), []
    t0, t1 = [], one(F)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul_int(a[i], i))
    return trim(out)


def powmod(F, base, e, m):
    result = one(F)
    base = mod(F, base, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def valuation(F, a, p):
    """Multiplicity of the irreducible ``p`` in the nonzero polynomial ``a``."""
    if not a:
        raise ValueError("valuation of the zero polynomial")
    k = 0
    while True:
        q, r = divmod_(F, a, p)
        if r:
            return k
        a = q
        k += 1


def map_coeffs(a, fn):
    return trim([fn(c) for c in a])


def sort_key(a):
    return (len(a), tuple(a))


def _pth_root(F, a):
    p = F.p
    return trim([F.pth_root(a[i]) for i in range(0, len(a), p)])


def squarefree_decomposition(F, f):
    """Monic ``f`` -> list of (squarefree factor, multiplicity)."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    out = []
    fp = derivative(F, f)
    if fp:
        c = gcd(F, f, fp)
        w = exact_div(F, f, c)
        i = 1
        while len(w) > 1:
            y = gcd(F, w, c)
            z = exact_div(F, w, y)
            if len(z) > 1:
                out.append((z, i))
            i += 1
            w = y
            c = exact_div(F, c, y)
        if len(c) > 1:
            out.extend((g, m * F.p) for g, m in squarefree_decomposition(F, _pth_root(F, c)))
    else:
        out.extend((g, m * F.p) for g, m in squarefree_decomposition(F, _pth_root(F, f)))
    return out


def distinct_degree(F, f):
    out = []
    x = x_poly(F)
    h = list(x)
    i = 1
    while deg(f) >= 2 * i:
        h = powmod(F, h, F.order, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            out.append((g, i))
            f = exact_div(F, f, g)
            h = mod(F, h, f)
        i += 1
    if len(f) > 1:
        out.append((f, deg(f)))
    return out


def equal_degree(F, f, d, rng=None):
    n = deg(f)
    if n == d:
        return [f]
    rng = rng or random.Random(_RNG_SEED)
    while True:
        r = trim([rng.randrange(F.order) for _ in range(n)])
        if len(r) < 2:
            continue
        if F.p == 2:
            t = list(r)
            s = list(r)
            for _ in range(F.m * d - 1):
                s = mod(F, mul(F, s, s), f)
                t = add(F, t, s)
            g = gcd(F, f, t)
        else:
            e = (F.order ** d - 1) // 2
            g = gcd(F, f, sub(F, powmod(F, r, e, f), one(F)))
        if 0 < deg(g) < n:
            return equal_degree(F, g, d, rng) + equal_degree(F, exact_div(F, f, g), d, rng)


def factor(F, f):
    """Factor a nonzero polynomial into monic irreducibles.

    Returns ``(leading coefficient, [(factor, multiplicity), ...])`` with the
    factors sorted by degree and coefficients.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    rng = random.Random(_RNG_SEED)
    found = {}
    for sq, mult in squarefree_decomposition(F, f):
        for g, d in distinct_degree(F, sq):
            for h in equal_degree(F, g, d, rng):
                key = tuple(h)
                found[key] = found.get(key, 0) + mult
    facs = sorted(((list(k), m) for k, m in found.items()), key=lambda t: sort_key(t[0]))
    return lc, facs


def is_irreducible(F, f):
    if len(f) < 2:
        return False
    _, facs = factor(F, f)
    return len(facs) == 1 and facs[0][1] == 1


def roots(F, f):
    """Distinct roots of ``f`` in ``F``, ascending by code."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    x = x_poly(F)
    g = gcd(F, f, sub(F, powmod(F, x, F.order, f), x))
    if len(g) <= 1:
        return []
    lin = equal_degree(F, g, 1, random.Random(_RNG_SEED))
    return sorted(F.neg(h[0]) for h in lin)
