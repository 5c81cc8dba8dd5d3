"""Finite fields F_{p^m} presented over their prime field.

Elements are encoded internally as integers ``sum(c_i * p**i)`` where ``c_i``
is the coefficient of ``x**i`` in the reduced representative; the field keeps
exp/log/Zech tables built from a primitive element, so every operation is a
table lookup. :class:`FFElement` wraps a code for the public API.
"""
from functools import lru_cache
from math import gcd

from . import poly
from .errors import DivisionByZero, FieldMismatch, FieldTooLarge, NoEmbedding, NotPrime, Reducible

FIELD_CAP = 2 ** 16


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldExtension:
    """The field F_p[x]/(f) for a monic irreducible f of degree m."""

    def __init__(self, p, modulus):
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) == 2:
            modulus = (0, 1)
        self.p = p
        self.modulus = modulus
        self.m = len(modulus) - 1
        self.order = p ** self.m
        if self.order > FIELD_CAP:
            raise FieldTooLarge(f"GF({p}^{self.m}) exceeds the field cap {FIELD_CAP}")
        self.one_code = 1
        self._n = self.order - 1
        self._build_tables()

    # -- construction ---------------------------------------------------
    def _mulmod_digits(self, a, b):
        p, m, f = self.p, self.m, self.modulus
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m):
                    prod[k - m + j] = (prod[k - m + j] - c * f[j]) % p
        return prod[:m]

    def _pow_digits(self, a, e):
        result = [1] + [0] * (self.m - 1)
        while e:
            if e & 1:
                result = self._mulmod_digits(result, a)
            e >>= 1
            if e:
                a = self._mulmod_digits(a, a)
        return result

    def _build_tables(self):
        n = self._n
        one = [1] + [0] * (self.m - 1)
        primes = prime_factors(n)
        gen = None
        for cand in range(1, self.order):
            d = self.coeffs(cand)
            if all(self._pow_digits(list(d), n // l) != one for l in primes):
                gen = cand
                break
        self._exp = [0] * n
        self._log = [None] * self.order
        cur = list(one)
        g = list(self.coeffs(gen))
        for i in range(n):
            code = self._code(cur)
            self._exp[i] = code
            self._log[code] = i
            cur = self._mulmod_digits(cur, g)
        p = self.p
        self._zech = [0] * n
        for i in range(n):
            e = self._exp[i]
            d0 = e % p
            s = e - d0 + (d0 + 1) % p
            self._zech[i] = -1 if s == 0 else self._log[s]
        self.generator_code = gen

    def _code(self, digits):
        c = 0
        for d in reversed(digits):
            c = c * self.p + d
        return c

    # -- code level arithmetic --------------------------------------------
    def coeffs(self, code):
        out = []
        for _ in range(self.m):
            code, d = divmod(code, self.p)
            out.append(d)
        return tuple(out)

    def from_coeffs(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            # reduce a longer representative modulo f
            F = prime_field(self.p)
            r = poly.mod(F, poly.trim([c % self.p for c in coeffs]), list(self.modulus))
            coeffs = r
        coeffs = [c % self.p for c in coeffs] + [0] * (self.m - len(coeffs))
        return self._code(coeffs)

    def from_int(self, k):
        return k % self.p

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._n]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._n]

    def neg(self, a):
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + self._n // 2) % self._n]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._n]

    def mul_int(self, a, k):
        return self.mul(a, k % self.p)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[a]) % self._n]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DivisionByZero("negative power of zero")
        return self._exp[(self._log[a] * e) % self._n]

    def pth_root(self, a):
        return self.pow(a, self.order // self.p)

    def frobenius(self, a, k=1, q=None):
        """``a ** (q**k)`` with ``q`` defaulting to the characteristic."""
        q = q or self.p
        return self.pow(a, pow(q, k, self._n) if self._n > 1 else 1)

    def log(self, a):
        if a == 0:
            raise DivisionByZero("discrete log of zero")
        return self._log[a]

    def exp(self, i):
        return self._exp[i % self._n]

    def order_of(self, a):
        return self._n // gcd(self._log[a], self._n)

    def is_square(self, a):
        return a == 0 or self.p == 2 or self._log[a] % 2 == 0

    def sqrt(self, a):
        """Least square root by code, or None."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pth_root(a)
        la = self._log[a]
        if la % 2:
            return None
        r = self._exp[la // 2]
        return min(r, self.neg(r))

    # -- element level --------------------------------------------------
    def __call__(self, value):
        return self.element(value)

    def element(self, value):
        if isinstance(value, FFElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self}")
            return value
        if isinstance(value, int):
            return FFElement(self, self.from_int(value))
        return FFElement(self, self.from_coeffs(value))

    def code_element(self, code):
        return FFElement(self, code)

    @property
    def zero(self):
        return FFElement(self, 0)

    @property
    def one(self):
        return FFElement(self, 1)

    @property
    def gen(self):
        """The class of x in F_p[x]/(f)."""
        return FFElement(self, self.from_coeffs([0, 1]))

    @property
    def primitive_element(self):
        return FFElement(self, self.generator_code)

    def elements(self):
        return [FFElement(self, c) for c in range(self.order)]

    def units(self):
        return [FFElement(self, c) for c in range(1, self.order)]

    def dlog(self, x):
        return self.log(self.element(x).code)

    def __eq__(self, other):
        return isinstance(other, FieldExtension) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}; {','.join(map(str, self.modulus))})"


class FFElement:
    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field} vs {self.field}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElement(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElement(self.field, self.field.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FFElement(self.field, self.field.div(o, self.code))

    def __neg__(self):
        return FFElement(self.field, self.field.neg(self.code))

    def __pow__(self, e):
        return FFElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FFElement(self.field, self.field.inv(self.code))

    def frobenius(self, k=1):
        return FFElement(self.field, self.field.frobenius(self.code, k))

    def is_zero(self):
        return self.code == 0

    def order(self):
        return self.field.order_of(self.code)

    @property
    def coeffs(self):
        return self.field.coeffs(self.code)

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        if self.field.m == 1:
            return f"{self.code}"
        return f"[{','.join(map(str, self.coeffs))}]"


@lru_cache(maxsize=None)
def prime_field(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return FieldExtension(p, (0, 1))


@lru_cache(maxsize=None)
def _make_extension(p, f):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    f = poly.trim([c % p for c in f])
    if len(f) < 2:
        raise ValueError("defining polynomial must have positive degree")
    if f[-1] != 1:
        raise ValueError("defining polynomial must be monic")
    if p ** (len(f) - 1) > FIELD_CAP:
        raise FieldTooLarge(f"GF({p}^{len(f) - 1}) exceeds the field cap")
    F = prime_field(p)
    _, facs = poly.factor(F, f)
    if len(facs) != 1 or facs[0][1] != 1:
        raise Reducible(f"{f} is reducible over GF({p})", witness=tuple(facs[0][0]))
    return FieldExtension(p, f)


def make_extension(p, f):
    """Construct F_p[x]/(f); ``f`` is a coefficient list, lowest degree first."""
    return _make_extension(int(p), tuple(int(c) for c in f))


@lru_cache(maxsize=None)
def standard_field(p, m):
    """GF(p^m) defined by the first monic irreducible in coefficient-code order."""
    if m == 1:
        return prime_field(p)
    F = prime_field(p)
    for low in range(p ** m):
        f = []
        for _ in range(m):
            low, d = divmod(low, p)
            f.append(d)
        f.append(1)
        if f[0] and poly.is_irreducible(F, f):
            return FieldExtension(p, f)
    raise AssertionError("no irreducible polynomial found")


def group_structure(E):
    """Primitive element of E and the order of E^x."""
    return E.primitive_element, E.order - 1


class Embedding:
    """Field homomorphism sending the generator of ``src`` to ``root`` in ``dst``."""

    def __init__(self, src, dst, root):
        self.src, self.dst, self.root = src, dst, root
        powers = [1]
        for _ in range(src.m - 1):
            powers.append(dst.mul(powers[-1], root))
        table = []
        for code in range(src.order):
            acc = 0
            for pw, d in zip(powers, src.coeffs(code)):
                if d:
                    acc = dst.add(acc, dst.mul_int(pw, d))
            table.append(acc)
        self._table = table
        self._inverse = {img: code for code, img in enumerate(table)}
        if len(self._inverse) != src.order:
            raise AssertionError("embedding is not injective")

    def image_code(self, code):
        return self._table[code]

    def preimage_code(self, code):
        try:
            return self._inverse[code]
        except KeyError:
            raise NoEmbedding("element is not in the image of the embedding") from None

    def contains(self, code):
        return code in self._inverse

    def __call__(self, x):
        x = self.src.element(x)
        return FFElement(self.dst, self._table[x.code])

    def preimage(self, y):
        y = self.dst.element(y)
        return FFElement(self.src, self.preimage_code(y.code))

    def compose(self, inner):
        """``self ∘ inner``."""
        if inner.dst != self.src:
            raise FieldMismatch("cannot compose embeddings")
        return Embedding(inner.src, self.dst, self._table[inner.root])

    def __eq__(self, other):
        return isinstance(other, Embedding) and (self.src, self.dst, self.root) == (other.src, other.dst, other.root)

    def __hash__(self):
        return hash((self.src, self.dst, self.root))

    def __repr__(self):
        return f"Embedding({self.src} -> {self.dst}, x -> {self.dst.coeffs(self.root)})"


def identity_embedding(F):
    return Embedding(F, F, F.from_coeffs([0, 1]))


def _check_embeddable(src, dst):
    if src.p != dst.p or dst.m % src.m:
        raise NoEmbedding(f"{src} does not embed in {dst}")


def modulus_roots(src, dst):
    """Roots in ``dst`` of the defining polynomial of ``src``, lexicographically."""
    _check_embeddable(src, dst)
    f = [dst.from_int(c) for c in src.modulus]
    rts = poly.roots(dst, f)
    return sorted(rts, key=dst.coeffs)


@lru_cache(maxsize=None)
def distinguished_embedding(src, dst):
    if src == dst:
        return identity_embedding(src)
    return Embedding(src, dst, modulus_roots(src, dst)[0])


def embed(src, dst, x):
    return distinguished_embedding(src, dst)(x)


def norm(sub, sup, x, embedding=None):
    """Field norm N_{sup/sub}(x), returned as an element of ``sub``."""
    _check_embeddable(sub, sup)
    x = sup.element(x)
    e = sup.m // sub.m
    q_sub = sub.order
    acc = 1
    for i in range(e):
        acc = sup.mul(acc, sup.pow(x.code, q_sub ** i))
    emb = embedding or distinguished_embedding(sub, sup)
    return FFElement(sub, emb.preimage_code(acc))


class Tower:
    """Fields F_{q^n} over a fixed base F_q with mutually compatible embeddings.

    ``field(1)`` is the base itself; ``field(n)`` for n > 1 is the standard
    presentation of GF(p^(m n)). Embeddings into ``field(c)`` from its maximal
    subfields are chosen, largest first, as the lexicographically least root
    agreeing with every previously fixed maximal subfield on common subfields;
    embeddings from smaller subfields are compositions. The resulting system
    satisfies ``emb(b, c) ∘ emb(a, b) == emb(a, c)`` for all a | b | c.
    """

    def __init__(self, base):
        self.base = base
        self.p = base.p
        self._fields = {1: base}
        self._emb = {}

    @property
    def q(self):
        return self.base.order

    def field(self, n):
        F = self._fields.get(n)
        if F is None:
            if self.base.order ** n > FIELD_CAP:
                raise FieldTooLarge(f"GF({self.base.order}^{n}) exceeds the field cap")
            F = standard_field(self.p, self.base.m * n)
            self._fields[n] = F
        return F

    def can_build(self, n):
        return self.base.order ** n <= FIELD_CAP

    def degree(self, F):
        for n, G in self._fields.items():
            if G == F:
                return n
        if F.p == self.p and F.m % self.base.m == 0:
            n = F.m // self.base.m
            if self.field(n) == F:
                return n
        raise NoEmbedding(f"{F} is not a field of this tower")

    def embedding(self, a, c):
        if c % a:
            raise NoEmbedding(f"degree {a} does not divide {c}")
        key = (a, c)
        e = self._emb.get(key)
        if e is None:
            e = self._compute_embedding(a, c)
            self._emb[key] = e
        return e

    def _maximal_divisors(self, c):
        return sorted((c // l for l in prime_factors(c)), reverse=True)

    def _compute_embedding(self, a, c):
        if a == c:
            return identity_embedding(self.field(c))
        maximal = self._maximal_divisors(c)
        if a not in maximal:
            b = max(b for b in maximal if b % a == 0)
            return self.embedding(b, c).compose(self.embedding(a, b))
        src, dst = self.field(a), self.field(c)
        constraints = []
        for b in maximal:
            if b <= a:
                break
            g = gcd(a, b)
            if g == 1 and self.base.m == 1:
                continue
            gen_g = self.field(g).from_coeffs([0, 1]) if self.field(g).m > 1 else None
            if gen_g is None:
                continue
            lhs_src = self.embedding(g, a).image_code(gen_g)
            target = self.embedding(b, c).image_code(self.embedding(g, b).image_code(gen_g))
            constraints.append((lhs_src, target))
        for root in modulus_roots(src, dst):
            cand = Embedding(src, dst, root)
            if all(cand.image_code(s) == t for s, t in constraints):
                return cand
        raise AssertionError("no compatible embedding exists")

    def embed(self, a, c, x):
        return self.embedding(a, c)(x)

    def all_embeddings(self, a, c):
        """Every base-linear embedding field(a) -> field(c)."""
        base_emb = self.embedding(a, c)
        dst = self.field(c)
        out = []
        for j in range(a):
            root = dst.frobenius(base_emb.root, j, q=self.q)
            out.append(Embedding(self.field(a), dst, root))
        return out

    def frobenius(self, n, code, k=1):
        """Relative Frobenius x -> x^(q^k) on field(n), on codes."""
        return self.field(n).frobenius(code, k, q=self.q)

    def norm_code(self, a, c, code):
        F = self.field(c)
        acc = 1
        for i in range(c // a):
            acc = F.mul(acc, self.frobenius(c, code, a * i))
        return self.embedding(a, c).preimage_code(acc)

    def norm(self, a, c, x):
        x = self.field(c).element(x)
        return FFElement(self.field(a), self.norm_code(a, c, x.code))

    def check_transitivity(self, degrees):
        for c in degrees:
            for b in degrees:
                if c % b:
                    continue
                for a in degrees:
                    if b % a:
                        continue
                    left = self.embedding(b, c).compose(self.embedding(a, b))
                    if left != self.embedding(a, c):
                        return (a, b, c)
        return None

    def __repr__(self):
        return f"Tower({self.base})"


@lru_cache(maxsize=None)
def tower_for(base):
    """Shared tower over ``base``; used when no explicit tower is supplied."""
    return Tower(base)
