"""Finite fields GF(p^k) with a deterministic defining polynomial.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_i`` are the
coordinates in the power basis of ``x`` modulo the defining polynomial.  The
defining polynomial is the monic irreducible of degree k whose coefficient
vector ``(c_{k-1}, ..., c_0)`` is lexicographically smallest.

Field objects are cached per ``(p, k)`` and are never mutated after
construction, so sharing them between threads is safe.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from math import gcd

from sympy import Poly, isprime
from sympy.abc import x as _x

TABLE_LIMIT = 1 << 16
MAX_ORDER = 1 << 64


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def conway_free_modulus(p: int, k: int) -> tuple:
    """Coefficients (low to high, monic) of the chosen degree-k irreducible."""
    if k == 1:
        return (0, 1)
    for tail in product(range(p), repeat=k):
        coeffs = list(reversed(tail)) + [1]
        if coeffs[0] == 0:
            continue
        if Poly(list(reversed(coeffs)), _x, modulus=p).is_irreducible:
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with p**k elements; arithmetic on integer encodings."""

    def __init__(self, p: int, k: int = 1):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        if p ** k > MAX_ORDER:
            raise ValueError("field order exceeds 2^64")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = conway_free_modulus(p, k)
        self._exp = None
        self._log = None
        if k > 1 and self.order <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (get_field, (self.p, self.k))

    # encoding helpers
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def encode(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        v, m = 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            v += ((ra + rb) % p) * m
            m *= p
        return v

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        v, m = 0, 1
        while a:
            a, r = divmod(a, p)
            v += ((-r) % p) * m
            m *= p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if not a or not b:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self.encode(self._polymul(self.digits(a), self.digits(b)))

    def _polymul(self, u, v):
        p, k, mod = self.p, self.k, self.modulus
        prod = [0] * (2 * k - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    prod[i + j] += ui * vj
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(k):
                    prod[d - k + i] -= c * mod[i]
            prod[d] = 0
        return [c % p for c in prod[:k]]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if self.k == 1:
            return pow(a, e, self.p)
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p ** (times % self.k))

    def elements(self):
        return range(self.order)

    def _build_tables(self):
        n = self.order - 1
        for g in range(2, self.order):
            exp = [0] * n
            log = [0] * self.order
            cur = 1
            ok = True
            seen = set()
            for i in range(n):
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
                exp[i] = cur
                log[cur] = i
                cur = self.encode(self._polymul(self.digits(cur), self.digits(g)))
            if ok and cur == 1:
                self._exp, self._log = exp, log
                return
        raise AssertionError("no primitive element found")

    # polynomials over the field, coefficient lists low to high
    def poly_trim(self, f):
        f = list(f)
        while f and f[-1] == 0:
            f.pop()
        return f

    def poly_eval(self, f, a: int) -> int:
        v = 0
        for c in reversed(f):
            v = self.add(self.mul(v, a), c)
        return v

    def poly_mul(self, f, g):
        if not f or not g:
            return []
        out = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    if b:
                        out[i + j] = self.add(out[i + j], self.mul(a, b))
        return self.poly_trim(out)

    def poly_divmod(self, f, g):
        f = self.poly_trim(f)
        g = self.poly_trim(g)
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = self.inv(g[-1])
        q = [0] * max(0, len(f) - len(g) + 1)
        r = list(f)
        while len(r) >= len(g) and r:
            c = self.mul(r[-1], inv_lead)
            d = len(r) - len(g)
            q[d] = c
            for i, b in enumerate(g):
                r[d + i] = self.sub(r[d + i], self.mul(c, b))
            r = self.poly_trim(r)
        return q, r

    def poly_gcd(self, f, g):
        f, g = self.poly_trim(f), self.poly_trim(g)
        while g:
            f, g = g, self.poly_divmod(f, g)[1]
        if f:
            inv_lead = self.inv(f[-1])
            f = [self.mul(c, inv_lead) for c in f]
        return f

    def poly_powmod(self, f, e: int, m):
        result = [1]
        base = self.poly_divmod(f, m)[1]
        while e:
            if e & 1:
                result = self.poly_divmod(self.poly_mul(result, base), m)[1]
            base = self.poly_divmod(self.poly_mul(base, base), m)[1]
            e >>= 1
        return result

    def roots(self, f) -> list[int]:
        """Distinct roots of ``f`` in this field, sorted by encoding."""
        f = self.poly_trim(f)
        if len(f) <= 1:
            return []
        if self.order <= 4096:
            return [a for a in range(self.order) if self.poly_eval(f, a) == 0]
        # restrict to the product of linear factors
        xq = self.poly_powmod([0, 1], self.order, f)
        h = self.poly_gcd(f, self._poly_sub(xq, [0, 1]))
        out = []
        self._split(h, out, random.Random(self.order * 7919 + len(f)))
        return sorted(out)

    def _poly_sub(self, f, g):
        n = max(len(f), len(g))
        f = list(f) + [0] * (n - len(f))
        g = list(g) + [0] * (n - len(g))
        return self.poly_trim([self.sub(a, b) for a, b in zip(f, g)])

    def _split(self, h, out, rng):
        if len(h) <= 1:
            return
        if len(h) == 2:
            out.append(self.neg(self.mul(h[0], self.inv(h[1]))))
            return
        while True:
            a = rng.randrange(self.order)
            if self.p == 2:
                # trace map of a*x
                t = [0, a]
                acc = list(t)
                for _ in range(self.k - 1):
                    t = self.poly_divmod(self.poly_mul(t, t), h)[1]
                    acc = self._poly_add(acc, t)
                cand = acc
            else:
                cand = self._poly_sub(self.poly_powmod([a, 1], (self.order - 1) // 2, h), [1])
            d = self.poly_gcd(h, cand)
            if 1 < len(d) < len(h):
                self._split(d, out, rng)
                self._split(self.poly_divmod(h, d)[0], out, rng)
                return

    def _poly_add(self, f, g):
        n = max(len(f), len(g))
        f = list(f) + [0] * (n - len(f))
        g = list(g) + [0] * (n - len(g))
        return self.poly_trim([self.add(a, b) for a, b in zip(f, g)])


@lru_cache(maxsize=None)
def get_field(p: int, k: int = 1) -> GF:
    return GF(p, k)


@lru_cache(maxsize=None)
def embedding_image(p: int, a: int, b: int) -> int:
    """Encoding in GF(p^b) of the image of the generator x of GF(p^a).

    The image is the smallest root (by encoding) of the defining polynomial
    of GF(p^a) inside GF(p^b).
    """
    if b % a:
        raise ValueError(f"GF({p}^{a}) does not embed in GF({p}^{b})")
    if a == 1:
        return 0
    big = get_field(p, b)
    rts = big.roots(list(get_field(p, a).modulus))
    return rts[0]


def embed(value: int, p: int, a: int, b: int) -> int:
    """Map an element of GF(p^a) into GF(p^b) along the fixed embedding."""
    if a == b:
        return value
    small = get_field(p, a)
    big = get_field(p, b)
    if a == 1:
        return value % p
    r = embedding_image(p, a, b)
    return big.poly_eval(small.digits(value), r)


class GFElem:
    """Operator-overloaded wrapper so generic linear algebra can run on GF."""

    __slots__ = ("field", "v")

    def __init__(self, field: GF, v: int):
        self.field = field
        self.v = v

    def _lift(self, other):
        if isinstance(other, GFElem):
            return other.v
        return self.field.from_int(other)

    def __add__(self, o):
        return GFElem(self.field, self.field.add(self.v, self._lift(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return GFElem(self.field, self.field.sub(self.v, self._lift(o)))

    def __rsub__(self, o):
        return GFElem(self.field, self.field.sub(self._lift(o), self.v))

    def __mul__(self, o):
        return GFElem(self.field, self.field.mul(self.v, self._lift(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return GFElem(self.field, self.field.div(self.v, self._lift(o)))

    def __rtruediv__(self, o):
        return GFElem(self.field, self.field.div(self._lift(o), self.v))

    def __neg__(self):
        return GFElem(self.field, self.field.neg(self.v))

    def __pow__(self, e):
        return GFElem(self.field, self.field.pow(self.v, e))

    def __eq__(self, o):
        if isinstance(o, GFElem):
            return self.v == o.v and self.field is o.field
        if isinstance(o, int):
            return self.v == self.field.from_int(o)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}@{self.field!r}"


def common_degree(*degrees: int) -> int:
    out = 1
    for d in degrees:
        out = _lcm(out, d)
    return out
