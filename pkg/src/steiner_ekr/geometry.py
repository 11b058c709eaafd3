"""Small finite fields and projective / Hermitian point sets.

Fields GF(p^e) are capped at 2**16 elements and use a dense integer element
encoding: the element with base-p digits (c0, c1, ...) is sum(ci * p**i), so
0 and 1 are the additive and multiplicative identities.  Multiplication runs
on discrete log tables built from a fixed generator search, which keeps every
construction reproducible across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import isqrt

from .errors import DomainError

MAX_FIELD_ORDER = 1 << 16

# Fixed moduli for the common small extensions (coefficients constant-first,
# leading coefficient last).  Anything missing falls back to the
# lexicographically least irreducible polynomial, which is equally
# deterministic; every modulus is re-verified at construction either way.
_MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
    (11, 2): (1, 0, 1),
    (13, 2): (2, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Factor q = p**f with p prime, or raise DomainError."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    p = q
    for cand in range(2, isqrt(q) + 1):
        if q % cand == 0:
            p = cand
            break
    f = 0
    rest = q
    while rest % p == 0:
        rest //= p
        f += 1
    if rest != 1 or not is_prime(p):
        raise DomainError(f"{q} is not a prime power")
    return p, f


def _poly_trim(cs: tuple[int, ...]) -> tuple[int, ...]:
    i = len(cs)
    while i > 0 and cs[i - 1] == 0:
        i -= 1
    return cs[:i]


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    # m is monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(tuple(x % p for x in a[:dm]))


def _is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg < 1 or m[-1] != 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = (*tail, 1)
            if not _poly_mod(m, g, p):
                return False
    return True


def _min_irreducible(p: int, e: int) -> tuple[int, ...]:
    for tail in product(range(p), repeat=e):
        m = (*tail, 1)
        if _is_irreducible(m, p):
            return m
    raise DomainError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic, extension degree and modulus of a field GF(p^e)."""

    p: int
    e: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.e < 1:
            raise DomainError("extension degree must be positive")
        if self.p**self.e > MAX_FIELD_ORDER:
            raise DomainError(f"field order {self.p}**{self.e} exceeds {MAX_FIELD_ORDER}")
        m = tuple(int(c) % self.p for c in self.modulus)
        if len(m) != self.e + 1 or m[-1] != 1:
            raise DomainError("modulus must be monic of degree e")
        object.__setattr__(self, "modulus", m)
        if not _is_irreducible(m, self.p):
            raise DomainError(f"modulus {m} is reducible over GF({self.p})")

    @classmethod
    def default(cls, p: int, e: int) -> "FieldSpec":
        mod = _MODULUS_TABLE.get((p, e))
        if mod is None:
            mod = _min_irreducible(p, e)
        return cls(p, e, mod)

    @property
    def order(self) -> int:
        return self.p**self.e


class Field:
    """Arithmetic table for GF(p^e) on elements encoded as 0 .. p^e - 1."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.order = spec.order
        self._build_tables()

    # -- encoding -----------------------------------------------------

    def _digits(self, x: int) -> list[int]:
        p, e = self.p, self.e
        out = []
        for _ in range(e):
            out.append(x % p)
            x //= p
        return out

    def _encode(self, digits) -> int:
        val = 0
        for c in reversed(list(digits)):
            val = val * self.p + (c % self.p)
        return val

    # -- construction -------------------------------------------------

    def _mul_raw(self, x: int, y: int) -> int:
        dx, dy = self._digits(x), self._digits(y)
        prod = [0] * (2 * self.e - 1)
        for i, a in enumerate(dx):
            if a:
                for j, b in enumerate(dy):
                    prod[i + j] = (prod[i + j] + a * b) % self.p
        rem = _poly_mod(tuple(prod), self.spec.modulus, self.p)
        return self._encode(rem + (0,) * (self.e - len(rem)))

    def _pow_raw(self, x: int, k: int) -> int:
        out = 1
        while k:
            if k & 1:
                out = self._mul_raw(out, x)
            x = self._mul_raw(x, x)
            k >>= 1
        return out

    def _build_tables(self):
        q = self.order
        # prime factors of the multiplicative group order
        n = q - 1
        factors = set()
        f = 2
        while f * f <= n:
            while n % f == 0:
                factors.add(f)
                n //= f
            f += 1
        if n > 1:
            factors.add(n)
        gen = None
        for g in range(2, q):
            if all(self._pow_raw(g, (q - 1) // ell) != 1 for ell in factors):
                gen = g
                break
        if gen is None:
            if q == 2:
                gen = 1
            else:
                raise DomainError("no generator found (broken modulus?)")
        self.generator = gen
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_raw(exp[i - 1], gen)
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp, self._log = exp, log

    # -- public arithmetic ---------------------------------------------

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.e == 1:
            return (x + y) % p
        out, mult = 0, 1
        for _ in range(self.e):
            out += ((x + y) % p) * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if self.e == 1:
            return (-x) % p
        out, mult = 0, 1
        for _ in range(self.e):
            out += ((-x) % p) * mult
            x //= p
            mult *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        q1 = self.order - 1
        return self._exp[(self._log[x] + self._log[y]) % q1]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        q1 = self.order - 1
        return self._exp[(-self._log[x]) % q1]

    def pow(self, x: int, k: int) -> int:
        if x == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        q1 = self.order - 1
        return self._exp[(self._log[x] * k) % q1]

    def frobenius(self, x: int) -> int:
        return self.pow(x, self.p)

    @property
    def elements(self) -> range:
        return range(self.order)


@lru_cache(maxsize=None)
def field(p: int, e: int = 1) -> Field:
    return Field(FieldSpec.default(p, e))


@lru_cache(maxsize=None)
def field_for_order(q: int) -> Field:
    p, f = prime_power(q)
    return field(p, f)


# -- projective geometry ------------------------------------------------


def proj_normalize(fld: Field, coords: tuple[int, ...]) -> tuple[int, ...]:
    """Scale homogeneous coordinates so the first nonzero entry is 1."""
    for c in coords:
        if c:
            if c == 1:
                return tuple(coords)
            s = fld.inv(c)
            return tuple(fld.mul(s, x) for x in coords)
    raise DomainError("zero vector has no projective point")


def pg_points(fld: Field, dim: int) -> list[tuple[int, ...]]:
    """Points of PG(dim, q), lexicographically sorted normalized coordinates."""
    q = fld.order
    pts = []
    for lead in range(dim + 1):
        for tail in product(range(q), repeat=dim - lead):
            pts.append((0,) * lead + (1,) + tail)
    pts.sort()
    return pts


def line_points(fld: Field, u: tuple[int, ...], v: tuple[int, ...]):
    """All q + 1 points on the line through distinct points u, v."""
    pts = [proj_normalize(fld, v)]
    for t in fld.elements:
        w = tuple(fld.add(a, fld.mul(t, b)) for a, b in zip(u, v))
        pts.append(proj_normalize(fld, w))
    return pts


def num_pg_points(dim: int, q: int) -> int:
    return (q ** (dim + 1) - 1) // (q - 1)


def num_pg_lines(dim: int, q: int) -> int:
    return ((q ** (dim + 1) - 1) * (q**dim - 1)) // ((q * q - 1) * (q - 1))


def pg_lines(dim: int, q: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Points and lines of PG(dim, q); lines are sorted tuples of point indices."""
    if dim < 2:
        raise DomainError("need dimension at least 2")
    fld = field_for_order(q)
    pts = pg_points(fld, dim)
    index = {pt: i for i, pt in enumerate(pts)}
    n = len(pts)
    lines = []
    covered: set[tuple[int, int]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in covered:
                continue
            members = sorted({index[w] for w in line_points(fld, pts[i], pts[j])})
            line = tuple(members)
            lines.append(line)
            for a in range(len(line)):
                for b in range(a + 1, len(line)):
                    covered.add((line[a], line[b]))
    lines.sort()
    if len(pts) != num_pg_points(dim, q) or len(lines) != num_pg_lines(dim, q):
        raise DomainError("projective space construction self-check failed")
    return pts, lines


# -- Hermitian curve ------------------------------------------------------


def hermitian_points(q: int) -> list[tuple[int, ...]]:
    """Points of PG(2, q^2) with x0^(q+1) + x1^(q+1) + x2^(q+1) = 0."""
    p, f = prime_power(q)
    if q * q > MAX_FIELD_ORDER:
        raise DomainError(f"q**2 = {q * q} exceeds the field order cap")
    fld = field(p, 2 * f)
    m = q + 1
    sel = []
    for pt in pg_points(fld, 2):
        acc = 0
        for c in pt:
            acc = fld.add(acc, fld.pow(c, m) if c else 0)
        if acc == 0:
            sel.append(pt)
    if len(sel) != q**3 + 1:
        raise DomainError("Hermitian curve self-check failed")
    return sel
