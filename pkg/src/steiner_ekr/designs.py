"""2-(v, k, 1) designs: validation, constructors, file io, parallel classes.

A design here is a point set 0 .. v-1 together with b blocks of k points such
that every pair of points lies in exactly one block.  Validation is part of
construction: a ``Design`` instance that exists has passed the pair axiom.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError
from .geometry import field_for_order, hermitian_points, line_points, pg_lines, prime_power


class DesignError(DomainError):
    pass


class ParameterMismatch(DesignError):
    pass


class PairUncovered(DesignError):
    def __init__(self, p: int, q: int):
        super().__init__(f"point pair ({p}, {q}) lies on no block")
        self.pair = (p, q)


class PairRepeated(DesignError):
    def __init__(self, p: int, q: int, block_a: int, block_b: int):
        super().__init__(f"point pair ({p}, {q}) lies on blocks {block_a} and {block_b}")
        self.pair = (p, q)
        self.blocks = (block_a, block_b)


class ParseError(DesignError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NotResolvable(DesignError):
    pass


@dataclass(frozen=True)
class DesignParams:
    """Derived parameters of a 2-(v, k, 1) design.

    deficit is (k-1)**2 - r, the distance of the replication number below the
    value where pencils stop dominating the counting bound.
    """

    v: int
    k: int
    b: int
    r: int
    deficit: int

    @classmethod
    def from_vk(cls, v: int, k: int) -> "DesignParams":
        r = (v - 1) // (k - 1)
        b = v * (v - 1) // (k * (k - 1))
        return cls(v=v, k=k, b=b, r=r, deficit=(k - 1) ** 2 - r)


class Design:
    """An immutable, validated 2-(v, k, 1) design."""

    def __init__(self, v: int, k: int, blocks, name: str | None = None):
        if not isinstance(v, int) or not isinstance(k, int) or not (v > k > 1):
            raise ParameterMismatch(f"need v > k > 1, got v={v} k={k}")
        clean = []
        for bl in blocks:
            tb = tuple(bl)
            if len(tb) != k:
                raise ParameterMismatch(f"block {tb} does not have {k} points")
            if any(not (0 <= x < v) for x in tb):
                raise ParameterMismatch(f"block {tb} has a point outside 0..{v - 1}")
            if any(tb[i] >= tb[i + 1] for i in range(k - 1)):
                raise ParameterMismatch(f"block {tb} is not strictly increasing")
            clean.append(tb)
        clean.sort()
        self.v = v
        self.k = k
        self.blocks: tuple[tuple[int, ...], ...] = tuple(clean)
        self.name = name
        self._check_pairs()

    def _check_pairs(self):
        v = self.v
        cover = [0] * v
        first_block: dict[tuple[int, int], int] = {}
        for bi, bl in enumerate(self.blocks):
            for i in range(len(bl)):
                for j in range(i + 1, len(bl)):
                    p, q = bl[i], bl[j]
                    if (cover[p] >> q) & 1:
                        raise PairRepeated(p, q, first_block[(p, q)], bi)
                    cover[p] |= 1 << q
                    first_block[(p, q)] = bi
        npairs = len(first_block)
        if npairs != v * (v - 1) // 2:
            for p in range(v):
                want = ((1 << v) - 1) >> (p + 1) << (p + 1)
                missing = want & ~cover[p]
                if missing:
                    q = (missing & -missing).bit_length() - 1
                    raise PairUncovered(p, q)
            raise ParameterMismatch("pair bookkeeping is inconsistent")

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def r(self) -> int:
        return (self.v - 1) // (self.k - 1)

    @property
    def params(self) -> DesignParams:
        return DesignParams.from_vk(self.v, self.k)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Per point, the sorted block indices through it (r each)."""
        lists: list[list[int]] = [[] for _ in range(self.v)]
        for bi, bl in enumerate(self.blocks):
            for p in bl:
                lists[p].append(bi)
        return tuple(tuple(l) for l in lists)

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        out = []
        for bl in self.blocks:
            m = 0
            for p in bl:
                m |= 1 << p
            out.append(m)
        return tuple(out)

    def block_index(self, block) -> int:
        """Index of a block given as an iterable of points."""
        key = tuple(sorted(block))
        lo, hi = 0, len(self.blocks)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.blocks[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self.blocks) and self.blocks[lo] == key:
            return lo
        raise KeyError(f"{key} is not a block")

    def __repr__(self):
        tag = self.name or "design"
        return f"<{tag}: 2-({self.v},{self.k},1), b={self.b}>"


def validate(v: int, k: int, blocks, name: str | None = None) -> Design:
    """Construct a design, raising a diagnostic on the first axiom violation."""
    return Design(v, k, blocks, name=name)


# -- constructors ---------------------------------------------------------


def projective_plane(q: int) -> Design:
    """Lines of PG(2, q): a 2-(q^2+q+1, q+1, 1) design."""
    pts, lines = pg_lines(2, q)
    return Design(len(pts), q + 1, lines, name=f"projective:{q}")


def pg3_line_design(q: int) -> Design:
    """Lines of PG(3, q): a 2-((q^2+1)(q+1), q+1, 1) design."""
    pts, lines = pg_lines(3, q)
    return Design(len(pts), q + 1, lines, name=f"pg3:{q}")


def affine_plane(q: int) -> Design:
    """Lines of AG(2, q): a 2-(q^2, q, 1) design; point (x, y) has index x*q + y."""
    fld = field_for_order(q)
    blocks = []
    for m in fld.elements:
        for c in fld.elements:
            blocks.append(tuple(sorted(x * q + fld.add(fld.mul(m, x), c) for x in fld.elements)))
    for c in fld.elements:
        blocks.append(tuple(c * q + y for y in fld.elements))
    return Design(q * q, q, blocks, name=f"affine:{q}")


def hermitian_unital(q: int) -> Design:
    """Secant-line design of the Hermitian curve: 2-(q^3+1, q+1, 1)."""
    prime_power(q)
    fld = field_for_order(q * q)
    hset = hermitian_points(q)
    hindex = {pt: i for i, pt in enumerate(hset)}
    blocks = []
    covered: set[tuple[int, int]] = set()
    n = len(hset)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in covered:
                continue
            members = sorted(
                {hindex[w] for w in line_points(fld, hset[i], hset[j]) if w in hindex}
            )
            if len(members) != q + 1:
                raise DesignError("secant line does not meet the curve in q+1 points")
            block = tuple(members)
            blocks.append(block)
            for a in range(len(block)):
                for b in range(a + 1, len(block)):
                    covered.add((block[a], block[b]))
    return Design(q**3 + 1, q + 1, blocks, name=f"unital:{q}")


def complete_graph(v: int) -> Design:
    """Edge set of K_v as a 2-(v, 2, 1) design."""
    if v < 3:
        raise ParameterMismatch("need at least 3 vertices")
    blocks = [(i, j) for i in range(v) for j in range(i + 1, v)]
    return Design(v, 2, blocks, name=f"kgraph:{v}")


# The two nonisomorphic Steiner triple systems on 13 points, blocks given as
# strings over 0-9, a, b, c.
_STS13_BLOCKS = {
    1: (
        "012 034 056 078 09a 0bc 135 147 168 19b 1ac 239 245 "
        "26a 27c 28b 36b 37a 38c 46c 489 4ab 57b 58a 59c 679"
    ),
    2: (
        "012 034 056 078 09a 0bc 135 147 168 19b 1ac 239 245 "
        "26a 27b 28c 36b 37c 38a 46c 489 4ab 57a 58b 59c 679"
    ),
}

_STS13_DIGITS = {ch: i for i, ch in enumerate("0123456789abc")}


def sts13(variant: int) -> Design:
    """One of the two Steiner triple systems on 13 points (variant 1 or 2)."""
    if variant not in _STS13_BLOCKS:
        raise DomainError("variant must be 1 or 2")
    blocks = [
        tuple(sorted(_STS13_DIGITS[ch] for ch in word))
        for word in _STS13_BLOCKS[variant].split()
    ]
    return Design(13, 3, blocks, name=f"sts13:{variant}")


# -- file io --------------------------------------------------------------


def save_design(design: Design, path) -> None:
    """Write the plain text exchange format: a "v k" header, then one block per line."""
    lines = [f"{design.v} {design.k}"]
    lines.extend(" ".join(map(str, bl)) for bl in design.blocks)
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def load_design(path, name: str | None = None) -> Design:
    """Parse and validate the text format produced by save_design.

    Lines starting with '#' and blank lines are skipped.  The first payload
    line must be "v k"; exactly b = v(v-1)/(k(k-1)) block lines must follow,
    each k strictly increasing point indices.
    """
    if hasattr(path, "read"):
        raw = path.read()
    else:
        with open(path) as fh:
            raw = fh.read()
    header: tuple[int, int] | None = None
    blocks: list[tuple[int, ...]] = []
    expected = None
    for line_no, line in enumerate(raw.splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        fields = text.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError(line_no, "header must be two integers: v k")
            try:
                v, k = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError(line_no, "header must be two integers: v k") from None
            if not v > k > 1:
                raise ParseError(line_no, f"need v > k > 1, got v={v} k={k}")
            if (v - 1) % (k - 1) or (v * (v - 1)) % (k * (k - 1)):
                raise ParseError(line_no, f"no 2-({v},{k},1) design has these parameters")
            header = (v, k)
            expected = v * (v - 1) // (k * (k - 1))
            continue
        v, k = header
        if len(blocks) >= expected:
            raise ParseError(line_no, f"more than b={expected} block lines")
        try:
            pts = tuple(int(f) for f in fields)
        except ValueError:
            raise ParseError(line_no, "block line must contain integers") from None
        if len(pts) != k:
            raise ParseError(line_no, f"block must list exactly k={k} points")
        if any(pts[i] >= pts[i + 1] for i in range(k - 1)):
            raise ParseError(line_no, "block points must be strictly increasing")
        if pts[0] < 0 or pts[-1] >= v:
            raise ParseError(line_no, f"point outside 0..{v - 1}")
        blocks.append(pts)
    if header is None:
        raise ParseError(0, "empty design file")
    if len(blocks) != expected:
        raise ParseError(0, f"expected b={expected} blocks, found {len(blocks)}")
    return Design(header[0], header[1], blocks, name=name)


# -- resolutions -----------------------------------------------------------


def parallel_classes(design: Design) -> list[tuple[int, ...]]:
    """Partition the blocks into classes of disjoint blocks covering all points.

    Exhaustive backtracking; raises NotResolvable when no resolution exists.
    Intended for desk-scale designs.
    """
    v, k = design.v, design.k
    if v % k:
        raise NotResolvable(f"k={k} does not divide v={v}")
    masks = design.block_masks
    incidence = design.incidence
    nblocks = design.b
    full = (1 << v) - 1
    used = bytearray(nblocks)
    classes: list[tuple[int, ...]] = []

    def completions(cover: int, members: list[int]):
        if cover == full:
            yield tuple(members)
            return
        p = (~cover & full)
        p = (p & -p).bit_length() - 1
        for j in incidence[p]:
            if used[j] or (masks[j] & cover):
                continue
            used[j] = 1
            members.append(j)
            yield from completions(cover | masks[j], members)
            members.pop()
            used[j] = 0

    def solve() -> bool:
        anchor = None
        for i in range(nblocks):
            if not used[i]:
                anchor = i
                break
        if anchor is None:
            return True
        used[anchor] = 1
        for cls in completions(masks[anchor], [anchor]):
            classes.append(cls)
            if solve():
                return True
            classes.pop()
        used[anchor] = 0
        return False

    if not solve():
        raise NotResolvable("no partition into parallel classes exists")
    return classes
