"""Intersecting block families: enumeration, maximality, structure, classification.

Block families are bit vectors over block indices, and the pairwise
intersection relation is one adjacency bitmask per block, so the maximality
and enumeration loops are word-parallel.  Enumeration is Bron-Kerbosch with
pivoting over a degeneracy vertex order; ties always break toward the smaller
block index, which makes every stream deterministic and worker-count
independent.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .canon import canonical_code
from .designs import Design
from .errors import BudgetExceeded, DomainError


class NotIntersecting(DomainError):
    pass


class PointOnBlock(DomainError):
    pass


class HasONan(DomainError):
    def __init__(self, blocks: tuple[int, int, int, int]):
        super().__init__(f"design has an O'Nan configuration: blocks {blocks}")
        self.blocks = blocks


class BlockSet:
    """A set of blocks of one design, stored as a bit vector of indices."""

    __slots__ = ("design", "mask")

    def __init__(self, design: Design, blocks=0):
        self.design = design
        if isinstance(blocks, int):
            mask = blocks
        else:
            mask = 0
            for i in blocks:
                if not 0 <= i < design.b:
                    raise DomainError(f"block index {i} outside 0..{design.b - 1}")
                mask |= 1 << i
        if mask >> design.b:
            raise DomainError("bit vector longer than the block list")
        self.mask = mask

    def indices(self) -> tuple[int, ...]:
        out = []
        m = self.mask
        while m:
            bit = m & -m
            out.append(bit.bit_length() - 1)
            m ^= bit
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.indices())

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.design.b and (self.mask >> i) & 1 == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BlockSet)
            and self.design is other.design
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.design), self.mask))

    def __repr__(self):
        return f"BlockSet({self.indices()})"


@dataclass(frozen=True)
class CoverProfile:
    """How a family covers points.

    k_hist[i] counts covered points lying on exactly i member blocks (entry 0
    is unused), k_s is the top multiplicity, and cover_excess is the number of
    covered points beyond k(k-1).
    """

    covered: int
    k_hist: tuple[int, ...]
    k_s: int
    cover_excess: int


@dataclass(frozen=True)
class EkrType:
    """Isomorphism type of a maximal family's induced incidence structure."""

    label: str
    size: int
    profile: CoverProfile
    code: str


@lru_cache(maxsize=None)
def intersection_adjacency(design: Design) -> tuple[int, ...]:
    """Per block, the bitmask of other blocks sharing a point with it."""
    adj = [0] * design.b
    for through in design.incidence:
        m = 0
        for j in through:
            m |= 1 << j
        for j in through:
            adj[j] |= m
    for j in range(design.b):
        adj[j] &= ~(1 << j)
    return tuple(adj)


@lru_cache(maxsize=None)
def _pair_points(design: Design) -> dict[tuple[int, int], int]:
    """The unique common point of each intersecting block pair (i < j)."""
    table: dict[tuple[int, int], int] = {}
    for p, through in enumerate(design.incidence):
        for a in range(len(through)):
            for b in range(a + 1, len(through)):
                table[(through[a], through[b])] = p
    return table


def is_intersecting(family: BlockSet) -> bool:
    adj = intersection_adjacency(family.design)
    mask = family.mask
    for i in family.indices():
        if mask & ~adj[i] & ~(1 << i):
            return False
    return True


def is_maximal(family: BlockSet) -> bool:
    """True when no further block meets every member.  Empty families are not maximal."""
    if not is_intersecting(family):
        raise NotIntersecting("family contains two disjoint blocks")
    adj = intersection_adjacency(family.design)
    mask = family.mask
    for c in range(family.design.b):
        if (mask >> c) & 1:
            continue
        if adj[c] & mask == mask:
            return False
    return family.design.b == 0 or mask != 0


def point_pencil(design: Design, point: int) -> BlockSet:
    """The r blocks through a point."""
    if not 0 <= point < design.v:
        raise DomainError(f"point {point} outside 0..{design.v - 1}")
    return BlockSet(design, design.incidence[point])


def triangle(design: Design, point: int, block: int) -> BlockSet:
    """A base block plus every block through an external point that meets it."""
    if not 0 <= point < design.v:
        raise DomainError(f"point {point} outside 0..{design.v - 1}")
    if not 0 <= block < design.b:
        raise DomainError(f"block index {block} outside 0..{design.b - 1}")
    if point in design.blocks[block]:
        raise PointOnBlock(f"point {point} lies on block {block}")
    adj = intersection_adjacency(design)
    members = [block]
    members.extend(j for j in design.incidence[point] if (adj[block] >> j) & 1)
    return BlockSet(design, members)


def cover_profile(family: BlockSet) -> CoverProfile:
    design = family.design
    mult: dict[int, int] = {}
    for bi in family.indices():
        for p in design.blocks[bi]:
            mult[p] = mult.get(p, 0) + 1
    if not mult:
        return CoverProfile(0, (0,), 0, -design.k * (design.k - 1))
    k_s = max(mult.values())
    hist = [0] * (k_s + 1)
    for m in mult.values():
        hist[m] += 1
    covered = len(mult)
    return CoverProfile(covered, tuple(hist), k_s, covered - design.k * (design.k - 1))


# -- enumeration -----------------------------------------------------------


def _degeneracy_order(adj: tuple[int, ...]) -> list[int]:
    n = len(adj)
    alive = (1 << n) - 1
    order = []
    for _ in range(n):
        best_v, best_d = -1, n + 1
        m = alive
        while m:
            bit = m & -m
            v = bit.bit_length() - 1
            m ^= bit
            d = (adj[v] & alive).bit_count()
            if d < best_d:
                best_d, best_v = d, v
        order.append(best_v)
        alive &= ~(1 << best_v)
    return order


def _bk_pivot(adj, R: list[int], P: int, X: int, min_size: int, out: list[tuple[int, ...]]):
    if P == 0:
        if X == 0 and len(R) >= min_size:
            out.append(tuple(sorted(R)))
        return
    if len(R) + P.bit_count() < min_size:
        return
    # pivot: vertex of P | X covering the most of P
    cand = P | X
    pivot, best = -1, -1
    while cand:
        bit = cand & -cand
        u = bit.bit_length() - 1
        cand ^= bit
        c = (P & adj[u]).bit_count()
        if c > best:
            best, pivot = c, u
    ext = P & ~adj[pivot]
    while ext:
        bit = ext & -ext
        v = bit.bit_length() - 1
        ext ^= bit
        R.append(v)
        _bk_pivot(adj, R, P & adj[v], X & adj[v], min_size, out)
        R.pop()
        P &= ~bit
        X |= bit


def _bk_roots(adj, order, lo: int, hi: int, min_size: int) -> list[tuple[int, ...]]:
    """Maximal cliques whose degeneracy-first vertex lies in order[lo:hi]."""
    pos = {v: i for i, v in enumerate(order)}
    later = [0] * len(order)
    running = 0
    for i in range(len(order) - 1, -1, -1):
        later[i] = running
        running |= 1 << order[i]
    out: list[tuple[int, ...]] = []
    for i in range(lo, hi):
        v = order[i]
        earlier = ((1 << len(order)) - 1) & ~later[i] & ~(1 << v)
        _bk_pivot(adj, [v], adj[v] & later[i], adj[v] & earlier, min_size, out)
    return out


def _bk_worker(args):
    adj, order, lo, hi, min_size = args
    return _bk_roots(adj, order, lo, hi, min_size)


def enumerate_maximal_ekr(
    design: Design,
    min_size: int = 1,
    max_count: int | None = None,
    workers: int = 1,
) -> list[BlockSet]:
    """Every maximal intersecting family with at least min_size blocks.

    The result is materialised and sorted by block index tuple, so identical
    inputs give identical streams for any worker count.  When more than
    max_count families exist the search raises BudgetExceeded rather than
    truncate silently.
    """
    if min_size < 1:
        min_size = 1
    adj = intersection_adjacency(design)
    order = _degeneracy_order(adj)
    n = len(order)
    if workers <= 1 or n < 4 * workers:
        cliques = _bk_roots(adj, order, 0, n, min_size)
    else:
        step = -(-n // workers)
        chunks = [(adj, order, lo, min(lo + step, n), min_size) for lo in range(0, n, step)]
        cliques = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_bk_worker, chunks):
                cliques.extend(part)
    if max_count is not None and len(cliques) > max_count:
        raise BudgetExceeded(
            f"{len(cliques)} maximal families exceed the requested cap {max_count}",
            count=len(cliques),
        )
    cliques.sort()
    return [BlockSet(design, c) for c in cliques]


def maximal_family_sizes(
    design: Design, min_size: int = 1, workers: int = 1
) -> dict[int, int]:
    """Size histogram of the maximal-family stream, without storing families."""
    sizes: dict[int, int] = {}
    for fam in enumerate_maximal_ekr(design, min_size=min_size, workers=workers):
        sizes[len(fam)] = sizes.get(len(fam), 0) + 1
    return dict(sorted(sizes.items(), reverse=True))


def max_ekr_size(design: Design) -> BlockSet:
    """A maximum intersecting family, found by branch and bound.

    Seeded with a point pencil (always a clique of the intersection graph), so
    the search only has to certify optimality or beat r.
    """
    adj = intersection_adjacency(design)
    seed = tuple(design.incidence[0])
    best: list = [len(seed), seed]

    def color_sort(P: int) -> list[tuple[int, int]]:
        order = []
        un = P
        color = 0
        while un:
            color += 1
            avail = un
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                order.append((v, color))
                avail &= ~adj[v] & ~bit
                un ^= bit
        return order

    def expand(R: list[int], P: int):
        for v, c in reversed(color_sort(P)):
            if len(R) + c <= best[0]:
                return
            R.append(v)
            Pv = P & adj[v]
            if Pv:
                expand(R, Pv)
            elif len(R) > best[0]:
                best[0] = len(R)
                best[1] = tuple(sorted(R))
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << design.b) - 1)
    return BlockSet(design, best[1])


# -- O'Nan configurations ---------------------------------------------------


def find_onan(design: Design) -> tuple[int, int, int, int] | None:
    """Four pairwise intersecting blocks with no three through a common point.

    With the pair axiom the condition is equivalent to the six pairwise
    intersection points being distinct.  The scan fixes the least block first,
    so the first configuration in lexicographic order is returned.
    """
    adj = intersection_adjacency(design)
    pairs = _pair_points(design)
    n = design.b
    for a in range(n):
        na = adj[a] >> (a + 1) << (a + 1)
        ma = na
        while ma:
            bit_b = ma & -ma
            b = bit_b.bit_length() - 1
            ma ^= bit_b
            p_ab = pairs[(a, b)]
            mc = (na & adj[b]) >> (b + 1) << (b + 1)
            while mc:
                bit_c = mc & -mc
                c = bit_c.bit_length() - 1
                mc ^= bit_c
                p_ac = pairs[(a, c)]
                p_bc = pairs[(b, c)]
                if p_ac == p_ab or p_bc == p_ab or p_ac == p_bc:
                    continue
                md = (mc & adj[c]) >> (c + 1) << (c + 1)
                while md:
                    bit_d = md & -md
                    d = bit_d.bit_length() - 1
                    md ^= bit_d
                    p_ad = pairs[(a, d)]
                    p_bd = pairs[(b, d)]
                    p_cd = pairs[(c, d)]
                    if len({p_ab, p_ac, p_bc, p_ad, p_bd, p_cd}) == 6:
                        return (a, b, c, d)
    return None


def has_onan(design: Design) -> bool:
    return find_onan(design) is not None


# -- classification ---------------------------------------------------------


def _label(design: Design, size: int, profile: CoverProfile, code: str) -> str:
    k = design.k
    if profile.k_s == size:
        return "point-pencil"
    if k == 3:
        return f"EKR_{size}"
    if size == k + 1 and profile.k_s == k:
        return "triangle"
    digest = hashlib.sha256(code.encode()).hexdigest()[:8]
    return f"type-s{size}-{digest}"


def classify(design: Design, families) -> list[tuple[EkrType, int]]:
    """Group families by the isomorphism type of their induced structures."""
    groups: dict[str, list] = {}
    for fam in families:
        code = canonical_code(fam)
        entry = groups.get(code)
        if entry is None:
            profile = cover_profile(fam)
            etype = EkrType(_label(design, len(fam), profile, code), len(fam), profile, code)
            groups[code] = [etype, 0]
        groups[code][1] += 1
    out = [(etype, count) for etype, count in groups.values()]
    out.sort(key=lambda tc: (-tc[0].size, tc[0].code))
    return out


def classification_report(design: Design, families, source: str | None = None) -> dict:
    """JSON-ready classification summary with one witness family per type."""
    groups: dict[str, dict] = {}
    total = 0
    for fam in families:
        total += 1
        code = canonical_code(fam)
        entry = groups.get(code)
        if entry is None:
            profile = cover_profile(fam)
            groups[code] = {
                "label": _label(design, len(fam), profile, code),
                "size": len(fam),
                "count": 1,
                "covered": profile.covered,
                "max_multiplicity": profile.k_s,
                "k_hist": {str(i): profile.k_hist[i] for i in range(1, len(profile.k_hist)) if profile.k_hist[i]},
                "canonical_code": code,
                "witness": list(fam.indices()),
            }
        else:
            entry["count"] += 1
    types = sorted(groups.values(), key=lambda t: (-t["size"], t["canonical_code"]))
    params = design.params
    return {
        "design": {
            "source": source or design.name or "",
            "v": params.v,
            "k": params.k,
            "b": params.b,
            "r": params.r,
        },
        "family_count": total,
        "types": types,
    }


@dataclass(frozen=True)
class OnanFreeVerdict:
    """Outcome of checking that every maximal family is a pencil or a triangle."""

    confirmed: bool
    pencil_count: int
    triangle_count: int
    counterexample: BlockSet | None = None
    note: str | None = None


def classify_onan_free(design: Design, families=None) -> OnanFreeVerdict:
    """For O'Nan-free designs, verify the pencil-or-triangle dichotomy.

    Raises HasONan when the design contains an O'Nan configuration; in that
    case the dichotomy is not promised and the caller should inspect the
    configuration instead.
    """
    witness = find_onan(design)
    if witness is not None:
        raise HasONan(witness)
    if families is None:
        families = enumerate_maximal_ekr(design)
    k = design.k
    pencils = 0
    triangles = 0
    for fam in families:
        profile = cover_profile(fam)
        if profile.k_s == len(fam):
            pencils += 1
        elif len(fam) == k + 1 and profile.k_s == k:
            triangles += 1
        elif design.r == k and len(fam) == design.b:
            # every two blocks meet, so the single maximal family is all blocks
            return OnanFreeVerdict(
                True, pencils, triangles, note="all blocks form the single maximal family"
            )
        else:
            return OnanFreeVerdict(False, pencils, triangles, counterexample=fam)
    return OnanFreeVerdict(True, pencils, triangles)
