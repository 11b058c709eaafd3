"""Canonical codes for the incidence structure induced by a block family.

Under the pair axiom two distinct covered points can never lie on the same two
member blocks, so the induced point-block structure is determined, up to the
block size k, by its concurrency classes: for each point on at least two
members, the set of member positions through it.  Canonical labeling of that
set system therefore canonises the whole induced structure.

The search is individualisation-refinement over block positions with orbit
pruning from automorphisms discovered along the way, which keeps highly
symmetric inputs (pencils, full plane line sets) cheap.  The code is the
minimum, over admissible relabelings, of the sorted relabeled class list.
"""

from __future__ import annotations

from collections import defaultdict


def _refine(s: int, subs: list[frozenset[int]], mem: list[list[int]], colors: list[int]) -> list[int]:
    """Stable coloring of 0..s-1 jointly refined with the class colors."""
    while True:
        scol = [
            (len(subs[si]), tuple(sorted(colors[e] for e in subs[si])))
            for si in range(len(subs))
        ]
        srank = {key: i for i, key in enumerate(sorted(set(scol)))}
        esig = [
            (colors[e], tuple(sorted(srank[scol[si]] for si in mem[e])))
            for e in range(s)
        ]
        erank = {key: i for i, key in enumerate(sorted(set(esig)))}
        new = [erank[esig[e]] for e in range(s)]
        if new == colors:
            return new
        colors = new


def _individualize(colors: list[int], x: int) -> list[int]:
    keyed = [(colors[e], 0 if e == x else 1) for e in range(len(colors))]
    rank = {key: i for i, key in enumerate(sorted(set(keyed)))}
    return [rank[key] for key in keyed]


def canonical_set_system(s: int, subsets) -> tuple[tuple[int, ...], ...]:
    """Canonical form of a set system over ground set 0..s-1."""
    subs = [frozenset(S) for S in subsets]
    if s == 0:
        return ()
    mem: list[list[int]] = [[] for _ in range(s)]
    for si, S in enumerate(subs):
        for e in S:
            mem[e].append(si)

    best_code: tuple | None = None
    best_pos: list[int] | None = None
    autos: list[tuple[int, ...]] = []

    def visit_leaf(colors: list[int]):
        nonlocal best_code, best_pos
        code = tuple(sorted(tuple(sorted(colors[e] for e in S)) for S in subs))
        if best_code is None or code < best_code:
            best_code = code
            best_pos = list(colors)
        elif code == best_code and best_pos is not None:
            inv_best = [0] * s
            for e in range(s):
                inv_best[best_pos[e]] = e
            gamma = tuple(inv_best[colors[e]] for e in range(s))
            if any(gamma[i] != i for i in range(s)) and gamma not in autos:
                autos.append(gamma)

    def in_orbit(x: int, done: list[int], fixed: list[int]) -> bool:
        gens = [g for g in autos if all(g[f] == f for f in fixed)]
        if not gens:
            return False
        orbit = set(done)
        frontier = list(done)
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = g[y]
                if z == x:
                    return True
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        return False

    def search(colors: list[int], fixed: list[int]):
        cells = defaultdict(list)
        for e in range(s):
            cells[colors[e]].append(e)
        target = None
        for col in sorted(cells):
            if len(cells[col]) > 1:
                target = cells[col]
                break
        if target is None:
            visit_leaf(colors)
            return
        done: list[int] = []
        for x in target:
            if done and in_orbit(x, done, fixed):
                continue
            done.append(x)
            search(_refine(s, subs, mem, _individualize(colors, x)), fixed + [x])

    search(_refine(s, subs, mem, [0] * s), [])
    assert best_code is not None
    return best_code


def concurrency_classes(family) -> tuple[int, list[frozenset[int]]]:
    """Member count s and, per multiply covered point, its member positions."""
    idx = family.indices()
    design = family.design
    through: dict[int, list[int]] = {}
    for pos, bi in enumerate(idx):
        for p in design.blocks[bi]:
            through.setdefault(p, []).append(pos)
    subs = [frozenset(ps) for ps in through.values() if len(ps) >= 2]
    return len(idx), subs


def canonical_code(family) -> str:
    """String equal for two families iff their induced structures are isomorphic."""
    s, subs = concurrency_classes(family)
    form = canonical_set_system(s, subs)
    body = ";".join(",".join(map(str, S)) for S in form)
    return f"k{family.design.k}:s{s}:{body}"
