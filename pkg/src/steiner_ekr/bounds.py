"""Exact bound formulas, thresholds, and inequality sweeps for intersecting families.

Everything here is evaluated in exact arithmetic: rationals stay rationals,
square roots become SurdExpr comparisons, cube roots go through integer
bracketing.  Floors are certified by comparing against consecutive integers,
never by rounding a float.  Sweep functions return certificates listing every
failing case, so an empty failure list is the proof artifact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, DomainError
from .exactnum import (
    Rational,
    SurdExpr,
    cmp_double_surd,
    cmp_surd,
    icbrt_floor,
    cbrt_quadratic_sign,
    surd_floor,
)

# Largest deficit per block size for which the counting bound stays below the
# pencil size over the whole admissible excess grid; certified by
# sweep_deficit_grid and equal to deficit_cap(k) for every entry.
DEFICIT_CAPS = {4: 1, 5: 2, 6: 3, 7: 4, 8: 4, 9: 5, 10: 6, 11: 7, 12: 8, 13: 9}


def _frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _render(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return _frac_str(x)
    if isinstance(x, SurdExpr):
        return {"a": _frac_str(x.a), "b": _frac_str(x.b), "n": x.n}
    if isinstance(x, CubeRootBound):
        return {
            "const": _frac_str(x.const),
            "coef_cbrt_sq": _frac_str(x.sq_coef),
            "coef_cbrt": _frac_str(x.lin_coef),
            "radicand": x.radicand,
        }
    if isinstance(x, (tuple, list)):
        return [_render(e) for e in x]
    if isinstance(x, dict):
        return {str(k): _render(v) for k, v in x.items()}
    return str(x)


@dataclass(frozen=True)
class CubeRootBound:
    """const + sq_coef * radicand^(2/3) + lin_coef * radicand^(1/3), exactly."""

    radicand: int
    const: Fraction
    sq_coef: Fraction
    lin_coef: Fraction

    def compare(self, m: int) -> int:
        """Sign of (self - m), decided without floating point."""
        return cbrt_quadratic_sign(self.sq_coef, self.lin_coef, self.const - m, self.radicand)

    def exact_floor(self) -> int:
        m = int(float(self))
        while self.compare(m + 1) >= 0:
            m += 1
        while self.compare(m) < 0:
            m -= 1
        return m

    def __float__(self) -> float:
        t = self.radicand ** (1 / 3)
        return float(self.const) + float(self.sq_coef) * t * t + float(self.lin_coef) * t


@dataclass(frozen=True)
class BoundReport:
    formula: str
    inputs: dict
    value: object  # Fraction, int, SurdExpr, or CubeRootBound
    floor_value: int
    active_branch: int | None = None

    def as_json(self) -> dict:
        out = {
            "formula": self.formula,
            "inputs": _render(self.inputs),
            "value": _render(self.value),
            "floor_value": self.floor_value,
        }
        if self.active_branch is not None:
            out["active_branch"] = self.active_branch
        return out


@dataclass(frozen=True)
class SweepCertificate:
    check: str
    ranges: dict
    total_cases: int
    failures: tuple = field(default_factory=tuple)

    @property
    def certified(self) -> bool:
        return not self.failures

    def as_json(self) -> dict:
        return {
            "check": self.check,
            "ranges": _render(self.ranges),
            "total_cases": self.total_cases,
            "certified": self.certified,
            "failures": [_render(f) for f in self.failures],
        }


class ReplicationVerdict(enum.Enum):
    BOUND_AND_UNIQUENESS = "bound-and-uniqueness"
    BOUND_HOLDS = "bound-holds"
    BELOW = "below"


class NearExtremalVerdict(enum.Enum):
    CLASSIFIED = "classified"
    BOUND_ONLY = "bound-only"
    OUTSIDE = "outside"


# -- single formulas ---------------------------------------------------------


def multiplicity_cap_bound(k: int, max_mult: int) -> int:
    """Size cap for an intersecting family whose top point multiplicity is max_mult."""
    if k < 2:
        raise DomainError("block size must be at least 2")
    if not 1 <= max_mult <= k:
        raise DomainError(f"top multiplicity must lie in 1..{k}")
    return max_mult * k - k + 1


def _branch_report(formula: str, inputs: dict, branches: list[Fraction]) -> BoundReport:
    value = branches[0]
    active = 1
    for i, cand in enumerate(branches[1:], start=2):
        if cand > value:
            value, active = cand, i
    return BoundReport(formula, inputs, value, math.floor(value), active)


def counting_bound(k: int, r: int, excess: int) -> BoundReport:
    """Family size cap from the two-branch counting argument.

    excess is the number of covered points beyond k(k-1).  The k=2
    denominators are a genuine domain edge, not a removable one, so k < 3 is
    rejected outright.
    """
    if k < 3:
        raise DomainError("counting bound needs block size at least 3")
    k, r, b = Fraction(k), Fraction(r), Fraction(excess)
    branch1 = (
        k * k - k + 1
        - 2 * (r - k) * (k * k - k + 1 - r) / (k * (k - 2))
        + b * (b - 1) / ((k - 1) * (k - 2))
        + 2 * (b - 1) * (k * k - k - r) / ((k - 1) * (k - 2))
    )
    branch2 = (
        k * k - r - (r - 1) / (k - 2)
        + b * (b - 1 - r + 2 * k * (k - 1)) / (k * (k - 2))
    )
    return _branch_report(
        "counting", {"k": int(k), "r": int(r), "excess": int(b)}, [branch1, branch2]
    )


def counting_bound_deficit(k: int, deficit: int, excess: int) -> BoundReport:
    """The counting bound with r eliminated via r = (k-1)^2 - deficit.

    Negative deficits are allowed; they correspond to r above (k-1)^2.
    Agrees with counting_bound(k, (k-1)^2 - deficit, excess) identically.
    """
    if k < 3:
        raise DomainError("counting bound needs block size at least 3")
    k, R, b = Fraction(k), Fraction(deficit), Fraction(excess)
    branch1 = (
        k * k - k + 1
        - 2 * (k * k - 3 * k + 1 - R) * (k + R) / (k * (k - 2))
        + b * (b - 1) / ((k - 1) * (k - 2))
        + 2 * (b - 1) * (k - 1 + R) / ((k - 1) * (k - 2))
    )
    branch2 = (
        k - 1 + R + R / (k - 2)
        + b * (b + k * k + R - 2) / (k * (k - 2))
    )
    return _branch_report(
        "counting-deficit",
        {"k": int(k), "deficit": int(R), "excess": int(b)},
        [branch1, branch2],
    )


def cover_range_submax(k: int, shortfall: int) -> tuple[Rational, Rational]:
    """Covered-point interval when the top multiplicity is k-1.

    shortfall is a' = (k-1)^2 - |family|.  The right endpoint has a pole at
    a' = k-1; the underlying argument only applies below it, so larger values
    are rejected rather than extended.
    """
    if k < 3:
        raise DomainError("cover range needs block size at least 3")
    if not 0 <= shortfall < k - 1:
        raise DomainError(f"shortfall must lie in 0..{k - 2}")
    a = Fraction(shortfall)
    lo = Fraction(k * (k - 1))
    hi = lo + (a * a - a) / (k - 1 - a)
    return lo, hi


def certify_moment_inequality(
    l: int, a: int, b: int, r: int, budget: int = 2_000_000
) -> SweepCertificate:
    """Brute-force the moment inequality over all admissible count vectors.

    Enumerates every nonnegative (n_1..n_l) satisfying the two equality
    constraints (first and second factorial moments fixed by l, a, b, r) and
    checks sum (i-1) n_i <= C(b,2) + (a+2b-2) C(l+1,2) on each.  The
    hypothesis window for a is checked exactly before searching.
    """
    if l < 2:
        raise DomainError("moment certificate needs l at least 2")
    if b < 0:
        raise DomainError("excess must be nonnegative")
    lo1 = Fraction(-l * (r - l - 1) + 1) - Fraction(b * r, l + 1)
    lo2 = Fraction(-b * (b - 1), (l + 1) * l) - 2 * (b - 1)
    hi = (
        Fraction(r * l - l * l + l - 1, l - 1)
        - Fraction(b * (2 * l * l + 2 * l - r + b - 1), l * l - 1)
    )
    if not max(lo1, lo2) <= a <= hi:
        raise DomainError(
            f"a={a} outside the hypothesis window [{max(lo1, lo2)}, {hi}]"
        )
    s1 = (a - 1) * (l + 1) + b * r + l * (l + 1) * (r - l - 1)
    s2 = b * (b - 1) + l * (l + 1) * (a + 2 * b - 2)
    rhs = Fraction(b * (b - 1), 2) + Fraction((a + 2 * b - 2) * l * (l + 1), 2)
    ranges = {"l": l, "a": a, "b": b, "r": r, "sum_i": s1, "sum_ii": s2}
    if s1 < 0 or s2 < 0:
        return SweepCertificate("moments", ranges, 0)

    failures: list[tuple] = []
    cases = 0
    ns = [0] * (l + 1)  # ns[i] is n_i; index 0 unused

    def scan(i: int, rem2: int, used1: int):
        nonlocal cases
        if i == 2:
            if rem2 % 2:
                return
            n2 = rem2 // 2
            n1 = s1 - used1 - 2 * n2
            if n1 < 0:
                return
            cases += 1
            if cases > budget:
                raise BudgetExceeded(
                    f"moment search passed {budget} cases", count=cases
                )
            ns[2], ns[1] = n2, n1
            lhs = sum((j - 1) * ns[j] for j in range(2, l + 1))
            if lhs > rhs:
                failures.append(tuple(ns[1:]))
            return
        w = i * (i - 1)
        top = rem2 // w
        for n in range(top + 1):
            if used1 + i * n > s1:
                break
            ns[i] = n
            scan(i - 1, rem2 - w * n, used1 + i * n)
        ns[i] = 0

    scan(l, s2, 0)
    return SweepCertificate("moments", ranges, cases, tuple(failures))


def replication_threshold(k: int, r: int) -> ReplicationVerdict:
    """Where r sits relative to k^2-k+1, the pencil-optimality threshold."""
    if k < 2:
        raise DomainError("block size must be at least 2")
    pivot = k * k - k + 1
    if r > pivot:
        return ReplicationVerdict.BOUND_AND_UNIQUENESS
    if r == pivot:
        return ReplicationVerdict.BOUND_HOLDS
    return ReplicationVerdict.BELOW


def near_extremal_cutoff(k: int) -> SurdExpr:
    """k^2 - 3k + 2 + (3/4) sqrt(k), the lower edge of the classified window."""
    return SurdExpr(k * k - 3 * k + 2, Fraction(3, 4), k)


def near_extremal_threshold(k: int, r: int) -> NearExtremalVerdict:
    """Classification status of designs with r in [k^2-3k+2+(3/4)sqrt(k), k^2-k].

    The window edge is irrational, so membership is decided by exact surd
    comparison.  (r,k)=(8,4) sits inside the window but only the size bound
    holds there, not the uniqueness statement.
    """
    if k < 4:
        raise DomainError("near-extremal window needs block size at least 4")
    if r > k * k - k:
        return NearExtremalVerdict.OUTSIDE
    if cmp_double_surd(Fraction(r), Fraction(0), 0, Fraction(k * k - 3 * k + 2), Fraction(3, 4), k) < 0:
        return NearExtremalVerdict.OUTSIDE
    if (k, r) == (4, 8):
        return NearExtremalVerdict.BOUND_ONLY
    return NearExtremalVerdict.CLASSIFIED


def pencil_uniqueness_threshold(k: int, v: int) -> bool:
    """True when v >= 1 + k^2 (k-1), past which pencils are the unique maxima."""
    if k < 2:
        raise DomainError("block size must be at least 2")
    return v >= 1 + k * k * (k - 1)


# -- deficit grid sweep ------------------------------------------------------


def deficit_cap(k: int) -> int:
    """floor(k - 1 - (3/4) sqrt(k)), the deficit cap as a closed form."""
    return surd_floor(SurdExpr(k - 1, Fraction(-3, 4), k))


def sweep_deficit_grid(k) -> SweepCertificate:
    """Certify the counting bound stays under the pencil size across the deficit grid.

    For each deficit R up to the cap and each admissible excess b, checks
    counting_bound_deficit(k, R, b) < (k-1)^2 - R strictly.  Also certifies the
    cap is sharp: at R = cap+1 some b must break the inequality.  Pass k="all"
    for the combined certificate over every tabulated k.
    """
    if k == "all":
        failures: list[tuple] = []
        cases = 0
        for kk in sorted(DEFICIT_CAPS):
            cert = sweep_deficit_grid(kk)
            cases += cert.total_cases
            failures.extend(cert.failures)
        return SweepCertificate(
            "deficit-grid", {"k": sorted(DEFICIT_CAPS)}, cases, tuple(failures)
        )
    if k not in DEFICIT_CAPS:
        raise DomainError(f"no tabulated deficit cap for k={k}")
    cap = DEFICIT_CAPS[k]
    if cap != deficit_cap(k):
        raise DomainError(f"tabulated cap for k={k} disagrees with the closed form")
    failures = []
    cases = 0

    def excess_top(R: int) -> int:
        return 0 if R == 0 else (R * (R - 1)) // (k - 1 - R)

    for R in range(cap + 1):
        for b in range(excess_top(R) + 1):
            cases += 1
            value = counting_bound_deficit(k, R, b).value
            if not value < (k - 1) ** 2 - R:
                failures.append(("bound", k, R, b))
    # sharpness: one deficit past the cap, some admissible excess must fail
    R = cap + 1
    broke = False
    for b in range(excess_top(R) + 1):
        cases += 1
        if counting_bound_deficit(k, R, b).value >= (k - 1) ** 2 - R:
            broke = True
            break
    if not broke:
        failures.append(("sharpness", k, R))
    return SweepCertificate(
        "deficit-grid", {"k": k, "deficit_cap": cap}, cases, tuple(failures)
    )


# -- large-k surd sweep ------------------------------------------------------


def discriminant(b: int, k: int) -> int:
    """(k^3 - 3k^2 - 2bk + 6k - 2)^2 - 8k(k-1)(b-1)(b-2)."""
    lead = k ** 3 - 3 * k * k - 2 * b * k + 6 * k - 2
    return lead * lead - 8 * k * (k - 1) * (b - 1) * (b - 2)


def _axis_limit(k: int) -> SurdExpr:
    """C_k = (4/3) k sqrt(k) - 2k - 2 sqrt(k), the top of the admissible c range."""
    return SurdExpr(-2 * k, Fraction(4 * k, 3) - 2, k)


def default_c_sampler(k: int) -> tuple[int, ...]:
    """Extremes plus midpoint of 1..floor(C_k)."""
    top = surd_floor(_axis_limit(k))
    return tuple(sorted({1, top // 2, top}))


def sweep_large_k(k_max: int = 50, c_sampler=None) -> SweepCertificate:
    """Exact surd verification of the two large-k inequalities over k in [14, k_max].

    For each sampled c (within 1..C_k, checked exactly) and b in {0, c}:
      (k^3 - 7k^2 + 10k - 2bk - 2 - sqrt(D(b,k))) / (4(k-1))
          < (1 - c + sqrt((c-1)^2 + 4c(k-1))) / 2
    and, once per k, the b = 0 left side is negative.  A negative discriminant
    is recorded as a failure since the square root leaves the rationals.
    The c grid is a deterministic sample; the continuous range is covered by
    the underlying analytic argument, not by this sweep.
    """
    if k_max < 14:
        raise DomainError("large-k sweep starts at k = 14")
    sampler = c_sampler or default_c_sampler
    failures: list[tuple] = []
    cases = 0
    for k in range(14, k_max + 1):
        denom = 4 * (k - 1)
        limit = _axis_limit(k)
        for c in sampler(k):
            if c < 1 or cmp_surd(SurdExpr.rational(c), limit) > 0:
                failures.append(("c-range", k, c))
                continue
            rhs = SurdExpr(Fraction(1 - c, 2), Fraction(1, 2), (c - 1) ** 2 + 4 * c * (k - 1))
            for b in (0, c):
                cases += 1
                disc = discriminant(b, k)
                if disc < 0:
                    failures.append(("negative-discriminant", k, b))
                    continue
                lead = Fraction(k ** 3 - 7 * k * k + 10 * k - 2 * b * k - 2, denom)
                if not (
                    cmp_double_surd(lead, Fraction(-1, denom), disc, rhs.a, rhs.b, rhs.n) < 0
                ):
                    failures.append(("first", k, c, b))
        cases += 1
        disc0 = discriminant(0, k)
        if disc0 < 0:
            failures.append(("negative-discriminant", k, 0))
        elif not (
            cmp_surd(
                SurdExpr(Fraction(k ** 3 - 7 * k * k + 10 * k - 2, denom), Fraction(-1, denom), disc0),
                SurdExpr.rational(0),
            )
            < 0
        ):
            failures.append(("second", k))
    return SweepCertificate(
        "large-k",
        {"k_min": 14, "k_max": k_max, "b_grid": "extremes", "c_grid": "extremes+midpoint"},
        cases,
        tuple(failures),
    )


def deficit_interval(k: int, c: int) -> tuple[SurdExpr, SurdExpr]:
    """The half-open deficit window I_c; I_0 = [0, sqrt(k-1)).

    Consecutive windows abut exactly: hi(I_c) equals lo(I_{c+1}) as surds.
    """
    if k < 14:
        raise DomainError("deficit windows are set up for k at least 14")
    if c < 0:
        raise DomainError("window index must be nonnegative")
    if c == 0:
        return SurdExpr.rational(0), SurdExpr.sqrt(k - 1)
    lo = SurdExpr(Fraction(1 - c, 2), Fraction(1, 2), (c - 1) ** 2 + 4 * c * (k - 1))
    hi = SurdExpr(Fraction(-c, 2), Fraction(1, 2), c * c + 4 * (c + 1) * (k - 1))
    return lo, hi


def locate_deficit_interval(k: int, deficit: int) -> int | None:
    """The unique window index whose interval contains the deficit, else None."""
    if deficit < 0:
        raise DomainError("deficit must be nonnegative")
    if deficit * deficit < k - 1:
        return 0
    top = surd_floor(_axis_limit(k))
    probe = SurdExpr.rational(deficit)
    for c in range(1, top + 1):
        lo, hi = deficit_interval(k, c)
        if cmp_surd(probe, hi) < 0:
            if cmp_surd(lo, probe) > 0:
                raise DomainError(
                    f"windows are not contiguous at k={k}, c={c}"
                )
            return c
    return None


# -- unital bounds -----------------------------------------------------------


def unital_counting_bound(q: int, excess: int) -> BoundReport:
    """Counting bound specialized to unital parameters (k = q+1, r = q^2)."""
    if q < 2:
        raise DomainError("unital order must be at least 2")
    qf, b = Fraction(q), Fraction(excess)
    branch1 = qf * qf - qf + 1 + b * (b - 1) / (qf * (qf - 1)) + 2 * b / (qf - 1)
    branch2 = qf + b * qf * (qf + 2) / (qf * qf - 1) + b * (b - 1) / (qf * qf - 1)
    return _branch_report(
        "unital-counting", {"q": q, "excess": int(b)}, [branch1, branch2]
    )


def unital_second_max_bound(q: int) -> BoundReport:
    """Size cap for unital families other than pencils.

    q^2 - q + 1 + q^(2/3) - (2/3) q^(1/3) for q >= 5; the small orders have
    sharper tabulated values.  The floor is certified by exact sign tests of
    the cubic-root expression, with integer root brackets reported alongside.
    """
    if q < 3:
        raise DomainError("second-largest unital bound starts at q = 3")
    if q == 3:
        return BoundReport("unital-second", {"q": 3}, 8, 8)
    if q == 4:
        return BoundReport("unital-second", {"q": 4}, 13, 13)
    expr = CubeRootBound(q, Fraction(q * q - q + 1), Fraction(1), Fraction(-2, 3))
    inputs = {
        "q": q,
        "cbrt_bracket_q2": icbrt_floor(q * q).floor_root,
        "cbrt_bracket_q": icbrt_floor(q).floor_root,
    }
    return BoundReport("unital-second", inputs, expr, expr.exact_floor())
