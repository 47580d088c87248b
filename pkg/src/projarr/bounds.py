"""Closed-form lower bounds on the region count and their comparison.

Every bound is a function of ``n`` (lines) and ``m`` (maximum multiplicity)
with a guard under which it is a theorem.  Values are exact rationals and
are never rounded up, even though ``f`` itself is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Callable, Iterable, Sequence

from .certificates import theorem1_bound, theorem1_formula
from .core import format_rational
from .errors import BoundViolation, GuardViolation
from .profile import MultiplicityProfile

THEOREM1 = "theorem1"


@dataclass(frozen=True)
class BoundResult:
    name: str
    applicable: bool
    value: Fraction | None
    guard: str
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": format_rational(self.value) if self.value is not None else None,
            "applicable": self.applicable,
            "guard": self.guard,
        }


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    m: int
    results: list[BoundResult]
    best: list[str]

    def get(self, name: str) -> BoundResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def value(self, name: str) -> Fraction | None:
        return self.get(name).value

    def applicable(self) -> list[BoundResult]:
        return [r for r in self.results if r.applicable]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "bounds": [r.to_dict() for r in self.results],
            "best": list(self.best),
        }


def shnurnikov_r_bound(n: int, m: int) -> tuple[Fraction, int] | None:
    """Best ``(r+1)(n-r)`` over integers ``r`` with ``m <= n-r`` and ``n >= (r^2+r)/2 + 3``.

    Negative ``r`` never beats ``r = 0`` and has the same ``n >= 3`` guard,
    so the search starts at zero.
    """
    best = None
    r = 0
    while r <= n - m and 2 * n >= r * r + r + 6:
        value = Fraction((r + 1) * (n - r))
        if best is None or value > best[0]:
            best = (value, r)
        r += 1
    return best


def shnurnikov_quadratic(n: int, m: int) -> Fraction:
    return Fraction((3 * m - 10) * n * n + (m * m - 6 * m + 12) * n, m * m + 3 * m - 18) + 1


def _shnurnikov_r_value(n: int, m: int) -> Fraction:
    return shnurnikov_r_bound(n, m)[0]


# (name, guard text, guard(n, m), value(n, m))
_CATALOG: list[tuple[str, str, Callable[[int, int], bool], Callable[[int, int], Fraction]]] = [
    ("grunbaum_2n", "m < n", lambda n, m: m < n, lambda n, m: Fraction(2 * n - 2)),
    ("grunbaum_3n", "m <= n - 2", lambda n, m: m <= n - 2, lambda n, m: Fraction(3 * n - 6)),
    ("arnold_m", "always", lambda n, m: True, lambda n, m: Fraction(m * (n + 1 - m))),
    ("arnold_pairs", "m > 2", lambda n, m: m > 2, lambda n, m: Fraction(n * (n - 1), 2 * (m - 1))),
    ("arnold_purdy", "always", lambda n, m: True, lambda n, m: Fraction((m + 1) * (n - m))),
    ("shnurnikov_r", "m <= n - r and n >= (r^2 + r)/2 + 3 for some r",
     lambda n, m: shnurnikov_r_bound(n, m) is not None, _shnurnikov_r_value),
    # a pencil (m = n) has f = n, below 2(n^2 + n)/(n + 3); the bound presumes m < n
    ("shnurnikov_ratio", "m < n", lambda n, m: m < n,
     lambda n, m: Fraction(2 * (n * n - n + 2 * m), m + 3)),
    ("shnurnikov_quadratic", "5 <= m < n - 2", lambda n, m: 5 <= m < n - 2, shnurnikov_quadratic),
    (THEOREM1, "m <= 2n/3", lambda n, m: 3 * m <= 2 * n, theorem1_bound),
]

BOUND_NAMES = tuple(entry[0] for entry in _CATALOG)


def all_bounds(n: int, m: int) -> ComparisonReport:
    if n < 2 or not 2 <= m <= n:
        raise ValueError(f"need n >= 2 and 2 <= m <= n, got n={n}, m={m}")
    results = []
    for name, guard, ok, value in _CATALOG:
        if not ok(n, m):
            results.append(BoundResult(name, False, None, guard))
        elif name == "shnurnikov_r":
            v, r = shnurnikov_r_bound(n, m)
            results.append(BoundResult(name, True, v, guard, note=f"r={r}"))
        else:
            results.append(BoundResult(name, True, value(n, m), guard))
    top = max(r.value for r in results if r.applicable)
    best = [r.name for r in results if r.applicable and r.value == top]
    return ComparisonReport(n=n, m=m, results=results, best=best)


# -- crossover between Theorem 1 and (m+1)(n-m) along m = n/p ----------------

@dataclass(frozen=True)
class CrossoverRow:
    p: Fraction
    m: int
    theorem1: Fraction
    arnold_purdy: Fraction
    theorem1_applicable: bool

    @property
    def dominant(self) -> str:
        if self.theorem1 > self.arnold_purdy:
            return THEOREM1
        if self.theorem1 < self.arnold_purdy:
            return "arnold_purdy"
        return "tie"

    def to_dict(self) -> dict:
        return {
            "p": format_rational(self.p),
            "m": self.m,
            "theorem1": format_rational(self.theorem1),
            "arnold_purdy": format_rational(self.arnold_purdy),
            "theorem1_applicable": self.theorem1_applicable,
            "dominant": self.dominant,
        }


def round_half_up(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def crossover_scan(p_values: Iterable, n: int, strict: bool = False) -> list[CrossoverRow]:
    """Compare the Theorem 1 expression with ``(m+1)(n-m)`` at ``m = round(n/p)``.

    The comparison is between the two closed-form expressions.  Below
    ``p = 3/2`` the multiplicity exceeds ``2n/3`` and Theorem 1 itself no
    longer applies; such rows are flagged, or rejected when ``strict``.
    """
    rows = []
    for p in p_values:
        p = Fraction(p)
        if p <= 0:
            raise GuardViolation(f"p must be positive, got {p}")
        m = round_half_up(Fraction(n) / p)
        if not 2 <= m <= n:
            raise GuardViolation(f"m = round({n}/{p}) = {m} is outside [2, n]")
        applicable = 3 * m <= 2 * n
        if strict and not applicable:
            raise GuardViolation(f"Theorem 1 needs m <= 2n/3; m={m}, n={n}")
        rows.append(CrossoverRow(
            p=p,
            m=m,
            theorem1=theorem1_formula(n, m),
            arnold_purdy=Fraction((m + 1) * (n - m)),
            theorem1_applicable=applicable,
        ))
    return rows


DEFAULT_BRACKETS = (
    (Fraction(5, 4), Fraction(32, 25)),  # around 3 - sqrt(3) ~ 1.268
    (Fraction(47, 10), Fraction(19, 4)),  # around 3 + sqrt(3) ~ 4.732
)


@dataclass(frozen=True)
class BracketCheck:
    low: CrossoverRow
    high: CrossoverRow
    expected: tuple[str, str]

    @property
    def straddles_root(self) -> bool:
        return self.expected[0] != self.expected[1]

    @property
    def passed(self) -> bool:
        return self.straddles_root and (self.low.dominant, self.high.dominant) == self.expected

    def to_dict(self) -> dict:
        return {
            "low": self.low.to_dict(),
            "high": self.high.to_dict(),
            "expected": list(self.expected),
            "passed": self.passed,
        }


def crossover_brackets(n: int = 6000, brackets=DEFAULT_BRACKETS) -> list[BracketCheck]:
    """Check that dominance flips across each bracket of ``3 -+ sqrt(3)``.

    Theorem 1 is weaker than ``(m+1)(n-m)`` exactly for ``p`` strictly
    between the two roots of ``p^2 - 6p + 6``, so the expected pattern is
    (theorem1, arnold_purdy) across the lower root and the reverse across
    the upper one.
    """
    checks = []
    for low, high in brackets:
        lo_row, hi_row = crossover_scan([low, high], n)
        inside_low = _inside_interval(Fraction(low))
        inside_high = _inside_interval(Fraction(high))
        expected = (
            "arnold_purdy" if inside_low else THEOREM1,
            "arnold_purdy" if inside_high else THEOREM1,
        )
        checks.append(BracketCheck(lo_row, hi_row, expected))
    return checks


def _inside_interval(p: Fraction) -> bool:
    # p in (3 - sqrt 3, 3 + sqrt 3)  <=>  p^2 - 6p + 6 < 0
    return p * p - 6 * p + 6 < 0


# -- dominance and equality scans ---------------------------------------------

@dataclass(frozen=True)
class DominanceRow:
    n: int
    m: int
    theorem1: Fraction
    runner_up: str
    runner_up_value: Fraction

    @property
    def strict(self) -> bool:
        return self.theorem1 > self.runner_up_value


@dataclass
class DominanceReport:
    rows: list[DominanceRow] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[DominanceRow]:
        return [r for r in self.rows if not r.strict]

    @property
    def passed(self) -> bool:
        return bool(self.rows) and not self.counterexamples


DEFAULT_DOMINANCE_N = (50, 100, 500)
DEFAULT_DOMINANCE_M = (7, 8, 10, lambda n: n // 5)


def dominance_region_check(n_values: Sequence[int] = DEFAULT_DOMINANCE_N,
                           m_values: Sequence = DEFAULT_DOMINANCE_M) -> DominanceReport:
    """Theorem 1 against every other applicable bound for ``7 <= m <= n/5``.

    Entries of ``m_values`` may be integers or callables of ``n``.
    """
    report = DominanceReport()
    for n in n_values:
        ms = sorted({m(n) if callable(m) else m for m in m_values})
        for m in ms:
            if not (m >= 7 and 5 * m <= n):
                raise GuardViolation(f"(n={n}, m={m}) is outside 7 <= m <= n/5")
            cmp = all_bounds(n, m)
            t1 = cmp.value(THEOREM1)
            others = [r for r in cmp.applicable() if r.name != THEOREM1]
            runner = max(others, key=lambda r: r.value)
            report.rows.append(DominanceRow(n, m, t1, runner.name, runner.value))
    return report


def m6_equality(n_values: Iterable[int]) -> list[tuple[int, Fraction, Fraction]]:
    """``(n, theorem1, shnurnikov_quadratic)`` at ``m = 6``."""
    rows = []
    for n in n_values:
        if n < 9:
            raise GuardViolation(f"m=6 comparison needs n >= 9, got {n}")
        rows.append((n, theorem1_bound(n, 6), shnurnikov_quadratic(n, 6)))
    return rows


def small_m_comparison(n_values: Iterable[int], m_values: Iterable[int] = (2, 3, 4, 5)):
    """Theorem 1 against ``2(n^2 - n + 2m)/(m + 3)`` for small ``m``; data only."""
    rows = []
    for n in n_values:
        for m in m_values:
            if 3 * m > 2 * n:
                continue
            cmp = all_bounds(n, m)
            rows.append((n, m, cmp.value(THEOREM1), cmp.value("shnurnikov_ratio")))
    return rows


# -- measured profiles against predicted bounds --------------------------------

@dataclass(frozen=True)
class ProfileBoundsReport:
    n: int
    m: int
    f: int
    gaps: dict[str, Fraction]
    inapplicable: list[str]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "f": self.f,
            "gaps": {k: format_rational(v) for k, v in self.gaps.items()},
            "inapplicable": list(self.inapplicable),
        }


def profile_vs_bounds(profile: MultiplicityProfile) -> ProfileBoundsReport:
    cmp = all_bounds(profile.n, profile.m)
    gaps = {}
    for r in cmp.results:
        if not r.applicable:
            continue
        gap = profile.f - r.value
        if gap < 0:
            raise BoundViolation(r.name, r.value, profile.f)
        gaps[r.name] = gap
    return ProfileBoundsReport(
        n=profile.n,
        m=profile.m,
        f=profile.f,
        gaps=gaps,
        inapplicable=[r.name for r in cmp.results if not r.applicable],
    )
