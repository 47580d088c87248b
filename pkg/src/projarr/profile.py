"""Multiplicity profiles and region counts of line arrangements."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .core import Arrangement, ProjPoint, intersect
from .errors import IdentityViolation


@dataclass(frozen=True)
class MultiplicityProfile:
    """Sparse multiplicity counts ``t[k]`` of an arrangement of ``n`` lines.

    ``t`` maps a multiplicity ``k >= 2`` to the number of points lying on
    exactly ``k`` lines; absent keys mean zero.  ``m`` is the largest
    multiplicity and ``f`` the number of regions of the projective plane.
    """

    n: int
    t: Mapping[int, int]
    m: int
    f: int
    total_points: int

    @classmethod
    def from_counts(cls, n: int, t: Mapping[int, int], check: bool = True) -> MultiplicityProfile:
        t = {int(k): int(v) for k, v in sorted(t.items()) if v}
        if any(k < 2 for k in t) or any(v < 0 for v in t.values()):
            raise ValueError(f"invalid multiplicity counts {t}")
        if check:
            pairs = sum(k * (k - 1) * v for k, v in t.items())
            if pairs != n * (n - 1):
                raise IdentityViolation(
                    f"pair identity failed: sum k(k-1)t_k = {pairs} != n(n-1) = {n * (n - 1)}"
                )
        return cls(
            n=n,
            t=t,
            m=max(t, default=0),
            f=1 + sum((k - 1) * v for k, v in t.items()),
            total_points=sum(t.values()),
        )

    def count(self, k: int) -> int:
        return self.t.get(k, 0)

    def pair_sum(self) -> int:
        return sum(k * (k - 1) * v for k, v in self.t.items())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "t": {str(k): v for k, v in self.t.items()},
            "f": self.f,
            "points": self.total_points,
        }


def point_incidences(arr: Arrangement) -> dict[ProjPoint, frozenset[int]]:
    """Map every crossing point to the indices of the lines through it."""
    incidences: dict[ProjPoint, set[int]] = {}
    for i, j in combinations(range(arr.n), 2):
        p = intersect(arr.lines[i], arr.lines[j])
        bucket = incidences.setdefault(p, set())
        bucket.add(i)
        bucket.add(j)
    return {p: frozenset(s) for p, s in incidences.items()}


def compute_profile(arr: Arrangement) -> MultiplicityProfile:
    if arr.n < 2:
        raise ValueError("profile requires at least two lines")
    t: dict[int, int] = {}
    for lines_through in point_incidences(arr).values():
        k = len(lines_through)
        t[k] = t.get(k, 0) + 1
    return MultiplicityProfile.from_counts(arr.n, t, check=True)


def region_count_oracle(arr: Arrangement) -> int:
    """Count regions by inserting lines one at a time.

    Each new line is cut by the earlier lines into as many arcs as there are
    distinct crossing points on it, and each arc splits one region in two.
    """
    f = 1
    for i in range(1, arr.n):
        crossings = {intersect(arr.lines[i], arr.lines[j]) for j in range(i)}
        f += len(crossings)
    return f


def is_pencil(profile: MultiplicityProfile) -> bool:
    return dict(profile.t) == {profile.n: 1}
