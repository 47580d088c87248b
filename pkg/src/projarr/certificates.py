"""Certificates turning an incidence inequality into a region lower bound.

For an arrangement with maximum multiplicity at most ``m``, the identities

    f - 1    = sum_k (k - 1) t_k
    n(n - 1) = sum_k k(k - 1) t_k

together with an inequality ``sum_k alpha_k t_k >= alpha_0`` give

    f >= c1 n(n - 1) + c2 alpha_0 + 1

whenever ``c1 k(k - 1) + c2 alpha_k <= k - 1`` for every ``2 <= k <= m``
(multiply by ``t_k >= 0``, sum, substitute).  A :class:`Certificate` is a
pair ``(c1, c2)`` together with the slack of each of those constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import format_rational
from .errors import (
    ApplicabilityViolation,
    EmptyFeasibleRegion,
    IdentityViolation,
    Infeasible,
    UnboundedObjective,
)
from .inequalities import BOJANOWSKI, InequalitySpec

OBJECTIVES = ("lexicographic", "at_n")


@dataclass(frozen=True)
class Certificate:
    c1: Fraction
    c2: Fraction
    m: int
    ineq_name: str
    slacks: dict[int, Fraction]

    @property
    def uses_inequality(self) -> bool:
        """False when ``c2 == 0``: the bound then rests on the pair identity alone."""
        return self.c2 != 0

    def tight(self) -> list[int]:
        return [k for k, s in self.slacks.items() if s == 0]

    def same_pair(self, other: Certificate) -> bool:
        return (self.c1, self.c2) == (other.c1, other.c2)

    def to_dict(self, spec: InequalitySpec | None = None) -> dict:
        return {
            "ineq": self.ineq_name,
            "m": self.m,
            "c1": format_rational(self.c1),
            "c2": format_rational(self.c2),
            "slacks": {str(k): format_rational(s) for k, s in self.slacks.items()},
            "bound": bound_text(spec) if spec is not None else bound_text(),
        }


@dataclass(frozen=True)
class BoundExpression:
    """``quad * n(n-1) + c2 * alpha0(n) + 1`` for a fixed certificate."""

    quad: Fraction
    c2: Fraction
    spec: InequalitySpec

    def lin(self, n: int) -> Fraction:
        return self.c2 * Fraction(self.spec.alpha0(n))

    def __call__(self, n: int) -> Fraction:
        return self.quad * n * (n - 1) + self.lin(n) + 1

    def __str__(self):
        return bound_text(self.spec)


def bound_text(spec: InequalitySpec | None = None) -> str:
    alpha0 = spec.alpha0_text if spec is not None else "alpha0"
    return f"c1*n*(n-1) + c2*{alpha0} + 1"


def constraint_slack(c1, c2, spec: InequalitySpec, k: int) -> Fraction:
    return (k - 1) - c1 * k * (k - 1) - c2 * Fraction(spec.alpha(k))


def check_certificate(c1, c2, spec: InequalitySpec, m: int) -> Certificate:
    c1, c2 = Fraction(c1), Fraction(c2)
    if m < 2:
        raise ValueError("multiplicity cap m must be at least 2")
    if c1 <= 0:
        raise ValueError("c1 must be strictly positive")
    if c2 < 0:
        raise ValueError("c2 must be non-negative")
    slacks = {}
    for k in range(2, m + 1):
        s = constraint_slack(c1, c2, spec, k)
        if s < 0:
            raise Infeasible(k, s)
        slacks[k] = s
    return Certificate(c1=c1, c2=c2, m=m, ineq_name=spec.name, slacks=slacks)


def theorem1_pair(m: int) -> tuple[Fraction, Fraction]:
    return Fraction(m + 2, 6 * m), Fraction(2 * (m - 1), 3 * m)


@lru_cache(maxsize=None)
def theorem1_certificate(m: int) -> Certificate:
    """The pair ``((m+2)/(6m), 2(m-1)/(3m))`` checked against Bojanowski's inequality.

    For ``5 <= k <= m`` the constraint excess factors as
    ``(k-2)(k-m)/(2m)``, which is re-verified here exactly.
    """
    c1, c2 = theorem1_pair(m)
    cert = check_certificate(c1, c2, BOJANOWSKI, m)
    for k in range(5, m + 1):
        excess = c1 * k * (k - 1) + c2 * (k - Fraction(k * k, 4)) - (k - 1)
        if excess != Fraction((k - 2) * (k - m), 2 * m):
            raise IdentityViolation(f"slack identity fails at k={k}, m={m}")
    return cert


def bound_expression(cert: Certificate, spec: InequalitySpec) -> BoundExpression:
    return BoundExpression(quad=cert.c1, c2=cert.c2, spec=spec)


def derive_bound(cert: Certificate, spec: InequalitySpec, n: int) -> Fraction:
    if cert.ineq_name != spec.name:
        raise ValueError(f"certificate is for {cert.ineq_name!r}, not {spec.name!r}")
    if not spec.assertable:
        raise ApplicabilityViolation(f"{spec.name} is not asserted ({spec.note or 'report-only'})")
    if not spec.regime(n, cert.m):
        raise ApplicabilityViolation(
            f"{spec.name} does not apply to all arrangements with n={n}, m<={cert.m} "
            f"(guard: {' and '.join(spec.applicability)})"
        )
    return cert.c1 * n * (n - 1) + cert.c2 * Fraction(spec.alpha0(n)) + 1


def theorem1_formula(n: int, m: int) -> Fraction:
    return Fraction((m + 2) * n * n + (3 * m - 6) * n, 6 * m) + 1


def theorem1_bound(n: int, m: int) -> Fraction:
    if m < 2:
        raise ValueError("m must be at least 2")
    if 3 * m > 2 * n:
        raise ApplicabilityViolation(f"m={m} exceeds 2n/3 for n={n}")
    value = theorem1_formula(n, m)
    if value != derive_bound(theorem1_certificate(m), BOJANOWSKI, n):
        raise IdentityViolation(f"closed form and certificate bound differ at n={n}, m={m}")
    if value < Fraction(n * n, 6):
        raise IdentityViolation(f"bound below n^2/6 at n={n}, m={m}")
    return value


# -- exact two-variable LP ---------------------------------------------------

def _constraints(spec: InequalitySpec, m: int):
    """Rows ``(a, b, r)`` meaning ``a*c1 + b*c2 <= r``, axes included."""
    rows = [(Fraction(k * (k - 1)), Fraction(spec.alpha(k)), Fraction(k - 1)) for k in range(2, m + 1)]
    rows.append((Fraction(-1), Fraction(0), Fraction(0)))
    rows.append((Fraction(0), Fraction(-1), Fraction(0)))
    return rows


def _feasible(point, rows) -> bool:
    x, y = point
    return all(a * x + b * y <= r for a, b, r in rows)


def feasible_vertices(spec: InequalitySpec, m: int) -> list[tuple[Fraction, Fraction]]:
    """All vertices of ``{c1, c2 >= 0, constraints for 2 <= k <= m}``, sorted."""
    rows = _constraints(spec, m)
    vertices = set()
    for (a1, b1, r1), (a2, b2, r2) in combinations(rows, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        point = ((r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det)
        if _feasible(point, rows):
            vertices.add(point)
    return sorted(vertices)


def _recession_rays(rows):
    """Extreme rays of the recession cone ``{d >= 0 : a.d <= 0}``."""
    candidates = {(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))}
    for a, b, _ in rows:
        for d in ((b, -a), (-b, a)):
            if d != (0, 0) and d[0] >= 0 and d[1] >= 0:
                candidates.add(d)
    return [d for d in candidates if all(a * d[0] + b * d[1] <= 0 for a, b, _ in rows)]


def optimize_certificate(spec: InequalitySpec, m: int, objective: str = "lexicographic",
                         n: int | None = None) -> Certificate:
    """Best feasible ``(c1, c2)`` by exact vertex enumeration.

    ``objective="lexicographic"`` maximizes ``c1`` then ``c2``.
    ``objective="at_n"`` maximizes the bound at a fixed ``n``, i.e.
    ``c1 n(n-1) + c2 alpha0(n)``; ties go to the larger ``c2``, then the
    larger ``c1``.  Vertices with ``c1 = 0`` never qualify.
    """
    objective = objective.replace("-", "_")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if m < 2:
        raise ValueError("multiplicity cap m must be at least 2")
    if objective == "at_n" and (n is None or n < 2):
        raise ValueError("objective at_n needs n >= 2")

    rows = _constraints(spec, m)
    vertices = feasible_vertices(spec, m)
    if not vertices:
        raise EmptyFeasibleRegion(f"constraints for {spec.name}, m={m} have no common solution")
    rays = _recession_rays(rows)
    if objective == "lexicographic":
        if any(d[0] > 0 for d in rays):
            raise UnboundedObjective("c1 is unbounded")
    else:
        w = (Fraction(n * (n - 1)), Fraction(spec.alpha0(n)))
        if any(w[0] * d[0] + w[1] * d[1] > 0 for d in rays):
            raise UnboundedObjective(f"bound is unbounded at n={n}")

    vertices = [v for v in vertices if v[0] > 0]
    if not vertices:
        raise EmptyFeasibleRegion(f"no certificate with c1 > 0 for {spec.name}, m={m}")
    if objective == "lexicographic":
        best_c1 = max(v[0] for v in vertices)
        if any(d[0] == 0 and d[1] > 0 for d in rays):
            raise UnboundedObjective("c2 is unbounded at the optimal c1")
        best = max(v for v in vertices if v[0] == best_c1)
    else:
        best = max(vertices, key=lambda v: (w[0] * v[0] + w[1] * v[1], v[1], v[0]))
    return check_certificate(best[0], best[1], spec, m)


def objective_value(cert: Certificate, spec: InequalitySpec, n: int) -> Fraction:
    return cert.c1 * n * (n - 1) + cert.c2 * Fraction(spec.alpha0(n))
