"""Incidence inequalities of the shape ``sum_k alpha_k t_k >= alpha_0``.

Each inequality carries a guard under which it is a theorem about real
line arrangements.  Guards are named and combine by conjunction; every
guard has two readings:

* a predicate on a concrete profile (``applicable``), used when evaluating;
* a regime on ``(n, m)`` (``regime``), true when *every* arrangement of
  ``n`` lines with maximum multiplicity at most ``m`` passes the predicate.
  Certificates use the regime to decide whether a derived region bound
  applies.

Bojanowski's inequality is stored in the rearranged form
``t2 + 3/4 t3 + sum_{k>=5} (k - k^2/4) t_k >= n``; flipping the sign of the
tail gives the more familiar display with ``(k^2/4 - k) t_k`` on the right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Mapping

from .core import format_rational, parse_rational
from .errors import ParseError
from .profile import MultiplicityProfile, is_pencil


def _top_two_zero(p: MultiplicityProfile) -> bool:
    return p.count(p.n - 1) == 0 and p.count(p.n - 2) == 0


# name -> (profile predicate, (n, m) regime)
GUARDS: dict[str, tuple[Callable[[MultiplicityProfile], bool], Callable[[int, int], bool]]] = {
    "always": (lambda p: True, lambda n, m: True),
    "not_pencil": (lambda p: not is_pencil(p), lambda n, m: m < n),
    "n_ge_8": (lambda p: p.n >= 8, lambda n, m: n >= 8),
    # multiplicities n-1 and n-2 are impossible once m <= n-3
    "t_top_two_zero": (_top_two_zero, lambda n, m: m <= n - 3),
    "m_le_two_thirds_n": (lambda p: 3 * p.m <= 2 * p.n, lambda n, m: 3 * m <= 2 * n),
}


@dataclass(frozen=True)
class InequalitySpec:
    name: str
    alpha0: Callable[[int], Fraction]
    alpha: Callable[[int], Fraction]
    applicability: tuple[str, ...] = ("always",)
    assertable: bool = True
    alpha0_text: str = "alpha0(n)"
    note: str = ""
    source: dict | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        unknown = [g for g in self.applicability if g not in GUARDS]
        if unknown:
            raise ValueError(f"unknown applicability guard(s): {unknown}")

    def applicable(self, profile: MultiplicityProfile) -> bool:
        return all(GUARDS[g][0](profile) for g in self.applicability)

    def regime(self, n: int, m: int) -> bool:
        return all(GUARDS[g][1](n, m) for g in self.applicability)

    def lhs(self, t: Mapping[int, int]) -> Fraction:
        return sum((self.alpha(k) * v for k, v in t.items()), Fraction(0))


@dataclass(frozen=True)
class InequalityReport:
    name: str
    applicable: bool
    lhs: Fraction
    rhs: Fraction
    slack: Fraction
    satisfied: bool
    assertable: bool = True
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "applicable": self.applicable,
            "assertable": self.assertable,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "slack": format_rational(self.slack),
            "satisfied": self.satisfied,
            "note": self.note,
        }


def evaluate(spec: InequalitySpec, profile: MultiplicityProfile) -> InequalityReport:
    lhs = spec.lhs(profile.t)
    rhs = Fraction(spec.alpha0(profile.n))
    slack = lhs - rhs
    return InequalityReport(
        name=spec.name,
        applicable=spec.applicable(profile),
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        satisfied=slack >= 0,
        assertable=spec.assertable,
        note=spec.note,
    )


# -- JSON form ---------------------------------------------------------------

def spec_from_dict(data: Mapping) -> InequalitySpec:
    """Build a spec from the custom-inequality JSON object.

    ``alpha0`` is ``{"const": r}`` or ``{"coeff_n": r}``; ``alpha`` lists
    explicit ``{"k", "v"}`` pairs; the optional ``alpha_tail`` polynomial
    (ascending coefficients) supplies ``alpha_k`` for ``k >= from_k`` where
    no explicit pair is given.  Every other ``alpha_k`` is zero.
    """
    try:
        name = data["name"]
        a0 = data["alpha0"]
        if not isinstance(name, str) or not isinstance(a0, Mapping) or len(a0) != 1:
            raise ParseError("'name' must be text and 'alpha0' a one-key object")
        if "const" in a0:
            const = parse_rational(a0["const"])
            alpha0 = lambda n, c=const: c
            alpha0_text = format_rational(const)
        elif "coeff_n" in a0:
            coeff = parse_rational(a0["coeff_n"])
            alpha0 = lambda n, c=coeff: c * n
            alpha0_text = "n" if coeff == 1 else f"({format_rational(coeff)})*n"
        else:
            raise ParseError(f"unsupported alpha0 form {dict(a0)!r}")

        explicit: dict[int, Fraction] = {}
        for entry in data.get("alpha", []):
            k = entry["k"]
            if not isinstance(k, int) or isinstance(k, bool) or k < 2:
                raise ParseError(f"alpha index must be an integer >= 2, got {k!r}")
            if k in explicit:
                raise ParseError(f"alpha_{k} given twice")
            explicit[k] = parse_rational(entry["v"])

        tail = data.get("alpha_tail")
        if tail is not None:
            poly = tuple(parse_rational(c) for c in tail["poly_in_k"])
            from_k = tail["from_k"]
            if not isinstance(from_k, int) or from_k < 2:
                raise ParseError("alpha_tail.from_k must be an integer >= 2")
        else:
            poly, from_k = (), None

        def alpha(k, explicit=explicit, poly=poly, from_k=from_k):
            if k in explicit:
                return explicit[k]
            if from_k is not None and k >= from_k:
                return sum((c * k**i for i, c in enumerate(poly)), Fraction(0))
            return Fraction(0)

        guards = data.get("applicability", "always")
        guards = (guards,) if isinstance(guards, str) else tuple(guards)
        assertable = bool(data.get("assertable", True))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed inequality spec: {exc}") from exc
    try:
        return InequalitySpec(
            name=name,
            alpha0=alpha0,
            alpha=alpha,
            applicability=guards,
            assertable=assertable,
            alpha0_text=alpha0_text,
            note=data.get("note", ""),
            source=json.loads(json.dumps(dict(data))),
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def spec_to_dict(spec: InequalitySpec) -> dict:
    if spec.source is None:
        raise ValueError(f"inequality {spec.name!r} has no JSON form")
    return json.loads(json.dumps(spec.source))


def load_spec(path) -> InequalitySpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("inequality JSON must be an object")
    return spec_from_dict(data)


def dump_spec(spec: InequalitySpec, path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec)) + "\n", encoding="utf-8")


# -- builtins ----------------------------------------------------------------

MELCHIOR = spec_from_dict({
    "name": "melchior",
    "alpha0": {"const": "3"},
    "alpha": [{"k": 2, "v": "1"}, {"k": 3, "v": "0"}],
    "alpha_tail": {"poly_in_k": ["3", "-1"], "from_k": 4},
    "applicability": "not_pencil",
})

# The pencil is excluded for the same reason as for Melchior: it has t2 = 0.
CSIMA_SAWYER = spec_from_dict({
    "name": "csima_sawyer",
    "alpha0": {"coeff_n": "6/13"},
    "alpha": [{"k": 2, "v": "1"}],
    "applicability": ["n_ge_8", "not_pencil"],
})

HIRZEBRUCH = spec_from_dict({
    "name": "hirzebruch",
    "alpha0": {"coeff_n": "1"},
    "alpha": [{"k": 2, "v": "1"}, {"k": 3, "v": "3/4"}, {"k": 4, "v": "0"}],
    "alpha_tail": {"poly_in_k": ["9", "-2"], "from_k": 5},
    "applicability": ["t_top_two_zero", "not_pencil"],
})

BOJANOWSKI = spec_from_dict({
    "name": "bojanowski",
    "alpha0": {"coeff_n": "1"},
    "alpha": [{"k": 2, "v": "1"}, {"k": 3, "v": "3/4"}, {"k": 4, "v": "0"}],
    "alpha_tail": {"poly_in_k": ["0", "1", "-1/4"], "from_k": 5},
    "applicability": "m_le_two_thirds_n",
})


def _green_tao_alpha0(n: int) -> Fraction:
    return Fraction(n, 2) if n % 2 == 0 else Fraction(3 * (n // 4))


GREEN_TAO = InequalitySpec(
    name="green_tao",
    alpha0=_green_tao_alpha0,
    alpha=lambda k: Fraction(1) if k == 2 else Fraction(0),
    applicability=("not_pencil",),
    assertable=False,
    alpha0_text="(n/2 if n even else 3*floor(n/4))",
    note="asymptotic, not asserted",
)

BUILTINS = (MELCHIOR, CSIMA_SAWYER, HIRZEBRUCH, BOJANOWSKI, GREEN_TAO)


def builtin_inequalities() -> list[InequalitySpec]:
    return list(BUILTINS)


def get_builtin(name: str) -> InequalitySpec:
    key = name.lower().replace("-", "_")
    for spec in BUILTINS:
        if spec.name == key:
            return spec
    raise KeyError(name)


def check_all(profile: MultiplicityProfile) -> list[InequalityReport]:
    return [evaluate(spec, profile) for spec in BUILTINS]
