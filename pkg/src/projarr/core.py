"""Exact homogeneous-coordinate primitives for the real projective plane.

Points and lines are both stored as canonical integer triples: coprime
entries with the first nonzero entry positive.  Two triples describe the
same projective object iff their canonical forms are equal, so equality
and hashing need no tolerance.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateLines, IdenticalLines, ParseError, SingularMatrix, ZeroTriple

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a reduced Fraction.

    Ints are accepted as-is; floats and decimal strings are rejected so no
    inexact value can enter the computation.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ParseError(f"not a rational: {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value) -> str:
    return str(Fraction(value))


def canonical_triple(raw: Sequence) -> tuple[int, int, int]:
    """Scale a homogeneous triple to coprime integers, leading entry positive."""
    if len(raw) != 3:
        raise ValueError(f"expected a triple, got {len(raw)} entries")
    fracs = [Fraction(v) for v in raw]
    if all(v == 0 for v in fracs):
        raise ZeroTriple("all homogeneous coordinates are zero")
    den = lcm(*(v.denominator for v in fracs))
    ints = [int(v * den) for v in fracs]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints[0], ints[1], ints[2]


class _Homogeneous:
    __slots__ = ("coords",)

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction)):
            coords = tuple(coords[0])
        object.__setattr__(self, "coords", canonical_triple(coords))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def __lt__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.coords < other.coords

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        a, b, c = self.coords
        return f"{type(self).__name__}({a}, {b}, {c})"


class ProjLine(_Homogeneous):
    """The line ``a*x + b*y + c*z = 0``."""

    __slots__ = ()


class ProjPoint(_Homogeneous):
    """The point with homogeneous coordinates ``(x : y : z)``."""

    __slots__ = ()


def canonicalize(raw: Sequence) -> ProjLine:
    return ProjLine(raw)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    if l1 == l2:
        raise IdenticalLines(f"{l1!r} and {l2!r} are the same line")
    return ProjPoint(_cross(l1.coords, l2.coords))


def join(p1: ProjPoint, p2: ProjPoint) -> ProjLine:
    if p1 == p2:
        raise ValueError("cannot join a point with itself")
    return ProjLine(_cross(p1.coords, p2.coords))


def incident(p: ProjPoint, line: ProjLine) -> bool:
    return sum(a * x for a, x in zip(line.coords, p.coords)) == 0


class Arrangement:
    """An ordered collection of pairwise distinct projective lines."""

    __slots__ = ("lines", "label")

    def __init__(self, lines: Iterable, label: str | None = None):
        canon = tuple(l if isinstance(l, ProjLine) else ProjLine(l) for l in lines)
        seen = set()
        for line in canon:
            if line in seen:
                raise DuplicateLines(f"line {line.coords} occurs more than once")
            seen.add(line)
        if not canon:
            raise ValueError("an arrangement needs at least one line")
        object.__setattr__(self, "lines", canon)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("Arrangement is immutable")

    @property
    def n(self) -> int:
        return len(self.lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.lines == other.lines and self.label == other.label

    def __hash__(self):
        return hash((self.lines, self.label))

    def __repr__(self):
        return f"Arrangement(n={self.n}, label={self.label!r})"

    def same_lines(self, other: Arrangement) -> bool:
        """Set equality, ignoring order and label."""
        return set(self.lines) == set(other.lines)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "lines": [[format_rational(v) for v in line.coords] for line in self.lines],
        }

    @classmethod
    def from_dict(cls, data) -> Arrangement:
        if not isinstance(data, dict) or not isinstance(data.get("lines"), list):
            raise ParseError("arrangement JSON must be an object with a 'lines' list")
        label = data.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError("'label' must be a string or null")
        lines = []
        for entry in data["lines"]:
            if not isinstance(entry, list) or len(entry) != 3:
                raise ParseError(f"line entry must be a list of 3 rationals: {entry!r}")
            lines.append(ProjLine(tuple(parse_rational(v) for v in entry)))
        return cls(lines, label=label)


def _det3(a) -> Fraction:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def _cofactor_matrix(a):
    return [
        [
            (a[(i + 1) % 3][(j + 1) % 3] * a[(i + 2) % 3][(j + 2) % 3]
             - a[(i + 1) % 3][(j + 2) % 3] * a[(i + 2) % 3][(j + 1) % 3])
            for j in range(3)
        ]
        for i in range(3)
    ]


def apply_projectivity(matrix, arr: Arrangement) -> Arrangement:
    """Push ``arr`` forward along the point map ``p -> A p``.

    Line coefficients transform by the inverse transpose.  The cofactor
    matrix equals ``det(A) * A^{-T}``, and the scalar is absorbed by
    canonicalization, so no division is needed.
    """
    a = [[Fraction(v) for v in row] for row in matrix]
    if len(a) != 3 or any(len(row) != 3 for row in a):
        raise ValueError("projectivity must be a 3x3 matrix")
    if _det3(a) == 0:
        raise SingularMatrix("projectivity matrix is singular")
    cof = _cofactor_matrix(a)
    mapped = [
        ProjLine(tuple(sum(cof[i][j] * line.coords[j] for j in range(3)) for i in range(3)))
        for line in arr.lines
    ]
    return Arrangement(mapped, label=arr.label)
