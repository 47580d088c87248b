"""Deterministic arrangement families and arrangement file I/O.

Random family
-------------
``gen_random(n, seed)`` draws integer coefficients from a splitmix64 stream
so any implementation can reproduce it bit for bit:

* state starts at ``seed`` (an unsigned 64-bit integer);
* each draw does ``state += 0x9E3779B97F4A7C15`` and then mixes
  ``z = state``; ``z = (z ^ z>>30) * 0xBF58476D1CE4E5B9``;
  ``z = (z ^ z>>27) * 0x94D049BB133111EB``; output ``z ^ z>>31``
  (all arithmetic modulo 2**64);
* a coefficient in ``[-R, R]`` is ``draw % (2R + 1) - R``, three draws per
  line in the order ``a, b, c``;
* zero triples and lines already present (after canonicalization) are
  rejected; after ``64 * n`` consecutive rejections ``R`` doubles.

``R`` starts at 2.  Small coefficients produce many coincidences, which is
what the multiplicity code needs to be exercised on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import Arrangement, ProjLine
from .errors import ExhaustedRetries, ParseError, ZeroTriple

MASK64 = (1 << 64) - 1
INITIAL_RANGE = 2
MAX_WIDENINGS = 16

FAMILIES = ("pencil", "near_pencil", "generic", "random")


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def integer(self, bound: int) -> int:
        """Uniform-ish integer in ``[-bound, bound]``."""
        return self.next() % (2 * bound + 1) - bound


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    seed: int = 0

    def __post_init__(self):
        family = self.family.replace("-", "_")
        object.__setattr__(self, "family", family)
        if family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.n < 2:
            raise ValueError("every family requires n >= 2")
        if family == "near_pencil" and self.n < 3:
            raise ValueError("near_pencil requires n >= 3")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def build(self) -> Arrangement:
        if self.family == "pencil":
            return gen_pencil(self.n)
        if self.family == "near_pencil":
            return gen_near_pencil(self.n)
        if self.family == "generic":
            return gen_generic(self.n)
        return gen_random(self.n, self.seed)


def _pencil_lines(n):
    # x = 0 and y = i*x for i = 0..n-2, all through (0 : 0 : 1)
    return [ProjLine(1, 0, 0)] + [ProjLine(i, -1, 0) for i in range(n - 1)]


def gen_pencil(n: int) -> Arrangement:
    if n < 2:
        raise ValueError("pencil requires n >= 2")
    return Arrangement(_pencil_lines(n), label=f"pencil-{n}")


def gen_near_pencil(n: int) -> Arrangement:
    if n < 3:
        raise ValueError("near_pencil requires n >= 3")
    return Arrangement(_pencil_lines(n - 1) + [ProjLine(0, 0, 1)], label=f"near-pencil-{n}")


def gen_generic(n: int) -> Arrangement:
    """Tangents ``y = i*x - i^2`` to a parabola; lines i, j meet at ``(i+j, ij)``."""
    if n < 2:
        raise ValueError("generic requires n >= 2")
    return Arrangement([ProjLine(i, -1, -i * i) for i in range(1, n + 1)], label=f"generic-{n}")


def gen_random(n: int, seed: int) -> Arrangement:
    if n < 2:
        raise ValueError("random requires n >= 2")
    rng = SplitMix64(seed)
    bound = INITIAL_RANGE
    lines: list[ProjLine] = []
    seen: set[ProjLine] = set()
    rejected = 0
    widenings = 0
    while len(lines) < n:
        raw = (rng.integer(bound), rng.integer(bound), rng.integer(bound))
        try:
            line = ProjLine(raw)
        except ZeroTriple:
            line = None
        if line is None or line in seen:
            rejected += 1
            if rejected >= 64 * n:
                if widenings == MAX_WIDENINGS:
                    raise ExhaustedRetries(f"could not draw {n} distinct lines")
                bound *= 2
                widenings += 1
                rejected = 0
            continue
        rejected = 0
        seen.add(line)
        lines.append(line)
    return Arrangement(lines, label=f"random-{n}-seed{seed}")


def dumps_arrangement(arr: Arrangement) -> str:
    return json.dumps(arr.to_dict()) + "\n"


def loads_arrangement(text: str) -> Arrangement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return Arrangement.from_dict(data)


def write_arrangement(arr: Arrangement, path) -> None:
    Path(path).write_text(dumps_arrangement(arr), encoding="utf-8")


def read_arrangement(path) -> Arrangement:
    return loads_arrangement(Path(path).read_text(encoding="utf-8"))
