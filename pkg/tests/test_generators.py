import json

import pytest

from projarr import generators
from projarr.core import Arrangement, ProjLine
from projarr.errors import DuplicateLines, ExhaustedRetries, ParseError, ZeroTriple
from projarr.generators import (
    FamilySpec,
    SplitMix64,
    gen_generic,
    gen_near_pencil,
    gen_pencil,
    gen_random,
    read_arrangement,
    write_arrangement,
)
from projarr.profile import compute_profile, region_count_oracle


def test_splitmix64_reference_stream():
    # published reference outputs for seed 0
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


@pytest.mark.parametrize("n, t, f", [(2, {2: 1}, 2), (3, {3: 1}, 3), (5, {5: 1}, 5)])
def test_pencil(n, t, f):
    p = compute_profile(gen_pencil(n))
    assert (dict(p.t), p.f, p.m) == (t, f, n)


@pytest.mark.parametrize("n, t, f", [(3, {2: 3}, 4), (5, {2: 4, 4: 1}, 8), (6, {2: 5, 5: 1}, 10)])
def test_near_pencil(n, t, f):
    arr = gen_near_pencil(n)
    p = compute_profile(arr)
    assert (dict(p.t), p.f, p.m) == (t, f, n - 1)
    assert region_count_oracle(arr) == f == 2 * n - 2


@pytest.mark.parametrize("n, f", [(3, 4), (4, 7), (10, 46)])
def test_generic(n, f):
    arr = gen_generic(n)
    p = compute_profile(arr)
    assert dict(p.t) == {2: n * (n - 1) // 2}
    assert p.f == region_count_oracle(arr) == f


@pytest.mark.parametrize("bad", [lambda: gen_pencil(1), lambda: gen_near_pencil(2), lambda: gen_generic(1),
                                 lambda: gen_random(1, 0)])
def test_preconditions(bad):
    with pytest.raises(ValueError):
        bad()


def test_random_two_lines():
    for seed in range(5):
        assert compute_profile(gen_random(2, seed)).f == 2


def test_random_pair_identity():
    assert compute_profile(gen_random(6, 1)).pair_sum() == 30


def test_random_regression_n8_seed7():
    # pinned at first run
    arr = gen_random(8, 7)
    p = compute_profile(arr)
    assert arr.lines[0] == ProjLine(0, 2, -1)
    assert dict(p.t) == {2: 19, 3: 3}
    assert p.f == region_count_oracle(arr) == 26


def test_random_deterministic():
    assert gen_random(11, 2**64 - 1) == gen_random(11, 2**64 - 1)
    assert gen_random(11, 5) != gen_random(11, 6)


def test_random_seed_range():
    with pytest.raises(ValueError):
        gen_random(4, -1)
    with pytest.raises(ValueError):
        gen_random(4, 2**64)


def test_random_widens_range():
    # only 49 distinct lines have coefficients in [-2, 2]
    arr = gen_random(60, 3)
    assert arr.n == 60
    assert max(abs(c) for line in arr.lines for c in line.coords) > 2


def test_random_exhausted(monkeypatch):
    monkeypatch.setattr(generators, "INITIAL_RANGE", 0)
    monkeypatch.setattr(generators, "MAX_WIDENINGS", 3)
    with pytest.raises(ExhaustedRetries):
        gen_random(3, 1)


def test_family_spec():
    assert FamilySpec("near-pencil", 5).build() == gen_near_pencil(5)
    assert FamilySpec("random", 5, seed=9).build() == gen_random(5, 9)
    with pytest.raises(ValueError):
        FamilySpec("near_pencil", 2)
    with pytest.raises(ValueError):
        FamilySpec("star", 5)


def test_roundtrip(tmp_path):
    arr = gen_generic(4)
    path = tmp_path / "g4.json"
    write_arrangement(arr, path)
    assert read_arrangement(path) == arr
    first = path.read_bytes()
    write_arrangement(read_arrangement(path), path)
    assert path.read_bytes() == first


def test_read_duplicate(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"label": None, "lines": [["1", "0", "0"], ["1", "0", "0"]]}))
    with pytest.raises(DuplicateLines):
        read_arrangement(path)


def test_read_canonicalizes(tmp_path):
    path = tmp_path / "half.json"
    path.write_text(json.dumps({"label": "h", "lines": [["2/4", "0", "1"], ["0", "1", "0"]]}))
    arr = read_arrangement(path)
    assert arr.lines[0] == ProjLine(1, 0, 2)
    assert Arrangement.from_dict(arr.to_dict()).lines[0].coords == (1, 0, 2)


@pytest.mark.parametrize("text, error", [
    ("{not json", ParseError),
    ('{"lines": [["1", "0"]]}', ParseError),
    ('{"lines": [["1", "x", "0"]]}', ParseError),
    ('{"lines": [["0", "0", "0"]]}', ZeroTriple),
    ('[1, 2]', ParseError),
])
def test_read_errors(tmp_path, text, error):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(error):
        read_arrangement(path)


def test_fixture_families_have_expected_m(fixture_profiles):
    for arr, p in fixture_profiles:
        if arr.label.startswith("generic"):
            assert p.m == 2
        elif arr.label.startswith("near-pencil"):
            assert p.m == max(arr.n - 1, 2)
        elif arr.label.startswith("pencil"):
            assert p.m == arr.n
