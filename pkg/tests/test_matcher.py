import itertools
import math
import random
import tracemalloc

import pytest
from hypothesis import given, settings, strategies as st

from palprefix.affine import is_canonical
from palprefix.matcher import (
    BACKENDS,
    find_occurrences,
    occurrences,
    palindrome_groups,
    prefix_pal_affine_sets,
    prefix_palindromes_stream,
    two_way_occurrences,
)
from palprefix.oracle import enumerate_affine, naive_palindromic_prefixes
from palprefix.text_model import BaseText


def naive_occ(p, w):
    return [i + 1 for i in range(len(w) - len(p) + 1) if w[i:i + len(p)] == p]


@pytest.mark.parametrize("backend", BACKENDS)
def test_occurrence_examples(backend):
    got = []
    find_occurrences(BaseText("aba"), BaseText("ababa"), got.append, backend)
    assert got == [1, 3]
    got = []
    find_occurrences(BaseText("aa"), BaseText("bbb"), got.append, backend)
    assert got == []


def test_reversed_prefix_window(golden):
    h = BaseText(golden)
    pat = h.fragment(1, 4).reversed()
    window = h.fragment(1, 7)
    ends = [i + 3 for i in occurrences(pat, window, "two_way")]
    # every palindromic prefix of length in [4, 8) ends such an occurrence
    assert ends == [m for m in naive_palindromic_prefixes(golden) if 4 <= m < 8] == [5]


def test_two_way_exhaustive_small():
    for n in range(0, 9):
        for w in map("".join, itertools.product("ab", repeat=n)):
            for m in range(1, 5):
                for p in map("".join, itertools.product("ab", repeat=m)):
                    assert list(two_way_occurrences(BaseText(p), BaseText(w))) == naive_occ(p, w)


@given(st.text(alphabet="abc", min_size=1, max_size=8), st.text(alphabet="abc", max_size=80))
def test_backends_agree_with_naive(p, w):
    for b in BACKENDS:
        assert list(occurrences(BaseText(p), BaseText(w), b)) == naive_occ(p, w)


def test_two_way_on_views():
    h = BaseText("abcabcabcab")
    pat = h.fragment(2, 3).reversed()  # "acb"
    win = h.reversed()
    assert list(two_way_occurrences(pat, win)) == naive_occ("acb", h.materialize()[::-1])


def _peak_bytes(n):
    h = BaseText("ab" * (n // 2))
    pat = h.fragment(1, 64)
    tracemalloc.start()
    tracemalloc.reset_peak()
    count = sum(1 for _ in two_way_occurrences(pat, h))
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    assert count == n // 2 - 31
    return peak


def test_two_way_space_does_not_grow_with_window():
    small = _peak_bytes(2_000)
    large = _peak_bytes(40_000)
    assert large < small + 4096


@pytest.mark.parametrize("backend", BACKENDS)
def test_prefix_palindrome_stream(golden, backend):
    for text, want in [("aaaa", [1, 2, 3, 4]), (golden, [1, 3, 5, 12, 19]), ("ab", [1])]:
        got = []
        prefix_palindromes_stream(BaseText(text), got.append, backend)
        assert got == want


@settings(max_examples=300)
@given(st.text(alphabet="ab", min_size=1, max_size=60), st.sampled_from(BACKENDS))
def test_stream_equals_naive(s, backend):
    got = []
    prefix_palindromes_stream(BaseText(s), got.append, backend)
    assert got == naive_palindromic_prefixes(s)


def _union(reprs):
    out = []
    for r in reprs:
        out.extend(enumerate_affine(r))
    return out


@settings(max_examples=300)
@given(st.text(alphabet="abc", min_size=1, max_size=80), st.sampled_from(BACKENDS))
def test_affine_sets_partition_palindromic_prefixes(s, backend):
    reprs = prefix_pal_affine_sets(BaseText(s), backend)
    lengths = _union(reprs)
    assert len(lengths) == len(set(lengths))
    assert sorted(lengths) == naive_palindromic_prefixes(s)
    assert all(r.order <= 1 and is_canonical(r) for r in reprs)


def test_affine_sets_examples():
    assert [r.base_len for r in prefix_pal_affine_sets(BaseText("a"))] == [1]
    assert sorted(_union(prefix_pal_affine_sets(BaseText("a" * 8)))) == list(range(1, 9))


def test_group_count_bound():
    rng = random.Random(3)
    texts = ["a" * 1000, "ab" * 500, "abaababaab" * 60]
    texts += ["".join(rng.choice("ab") for _ in range(rng.randint(1, 400))) for _ in range(200)]
    for s in texts:
        n = len(s)
        groups = palindrome_groups(BaseText(s))
        assert len(groups) <= math.ceil(math.log(n, 1.5)) + 1 if n > 1 else len(groups) == 1
        flat = [m for g in groups for m in g.lengths]
        assert flat == naive_palindromic_prefixes(s)


def test_long_run_is_skipped_quickly():
    s = "a" * 200_000
    groups = palindrome_groups(BaseText(s))
    assert sum(g.count if g.period else 1 for g in groups) == 200_000
