import itertools

import pytest
from hypothesis import given, strategies as st

from palprefix.affine import AffineRepr, Component
from palprefix.errors import EnumerationOverflow
from palprefix.oracle import (
    PrefixLenSet,
    dp_k_pal_prefixes,
    dp_palindromic_length,
    enumerate_affine,
    naive_palindromic_prefixes,
)
from palprefix.text_model import BaseText, StringRef


def rep(text, base, *comps):
    h = BaseText(text)
    return AffineRepr(h, base, [Component(StringRef.lit(w), lo, hi) for w, lo, hi in comps])


def brute_pal_length(s):
    best = {0: 0}
    for j in range(1, len(s) + 1):
        best[j] = min(best[i] + 1 for i in range(j) if s[i:j] == s[i:j][::-1])
    return best[len(s)]


def test_palindromic_length_examples():
    assert dp_palindromic_length("aaa") == 1
    assert dp_palindromic_length("ab") == 2
    assert dp_palindromic_length("abaab") == 2


def test_k_pal_prefixes_small():
    assert dp_k_pal_prefixes("ab", 2) == [{1}, {2}]


def test_k_pal_prefixes_golden(golden):
    levels = dp_k_pal_prefixes(golden, 2)
    assert levels[0] == {1, 3, 5, 12, 19}
    assert levels[1] == {2, 4, 6, 7, 9, 11, 13, 14, 16, 18, 20, 21, 23, 25}
    assert len(levels[1]) == 14


def test_enumerate_examples():
    r = rep("cabababa", 2, ("ba", 1, 3))
    assert enumerate_affine(r) == {4, 6, 8}
    assert enumerate_affine(rep("abc", 2)) == {2}
    r = rep("x" * 30, 0, ("ababacc", 1, 3), ("ab", 1, 2))
    assert enumerate_affine(r) == {9, 11, 16, 18, 23, 25}


def test_enumerate_cap():
    r = rep("a" * 8, 0, ("a", 1, 2), ("a", 1, 2), ("a", 1, 2))
    with pytest.raises(EnumerationOverflow):
        enumerate_affine(r, cap=4)


def test_prefix_len_set():
    s = PrefixLenSet([3, 1, 3])
    assert list(s) == [1, 3]
    assert 3 in s and 2 not in s
    assert (s | PrefixLenSet([2])) == {1, 2, 3}


def all_binary(max_len, alphabet="ab"):
    for n in range(1, max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def test_dp_length_is_first_level_containing_n():
    for s in all_binary(10):
        levels = dp_k_pal_prefixes(s, len(s))
        first = min(i for i in range(1, len(s) + 1) if len(s) in levels[i - 1])
        assert dp_palindromic_length(s) == first


def test_level_one_is_naive_prefix_list():
    for s in all_binary(7, "abc"):
        assert dp_k_pal_prefixes(s, 1)[0] == set(naive_palindromic_prefixes(s))


@given(st.text(alphabet="abc", min_size=1, max_size=25))
def test_dp_against_direct_brute_force(s):
    assert dp_palindromic_length(s) == brute_pal_length(s)
    levels = dp_k_pal_prefixes(s, 3)
    for k in range(1, 4):
        want = set()
        for m in range(1, len(s) + 1):
            p = s[:m]
            # exactly k nonempty palindromes
            reach = {0}
            for _ in range(k):
                reach = {j for i in reach for j in range(i + 1, m + 1) if p[i:j] == p[i:j][::-1]}
            if m in reach:
                want.add(m)
        assert levels[k - 1] == want


@given(st.lists(st.tuples(st.sampled_from(["ab", "a", "aab", "abc"]), st.integers(1, 3), st.integers(0, 3)),
                min_size=0, max_size=3))
def test_irreducible_cardinality_is_product(spec):
    # strictly decreasing distinct lengths keep the sums distinct only in
    # irreducible prefix sets, so compare the tuple count instead
    comps = [(w, lo, lo + d) for w, lo, d in spec]
    r = rep("z" * 200, 0, *comps)
    count = 1
    for _, lo, hi in comps:
        count *= hi - lo + 1
    assert enumerate_affine(r).tuples == count
