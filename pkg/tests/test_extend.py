import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from palprefix.affine import AffineRepr, Component, make_strong_partition
from palprefix.driver import compute_levels
from palprefix.extend import (
    append_long,
    append_long_in_run,
    append_long_overhanging,
    append_palindrome,
    append_palindrome_batch,
    batch_alpha,
)
from palprefix.matcher import BACKENDS
from palprefix.oracle import brute_append_palindrome, enumerate_affine, naive_palindromic_prefixes, union_lengths
from palprefix.sampling import random_valid_repr, structured_text
from palprefix.text_model import BaseText, StringRef


def frag_rep(text, base, *comps):
    h = BaseText(text)
    out, pos = [], base + 1
    for L, lo, hi in comps:
        out.append(Component(StringRef.frag(h, pos, L), lo, hi))
        pos += lo * L
    return AffineRepr(h, base, out)


def brute_long(r):
    """``|S P|`` for ``S`` in ``r`` and palindromes ``P`` with ``|P| >= 2|Q_1|``."""
    t = r.text.materialize()
    q = r.comps[0].length
    out = set()
    for L in enumerate_affine(r):
        for m in range(L + 2 * q, len(t) + 1):
            p = t[L:m]
            if p == p[::-1]:
                out.add(m)
    return out


def canonical_sources(text, k=3):
    lc = compute_levels(BaseText(text), k)
    return [r for i in range(1, k + 1) for r in lc.level(i)]


def test_in_run_example():
    r = frag_rep("ab" * 8, 0, (2, 1, 2))
    got = union_lengths(append_long_in_run(r))
    assert set(got) >= brute_long(r) == {7, 9, 11, 13, 15}
    assert set(got) <= set(brute_append_palindrome(r))
    assert set(got) == {5, 7, 9, 11, 13, 15}


def test_in_run_needs_reversible_word():
    r = frag_rep("abc" * 5, 0, (3, 1, 2))
    assert append_long_in_run(r) == []


def test_batch_alpha_examples():
    h = BaseText("aaaa")
    assert batch_alpha(h, StringRef.lit("a"), [1, 2]) == [3, 2]
    assert batch_alpha(BaseText("abab"), StringRef.lit("ba"), [2]) == [None]
    assert batch_alpha(BaseText("abab"), StringRef.lit("ba"), [1]) == [Fraction(3, 2)]


@pytest.mark.parametrize("backend", BACKENDS)
def test_batch_alpha_matches_direct_scan(backend):
    rng = random.Random(4)
    for _ in range(200):
        s = structured_text(rng, rng.randint(1, 80))
        w = s[rng.randrange(len(s)):][:rng.randint(1, 4)]
        ends = sorted(rng.sample(range(0, len(s) + 1), min(5, len(s) + 1)))
        got = batch_alpha(BaseText(s), StringRef.lit(w), ends, backend)
        for e, a in zip(ends, got):
            k = 0
            while e + k < len(s) and s[e + k] == w[k % len(w)]:
                k += 1
            assert a == (Fraction(k, len(w)) if k >= len(w) else None)


def test_order_zero_examples(golden):
    h = BaseText("aaaa")
    assert union_lengths(append_palindrome(AffineRepr(h, 1, ()))) == {2, 3, 4}
    h = BaseText(golden)
    want = {1 + p for p in naive_palindromic_prefixes(golden[1:])}
    assert union_lengths(append_palindrome(AffineRepr(h, 1, ()))) == want
    assert append_palindrome(AffineRepr(BaseText("ab"), 2, ())) == []


def test_overhang_around_double_letter():
    text = "ab" * 4 + "cc" + "ba" * 4 + "ab"
    for r in canonical_sources(text):
        if r.order == 0:
            continue
        got = set(union_lengths(append_long(r)))
        assert got >= brute_long(r)
        assert got <= set(brute_append_palindrome(r))
        over = set(union_lengths(append_long_overhanging(r)))
        assert over <= set(brute_append_palindrome(r))


def test_append_long_exhaustive_short_binary():
    # every order-1 canonical source met while building levels
    for n in range(4, 15):
        for t in itertools.product("ab", repeat=n):
            s = "".join(t)
            for r in canonical_sources(s, 2):
                if r.order != 1:
                    continue
                got = set(union_lengths(append_long(r)))
                assert got >= brute_long(r), (s, r)
                assert got <= set(brute_append_palindrome(r)), (s, r)


def test_append_long_random_up_to_twenty():
    rng = random.Random(11)
    for _ in range(1500):
        s = "".join(rng.choice("ab") for _ in range(rng.randint(15, 20)))
        for r in canonical_sources(s, 3):
            if r.order == 0:
                continue
            got = set(union_lengths(append_long(r)))
            assert got >= brute_long(r), (s, r)
            assert got <= set(brute_append_palindrome(r)), (s, r)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(BACKENDS))
def test_append_palindrome_exact_on_sampled_sources(seed, backend):
    r = random_valid_repr(random.Random(seed))
    for p in make_strong_partition(r):
        assert union_lengths(append_palindrome(p, backend)) == brute_append_palindrome(p)


def test_append_palindrome_exact_on_level_sets():
    rng = random.Random(12)
    for _ in range(150):
        s = structured_text(rng, rng.randint(1, 300), rng.choice(["ab", "abc"]))
        for r in canonical_sources(s, 3):
            out = append_palindrome(r)
            assert union_lengths(out) == brute_append_palindrome(r)
            assert all(o.order <= r.order + 1 for o in out)


def test_set_counts_stay_logarithmic():
    rng = random.Random(13)
    for _ in range(60):
        n = rng.randint(16, 4096)
        s = structured_text(rng, n, rng.choice(["ab", "abc"]))
        for r in canonical_sources(s, 3):
            if r.order == 0:
                continue
            assert len(append_long(r)) <= 4 * r.order * math.log2(n)
            assert len(append_palindrome(r)) <= 2 * (r.order + 1) ** 2 * math.log2(n)


def test_batch_provenance():
    r = canonical_sources("ab" * 10 + "a", 1)
    batch = append_palindrome_batch(max(r, key=lambda x: x.order))
    assert sum(batch.stats.values()) == len(batch.sets)
    assert set(batch.stats) <= {"order0", "in_run", "overhang", "short"}
