"""Brute-force reference implementations used to check the fast algorithms.

These ignore every space constraint: they materialize the text and keep
quadratic tables where convenient.
"""

from __future__ import annotations

from bisect import bisect_left
from math import prod

from .errors import EnumerationOverflow
from .text_model import as_handle


class PrefixLenSet:
    """Sorted set of prefix lengths, optionally with the number of exponent
    tuples that produced it."""

    __slots__ = ("values", "tuples")

    def __init__(self, values=(), tuples: int | None = None):
        self.values = tuple(sorted(set(values)))
        self.tuples = tuples

    def __contains__(self, m) -> bool:
        k = bisect_left(self.values, m)
        return k < len(self.values) and self.values[k] == m

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if isinstance(other, PrefixLenSet):
            return self.values == other.values
        if isinstance(other, (set, frozenset)):
            return set(self.values) == other
        return NotImplemented

    def __or__(self, other) -> PrefixLenSet:
        return PrefixLenSet(set(self.values) | set(other))

    def __repr__(self) -> str:
        return f"PrefixLenSet({list(self.values)})"


def _palindrome_starts_by_end(s) -> list[list[int]]:
    """``out[r]`` lists every ``l`` such that ``s[l..r]`` (1-based) is a palindrome."""
    n = len(s)
    out: list[list[int]] = [[] for _ in range(n + 1)]
    for c in range(2 * n - 1):
        lo = c // 2
        hi = lo + c % 2
        while lo >= 0 and hi < n and s[lo] == s[hi]:
            out[hi + 1].append(lo + 1)
            lo -= 1
            hi += 1
    return out


def naive_palindromic_prefixes(h) -> list[int]:
    """All ``m`` such that ``T[1..m]`` is a palindrome, increasing."""
    s = as_handle(h).materialize()
    return [m for m in range(1, len(s) + 1) if s[:m] == s[:m][::-1]]


def dp_prefix_palindromic_lengths(h) -> list[int]:
    """``pl[m]`` is the palindromic length of ``T[1..m]``; ``pl[0] = 0``."""
    s = as_handle(h).materialize()
    n = len(s)
    pl = [0] + [n + 1] * n
    # centres are visited left to right, so pl[l-1] is final when it is read
    for c in range(2 * n - 1):
        lo = c // 2
        hi = lo + c % 2
        while lo >= 0 and hi < n and s[lo] == s[hi]:
            v = pl[lo] + 1
            if v < pl[hi + 1]:
                pl[hi + 1] = v
            lo -= 1
            hi += 1
    return pl


def dp_palindromic_length(h) -> int:
    h = as_handle(h)
    if h.length == 0:
        return 0
    return dp_prefix_palindromic_lengths(h)[h.length]


def dp_k_pal_prefixes(h, k: int) -> list[PrefixLenSet]:
    """``out[i-1]`` holds every ``m`` with ``T[1..m]`` a product of exactly
    ``i`` nonempty palindromes, for ``i = 1..k``."""
    s = as_handle(h).materialize()
    n = len(s)
    starts = _palindrome_starts_by_end(s)
    cur = 1  # bit j set: T[1..j] is in the previous level; level 0 is {empty}
    out = []
    for _ in range(k):
        nxt = 0
        for m in range(1, n + 1):
            for l in starts[m]:
                if cur >> (l - 1) & 1:
                    nxt |= 1 << m
                    break
        out.append(PrefixLenSet(m for m in range(1, n + 1) if nxt >> m & 1))
        cur = nxt
    return out


def _tuple_count(r) -> int:
    return prod(c.high - c.low + 1 for c in r.comps)


def enumerate_affine(r, cap: int = 2**20) -> PrefixLenSet:
    """Lengths of all strings generated by ``r``, by direct expansion."""
    count = _tuple_count(r)
    if count > cap:
        raise EnumerationOverflow(f"{count} exponent tuples exceed cap {cap}")
    sums = {r.base_len}
    for c in r.comps:
        L = c.word.length
        sums = {x + a * L for x in sums for a in range(c.low, c.high + 1)}
    return PrefixLenSet(sums, tuples=count)


def generate_strings(r, cap: int = 2**16) -> set:
    """The generated strings themselves, materialized."""
    count = _tuple_count(r)
    if count > cap:
        raise EnumerationOverflow(f"{count} exponent tuples exceed cap {cap}")
    words = {r.text.materialize(1, r.base_len) if r.base_len else r.text.materialize()[:0]}
    for c in r.comps:
        w = c.word.text()
        words = {x + w * a for x in words for a in range(c.low, c.high + 1)}
    return words


def is_prefix_set_exhaustive(r, cap: int = 2**16) -> bool:
    """Is every generated string a prefix of ``r.text``?"""
    t = r.text.materialize()
    return all(t.startswith(w) for w in generate_strings(r, cap))


def brute_append_palindrome(r, cap: int = 2**16) -> PrefixLenSet:
    """Lengths ``|SP|`` with ``S`` generated by ``r``, ``P`` a nonempty
    palindrome and ``SP`` a prefix of ``r.text``."""
    t = r.text.materialize()
    n = len(t)
    starts = _palindrome_starts_by_end(t)
    ends_from: dict[int, list[int]] = {}
    for m in range(1, n + 1):
        for l in starts[m]:
            ends_from.setdefault(l, []).append(m)
    out = set()
    for L in enumerate_affine(r, cap):
        out.update(ends_from.get(L + 1, ()))
    return PrefixLenSet(out)


def brute_prefix_suffix(a, b, n: int, cap: int = 2**16) -> bool:
    """Does some ``A`` from ``a`` and some ``B`` from ``b`` satisfy ``|A|+|B| = n``?"""
    bs = set(enumerate_affine(b, cap))
    return any(n - x in bs for x in enumerate_affine(a, cap))


def union_lengths(reprs, cap: int = 2**20) -> PrefixLenSet:
    out: set[int] = set()
    for r in reprs:
        out.update(enumerate_affine(r, cap))
    return PrefixLenSet(out)

