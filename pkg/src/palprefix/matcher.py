"""Pattern matching and the palindromic-prefix stream.

Two backends share one interface:

``"two_way"``
    Crochemore-Perrin two-way matching over ``char_at`` accessors.  Uses a
    constant number of integer variables besides the input handles.
``"native"``
    Materializes the window and pattern and calls ``str.find``/``bytes.find``.
    Much faster in CPython, at the cost of linear scratch space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .affine import AffineRepr, Component, make_strong_partition, relocate
from .errors import ContractViolation, InternalInvariantError
from .text_model import (
    StringRef,
    TextHandle,
    as_handle,
    max_periodic_extension,
    max_periodic_extension_ref,
)

BACKENDS = ("native", "two_way")
DEFAULT_BACKEND = "native"


def _backend(name: str | None) -> str:
    name = name or DEFAULT_BACKEND
    if name not in BACKENDS:
        raise ContractViolation(f"unknown matcher backend {name!r}")
    return name


def _maximal_suffix(x, m: int, flip: bool) -> tuple[int, int]:
    # position before the maximal suffix (0-based, -1 for whole word) and its period
    ms, j, k, p = -1, 0, 1, 1
    while j + k < m:
        a = x(j + k)
        b = x(ms + k)
        if (a > b) if flip else (a < b):
            j += k
            k = 1
            p = j - ms
        elif a == b:
            if k != p:
                k += 1
            else:
                j += p
                k = 1
        else:
            ms = j
            j = ms + 1
            k = p = 1
    return ms, p


def two_way_occurrences(pattern: TextHandle, window: TextHandle) -> Iterator[int]:
    """Yield every 1-based start of ``pattern`` in ``window``, increasing."""
    m, n = pattern.length, window.length
    if m == 0:
        raise ContractViolation("empty pattern")
    if m > n:
        return
    pc, wc = pattern.char_at, window.char_at

    def x(i):
        return pc(i + 1)

    def y(i):
        return wc(i + 1)

    i1, p1 = _maximal_suffix(x, m, False)
    i2, p2 = _maximal_suffix(x, m, True)
    ell, per = (i1, p1) if i1 > i2 else (i2, p2)
    periodic = all(x(i) == x(i + per) for i in range(ell + 1))
    j = 0
    if periodic:
        memory = -1
        while j <= n - m:
            i = max(ell, memory) + 1
            while i < m and x(i) == y(i + j):
                i += 1
            if i >= m:
                i = ell
                while i > memory and x(i) == y(i + j):
                    i -= 1
                if i <= memory:
                    yield j + 1
                j += per
                memory = m - per - 1
            else:
                j += i - ell
                memory = -1
    else:
        per = max(ell + 1, m - ell - 1) + 1
        while j <= n - m:
            i = ell + 1
            while i < m and x(i) == y(i + j):
                i += 1
            if i >= m:
                i = ell
                while i >= 0 and x(i) == y(i + j):
                    i -= 1
                if i < 0:
                    yield j + 1
                j += per
            else:
                j += i - ell


def native_occurrences(pattern: TextHandle, window: TextHandle) -> Iterator[int]:
    p = pattern.materialize()
    if len(p) == 0:
        raise ContractViolation("empty pattern")
    w = window.materialize()
    i = w.find(p)
    while i >= 0:
        yield i + 1
        i = w.find(p, i + 1)


def occurrences(pattern, window, backend: str | None = None) -> Iterator[int]:
    pattern, window = as_handle(pattern), as_handle(window)
    if _backend(backend) == "two_way":
        return two_way_occurrences(pattern, window)
    return native_occurrences(pattern, window)


def find_occurrences(pattern, window, emit: Callable[[int], None], backend: str | None = None) -> None:
    """Call ``emit(i)`` for each occurrence start ``i`` (1-based), left to right."""
    for i in occurrences(pattern, window, backend):
        emit(i)


def periodic_extension(h: TextHandle, start: int, p: int, backend: str | None = None) -> int:
    if _backend(backend) == "two_way":
        return max_periodic_extension_ref(h, start, p)
    return max_periodic_extension(h, start, p)


def iter_prefix_palindromes(h, min_len: int = 1, backend: str | None = None) -> Iterator[int]:
    """Lengths ``m >= min_len`` with ``T[1..m]`` a palindrome, increasing.

    Lengths in ``[2^j, 2^(j+1))`` are the end points of occurrences of
    ``rev(T[1..2^j])`` inside ``T[1..2^(j+1)-1]``.
    """
    h = as_handle(h)
    n = h.length
    j = 0
    while (1 << j) <= n:
        L = 1 << j
        hi = min(2 * L - 1, n)
        j += 1
        if hi < min_len:
            continue
        lo = max(1, min_len - L + 1)
        if hi - lo + 1 < L:
            continue
        pattern = h.fragment(1, L).reversed()
        window = h.fragment(lo, hi - lo + 1)
        for i in occurrences(pattern, window, backend):
            yield lo + i - 1 + L - 1


def prefix_palindromes_stream(h, emit: Callable[[int], None], backend: str | None = None) -> None:
    """Call ``emit(m)`` for every palindromic prefix length ``m``, increasing."""
    for m in iter_prefix_palindromes(h, 1, backend):
        emit(m)


@dataclass
class PalPrefixGroup:
    """Palindromic prefixes of lengths ``base_len + a * period`` for
    ``a = 1..count``; a singleton has ``period == 0`` and ``count == 1``."""

    base_len: int
    period: int = 0
    count: int = 1

    @property
    def lengths(self) -> list[int]:
        if self.period == 0:
            return [self.base_len]
        return [self.base_len + a * self.period for a in range(1, self.count + 1)]

    def to_repr(self, h: TextHandle) -> AffineRepr:
        if self.period == 0:
            return AffineRepr(h, self.base_len, ())
        word = StringRef.frag(h, self.base_len + 1, self.period)
        return AffineRepr(h, self.base_len, (Component(word, 1, self.count),))


def palindrome_groups(h, backend: str | None = None) -> list[PalPrefixGroup]:
    """Group the palindromic prefixes by the three-halves rule.

    A palindrome at most 3/2 times as long as its predecessor continues the
    predecessor's period, so all such runs collapse into one group.  Once a
    run is detected the scan jumps to the end of the periodic prefix, since
    every length in the same residue class up to there is a palindrome.
    """
    h = as_handle(h)
    groups: list[PalPrefixGroup] = []
    prev = 0
    start = 1
    while True:
        jumped = False
        for m in iter_prefix_palindromes(h, start, backend):
            if not groups or 2 * m > 3 * prev:
                groups.append(PalPrefixGroup(m))
                prev = m
                continue
            g = groups[-1]
            if g.period == 0:
                d = m - prev
                g.base_len, g.period, g.count = prev - d, d, 2
            elif m - prev != g.period:
                raise InternalInvariantError("palindrome run changed period")
            e = periodic_extension(h, 1, g.period, backend)
            g.count = (e - g.base_len) // g.period
            prev = g.base_len + g.count * g.period
            start = prev + 1
            jumped = True
            break
        if not jumped:
            return groups


def prefix_pal_affine_sets(h, backend: str | None = None) -> list[AffineRepr]:
    """Canonical, pairwise disjoint affine sets whose union is exactly the
    set of palindromic prefixes of ``h``."""
    h = as_handle(h)
    out = []
    for g in palindrome_groups(h, backend):
        r = g.to_repr(h)
        if g.period == 0:
            out.append(r)
        else:
            out.extend(relocate(p) for p in make_strong_partition(r))
    return out
