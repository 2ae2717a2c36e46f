"""Level-by-level computation of k-palindromic prefixes and of the
palindromic length of a whole text."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .affine import AffineRepr, is_irreducible, make_strong_partition, member_length
from .errors import ContractViolation, ResourceLimitError
from .extend import append_palindrome
from .matcher import prefix_pal_affine_sets
from .oracle import PrefixLenSet, dp_palindromic_length, enumerate_affine
from .text_model import TextHandle, as_handle

DEFAULT_CAP = 2**22


def _dedupe(reprs: list[AffineRepr]) -> list[AffineRepr]:
    # over one text, an affine prefix set is determined by its lengths
    seen = set()
    out = []
    for r in reprs:
        key = r.signature()
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


@dataclass
class LevelCollection:
    """``levels[i-1]`` holds canonical representations whose union is the set
    of prefixes of the text that are products of exactly ``i`` palindromes."""

    text: TextHandle
    levels: list = field(default_factory=list)
    cap: int = DEFAULT_CAP
    backend: str | None = None
    peak: int = 0

    @property
    def k(self) -> int:
        return len(self.levels)

    def level(self, i: int) -> list[AffineRepr]:
        if i == 0:
            return [AffineRepr(self.text, 0, ())]
        while len(self.levels) < i:
            self._grow()
        return self.levels[i - 1]

    def _grow(self) -> None:
        i = len(self.levels) + 1
        if i == 1:
            nxt = prefix_pal_affine_sets(self.text, self.backend)
        else:
            nxt = []
            for c in self.levels[-1]:
                for o in append_palindrome(c, self.backend):
                    nxt.extend(make_strong_partition(o))
                if len(nxt) > self.cap:
                    raise ResourceLimitError(
                        f"level {i} exceeds {self.cap} representations", level=i, count=len(nxt)
                    )
            nxt = _dedupe(nxt)
        if len(nxt) > self.cap:
            raise ResourceLimitError(
                f"level {i} exceeds {self.cap} representations", level=i, count=len(nxt)
            )
        self.peak = max(self.peak, len(nxt))
        self.levels.append(nxt)

    def union(self, i: int) -> PrefixLenSet:
        out: set[int] = set()
        for r in self.level(i):
            out.update(enumerate_affine(r))
        return PrefixLenSet(out)

    def contains(self, i: int, m: int) -> bool:
        return any(member_length(r, m) for r in self.level(i))

    def counts(self) -> list[int]:
        return [len(lv) for lv in self.levels]


def compute_levels(h, k: int, cap: int = DEFAULT_CAP, backend: str | None = None) -> LevelCollection:
    """Canonical representations of the ``i``-palindromic prefixes, ``i = 1..k``."""
    if k < 1:
        raise ContractViolation("k must be at least 1")
    lc = LevelCollection(as_handle(h), cap=cap, backend=backend)
    lc.level(k)
    return lc


@dataclass
class VerifyStats:
    calls: int = 0
    leaves: int = 0


def verify_prefix_suffix(a: AffineRepr, b: AffineRepr, stats: VerifyStats | None = None) -> bool:
    """Is ``T = A rev(B)`` for some ``A`` generated by ``a`` (prefixes of
    ``T``) and ``B`` generated by ``b`` (prefixes of ``rev(T)``)?

    Both representations must be canonical.  Each call either decides
    directly or pins the leading exponent of one side, trying at most three
    values, so at most ``3^(t + t')`` leaf calls happen.
    """
    n = a.text.length
    if not (is_irreducible(a) and is_irreducible(b)):
        raise ContractViolation("verify_prefix_suffix needs canonical representations")
    if b.text.length != n:
        raise ContractViolation("prefix and suffix representations live over texts of different length")
    if stats is None:
        stats = VerifyStats()
    return _verify(a.base_len, a.comps, b.base_len, b.comps, n, stats)


def _pin_one_side(X, A, Y, n, stats, flip) -> bool:
    # the other side is a single string of length Y
    c = A[0]
    q = c.length
    room = n - Y - X
    hi_tail = sum(d.high * d.length for d in A[1:])
    lo_tail = sum(d.length for d in A[1:])
    lo = max(1, -(-(room - hi_tail) // q))
    hi = min(c.high, (room - lo_tail) // q)
    hit = False
    for e in range(lo, hi + 1):
        if _recurse(X + e * q, A[1:], Y, (), n, stats, flip):
            hit = True
            break
    return hit


def _recurse(X, A, Y, B, n, stats, flip) -> bool:
    if flip:
        return _verify(Y, B, X, A, n, stats)
    return _verify(X, A, Y, B, n, stats)


def _verify(X, A, Y, B, n, stats: VerifyStats) -> bool:
    stats.calls += 1
    before = stats.calls
    result = _verify_body(X, A, Y, B, n, stats)
    if stats.calls == before:
        stats.leaves += 1
    return result


def _verify_body(X, A, Y, B, n, stats) -> bool:
    if not A and not B:
        return X + Y == n
    if X + Y + sum(c.low * c.length for c in A) + sum(c.low * c.length for c in B) > n:
        return False
    if not B:
        return _pin_one_side(X, A, Y, n, stats, False)
    if not A:
        return _pin_one_side(Y, B, X, n, stats, True)
    qa, qb = A[0].length, B[0].length
    if qa == qb:
        return _verify(X + A[0].high * qa, A[1:], Y, B, n, stats) or _verify(
            X, A, Y + qb, B[1:], n, stats
        )
    if qa > qb:
        return _pin_longer(X, A, Y, B, n, stats, False)
    return _pin_longer(Y, B, X, A, n, stats, True)


def _pin_longer(X, A, Y, B, n, stats, flip) -> bool:
    # exponent e of the longer leading word satisfies room/q - 3 < e < room/q
    q = A[0].length
    room = n - X - Y
    lo = max(1, room // q - 2)
    hi = min(A[0].high, -(-room // q) - 1)
    for e in range(lo, hi + 1):
        if _recurse(X + e * q, A[1:], Y, B, n, stats, flip):
            return True
    return False


def kmax_for(n: int) -> int:
    """Largest ``k`` handled by the affine-set route before the fallback."""
    if n < 2:
        return 1
    return max(1, math.ceil(math.sqrt(math.log(n, 6))))


def _empty_set(h: TextHandle) -> list[AffineRepr]:
    return [AffineRepr(h, 0, ())]


def is_k_palindromic(h, k: int, prefix_levels: LevelCollection | None = None,
                     suffix_levels: LevelCollection | None = None,
                     stats: VerifyStats | None = None, cap: int = DEFAULT_CAP,
                     backend: str | None = None) -> bool:
    """Is the whole text a product of exactly ``k`` palindromes?"""
    h = as_handle(h)
    if k < 1:
        raise ContractViolation("k must be at least 1")
    if prefix_levels is None:
        prefix_levels = LevelCollection(h, cap=cap, backend=backend)
    if suffix_levels is None:
        suffix_levels = LevelCollection(h.reversed(), cap=cap, backend=backend)
    ka, kb = (k + 1) // 2, k // 2
    left = prefix_levels.level(ka)
    right = suffix_levels.level(kb) if kb else _empty_set(suffix_levels.text)
    stats = stats or VerifyStats()
    return any(verify_prefix_suffix(a, b, stats) for a in left for b in right)


def palindromic_length_info(h, fallback: bool = True, cap: int = DEFAULT_CAP,
                            backend: str | None = None,
                            stats: VerifyStats | None = None) -> tuple[int, bool]:
    """``(k, used_fallback)`` for the smallest ``k`` with the text in ``PAL^k``."""
    h = as_handle(h)
    n = h.length
    if n == 0:
        return 0, False
    pre = LevelCollection(h, cap=cap, backend=backend)
    suf = LevelCollection(h.reversed(), cap=cap, backend=backend)
    limit = kmax_for(n)
    for k in range(1, n + 1):
        if fallback and k > limit:
            return dp_palindromic_length(h), True
        if is_k_palindromic(h, k, pre, suf, stats):
            return k, False
    raise AssertionError("every nonempty text is a product of single letters")


def palindromic_length(h, fallback: bool = True, cap: int = DEFAULT_CAP,
                       backend: str | None = None, stats: VerifyStats | None = None) -> int:
    """Smallest ``k`` with the text in ``PAL^k``.

    With ``fallback`` the quadratic dynamic program takes over once ``k``
    passes :func:`kmax_for`, where the affine route stops paying off.
    """
    return palindromic_length_info(h, fallback, cap, backend, stats)[0]
