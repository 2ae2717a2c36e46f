"""A family of palindromes whose palindromic-prefix profiles are pairwise
distinct, witnessing that the k-palindromic prefixes carry many bits.

``F(t, 1) = {a^i b^(3^(t+1) - 2i) a^i : 1 <= i <= 2^(t+1)}``, and larger
members are ``U V U`` with ``U`` and ``V`` drawn from smaller families over
disjoint alphabets; every member of ``F(t, s)`` has length ``3^(t+s)``.
Each recursion node gets its own pair of letters, numbered from ``offset``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import ContractViolation, DecodeError, ResourceLimitError
from .oracle import dp_prefix_palindromic_lengths


def _check(t: int, s: int) -> None:
    if t < 1 or s < 1:
        raise ContractViolation("family parameters must be positive")


@lru_cache(maxsize=None)
def pair_count(t: int, s: int) -> int:
    """Number of letter pairs used by one member of ``F(t, s)``."""
    _check(t, s)
    if s == 1:
        return 1
    if t == 1:
        return 2 * pair_count(1, s - 1)
    return pair_count(t - 1, s) + pair_count(t, s - 1)


def letter(i: int) -> str:
    return chr(ord("a") + i) if i < 26 else chr(0x100 + i)


def member_length(t: int, s: int) -> int:
    return 3 ** (t + s)


def _parts(t: int, s: int, offset: int):
    # (t, s, offset) of U, then of V
    u = (1, s - 1) if t == 1 else (t - 1, s)
    v = (t, s - 1)
    return u + (offset,), v + (offset + pair_count(*u),)


@lru_cache(maxsize=None)
def family(t: int, s: int, offset: int = 0) -> tuple[str, ...]:
    _check(t, s)
    if s == 1:
        a, b = letter(2 * offset), letter(2 * offset + 1)
        n = 3 ** (t + 1)
        return tuple(a * i + b * (n - 2 * i) + a * i for i in range(1, 2 ** (t + 1) + 1))
    (ut, us, uo), (vt, vs, vo) = _parts(t, s, offset)
    return tuple(u + v + u for u in family(ut, us, uo) for v in family(vt, vs, vo))


def family_size(t: int, s: int) -> int:
    return len(family(t, s))


def size_lower_bound_bits(t: int, s: int) -> int:
    """``binom(t+s, s)``; the family has at least ``2`` to this many members."""
    return comb(t + s, s)


def palpref_profile(x: str, s: int) -> frozenset:
    """Pairs ``(i, r)`` with ``r <= s`` the palindromic length of ``x[..i]``."""
    pl = dp_prefix_palindromic_lengths(x)
    return frozenset((i, pl[i]) for i in range(1, len(x) + 1) if pl[i] <= s)


def _decode(profile: frozenset, t: int, s: int, offset: int) -> str:
    if s == 1:
        i = 1
        while (i + 1, 1) in profile:
            i += 1
        if i > 2 ** (t + 1):
            raise DecodeError(f"no member of F({t},1) has a palindromic prefix run of {i}")
        return family(t, 1, offset)[i - 1]
    (ut, us, uo), (vt, vs, vo) = _parts(t, s, offset)
    lu = member_length(ut, us)
    lv = member_length(vt, vs)
    u_profile = frozenset((i, r) for i, r in profile if i <= lu and r <= us)
    v_profile = frozenset(
        (i - lu, r - 1) for i, r in profile if lu < i <= lu + lv and 1 <= r - 1 <= vs
    )
    u = _decode(u_profile, ut, us, uo)
    v = _decode(v_profile, vt, vs, vo)
    return u + v + u


def decode(profile, t: int, s: int) -> str:
    """The member of ``F(t, s)`` whose profile is ``profile``."""
    _check(t, s)
    profile = frozenset(profile)
    x = _decode(profile, t, s, 0)
    if palpref_profile(x, s) != profile:
        raise DecodeError("profile does not belong to any family member")
    return x


def gen_family(t: int, s: int, max_len: int = 3**8):
    """Stream the members of ``F(t, s)`` in lexicographic choice order."""
    _check(t, s)
    if member_length(t, s) > max_len:
        raise ResourceLimitError(f"members of F({t},{s}) exceed length {max_len}")
    yield from family(t, s)
