"""Affine prefix sets and the set-preserving transforms between their
representations.

A representation ``<X, (Q_1, l_1, u_1) ... (Q_t, l_t, u_t)>`` over a text
``T`` generates every ``X Q_1^a_1 ... Q_t^a_t`` with ``l_i <= a_i <= u_i``.
When all of these are prefixes of ``T`` the base ``X`` is itself a prefix,
so it is stored as a length.  Component words are :class:`StringRef` values.
Component positions passed to the transforms are 1-based.
"""

from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass
from math import prod

from .errors import ContractViolation, InvalidRepresentation, TransformInapplicable
from .text_model import BaseText, StringRef, TextHandle, max_periodic_extension, rotation

# extra repetitions added to flexible components when testing strong affinity
EXPAND_SLACK = 5

# negative-control hook for ``oracle-check``; see ``injected_mutation``
_MUTATION: str | None = None


@contextlib.contextmanager
def injected_mutation(name: str):
    """Temporarily break one transform on purpose.

    ``"switch-shift"`` rotates by one position too many in switches and
    ``"split-bound"`` drops the top exponent when splitting.
    """
    global _MUTATION
    old, _MUTATION = _MUTATION, name
    try:
        yield
    finally:
        _MUTATION = old


@dataclass(frozen=True)
class Component:
    word: StringRef
    low: int
    high: int

    def __post_init__(self):
        if self.word.length < 1:
            raise ContractViolation("component word must be nonempty")
        if not 1 <= self.low <= self.high:
            raise ContractViolation(f"bad exponent range [{self.low}, {self.high}]")

    @property
    def length(self) -> int:
        return self.word.length

    @property
    def fixed(self) -> bool:
        return self.low == self.high

    @property
    def flexible(self) -> bool:
        return self.low < self.high

    def with_bounds(self, low: int, high: int) -> Component:
        return Component(self.word, low, high)

    def __repr__(self) -> str:
        return f"({self.word.text()!r},{self.low},{self.high})" if self.length <= 24 else (
            f"(<{self.length}>,{self.low},{self.high})"
        )


@dataclass(frozen=True, eq=False)
class AffineRepr:
    text: TextHandle
    base_len: int
    comps: tuple = ()

    def __post_init__(self):
        if not 0 <= self.base_len <= self.text.length:
            raise ContractViolation(f"base length {self.base_len} outside text of length {self.text.length}")
        object.__setattr__(self, "comps", tuple(self.comps))

    @property
    def order(self) -> int:
        return len(self.comps)

    @property
    def base(self) -> StringRef:
        return StringRef.frag(self.text, 1, self.base_len)

    @property
    def min_len(self) -> int:
        return self.base_len + sum(c.low * c.length for c in self.comps)

    @property
    def max_len(self) -> int:
        return self.base_len + sum(c.high * c.length for c in self.comps)

    def replace(self, base_len: int | None = None, comps=None) -> AffineRepr:
        return AffineRepr(
            self.text,
            self.base_len if base_len is None else base_len,
            self.comps if comps is None else tuple(comps),
        )

    def signature(self) -> tuple:
        """Hashable summary: base length plus ``(len, low, high)`` per component."""
        return (self.base_len,) + tuple((c.length, c.low, c.high) for c in self.comps)

    def __repr__(self) -> str:
        return describe(self)


def describe(r: AffineRepr) -> str:
    if r.base_len <= 24:
        base = repr(r.text.materialize(1, r.base_len)) if r.base_len else "''"
    else:
        base = f"<{r.base_len}>"
    return "<" + base + "," + "".join(repr(c) for c in r.comps) + ">"


def _check_pos(r: AffineRepr, pos: int, need_next: bool) -> None:
    last = r.order - 1 if need_next else r.order
    if not 1 <= pos <= last:
        raise TransformInapplicable(f"position {pos} outside 1..{last}")


def _switch_pair(a: Component, b: Component) -> tuple[Component, Component]:
    y = (b.low * b.length) % a.length
    if _MUTATION == "switch-shift":
        y += 1
    return b, Component(rotation(a.word, y), a.low, a.high)


def switch(r: AffineRepr, pos: int) -> AffineRepr:
    """Move fixed component ``pos+1`` in front of flexible component ``pos``."""
    _check_pos(r, pos, True)
    a, b = r.comps[pos - 1], r.comps[pos]
    if not (a.flexible and b.fixed):
        raise TransformInapplicable("switch needs a flexible component followed by a fixed one")
    comps = list(r.comps)
    comps[pos - 1], comps[pos] = _switch_pair(a, b)
    return r.replace(comps=comps)


def merge(r: AffineRepr, pos: int) -> AffineRepr:
    """Fuse two adjacent flexible components over the same word."""
    _check_pos(r, pos, True)
    a, b = r.comps[pos - 1], r.comps[pos]
    if not (a.flexible and b.flexible and a.length <= b.length):
        raise TransformInapplicable("merge needs two flexible components with |Q_r| <= |Q_r+1|")
    if a.word != b.word:
        raise InvalidRepresentation("adjacent flexible components of non-decreasing length differ")
    comps = list(r.comps)
    comps[pos - 1:pos + 1] = [Component(a.word, a.low + b.low, a.high + b.high)]
    return r.replace(comps=comps)


def _split_pair(c: Component) -> list[Component]:
    top = c.high - c.low + 1
    if _MUTATION == "split-bound" and top > 1:
        top -= 1
    return [Component(c.word, c.low - 1, c.low - 1), Component(c.word, 1, top)]


def split(r: AffineRepr, pos: int) -> AffineRepr:
    """Peel the mandatory repetitions of a component off into a fixed one."""
    _check_pos(r, pos, False)
    c = r.comps[pos - 1]
    if c.low <= 1:
        raise TransformInapplicable("split needs a lower bound above one")
    comps = list(r.comps)
    comps[pos - 1:pos] = _split_pair(c)
    return r.replace(comps=comps)


def truncate(r: AffineRepr) -> AffineRepr:
    """Absorb a fixed first component into the base."""
    if r.order == 0 or not r.comps[0].fixed:
        raise TransformInapplicable("truncate needs a fixed first component")
    c = r.comps[0]
    return r.replace(base_len=r.base_len + c.low * c.length, comps=r.comps[1:])


def apply_transform(r: AffineRepr, kind: str, pos: int = 1) -> AffineRepr:
    if kind == "switch":
        return switch(r, pos)
    if kind == "merge":
        return merge(r, pos)
    if kind == "split":
        return split(r, pos)
    if kind == "truncate":
        return truncate(r)
    raise ContractViolation(f"unknown transform {kind!r}")


def remove_fixed(r: AffineRepr) -> AffineRepr:
    """Switch every fixed component to the front, then truncate them all."""
    comps = list(r.comps)
    moved = True
    while moved:
        moved = False
        for k in range(len(comps) - 1):
            if comps[k].flexible and comps[k + 1].fixed:
                comps[k], comps[k + 1] = _switch_pair(comps[k], comps[k + 1])
                moved = True
    base = r.base_len
    k = 0
    while k < len(comps) and comps[k].fixed:
        base += comps[k].low * comps[k].length
        k += 1
    return AffineRepr(r.text, base, comps[k:])


def make_irreducible(r: AffineRepr) -> AffineRepr:
    """Equivalent representation with unit lower bounds and strictly
    decreasing component lengths.  ``r`` must be a prefix set."""
    r = remove_fixed(r)
    merged: list[Component] = []
    for c in r.comps:
        if merged and merged[-1].length == c.length:
            prev = merged[-1]
            if prev.word != c.word:
                raise InvalidRepresentation("flexible components of equal length differ")
            merged[-1] = Component(prev.word, prev.low + c.low, prev.high + c.high)
        else:
            if merged and merged[-1].length < c.length:
                raise InvalidRepresentation("flexible component lengths increase")
            merged.append(c)
    comps: list[Component] = []
    for c in merged:
        if c.low > 1:
            comps.extend(_split_pair(c))
        else:
            comps.append(c)
    return remove_fixed(AffineRepr(r.text, r.base_len, comps))


def is_irreducible(r: AffineRepr) -> bool:
    lens = [c.length for c in r.comps]
    return all(c.low == 1 < c.high for c in r.comps) and all(
        a > b for a, b in zip(lens, lens[1:])
    )


def expand(r: AffineRepr, slack: int = EXPAND_SLACK) -> AffineRepr:
    return r.replace(comps=[
        Component(c.word, c.low, c.high + slack) if c.flexible else c for c in r.comps
    ])


def is_prefix_set(r: AffineRepr) -> bool:
    """Exact test that every generated string is a prefix of ``r.text``.

    The maximal string must be a prefix, and for every flexible component
    ``Q_r`` the maximal tail starting at it must have period ``|Q_r|``.
    Both conditions are necessary, and together they are sufficient.
    """
    text = r.text
    end = r.max_len
    if end > text.length:
        return False
    starts = []
    pos = r.base_len + 1
    for c in r.comps:
        starts.append(pos)
        w = c.word.text()
        for _ in range(c.high):
            if text.materialize(pos, pos + c.length - 1) != w:
                return False
            pos += c.length
    for c, start in zip(r.comps, starts):
        if c.flexible and max_periodic_extension(text, start, c.length) < end:
            return False
    return True


def is_strongly_affine(r: AffineRepr) -> bool:
    return is_prefix_set(expand(r))


def is_canonical(r: AffineRepr) -> bool:
    return is_irreducible(r) and is_strongly_affine(r)


def length_dominated(r: AffineRepr, slack: int = EXPAND_SLACK) -> bool:
    """``|Q_r| > sum over j > r of |Q_j^(u_j + slack)|`` for every ``r``."""
    tail = 0
    for c in reversed(r.comps):
        if c.length <= tail:
            return False
        tail += (c.high + slack) * c.length
    return True


def cardinality(r: AffineRepr) -> int:
    """Number of exponent tuples; the set size when ``r`` is irreducible."""
    return prod(c.high - c.low + 1 for c in r.comps)


def relocate(r: AffineRepr) -> AffineRepr:
    """Point every component word at the text position where it provably
    occurs.  Valid for prefix sets; drops references to temporary texts."""
    pos = r.base_len + 1
    comps = []
    for c in r.comps:
        comps.append(Component(StringRef.frag(r.text, pos, c.length), c.low, c.high))
        pos += c.low * c.length
    return r.replace(comps=comps)


def make_strong_partition(r: AffineRepr) -> list[AffineRepr]:
    """Split a prefix set into at most ``6^t`` canonical pieces."""
    r = make_irreducible(r)
    if r.order == 0:
        return [r]
    choices = []
    for c in r.comps:
        opts = {(u, u) for u in range(max(1, c.high - 4), c.high + 1)}
        opts.add((c.low, max(c.low, c.high - EXPAND_SLACK)))
        choices.append(sorted(opts))
    out = []
    for combo in itertools.product(*choices):
        comps = [c.with_bounds(lo, hi) for c, (lo, hi) in zip(r.comps, combo)]
        out.append(make_irreducible(r.replace(comps=comps)))
    return out


def truncate_to_length(r: AffineRepr, m: int) -> list[AffineRepr]:
    """Representations of the generated strings of length at most ``m``.

    ``r`` must be irreducible (or at least have the periodic length
    structure of an irreducible prefix set).  Returns at most ``t`` pieces.
    """
    comps = r.comps
    tail_max = [0] * (len(comps) + 1)
    for i in range(len(comps) - 1, -1, -1):
        tail_max[i] = tail_max[i + 1] + comps[i].high * comps[i].length
    if r.order == 0:
        return [r] if r.base_len <= m else []
    out = []
    prefix = r.base_len
    for i, c in enumerate(comps):
        # smallest exponent whose longest completion overshoots m
        a = max(c.low, (m - prefix - tail_max[i + 1]) // c.length + 1)
        if a > c.high:
            out.append(AffineRepr(r.text, prefix, comps[i:]))
            break
        if a > c.low:
            out.append(AffineRepr(r.text, prefix, (c.with_bounds(c.low, a - 1),) + comps[i + 1:]))
        prefix += a * c.length
        if prefix > m:
            break
    return out


def suffix_components(r: AffineRepr) -> list[StringRef]:
    """For each ``j``, the length-``|Q_j|`` suffix of ``Q_1^u_1 ... Q_t^u_t``.

    ``r`` must be a prefix set, so that this string is a factor of the text.
    """
    end = r.max_len
    return [StringRef.frag(r.text, end - c.length + 1, c.length) for c in r.comps]


def suffix_shift(r: AffineRepr) -> int:
    """``sum over i >= 2 of (u_i + 1) |Q_i|``."""
    return sum((c.high + 1) * c.length for c in r.comps[1:])


def reverse_structure(r: AffineRepr) -> AffineRepr:
    """The reversed tail structure of a canonical representation.

    With ``s`` the shift of :func:`suffix_shift`, the result lives over
    ``rev(rot^s(Q_1))`` and generates the reversals of the suffixes of
    ``rot^s(Q_1)`` that the components ``2..t`` can produce.
    """
    if r.order == 0:
        return AffineRepr(BaseText(r.text.materialize(1, 0)), 0, ())
    q1 = r.comps[0].word
    target = rotation(q1, suffix_shift(r)).view.reversed()
    comps = [Component(StringRef.frag(target, 1, c.length), 1, c.high) for c in r.comps[1:]]
    return AffineRepr(target, 0, comps)


def concat(a: AffineRepr, b: AffineRepr) -> AffineRepr:
    """Representation of ``{xy : x in a, y in b}`` over ``a.text``.

    The base of ``b`` becomes a fixed pseudo-component which is then moved
    out of the way.  All products must be prefixes of ``a.text``.
    """
    mid = [Component(b.base, 1, 1)] if b.base_len else []
    return remove_fixed(AffineRepr(a.text, a.base_len, a.comps + tuple(mid) + b.comps))


def member_length(r: AffineRepr, L: int) -> bool:
    """Does ``r`` generate a string of length ``L``?"""
    comps = r.comps
    lo_tail = [0] * (len(comps) + 1)
    hi_tail = [0] * (len(comps) + 1)
    for i in range(len(comps) - 1, -1, -1):
        lo_tail[i] = lo_tail[i + 1] + comps[i].low * comps[i].length
        hi_tail[i] = hi_tail[i + 1] + comps[i].high * comps[i].length

    def go(i: int, rem: int) -> bool:
        if i == len(comps):
            return rem == 0
        c = comps[i]
        a_lo = max(c.low, -(-(rem - hi_tail[i + 1]) // c.length))
        a_hi = min(c.high, (rem - lo_tail[i + 1]) // c.length)
        return any(go(i + 1, rem - a * c.length) for a in range(a_lo, a_hi + 1))

    return go(0, L - r.base_len)


def _symbols_to_json(s):
    return s.decode("latin-1") if isinstance(s, bytes) else s


def _json_to_symbols(s, like):
    return s.encode("latin-1") if isinstance(like, bytes) else s


def to_json(r: AffineRepr) -> dict:
    """Serializable form; words that occur at their structural offset are
    written as text fragments ``{"frag": [start, len]}``."""
    comps = []
    pos = r.base_len + 1
    for c in r.comps:
        w = c.word.text()
        if pos + c.length - 1 <= r.text.length and r.text.materialize(pos, pos + c.length - 1) == w:
            word = {"frag": [pos, c.length]}
        else:
            word = _symbols_to_json(w)
        comps.append({"word": word, "low": c.low, "high": c.high})
        pos += c.low * c.length
    return {"base": {"frag": [1, r.base_len]}, "comps": comps, "order": r.order}


def from_json(obj: dict, text: TextHandle) -> AffineRepr:
    base = obj["base"]
    if isinstance(base, dict):
        start, length = base["frag"]
        if start != 1:
            raise ContractViolation("base fragment must start at position 1")
        base_len = length
    else:
        base_len = len(base)
    comps = []
    like = text.materialize(1, 0)
    for c in obj["comps"]:
        w = c["word"]
        if isinstance(w, dict):
            ref = StringRef.frag(text, w["frag"][0], w["frag"][1])
        else:
            ref = StringRef.lit(_json_to_symbols(w, like))
        comps.append(Component(ref, c["low"], c["high"]))
    r = AffineRepr(text, base_len, comps)
    if "order" in obj and obj["order"] != r.order:
        raise ContractViolation("order field disagrees with component list")
    return r
