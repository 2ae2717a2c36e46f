"""Appending one palindrome to every string of a canonical affine prefix set.

For ``<X, (Q_1,1,u_1) ... (Q_t,1,u_t)>`` the extensions ``S P`` split by the
length of the palindrome ``P``:

* ``|P| >= 2|Q_1|`` and ``S P`` inside the ``Q_1``-run: handled by
  :func:`append_long_in_run`;
* ``|P| >= 2|Q_1|`` with the centre of ``P`` past ``X Q_1^(u_1+3)``: the
  centre part of ``P`` is a palindromic prefix of the text after
  ``X Q_1^(u_1+2)``, handled by :func:`append_long_overhanging`;
* ``|P| < 2|Q_1|``: everything after ``X Q_1^a_1`` lives inside ``Q_1^3``,
  so the problem recurses on the tail over that short text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affine import (
    AffineRepr,
    Component,
    concat,
    relocate,
    suffix_shift,
    truncate_to_length,
)
from .errors import ContractViolation, InternalInvariantError
from .matcher import _backend, periodic_extension, prefix_pal_affine_sets
from .text_model import StringRef, TextHandle, rotation, rotation_to_reverse


@dataclass
class ExtensionBatch:
    sets: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def add(self, reprs, tag: str) -> None:
        for r in reprs:
            self.sets.append(r)
            self.provenance.append(tag)

    @property
    def stats(self) -> dict:
        out: dict[str, int] = {}
        for tag in self.provenance:
            out[tag] = out.get(tag, 0) + 1
        return out


def _reversed_hat(q1: StringRef, s: int, length: int) -> StringRef:
    # reverse of the length-`length` suffix of rot^s(Q_1), which for
    # length <= s is just Q_1[s-length+1..s]
    return StringRef(q1.view.fragment(s - length + 1, length).reversed())


def _require_source(r: AffineRepr) -> None:
    if r.order == 0:
        raise ContractViolation("long-palindrome extension needs order >= 1")


def append_long_in_run(r: AffineRepr, backend: str | None = None) -> list[AffineRepr]:
    """Extensions by palindromes of length at least ``2|Q_1|`` that end
    inside the maximal ``Q_1``-periodic run starting after ``X``.

    The output may also contain shorter extensions ``S P``; every generated
    string is still some ``S`` followed by a palindrome.
    """
    _require_source(r)
    T = r.text
    c1 = r.comps[0]
    q = c1.length
    s = suffix_shift(r)
    r0 = rotation_to_reverse(c1.word)
    if r0 is None:
        return []
    shift = (r0 - s) % q
    run_end = periodic_extension(T, r.base_len + 1, q, backend)
    exps = (run_end - r.base_len) // q
    base = r.base_len + q + shift
    comps = [Component(StringRef.frag(T, base + 1, q), 1, exps)]
    comps += [Component(_reversed_hat(c1.word, s, c.length), 1, c.high) for c in r.comps[1:]]
    lead = AffineRepr(T, base, comps)
    return [relocate(p) for p in truncate_to_length(lead, run_end)]


def batch_alpha(h: TextHandle, word: StringRef, ends, backend: str | None = None) -> list:
    """For each end ``e``, the largest rational ``alpha >= 1`` such that
    ``word^alpha`` is a prefix of ``h[e+1..]``, or ``None``.

    ``alpha * |word|`` is always an integer.  Ends are processed in sorted
    order so that a run found for one end is reused by later ends inside it.
    """
    q = word.length
    w = word.text()
    two_way = _backend(backend) == "two_way"
    n = h.length
    result: dict[int, Fraction | None] = {}
    run_start = run_end = 0
    for e in sorted(set(ends)):
        x = e + 1
        if x + q - 1 > n:
            result[e] = None
            continue
        if two_way:
            hit = all(h.char_at(x + k) == word.char_at(k + 1) for k in range(q))
        else:
            hit = h.materialize(x, x + q - 1) == w
        if not hit:
            result[e] = None
            continue
        if not (run_start <= x and x + q - 1 <= run_end):
            run_start = x
            run_end = periodic_extension(h, x, q, backend)
        result[e] = Fraction(run_end - e, q)
    return [result[e] for e in ends]


def _long_cores(core: list[AffineRepr], min_len: int) -> list[AffineRepr]:
    """Keep only palindromes of length ``>= min_len`` from each core set."""
    out = []
    for C in core:
        if C.order == 0:
            if C.base_len >= min_len:
                out.append(C)
            continue
        c = C.comps[0]
        d = c.length
        a_min = max(1, -(-(min_len - C.base_len) // d))
        if a_min > c.high:
            continue
        base = C.base_len + (a_min - 1) * d
        if a_min == c.high:
            out.append(AffineRepr(C.text, base + d, ()))
        else:
            word = StringRef.frag(C.text, base + 1, d)
            out.append(AffineRepr(C.text, base, (Component(word, 1, c.high - a_min + 1),)))
    return out


def _overhanging(r: AffineRepr, backend: str | None) -> tuple[list[AffineRepr], bool]:
    T = r.text
    n = T.length
    c1 = r.comps[0]
    q, u1 = c1.length, c1.high
    anchor = r.base_len + (u1 + 2) * q  # cores are prefixes of T[anchor+1..]
    if anchor >= n:
        return [], False
    suffix = T.fragment(anchor + 1, n - anchor)
    # a centre beyond X Q_1^(u_1+3) means a core of length at least 2|Q_1|
    cores = _long_cores(prefix_pal_affine_sets(suffix, backend), 2 * q)
    if not cores:
        return [], False

    s = suffix_shift(r)
    rev_q1 = c1.word.reversed()
    wtext = rev_q1.view.power((u1 + 2) * q)
    wcomps = [Component(rotation(c1.word, s).reversed(), 1, u1)]
    wcomps += [Component(_reversed_hat(c1.word, s, c.length), 1, c.high) for c in r.comps[1:]]
    mirror = AffineRepr(wtext, q - s, wcomps)

    heads, ends = [], []
    in_run = False
    for C in cores:
        if C.order == 0:
            end = anchor + C.base_len
            heads.append(AffineRepr(T, end, ()))
            ends.append(end)
            continue
        d = C.comps[0].length
        if d < q:
            raise InternalInvariantError("long core palindrome with period below |Q_1|")
        if d == q:
            in_run = True
            continue
        start = anchor + C.base_len
        word = StringRef.frag(T, start + 1, d)
        heads.append(AffineRepr(T, start, (Component(word, 1, C.comps[0].high),)))
        ends.append(anchor + C.max_len)

    out = []
    for head, alpha in zip(heads, batch_alpha(T, rev_q1, ends, backend)):
        if alpha is None:
            continue
        for tail in truncate_to_length(mirror, int(alpha * q)):
            out.append(relocate(concat(head, tail)))
    return out, in_run


def append_long_overhanging(r: AffineRepr, backend: str | None = None) -> list[AffineRepr]:
    """Extensions by palindromes of length at least ``2|Q_1|`` whose centre
    lies beyond ``X Q_1^(u_1+3)``."""
    _require_source(r)
    out, in_run = _overhanging(r, backend)
    if in_run:
        out = out + append_long_in_run(r, backend)
    return out


def append_long(r: AffineRepr, backend: str | None = None) -> list[AffineRepr]:
    """Covers every extension by a palindrome of length at least ``2|Q_1|``."""
    _require_source(r)
    over, _ = _overhanging(r, backend)
    return append_long_in_run(r, backend) + over


def _append(r: AffineRepr, batch: ExtensionBatch, backend: str | None) -> None:
    T = r.text
    if r.order == 0:
        X = r.base_len
        if X >= T.length:
            return
        suffix = T.fragment(X + 1, T.length - X)
        batch.add(
            (relocate(AffineRepr(T, X + C.base_len, C.comps)) for C in prefix_pal_affine_sets(suffix, backend)),
            "order0",
        )
        return
    batch.add(append_long_in_run(r, backend), "in_run")
    over, _ = _overhanging(r, backend)
    batch.add(over, "overhang")

    c1 = r.comps[0]
    cube = c1.word.view.power(3 * c1.length)
    inner = ExtensionBatch()
    _append(relocate(AffineRepr(cube, 0, r.comps[1:])), inner, backend)
    head = AffineRepr(T, r.base_len, (c1,))
    batch.add((relocate(concat(head, b)) for b in inner.sets), "short")


def append_palindrome_batch(r: AffineRepr, backend: str | None = None) -> ExtensionBatch:
    batch = ExtensionBatch()
    _append(r, batch, backend)
    return batch


def append_palindrome(r: AffineRepr, backend: str | None = None) -> list[AffineRepr]:
    """Representations of exactly ``{S P : S in r, P a palindrome, S P a
    prefix of the text}``.  ``r`` must be canonical."""
    return append_palindrome_batch(r, backend).sets
