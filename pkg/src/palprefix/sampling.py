"""Random texts and random valid representations for property checks."""

from __future__ import annotations

import random

from .affine import AffineRepr, Component, is_prefix_set
from .text_model import BaseText, StringRef, is_primitive, max_periodic_extension


def random_word(rng: random.Random, alphabet: str, lo: int, hi: int) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))


def structured_text(rng: random.Random, n: int, alphabet: str = "ab") -> str:
    """Texts rich in runs and nested periodicity, cut to length ``n``."""
    kind = rng.randrange(4)
    if kind == 0:
        s = random_word(rng, alphabet, 1, 3)
        while len(s) < n:
            s = s * rng.randint(2, 4) + random_word(rng, alphabet, 0, 2)
    elif kind == 1:
        a = random_word(rng, alphabet, 1, 3)
        b = random_word(rng, alphabet, 1, 4)
        s = ((a * rng.randint(2, 4) + b) * (n + 1))
    elif kind == 2:
        s = random_word(rng, alphabet, 1, 2)
        while len(s) < n:
            s = s + random_word(rng, alphabet, 0, 2) + s[::-1]
    else:
        s = random_word(rng, alphabet, n, n)
    return s[:n]


def perturbed_ab(n: int, seed: int = 0, cuts: int = 3) -> str:
    """``(ab)^(n/2)`` with ``cuts`` positions overwritten by ``c``."""
    rng = random.Random(seed)
    t = list(("ab" * (n // 2 + 1))[:n])
    for _ in range(cuts):
        t[rng.randrange(n)] = "c"
    return "".join(t)


def random_valid_repr(rng: random.Random, max_order: int = 4, max_word: int = 8,
                      text_len: int = 96, alphabet: str = "ab", tries: int = 10_000) -> AffineRepr:
    """Rejection-sample a representation that is a prefix set of its text.

    Bounds and word lengths are drawn so that mergeable, switchable,
    splittable and truncatable configurations all show up.
    """
    for _ in range(tries):
        text = structured_text(rng, text_len, alphabet)
        h = BaseText(text)
        order = rng.randint(1, max_order)
        base = rng.randint(0, 6)
        pos = base + 1
        comps = []
        prev_len = None
        for _ in range(order):
            if pos > len(text):
                break
            if prev_len is not None and rng.random() < 0.3:
                L = prev_len
            else:
                cands = [p for p in range(1, max_word + 1)
                         if pos + p - 1 <= len(text)
                         and max_periodic_extension(h, pos, p) - pos + 1 >= 2 * p]
                L = rng.choice(cands) if cands and rng.random() < 0.85 else rng.randint(1, max_word)
            if pos + L - 1 > len(text):
                break
            word = text[pos - 1:pos - 1 + L]
            low = rng.randint(1, 3)
            high = low if rng.random() < 0.3 or not is_primitive(word) else low + rng.randint(1, 3)
            comps.append(Component(StringRef.frag(h, pos, L), low, high))
            pos += low * L
            prev_len = L
        if not comps:
            continue
        r = AffineRepr(h, base, comps)
        if r.max_len <= len(text) and is_prefix_set(r):
            return r
    raise RuntimeError("no valid representation sampled")
