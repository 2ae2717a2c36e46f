"""Read-only text handles, word references and small periodicity predicates.

Positions are 1-based and ranges are inclusive, so ``h.materialize(i, j)``
is the factor ``T[i..j]``.  Every view is at most three levels deep: a
power view wraps a slice, a slice wraps a base text.  Symbols are the items
of a ``str`` (code points) or ``bytes`` (octets); both support slicing,
reversal and ``find`` natively, which the fast paths below rely on.
"""

from __future__ import annotations

from .errors import ContractViolation

# chunk used by the native periodic-extension scan before doubling
_FIRST_CHUNK = 32


class TextHandle:
    """Abstract read-only sequence of symbols with O(1) random access."""

    __slots__ = ()
    kind = "abstract"
    length: int

    def __len__(self) -> int:
        return self.length

    def char_at(self, i: int):
        """Unchecked access; the module-level :func:`char_at` validates ``i``."""
        raise NotImplementedError

    def materialize(self, i: int = 1, j: int | None = None):
        """Return ``T[i..j]`` as a native ``str``/``bytes`` object."""
        raise NotImplementedError

    def reversed(self) -> TextHandle:
        raise NotImplementedError

    def fragment(self, start: int, length: int) -> TextHandle:
        raise NotImplementedError

    def power(self, total: int, offset: int = 0) -> TextHandle:
        """The length-``total`` prefix of ``rot^offset(self)`` repeated forever."""
        if self.length == 0:
            if total:
                raise ContractViolation("power of an empty handle")
            return BaseText(self.materialize())
        return PowerView(self, total, offset)

    def _check_fragment(self, start: int, length: int) -> None:
        if length < 0 or start < 1 or start + length - 1 > self.length:
            raise ContractViolation(
                f"fragment [{start}, {start + length - 1}] outside 1..{self.length}"
            )

    def _range(self, i: int, j: int | None) -> tuple[int, int]:
        if j is None:
            j = self.length
        if i < 1 or j > self.length:
            raise ContractViolation(f"range [{i}, {j}] outside 1..{self.length}")
        return i, j

    def __iter__(self):
        for i in range(1, self.length + 1):
            yield self.char_at(i)

    def __repr__(self) -> str:
        if self.length <= 40:
            return f"{type(self).__name__}({self.materialize()!r})"
        return f"{type(self).__name__}(len={self.length})"


class BaseText(TextHandle):
    __slots__ = ("symbols", "length")
    kind = "base"

    def __init__(self, symbols):
        if not isinstance(symbols, (str, bytes)):
            raise ContractViolation("symbols must be str or bytes")
        self.symbols = symbols
        self.length = len(symbols)

    def char_at(self, i: int):
        return self.symbols[i - 1]

    def materialize(self, i: int = 1, j: int | None = None):
        i, j = self._range(i, j)
        return self.symbols[i - 1:j]

    def reversed(self) -> TextHandle:
        return SliceView(self, 1, self.length, True)

    def fragment(self, start: int, length: int) -> TextHandle:
        self._check_fragment(start, length)
        return SliceView(self, start, length, False)


class SliceView(TextHandle):
    """``base[start..start+length-1]``, possibly read backwards."""

    __slots__ = ("base", "start", "length", "rev")

    def __init__(self, base: BaseText, start: int, length: int, rev: bool):
        self.base = base
        self.start = start
        self.length = length
        self.rev = rev

    @property
    def kind(self) -> str:
        return "reversed" if self.rev else "fragment"

    def char_at(self, i: int):
        if self.rev:
            return self.base.symbols[self.start - 1 + self.length - i]
        return self.base.symbols[self.start + i - 2]

    def materialize(self, i: int = 1, j: int | None = None):
        i, j = self._range(i, j)
        s = self.base.symbols
        if self.rev:
            hi = self.start + self.length - i
            lo = self.start + self.length - j - 1
            return s[lo:hi][::-1]
        return s[self.start + i - 2:self.start + j - 1]

    def reversed(self) -> TextHandle:
        return SliceView(self.base, self.start, self.length, not self.rev)

    def fragment(self, start: int, length: int) -> TextHandle:
        self._check_fragment(start, length)
        if self.rev:
            return SliceView(self.base, self.start + self.length - start - length + 1, length, True)
        return SliceView(self.base, self.start + start - 1, length, False)


class PowerView(TextHandle):
    """Character ``i`` is ``src[1 + (offset + i - 1) mod |src|]``."""

    __slots__ = ("src", "length", "offset")
    kind = "power"

    def __init__(self, src: TextHandle, total: int, offset: int = 0):
        if isinstance(src, PowerView):
            if src.length % src.src.length == 0:
                offset += src.offset
                src = src.src
            else:
                src = BaseText(src.materialize())
        if isinstance(src, BaseText):
            src = SliceView(src, 1, src.length, False)
        if src.length == 0:
            raise ContractViolation("power of an empty handle")
        if total < 0:
            raise ContractViolation("negative power length")
        self.src = src
        self.length = total
        self.offset = offset % src.length

    def char_at(self, i: int):
        return self.src.char_at(1 + (self.offset + i - 1) % self.src.length)

    def materialize(self, i: int = 1, j: int | None = None):
        i, j = self._range(i, j)
        size = j - i + 1
        f = self.src.length
        block = self.src.materialize()
        a = (self.offset + i - 1) % f
        if a + size <= f:
            return block[a:a + size]
        reps = (a + size) // f + 1
        return (block * reps)[a:a + size]

    def reversed(self) -> TextHandle:
        f = self.src.length
        return PowerView(self.src.reversed(), self.length, (-self.offset - self.length) % f)

    def fragment(self, start: int, length: int) -> TextHandle:
        self._check_fragment(start, length)
        return PowerView(self.src, length, self.offset + start - 1)


def as_handle(text) -> TextHandle:
    """Wrap ``str``/``bytes`` in a base handle; pass handles through."""
    if isinstance(text, TextHandle):
        return text
    if isinstance(text, StringRef):
        return text.view
    return BaseText(text)


def char_at(h: TextHandle, i: int):
    if not 1 <= i <= h.length:
        raise ContractViolation(f"position {i} outside 1..{h.length}")
    return h.char_at(i)


class StringRef:
    """A word, either a literal or a view into some text handle.

    Equality and hashing are by content.
    """

    __slots__ = ("view",)

    def __init__(self, view: TextHandle):
        self.view = view

    @classmethod
    def lit(cls, symbols) -> StringRef:
        return cls(BaseText(symbols))

    @classmethod
    def frag(cls, handle: TextHandle, start: int, length: int) -> StringRef:
        return cls(handle.fragment(start, length))

    @property
    def variant(self) -> str:
        return "lit" if isinstance(self.view, BaseText) else "frag"

    @property
    def length(self) -> int:
        return self.view.length

    def __len__(self) -> int:
        return self.view.length

    def text(self):
        return self.view.materialize()

    def char_at(self, i: int):
        return self.view.char_at(i)

    def reversed(self) -> StringRef:
        return StringRef(self.view.reversed())

    def __eq__(self, other) -> bool:
        if not isinstance(other, StringRef):
            return NotImplemented
        return self.length == other.length and self.text() == other.text()

    def __hash__(self) -> int:
        return hash(self.text())

    def __repr__(self) -> str:
        if self.length <= 40:
            return f"StringRef({self.text()!r})"
        return f"StringRef(len={self.length})"


def _symbols(w):
    if isinstance(w, StringRef):
        return w.text()
    if isinstance(w, TextHandle):
        return w.materialize()
    return w


def is_palindrome(h: TextHandle, i: int, j: int) -> bool:
    """Is ``h[i..j]`` a palindrome?  Empty ranges count as palindromes."""
    if i > j:
        return True
    s = h.materialize(i, j)
    return s == s[::-1]


def minimal_period(w) -> int:
    """Smallest ``p >= 1`` with ``w[k] = w[k+p]`` wherever both exist."""
    s = _symbols(w)
    n = len(s)
    if n == 0:
        raise ContractViolation("minimal period of the empty word")
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def is_primitive(w) -> bool:
    """True unless ``w = v^a`` for some word ``v`` and ``a >= 2``."""
    s = _symbols(w)
    if len(s) == 0:
        raise ContractViolation("primitivity of the empty word")
    return (s + s).find(s, 1) == len(s)


def rotation(w: StringRef, s: int) -> StringRef:
    """``rot^s(w) = w[s+1..] w[..s]`` with ``s`` taken modulo ``|w|``."""
    if w.length == 0:
        return w
    s %= w.length
    if s == 0:
        return w
    return StringRef(w.view.power(w.length, s))


def reverse_word(w: StringRef) -> StringRef:
    return w.reversed()


def max_periodic_extension(h: TextHandle, start: int, p: int) -> int:
    """Largest ``e`` such that ``h[start..e]`` has period ``p``.

    >>> max_periodic_extension(BaseText("abababab"), 1, 2)
    8
    """
    if p < 1 or start < 1:
        raise ContractViolation("period and start must be positive")
    n = h.length
    if start > n:
        return start - 1
    pos = start + p  # next position whose symbol must equal the one p back
    if pos > n:
        return n
    chunk = _FIRST_CHUNK
    while pos <= n:
        size = min(chunk, n - pos + 1)
        a = h.materialize(pos - p, pos - p + size - 1)
        b = h.materialize(pos, pos + size - 1)
        if a == b:
            pos += size
            chunk *= 2
            continue
        lo, hi = 0, size  # a[:lo] == b[:lo] and a[:hi] != b[:hi]
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if a[:mid] == b[:mid]:
                lo = mid
            else:
                hi = mid
        return pos + lo - 1
    return n


def max_periodic_extension_ref(h: TextHandle, start: int, p: int) -> int:
    """Symbol-at-a-time version of :func:`max_periodic_extension`."""
    n = h.length
    if start > n:
        return start - 1
    i = start + p
    while i <= n and h.char_at(i) == h.char_at(i - p):
        i += 1
    return min(i - 1, n)


def rotation_to_reverse(q: StringRef) -> int | None:
    """The unique ``r`` in ``[0, |q|)`` with ``rot^r(q) = rev(q)``, if any.

    ``q`` must be primitive so that the shift is unique.
    """
    s = q.text()
    r = (s + s).find(s[::-1])
    if r < 0 or r >= len(s):
        return None
    return r


def pal_in_run_check(q: StringRef, len_s: int, len_p: int) -> bool:
    """Is ``S Q^x P`` a palindrome, with ``S`` a length-``len_s`` suffix and
    ``P`` a length-``len_p`` prefix of a power of ``Q``?"""
    s = q.text()
    r = (len_p - len_s) % len(s)
    return (s + s)[r:r + len(s)] == s[::-1]
