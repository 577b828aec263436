"""Reduced-word arithmetic in a finitely generated free group.

A word is a plain ``str`` with one character per symbol.  A lowercase letter
is a generator and the matching uppercase letter is its inverse, so inversion
of a word is ``w[::-1].swapcase()``.  The empty string is the identity.

The :class:`Alphabet` fixes which symbols exist and the total order on them;
that order drives the lexicographic comparisons used to pick effective
representatives.  Operations that never compare words (reduction, cyclic
reduction, primitive roots) do not need an alphabet.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

Word = str


class WordError(ValueError):
    """Malformed input: unknown symbols, identity where forbidden, etc."""


class InvariantError(RuntimeError):
    """An internal invariant failed.  Indicates a bug, not bad input."""


def _symbol_pool() -> str:
    # Lowercase characters whose swapcase is a distinct single character that
    # swaps back; these serve as generators once ASCII runs out.
    pool = []
    for cp in list(range(ord("a"), ord("z") + 1)) + list(range(0x3B1, 0x3CA)) + list(range(0x430, 0x450)):
        ch = chr(cp)
        up = ch.swapcase()
        if ch.islower() and len(up) == 1 and up != ch and up.swapcase() == ch:
            pool.append(ch)
    return "".join(pool)


SYMBOL_POOL = _symbol_pool()


@dataclass(frozen=True)
class Alphabet:
    """Ordered symmetric generating set.

    ``order`` lists every symbol once, smallest first.  ``names`` optionally
    maps generators to display names (``{"a": "x1"}``); inverse names are the
    swapcase of the generator's name.
    """

    order: str
    names: tuple[tuple[str, str], ...] = ()
    _pos: dict = field(init=False, repr=False, compare=False)
    _table: dict = field(init=False, repr=False, compare=False)
    _display: dict = field(init=False, repr=False, compare=False)
    _token: re.Pattern | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.order:
            raise WordError("alphabet must contain at least one generator")
        if len(set(self.order)) != len(self.order):
            raise WordError(f"repeated symbol in alphabet order {self.order!r}")
        for s in self.order:
            if not s.isalpha() or s.swapcase() == s or len(s.swapcase()) != 1:
                raise WordError(f"symbol {s!r} has no case-swapped inverse")
            if s.swapcase() not in self.order:
                raise WordError(f"alphabet order {self.order!r} lacks the inverse of {s!r}")
        pos = {s: i for i, s in enumerate(self.order)}
        object.__setattr__(self, "_pos", pos)
        object.__setattr__(self, "_table", str.maketrans({s: chr(0x100 + i) for s, i in pos.items()}))
        display = {s: s for s in self.order}
        for gen, name in self.names:
            if gen not in pos or not gen.islower():
                raise WordError(f"display name given for non-generator {gen!r}")
            display[gen] = name
            display[gen.swapcase()] = name.swapcase()
        if len(set(display.values())) != len(display):
            raise WordError("display names collide")
        object.__setattr__(self, "_display", display)
        token = None
        if self.names:
            alts = sorted(display.values(), key=len, reverse=True)
            token = re.compile("|".join(re.escape(a) for a in alts))
        object.__setattr__(self, "_token", token)

    @classmethod
    def of_rank(cls, rank: int) -> Alphabet:
        """Default order ``a < A < b < B < ...`` on ``rank`` generators."""
        if rank < 1 or rank > len(SYMBOL_POOL):
            raise WordError(f"rank must be between 1 and {len(SYMBOL_POOL)}, got {rank}")
        return cls("".join(g + g.swapcase() for g in SYMBOL_POOL[:rank]))

    @classmethod
    def from_spec(cls, spec: str | int) -> Alphabet:
        """Parse ``"3"`` (a rank) or ``"aAbB"`` (an explicit order)."""
        if isinstance(spec, int):
            return cls.of_rank(spec)
        spec = spec.strip()
        if spec.isdigit():
            return cls.of_rank(int(spec))
        return cls(spec)

    @property
    def rank(self) -> int:
        return len(self.order) // 2

    @property
    def generators(self) -> tuple[str, ...]:
        """Generators in the order their first occurrence appears."""
        return tuple(s for s in self.order if s.islower())

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._pos

    def position(self, symbol: str) -> int:
        return self._pos[symbol]

    def key(self, word: Word) -> str:
        """A string whose native ordering is the lexicographic order on words."""
        return word.translate(self._table)

    def check(self, raw: str) -> None:
        for i, s in enumerate(raw):
            if s not in self._pos:
                raise WordError(f"unknown symbol {s!r} at position {i} in {raw!r}")

    def parse(self, text: str) -> Word:
        """Parse a word in text form and freely reduce it.

        ``"1"`` and the empty string denote the identity.  Whitespace and
        ``.``/``*`` separators are ignored.
        """
        text = re.sub(r"[\s.*·]", "", text)
        if text in ("", "1"):
            return ""
        if self._token is None:
            return free_reduce(text, self)
        inverse_display = {v: k for k, v in self._display.items()}
        out = []
        i = 0
        while i < len(text):
            m = self._token.match(text, i)
            if m is None:
                raise WordError(f"cannot tokenize {text[i:]!r} over {self}")
            out.append(inverse_display[m.group()])
            i = m.end()
        return free_reduce("".join(out), self)

    def format(self, word: Word, identity: str = "") -> str:
        if not word:
            return identity
        return "".join(self._display[s] for s in word)

    def __str__(self) -> str:
        return self.format(self.order)


DEFAULT = Alphabet.of_rank(2)


class CyclicForm(NamedTuple):
    core: Word
    conjugator: Word


def inverse(w: Word) -> Word:
    return w[::-1].swapcase()


def _reduce(raw: str) -> Word:
    stack: list[str] = []
    for s in raw:
        if stack and stack[-1] == s.swapcase():
            stack.pop()
        else:
            stack.append(s)
    return "".join(stack)


def free_reduce(raw: str, alphabet: Alphabet = DEFAULT) -> Word:
    """Freely reduce a symbol sequence.

    >>> free_reduce("abBA")
    ''
    >>> free_reduce("aAb")
    'b'
    """
    alphabet.check(raw)
    return _reduce(raw)


def multiply(*words: Word) -> Word:
    """Product of already-valid words."""
    return _reduce("".join(words))


def is_reduced(w: Word) -> bool:
    return all(w[i] != w[i + 1].swapcase() for i in range(len(w) - 1))


def is_cyclically_reduced(w: Word) -> bool:
    return is_reduced(w) and (len(w) < 2 or w[0] != w[-1].swapcase())


def cyclic_reduce(g: Word) -> CyclicForm:
    """Split a reduced word as ``conjugator + core + inverse(conjugator)``."""
    i, j = 0, len(g) - 1
    while i < j and g[i] == g[j].swapcase():
        i += 1
        j -= 1
    return CyclicForm(g[i : j + 1], g[:i])


def conjugacy_length(g: Word) -> int:
    return len(cyclic_reduce(g).core)


def power(g: Word, n: int) -> Word:
    """Reduced form of ``g**n`` without global re-reduction."""
    if n < 0:
        g, n = inverse(g), -n
    if n == 0 or not g:
        return ""
    core, conj = cyclic_reduce(g)
    return conj + core * n + inverse(conj)


def _smallest_period(w: str) -> int:
    # Knuth-Morris-Pratt failure function; the smallest period of w is
    # len(w) - border(w), and w is a proper power iff that period divides len(w).
    n = len(w)
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and w[k] != w[i]:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    p = n - fail[n]
    return p if n % p == 0 else n


def primitive_decompose(g: Word) -> tuple[Word, int]:
    """Return ``(u, m)`` with ``u`` indivisible, cyclically reduced and ``g`` conjugate to ``u**m``.

    >>> primitive_decompose("abab")
    ('ab', 2)
    >>> primitive_decompose("Bababb")
    ('ab', 2)
    """
    core = cyclic_reduce(g).core
    if not core:
        raise WordError("identity has no primitive root")
    p = _smallest_period(core)
    return core[:p], len(core) // p


def least_rotation(w: Word, alphabet: Alphabet = DEFAULT) -> Word:
    """Lexicographically least cyclic rotation of ``w``."""
    n = len(w)
    if n < 2:
        return w
    kk = alphabet.key(w) * 2
    i = min(range(n), key=lambda i: kk[i : i + n])
    return w[i:] + w[:i]


def effective_rep(g: Word, alphabet: Alphabet = DEFAULT) -> Word:
    """The effective word conjugate to the indivisible element ``g``."""
    root, m = primitive_decompose(g)
    if m != 1:
        raise WordError(
            f"{alphabet.format(g, '1')!r} is divisible: it is conjugate to "
            f"({alphabet.format(root)})^{m}"
        )
    return least_rotation(root, alphabet)


def is_effective(w: Word, alphabet: Alphabet = DEFAULT) -> bool:
    if not w or not is_cyclically_reduced(w):
        return False
    if _smallest_period(w) != len(w):
        return False
    return least_rotation(w, alphabet) == w


def well_order_key(w: Word, alphabet: Alphabet = DEFAULT) -> tuple[int, str]:
    """Sort key for the well order: shorter first, then lexicographic."""
    return len(w), alphabet.key(w)


def well_order_compare(w1: Word, w2: Word, alphabet: Alphabet = DEFAULT) -> int:
    """Return -1, 0 or 1 as ``w1`` is less than, equal to or greater than ``w2``."""
    k1, k2 = well_order_key(w1, alphabet), well_order_key(w2, alphabet)
    return (k1 > k2) - (k1 < k2)


def orient(w: Word, alphabet: Alphabet = DEFAULT) -> tuple[Word, int]:
    """Map an effective word to its basis representative and a sign.

    Of the pair ``{w, effective_rep(w^-1)}`` the well-order-smaller one is
    the basis word; the sign records whether ``w`` itself was chosen.
    """
    other = effective_rep(inverse(w), alphabet)
    if other == w:
        raise InvariantError(f"{w!r} is conjugate to its own inverse")
    if well_order_key(w, alphabet) < well_order_key(other, alphabet):
        return w, 1
    return other, -1


def conjugacy_key(g: Word) -> Word:
    # Any fixed order works here; native code-point order is cheapest.
    core = cyclic_reduce(g).core
    if len(core) < 2:
        return core
    doubled = core * 2
    n = len(core)
    return min(doubled[i : i + n] for i in range(n))


def are_conjugate(g: Word, h: Word) -> bool:
    return conjugacy_key(g) == conjugacy_key(h)


def abelianize(g: Word, alphabet: Alphabet = DEFAULT) -> dict[str, int]:
    """Signed exponent sum of each generator."""
    return {x: g.count(x) - g.count(x.swapcase()) for x in alphabet.generators}


def iter_reduced_words(length: int, alphabet: Alphabet = DEFAULT) -> Iterator[Word]:
    """All reduced words of the given length, in lexicographic order."""
    if length == 0:
        yield ""
        return
    order = alphabet.order

    def extend(prefix: str) -> Iterator[Word]:
        if len(prefix) == length:
            yield prefix
            return
        forbidden = prefix[-1].swapcase() if prefix else None
        for s in order:
            if s != forbidden:
                yield from extend(prefix + s)

    yield from extend("")


def iter_cyclically_reduced_words(length: int, alphabet: Alphabet = DEFAULT) -> Iterator[Word]:
    for w in iter_reduced_words(length, alphabet):
        if len(w) < 2 or w[0] != w[-1].swapcase():
            yield w


def random_reduced_word(rng: random.Random, length: int, alphabet: Alphabet = DEFAULT) -> Word:
    out: list[str] = []
    order = alphabet.order
    for _ in range(length):
        s = rng.choice(order)
        while out and s == out[-1].swapcase():
            s = rng.choice(order)
        out.append(s)
    return "".join(out)


def random_cyclically_reduced_word(rng: random.Random, length: int, alphabet: Alphabet = DEFAULT) -> Word:
    while True:
        w = random_reduced_word(rng, length, alphabet)
        if is_cyclically_reduced(w):
            return w


def all_words(max_length: int, alphabet: Alphabet = DEFAULT) -> Iterator[Word]:
    """Every reduced word of length at most ``max_length``, shortest first."""
    for n in range(max_length + 1):
        yield from iter_reduced_words(n, alphabet)

