"""Counting quasimorphisms and exact homogenization.

``big_phi(w, g)`` is the difference between the number of disjoint copies of
``w`` and of ``w^-1`` in ``g``.  Its homogenization ``phi(w, g)`` is computed
exactly: the sequence ``n -> big_phi(w, g^n)`` has eventually periodic
increments, so the limit slope is read off a finite window of powers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Sequence

from .words import (
    DEFAULT,
    Alphabet,
    InvariantError,
    Word,
    WordError,
    cyclic_reduce,
    inverse,
    multiply,
    power,
    random_reduced_word,
)


class PeriodNotFound(InvariantError):
    """The increment sequence did not settle inside the search window."""


def count_disjoint(w: Word, g: Word) -> int:
    """Maximum number of pairwise disjoint occurrences of ``w`` in ``g``.

    Occurrences all have the same length, so taking the leftmost one that
    starts after the previous pick is optimal.  ``str.count`` scans exactly
    that way.
    """
    if not w:
        raise WordError("counting pattern must be nonempty")
    return g.count(w)


def big_phi(w: Word, g: Word) -> int:
    if not w:
        raise WordError("counting pattern must be nonempty")
    return g.count(w) - g.count(inverse(w))


def _slope(values: Sequence[int | Fraction], max_period: int) -> Fraction:
    # Smallest p with v[i+p] - v[i] constant over the whole window.
    for p in range(1, max_period + 1):
        diffs = {values[i + p] - values[i] for i in range(len(values) - p)}
        if len(diffs) == 1:
            return Fraction(diffs.pop()) / p
    raise PeriodNotFound(f"period not found (window {len(values)}, max period {max_period})")


def counting_window(w: Word, core: Word) -> tuple[int, int]:
    """First power and largest period examined when homogenizing ``big_phi(w, .)``."""
    n0 = 2 * (-(-len(w) // max(len(core), 1))) + 2
    return n0, 2 * len(w) + 2


def phi(w: Word, g: Word) -> Fraction:
    """Homogenized counting quasimorphism ``lim big_phi(w, g^n) / n``."""
    if not w:
        raise WordError("counting pattern must be nonempty")
    if not g:
        return Fraction(0)
    core, conj = cyclic_reduce(g)
    tail = inverse(conj)
    w_inv = inverse(w)
    n0, period = counting_window(w, core)
    values = []
    for n in range(n0, n0 + 2 * period + 1):
        s = conj + core * n + tail
        values.append(s.count(w) - s.count(w_inv))
    return _slope(values, period)


@dataclass(frozen=True)
class Oracle:
    """A function from words to rationals, with what is known about it.

    ``window`` maps the cyclic core of ``g`` to ``(first_power, max_period)``
    for homogenization; ``None`` means the generic default.
    """

    name: str
    func: Callable[[Word], int | Fraction]
    homogeneous: bool = False
    defect_bound: Fraction | None = None
    window: Callable[[Word], tuple[int, int]] | None = None

    def __call__(self, g: Word) -> Fraction:
        return Fraction(self.func(g))

    def homogenized(self) -> Oracle:
        if self.homogeneous:
            return self
        bound = None if self.defect_bound is None else 2 * self.defect_bound
        return Oracle(f"h({self.name})", partial(homogenize, self), True, bound)


DEFAULT_WINDOW = (4, 8)


def homogenize(raw: Oracle | Callable[[Word], int | Fraction], g: Word,
               first_power: int | None = None, max_period: int | None = None) -> Fraction:
    """Exact ``lim raw(g^n) / n`` by detecting periodic increments.

    Raises :class:`PeriodNotFound` when no period up to ``max_period`` fits.
    """
    if not g:
        return Fraction(0)
    core = cyclic_reduce(g).core
    n0, period = DEFAULT_WINDOW
    if isinstance(raw, Oracle) and raw.window is not None:
        n0, period = raw.window(core)
    if first_power is not None:
        n0 = first_power
    if max_period is not None:
        period = max_period
    values = [Fraction(raw(power(g, n))) for n in range(n0, n0 + 2 * period + 1)]
    return _slope(values, period)


def counting_oracle(w: Word) -> Oracle:
    """The raw counting quasimorphism of ``w``; defect at most 2."""
    if not w:
        raise WordError("counting pattern must be nonempty")
    return Oracle(f"count:{w}", partial(big_phi, w), False, Fraction(2),
                  partial(counting_window, w))


def phi_oracle(w: Word) -> Oracle:
    """The homogenized counting quasimorphism of ``w``; defect at most 4."""
    if not w:
        raise WordError("counting pattern must be nonempty")
    return Oracle(f"phi:{w}", partial(phi, w), True, Fraction(4))


def syllables(g: Word) -> list[tuple[str, int]]:
    """Maximal single-generator blocks of a reduced word as ``(generator, exponent)``.

    >>> syllables("aabAAA")
    [('a', 2), ('b', 1), ('a', -3)]
    """
    out: list[tuple[str, int]] = []
    for s in g:
        gen, e = s.lower(), (1 if s.islower() else -1)
        if out and out[-1][0] == gen:
            out[-1] = (gen, out[-1][1] + e)
        else:
            out.append((gen, e))
    return out


def even_exponent(g: Word) -> int:
    """Positive even syllable exponents minus negative even ones."""
    total = 0
    for _, e in syllables(g):
        if e % 2 == 0:
            total += 1 if e > 0 else -1
    return total


def even_exponent_oracle() -> Oracle:
    return Oracle("evenexp", even_exponent, False, None)


def abelian_oracle(generator: str) -> Oracle:
    """Exponent sum of one generator: a homomorphism."""
    if len(generator) != 1 or not generator.islower():
        raise WordError(f"not a generator: {generator!r}")
    inv = generator.upper()
    return Oracle(f"abelian:{generator}", lambda g: g.count(generator) - g.count(inv),
                  True, Fraction(0))


def parse_oracle(spec: str, alphabet: Alphabet = DEFAULT) -> Oracle:
    """Build an oracle from ``count:<w>``, ``phi:<w>``, ``evenexp`` or ``abelian:<x>``."""
    kind, _, arg = spec.partition(":")
    if kind == "count":
        return counting_oracle(alphabet.parse(arg))
    if kind == "phi":
        return phi_oracle(alphabet.parse(arg))
    if kind == "evenexp" and not arg:
        if "a" not in alphabet or "b" not in alphabet:
            raise WordError("evenexp needs generators a and b")
        return even_exponent_oracle()
    if kind == "abelian":
        if arg not in alphabet or not arg.islower():
            raise WordError(f"abelian oracle needs a generator of {alphabet}, got {arg!r}")
        return abelian_oracle(arg)
    raise WordError(f"unknown oracle {spec!r}")


def sample_defect(oracle: Oracle | Callable[[Word], int | Fraction], trials: int, max_len: int,
                  seed: int, alphabet: Alphabet = DEFAULT) -> Fraction:
    """Largest ``|o(gh) - o(g) - o(h)|`` over seeded random pairs; a lower bound on the defect."""
    if trials <= 0:
        raise WordError("trials must be positive")
    rng = random.Random(seed)
    worst = Fraction(0)
    for _ in range(trials):
        g = random_reduced_word(rng, rng.randint(0, max_len), alphabet)
        h = random_reduced_word(rng, rng.randint(0, max_len), alphabet)
        d = abs(Fraction(oracle(multiply(g, h))) - Fraction(oracle(g)) - Fraction(oracle(h)))
        if d > worst:
            worst = d
    return worst
