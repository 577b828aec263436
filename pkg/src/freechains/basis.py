"""The ordered basis of effective words and expansions in counting quasimorphisms.

Every homogeneous class function ``f`` on the free group is a (possibly
infinite) combination ``sum r_w phi_w`` over basis words ``w``.  The
coefficients are determined one at a time in the well order,

    r_w = f(w) - sum_{w' < w} r_{w'} phi_{w'}(w),

and only finitely many terms of that sum are nonzero, so truncating the
basis at a length cutoff gives exact coefficients up to that length.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .counting import Oracle, phi
from .words import (
    DEFAULT,
    Alphabet,
    Word,
    WordError,
    cyclic_reduce,
    inverse,
    multiply,
    orient,
    power,
    random_reduced_word,
    well_order_key,
)


class OracleError(WordError):
    """The supplied function is not a homogeneous class function."""


def lyndon_reduced_words(n: int, alphabet: Alphabet = DEFAULT) -> Iterator[Word]:
    """Reduced Lyndon words of length ``n``, in lexicographic order.

    Fredricksen-Kessler-Maiorana generation over the ordered alphabet; a
    prefix with an adjacent inverse pair is never extended.
    """
    order = alphabet.order
    k = len(order)
    inv = [alphabet.position(s.swapcase()) for s in order]
    a = [0] * (n + 1)

    def gen(t: int, p: int) -> Iterator[Word]:
        if t > n:
            if p == n:
                yield "".join(order[i] for i in a[1:])
            return
        for j in range(a[t - p], k):
            if t > 1 and j == inv[a[t - 1]]:
                continue
            a[t] = j
            yield from gen(t + 1, p if j == a[t - p] else t)

    if n >= 1:
        yield from gen(1, 1)


def iter_effective_words(n: int, alphabet: Alphabet = DEFAULT) -> Iterator[Word]:
    """All effective words of length ``n``."""
    for w in lyndon_reduced_words(n, alphabet):
        if n == 1 or w[0] != w[-1].swapcase():
            yield w


@dataclass(frozen=True)
class BasisEnumeration:
    cutoff: int
    words: tuple[Word, ...]

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)


def enumerate_basis(cutoff: int, alphabet: Alphabet = DEFAULT) -> BasisEnumeration:
    """Basis words of length at most ``cutoff``, in the well order."""
    if cutoff < 1:
        raise WordError("basis cutoff must be at least 1")
    words = []
    for n in range(1, cutoff + 1):
        # Lyndon generation is already lexicographic within a length.
        words.extend(w for w in iter_effective_words(n, alphabet) if orient(w, alphabet)[1] == 1)
    return BasisEnumeration(cutoff, tuple(words))


def check_homogeneous(oracle: Oracle, alphabet: Alphabet = DEFAULT, samples: int = 32, seed: int = 0) -> None:
    """Reject oracles that visibly fail ``f(g^2) = 2 f(g)`` or ``f(hgh^-1) = f(g)``.

    Passing proves nothing; it only catches obvious misuse.
    """
    rng = random.Random(seed)
    for _ in range(samples):
        g = random_reduced_word(rng, rng.randint(1, 6), alphabet)
        h = random_reduced_word(rng, rng.randint(1, 4), alphabet)
        fg = oracle(g)
        if oracle(power(g, 2)) != 2 * fg:
            raise OracleError(f"{oracle.name} is not homogeneous at {alphabet.format(g)!r}")
        if oracle(multiply(h, g, inverse(h))) != fg:
            raise OracleError(
                f"{oracle.name} is not a class function at {alphabet.format(g)!r} "
                f"conjugated by {alphabet.format(h)!r}"
            )


@dataclass(frozen=True)
class Expansion:
    cutoff: int
    coefficients: dict[Word, Fraction]
    oracle: str
    alphabet: Alphabet = field(default=DEFAULT)

    def items(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.coefficients.items(), key=lambda t: well_order_key(t[0], self.alphabet))

    def coeff(self, w: Word) -> Fraction:
        return self.coefficients.get(w, Fraction(0))

    def exact_for(self, g: Word) -> bool:
        """Whether evaluation at ``g`` reproduces the expanded function exactly."""
        return len(cyclic_reduce(g).core) <= self.cutoff

    def to_json(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "oracle": self.oracle,
            "alphabet": str(self.alphabet),
            "coefficients": [
                {"word": self.alphabet.format(w), "coeff": str(r)} for w, r in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str, alphabet: Alphabet | None = None) -> Expansion:
        if isinstance(data, str):
            data = json.loads(data)
        if alphabet is None:
            alphabet = Alphabet.from_spec(data.get("alphabet", DEFAULT.order))
        coeffs = {}
        for item in data["coefficients"]:
            w = alphabet.parse(item["word"])
            b, sign = orient(w, alphabet)
            if sign != 1 or b != w:
                raise WordError(f"{item['word']!r} is not a basis word")
            coeffs[w] = Fraction(item["coeff"])
        return cls(int(data["cutoff"]), coeffs, data.get("oracle", "?"), alphabet)


def _seen_by(w: Word) -> set[Word]:
    # Words shorter than w whose counting quasimorphism can be nonzero on w:
    # they or their inverses occur in w^2.
    ww = w + w
    n = len(w)
    out = set()
    for length in range(1, n):
        for i in range(n):
            u = ww[i : i + length]
            out.add(u)
            out.add(inverse(u))
    return out


def expand(oracle: Oracle, cutoff: int, alphabet: Alphabet = DEFAULT, check: bool = True) -> Expansion:
    """Coefficients of a homogeneous class function on the basis up to ``cutoff``."""
    if check:
        check_homogeneous(oracle, alphabet)
    coeffs: dict[Word, Fraction] = {}
    for w in enumerate_basis(cutoff, alphabet):
        r = oracle(w)
        for v in _seen_by(w):
            rv = coeffs.get(v)
            if rv is not None:
                r -= rv * phi(v, w)
        if r:
            coeffs[w] = r
    return Expansion(cutoff, coeffs, oracle.name, alphabet)


def evaluate_expansion(e: Expansion, g: Word) -> Fraction:
    """Evaluate the truncated sum ``sum r_w phi_w(g)``.

    Exact whenever ``e.exact_for(g)``; otherwise a truncation.
    """
    core = cyclic_reduce(g).core
    if not core:
        return Fraction(0)
    cc = core + core
    total = Fraction(0)
    for w, r in e.coefficients.items():
        # Longer effective words vanish on g; shorter ones must occur in core^2.
        if len(w) <= len(core) and (w in cc or inverse(w) in cc):
            total += r * phi(w, g)
    return total
