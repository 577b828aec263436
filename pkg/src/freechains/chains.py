"""Rational 1-chains, their normal form, and certified scl lower bounds.

A chain ``sum r_i g_i`` is brought to normal form in the quotient by
``g^n ~ n g`` and ``g ~ h g h^-1``: every term becomes a multiple of a
basis word (an effective word chosen from each inverse pair).  A nonzero
normal form is always seen by the counting quasimorphism of one of its
longest basis words, which gives ``scl >= value / 8``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .counting import phi
from .words import (
    DEFAULT,
    Alphabet,
    InvariantError,
    Word,
    WordError,
    abelianize,
    effective_rep,
    inverse,
    orient,
    primitive_decompose,
    well_order_key,
)

DEFECT_BOUND = Fraction(4)


@dataclass(frozen=True)
class Chain:
    terms: tuple[tuple[Fraction, Word], ...]

    def __post_init__(self):
        terms = tuple((Fraction(r), g) for r, g in self.terms)
        for r, g in terms:
            if not g:
                raise WordError("identity element is not allowed as a chain term")
        object.__setattr__(self, "terms", tuple((r, g) for r, g in terms if r != 0))

    @classmethod
    def of(cls, *words: Word) -> Chain:
        """The chain ``g_1 + ... + g_n`` with unit coefficients."""
        return cls(tuple((Fraction(1), g) for g in words))

    def __add__(self, other: Chain) -> Chain:
        return Chain(self.terms + other.terms)

    def __neg__(self) -> Chain:
        return Chain(tuple((-r, g) for r, g in self.terms))

    def __iter__(self) -> Iterator[tuple[Fraction, Word]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class NormalChain:
    """Coefficients of a chain on the basis words; zeros never stored."""

    coeffs: dict[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {w: Fraction(r) for w, r in self.coeffs.items() if r != 0})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: NormalChain) -> NormalChain:
        out = dict(self.coeffs)
        for w, r in other.coeffs.items():
            out[w] = out.get(w, Fraction(0)) + r
        return NormalChain(out)

    def items(self, alphabet: Alphabet = DEFAULT) -> list[tuple[Word, Fraction]]:
        """Terms sorted by the well order."""
        return sorted(self.coeffs.items(), key=lambda t: well_order_key(t[0], alphabet))


@dataclass(frozen=True)
class BoundCertificate:
    witness: Word
    value: Fraction
    defect_bound_used: Fraction = DEFECT_BOUND

    @property
    def bound(self) -> Fraction:
        return self.value / (2 * self.defect_bound_used)


@dataclass(frozen=True)
class SclResult:
    """Outcome of a lower-bound computation: ``zero``, ``bound`` or ``not_a_boundary``."""

    status: str
    certificate: BoundCertificate | None = None

    @property
    def bound(self) -> Fraction | None:
        if self.status == "zero":
            return Fraction(0)
        return None if self.certificate is None else self.certificate.bound


def normalize(c: Chain, alphabet: Alphabet = DEFAULT) -> NormalChain:
    """Rewrite ``c`` on the basis words.

    >>> normalize(Chain.of("abab")).coeffs
    {'ab': Fraction(2, 1)}
    """
    out: dict[Word, Fraction] = {}
    for r, g in c:
        root, m = primitive_decompose(g)
        b, sign = orient(effective_rep(root, alphabet), alphabet)
        out[b] = out.get(b, Fraction(0)) + r * m * sign
    return NormalChain(out)


def is_boundary(c: Chain, alphabet: Alphabet = DEFAULT) -> bool:
    # For a free group, rational 1-boundaries are exactly the chains that
    # vanish in the rational abelianization.
    total = {x: Fraction(0) for x in alphabet.generators}
    for r, g in c:
        for x, e in abelianize(g, alphabet).items():
            total[x] += r * e
    return not any(total.values())


def evaluate(w: Word, c: Chain | NormalChain) -> Fraction:
    """``phi_w`` extended linearly to a chain."""
    terms = c.coeffs.items() if isinstance(c, NormalChain) else ((g, r) for r, g in c)
    return sum((r * phi(w, g) for g, r in terms), Fraction(0))


def _candidates(nc: NormalChain, keys: Iterable[Word], alphabet: Alphabet) -> list[tuple[Fraction, tuple, Word]]:
    out = []
    for k in keys:
        value = evaluate(k, nc)
        w = k if value > 0 else effective_rep(inverse(k), alphabet)
        out.append((abs(value), well_order_key(k, alphabet), w))
    return out


def _best(cands: list[tuple[Fraction, tuple, Word]]) -> tuple[Word, Fraction]:
    # Largest value; ties go to the well-order-smallest basis word.
    value, _, w = min(cands, key=lambda t: (-t[0], t[1]))
    return w, value


def witness(c: Chain, alphabet: Alphabet = DEFAULT) -> tuple[Word, Fraction] | None:
    """An effective word ``w`` with ``phi_w(c) > 0`` and that exact value, or ``None`` for zero chains."""
    nc = normalize(c, alphabet)
    if not nc:
        return None
    top = max(len(k) for k in nc.coeffs)
    keys = [k for k in nc.coeffs if len(k) == top]
    cands = _candidates(nc, keys, alphabet)
    for k, (value, _, w) in zip(keys, cands):
        # Longest basis words see exactly their own coefficient.
        if (value if w == k else -value) != nc.coeffs[k]:
            raise InvariantError(f"phi_{k} of the chain is not its coefficient {nc.coeffs[k]}")
    return _best(cands)


def scl_lower_bound(c: Chain, alphabet: Alphabet = DEFAULT) -> SclResult:
    if not is_boundary(c, alphabet):
        return SclResult("not_a_boundary")
    nc = normalize(c, alphabet)
    if not nc:
        return SclResult("zero")
    w, value = _best(_candidates(nc, nc.coeffs, alphabet))
    top = witness(c, alphabet)
    if value <= 0 or top is None or value < top[1]:
        raise InvariantError(f"bound search lost the witness ({w!r}, {value})")
    return SclResult("bound", BoundCertificate(w, value))


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([^\s+*-][^\s+-]*)\s*")


def parse_chain(text: str, alphabet: Alphabet = DEFAULT) -> Chain:
    """Parse ``3/2*abAB - 2*ab + b``.

    Each term is ``[rational '*'] word``; terms are joined by ``+`` or ``-``.
    """
    text = text.strip()
    if not text:
        raise WordError("empty chain")
    terms = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise WordError(f"cannot parse chain at {text[pos:]!r}")
        sign, coeff, word = m.groups()
        if sign is None and terms:
            raise WordError(f"missing '+' or '-' before {word!r}")
        r = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            r = -r
        g = alphabet.parse(word)
        if not g:
            raise WordError(f"term {m.group().strip()!r} is the identity")
        terms.append((r, g))
        pos = m.end()
    return Chain(tuple(terms))


def chain_from_json(data: str | list, alphabet: Alphabet = DEFAULT) -> Chain:
    items = json.loads(data) if isinstance(data, str) else data
    return Chain(tuple((Fraction(t["coeff"]), alphabet.parse(t["word"])) for t in items))


def format_terms(terms: Iterable[tuple[Fraction, Word]], alphabet: Alphabet = DEFAULT) -> str:
    parts = []
    for r, g in terms:
        body = f"{abs(r)}*{alphabet.format(g, '1')}"
        if parts:
            parts.append(("+ " if r > 0 else "- ") + body)
        else:
            parts.append(body if r > 0 else "-" + body)
    return " ".join(parts) if parts else "0"


def terms_json(terms: Iterable[tuple[Fraction, Word]], alphabet: Alphabet = DEFAULT) -> list[dict]:
    return [{"coeff": str(r), "word": alphabet.format(g)} for r, g in terms]


def normal_terms(nc: NormalChain, alphabet: Alphabet = DEFAULT) -> list[tuple[Fraction, Word]]:
    return [(r, w) for w, r in nc.items(alphabet)]


def certificate_json(cert: BoundCertificate, alphabet: Alphabet = DEFAULT) -> dict:
    return {
        "witness": alphabet.format(cert.witness),
        "value": str(cert.value),
        "bound": str(cert.bound),
        "defect_bound_used": str(cert.defect_bound_used),
    }


def result_json(res: SclResult, alphabet: Alphabet = DEFAULT) -> dict:
    out: dict = {"status": res.status}
    if res.status == "zero":
        out["bound"] = "0"
    if res.certificate is not None:
        out["bound"] = str(res.certificate.bound)
        out["certificate"] = certificate_json(res.certificate, alphabet)
    return out
