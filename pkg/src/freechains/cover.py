"""Finite-index subgroups of a free group given by coset tables.

Cosets are right cosets ``Hx`` and words act on them on the right, letter by
letter from left to right.  Coset 0 is ``H`` itself.

A breadth-first Schreier transversal turns the table into an explicit free
basis of ``H``; Reidemeister-Schreier rewriting then expresses each closed
lift of an element ``g`` as a word in that basis.  The lower bound for
``scl(g)`` is the chain bound for the lifts in ``H`` divided by the index.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .chains import Chain, SclResult, scl_lower_bound
from .words import (
    DEFAULT,
    SYMBOL_POOL,
    Alphabet,
    InvariantError,
    Word,
    WordError,
    are_conjugate,
    effective_rep,
    inverse,
    multiply,
    power,
    primitive_decompose,
)


class TableError(WordError):
    def __init__(self, violations: list[str]):
        super().__init__("invalid coset table: " + "; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class CosetTable:
    """Permutation action of each generator on cosets ``0 .. index-1``."""

    index: int
    action: dict[str, tuple[int, ...]]

    def act(self, coset: int, symbol: str) -> int:
        if symbol.islower():
            return self.action[symbol][coset]
        return self._inverse(symbol.swapcase())[coset]

    def _inverse(self, gen: str) -> tuple[int, ...]:
        cache = self.__dict__.setdefault("_inv", {})
        if gen not in cache:
            perm = self.action[gen]
            inv = [0] * len(perm)
            for i, j in enumerate(perm):
                inv[j] = i
            cache[gen] = tuple(inv)
        return cache[gen]

    def follow(self, coset: int, word: Word) -> int:
        for s in word:
            coset = self.act(coset, s)
        return coset

    def to_json(self) -> dict:
        return {"index": self.index, "action": {x: list(p) for x, p in self.action.items()}}


def validate_table(t: CosetTable, alphabet: Alphabet = DEFAULT) -> list[str]:
    """Describe every way ``t`` fails to be a transitive permutation action; empty if valid."""
    out = []
    d = t.index
    if d < 1:
        return [f"index must be positive, got {d}"]
    for x in alphabet.generators:
        if x not in t.action:
            out.append(f"generator {x}: missing")
    for x, perm in t.action.items():
        if x not in alphabet.generators:
            out.append(f"generator {x}: not a generator of {alphabet}")
            continue
        if len(perm) != d:
            out.append(f"generator {x}: has {len(perm)} entries, expected {d}")
            continue
        bad = [(i, j) for i, j in enumerate(perm) if not 0 <= j < d]
        for i, j in bad:
            out.append(f"generator {x}, coset {i}: image {j} out of range")
        if bad:
            continue
        seen: dict[int, int] = {}
        for i, j in enumerate(perm):
            if j in seen:
                out.append(f"generator {x}: not a permutation (cosets {seen[j]} and {i} both map to {j})")
                break
            seen[j] = i
    if out:
        return out
    reached = {0}
    queue = [0]
    while queue:
        c = queue.pop()
        for s in alphabet.order:
            e = t.act(c, s)
            if e not in reached:
                reached.add(e)
                queue.append(e)
    if len(reached) != d:
        missing = sorted(set(range(d)) - reached)
        out.append(f"not transitive: cosets {missing} unreachable from coset 0")
    return out


def parse_table(text: str) -> CosetTable:
    """Read ``a: 1 0`` lines (coset ``i`` maps to the ``i``-th entry) or the JSON form."""
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        action = data.get("action", data)
        action = {x: tuple(int(v) for v in p) for x, p in action.items() if x != "index"}
    else:
        action = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            gen, sep, rest = line.partition(":")
            if not sep:
                raise WordError(f"table line {lineno}: expected '<generator>: <images>'")
            try:
                action[gen.strip()] = tuple(int(v) for v in rest.split())
            except ValueError:
                raise WordError(f"table line {lineno}: non-integer coset") from None
    if not action:
        raise WordError("empty coset table")
    sizes = {len(p) for p in action.values()}
    return CosetTable(max(sizes), action)


@dataclass(frozen=True)
class SchreierGenerator:
    coset: int
    generator: str
    symbol: str     # letter standing for this generator in the subgroup alphabet
    expression: Word


@dataclass(frozen=True)
class SchreierData:
    table: CosetTable
    ambient: Alphabet
    representatives: dict[int, Word]
    generators: tuple[SchreierGenerator, ...]
    alphabet: Alphabet  # free basis of H, ordered x1 < X1 < x2 < X2 ...

    def symbol_for(self, coset: int, gen: str) -> str | None:
        for s in self.generators:
            if s.coset == coset and s.generator == gen:
                return s.symbol
        return None

    def substitute(self, h: Word) -> Word:
        """The element of the ambient group named by a word in the subgroup basis."""
        expr = {s.symbol: s.expression for s in self.generators}
        return multiply(*(expr[x] if x.islower() else inverse(expr[x.swapcase()]) for x in h))

    def rewrite(self, word: Word, start: int = 0) -> Word:
        """Reidemeister-Schreier rewriting of ``word`` read from coset ``start``.

        The result names ``rep(start) * word * rep(end)^-1``.
        """
        lookup = {(g.coset, g.generator): g.symbol for g in self.generators}
        out = []
        c = start
        for s in word:
            if s.islower():
                x = lookup.get((c, s))
                if x:
                    out.append(x)
                c = self.table.act(c, s)
            else:
                c = self.table.act(c, s)
                x = lookup.get((c, s.swapcase()))
                if x:
                    out.append(x.swapcase())
        return multiply(*out)


def schreier_basis(t: CosetTable, alphabet: Alphabet = DEFAULT) -> SchreierData:
    violations = validate_table(t, alphabet)
    if violations:
        raise TableError(violations)
    reps = {0: ""}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for s in alphabet.order:
            e = t.act(c, s)
            if e not in reps:
                reps[e] = reps[c] + s
                queue.append(e)
    gens = []
    for x in alphabet.generators:
        for c in range(t.index):
            expr = multiply(reps[c], x, inverse(reps[t.act(c, x)]))
            if expr:
                if len(gens) >= len(SYMBOL_POOL):
                    raise WordError(f"subgroup rank exceeds {len(SYMBOL_POOL)}")
                gens.append(SchreierGenerator(c, x, SYMBOL_POOL[len(gens)], expr))
    expected = t.index * (alphabet.rank - 1) + 1
    if len(gens) != expected:
        raise InvariantError(f"found {len(gens)} Schreier generators, expected {expected}")
    sub = Alphabet(
        "".join(g.symbol + g.symbol.swapcase() for g in gens),
        tuple((g.symbol, f"x{i}") for i, g in enumerate(gens, 1)),
    )
    return SchreierData(t, alphabet, reps, tuple(gens), sub)


@dataclass(frozen=True)
class Lift:
    element: Word   # over the subgroup basis
    degree: int
    start_coset: int


def coset_cycles(t: CosetTable, g: Word) -> list[list[int]]:
    """Cycles of the permutation induced by ``g``, each starting at its smallest coset."""
    perm = [t.follow(c, g) for c in range(t.index)]
    seen = set()
    cycles = []
    for c in range(t.index):
        if c in seen:
            continue
        cyc = []
        e = c
        while e not in seen:
            seen.add(e)
            cyc.append(e)
            e = perm[e]
        cycles.append(cyc)
    return cycles


def lift_chain(sd: SchreierData, g: Word) -> list[Lift]:
    """Closed lifts of ``g``: one per cycle of its coset permutation."""
    if not g:
        raise WordError("cannot lift the identity")
    lifts = []
    for cyc in coset_cycles(sd.table, g):
        k = len(cyc)
        lifts.append(Lift(sd.rewrite(g * k, cyc[0]), k, cyc[0]))
    if sum(l.degree for l in lifts) != sd.table.index:
        raise InvariantError("lift degrees do not add up to the index")
    return lifts


@dataclass(frozen=True)
class CoverResult:
    index: int
    lifts: tuple[Lift, ...]
    subgroup: SclResult       # the chain of lifts, inside H
    conjugate_inverse_pair: tuple[int, int] | None

    @property
    def status(self) -> str:
        return self.subgroup.status

    @property
    def bound(self) -> Fraction | None:
        b = self.subgroup.bound
        return None if b is None else b / self.index


def power_conjugate_inverse(lifts: list[Word], alphabet: Alphabet = DEFAULT) -> tuple[int, int] | None:
    """First pair ``(i, j)`` (0-based, ``i <= j``) with ``lifts[i]`` conjugate to ``lifts[j]^-1``."""
    keys = []
    for h in lifts:
        if not h:
            keys.append(None)
            continue
        root, m = primitive_decompose(h)
        keys.append((effective_rep(root, alphabet), m))
    for j, hj in enumerate(lifts):
        if not hj:
            continue
        root, m = primitive_decompose(inverse(hj))
        target = (effective_rep(root, alphabet), m)
        for i in range(j + 1):
            if keys[i] == target:
                return i, j
    return None


def scl_via_cover(sd: SchreierData, g: Word) -> CoverResult:
    """Lower bound for ``scl(g)`` from the chain of its lifts to ``H``."""
    lifts = lift_chain(sd, g)
    chain = Chain.of(*(l.element for l in lifts))
    res = scl_lower_bound(chain, sd.alphabet)
    pair = power_conjugate_inverse([l.element for l in lifts], sd.alphabet)
    return CoverResult(sd.table.index, tuple(lifts), res, pair)


def check_lift(sd: SchreierData, g: Word, lift: Lift) -> bool:
    """Substituting the basis back in gives a conjugate of ``g^degree``."""
    return are_conjugate(sd.substitute(lift.element), power(g, lift.degree))
