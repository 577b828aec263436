"""Independent reference implementations used to check the library.

Nothing here imports from ``freechains``: each function re-derives its answer
the slow, obvious way over the default order a < A < b < B < c < C.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

ORDER = "aAbBcC"


def key(w: str) -> list[int]:
    return [ORDER.index(s) for s in w]


def inv(w: str) -> str:
    return "".join(s.swapcase() for s in reversed(w))


def reduce(raw: str) -> str:
    changed = True
    while changed:
        changed = False
        for i in range(len(raw) - 1):
            if raw[i] == raw[i + 1].swapcase():
                raw = raw[:i] + raw[i + 2 :]
                changed = True
                break
    return raw


def all_reduced(max_len: int, letters: str = "aAbB") -> list[str]:
    out = []
    for n in range(max_len + 1):
        for t in product(letters, repeat=n):
            w = "".join(t)
            if reduce(w) == w:
                out.append(w)
    return out


def core(g: str) -> str:
    while len(g) >= 2 and g[0] == g[-1].swapcase():
        g = g[1:-1]
    return g


def rotations(w: str) -> list[str]:
    return [w[i:] + w[:i] for i in range(len(w))] or [""]


def primitive(g: str) -> tuple[str, int]:
    c = core(g)
    n = len(c)
    for d in range(1, n + 1):
        if n % d == 0 and c[:d] * (n // d) == c:
            return c[:d], n // d
    raise ValueError("identity")


def min_rotation(w: str) -> str:
    return min(rotations(w), key=key)


def conjugate(g: str, h: str) -> bool:
    return core(h) in rotations(core(g))


def is_effective(w: str) -> bool:
    return bool(w) and core(w) == w and primitive(w)[1] == 1 and min_rotation(w) == w


def occurrences(w: str, g: str) -> list[int]:
    return [i for i in range(len(g) - len(w) + 1) if g[i : i + len(w)] == w]


def disjoint_max(w: str, g: str) -> int:
    """Largest set of pairwise non-overlapping occurrences, by exhaustive search."""
    occ = occurrences(w, g)
    n = len(w)

    def best(i: int, free_from: int) -> int:
        if i == len(occ):
            return 0
        skip = best(i + 1, free_from)
        if occ[i] >= free_from:
            return max(skip, 1 + best(i + 1, occ[i] + n))
        return skip

    return best(0, 0)


def greedy_count(w: str, g: str) -> int:
    count = i = 0
    while True:
        j = g.find(w, i)
        if j < 0:
            return count
        count += 1
        i = j + len(w)


def big_phi(w: str, g: str) -> int:
    return greedy_count(w, g) - greedy_count(inv(w), g)


def word_power(g: str, n: int) -> str:
    if n < 0:
        g, n = inv(g), -n
    out: list[str] = []
    for s in g * n:
        if out and out[-1] == s.swapcase():
            out.pop()
        else:
            out.append(s)
    return "".join(out)


def _periodic_slope(w: str, c: str) -> Fraction:
    # Leftmost-greedy on the infinite word c c c ...: the resume position mod
    # |c| determines the future, so find its cycle and count picks per copy.
    n, m = len(c), len(w)
    long = c * (m // n + 3)
    starts = [r for r in range(n) if long[r : r + m] == w]
    if not starts:
        return Fraction(0)
    seen: dict[int, tuple[int, int]] = {}
    pos = picks = 0
    while pos % n not in seen:
        seen[pos % n] = (pos, picks)
        pos += min((s - pos) % n for s in starts) + m
        picks += 1
    pos0, picks0 = seen[pos % n]
    return Fraction((picks - picks0) * n, pos - pos0)


def phi_cycle(w: str, g: str) -> Fraction:
    """Exact homogenized counting quasimorphism by cycle detection."""
    c = core(g)
    if not c:
        return Fraction(0)
    return _periodic_slope(w, c) - _periodic_slope(inv(w), c)


def slope_estimate(w: str, g: str, lo: int, hi: int) -> Fraction:
    return Fraction(big_phi(w, word_power(g, hi)) - big_phi(w, word_power(g, lo)), hi - lo)


def abelian(g: str, gens: str = "ab") -> dict[str, int]:
    return {x: sum((s == x) - (s == x.upper()) for s in g) for x in gens}


def orient(w: str) -> tuple[str, int]:
    other = min_rotation(core(inv(w)))
    return (w, 1) if key(w) < key(other) else (other, -1)


def basis_words(max_len: int, letters: str = "aAbB") -> list[str]:
    out = [w for w in all_reduced(max_len, letters) if is_effective(w) and orient(w)[1] == 1]
    return sorted(out, key=lambda w: (len(w), key(w)))
