import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from freechains.words import (
    DEFAULT,
    Alphabet,
    WordError,
    abelianize,
    all_words,
    are_conjugate,
    cyclic_reduce,
    effective_rep,
    free_reduce,
    inverse,
    is_cyclically_reduced,
    is_effective,
    multiply,
    orient,
    power,
    primitive_decompose,
    random_reduced_word,
    well_order_compare,
)

raw_words = st.text(alphabet="aAbB", max_size=14)
reduced_words = raw_words.map(free_reduce)
nontrivial = reduced_words.filter(bool)


@pytest.mark.parametrize("raw, expected", [("abBA", ""), ("aAb", "b"), ("aabA", "aabA")])
def test_free_reduce(raw, expected):
    assert free_reduce(raw) == expected


def test_free_reduce_rejects_unknown_symbol():
    with pytest.raises(WordError, match="unknown symbol 'c'"):
        free_reduce("abc")
    assert free_reduce("abc", Alphabet.of_rank(3)) == "abc"


@given(raw_words, raw_words)
def test_free_reduce_properties(u, v):
    r = free_reduce(u)
    assert free_reduce(r) == r
    assert len(r) <= len(u)
    assert r == oracles.reduce(u)
    uv = free_reduce(u + v)
    assert len(uv) <= len(u) + len(v)
    assert (len(u) + len(v) - len(uv)) % 2 == 0


@pytest.mark.parametrize("g, core, conj", [("baB", "a", "b"), ("abAB", "abAB", ""), ("", "", "")])
def test_cyclic_reduce(g, core, conj):
    assert cyclic_reduce(g) == (core, conj)


@given(reduced_words)
def test_cyclic_reduce_reconstructs(g):
    core, conj = cyclic_reduce(g)
    assert is_cyclically_reduced(core)
    assert multiply(conj, core, inverse(conj)) == g
    assert core == oracles.core(g)


@pytest.mark.parametrize("g, root, m", [("abab", "ab", 2), ("aabaab", "aab", 2), ("abAB", "abAB", 1)])
def test_primitive_decompose(g, root, m):
    assert primitive_decompose(g) == (root, m)
    assert oracles.primitive(g) == (root, m)


def test_primitive_decompose_identity():
    with pytest.raises(WordError, match="identity has no primitive root"):
        primitive_decompose("")


def test_primitive_decompose_exhaustive_small():
    for g in all_words(10):
        if not g:
            continue
        u, m = primitive_decompose(g)
        assert (u, m) == oracles.primitive(g)
        assert u * m in oracles.rotations(cyclic_reduce(g).core)


@settings(max_examples=300)
@given(nontrivial)
def test_primitive_root_is_effective_after_rotation(g):
    u, m = primitive_decompose(g)
    assert is_effective(effective_rep(u))
    assert m == oracles.primitive(g)[1]


@pytest.mark.parametrize("g, expected", [("ba", "ab"), ("abAB", "abAB"), ("BAA", "AAB")])
def test_effective_rep(g, expected):
    assert effective_rep(g) == expected
    assert oracles.min_rotation(oracles.core(g)) == expected


def test_effective_rep_rejects_powers():
    with pytest.raises(WordError, match=r"\(ab\)\^2"):
        effective_rep("abab")


@settings(max_examples=300)
@given(nontrivial, reduced_words)
def test_effective_rep_is_conjugation_invariant(g, h):
    u, _ = primitive_decompose(g)
    assert effective_rep(multiply(h, u, inverse(h))) == effective_rep(u)


@pytest.mark.parametrize("w, expected", [("a", ("a", 1)), ("A", ("a", -1)), ("AAB", ("aab", -1))])
def test_orient(w, expected):
    assert orient(w) == expected
    assert oracles.orient(w) == expected


@settings(max_examples=300)
@given(nontrivial)
def test_orient_pairs_have_opposite_signs(g):
    w = effective_rep(primitive_decompose(g)[0])
    b, s = orient(w)
    b2, s2 = orient(effective_rep(inverse(w)))
    assert b == b2 and s == -s2


@pytest.mark.parametrize("w1, w2", [("a", "ab"), ("ab", "aab"), ("aab", "abb")])
def test_well_order_compare(w1, w2):
    assert well_order_compare(w1, w2) == -1
    assert well_order_compare(w2, w1) == 1
    assert well_order_compare(w1, w1) == 0


def test_well_order_is_strict_total_order():
    ws = [w for w in oracles.all_reduced(4) if w and is_effective(w)]
    for x, y in combinations(ws, 2):
        assert well_order_compare(x, y) == -well_order_compare(y, x) != 0
    ordered = sorted(ws, key=lambda w: (len(w), oracles.key(w)))
    for x, y, z in zip(ordered, ordered[1:], ordered[2:]):
        assert well_order_compare(x, y) == well_order_compare(y, z) == well_order_compare(x, z) == -1


@pytest.mark.parametrize("g, h, expected", [("ab", "ba", True), ("ab", "AB", False), ("baB", "a", True)])
def test_are_conjugate(g, h, expected):
    assert are_conjugate(g, h) is expected


@given(reduced_words, reduced_words)
def test_are_conjugate_matches_rotation_oracle(g, h):
    assert are_conjugate(g, h) == oracles.conjugate(g, h)
    assert are_conjugate(g, multiply(h, g, inverse(h)))


@pytest.mark.parametrize("g, expected", [("abAB", {"a": 0, "b": 0}), ("aab", {"a": 2, "b": 1}), ("", {"a": 0, "b": 0})])
def test_abelianize(g, expected):
    assert abelianize(g) == expected


@given(reduced_words, reduced_words)
def test_abelianize_is_homomorphism(g, h):
    a, b, ab = abelianize(g), abelianize(h), abelianize(multiply(g, h))
    assert ab == {x: a[x] + b[x] for x in "ab"}


@given(nontrivial, st.integers(-4, 4))
def test_power_matches_naive(g, n):
    assert power(g, n) == oracles.word_power(g, n)


def test_alphabet_explicit_order_changes_effective_rep():
    alt = Alphabet("bBaA")
    assert effective_rep("ab", alt) == "ba"
    assert orient("a", alt) == ("a", 1)
    assert Alphabet.from_spec("3") == Alphabet.of_rank(3)


@pytest.mark.parametrize("bad", ["aAb", "aa", "a1A1", "aAbBa"])
def test_alphabet_rejects_malformed_orders(bad):
    with pytest.raises(WordError):
        Alphabet(bad)


def test_named_alphabet_round_trip():
    alpha = Alphabet("aAbBcC", (("a", "x1"), ("b", "x2"), ("c", "x3")))
    assert alpha.parse("x3X2") == "cB"
    assert alpha.format("cB") == "x3X2"
    assert alpha.parse("x1X1") == ""
    with pytest.raises(WordError):
        alpha.parse("x4")


def test_large_rank_uses_non_ascii_symbols():
    alpha = Alphabet.of_rank(30)
    rng = random.Random(0)
    w = random_reduced_word(rng, 20, alpha)
    assert alpha.parse(alpha.format(w)) == w
    assert multiply(w, inverse(w)) == ""
    assert DEFAULT.rank == 2
