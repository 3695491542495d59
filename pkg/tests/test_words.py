import random
from collections import deque
from itertools import product

import pytest
from hypothesis import given, strategies as st

from twograph.words import (E, F, ThetaError, ThetaSpec, degree, format_word, normal_form,
                            parse_theta, parse_word, pattern_of, refactor, swap_ef, swap_fe)

from conftest import random_theta, theta_and_word, thetas

FWD3 = "m 2; n 2; cycle (1,1) (1,2) (2,1)"
TWO_BY_FOUR = "m 2; n 4; cycle (1,2) (2,1) (1,3); cycle (2,2) (2,3) (1,4)"


def w(text):
    return parse_word(text)


def elementary_moves(theta, word):
    """All words one swap away, in either direction."""
    for x in range(len(word) - 1):
        a, b = word[x], word[x + 1]
        if a.color == "e" and b.color == "f":
            j2, i2 = swap_ef(theta, a.index, b.index)
            yield word[:x] + (F(j2), E(i2)) + word[x + 2:]
        elif a.color == "f" and b.color == "e":
            i0, j0 = swap_fe(theta, a.index, b.index)
            yield word[:x] + (E(i0), F(j0)) + word[x + 2:]


def rewriting_class(theta, word):
    seen, queue = {word}, deque([word])
    while queue:
        for nxt in elementary_moves(theta, queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


class TestParse:
    def test_forward_three_cycle(self):
        th = parse_theta(FWD3)
        assert th(1, 1) == (1, 2) and th(1, 2) == (2, 1) and th(2, 1) == (1, 1)
        assert th(2, 2) == (2, 2)

    def test_no_cycles_is_identity(self):
        assert parse_theta("m 2; n 2") == ThetaSpec.identity(2, 2)

    def test_two_by_four_relations(self):
        th = parse_theta(TWO_BY_FOUR)
        # e_i f_j = f_j' e_i' for all eight pairs
        want = {(1, 1): (1, 1), (1, 2): (1, 2), (1, 3): (2, 1), (1, 4): (2, 2),
                (2, 1): (3, 1), (2, 2): (3, 2), (2, 3): (4, 1), (2, 4): (4, 2)}
        assert {(i, j): swap_ef(th, i, j) for i, j in th.pairs()} == want

    def test_comments_and_lines(self):
        th = parse_theta("# the square\nm 2\nn 2\ncycle (1,1) (1,2) (2,2) (2,1)  # 4-cycle\n")
        assert th(2, 1) == (1, 1)

    @pytest.mark.parametrize("text", [
        "m 1; n 1",
        "m 2; n 2; cycle (1,1) (3,1)",
        "m 2; n 2; cycle (1,1) (1,2); cycle (1,2) (2,2)",
        "m 2; cycle (1,1) (1,2)",
        "m 2; n 2; cycle (1,1) junk",
        "m two; n 2",
        "m 2; n 2; rotate (1,1)",
    ])
    def test_rejects(self, text):
        with pytest.raises(ThetaError):
            parse_theta(text)

    def test_non_bijective_table(self):
        with pytest.raises(ThetaError):
            ThetaSpec(1, 2, [[(1, 1), (1, 1)]])

    @given(thetas())
    def test_text_round_trip(self, th):
        assert parse_theta(th.to_text()) == th
        assert parse_theta(th.to_text()).digest() == th.digest()


class TestSwaps:
    def test_forward_three_cycle(self):
        th = parse_theta(FWD3)
        assert swap_ef(th, 1, 1) == (2, 1)
        assert swap_fe(th, 1, 1) == (2, 1)

    def test_two_by_four(self):
        th = parse_theta(TWO_BY_FOUR)
        assert swap_ef(th, 1, 3) == (2, 1)
        assert swap_fe(th, 2, 1) == (1, 3)

    def test_identity_theta_commutes(self):
        th = ThetaSpec.identity(3, 2)
        for i, j in th.pairs():
            assert swap_ef(th, i, j) == (j, i)
            assert swap_fe(th, j, i) == (i, j)

    @given(thetas())
    def test_involution(self, th):
        for i, j in th.pairs():
            j2, i2 = swap_ef(th, i, j)
            assert swap_fe(th, j2, i2) == (i, j)


class TestNormalForm:
    def test_examples(self):
        fwd = parse_theta(FWD3)
        assert normal_form(fwd, w("f1 e1"), "EF") == w("e2 f1")
        assert normal_form(parse_theta(TWO_BY_FOUR), w("e2 e1 f3"), "FE") == w("f3 e2 e1")

    def test_empty(self):
        assert normal_form(ThetaSpec.identity(2, 2), ()) == ()
        assert degree(()) == (0, 0)

    def test_bad_target(self):
        with pytest.raises(ValueError):
            normal_form(ThetaSpec.identity(2, 2), w("e1"), "XY")

    def test_out_of_range_letter(self):
        with pytest.raises(ValueError):
            normal_form(ThetaSpec.identity(2, 2), w("e3 f1"))

    @given(theta_and_word())
    def test_round_trip_and_idempotence(self, tw):
        th, word = tw
        ef = normal_form(th, word, "EF")
        fe = normal_form(th, word, "FE")
        assert normal_form(th, ef, "FE") == fe
        assert normal_form(th, fe, "EF") == ef
        assert normal_form(th, ef, "EF") == ef
        assert pattern_of(ef) == "E" * degree(word)[0] + "F" * degree(word)[1]
        assert degree(ef) == degree(fe) == degree(word)


class TestRefactor:
    def test_examples(self):
        fwd = parse_theta(FWD3)
        assert refactor(fwd, w("e1 f1"), "FE") == w("f2 e1")
        flip = ThetaSpec.from_cycles(2, 2, [[(1, 2), (2, 1)]])
        assert refactor(flip, w("e1 f1 e2 f2"), "EEFF") == w("e1 e1 f2 f2")

    def test_mismatch(self):
        with pytest.raises(ValueError):
            refactor(ThetaSpec.identity(2, 2), w("e1 f1"), "EE")
        with pytest.raises(ValueError):
            refactor(ThetaSpec.identity(2, 2), w("e1 f1"), "EX")

    @given(theta_and_word(), st.randoms(use_true_random=False))
    def test_soundness(self, tw, rnd):
        th, word = tw
        pattern = list(pattern_of(word))
        rnd.shuffle(pattern)
        r = refactor(th, word, pattern)
        assert pattern_of(r) == "".join(pattern)
        assert normal_form(th, r) == normal_form(th, word)
        assert refactor(th, word, pattern_of(word)) == word

    @given(theta_and_word(), st.randoms(use_true_random=False))
    def test_random_swap_schedule(self, tw, rnd):
        th, word = tw
        cur = word
        for _ in range(3 * len(word)):
            moves = list(elementary_moves(th, cur))
            if not moves:
                break
            cur = rnd.choice(moves)
        assert normal_form(th, cur, "EF") == normal_form(th, word, "EF")
        assert normal_form(th, cur, "FE") == normal_form(th, word, "FE")


@pytest.mark.parametrize("seed", range(6))
def test_unique_factorization_by_search(seed):
    """The full rewriting class holds exactly one word per colour pattern."""
    rng = random.Random(seed)
    th = random_theta(rng, rng.randint(1, 3), rng.randint(2, 3))
    k, l = 3, 2
    word = tuple(E(rng.randint(1, th.m)) for _ in range(k)) + tuple(F(rng.randint(1, th.n))
                                                                  for _ in range(l))
    cls = rewriting_class(th, word)
    patterns = {}
    for v in cls:
        patterns.setdefault(pattern_of(v), []).append(v)
    assert all(len(vs) == 1 for vs in patterns.values())
    assert len(patterns) == 10  # C(5, 2) patterns
    for p, (v,) in patterns.items():
        assert refactor(th, word, p) == v


def test_property_sweep_many_random_cases():
    """Ten thousand random cases with m, n <= 5."""
    rng = random.Random(2024)
    for case in range(10_000):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        if m == n == 1:
            n = 2
        th = random_theta(rng, m, n)
        L = rng.randint(0, 10)
        word = tuple(E(rng.randint(1, m)) if rng.random() < 0.5 else F(rng.randint(1, n))
                     for _ in range(L))
        ef, fe = normal_form(th, word, "EF"), normal_form(th, word, "FE")
        assert normal_form(th, ef, "FE") == fe, case
        pat = list(pattern_of(word))
        rng.shuffle(pat)
        r = refactor(th, word, pat)
        assert normal_form(th, r) == ef and degree(r) == degree(word), case
        i, j = rng.randint(1, m), rng.randint(1, n)
        j2, i2 = swap_ef(th, i, j)
        assert swap_fe(th, j2, i2) == (i, j), case


def test_parse_and_format_word():
    assert parse_word("e_1 f2 e_{3}") == (E(1), F(2), E(3))
    assert parse_word("e1f2") == (E(1), F(2))
    assert parse_word("") == ()
    assert format_word(parse_word("e1 f2")) == "e1 f2"
    with pytest.raises(ValueError):
        parse_word("e1 g2")


def test_swapped_theta_is_same_semigroup():
    rng = random.Random(5)
    for _ in range(20):
        th = random_theta(rng, rng.randint(2, 3), rng.randint(2, 4))
        sw = th.swapped()
        assert sw.swapped() == th
        for i, j in th.pairs():
            # e_i f_j = f_j' e_i'  is  E_j' F_i' = F_i E_j  after renaming
            j2, i2 = swap_ef(th, i, j)
            assert swap_ef(sw, j2, i2) == (i, j)
