import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twograph.catalog import get_entry
from twograph.maps import find_certificate
from twograph.tails import (EventuallyPeriodic, GeneratedPrefix, LatticeWindow, SymmetryReport,
                            TailError, breaking_segment, build_aperiodic_tail,
                            build_minimal_symmetry_tail, detect_symmetries,
                            lattice_label_by_refactor, lattice_window, pair_schedule,
                            render_window, shift_breaks, shift_segment, square_violations,
                            standard_form, tail_blocks, tail_from_dict)
from twograph.words import E, F, degree, parse_word, refactor

from conftest import random_theta, thetas

PERIODIC = {"flip-2x2": (1, 1), "square-2x2": (2, 2), "periodic-2x4": (2, 1),
            "periodic-3x3": (2, 2)}


def th(name):
    return get_entry(name).theta


def random_tail(rng, theta, pre=4, per=3):
    blocks = lambda k: [(rng.randint(1, theta.m), rng.randint(1, theta.n)) for _ in range(k)]
    return EventuallyPeriodic(blocks(rng.randint(0, pre)), blocks(rng.randint(1, per)))


@st.composite
def theta_tail(draw, max_m=3, max_n=3):
    t = draw(thetas(max_m=max_m, max_n=max_n))
    pair = st.tuples(st.integers(1, t.m), st.integers(1, t.n))
    pre = draw(st.lists(pair, max_size=4))
    per = draw(st.lists(pair, min_size=1, max_size=3))
    return t, EventuallyPeriodic(pre, per)


class TestStandardForm:
    def test_already_standard(self):
        tail = standard_form(th("flip-2x2"), (), parse_word("e1 f1 e2 f2"))
        assert tail.blocks(5) == [(1, 1), (2, 2), (1, 1), (2, 2), (1, 1)]

    def test_flip_reordering(self):
        flip = th("flip-2x2")
        per = parse_word("e1 e2 f1 f2")
        tail = standard_form(flip, (), per)
        for copies in (1, 2, 3):
            w = per * copies
            blocks = tail.blocks(2 * copies)
            # the first 2*copies blocks spell a word equal to the prefix
            got = refactor(flip, w, "EF" * (2 * copies))
            assert [(got[2 * s].index, got[2 * s + 1].index) for s in range(2 * copies)] == blocks

    def test_missing_colour(self):
        with pytest.raises(TailError):
            standard_form(th("flip-2x2"), (), parse_word("e1"))

    def test_unbalanced_period(self):
        tail = standard_form(th("periodic-2x4"), parse_word("f1"), parse_word("e1 e2 f3"),
                             min_blocks=10)
        assert isinstance(tail, GeneratedPrefix) and tail.depth() >= 10

    @given(theta_tail(), st.integers(0, 3), st.integers(0, 3))
    def test_balanced_periods_match_refactoring(self, tt, extra_e, extra_f):
        t, _ = tt
        rng = random.Random(extra_e * 7 + extra_f)
        pre = tuple(E(rng.randint(1, t.m)) for _ in range(extra_e)) + \
            tuple(F(rng.randint(1, t.n)) for _ in range(extra_f))
        per = (E(rng.randint(1, t.m)), F(rng.randint(1, t.n)), F(1), E(1))
        tail = standard_form(t, pre, per)
        w = pre + per * 6
        c = min(degree(w))
        k, l = degree(w)
        r = refactor(t, w, "EF" * c + "E" * (k - c) + "F" * (l - c))
        want = [(r[2 * s].index, r[2 * s + 1].index) for s in range(c)]
        assert tail.blocks(c) == want


class TestWindow:
    def test_flip_example(self):
        w = lattice_window(th("flip-2x2"), EventuallyPeriodic([], [(1, 1), (2, 2)]), 2)
        assert (w.i(0, -1), w.i(-1, -1), w.i(0, -2)) == (1, 2, 2)

    def test_diagonal(self):
        rng = random.Random(1)
        for name in PERIODIC:
            t = th(name)
            tail = random_tail(rng, t)
            w = lattice_window(t, tail, 6)
            blocks = tail.blocks(6)
            assert w.i(0, 0) == blocks[0][0]
            for s in range(-5, 1):
                assert (w.i(s, s), w.j(s - 1, s)) == blocks[-s]

    def test_two_by_four_square_consistency(self):
        t = th("periodic-2x4")
        w = lattice_window(t, random_tail(random.Random(2), t), 4)
        assert square_violations(t, w) == []
        for s in range(-2, 1):
            for u in range(-2, 1):
                assert t(w.i(s, u), w.j(s - 1, u)) == (w.i(s, u - 1), w.j(s, u))

    @settings(max_examples=40)
    @given(theta_tail())
    def test_matches_refactor_oracle(self, tt):
        t, tail = tt
        T = 5
        w = lattice_window(t, tail, T)
        assert square_violations(t, w) == []
        blocks = tail.blocks(T)
        for s in range(-T + 1, 1):
            for u in range(-T, 1):
                assert w.i(s, u) == lattice_label_by_refactor(t, blocks, s, u, "e")
        for s in range(-T, 1):
            for u in range(-T + 1, 1):
                assert w.j(s, u) == lattice_label_by_refactor(t, blocks, s, u, "f")

    def test_errors(self):
        t = th("flip-2x2")
        with pytest.raises(ValueError):
            lattice_window(t, EventuallyPeriodic([], [(1, 1)]), 0)
        short = GeneratedPrefix((parse_word("e1 f1 e2 f2"),))
        with pytest.raises(TailError):
            lattice_window(t, short, 3)
        w = lattice_window(t, short, 2)
        with pytest.raises(IndexError):
            w.i(-2, 0)
        with pytest.raises(IndexError):
            w.j(0, -2)

    def test_serialization_and_render(self):
        t = th("square-2x2")
        w = lattice_window(t, random_tail(random.Random(3), t), 5)
        assert LatticeWindow.from_dict(w.to_dict()) == w
        assert w.to_dict()["i_grid"][0][0] is None
        assert len(render_window(w).splitlines()) == 5 + 2


class TestSymmetries:
    def test_flip(self):
        w = lattice_window(th("flip-2x2"), random_tail(random.Random(4), th("flip-2x2")), 6)
        assert (1, -1) in detect_symmetries(w, 2, 2).passing

    def test_two_by_four(self):
        t = th("periodic-2x4")
        w = lattice_window(t, random_tail(random.Random(5), t), 8)
        rep = detect_symmetries(w, 3, 3)
        assert (2, -1) in rep.passing and (0, 0) in rep.passing

    def test_bounds(self):
        w = lattice_window(th("flip-2x2"), EventuallyPeriodic([], [(1, 2)]), 3)
        with pytest.raises(ValueError):
            detect_symmetries(w, 3, 1)

    @given(theta_tail(), st.integers(3, 7))
    def test_report_invariants(self, tt, T):
        t, tail = tt
        rep = detect_symmetries(lattice_window(t, tail, T), T - 1, T - 1, margin=1)
        assert (0, 0) in rep.passing
        assert all((-p, -q) in rep.passing for p, q in rep.passing)
        assert all((-p, -q) in rep.eventual for p, q in rep.eventual)
        # a shift that holds everywhere holds on the trimmed part too
        for p, q in rep.passing:
            if 1 < T - max(abs(p), abs(q)):
                assert (p, q) in rep.eventual
        assert SymmetryReport.from_dict(rep.to_dict()) == rep

    @settings(max_examples=30)
    @given(theta_tail(max_m=2, max_n=2), st.integers(3, 6))
    def test_monotone_in_depth(self, tt, T):
        t, tail = tt
        small = detect_symmetries(lattice_window(t, tail, T), 2, 2).passing
        big = detect_symmetries(lattice_window(t, tail, T + 3), 2, 2).passing
        assert big <= small

    def test_periodic_thetas_give_full_symmetry(self):
        rng = random.Random(6)
        for name, (a, b) in PERIODIC.items():
            t = th(name)
            for _ in range(15):
                tail = random_tail(rng, t)
                for T in (a + b + 2, 2 * (a + b)):
                    rep = detect_symmetries(lattice_window(t, tail, T), a, b)
                    assert (a, -b) in rep.passing, (name, T)


class TestBuilders:
    def test_segments(self):
        assert shift_segment(2, 0) == parse_word("e1 e1 e2")
        assert shift_segment(0, 3) == parse_word("f1 f1 f1 f2")
        assert shift_segment(1, 2) == parse_word("e1 f1 f1 e2")

    def test_schedule_repeats_pairs(self):
        it = pair_schedule()
        first = [next(it) for _ in range(4 + 12 + 24)]
        assert first[:4] == [(0, 1), (1, 0), (1, -1), (1, 1)]
        assert first.count((1, -1)) == 3 and first.count((3, -3)) == 1
        assert all(p > 0 or (p == 0 and q > 0) for p, q in first)

    def test_breaking_segment(self):
        fwd = th("fwd3cycle-2x2")
        seg = breaking_segment(fwd, 1, 1)
        assert seg is not None and shift_breaks(fwd, seg, 1, 1)
        # the (2,-2) shift of the square cannot be broken
        assert breaking_segment(th("square-2x2"), 2, 2, search_bound=5000) is None
        assert breaking_segment(th("square-2x2"), 1, 1) is not None

    def test_aperiodic_forward_three_cycle(self):
        fwd = th("fwd3cycle-2x2")
        tail = build_aperiodic_tail(fwd, 20, 100_000)
        assert len(tail.segments) == 20 and (2, 0) in tail.targets
        k = tail.targets.index((2, 0))
        assert tail.segments[k][:3] == parse_word("e1 e1 e2")
        rep = detect_symmetries(lattice_window(fwd, tail, 10), 4, 4)
        assert rep.passing == {(0, 0)}

    def test_aperiodic_random_certified(self):
        rng = random.Random(8)
        done = 0
        while done < 4:
            t = random_theta(rng, rng.choice([2, 3]), rng.choice([2, 3]))
            if find_certificate(t) is None:
                continue
            tail = build_aperiodic_tail(t, 40, 20_000)
            T = min(tail.depth(), 40)
            rep = detect_symmetries(lattice_window(t, tail, T), 3, 3)
            assert rep.passing == {(0, 0)}, t.to_text()
            done += 1

    def test_minimal_square(self):
        sq = th("square-2x2")
        tail = build_minimal_symmetry_tail(sq, 30)
        rep = detect_symmetries(lattice_window(sq, tail, 40), 4, 4)
        assert rep.passing == {(0, 0), (2, -2), (-2, 2), (4, -4), (-4, 4)}
        assert (1, -1) not in rep.passing

    def test_minimal_flip_and_two_by_four(self):
        flip = th("flip-2x2")
        tail = build_minimal_symmetry_tail(flip, 20)
        rep = detect_symmetries(lattice_window(flip, tail, 30), 3, 3)
        assert rep.passing == {(k, -k) for k in range(-3, 4)}
        p24 = th("periodic-2x4")
        tail = build_minimal_symmetry_tail(p24, 30)
        rep = detect_symmetries(lattice_window(p24, tail, 40), 4, 4)
        assert rep.passing == {(0, 0), (2, -1), (-2, 1), (4, -2), (-4, 2)}

    def test_minimal_needs_period(self):
        with pytest.raises(TailError):
            build_minimal_symmetry_tail(th("fwd3cycle-2x2"), 5)

    def test_round_trip(self):
        tail = build_aperiodic_tail(th("fwd3cycle-2x2"), 6)
        assert tail_from_dict(tail.to_dict()) == tail
        ep = EventuallyPeriodic([(1, 2)], [(2, 1)])
        assert tail_from_dict(ep.to_dict()) == ep

    def test_prefix_segments_need_both_colours(self):
        with pytest.raises(TailError):
            GeneratedPrefix((parse_word("e1 e2"),))
