"""Winding numbers, Maslov indices, and index-gluing arithmetic."""

import math
import random
from fractions import Fraction as F

import pytest

from fukaya_flow import errors
from fukaya_flow.maslov import (BoundaryData, LagrangianLineLoop,
                                OperatorPart, figure_boundary_arcs,
                                glued_index, loop_degree, maslov_of_loop,
                                solve_triangle_system,
                                vanishing_triangle_index, winding_number)


def _loop(total_over_pi, convention="dx^dy"):
    return LagrangianLineLoop(((F(0), F(0)), (F(1), F(total_over_pi))),
                              convention)


def test_counterclockwise_loop_conventions():
    assert maslov_of_loop(_loop(2, "dy^dx")) == -1
    assert maslov_of_loop(_loop(2, "dx^dy")) == 1


def test_float_input():
    loop = LagrangianLineLoop(((0.0, 0.0), (1.0, 2.0 * math.pi)), "dy^dx")
    assert maslov_of_loop(loop) == -1


def test_constant_loop():
    assert maslov_of_loop(_loop(0, "dy^dx")) == 0
    assert maslov_of_loop(_loop(0, "dx^dy")) == 0


def test_half_turn_loop_degree():
    # a line half-turn traverses the line circle once
    assert loop_degree(_loop(2)) == 1
    assert loop_degree(_loop(4)) == 2
    assert loop_degree(_loop(-2)) == -1


def test_not_closed():
    with pytest.raises(errors.NotClosed):
        loop_degree(_loop(1))
    with pytest.raises(errors.NotClosed):
        loop_degree(LagrangianLineLoop(((0.0, 0.0), (1.0, 1.0))))


def test_convention_flip_on_fixtures():
    for total in (-4, -2, 0, 2, 4, 6):
        plus = maslov_of_loop(_loop(total, "dx^dy"))
        minus = maslov_of_loop(_loop(total, "dy^dx"))
        assert plus == -minus


def test_additivity_random_concatenations():
    rng = random.Random(3)
    for _ in range(50):
        pieces = []
        for _ in range(rng.randint(2, 5)):
            total = 2 * rng.randint(-3, 3)
            base = F(rng.randint(0, 6))
            breakpoints = [(F(0), base)]
            acc = base
            for _ in range(rng.randint(1, 3)):
                acc += F(total) / 3
                breakpoints.append((F(len(breakpoints)), acc))
            breakpoints.append((F(len(breakpoints)), base + total))
            pieces.append(LagrangianLineLoop(tuple(breakpoints), "dy^dx"))
        concat = []
        for piece in pieces:
            shiftbase = concat[-1][1] - piece.breakpoints[0][1] \
                if concat else F(0)
            for t, a in piece.breakpoints:
                concat.append((F(len(concat)), a + shiftbase))
        whole = LagrangianLineLoop(tuple(concat), "dy^dx")
        assert maslov_of_loop(whole) == sum(maslov_of_loop(p)
                                            for p in pieces)


def test_figure_boundary_pattern():
    arcs, boundary = figure_boundary_arcs()
    assert winding_number(arcs, boundary) == 0


def test_winding_simple_closed_pattern():
    # two flat arcs at transverse lines: two sigma = -pi/2 homotopies
    arcs = [
        LagrangianLineLoop(((F(0), F(0)), (F(1), F(0)))),
        LagrangianLineLoop(((F(0), F(1)), (F(1), F(1)))),
    ]
    assert winding_number(arcs, BoundaryData(punctures=2)) == -1
    assert winding_number(arcs, BoundaryData(punctures=2,
                                             positive_range=True)) == 1


def test_winding_requires_transverse_asymptotics():
    arcs = [
        LagrangianLineLoop(((F(0), F(0)), (F(1), F(0)))),
        LagrangianLineLoop(((F(0), F(0)), (F(1), F(2)))),
    ]
    with pytest.raises(errors.NotClosed):
        winding_number(arcs, BoundaryData(punctures=2))


def test_winding_puncture_count_checked():
    arcs, _ = figure_boundary_arcs()
    with pytest.raises(errors.MismatchedPuncture):
        winding_number(arcs, BoundaryData(punctures=2))


def test_glued_index_pair():
    parts = [OperatorPart("a", 2, {"p": 2}), OperatorPart("b", 2, {"q": 2})]
    assert glued_index(parts, [("a", "p", "b", "q")]) == 2


def test_glued_index_mismatch():
    parts = [OperatorPart("a", 2, {"p": 2}), OperatorPart("b", 2, {"q": 1})]
    with pytest.raises(errors.MismatchedPuncture):
        glued_index(parts, [("a", "p", "b", "q")])
    with pytest.raises(errors.MismatchedPuncture):
        glued_index(parts, [("a", "x", "b", "q")])
    with pytest.raises(errors.MismatchedPuncture):
        glued_index(parts, [])


def test_glued_index_rejects_cycles_and_reuse():
    parts = [OperatorPart("a", 1, {"p": 1, "r": 1}),
             OperatorPart("b", 1, {"q": 1, "s": 1})]
    with pytest.raises(errors.MismatchedPuncture):
        glued_index(parts, [("a", "p", "b", "q"), ("a", "r", "b", "s")])
    with pytest.raises(errors.MismatchedPuncture):
        glued_index(parts + [OperatorPart("c", 1, {"t": 1})],
                    [("a", "p", "b", "q"), ("a", "p", "c", "t")])


def test_glued_index_tree_rebracketing():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(2, 5)
        parts = []
        for i in range(n):
            punctures = {"p%d" % j: rng.randint(0, 3)
                         for j in range(n)}
            parts.append(OperatorPart("part%d" % i,
                                      rng.randint(-3, 5), punctures))
        # random tree: attach each node to an earlier one
        gluings = []
        used = set()
        for i in range(1, n):
            j = rng.randrange(i)
            # pick unused punctures with equal dimension
            for qa in parts[i].punctures:
                if (i, qa) in used:
                    continue
                for qb in parts[j].punctures:
                    if (j, qb) in used:
                        continue
                    if parts[i].punctures[qa] == parts[j].punctures[qb]:
                        gluings.append((parts[i].name, qa,
                                        parts[j].name, qb))
                        used.add((i, qa))
                        used.add((j, qb))
                        break
                else:
                    continue
                break
        if len(gluings) != n - 1:
            continue
        total = glued_index(parts, gluings)
        expected = sum(p.index for p in parts) - sum(
            parts[int(g[0][4:])].punctures[g[1]] for g in gluings)
        assert total == expected
        # gluing order is immaterial
        shuffled = gluings[:]
        rng.shuffle(shuffled)
        assert glued_index(parts, shuffled) == total


def test_triangle_system():
    assert solve_triangle_system(3, -1, -1) == (2, 2)
    # the two defining equations hold
    n, mu, mu_prime = 3, -1, -1
    index_h, index_v = solve_triangle_system(n, mu, mu_prime)
    assert index_v + 3 * index_h - 3 * (n - 1) == n + mu
    assert 2 * index_h - (n - 1) == n + mu_prime


def test_vanishing_triangle_index_general_dimension():
    assert vanishing_triangle_index(4) == {"n": 3, "index_H": 2,
                                           "index_V": 2}
    for k in range(1, 8):
        result = vanishing_triangle_index(2 * k)
        assert result["index_V"] == 2 * k - 2
    with pytest.raises(ValueError):
        vanishing_triangle_index(3)
