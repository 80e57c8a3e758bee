"""Bracket table, gradings, embeddings, and the element parser."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from heisvir import (
    CD,
    CDI,
    CI,
    LieElement,
    NONHOMOGENEOUS,
    basis_window,
    bracket,
    degree,
    format_element,
    igen,
    jacobiator,
    parse_element,
    parse_gen,
    vir_embed,
    xgen,
)
from heisvir.scalars import random_rational


def el(gen, coeff=1) -> LieElement:
    return LieElement.from_gen(gen, Fraction(coeff))


def test_witt_part_without_center():
    assert bracket(xgen(1), xgen(2)) == el(xgen(3))
    assert bracket(xgen(3), xgen(-1)) == el(xgen(2), -4)


def test_virasoro_central_term():
    # the cubic term switches on only at opposite indices
    assert bracket(xgen(2), xgen(-2)) == el(xgen(0), -4) + el(CD, Fraction(1, 2))
    assert bracket(xgen(3), xgen(-3)) == el(xgen(0), -6) + el(CD, 2)
    assert bracket(xgen(1), xgen(-1)) == el(xgen(0), -2)


def test_mixed_bracket_and_anomaly():
    assert bracket(xgen(1), igen(3)) == el(igen(4), 3)
    # [x_n, I(-n)] carries the n^2+n anomaly on the mixing center
    assert bracket(xgen(1), igen(-1)) == el(igen(0), -1) + el(CDI, 2)
    assert bracket(xgen(-1), igen(1)) == el(igen(0)) + el(CDI, 0)
    assert bracket(xgen(2), igen(-2)) == el(igen(0), -2) + el(CDI, 6)


def test_heisenberg_part():
    assert bracket(igen(1), igen(-1)) == el(CI)
    assert bracket(igen(2), igen(-2)) == el(CI, 2)
    assert bracket(igen(1), igen(2)).is_zero()
    assert bracket(igen(0), igen(5)).is_zero()


@pytest.mark.parametrize("center", [CD, CDI, CI])
def test_centers_are_central(center):
    for g in basis_window(3):
        assert bracket(center, g).is_zero()
        assert bracket(g, center).is_zero()


def test_antisymmetry_window_3():
    gens = basis_window(3)
    for a in gens:
        for b in gens:
            assert (bracket(a, b) + bracket(b, a)).is_zero()


def test_jacobi_window_3():
    gens = basis_window(3)
    for a in gens:
        for b in gens:
            for c in gens:
                assert jacobiator(a, b, c).is_zero()


def test_jacobi_on_elements():
    a = parse_element("x[2] - 3*I[-1]")
    b = parse_element("1/2*x[-2] + I[1]")
    c = parse_element("x[0] + CD")
    assert jacobiator(a, b, c).is_zero()


def test_degree_grading():
    assert degree(xgen(4)) == 4
    assert degree(igen(-2)) == -2
    assert degree(CD) == 0
    assert degree(el(xgen(3)) + el(igen(3), 5)) == 3
    assert degree(el(xgen(1)) + el(xgen(2))) is NONHOMOGENEOUS
    # bracket respects the grading
    assert degree(bracket(xgen(2), igen(-5))) == -3


def test_basis_window_contents():
    gens = basis_window(3)
    assert len(gens) == 17
    assert xgen(-3) in gens and igen(3) in gens and CI in gens


def test_vir_embed_closure_small():
    rng = random.Random(5)
    for _ in range(5):
        e = random_rational(rng)
        for n in range(-4, 5):
            for m in range(-4, 5):
                lhs = bracket(vir_embed(e, n), vir_embed(e, m))
                rhs = vir_embed(e, n + m).scale(Fraction(m - n))
                if n + m == 0:
                    rhs = rhs + el(CD, Fraction(n**3 - n, 12))
                assert lhs == rhs


def test_vir_embed_zero_mode_shift():
    e = Fraction(3, 2)
    l0 = vir_embed(e, 0)
    expected = (
        el(xgen(0))
        + el(igen(0), e)
        + el(CDI, -e)
        + el(CI, -e * e / 2)
    )
    assert l0 == expected
    assert vir_embed(e, 2) == el(xgen(2)) + el(igen(2), e)


def test_element_arithmetic():
    a = el(xgen(1), 2) + el(igen(0), -1)
    assert a.scale(Fraction(1, 2)) == el(xgen(1)) + el(igen(0), Fraction(-1, 2))
    assert (a - a).is_zero()
    assert not bool(a - a)
    assert bool(a)
    assert -a == a.scale(Fraction(-1))


def test_parse_gen():
    assert parse_gen("x[2]") == xgen(2)
    assert parse_gen(" I[-4] ") == igen(-4)
    assert parse_gen("CDI") == CDI
    with pytest.raises(ValueError):
        parse_gen("x[2]+x[3]")
    with pytest.raises(ValueError):
        parse_gen("y[2]")


def test_parse_element_round_trip():
    cases = [
        "x[2]",
        "x[-2]",
        "-I[-1]",
        "3/2*x[2] - I[-1] + CD",
        "x[0] + I[0] - 3/2*CDI - 9/8*CI",
    ]
    for text in cases:
        e = parse_element(text)
        assert parse_element(format_element(e)) == e


def test_parse_element_negative_indices():
    assert parse_element("x[-2]") == el(xgen(-2))
    assert parse_element("x[2]-I[-1]") == el(xgen(2)) + el(igen(-1), -1)
    assert parse_element("-1/3*I[-5]") == el(igen(-5), Fraction(-1, 3))


def test_parse_element_rejects_garbage():
    for bad in ["", "x[", "x[a]", "2 *", "x[1] ++ x[2]", "CD*CD"]:
        with pytest.raises(ValueError):
            parse_element(bad)


def test_format_zero():
    assert format_element(LieElement()) == "0"
