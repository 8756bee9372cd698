import random
from fractions import Fraction

import pytest

from formbench.errors import ConjugationMismatch, UnknownVariable
from formbench.scalars import (
    GaussianRational,
    ScalarFraction,
    VariableTable,
    rational_content,
    substitute_fraction,
)
from support import gaussian, nonzero_gaussian, random_poly

I = GaussianRational(0, 1)


def small_table():
    return VariableTable([("V", "V"), ("t1", "tb1"), ("t2", "tb2"), ("u", None)])


def test_gaussian_basics():
    z = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    assert z + z == GaussianRational(1, Fraction(-3, 2))
    assert z - z == 0
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2
    assert GaussianRational(3, 4) / GaussianRational(3, 4) == 1
    assert (2 + I) ** 3 == (2 + I) * (2 + I) * (2 + I)
    assert GaussianRational(2, -1).norm() == 5


def test_gaussian_division_and_errors():
    assert GaussianRational(1) / GaussianRational(0, 2) == GaussianRational(0, Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)
    with pytest.raises(ValueError):
        GaussianRational(2) ** -1


def test_gaussian_str():
    assert str(GaussianRational(0)) == "0"
    assert str(GaussianRational(Fraction(3, 2))) == "3/2"
    assert str(I) == "i"
    assert str(-I) == "-i"
    assert str(GaussianRational(1, 2)) == "1+2i"
    assert str(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"


def test_conjugation_examples():
    table = small_table()
    # coefficient conjugation
    assert table.constant(I).conjugate() == table.constant(-I)
    # declared pairing
    assert table.variable("t1").conjugate() == table.variable("tb1")
    # antilinearity on a mixed term
    s = table.constant(3) + table.monomial({"t1": 1, "tb2": 1}, GaussianRational(0, 2))
    expected = table.constant(3) + table.monomial(
        {"tb1": 1, "t2": 1}, GaussianRational(0, -2)
    )
    assert s.conjugate() == expected
    # involution
    assert s.conjugate().conjugate() == s


def test_conjugation_requires_declaration():
    table = small_table()
    with pytest.raises(UnknownVariable):
        table.variable("u").conjugate()
    # unused undeclared variables do not block conjugation
    assert table.variable("t1").conjugate() == table.variable("tb1")


def test_substitute_examples():
    table = small_table()
    t1t2 = table.monomial({"t1": 1, "t2": 1})
    assert t1t2.substitute({"t1": 2, "t2": 3}) == table.constant(6)
    # the conjugate value is forced
    assert table.variable("tb1").substitute({"t1": I}) == table.constant(-I)
    # unassigned variables stay formal
    v2 = table.monomial({"V": 2})
    assert v2.substitute({}) == v2


def test_substitute_consistency():
    table = small_table()
    s = table.variable("t1") + table.variable("tb1")
    value = s.substitute({"t1": 1 + I, "tb1": 1 - I})
    assert value == table.constant(2)
    with pytest.raises(ConjugationMismatch):
        s.substitute({"t1": 1 + I, "tb1": 1 + I})
    with pytest.raises(ConjugationMismatch):
        table.variable("V").substitute({"V": I})
    with pytest.raises(UnknownVariable):
        s.substitute({"nope": 1})


def test_ring_axioms_randomized():
    rng = random.Random(101)
    table = small_table()
    for _ in range(120):
        a = random_poly(rng, table)
        b = random_poly(rng, table)
        c = random_poly(rng, table)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + (-a) == table.zero()


def test_conjugation_is_multiplicative():
    rng = random.Random(7)
    table = small_table()
    # restrict to the conjugation-complete variables
    names = ("V", "t1", "tb1", "t2", "tb2")
    for _ in range(100):
        a = table.zero()
        b = table.zero()
        for _ in range(2):
            a = a + table.monomial({rng.choice(names): rng.randint(0, 2)}, gaussian(rng))
            b = b + table.monomial({rng.choice(names): rng.randint(0, 2)}, gaussian(rng))
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_substitute_commutes_with_ring_ops():
    rng = random.Random(17)
    table = small_table()
    for _ in range(100):
        a = random_poly(rng, table)
        b = random_poly(rng, table)
        assignment = {"t1": gaussian(rng), "V": Fraction(rng.randint(-3, 3))}
        lhs = (a * b + a).substitute(assignment)
        rhs = a.substitute(assignment) * b.substitute(assignment) + a.substitute(assignment)
        assert lhs == rhs


def test_polyscalar_structure_helpers():
    table = small_table()
    p = table.monomial({"t1": 2, "V": 1}, 5) + table.constant(1)
    assert not p.is_constant()
    assert p.total_degree() == 3
    assert p.degree_in("t1") == 2
    assert p.variables_used() == {"t1", "V"}
    split = p.coefficients_in("V")
    assert split[0] == table.constant(1)
    assert split[1] == table.monomial({"t1": 2}, 5)
    assert table.constant(Fraction(7, 3)).constant_value() == Fraction(7, 3)
    with pytest.raises(ValueError):
        p.constant_value()


def test_rendering():
    table = small_table()
    p = table.monomial({"t1": 1, "t2": 1, "V": 2}, -16)
    assert str(p) == "-16*V^2*t1*t2"
    q = table.constant(3) - table.variable("t1") * GaussianRational(0, 2)
    assert str(q) == "3 - 2i*t1"
    mixed = table.monomial({"t1": 1}, GaussianRational(1, 2))
    assert str(mixed) == "(1+2i)*t1"
    assert str(table.zero()) == "0"


def test_reserved_imaginary_name():
    with pytest.raises(ValueError):
        VariableTable([("i", "i")])


def test_fraction_equality_is_equivalence():
    rng = random.Random(23)
    table = small_table()
    for _ in range(60):
        num = random_poly(rng, table)
        den = table.zero()
        while not den:
            den = random_poly(rng, table, max_terms=2) + table.constant(
                nonzero_gaussian(rng)
            )
        scale = table.constant(nonzero_gaussian(rng))
        a = ScalarFraction(num, den)
        b = ScalarFraction(num * scale, den * scale)
        c = ScalarFraction(num * scale * scale, den * scale * scale)
        assert a == a
        assert a == b and b == a
        assert b == c and a == c


def test_fraction_arithmetic():
    table = small_table()
    t1 = table.variable("t1")
    half = ScalarFraction(table.one(), table.constant(2))
    assert half + half == 1
    assert half * 2 == table.one()
    assert ScalarFraction(t1, table.constant(2)) / ScalarFraction(t1, table.one()) == half
    with pytest.raises(ZeroDivisionError):
        ScalarFraction(t1, table.zero())


def test_fraction_content_reduction():
    table = small_table()
    frac = ScalarFraction(table.constant(4) * table.variable("t1"), table.constant(6))
    assert rational_content(frac.numerator) == 2
    assert rational_content(frac.denominator) == 3
    assert frac == ScalarFraction(table.variable("t1") * 2, table.constant(3))


def test_substitute_fraction():
    table = small_table()
    # a V^2 + b V + c at V -> 1/u
    poly = (
        table.monomial({"V": 2}, 3)
        + table.monomial({"V": 1, "t1": 1}, 1)
        + table.constant(5)
    )
    u = table.variable("u")
    result = substitute_fraction(poly, "V", ScalarFraction(table.one(), u))
    expected_num = table.constant(3) + table.variable("t1") * u + u * u * 5
    assert result == ScalarFraction(expected_num, u * u)


def test_scalar_rendering_roundtrip():
    from formbench.expressions import parse_scalar

    rng = random.Random(59)
    table = small_table()
    for _ in range(80):
        p = random_poly(rng, table)
        assert parse_scalar(str(p), table) == p
