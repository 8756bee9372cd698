"""Shared helpers for the test suite: seeded random exact values and forms."""

from fractions import Fraction

from formbench.scalars import GaussianRational


def rational(rng, lo=-4, hi=4, max_den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def gaussian(rng, lo=-4, hi=4):
    return GaussianRational(rational(rng, lo, hi), rational(rng, lo, hi))


def nonzero_gaussian(rng):
    while True:
        value = gaussian(rng)
        if value:
            return value


def random_poly(rng, table, max_terms=3, max_exp=2):
    poly = table.zero()
    for _ in range(rng.randint(0, max_terms)):
        exponents = {
            name: rng.randint(0, max_exp)
            for name in rng.sample(list(table.names), min(2, len(table.names)))
        }
        poly = poly + table.monomial(exponents, gaussian(rng))
    return poly


def random_form(rng, model, degree=None, bidegree=None, max_terms=2):
    """A random constant-coefficient form with monomials in one slot."""
    if bidegree is not None:
        monomials = model.monomials_of_bidegree(*bidegree)
    else:
        monomials = model.monomials_of_degree(degree)
    form = model.coframe.zero_form()
    if not monomials:
        return form
    count = rng.randint(1, max_terms)
    for mon in rng.sample(monomials, min(count, len(monomials))):
        names = [model.coframe.generators[p].name for p in mon]
        form = form + model.coframe.monomial_form(names, gaussian(rng))
    return form


def random_closed_two_form(rng, model, max_terms=3):
    """Random degree-2 form on a model with zero differential (all closed)."""
    return random_form(rng, model, degree=2, max_terms=max_terms)
