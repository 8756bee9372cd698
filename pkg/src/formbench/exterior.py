"""The free graded-commutative bigraded algebra on a coframe of degree-one
generators: wedge products, powers, conjugation, bidegree decomposition and
top-degree integration.

Monomials are kept in a fixed canonical order: all (1,0) generators by index,
then all (0,1) generators by index.  Every sign in the package is normalized
to this order, which keeps rendered output and golden comparisons
deterministic.  Forms and coframes are immutable and all operations are pure,
so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModelMismatch, UnknownVariable


@dataclass(frozen=True)
class Generator:
    """A degree-one generator of type (1,0) or (0,1).

    ``index`` is the 1-based ordinal within the generator's bidegree class;
    sign tables for Gram entries are stated in terms of these ordinals.
    """

    name: str
    bidegree: tuple
    index: int

    @property
    def holomorphic(self):
        return self.bidegree == (1, 0)


def sort_with_sign(positions):
    """Sort generator positions, counting transpositions.

    Returns (sign, tuple) with sign 0 when a generator repeats.
    """
    items = list(positions)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and items[j - 1] == items[j]:
            return 0, None
    return sign, tuple(items)


def merge_monomials(left, right):
    """Merge two canonical monomials, counting the transpositions needed to
    interleave them.  Returns (sign, tuple) with sign 0 on a repeated
    generator."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    merged = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return 0, None
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            j += 1
            if (len(left) - i) % 2:
                sign = -sign
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


class Coframe:
    """An ordered family of degree-one generators with bidegrees, an optional
    conjugation pairing, a scalar variable table and an optional volume
    monomial (spanning the top exterior power).
    """

    def __init__(self, generators, table, conjugates=None, volume=None,
                 volume_variable="V"):
        generators = tuple(generators)
        n_holo = sum(1 for g in generators if g.holomorphic)
        for pos, gen in enumerate(generators):
            if gen.bidegree not in ((1, 0), (0, 1)):
                raise ValueError(f"{gen.name}: bidegree must be (1,0) or (0,1)")
            expected = pos + 1 if gen.holomorphic else pos - n_holo + 1
            if not gen.holomorphic and pos < n_holo:
                raise ValueError("generators must list all (1,0) before (0,1)")
            if gen.index != expected:
                raise ValueError(
                    f"{gen.name}: expected ordinal {expected}, got {gen.index}"
                )
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        clash = set(names) & set(table.names)
        if clash:
            raise ValueError(f"names shared by generators and scalars: {clash}")
        self.generators = generators
        self.table = table
        self.n_holomorphic = n_holo
        self.n_antiholomorphic = len(generators) - n_holo
        self.position = {g.name: i for i, g in enumerate(generators)}
        conj = [None] * len(generators)
        if conjugates:
            for name, mate in conjugates.items():
                i, j = self.position[name], self.position[mate]
                if generators[i].bidegree == generators[j].bidegree:
                    raise ValueError(f"{name} and {mate} have the same type")
                conj[i], conj[j] = j, i
        self.conjugate_position = tuple(conj)
        if volume is None:
            self.volume_monomial = None
            self.volume_sign = 1
        else:
            listed = [self.position[name] for name in volume]
            if sorted(listed) != list(range(len(generators))):
                raise ValueError("volume must name every generator exactly once")
            sign, mon = sort_with_sign(listed)
            self.volume_monomial = mon
            self.volume_sign = sign
        self.volume_variable = volume_variable
        if volume is not None and volume_variable not in table.names:
            raise ValueError(f"scalar table must declare {volume_variable}")

    def __repr__(self):
        names = ",".join(g.name for g in self.generators)
        return f"<Coframe {names}>"

    def monomial_bidegree(self, monomial):
        p = sum(1 for pos in monomial if pos < self.n_holomorphic)
        return (p, len(monomial) - p)

    # -- form constructors ---------------------------------------------------

    def zero_form(self):
        return Form(self, {})

    def unit(self, scalar=1):
        return Form(self, {(): self.table.coerce(scalar)})

    def generator_form(self, name):
        if name not in self.position:
            raise UnknownVariable(name)
        return Form(self, {(self.position[name],): self.table.one()})

    def monomial_form(self, names, coefficient=1):
        positions = [self.position[n] for n in names]
        sign, mon = sort_with_sign(positions)
        if sign == 0:
            return self.zero_form()
        coeff = self.table.coerce(coefficient) * Fraction(sign)
        return Form(self, {mon: coeff})

    def form(self, terms):
        """Build a form from {monomial names tuple: coefficient}."""
        total = self.zero_form()
        for names, coeff in terms.items():
            total = total + self.monomial_form(names, coeff)
        return total


class Form:
    """A sparse element of the exterior algebra: canonical monomials mapped to
    polynomial coefficients."""

    __slots__ = ("coframe", "terms")

    def __init__(self, coframe, terms):
        object.__setattr__(self, "coframe", coframe)
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    def _check(self, other):
        if other.coframe is not self.coframe:
            raise ModelMismatch("forms over different coframes")

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.coframe is other.coframe and self.terms == other.terms

    __hash__ = None

    # -- additive structure --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Form(self.coframe, terms)

    def __neg__(self):
        return Form(self.coframe, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    # -- multiplicative structure ---------------------------------------------

    def scaled(self, scalar):
        coeff = self.coframe.table.coerce(scalar)
        return Form(self.coframe, {m: c * coeff for m, c in self.terms.items()})

    def wedge(self, other):
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, mon = merge_monomials(m1, m2)
                if sign == 0:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = terms.get(mon)
                s = c if s is None else s + c
                if s:
                    terms[mon] = s
                else:
                    terms.pop(mon, None)
        return Form(self.coframe, terms)

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.wedge(other)
        return self.scaled(other)

    def __rmul__(self, other):
        # scalars commute past the coefficient ring
        return self.scaled(other)

    def power(self, k):
        """k-th wedge power by binary exponentiation; power 0 is the unit."""
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.coframe.unit()
        base = self
        while k:
            if k & 1:
                result = result.wedge(base)
            base = base.wedge(base)
            k >>= 1
        return result

    __pow__ = power

    # -- grading ---------------------------------------------------------------

    def bidegrees(self):
        return sorted({self.coframe.monomial_bidegree(m) for m in self.terms})

    def bidegree(self):
        """The (p,q) of a homogeneous form, None for zero or mixed forms."""
        degrees = self.bidegrees()
        if len(degrees) == 1:
            return degrees[0]
        return None

    def total_degree(self):
        degrees = {len(m) for m in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def component(self, p, q):
        """Projection onto the monomials of bidegree (p, q)."""
        wanted = (p, q)
        return Form(
            self.coframe,
            {m: c for m, c in self.terms.items()
             if self.coframe.monomial_bidegree(m) == wanted},
        )

    def degree_component(self, k):
        return Form(
            self.coframe, {m: c for m, c in self.terms.items() if len(m) == k}
        )

    # -- involution, evaluation, integration -----------------------------------

    def conjugate(self):
        """Antilinear involution swapping bidegrees (p,q) <-> (q,p)."""
        conj = self.coframe.conjugate_position
        terms = {}
        for m, c in self.terms.items():
            mapped = []
            for pos in m:
                if conj[pos] is None:
                    raise UnknownVariable(
                        f"{self.coframe.generators[pos].name} has no conjugate"
                    )
                mapped.append(conj[pos])
            sign, mon = sort_with_sign(mapped)
            coeff = c.conjugate()
            if sign < 0:
                coeff = -coeff
            s = terms.get(mon)
            terms[mon] = coeff if s is None else s + coeff
        return Form(self.coframe, terms)

    def substitute(self, assignment):
        return Form(
            self.coframe,
            {m: c.substitute(assignment) for m, c in self.terms.items()},
        )

    def integrate(self):
        """The coefficient of the declared volume monomial times the formal
        total volume V; lower-degree components contribute zero."""
        cf = self.coframe
        if cf.volume_monomial is None:
            raise ValueError("coframe has no volume monomial")
        coeff = self.terms.get(cf.volume_monomial)
        if coeff is None:
            return cf.table.zero()
        v = cf.table.variable(cf.volume_variable)
        return coeff * Fraction(cf.volume_sign) * v

    # -- rendering ---------------------------------------------------------------

    def _coefficient_text(self, coeff):
        if coeff == self.coframe.table.one():
            return ""
        minus_one = self.coframe.table.constant(-1)
        if coeff == minus_one:
            return "-"
        text = str(coeff)
        if len(coeff.terms) > 1 or ("+" in text or "-" in text[1:]):
            return f"({text})*"
        return f"{text}*"

    def __str__(self):
        if not self.terms:
            return "0"
        names = [g.name for g in self.coframe.generators]
        pieces = []
        for mon, coeff in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            body = "^".join(names[p] for p in mon)
            if not body:
                pieces.append(str(coeff) if len(coeff.terms) == 1 else f"({coeff})")
                continue
            pieces.append(f"{self._coefficient_text(coeff)}{body}")
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def __repr__(self):
        return f"<Form {self}>"


def wedge(a, b):
    return a.wedge(b)


def power(form, k):
    return form.power(k)


def conjugate_form(form):
    return form.conjugate()


def integrate(form):
    return form.integrate()


def bidegree_component(form, p, q):
    return form.component(p, q)
