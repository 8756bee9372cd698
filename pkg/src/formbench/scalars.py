"""Exact coefficient arithmetic: Gaussian rationals extended by named formal
parameters with a conjugation involution.

Everything here is immutable after construction and safe to share between
threads; all operations return fresh values.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ConjugationMismatch, UnknownVariable


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class GaussianRational:
    """An element of Q(i), stored as a pair of reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def of(cls, value):
        if isinstance(value, GaussianRational):
            return value
        return cls(_as_fraction(value))

    @classmethod
    def _maybe(cls, value):
        if isinstance(value, (GaussianRational, int, Fraction)):
            return cls.of(value)
        return None

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        other = GaussianRational._maybe(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational._maybe(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = GaussianRational._maybe(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = GaussianRational._maybe(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        w = self * other.conjugate()
        return GaussianRational(w.re / n, w.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else "-"
        mag = imag.lstrip("-")
        return f"{self.re}{sign}{mag}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


I = GaussianRational(0, 1)

ZERO = GaussianRational(0)

ONE = GaussianRational(1)


class VariableTable:
    """The declared formal parameters of a model and their conjugation pairing.

    Each variable may be paired with a distinct conjugate (t <-> tb), declared
    self-conjugate (a real symbol such as the total volume V), or left without
    a conjugation declaration, in which case conjugation of any scalar
    mentioning it raises UnknownVariable.
    """

    __slots__ = ("names", "_index", "_conj", "_conj_index")

    def __init__(self, declarations=()):
        names = []
        conj = {}
        for decl in declarations:
            if isinstance(decl, str):
                name, mate = decl, None
            else:
                name, mate = decl
            for n in (name, mate):
                if n is not None and n not in names:
                    if n == "i":
                        raise ValueError("'i' is reserved for the imaginary unit")
                    names.append(n)
            if mate is not None:
                if conj.get(name, mate) != mate or conj.get(mate, name) != name:
                    raise ValueError(f"inconsistent conjugate declaration for {name}")
                conj[name] = mate
                conj[mate] = name
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}
        self._conj = conj
        self._conj_index = tuple(
            self._index[conj[n]] if n in conj else None for n in self.names
        )

    def __eq__(self, other):
        if not isinstance(other, VariableTable):
            return NotImplemented
        return self.names == other.names and self._conj == other._conj

    def __hash__(self):
        return hash((self.names, tuple(sorted(self._conj.items()))))

    def __repr__(self):
        return f"VariableTable({self.names!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def conjugate_of(self, name):
        """The declared conjugate of ``name``, or None if undeclared."""
        if name not in self._index:
            raise UnknownVariable(name)
        return self._conj.get(name)

    def zero(self):
        return PolyScalar(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, value):
        value = GaussianRational.of(value)
        if not value:
            return self.zero()
        return PolyScalar(self, {(0,) * len(self.names): value})

    def variable(self, name, power=1):
        return self.monomial({name: power})

    def monomial(self, exponents, coefficient=1):
        """The scalar monomial coefficient * prod(var**exp)."""
        coefficient = GaussianRational.of(coefficient)
        if not coefficient:
            return self.zero()
        exps = [0] * len(self.names)
        for name, e in exponents.items():
            if e < 0:
                raise ValueError("exponents must be nonnegative")
            exps[self.index(name)] += e
        return PolyScalar(self, {tuple(exps): coefficient})

    def coerce(self, value):
        if isinstance(value, PolyScalar):
            if value.table != self:
                raise ValueError("scalar belongs to a different variable table")
            return value
        return self.constant(value)


class PolyScalar:
    """A multivariate polynomial over Q(i) in the variables of a table.

    Terms map exponent tuples to nonzero GaussianRational coefficients;
    equality is equality of term maps.
    """

    __slots__ = ("table", "terms")

    def __init__(self, table, terms):
        object.__setattr__(self, "table", table)
        object.__setattr__(
            self, "terms", {e: c for e, c in terms.items() if c}
        )

    def __setattr__(self, name, value):
        raise AttributeError("PolyScalar is immutable")

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PolyScalar):
            if other.table != self.table:
                raise ValueError("scalars over different variable tables")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.table.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return PolyScalar(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return PolyScalar(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = terms.get(e, ZERO) + c1 * c2
                if c:
                    terms[e] = c
                else:
                    terms.pop(e, None)
        return PolyScalar(self.table, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.table.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.table.constant(other)
        if not isinstance(other, PolyScalar):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    __hash__ = None

    # -- structure ---------------------------------------------------------

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        """The value of a constant polynomial as a GaussianRational."""
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.table.names[i])
        return used

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.table.index(name)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def coefficients_in(self, name):
        """Split into {power: coefficient polynomial} with respect to one
        variable."""
        i = self.table.index(name)
        split = {}
        for e, c in self.terms.items():
            reduced = e[:i] + (0,) + e[i + 1:]
            bucket = split.setdefault(e[i], {})
            bucket[reduced] = bucket.get(reduced, ZERO) + c
        return {k: PolyScalar(self.table, t) for k, t in split.items()}

    # -- involution and evaluation ------------------------------------------

    def conjugate(self):
        """Antilinear involution: conjugate coefficients and swap each
        variable with its declared conjugate."""
        perm = self.table._conj_index
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(e)
            for i, k in enumerate(e):
                if not k:
                    continue
                j = perm[i]
                if j is None:
                    raise UnknownVariable(
                        f"{self.table.names[i]} has no conjugation declaration"
                    )
                new[j] = k
            terms[tuple(new)] = c.conjugate()
        return PolyScalar(self.table, terms)

    def substitute(self, assignment):
        """Evaluate some variables at exact values; unassigned variables stay
        formal.  The assignment is closed under conjugation and must be
        conjugation-consistent."""
        table = self.table
        resolved = {}
        for name, value in assignment.items():
            table.index(name)
            resolved[name] = GaussianRational.of(value)
        for name, value in list(resolved.items()):
            mate = table._conj.get(name)
            if mate is None or mate == name:
                continue
            expected = value.conjugate()
            if mate in resolved:
                if resolved[mate] != expected:
                    raise ConjugationMismatch(
                        f"{mate} must be the conjugate of {name}"
                    )
            else:
                resolved[mate] = expected
        for name, value in resolved.items():
            if table._conj.get(name) == name and value.im != 0:
                raise ConjugationMismatch(f"{name} is real but got {value}")
        by_index = {table.index(n): v for n, v in resolved.items()}
        terms = {}
        for e, c in self.terms.items():
            coeff = c
            new = list(e)
            for i, k in enumerate(e):
                if k and i in by_index:
                    coeff = coeff * by_index[i] ** k
                    new[i] = 0
            if not coeff:
                continue
            key = tuple(new)
            s = terms.get(key, ZERO) + coeff
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return PolyScalar(table, terms)

    # -- rendering -----------------------------------------------------------

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def _monomial_text(self, exponents):
        parts = []
        for name, e in zip(self.table.names, exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        rendered = []
        for e, c in self._sorted_terms():
            mon = self._monomial_text(e)
            if not mon:
                rendered.append(str(c))
            elif c == ONE:
                rendered.append(mon)
            elif c == -ONE:
                rendered.append(f"-{mon}")
            elif c.re != 0 and c.im != 0:
                rendered.append(f"({c})*{mon}")
            else:
                rendered.append(f"{c}*{mon}")
        out = rendered[0]
        for piece in rendered[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def __repr__(self):
        return f"<PolyScalar {self}>"


def rational_content(poly):
    """The positive rational content of a nonzero polynomial: the largest
    c with poly/c having coprime integer Gaussian coefficients."""
    num = 0
    den = 1
    for coeff in poly.terms.values():
        for part in (coeff.re, coeff.im):
            if part == 0:
                continue
            num = gcd(num, abs(part.numerator))
            den = den * part.denominator // gcd(den, part.denominator)
    if num == 0:
        raise ValueError("zero polynomial has no content")
    return Fraction(num, den)


class ScalarFraction:
    """A formal quotient of polynomials, compared by cross-multiplication.

    Only integer content is removed on construction; no polynomial gcd is
    attempted.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1):
        if isinstance(numerator, ScalarFraction):
            raise TypeError("numerator must be a PolyScalar")
        table = numerator.table
        denominator = table.coerce(denominator)
        if not denominator:
            raise ZeroDivisionError("zero denominator")
        if numerator:
            common = _fraction_gcd(
                rational_content(numerator), rational_content(denominator)
            )
            if common != 1:
                inv = GaussianRational(1 / common)
                numerator = numerator * inv
                denominator = denominator * inv
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarFraction is immutable")

    @property
    def table(self):
        return self.numerator.table

    def __bool__(self):
        return bool(self.numerator)

    def _coerce(self, other):
        if isinstance(other, ScalarFraction):
            return other
        if isinstance(other, (int, Fraction, GaussianRational, PolyScalar)):
            return ScalarFraction(self.table.coerce(other))
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ScalarFraction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return ScalarFraction(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ScalarFraction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.numerator:
            raise ZeroDivisionError("division by zero fraction")
        return ScalarFraction(
            self.numerator * other.denominator, self.denominator * other.numerator
        )

    def substitute(self, assignment):
        den = self.denominator.substitute(assignment)
        if not den:
            raise ZeroDivisionError("denominator vanishes under substitution")
        return ScalarFraction(self.numerator.substitute(assignment), den)

    def __str__(self):
        if self.denominator == self.table.one():
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    def __repr__(self):
        return f"<ScalarFraction {self}>"


def _fraction_gcd(a, b):
    return Fraction(
        gcd(a.numerator, b.numerator),
        a.denominator * b.denominator // gcd(a.denominator, b.denominator),
    )


def substitute_fraction(poly, name, replacement):
    """Substitute a ScalarFraction for one variable of a polynomial.

    Used to impose normalizations such as V -> 1/(mu*mub)."""
    split = poly.coefficients_in(name)
    degree = max(split) if split else 0
    num_part = replacement.numerator
    den_part = replacement.denominator
    table = poly.table
    total = table.zero()
    for k in range(degree + 1):
        coeff = split.get(k)
        if coeff is None:
            continue
        total = total + coeff * num_part ** k * den_part ** (degree - k)
    return ScalarFraction(total, den_part ** degree)
