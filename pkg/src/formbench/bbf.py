"""The Beauville-Bogomolov-Fujiki quadratic form of a complex symplectic
structure model.

The quadratic form of a model of complex dimension 2n with symplectic (2,0)
form sigma is evaluated by the three-integral expression

    q(alpha) = (n/2) I[(s sb)^n] I[alpha^2 (s sb)^(n-1)]
             + (1-n) I[alpha s^(n-1) sb^n] I[alpha s^n sb^(n-1)]

with no normalization assumed; the formal total volume V stays in every
result, and "normalized" Gram matrices substitute V -> 1/(mu*mub) at the
presentation layer only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateSymplectic,
    ModelMismatch,
    NotClosed,
    OddSize,
    UnsupportedBasis,
)
from .scalars import ScalarFraction, substitute_fraction


class AntisymmetricMatrix:
    """An even-sized antisymmetric coefficient matrix; only the entries above
    the diagonal are stored (1-based index pairs i < j)."""

    def __init__(self, size, entries, table):
        self.size = size
        self.table = table
        stored = {}
        for (i, j), value in entries.items():
            if not (1 <= i < j <= size):
                raise ValueError(f"entry ({i},{j}) must satisfy 1 <= i < j <= size")
            value = table.coerce(value)
            if value:
                stored[(i, j)] = value
        self.entries = stored

    @classmethod
    def from_form(cls, sigma):
        """The coefficient matrix of a (2,0)-form over its holomorphic
        generators."""
        cf = sigma.coframe
        if sigma and sigma.bidegree() != (2, 0):
            raise ValueError("expected a (2,0)-form")
        entries = {}
        for mon, coeff in sigma.terms.items():
            entries[(mon[0] + 1, mon[1] + 1)] = coeff
        return cls(cf.n_holomorphic, entries, cf.table)

    def entry(self, i, j):
        if i == j:
            return self.table.zero()
        if i < j:
            return self.entries.get((i, j), self.table.zero())
        return -self.entries.get((j, i), self.table.zero())

    def rows(self):
        return [
            [self.entry(i, j) for j in range(1, self.size + 1)]
            for i in range(1, self.size + 1)
        ]


def pfaffian(matrix):
    """Recursive expansion along the first row; Pf(A)^2 = det(A)."""
    if matrix.size % 2:
        raise OddSize(f"pfaffian of odd size {matrix.size}")
    table = matrix.table

    def expand(indices):
        if not indices:
            return table.one()
        first = indices[0]
        total = table.zero()
        for pos in range(1, len(indices)):
            coeff = matrix.entry(first, indices[pos])
            if not coeff:
                continue
            rest = indices[1:pos] + indices[pos + 1:]
            term = coeff * expand(rest)
            if pos % 2 == 0:
                term = -term
            total = total + term
        return total

    return expand(tuple(range(1, matrix.size + 1)))


class SymplecticSpace:
    """A structure model with a distinguished closed symplectic (2,0)-form
    and the derived coefficient data mu and nu.

    mu is the coefficient of sigma^n against the holomorphic top monomial;
    nu[(i, j)] is the coefficient of sigma^(n-1) against the monomial with
    x_i and x_j removed.  Instances are immutable and thread-safe.
    """

    __slots__ = (
        "model", "sigma", "n", "mu", "nu",
        "_sigma_bar", "_sigma_pow", "_sigma_bar_pow", "_volume_pairing",
    )

    def __init__(self, model, sigma, n, mu, nu, sigma_bar, sigma_pow,
                 sigma_bar_pow):
        self.model = model
        self.sigma = sigma
        self.n = n
        self.mu = mu
        self.nu = nu
        self._sigma_bar = sigma_bar
        self._sigma_pow = sigma_pow
        self._sigma_bar_pow = sigma_bar_pow
        self._volume_pairing = (
            sigma_pow[n].wedge(sigma_bar_pow[n]).integrate()
        )

    @property
    def table(self):
        return self.model.table

    @property
    def sigma_bar(self):
        return self._sigma_bar

    def volume_pairing(self):
        """I[(sigma sigma_bar)^n] with the total volume V kept formal."""
        return self._volume_pairing

    def sigma_power(self, k):
        return self._sigma_pow[k]

    def sigma_bar_power(self, k):
        return self._sigma_bar_pow[k]

    def normalization(self):
        """The fraction 1/(mu*mub) substituted for V in normalized output."""
        return ScalarFraction(self.table.one(), self.mu * self.mu.conjugate())


def make_symplectic(model, sigma):
    """Attach the derived mu/nu data to a closed nondegenerate (2,0)-form."""
    if sigma.coframe is not model.coframe:
        raise ModelMismatch("sigma belongs to a different model")
    if not sigma or sigma.bidegree() != (2, 0):
        raise ValueError("sigma must be a nonzero (2,0)-form")
    if model.d(sigma):
        raise NotClosed("sigma is not d-closed")
    h = model.coframe.n_holomorphic
    if h % 2:
        raise DegenerateSymplectic(
            f"{h} holomorphic generators cannot carry a symplectic form"
        )
    n = h // 2
    powers = [model.coframe.unit()]
    for _ in range(n):
        powers.append(powers[-1].wedge(sigma))
    top = tuple(range(h))
    mu = powers[n].terms.get(top, model.table.zero())
    if not mu:
        raise DegenerateSymplectic("sigma^n vanishes identically")
    nu = {}
    for i, j in combinations(range(1, h + 1), 2):
        mon = tuple(p for p in range(h) if p not in (i - 1, j - 1))
        nu[(i, j)] = powers[n - 1].terms.get(mon, model.table.zero())
    sigma_bar = sigma.conjugate()
    bar_powers = [model.coframe.unit()]
    for _ in range(n):
        bar_powers.append(bar_powers[-1].wedge(sigma_bar))
    return SymplecticSpace(model, sigma, n, mu, nu, sigma_bar, powers, bar_powers)


def _check_degree_two(space, form, what):
    if form.coframe is not space.model.coframe:
        raise ModelMismatch(f"{what} belongs to a different model")
    if form and form.total_degree() != 2:
        raise ValueError(f"{what} must have total degree 2")
    if space.model.d(form):
        raise NotClosed(f"{what} is not d-closed")


def q_sigma(space, alpha):
    """Exact evaluation of the quadratic form on a closed degree-2 form."""
    _check_degree_two(space, alpha, "alpha")
    n = space.n
    s_n = space.sigma_power(n)
    s_n1 = space.sigma_power(n - 1)
    sb_n = space.sigma_bar_power(n)
    sb_n1 = space.sigma_bar_power(n - 1)
    square_pairing = alpha.wedge(alpha).wedge(s_n1).wedge(sb_n1).integrate()
    holo_pairing = alpha.wedge(s_n1).wedge(sb_n).integrate()
    anti_pairing = alpha.wedge(s_n).wedge(sb_n1).integrate()
    return (
        space.volume_pairing() * square_pairing * Fraction(n, 2)
        + holo_pairing * anti_pairing * Fraction(1 - n)
    )


def bilinear(space, psi, eta):
    """The symmetric bilinear form polarizing q_sigma; bilinear(a, a) equals
    q_sigma(a) exactly."""
    _check_degree_two(space, psi, "psi")
    _check_degree_two(space, eta, "eta")
    n = space.n
    s_n = space.sigma_power(n)
    s_n1 = space.sigma_power(n - 1)
    sb_n = space.sigma_bar_power(n)
    sb_n1 = space.sigma_bar_power(n - 1)
    mixed = psi.wedge(eta).wedge(s_n1).wedge(sb_n1).integrate()
    cross = (
        psi.wedge(s_n1).wedge(sb_n).integrate()
        * eta.wedge(s_n).wedge(sb_n1).integrate()
        + eta.wedge(s_n1).wedge(sb_n).integrate()
        * psi.wedge(s_n).wedge(sb_n1).integrate()
    )
    total = space.volume_pairing() * mixed * n + cross * Fraction(1 - n)
    return total * Fraction(1, 2)


# -- Gram matrices ---------------------------------------------------------------


@dataclass(frozen=True)
class GramMatrix:
    """The matrix of the bilinear form on an explicit basis of closed
    degree-2 forms; entries are exact fractions."""

    basis: tuple
    entries: tuple
    mode: str
    normalized: bool = False

    def entry(self, i, j):
        return self.entries[i][j]

    @property
    def size(self):
        return len(self.entries)

    def matches(self, other):
        if self.size != other.size:
            return False
        return all(
            self.entries[i][j] == other.entries[i][j]
            for i in range(self.size)
            for j in range(self.size)
        )

    def is_symmetric(self):
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.size)
            for j in range(self.size)
        )

    def render(self):
        return [[str(e) for e in row] for row in self.entries]


def gram_matrix(space, basis, mode="oracle"):
    """Gram matrix of the bilinear form.

    oracle mode integrates every pairing with V formal; closed_form mode
    emits the coefficient formulas with denominator 2*mu*mub and is only
    available for torus models over the standard monomial basis.  After
    normalize_gram, both agree entrywise.
    """
    basis = tuple(basis)
    if mode == "oracle":
        entries = tuple(
            tuple(ScalarFraction(bilinear(space, a, b)) for b in basis)
            for a in basis
        )
        return GramMatrix(basis=basis, entries=entries, mode=mode)
    if mode != "closed_form":
        raise ValueError(f"unknown mode {mode!r}")
    kinds = [_classify_standard(space, form) for form in basis]
    denominator = space.mu * space.mu.conjugate() * 2
    entries = tuple(
        tuple(
            ScalarFraction(_closed_form_numerator(space, a, b), denominator)
            for b in kinds
        )
        for a in kinds
    )
    return GramMatrix(basis=basis, entries=entries, mode=mode)


def _classify_standard(space, form):
    cf = space.model.coframe
    if any(space.model.differential_of(g.name) for g in cf.generators):
        raise UnsupportedBasis("closed form entries require a torus model")
    if len(form.terms) != 1:
        raise UnsupportedBasis(f"{form} is not a standard basis monomial")
    (mon, coeff), = form.terms.items()
    if coeff != space.table.one() or len(mon) != 2:
        raise UnsupportedBasis(f"{form} is not a standard basis monomial")
    h = cf.n_holomorphic
    p, q = cf.monomial_bidegree(mon)
    if (p, q) == (2, 0):
        return ("20", (mon[0] + 1, mon[1] + 1))
    if (p, q) == (0, 2):
        return ("02", (mon[0] - h + 1, mon[1] - h + 1))
    return ("11", (mon[0] + 1, mon[1] - h + 1))


def _closed_form_numerator(space, a, b):
    """The numerator over 2*mu*mub of one closed-form Gram entry."""
    table = space.table
    kind_a, idx_a = a
    kind_b, idx_b = b
    if {kind_a, kind_b} == {"20", "02"}:
        if kind_a == "02":
            idx_a, idx_b = idx_b, idx_a
        alpha, beta = idx_a
        gamma, delta = idx_b
        sign = -1 if (alpha + beta + gamma + delta) % 2 else 1
        value = space.nu[(alpha, beta)] * space.nu[(gamma, delta)].conjugate()
        return value * sign
    if kind_a == "11" and kind_b == "11":
        alpha, beta = idx_a
        gamma, delta = idx_b
        if alpha == gamma or beta == delta:
            return table.zero()
        e = alpha + beta + gamma + delta
        if (alpha < gamma) == (beta < delta):
            e += 1
        value = (
            space.nu[(min(alpha, gamma), max(alpha, gamma))]
            * space.nu[(min(beta, delta), max(beta, delta))].conjugate()
            * space.n
        )
        return -value if e % 2 else value
    return table.zero()


def gram_discrepancies(reference, candidate):
    """Entry positions where two Gram matrices of the same shape disagree.

    Used to audit the closed-form coefficient formulas against the
    integration oracle: a nonempty result names the defective closed-form
    entries instead of guessing a sign convention."""
    if reference.size != candidate.size:
        raise ValueError("Gram matrices have different sizes")
    return [
        (i, j)
        for i in range(reference.size)
        for j in range(reference.size)
        if reference.entries[i][j] != candidate.entries[i][j]
    ]


def normalize_gram(space, gram):
    """Substitute the normalization V -> 1/(mu*mub) into every entry."""
    name = space.model.coframe.volume_variable
    inv = space.normalization()

    def normalize_entry(entry):
        num = substitute_fraction(entry.numerator, name, inv)
        den = substitute_fraction(entry.denominator, name, inv)
        return num / den

    entries = tuple(
        tuple(normalize_entry(e) for e in row) for row in gram.entries
    )
    return GramMatrix(
        basis=gram.basis, entries=entries, mode=gram.mode, normalized=True
    )


def standard_degree_two_basis(model):
    """The block-ordered monomial basis of the invariant two-forms of a torus
    model: (2,0) pairs, then the (1,1) block row-major, then (0,2) pairs."""
    cf = model.coframe
    h = cf.n_holomorphic
    names = [g.name for g in cf.generators]
    basis = []
    for i, j in combinations(range(h), 2):
        basis.append(cf.monomial_form((names[i], names[j])))
    for i in range(h):
        for j in range(h, len(names)):
            basis.append(cf.monomial_form((names[i], names[j])))
    for i, j in combinations(range(h, len(names)), 2):
        basis.append(cf.monomial_form((names[i], names[j])))
    return basis


@dataclass(frozen=True)
class OrthogonalityReport:
    pairs_checked: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def check_block_orthogonality(space):
    """Verify the stated zero blocks of the torus Gram matrix on the full
    monomial basis: (2,0) against (2,0), (0,2) against (0,2), and each of
    those against the (1,1) block."""
    model = space.model
    cf = model.coframe
    h = cf.n_holomorphic
    names = [g.name for g in cf.generators]
    blocks = {"20": [], "11": [], "02": []}
    for i, j in combinations(range(len(names)), 2):
        form = cf.monomial_form((names[i], names[j]))
        p, q = form.bidegree()
        blocks[f"{p}{q}"].append(form)
    checked = 0
    violations = []

    def expect_zero(first, second):
        nonlocal checked
        for a in first:
            for b in second:
                checked += 1
                value = bilinear(space, a, b)
                if value:
                    violations.append((str(a), str(b), str(value)))

    expect_zero(blocks["20"], blocks["20"])
    expect_zero(blocks["02"], blocks["02"])
    expect_zero(blocks["20"], blocks["11"])
    expect_zero(blocks["02"], blocks["11"])
    return OrthogonalityReport(pairs_checked=checked, violations=tuple(violations))


# -- identities -------------------------------------------------------------------


@dataclass(frozen=True)
class VanishingIdentity:
    lhs: object
    rhs: object

    @property
    def holds(self):
        return self.lhs == self.rhs


def vanishing_identity(space, lam, alpha11, mubar):
    """Both sides of the identity

        I[(s sb)^n] * I[alpha^(n+1) sb^(n-1)] = (n+1) lam^(n-1) q(alpha)

    for alpha = lam*sigma + alpha11 + mubar*sigma_bar.  The sigma_bar
    coefficient is named mubar throughout to keep it apart from the top
    coefficient mu of sigma^n."""
    table = space.table
    lam = table.coerce(lam)
    mubar = table.coerce(mubar)
    if alpha11 and alpha11.bidegree() != (1, 1):
        raise ValueError("alpha11 must be a (1,1)-form")
    alpha = (
        space.sigma.scaled(lam)
        + alpha11
        + space.sigma_bar.scaled(mubar)
    )
    if space.model.d(alpha):
        raise NotClosed("alpha is not d-closed")
    n = space.n
    power = alpha.power(n + 1)
    lhs = space.volume_pairing() * (
        power.wedge(space.sigma_bar_power(n - 1)).integrate()
    )
    rhs = q_sigma(space, alpha) * lam ** (n - 1) * (n + 1)
    return VanishingIdentity(lhs=lhs, rhs=rhs)


def product_q(q1, q2, p1s, p1sb, p2s, p2sb):
    """The quadratic form of a two-factor product evaluated from the factor
    data: the factor forms q_i(phi_i) and the pairings I[phi_i s_i],
    I[phi_i sb_i], under the normalization I[s_i sb_i] = 1."""
    return 8 * (q1 + q2) - 4 * ((p1sb - p2sb) * (p1s - p2s))
