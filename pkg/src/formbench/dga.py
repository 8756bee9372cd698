"""Finite bigraded differential algebras given by structure equations.

The differential of each generator is a degree-two form; d extends as a
graded derivation and splits as d = del + delbar by bidegree.  De Rham,
Dolbeault, Bott-Chern and Aeppli cohomologies are computed by exact Gaussian
elimination over the Gaussian rationals, so there is no tolerance anywhere.

Models are immutable after validation.  Cohomology reports are memoized per
model; the memo is written once per slot under the GIL and recomputation is
idempotent, so concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import (
    IntegrabilityError,
    ModelMismatch,
    NotClosed,
    UnknownVariable,
    UnspecializedParameters,
)
from .exterior import Form
from .scalars import ZERO

DE_RHAM = "de_rham"
DOLBEAULT = "dolbeault"
BOTT_CHERN = "bott_chern"
AEPPLI = "aeppli"

THEORIES = (DE_RHAM, DOLBEAULT, BOTT_CHERN, AEPPLI)


@dataclass(frozen=True)
class CohomologyReport:
    """Dimension and representative basis of one cohomology group.

    ``slot`` is a degree k for de Rham and a bidegree pair (p, q) otherwise;
    representatives are echelon-form cocycles.
    """

    theory: str
    slot: object
    dimension: int
    basis: tuple

    def __str__(self):
        return f"H_{self.theory}{self.slot}: dim {self.dimension}"


@dataclass(frozen=True)
class DdbarCheck:
    """Both sides of the degree-k Bott-Chern/Aeppli count against 2 b_k."""

    degree: int
    betti_doubled: int
    bott_chern_aeppli: int

    @property
    def holds(self):
        return self.betti_doubled == self.bott_chern_aeppli


@dataclass(frozen=True)
class LambdaMap:
    """The matrix of [alpha] -> [omega ^ alpha] between two cohomology slots,
    written in their computed bases (rows index the target basis)."""

    source: CohomologyReport
    target: CohomologyReport
    matrix: tuple

    def rank(self):
        return linalg.rank([list(row) for row in self.matrix])

    def is_zero(self):
        return all(not x for row in self.matrix for x in row)


class StructureModel:
    """A coframe together with the differential of each generator."""

    def __init__(self, coframe, differentials=None, check=True):
        self.coframe = coframe
        diff = {}
        for name, form in (differentials or {}).items():
            if name not in coframe.position:
                raise UnknownVariable(name)
            if form.coframe is not coframe:
                raise ModelMismatch(f"differential of {name} uses another coframe")
            if form:
                diff[coframe.position[name]] = form
        self._differentials = diff
        self._d_cache = {}
        self._reports = {}
        self._zero = coframe.zero_form()
        if check:
            self.validate()

    def __repr__(self):
        return f"<StructureModel {self.coframe!r}>"

    @property
    def table(self):
        return self.coframe.table

    def differential_of(self, name):
        return self._differentials.get(self.coframe.position[name], self._zero)

    # -- the differential and its bidegree parts -----------------------------

    def _d_monomial(self, monomial):
        cached = self._d_cache.get(monomial)
        if cached is not None:
            return cached
        cf = self.coframe
        total = self._zero
        one = cf.table.one()
        for i, pos in enumerate(monomial):
            dg = self._differentials.get(pos)
            if dg is None:
                continue
            piece = Form(cf, {monomial[:i]: one}).wedge(dg)
            piece = piece.wedge(Form(cf, {monomial[i + 1:]: one}))
            if i % 2:
                piece = -piece
            total = total + piece
        self._d_cache[monomial] = total
        return total

    def _check_form(self, form):
        if form.coframe is not self.coframe:
            raise ModelMismatch("form belongs to a different model")

    def d(self, form):
        """Graded Leibniz extension of the generator differentials."""
        self._check_form(form)
        out = self._zero
        for mon, coeff in form.terms.items():
            out = out + self._d_monomial(mon).scaled(coeff)
        return out

    def del_(self, form):
        """The (1,0) part of d (raises p by one)."""
        self._check_form(form)
        out = self._zero
        for mon, coeff in form.terms.items():
            p, q = self.coframe.monomial_bidegree(mon)
            out = out + self._d_monomial(mon).component(p + 1, q).scaled(coeff)
        return out

    def delbar(self, form):
        """The (0,1) part of d (raises q by one)."""
        self._check_form(form)
        out = self._zero
        for mon, coeff in form.terms.items():
            p, q = self.coframe.monomial_bidegree(mon)
            out = out + self._d_monomial(mon).component(p, q + 1).scaled(coeff)
        return out

    def deldelbar(self, form):
        return self.del_(self.delbar(form))

    # -- validation -----------------------------------------------------------

    def validate(self):
        """Check d*d = 0 and the bidegree splitting on every generator.

        Returns a diagnostics list on success and raises IntegrabilityError
        (carrying the offending generators with their residual forms)
        otherwise.
        """
        cf = self.coframe
        violations = []
        diagnostics = []
        for gen in cf.generators:
            dg = self._differentials.get(cf.position[gen.name])
            if dg is None:
                diagnostics.append(f"d({gen.name}) = 0")
                continue
            degrees = {len(m) for m in dg.terms}
            if degrees - {2}:
                violations.append((gen.name, dg))
                continue
            p, q = gen.bidegree
            allowed = {(p + 1, q), (p, q + 1)}
            stray = self._zero
            for mon, coeff in dg.terms.items():
                if cf.monomial_bidegree(mon) not in allowed:
                    stray = stray + Form(cf, {mon: coeff})
            if stray:
                violations.append((gen.name, stray))
                continue
            dd = self.d(dg)
            if dd:
                violations.append((gen.name, dd))
                continue
            diagnostics.append(f"d({gen.name}) = {dg}")
        if violations:
            names = ", ".join(name for name, _ in violations)
            raise IntegrabilityError(
                f"structure equations are not integrable at: {names}", violations
            )
        return diagnostics

    # -- graded pieces of the algebra ------------------------------------------

    def monomials_of_degree(self, k):
        n = len(self.coframe.generators)
        if k < 0 or k > n:
            return []
        return list(combinations(range(n), k))

    def monomials_of_bidegree(self, p, q):
        cf = self.coframe
        if p < 0 or q < 0 or p > cf.n_holomorphic or q > cf.n_antiholomorphic:
            return []
        holo = combinations(range(cf.n_holomorphic), p)
        anti = list(
            combinations(range(cf.n_holomorphic, len(cf.generators)), q)
        )
        return [h + a for h in holo for a in anti]

    def _vector(self, form, monomials):
        index = {m: i for i, m in enumerate(monomials)}
        vec = [ZERO] * len(monomials)
        for mon, coeff in form.terms.items():
            if mon not in index:
                raise ValueError("form does not lie in the requested slot")
            vec[index[mon]] = self._constant(coeff)
        return vec

    def _constant(self, coeff):
        if not coeff.is_constant():
            raise UnspecializedParameters(
                "specialize the parameters "
                f"{sorted(coeff.variables_used())} before exact linear algebra"
            )
        return coeff.constant_value()

    def _form(self, vector, monomials):
        table = self.table
        terms = {}
        for mon, value in zip(monomials, vector):
            if value:
                terms[mon] = table.constant(value)
        return Form(self.coframe, terms)

    def _operator_matrix(self, op, sources, targets):
        index = {m: i for i, m in enumerate(targets)}
        matrix = linalg.zeros(len(targets), len(sources))
        one = self.table.one()
        for col, mon in enumerate(sources):
            image = op(Form(self.coframe, {mon: one}))
            for m, coeff in image.terms.items():
                matrix[index[m]][col] = self._constant(coeff)
        return matrix

    def _image_vectors(self, op, sources, targets):
        matrix = self._operator_matrix(op, sources, targets)
        return [[matrix[r][c] for r in range(len(targets))]
                for c in range(len(sources))]

    # -- cohomology --------------------------------------------------------------

    def cohomology(self, theory, slot):
        """Exact kernel/image computation for one of the four theories.

        de Rham takes an integer degree; the bigraded theories take a
        bidegree pair (p, q).
        """
        theory, slot = _normalize_slot(theory, slot)
        key = (theory, slot)
        cached = self._reports.get(key)
        if cached is not None:
            return cached
        if theory == DE_RHAM:
            k = slot
            space = self.monomials_of_degree(k)
            cocycles = linalg.nullspace(
                self._operator_matrix(self.d, space, self.monomials_of_degree(k + 1)),
                len(space),
            )
            boundaries = self._image_vectors(
                self.d, self.monomials_of_degree(k - 1), space
            )
        else:
            p, q = slot
            space = self.monomials_of_bidegree(p, q)
            if theory == DOLBEAULT:
                cocycles = linalg.nullspace(
                    self._operator_matrix(
                        self.delbar, space, self.monomials_of_bidegree(p, q + 1)
                    ),
                    len(space),
                )
                boundaries = self._image_vectors(
                    self.delbar, self.monomials_of_bidegree(p, q - 1), space
                )
            elif theory == BOTT_CHERN:
                stacked = self._operator_matrix(
                    self.del_, space, self.monomials_of_bidegree(p + 1, q)
                ) + self._operator_matrix(
                    self.delbar, space, self.monomials_of_bidegree(p, q + 1)
                )
                cocycles = linalg.nullspace(stacked, len(space))
                boundaries = self._image_vectors(
                    self.deldelbar, self.monomials_of_bidegree(p - 1, q - 1), space
                )
            elif theory == AEPPLI:
                cocycles = linalg.nullspace(
                    self._operator_matrix(
                        self.deldelbar, space,
                        self.monomials_of_bidegree(p + 1, q + 1),
                    ),
                    len(space),
                )
                boundaries = self._image_vectors(
                    self.del_, self.monomials_of_bidegree(p - 1, q), space
                ) + self._image_vectors(
                    self.delbar, self.monomials_of_bidegree(p, q - 1), space
                )
            else:
                raise ValueError(f"unknown theory {theory!r}")
        reps = linalg.quotient_representatives(cocycles, boundaries)
        report = CohomologyReport(
            theory=theory,
            slot=slot,
            dimension=len(reps),
            basis=tuple(self._form(v, space) for v in reps),
        )
        self._reports[key] = report
        return report

    def betti(self, k):
        return self.cohomology(DE_RHAM, k).dimension

    def ddbar_criterion(self, k):
        """Compare 2 b_k with the total Bott-Chern plus Aeppli dimension in
        degree k; equality in every degree characterizes the del-delbar
        property of the model."""
        cf = self.coframe
        total = 0
        for p in range(max(0, k - cf.n_antiholomorphic),
                       min(cf.n_holomorphic, k) + 1):
            q = k - p
            total += self.cohomology(BOTT_CHERN, (p, q)).dimension
            total += self.cohomology(AEPPLI, (p, q)).dimension
        return DdbarCheck(
            degree=k, betti_doubled=2 * self.betti(k), bott_chern_aeppli=total
        )

    def _cocycle_residual(self, theory, form):
        if theory == DE_RHAM:
            return self.d(form)
        if theory == DOLBEAULT:
            return self.delbar(form)
        if theory == BOTT_CHERN:
            return self.del_(form) + self.delbar(form)
        return self.deldelbar(form)

    def class_of(self, form, theory, slot):
        """Coordinates of a cocycle in the computed basis of its cohomology
        slot; raises NotClosed when the cocycle condition fails."""
        self._check_form(form)
        theory, slot = _normalize_slot(theory, slot)
        if theory == DE_RHAM:
            space = self.monomials_of_degree(slot)
        else:
            space = self.monomials_of_bidegree(*slot)
        vec = self._vector(form, space)
        if theory == BOTT_CHERN:
            if self.del_(form) or self.delbar(form):
                raise NotClosed(f"{form} is not a Bott-Chern cocycle")
        elif self._cocycle_residual(theory, form):
            raise NotClosed(f"{form} fails the {theory} cocycle condition")
        report = self.cohomology(theory, slot)
        reps = [self._vector(b, space) for b in report.basis]
        boundaries = self._boundary_vectors(theory, slot, space)
        columns = reps + boundaries
        matrix = [[columns[c][r] for c in range(len(columns))]
                  for r in range(len(space))]
        solution = linalg.solve(matrix, vec)
        if solution is None:
            raise NotClosed(f"{form} is not a cocycle of the computed slot")
        return tuple(solution[: report.dimension])

    def _boundary_vectors(self, theory, slot, space):
        if theory == DE_RHAM:
            return self._image_vectors(
                self.d, self.monomials_of_degree(slot - 1), space
            )
        p, q = slot
        if theory == DOLBEAULT:
            return self._image_vectors(
                self.delbar, self.monomials_of_bidegree(p, q - 1), space
            )
        if theory == BOTT_CHERN:
            return self._image_vectors(
                self.deldelbar, self.monomials_of_bidegree(p - 1, q - 1), space
            )
        return self._image_vectors(
            self.del_, self.monomials_of_bidegree(p - 1, q), space
        ) + self._image_vectors(
            self.delbar, self.monomials_of_bidegree(p, q - 1), space
        )

    def lambda_map(self, omega, theory, source_slot):
        """The wedge-with-omega map between cohomology slots.

        omega must be homogeneous and closed for the theory's operator; the
        source slot determines the target slot by adding omega's (bi)degree.
        """
        self._check_form(omega)
        theory, source_slot = _normalize_slot(theory, source_slot)
        if theory == DE_RHAM:
            deg = omega.total_degree()
            if deg is None:
                raise ValueError("omega must be homogeneous")
            if self.d(omega):
                raise NotClosed("omega is not d-closed")
            target_slot = source_slot + deg
        else:
            bideg = omega.bidegree()
            if bideg is None:
                raise ValueError("omega must be homogeneous")
            if theory == DOLBEAULT:
                if self.delbar(omega):
                    raise NotClosed("omega is not delbar-closed")
            elif self.d(omega):
                raise NotClosed("omega is not d-closed")
            target_slot = (source_slot[0] + bideg[0], source_slot[1] + bideg[1])
        source = self.cohomology(theory, source_slot)
        target = self.cohomology(theory, target_slot)
        columns = [
            self.class_of(omega.wedge(rep), theory, target_slot)
            for rep in source.basis
        ]
        matrix = tuple(
            tuple(columns[c][r] for c in range(source.dimension))
            for r in range(target.dimension)
        )
        return LambdaMap(source=source, target=target, matrix=matrix)


def _normalize_slot(theory, slot):
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}; expected one of {THEORIES}")
    if theory == DE_RHAM:
        if not isinstance(slot, int):
            raise ValueError("de Rham cohomology takes an integer degree")
        return theory, slot
    p, q = slot
    return theory, (int(p), int(q))


def validate_model(model):
    """Re-run the structure-equation diagnostics of a model."""
    return model.validate()


def apply_d(model, form):
    return model.d(form)


def apply_del(model, form):
    return model.del_(form)


def apply_delbar(model, form):
    return model.delbar(form)
