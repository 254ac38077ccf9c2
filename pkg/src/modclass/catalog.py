"""Built-in algebras and twisted triangular structures with known answers.

Each entry records the closed-form data (r-matrices, twists, expected
modular representatives) alongside everything needed to recompute them
from scratch; the test suite requires recorded and recomputed values to
agree, except for the one documented erratum below.

Erratum note: for the gl_n family the recorded triple-sum expression for
the twist (``q_printed_psi``) does not match the coboundary it is supposed
to equal; its compressed index ranges drop and double-cancel terms (at
n = 2 the expression collapses to zero while the coboundary does not).
The recomputed coboundary is authoritative; the closed form is kept only
so the discrepancy can be inspected via ``q_psi_discrepancy``.

Basis conventions: gl(n) uses the elementary matrices in row-major order
e11, e12, ..., enn; sl(n) uses the off-diagonal elementary matrices in
row-major order followed by h1, ..., h(n-1) with hk the difference of the
k-th and (k+1)-st diagonal units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .liealg import Cochain, LieAlgebra, Multivector, Subalgebra, ce_differential, span_subalgebra
from .linalg import LinearSolver, Matrix, Vector
from .twisted import ModularClassReport, TwistedTriangularStructure, modular_class


def _algebra_from_matrix_basis(
    labels: Sequence[str], matrices: Sequence[Sequence[Sequence[int | Fraction]]]
) -> LieAlgebra:
    """Structure constants from a basis of square matrices (exact arithmetic)."""
    mats = [Matrix(m) for m in matrices]
    size = mats[0].rows
    flats = [
        [m[i, j] for i in range(size) for j in range(size)] for m in mats
    ]
    solver = LinearSolver(Matrix.from_columns(flats))
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a, b in itertools.combinations(range(len(mats)), 2):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        flat = [comm[i, j] for i in range(size) for j in range(size)]
        coords = solver.solve(flat).vector
        entry = {k: c for k, c in enumerate(coords) if c != 0}
        if entry:
            table[(a, b)] = entry
    return LieAlgebra(labels, table)


def _elementary(n: int, i: int, j: int) -> list[list[int]]:
    return [[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(n)] for r in range(n)]


def _label(i: int, j: int) -> str:
    return f"e{i}{j}" if max(i, j) <= 9 else f"e{i}_{j}"


def gl(n: int) -> LieAlgebra:
    """General linear algebra on the elementary-matrix basis, row-major."""
    if n < 1:
        raise ValueError("gl(n) needs n >= 1")
    labels = [_label(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    mats = [_elementary(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return _algebra_from_matrix_basis(labels, mats)


def sl(n: int) -> LieAlgebra:
    """Traceless matrices: off-diagonal units then diagonal differences."""
    if n < 2:
        raise ValueError("sl(n) needs n >= 2")
    labels = [_label(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    mats = [
        _elementary(n, i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
    ]
    for k in range(1, n):
        labels.append(f"h{k}")
        m = [[0] * n for _ in range(n)]
        m[k - 1][k - 1] = 1
        m[k][k] = -1
        mats.append(m)
    return _algebra_from_matrix_basis(labels, mats)


def affine_algebra() -> LieAlgebra:
    """The six-dimensional algebra of 2 x 3 blocks inside gl(3).

    Isomorphic to the Lie algebra of affine transformations of the plane.
    """
    labels = [_label(i, j) for i in range(1, 3) for j in range(1, 4)]
    mats = [_elementary(3, i, j) for i in range(1, 3) for j in range(1, 4)]
    return _algebra_from_matrix_basis(labels, mats)


@dataclass(frozen=True)
class CatalogEntry:
    """A named structure with its expected modular-class data."""

    name: str
    n: int | None
    structure: TwistedTriangularStructure
    subalgebra: Subalgebra
    expected_carrier_dim: int
    expected_representative: Vector
    mu: Cochain | None = None  # 2-cochain on the ambient algebra
    xi: Cochain | None = None  # 1-cochain on the ambient algebra
    printed_r: Multivector | None = None
    printed_psi1: Cochain | None = None

    @property
    def g(self) -> LieAlgebra:
        return self.structure.g

    def compute_report(self) -> ModularClassReport:
        return modular_class(self.structure)

    def check_expected(self) -> list[str]:
        """Names of expected values that fail to recompute (empty = all good)."""
        failures = []
        report = self.compute_report()
        if report.carrier.dim != self.expected_carrier_dim:
            failures.append("carrier_dim")
        if report.carrier.basis != self.subalgebra.basis:
            failures.append("carrier_span")
        if report.representative != self.expected_representative:
            failures.append("representative")
        if self.printed_r is not None and self.printed_r != self.structure.r:
            failures.append("printed_r")
        return failures


def _basis_cochain(g: LieAlgebra, label: str) -> Cochain:
    return Cochain.basis(g.dim, g.index(label))


def _basis_multivector(g: LieAlgebra, label: str) -> Multivector:
    return Multivector.basis(g.dim, g.index(label))


def affine_example() -> CatalogEntry:
    """The plane-affine algebra with its twisted structure; trivial class."""
    g = affine_algebra()
    c = lambda lab: _basis_cochain(g, lab)
    v = lambda lab: _basis_multivector(g, lab)

    r = v("e11").wedge(v("e22")) + v("e13").wedge(v("e23"))
    psi = -1 * (c("e11") + c("e22")).wedge(c("e13")).wedge(c("e23"))
    mu = c("e11").wedge(c("e22")) + c("e13").wedge(c("e23"))
    psi1 = (
        psi
        - c("e12").wedge(c("e21")).wedge(c("e22"))
        + c("e11").wedge(c("e21")).wedge(c("e12"))
    )
    span = [g.basis_vector(g.index(lab)) for lab in ("e11", "e22", "e13", "e23")]
    p = span_subalgebra(g, span)
    structure = TwistedTriangularStructure(g, r, psi)
    return CatalogEntry(
        name="affine",
        n=None,
        structure=structure,
        subalgebra=p,
        expected_carrier_dim=4,
        expected_representative=tuple(Fraction(0) for _ in range(g.dim)),
        mu=mu,
        printed_r=r,
        printed_psi1=psi1,
    )


def q_subalgebra(g: LieAlgebra, n: int) -> Subalgebra:
    """Rows 1..n-1 of gl(n): the codimension-n carrier of the q-family."""
    span = [
        g.basis_vector(g.index(_label(i, j)))
        for i in range(1, n)
        for j in range(1, n + 1)
    ]
    return span_subalgebra(g, span)


def q_mu(g: LieAlgebra, n: int) -> Cochain:
    c = lambda i, j: _basis_cochain(g, _label(i, j))
    out = Cochain.zero(g.dim, 2)
    for i in range(1, n):
        for j in range(i + 1, n):
            out = out + c(i, j).wedge(c(j, i))
    for i in range(1, n):
        out = out + c(i, i).wedge(c(i, n))
    return out


def q_printed_r(g: LieAlgebra, n: int) -> Multivector:
    v = lambda i, j: _basis_multivector(g, _label(i, j))
    out = Multivector.zero(g.dim, 2)
    for i in range(1, n):
        for j in range(i + 1, n):
            out = out + v(i, j).wedge(v(j, i))
    for i in range(1, n):
        out = out + v(i, i).wedge(v(i, n))
    return out


def q_printed_psi(g: LieAlgebra, n: int) -> Cochain:
    """Verbatim transcription of the closed-form twist; see the erratum note."""
    c = lambda i, j: _basis_cochain(g, _label(i, j))
    out = Cochain.zero(g.dim, 3)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            sign = (i > j) - (i < j)
            if sign == 0:
                continue
            for k in range(1, n + 1):
                out = out + sign * c(i, k).wedge(c(k, j)).wedge(c(j, i))
    for i in range(1, n):
        for k in range(1, n):
            if i != k:
                out = out + c(i, k).wedge(c(k, i)).wedge(c(i, n))
    for i in range(1, n):
        for k in range(1, n):
            out = out - c(i, i).wedge(c(i, k)).wedge(c(k, n))
    return out


def q_psi_discrepancy(n: int) -> Cochain:
    """Transcribed twist minus the recomputed coboundary (nonzero: erratum)."""
    g = gl(n)
    return q_printed_psi(g, n) - (-ce_differential(g, q_mu(g, n)))


def q_example(n: int) -> CatalogEntry:
    """The gl(n) family with carrier q_(n-1); nontrivial modular class."""
    if n < 2:
        raise ValueError("q_example(n) needs n >= 2")
    g = gl(n)
    mu = q_mu(g, n)
    psi = -ce_differential(g, mu)
    r = q_printed_r(g, n)
    p = q_subalgebra(g, n)
    expected = [Fraction(0)] * g.dim
    for i in range(1, n):
        expected[g.index(_label(i, n))] = Fraction(-1)
    structure = TwistedTriangularStructure(g, r, psi)
    return CatalogEntry(
        name="q",
        n=n,
        structure=structure,
        subalgebra=p,
        expected_carrier_dim=(n - 1) * n,
        expected_representative=tuple(expected),
        mu=mu,
        printed_r=r,
    )


def p1_subalgebra(g: LieAlgebra, n: int) -> Subalgebra:
    """The maximal parabolic of sl(n) with vanishing first column below the top."""
    span = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and not (j == 1 and i >= 2):
                span.append(g.basis_vector(g.index(_label(i, j))))
    for k in range(1, n):
        span.append(g.basis_vector(g.index(f"h{k}")))
    return span_subalgebra(g, span)


def gg_r_matrix(g: LieAlgebra, n: int) -> Multivector:
    """The generalized Jordanian r-matrix on sl(n)."""
    v = lambda i, j: _basis_multivector(g, _label(i, j))

    def diag_weight(k: int) -> Multivector:
        # the traceless diagonal with entries (n-k)/n on the first k slots
        # and -k/n after, written in the h-basis by partial sums
        out = Multivector.zero(g.dim, 1)
        for i in range(1, n):
            coeff = (
                Fraction(i * (n - k), n) if i <= k else Fraction(k * (n - i), n)
            )
            if coeff != 0:
                out = out + coeff * Multivector.basis(g.dim, g.index(f"h{i}"))
        return out

    out = Multivector.zero(g.dim, 2)
    for k in range(1, n):
        out = out + diag_weight(k).wedge(v(k, k + 1))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for m in range(1, j - i):
                out = out + v(i, j - m + 1).wedge(v(j, i + m))
    return out


def gg_example(n: int) -> CatalogEntry:
    """The sl(n) generalized Jordanian structure, from a Frobenius carrier."""
    if n < 2:
        raise ValueError("gg_example(n) needs n >= 2")
    g = sl(n)
    r = gg_r_matrix(g, n)
    p = p1_subalgebra(g, n)
    xi_g = Cochain.zero(g.dim, 1)
    for i in range(1, n):
        xi_g = xi_g + _basis_cochain(g, _label(i, i + 1))
    expected = [Fraction(0)] * g.dim
    for k in range(1, n):
        expected[g.index(_label(k, k + 1))] = Fraction(-(n - k))
    structure = TwistedTriangularStructure(g, r, Cochain.zero(g.dim, 3))
    return CatalogEntry(
        name="gg",
        n=n,
        structure=structure,
        subalgebra=p,
        expected_carrier_dim=n * n - n,
        expected_representative=tuple(expected),
        xi=xi_g,
        printed_r=r,
    )


_BUILDERS: dict[str, Callable[..., CatalogEntry]] = {
    "affine": lambda n=None: affine_example(),
    "q": lambda n: q_example(n),
    "gg": lambda n: gg_example(n),
}


def entry_names() -> list[str]:
    return sorted(_BUILDERS)


def get_entry(name: str, n: int | None = None) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {entry_names()}")
    if name == "affine":
        if n is not None:
            raise ValueError("the affine entry does not take a size parameter")
        return _BUILDERS[name]()
    if n is None:
        raise ValueError(f"catalog entry {name!r} requires --n")
    return _BUILDERS[name](n)
