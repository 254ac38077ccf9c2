"""Lie algebras over the rationals, exterior algebra, and cohomology.

A Lie algebra is given by structure constants on a labeled basis; brackets
are stored sparsely for index pairs i < j only, so antisymmetry is
structural.  Multivectors and cochains are sparse maps from strictly
increasing index tuples to rational coefficients.

Orientation conventions used consistently in this package:

* wedge products embed in the tensor algebra without 1/k! factors, and a
  k-cochain evaluates on k vectors as the determinant of the pairing
  matrix, so (a* ^ b*)(x, y) = a*(x) b*(y) - a*(y) b*(x);
* the interior product contracts the first slot:
  i_a(x ^ y) = <a, x> y - <a, y> x;
* the cohomology differential is oriented so that for a 1-cochain xi,
  (d xi)(x, y) = xi([x, y]).  Degree-one coboundaries therefore produce
  the bilinear form xi([.,.]) directly, which keeps the bivector/cochain
  inversion and the Yang-Baxter verification in this package mutually
  consistent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    LinearSolver,
    Matrix,
    Vector,
    kernel_basis,
    rat,
    rref,
    unit_vector,
)

SparseVec = dict[int, Fraction]


class JacobiViolationError(ValueError):
    """A bracket table that fails the Jacobi identity."""

    def __init__(self, triple: tuple[int, int, int], residual: Vector):
        self.triple = triple
        self.residual = residual
        super().__init__(f"Jacobi identity fails at basis triple {triple}")


class NotClosedError(ValueError):
    """A span that is not closed under the bracket."""

    def __init__(self, witness: tuple[Vector, Vector, Vector]):
        self.witness = witness
        super().__init__("span is not closed under the bracket")


class NotInvariantError(ValueError):
    """A subspace of the dual that is not stable under the coadjoint action."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__("subspace is not invariant under the coadjoint action")


class RepresentationError(ValueError):
    """Matrices that do not define a Lie algebra homomorphism."""


def _sort_with_sign(indices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning the permutation sign (0 if repeated)."""
    idx = list(indices)
    sign = 1
    # insertion sort; counts transpositions exactly
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    triple: tuple[int, int, int] | None = None
    residual: Vector | None = None


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants."""

    __slots__ = ("dim", "labels", "table", "_index", "_adj")

    def __init__(
        self,
        labels: Sequence[str],
        table: Mapping[tuple[int, int], Mapping[int, Fraction] | Sequence],
        *,
        check: bool = True,
    ):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        n = len(labels)
        clean: dict[tuple[int, int], SparseVec] = {}
        for (i, j), value in table.items():
            if not (0 <= i < j < n):
                raise ValueError(f"bracket key {(i, j)} must satisfy 0 <= i < j < dim")
            if isinstance(value, Mapping):
                entries = {k: rat(c) for k, c in value.items() if rat(c) != 0}
            else:
                entries = {k: rat(c) for k, c in enumerate(value) if rat(c) != 0}
            if any(not 0 <= k < n for k in entries):
                raise ValueError("bracket value index out of range")
            if entries:
                clean[(i, j)] = entries
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "_index", {lab: k for k, lab in enumerate(labels)})
        object.__setattr__(self, "_adj", None)
        if check:
            report = self.check_jacobi()
            if not report.ok:
                raise JacobiViolationError(report.triple, report.residual)

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebra is immutable")

    def index(self, label: str) -> int:
        return self._index[label]

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def bracket_basis(self, i: int, j: int) -> SparseVec:
        """[e_i, e_j] as a sparse vector, any index order."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        entry = self.table.get((j, i), {})
        return {k: -c for k, c in entry.items()}

    def pair_entry(self, i: int, j: int) -> tuple[SparseVec | None, int]:
        """Table entry and orientation sign for any index order, no copying."""
        if i < j:
            return self.table.get((i, j)), 1
        if j < i:
            return self.table.get((j, i)), -1
        return None, 0

    def adjacency(self) -> list[tuple[tuple[int, SparseVec, int], ...]]:
        """For each basis index i, the nonzero brackets [e_i, e_j] as
        (j, table entry, sign); built once and cached."""
        if self._adj is None:
            adj: list[list[tuple[int, SparseVec, int]]] = [[] for _ in range(self.dim)]
            for (i, j), entry in self.table.items():
                adj[i].append((j, entry, 1))
                adj[j].append((i, entry, -1))
            object.__setattr__(self, "_adj", [tuple(a) for a in adj])
        return self._adj

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector dimension mismatch")
        adj = self.adjacency()
        out = [Fraction(0)] * self.dim
        for i, xc in enumerate(x):
            if xc == 0:
                continue
            for j, entry, sign in adj[i]:
                yc = y[j]
                if yc == 0:
                    continue
                f = xc * yc if sign > 0 else -xc * yc
                for k, c in entry.items():
                    out[k] += f * c
        return tuple(out)

    def ad(self, x: Sequence[Fraction]) -> Matrix:
        """Matrix of ad_x = [x, .] in the basis."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols)

    def jacobiator(self, i: int, j: int, k: int) -> Vector:
        """Sum of [[e_i,e_j],e_k] over cyclic permutations of (i,j,k)."""
        out = [Fraction(0)] * self.dim
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            outer, s1 = self.pair_entry(a, b)
            if not outer:
                continue
            for m, cm in outer.items():
                inner, s2 = self.pair_entry(m, c)
                if not inner:
                    continue
                f = cm if s1 * s2 > 0 else -cm
                for t, ct in inner.items():
                    out[t] += f * ct
        return tuple(out)

    def check_jacobi(self) -> JacobiReport:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            res = self.jacobiator(i, j, k)
            if any(c != 0 for c in res):
                return JacobiReport(False, (i, j, k), res)
        return JacobiReport(True)

    def format_vector(self, x: Sequence[Fraction]) -> str:
        terms = []
        for i, c in enumerate(x):
            if c == 0:
                continue
            if c == 1:
                terms.append(("+", self.labels[i]))
            elif c == -1:
                terms.append(("-", self.labels[i]))
            else:
                sign = "+" if c > 0 else "-"
                terms.append((sign, f"{abs(c)} {self.labels[i]}"))
        if not terms:
            return "0"
        head = terms[0][1] if terms[0][0] == "+" else f"-{terms[0][1]}"
        return head + "".join(f" {s} {t}" for s, t in terms[1:])

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, labels={list(self.labels)})"


def check_jacobi(g: LieAlgebra) -> JacobiReport:
    return g.check_jacobi()


def trace_adjoint(g: LieAlgebra) -> "Cochain":
    """The 1-cochain x -> Tr(ad_x); the modular cocycle of the algebra itself."""
    values = []
    for m in range(g.dim):
        t = Fraction(0)
        for j in range(g.dim):
            t += g.bracket_basis(m, j).get(j, Fraction(0))
        values.append(t)
    return Cochain.from_covector(values)


# ---------------------------------------------------------------------------
# Sparse exterior algebra


class _Alternating:
    """Shared implementation of sparse multivectors and cochains."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(
        self,
        dim: int,
        degree: int,
        terms: Mapping[tuple[int, ...], Fraction] | Iterable = (),
    ):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, coeff in items:
            coeff = rat(coeff)
            if coeff == 0:
                continue
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index tuple {idx} has wrong length for degree {degree}")
            if any(not 0 <= a < dim for a in idx):
                raise ValueError(f"index out of range in {idx}")
            sidx, sign = _sort_with_sign(idx)
            if sign == 0:
                continue
            new = clean.get(sidx, Fraction(0)) + sign * coeff
            if new == 0:
                clean.pop(sidx, None)
            else:
                clean[sidx] = new
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, degree: int):
        return cls(dim, degree)

    @classmethod
    def basis(cls, dim: int, i: int):
        return cls(dim, 1, {(i,): Fraction(1)})

    @classmethod
    def from_covector(cls, values: Sequence[Fraction]):
        return cls(len(values), 1, {(i,): rat(c) for i, c in enumerate(values)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, *indices: int) -> Fraction:
        sidx, sign = _sort_with_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(sidx, Fraction(0))

    def to_vector(self) -> Vector:
        if self.degree != 1:
            raise ValueError("only degree-1 elements are plain vectors")
        return tuple(
            self.terms.get((i,), Fraction(0)) for i in range(self.dim)
        )

    def _binop(self, other, f):
        if type(self) is not type(other) or self.dim != other.dim or self.degree != other.degree:
            raise ValueError("mismatched operands")
        keys = set(self.terms) | set(other.terms)
        return type(self)(
            self.dim,
            self.degree,
            {
                k: f(self.terms.get(k, Fraction(0)), other.terms.get(k, Fraction(0)))
                for k in keys
            },
        )

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)(self.dim, self.degree, {k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        s = rat(scalar)
        return type(self)(self.dim, self.degree, {k: s * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other):
        if type(self) is not type(other):
            raise ValueError("wedge requires operands of the same kind")
        if self.dim != other.dim:
            raise ValueError("wedge requires the same underlying space")
        acc: dict[tuple[int, ...], Fraction] = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                sidx, sign = _sort_with_sign(ia + ib)
                if sign == 0:
                    continue
                new = acc.get(sidx, Fraction(0)) + sign * ca * cb
                if new == 0:
                    acc.pop(sidx, None)
                else:
                    acc[sidx] = new
        return type(self)(self.dim, self.degree + other.degree, acc)

    def evaluate(self, *duals: Sequence[Fraction]) -> Fraction:
        """Pair against ``degree`` many elements of the dual space (det rule)."""
        if len(duals) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        if any(len(v) != self.dim for v in duals):
            raise ValueError("argument dimension mismatch")
        total = Fraction(0)
        for idx, coeff in self.terms.items():
            sub = [[duals[t][idx[s]] for t in range(self.degree)] for s in range(self.degree)]
            total += coeff * _det(sub)
        return total

    def __eq__(self, other) -> bool:
        return (
            type(self) is type(other)
            and self.dim == other.dim
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((type(self).__name__, self.dim, self.degree, tuple(sorted(self.terms.items()))))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(dim={self.dim}, degree={self.degree}, 0)"
        body = " + ".join(f"{c}*{idx}" for idx, c in self.sorted_terms())
        return f"{type(self).__name__}(dim={self.dim}, {body})"


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = Fraction(1)
        for i, p in enumerate(perm):
            prod *= rows[i][p]
            if prod == 0:
                break
        total += sign * prod
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    _, sign = _sort_with_sign(perm)
    return sign


class Multivector(_Alternating):
    """Element of the k-th exterior power of the algebra."""


class Cochain(_Alternating):
    """Element of the k-th exterior power of the dual (trivial coefficients)."""


def pair(c: Cochain, m: Multivector) -> Fraction:
    """Full duality pairing of a k-cochain with a k-multivector."""
    if c.degree != m.degree or c.dim != m.dim:
        raise ValueError("pairing requires equal degree and dimension")
    total = Fraction(0)
    small, large = (c.terms, m.terms) if len(c.terms) <= len(m.terms) else (m.terms, c.terms)
    for idx, coeff in small.items():
        other = large.get(idx)
        if other is not None:
            total += coeff * other
    return total


def interior(alpha: Cochain, m: Multivector) -> Multivector:
    """Contraction of a 1-cochain into the first slot of a multivector."""
    if not isinstance(alpha, Cochain) or alpha.degree != 1:
        raise ValueError("interior product expects a 1-cochain")
    if m.degree == 0:
        raise ValueError("cannot contract a degree-0 multivector")
    if alpha.dim != m.dim:
        raise ValueError("dimension mismatch")
    cov = alpha.to_vector()
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, coeff in m.terms.items():
        for t, a in enumerate(idx):
            ca = cov[a]
            if ca == 0:
                continue
            rest = idx[:t] + idx[t + 1 :]
            sign = -1 if t % 2 else 1
            new = acc.get(rest, Fraction(0)) + sign * ca * coeff
            if new == 0:
                acc.pop(rest, None)
            else:
                acc[rest] = new
    return Multivector(m.dim, m.degree - 1, acc)


def ce_differential(g: LieAlgebra, c: Cochain) -> Cochain:
    """Cohomology differential with this package's orientation.

    On basis covectors d e*_m = sum of structure constants c^m_{ij} e*_i ^ e*_j,
    extended to higher degree as an antiderivation; equivalently
    (d c)(x_0, ..., x_k) = sum over i < j of (-1)^(i+j+1)
    c([x_i, x_j], x_0, ..., omitting x_i and x_j, ..., x_k).
    """
    if c.dim != g.dim:
        raise ValueError("cochain dimension does not match the algebra")
    if c.degree == 0:
        return Cochain.zero(g.dim, 1)
    d1: dict[int, list[tuple[int, int, Fraction]]] = {m: [] for m in range(g.dim)}
    for (i, j), entry in g.table.items():
        for m, coeff in entry.items():
            d1[m].append((i, j, coeff))
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, coeff in c.terms.items():
        for t, m in enumerate(idx):
            rest = idx[:t] + idx[t + 1 :]
            slot_sign = -1 if t % 2 else 1
            for i, j, w in d1[m]:
                sidx, sign = _sort_with_sign((i, j) + rest)
                if sign == 0:
                    continue
                new = acc.get(sidx, Fraction(0)) + slot_sign * sign * w * coeff
                if new == 0:
                    acc.pop(sidx, None)
                else:
                    acc[sidx] = new
    return Cochain(g.dim, c.degree + 1, acc)


# ---------------------------------------------------------------------------
# Subalgebras, quotients, representations


class Subalgebra:
    """A bracket-closed subspace with a canonical (rref) basis."""

    __slots__ = ("parent", "basis", "pivots", "complement", "_algebra", "_ext_solvers")

    def __init__(self, parent: LieAlgebra, basis: Sequence[Vector], pivots: Sequence[int]):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "basis", tuple(tuple(v) for v in basis))
        object.__setattr__(self, "pivots", tuple(pivots))
        object.__setattr__(
            self,
            "complement",
            tuple(i for i in range(parent.dim) if i not in set(pivots)),
        )
        object.__setattr__(self, "_algebra", None)
        object.__setattr__(self, "_ext_solvers", {})

    def __setattr__(self, name, value):
        raise AttributeError("Subalgebra is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords_of(self, v: Sequence[Fraction]) -> Vector | None:
        """Coordinates of v in the canonical basis, or None if outside."""
        coords = tuple(v[p] for p in self.pivots)
        residual = list(v)
        for c, b in zip(coords, self.basis):
            if c != 0:
                residual = [r - c * x for r, x in zip(residual, b)]
        if any(r != 0 for r in residual):
            return None
        return coords

    def from_coords(self, coords: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.parent.dim
        for c, b in zip(coords, self.basis, strict=True):
            if c != 0:
                out = [o + c * x for o, x in zip(out, b)]
        return tuple(out)

    def labels(self) -> tuple[str, ...]:
        out = []
        for s, b in enumerate(self.basis):
            support = [(i, c) for i, c in enumerate(b) if c != 0]
            if len(support) == 1 and support[0][1] == 1:
                out.append(self.parent.labels[support[0][0]])
            else:
                out.append(f"v{s}")
        return tuple(out)

    def as_lie_algebra(self) -> LieAlgebra:
        """The subalgebra as an abstract Lie algebra in its own basis."""
        if self._algebra is None:
            table = {}
            for s, t in itertools.combinations(range(self.dim), 2):
                w = self.parent.bracket(self.basis[s], self.basis[t])
                coords = self.coords_of(w)
                if coords is None:
                    raise NotClosedError((self.basis[s], self.basis[t], w))
                if any(c != 0 for c in coords):
                    table[(s, t)] = {k: c for k, c in enumerate(coords) if c != 0}
            object.__setattr__(
                self, "_algebra", LieAlgebra(self.labels(), table, check=False)
            )
        return self._algebra

    def restrict_cochain(self, c: Cochain) -> Cochain:
        """Pull a cochain on the parent back along the inclusion."""
        if c.dim != self.parent.dim:
            raise ValueError("cochain is not on the parent algebra")
        terms = {}
        for idx in itertools.combinations(range(self.dim), c.degree):
            value = c.evaluate(*(self.basis[s] for s in idx))
            if value != 0:
                terms[idx] = value
        return Cochain(self.dim, c.degree, terms)

    def quotient_coords(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of the class of v in the canonical complement basis."""
        residual = list(v)
        for p, b in zip(self.pivots, self.basis):
            c = residual[p]
            if c != 0:
                residual = [r - c * x for r, x in zip(residual, b)]
        return tuple(residual[q] for q in self.complement)

    def _extension_solver(self, complement: tuple[int, ...]) -> LinearSolver:
        solvers = self._ext_solvers
        if complement not in solvers:
            columns = [list(b) for b in self.basis] + [
                list(unit_vector(self.parent.dim, q)) for q in complement
            ]
            solvers[complement] = LinearSolver(Matrix.from_columns(columns).transpose())
        return solvers[complement]

    def alternative_complement(self) -> tuple[int, ...]:
        """A complement chosen greedily from the highest coordinates down."""
        rows = [list(b) for b in self.basis]
        chosen: list[int] = []
        for q in range(self.parent.dim - 1, -1, -1):
            candidate = rows + [list(unit_vector(self.parent.dim, q))] + [
                list(unit_vector(self.parent.dim, c)) for c in chosen
            ]
            if rref(Matrix(candidate)).rank == len(candidate):
                chosen.append(q)
            if len(chosen) == self.parent.dim - self.dim:
                break
        return tuple(sorted(chosen))

    def extend_cochain_by_zero(
        self, c: Cochain, complement: tuple[int, ...] | None = None
    ) -> Cochain:
        """Extend a 1-cochain on the subalgebra to the parent.

        The extension vanishes on the span of the chosen complement
        coordinates (canonical complement by default).
        """
        if c.degree != 1 or c.dim != self.dim:
            raise ValueError("expected a 1-cochain on the subalgebra")
        comp = self.complement if complement is None else complement
        solver = self._extension_solver(comp)
        values = [c.terms.get((s,), Fraction(0)) for s in range(self.dim)]
        values += [Fraction(0)] * len(comp)
        # rows are basis vectors then complement unit vectors; solve for the
        # covector w with <w, b_s> = values_s and <w, e_q> = 0
        w = solver.solve(values).vector
        return Cochain.from_covector(w)


def span_subalgebra(g: LieAlgebra, vectors: Sequence[Sequence[Fraction]]) -> Subalgebra:
    """Canonicalize a spanning set and verify bracket closure."""
    if vectors:
        reduced, pivots, rank = rref(Matrix(vectors))
        basis = [reduced.row(i) for i in range(rank)]
    else:
        basis, pivots = [], ()
    sub = Subalgebra(g, basis, pivots)
    for s, t in itertools.combinations(range(sub.dim), 2):
        w = g.bracket(sub.basis[s], sub.basis[t])
        if sub.coords_of(w) is None:
            raise NotClosedError((sub.basis[s], sub.basis[t], w))
    return sub


def whole_algebra(g: LieAlgebra) -> Subalgebra:
    return span_subalgebra(g, [g.basis_vector(i) for i in range(g.dim)])


def annihilator(g: LieAlgebra, p: Subalgebra) -> list[Cochain]:
    """Canonical basis of the covectors vanishing on the subalgebra."""
    if p.dim == 0:
        return [Cochain.basis(g.dim, i) for i in range(g.dim)]
    pairing = Matrix(p.basis)
    return [Cochain.from_covector(w) for w in kernel_basis(pairing)]


class Representation:
    """A Lie algebra homomorphism into matrices, one per basis element."""

    __slots__ = ("acting", "space_dim", "matrices", "space_labels")

    def __init__(
        self,
        acting: Subalgebra,
        matrices: Sequence[Matrix],
        space_labels: Sequence[str] | None = None,
        *,
        check: bool = True,
    ):
        if len(matrices) != acting.dim:
            raise RepresentationError("need one matrix per basis element")
        space_dim = matrices[0].rows if matrices else 0
        for m in matrices:
            if m.rows != space_dim or m.cols != space_dim:
                raise RepresentationError("matrices must be square of equal size")
        object.__setattr__(self, "acting", acting)
        object.__setattr__(self, "space_dim", space_dim)
        object.__setattr__(self, "matrices", tuple(matrices))
        object.__setattr__(
            self,
            "space_labels",
            tuple(space_labels) if space_labels is not None else None,
        )
        if check:
            self._check_homomorphism()

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    def _check_homomorphism(self):
        algebra = self.acting.as_lie_algebra()
        for s, t in itertools.combinations(range(self.acting.dim), 2):
            expected = Matrix.zeros(self.space_dim, self.space_dim)
            for k, c in algebra.bracket_basis(s, t).items():
                expected = expected + Matrix(
                    [[c * x for x in row] for row in self.matrices[k].entries]
                )
            commutator = self.matrices[s] @ self.matrices[t] - self.matrices[t] @ self.matrices[s]
            if commutator != expected:
                raise RepresentationError(
                    f"matrices fail the homomorphism identity at basis pair ({s}, {t})"
                )

    def matrix_of(self, coords: Sequence[Fraction]) -> Matrix:
        out = Matrix.zeros(self.space_dim, self.space_dim)
        for c, m in zip(coords, self.matrices, strict=True):
            if c != 0:
                out = out + Matrix([[c * x for x in row] for row in m.entries])
        return out


def quotient_rep(g: LieAlgebra, p: Subalgebra) -> Representation:
    """Action of the subalgebra on parent/subalgebra classes, X.cl(Y) = cl([X,Y]).

    Classes are coordinatized by the canonical complement (the non-pivot
    coordinates of the subalgebra basis).
    """
    comp = p.complement
    mats = []
    for b in p.basis:
        cols = [p.quotient_coords(g.bracket(b, g.basis_vector(q))) for q in comp]
        mats.append(Matrix.from_columns(cols) if comp else Matrix([]))
    labels = tuple(g.labels[q] for q in comp)
    return Representation(p, mats, labels)


def coadjoint_subrep(
    g: LieAlgebra, p: Subalgebra, subspace: Sequence[Cochain]
) -> Representation:
    """Coadjoint action of the subalgebra on an invariant subspace of the dual.

    <X.gamma, Y> = -<gamma, [X, Y]>; raises NotInvariantError when the
    subspace is not stable.
    """
    covs = [c.to_vector() for c in subspace]
    if covs:
        solver = LinearSolver(Matrix.from_columns(covs))
    adj = g.adjacency()
    mats = []
    for b in p.basis:
        cols = []
        for gamma in covs:
            image = [Fraction(0)] * g.dim
            for i, bc in enumerate(b):
                if bc == 0:
                    continue
                for j, entry, sign in adj[i]:
                    val = sum((c * gamma[k] for k, c in entry.items()), Fraction(0))
                    if val != 0:
                        image[j] -= bc * val if sign > 0 else -bc * val
            try:
                cols.append(solver.solve(image).vector)
            except Exception as exc:
                raise NotInvariantError((b, gamma, tuple(image))) from exc
        mats.append(Matrix.from_columns(cols) if covs else Matrix([]))
    return Representation(p, mats)


def infinitesimal_character(rep: Representation) -> Cochain:
    """Trace of the representation, as a 1-cochain on the acting algebra.

    The result is a 1-cocycle: traces of commutators vanish, which is also
    verified here against the acting algebra's brackets.
    """
    values = [m.trace() for m in rep.matrices]
    algebra = rep.acting.as_lie_algebra()
    for s, t in itertools.combinations(range(rep.acting.dim), 2):
        total = Fraction(0)
        for k, c in algebra.bracket_basis(s, t).items():
            total += c * values[k]
        if total != 0:
            raise RepresentationError("character is not a cocycle; invalid representation")
    return Cochain.from_covector(values)
