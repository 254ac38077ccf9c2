"""The structure-file text format: parsing and deterministic serialization.

A structure file is a line-based, human-writable description of a Lie
algebra together with optional bivector, twist, subalgebra, 2-cochain and
1-cochain blocks.  All coefficients are exact rationals written as
integers or p/q; floating-point literals are rejected.  Unknown sections
and keys are rejected.

Example::

    name = affine
    [algebra]
    dim = 6
    labels = e11 e12 e13 e21 e22 e23
    bracket e11 e12 = e12
    bracket e12 e21 = e11 - e22
    [r]
    term e11 e22 = 1
    [psi]
    term e11 e13 e23 = -1
    [subalgebra]
    vector = e11
    vector = e22
    [mu]
    term e11 e22 = 1
    [xi]
    term e12 = 1

The bracket table lists each basis pair at most once, in basis order
(earlier label first); antisymmetry is synthesized.  Index tuples in term
blocks must be strictly increasing in basis order.  The Jacobi identity is
checked as soon as the algebra block is complete; a violating table is a
parse error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .liealg import Cochain, JacobiViolationError, LieAlgebra, Multivector
from .linalg import Vector, _RAT_RE

_SECTIONS = ("algebra", "r", "psi", "subalgebra", "mu", "xi")
_TERM_DEGREE = {"r": 2, "psi": 3, "mu": 2, "xi": 1}


class StructureFileError(ValueError):
    """Malformed structure file (syntax, unknown fields, or invalid algebra)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class StructureData:
    """Parsed contents of a structure file."""

    algebra: LieAlgebra
    name: str | None = None
    r: Multivector | None = None
    psi: Cochain | None = None
    subalgebra_vectors: tuple[Vector, ...] | None = None
    mu: Cochain | None = None
    xi: Cochain | None = None


def _fail(msg: str, line: int) -> StructureFileError:
    return StructureFileError(msg, line)


def _is_rational(token: str) -> bool:
    return bool(_RAT_RE.match(token))


def _parse_rational(token: str, line: int) -> Fraction:
    if not _is_rational(token):
        raise _fail(f"expected an exact rational, got {token!r}", line)
    return Fraction(token)


def _parse_combination(tokens: list[str], labels: dict[str, int], line: int) -> Vector:
    """A linear combination like ``e11 - 2 e12 + 1/3 e22`` over the labels."""
    out = [Fraction(0)] * len(labels)
    if tokens == ["0"]:
        return tuple(out)
    sign = 1
    coeff: Fraction | None = None
    pending_sign = False
    for tok in tokens:
        if tok in ("+", "-"):
            if pending_sign or coeff is not None:
                raise _fail("misplaced sign in expression", line)
            sign = 1 if tok == "+" else -1
            pending_sign = True
        elif _is_rational(tok):
            if coeff is not None:
                raise _fail("two consecutive coefficients in expression", line)
            coeff = Fraction(tok)
        elif tok in labels:
            c = sign * (coeff if coeff is not None else Fraction(1))
            out[labels[tok]] += c
            sign, coeff, pending_sign = 1, None, False
        else:
            raise _fail(f"unknown basis label {tok!r}", line)
    if coeff is not None or pending_sign:
        raise _fail("expression ends without a basis label", line)
    return tuple(out)


def parse(text: str) -> StructureData:
    """Parse structure-file text; raises StructureFileError on any problem."""
    name: str | None = None
    section: str | None = None
    seen: set[str] = set()
    labels: dict[str, int] = {}
    declared_dim: int | None = None
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    bracket_lines: list[tuple[int, str, str, list[str]]] = []
    term_blocks: dict[str, dict[tuple[int, ...], Fraction]] = {}
    term_lines: dict[str, list[tuple[int, list[str], str]]] = {}
    vector_lines: list[tuple[int, list[str]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            sec = line[1:-1].strip()
            if sec not in _SECTIONS:
                raise _fail(f"unknown section [{sec}]", lineno)
            if sec in seen:
                raise _fail(f"duplicate section [{sec}]", lineno)
            if sec != "algebra" and "algebra" not in seen:
                raise _fail("the [algebra] section must come first", lineno)
            seen.add(sec)
            section = sec
            if sec in _TERM_DEGREE:
                term_blocks[sec] = {}
                term_lines[sec] = []
            continue
        if "=" not in line:
            raise _fail("expected 'key ... = value'", lineno)
        lhs, rhs = line.split("=", 1)
        key_parts = lhs.split()
        value = rhs.strip()
        if not key_parts:
            raise _fail("missing key before '='", lineno)
        key, args = key_parts[0], key_parts[1:]

        if section is None:
            if key == "name" and not args:
                name = value
                continue
            raise _fail(f"unexpected key {key!r} before any section", lineno)

        if section == "algebra":
            if key == "dim" and not args:
                try:
                    declared_dim = int(value)
                except ValueError:
                    raise _fail("dim must be an integer", lineno)
            elif key == "labels" and not args:
                toks = value.split()
                if not toks:
                    raise _fail("labels line is empty", lineno)
                for t in toks:
                    if _is_rational(t) or t in ("+", "-"):
                        raise _fail(f"label {t!r} would be ambiguous in expressions", lineno)
                    if t in labels:
                        raise _fail(f"duplicate label {t!r}", lineno)
                    labels[t] = len(labels)
            elif key == "bracket" and len(args) == 2:
                bracket_lines.append((lineno, args[0], args[1], value.split()))
            else:
                raise _fail(f"unknown [algebra] entry {lhs.strip()!r}", lineno)
            continue

        if section in _TERM_DEGREE:
            if key != "term":
                raise _fail(f"only 'term' lines are allowed in [{section}]", lineno)
            if len(args) != _TERM_DEGREE[section]:
                raise _fail(
                    f"[{section}] terms need exactly {_TERM_DEGREE[section]} labels",
                    lineno,
                )
            term_lines[section].append((lineno, args, value))
            continue

        if section == "subalgebra":
            if key != "vector" or args:
                raise _fail("only 'vector = <combination>' lines are allowed", lineno)
            vector_lines.append((lineno, value.split()))
            continue

        raise _fail(f"unexpected key {key!r}", lineno)

    if "algebra" not in seen:
        raise StructureFileError("missing [algebra] section")
    if not labels:
        raise StructureFileError("missing labels line in [algebra]")
    if declared_dim is not None and declared_dim != len(labels):
        raise StructureFileError(
            f"declared dim {declared_dim} does not match {len(labels)} labels"
        )

    for lineno, la, lb, rhs_tokens in bracket_lines:
        for lab in (la, lb):
            if lab not in labels:
                raise _fail(f"unknown basis label {lab!r}", lineno)
        i, j = labels[la], labels[lb]
        if i >= j:
            raise _fail(
                "bracket pairs must be listed with the earlier basis label first",
                lineno,
            )
        if (i, j) in brackets:
            raise _fail(f"duplicate bracket for ({la}, {lb})", lineno)
        combo = _parse_combination(rhs_tokens, labels, lineno)
        entry = {k: c for k, c in enumerate(combo) if c != 0}
        if entry:
            brackets[(i, j)] = entry

    try:
        algebra = LieAlgebra(list(labels), brackets, check=True)
    except JacobiViolationError as exc:
        names = tuple(list(labels)[t] for t in exc.triple)
        raise StructureFileError(
            f"bracket table violates the Jacobi identity at basis triple {names}"
        ) from exc

    for sec, lines in term_lines.items():
        degree = _TERM_DEGREE[sec]
        for lineno, args, value in lines:
            idx = []
            for lab in args:
                if lab not in labels:
                    raise _fail(f"unknown basis label {lab!r}", lineno)
                idx.append(labels[lab])
            idx = tuple(idx)
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise _fail("term indices must be strictly increasing in basis order", lineno)
            if idx in term_blocks[sec]:
                raise _fail("duplicate term", lineno)
            coeff = _parse_rational(value, lineno)
            if coeff != 0:
                term_blocks[sec][idx] = coeff

    subvectors: tuple[Vector, ...] | None = None
    if "subalgebra" in seen:
        vecs = [
            _parse_combination(tokens, labels, lineno) for lineno, tokens in vector_lines
        ]
        subvectors = tuple(vecs)

    n = len(labels)
    return StructureData(
        algebra=algebra,
        name=name,
        r=Multivector(n, 2, term_blocks["r"]) if "r" in seen else None,
        psi=Cochain(n, 3, term_blocks["psi"]) if "psi" in seen else None,
        subalgebra_vectors=subvectors,
        mu=Cochain(n, 2, term_blocks["mu"]) if "mu" in seen else None,
        xi=Cochain(n, 1, term_blocks["xi"]) if "xi" in seen else None,
    )


def parse_path(path) -> StructureData:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StructureFileError(f"cannot read {path}: {exc.strerror or exc}")
    return parse(text)


def combination_str(v: Vector, labels: tuple[str, ...]) -> str:
    parts: list[str] = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        mag = abs(c)
        body = labels[i] if mag == 1 else f"{mag} {labels[i]}"
        if not parts and c > 0:
            parts.append(body)
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts) if parts else "0"


def serialize(data: StructureData) -> str:
    """Deterministic text form: fixed section order, terms in index order."""
    g = data.algebra
    lines: list[str] = []
    if data.name:
        lines.append(f"name = {data.name}")
    lines.append("[algebra]")
    lines.append(f"dim = {g.dim}")
    lines.append(f"labels = {' '.join(g.labels)}")
    for (i, j) in sorted(g.table):
        combo = [Fraction(0)] * g.dim
        for k, c in g.table[(i, j)].items():
            combo[k] = c
        lines.append(
            f"bracket {g.labels[i]} {g.labels[j]} = "
            f"{combination_str(tuple(combo), g.labels)}"
        )
    for sec, obj in (("r", data.r), ("psi", data.psi)):
        if obj is not None:
            lines.append(f"[{sec}]")
            for idx, coeff in obj.sorted_terms():
                mono = " ".join(g.labels[a] for a in idx)
                lines.append(f"term {mono} = {coeff}")
    if data.subalgebra_vectors is not None:
        lines.append("[subalgebra]")
        for v in data.subalgebra_vectors:
            lines.append(f"vector = {combination_str(v, g.labels)}")
    for sec, obj in (("mu", data.mu), ("xi", data.xi)):
        if obj is not None:
            lines.append(f"[{sec}]")
            for idx, coeff in obj.sorted_terms():
                mono = " ".join(g.labels[a] for a in idx)
                lines.append(f"term {mono} = {coeff}")
    return "\n".join(lines) + "\n"


def from_catalog_entry(entry) -> StructureData:
    """Structure-file data for a catalog entry, including its auxiliary blocks."""
    return StructureData(
        algebra=entry.g,
        name=entry.name if entry.n is None else f"{entry.name}{entry.n}",
        r=entry.structure.r,
        psi=entry.structure.psi,
        subalgebra_vectors=entry.subalgebra.basis,
        mu=entry.mu,
        xi=entry.xi,
    )
