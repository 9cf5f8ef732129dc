"""Action matrices over the rationals and the span-membership machinery.

For a fixed hom-set enumeration of Hom(d, x) and an endomorphism s of x,
the action matrix of s is the 0/1 matrix whose (f, g) entry is 1 exactly
when composing f with s gives g.  Composition is a function, so each row
holds a single 1; matrices are therefore stored as the per-row target
index, with dense rational views built on demand.

The object x is dominated by y at probe d when the rational span of the
action matrices of all endomorphisms of x factoring through y contains
the identity matrix.  ``span_oracle`` decides that definition directly by
brute-force enumeration and an exact linear solve; it is meant for tiny
instances and cross-checks the constructive certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceededError
from .linalg import determinant, solve_linear
from .matcat import (DEFAULT_HOM_CAP, HomEnumeration, Morphism, compose,
                     enumerate_hom, from_entry_vector)
from .semiring import Semiring

DEFAULT_PAIR_CAP = 65536


@dataclass(frozen=True)
class ActionMatrix:
    """Row-functional 0/1 matrix: row i has its single 1 in column targets[i]."""

    dim: int
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != self.dim:
            raise ValueError(f"expected {self.dim} row targets, got {len(self.targets)}")
        for t in self.targets:
            if not 0 <= t < self.dim:
                raise ValueError(f"target {t} out of range [0, {self.dim})")

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(1) if self.targets[i] == j else Fraction(0)

    def dense(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def is_identity(self) -> bool:
        return all(t == i for i, t in enumerate(self.targets))

    def is_upper_triangular(self) -> bool:
        return all(t >= i for i, t in enumerate(self.targets))

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1) if t == i else Fraction(0) for i, t in enumerate(self.targets))


def action_matrix(sr: Semiring, s: Morphism, hom: HomEnumeration) -> ActionMatrix:
    """The matrix of the right-composition action of s: x -> x on Hom(d, x)."""
    if s.src != s.dst:
        raise ValueError(f"expected an endomorphism, got {s.src}x{s.dst}")
    if s.src != hom.x:
        raise ValueError(f"endomorphism of {s.src} does not act on Hom({hom.d},{hom.x})")
    targets = tuple(hom.position(compose(sr, g, s)) for g in hom.morphisms)
    return ActionMatrix(dim=hom.size, targets=targets)


def endomorphisms_through(sr: Semiring, x: int, y: int, cap_pairs: int = DEFAULT_PAIR_CAP):
    """All endomorphisms of x of the form a.b with a: x -> y and b: y -> x.

    Deduplicated, in first-occurrence order of the lexicographic pair
    enumeration, so the result is deterministic.  Raises CapExceededError
    when the number of (a, b) pairs exceeds ``cap_pairs``.
    """
    if x < 0 or y < 0:
        raise ValueError(f"objects must be whole numbers, got x={x}, y={y}")
    n = sr.size
    pair_count = n ** (x * y) * n ** (y * x)
    if pair_count > cap_pairs:
        raise CapExceededError(
            f"|Hom({x},{y})| * |Hom({y},{x})| = {pair_count} pairs exceeds cap {cap_pairs}",
            size=pair_count)
    lefts = [from_entry_vector(x, y, vec) for vec in itertools.product(range(n), repeat=x * y)]
    rights = [from_entry_vector(y, x, vec) for vec in itertools.product(range(n), repeat=y * x)]
    seen: dict[Morphism, None] = {}
    for a in lefts:
        for b in rights:
            seen.setdefault(compose(sr, a, b), None)
    return list(seen)


def identity_in_span(mats) -> list[Fraction] | None:
    """Exact rational coefficients with sum(c_t * M_t) = Id, or None.

    The entrywise equations form a linear system in the coefficients; it
    is solved exactly, so the answer is definitive either way.  Only
    equations touched by at least one matrix are materialized (all others
    read 0 = 0, except missing diagonal entries, which force a negative).
    """
    mats = list(mats)
    if not mats:
        return None
    m = mats[0].dim
    for mat in mats:
        if mat.dim != m:
            raise ValueError(f"mixed dimensions {mat.dim} and {m}")
    equations: dict[tuple[int, int], list[int]] = {}
    for t, mat in enumerate(mats):
        for f, g in enumerate(mat.targets):
            equations.setdefault((f, g), []).append(t)
    for f in range(m):
        if (f, f) not in equations:
            return None
    keys = sorted(equations)
    k = len(mats)
    rows = []
    rhs = []
    for f, g in keys:
        row = [Fraction(0)] * k
        for t in equations[(f, g)]:
            row[t] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1) if f == g else Fraction(0))
    return solve_linear(rows, rhs)


def linear_combination(mats, coeffs) -> list[list[Fraction]]:
    """Dense rational matrix sum(coeffs[i] * mats[i])."""
    mats = list(mats)
    coeffs = list(coeffs)
    if len(mats) != len(coeffs):
        raise ValueError(f"{len(mats)} matrices but {len(coeffs)} coefficients")
    if not mats:
        raise ValueError("need at least one matrix")
    m = mats[0].dim
    out = [[Fraction(0)] * m for _ in range(m)]
    for mat, c in zip(mats, coeffs):
        if mat.dim != m:
            raise ValueError(f"mixed dimensions {mat.dim} and {m}")
        if c == 0:
            continue
        for i, t in enumerate(mat.targets):
            out[i][t] += c
    return out


@dataclass(frozen=True)
class OracleResult:
    """Verdict of the brute-force span oracle, with the witness when positive."""

    holds: bool
    coefficients: tuple[Fraction, ...] | None
    endos: tuple[Morphism, ...]
    matrices: tuple[ActionMatrix, ...]
    hom: HomEnumeration


def span_oracle(sr: Semiring, d: int, x: int, y: int,
                cap_hom: int = DEFAULT_HOM_CAP,
                cap_pairs: int = DEFAULT_PAIR_CAP) -> OracleResult:
    """Decide by brute force whether the identity lies in the action-matrix span.

    Enumerates Hom(d, x) and every endomorphism of x factoring through y,
    builds all action matrices, and solves for the identity exactly.
    """
    hom = enumerate_hom(sr, d, x, cap_hom)
    endos = endomorphisms_through(sr, x, y, cap_pairs)
    mats = tuple(action_matrix(sr, t, hom) for t in endos)
    coeffs = identity_in_span(mats)
    return OracleResult(holds=coeffs is not None,
                        coefficients=tuple(coeffs) if coeffs is not None else None,
                        endos=tuple(endos), matrices=mats, hom=hom)


def nonvanishing_coefficients(table) -> list[Fraction]:
    """Scalars a_0..a_{m-1} making every weighted column sum of a 0/1 table nonzero.

    ``table`` must be square with unit diagonal.  Follows the greedy
    induction: at step k, collect the forbidden values S_j = -sum over
    previous rows i of table[i][j] * a_i for j <= k, then take the
    smallest positive integer outside that set.  Every returned value is
    a positive integer (as a Fraction), so downstream matrices stay
    integral; with a 0/1 table the forbidden values are never positive
    and the result is all ones.
    """
    m = len(table)
    for i, row in enumerate(table):
        if len(row) != m:
            raise ValueError(f"row {i} has {len(row)} entries, expected {m}")
        for e in row:
            if e not in (0, 1):
                raise ValueError(f"table entries must be 0 or 1, got {e!r}")
    for i in range(m):
        if table[i][i] != 1:
            raise ValueError(f"table diagonal must be all ones, found 0 at {i}")
    coeffs: list[Fraction] = []
    for k in range(m):
        forbidden = set()
        for j in range(k + 1):
            forbidden.add(-sum((coeffs[i] for i in range(k) if table[i][j]), Fraction(0)))
        c = 1
        while c in forbidden:
            c += 1
        coeffs.append(Fraction(c))
    return coeffs


@dataclass(frozen=True)
class WitnessReport:
    """Triangularity, diagonal and two independent exact determinant routes."""

    triangular: bool
    diagonal: tuple[Fraction, ...]
    diagonal_nonzero: bool
    det_by_diagonal: Fraction | None
    det_by_elimination: Fraction

    @property
    def certified(self) -> bool:
        return (self.triangular and self.diagonal_nonzero
                and self.det_by_diagonal == self.det_by_elimination
                and self.det_by_elimination != 0)


def assemble_witness(mats, coeffs) -> tuple[list[list[Fraction]], WitnessReport]:
    """Form X = sum(coeffs[i] * mats[i]) and report on its invertibility.

    The determinant is computed twice: as the diagonal product (valid when
    X is upper triangular) and by independent fraction-free elimination.
    Both routes are exact and must agree.
    """
    x = linear_combination(mats, coeffs)
    m = len(x)
    triangular = all(x[i][j] == 0 for i in range(m) for j in range(i))
    diagonal = tuple(x[i][i] for i in range(m))
    diagonal_nonzero = all(v != 0 for v in diagonal)
    det_diag: Fraction | None = None
    if triangular:
        det_diag = Fraction(1)
        for v in diagonal:
            det_diag *= v
    det_elim = determinant(x)
    return x, WitnessReport(triangular=triangular, diagonal=diagonal,
                            diagonal_nonzero=diagonal_nonzero,
                            det_by_diagonal=det_diag, det_by_elimination=det_elim)
