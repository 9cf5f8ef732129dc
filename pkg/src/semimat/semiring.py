"""Finite idempotent semirings given by explicit operation tables.

A semiring here is a finite carrier ``0..size-1`` together with n-by-n
Cayley tables for addition and multiplication, plus distinguished
``zero`` (additive identity) and ``one`` (multiplicative identity).
Addition must be commutative, associative and idempotent; multiplication
associative with two-sided identity; multiplication distributes over
addition on both sides and zero annihilates.  ``verify_axioms`` checks
every law exhaustively, which is airtight at the carrier sizes this
library targets.

The natural order puts a below b exactly when a + b = b; on a valid
semiring it is a partial order with minimal element zero, and addition
computes the least upper bound of its arguments.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from .errors import ParseError, StructureError

# Exhaustive axiom checking is cubic in the carrier size; anything beyond
# this limit is almost certainly an input mistake.
MAX_VERIFY_SIZE = 64

AXIOM_NAMES = (
    "add-identity",
    "add-idempotent",
    "add-commutative",
    "add-associative",
    "mul-identity",
    "mul-associative",
    "distributive-left",
    "distributive-right",
    "zero-annihilates",
)

ORDER_LAW_NAMES = (
    "reflexive",
    "antisymmetric",
    "transitive",
    "zero-minimal",
    "join-upper-bound",
    "join-least-upper-bound",
)


@dataclass(frozen=True)
class Semiring:
    """Immutable table-backed semiring; all operations are pure reads."""

    size: int
    labels: tuple[str, ...]
    zero: int
    one: int
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "add_table", tuple(tuple(row) for row in self.add_table))
        object.__setattr__(self, "mul_table", tuple(tuple(row) for row in self.mul_table))

    @property
    def elements(self) -> range:
        return range(self.size)

    def _check_element(self, a: int) -> None:
        if not 0 <= a < self.size:
            raise ValueError(f"element index {a} out of range for semiring of size {self.size}")

    def add(self, a: int, b: int) -> int:
        self._check_element(a)
        self._check_element(b)
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        self._check_element(a)
        self._check_element(b)
        return self.mul_table[a][b]

    def natural_leq(self, a: int, b: int) -> bool:
        """True when a is below b in the natural order, i.e. a + b = b."""
        return self.add(a, b) == b

    def label(self, a: int) -> str:
        self._check_element(a)
        return self.labels[a]


@dataclass(frozen=True)
class Violation:
    """One broken axiom with the witnessing tuple of element indices."""

    axiom: str
    witness: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.axiom}: {self.message}"


@dataclass(frozen=True)
class NaturalOrder:
    """The relation a + b = b, with per-element longest-chain heights."""

    leq: tuple[tuple[bool, ...], ...]
    height: tuple[int, ...]


@dataclass(frozen=True)
class OrderLawReport:
    """Exhaustive check results for the natural-order laws."""

    checks: tuple[tuple[str, bool], ...]
    counterexamples: tuple[tuple[str, tuple[int, ...]], ...]
    pairs_checked: int
    triples_checked: int

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


def check_structure(sr: Semiring) -> None:
    """Raise StructureError unless the tables are well-formed n-by-n with in-range entries."""
    n = sr.size
    if n < 1:
        raise StructureError(f"semiring size must be positive, got {n}")
    if len(sr.labels) != n:
        raise StructureError(f"expected {n} labels, got {len(sr.labels)}")
    for what, idx in (("zero", sr.zero), ("one", sr.one)):
        if not 0 <= idx < n:
            raise StructureError(f"{what} index {idx} out of range [0, {n})")
    for name, table in (("add", sr.add_table), ("mul", sr.mul_table)):
        if len(table) != n:
            raise StructureError(f"{name} table has {len(table)} rows, expected {n}")
        for i, row in enumerate(table):
            if len(row) != n:
                raise StructureError(f"{name} table row {i} has {len(row)} entries, expected {n}")
            for e in row:
                if not isinstance(e, int) or not 0 <= e < n:
                    raise StructureError(f"{name} table entry {e!r} at row {i} out of range [0, {n})")


def verify_axioms(sr: Semiring, max_size: int = MAX_VERIFY_SIZE) -> list[Violation]:
    """Exhaustively check every semiring axiom; empty result means valid.

    Each failing axiom is reported once, with the first witnessing tuple in
    scan order.  Malformed tables raise StructureError instead (the axioms
    are then never checked).
    """
    check_structure(sr)
    n = sr.size
    if n > max_size:
        raise StructureError(f"semiring size {n} exceeds the verification limit {max_size}")
    add, mul, lab = sr.add_table, sr.mul_table, sr.labels
    z, o = sr.zero, sr.one
    out: list[Violation] = []

    for a in range(n):
        if add[z][a] != a or add[a][z] != a:
            out.append(Violation("add-identity", (a,), f"additive identity fails at a={lab[a]}"))
            break
    for a in range(n):
        if add[a][a] != a:
            out.append(Violation("add-idempotent", (a,), f"addition not idempotent at a={lab[a]}"))
            break
    done = False
    for a in range(n):
        for b in range(a + 1, n):
            if add[a][b] != add[b][a]:
                out.append(Violation("add-commutative", (a, b),
                                     f"addition not commutative at a={lab[a]}, b={lab[b]}"))
                done = True
                break
        if done:
            break
    witness = _assoc_witness(add, n)
    if witness is not None:
        a, b, c = witness
        out.append(Violation("add-associative", witness,
                             f"addition not associative at a={lab[a]}, b={lab[b]}, c={lab[c]}"))
    for a in range(n):
        if mul[o][a] != a or mul[a][o] != a:
            out.append(Violation("mul-identity", (a,), f"multiplicative identity fails at a={lab[a]}"))
            break
    witness = _assoc_witness(mul, n)
    if witness is not None:
        a, b, c = witness
        out.append(Violation("mul-associative", witness,
                             f"multiplication not associative at a={lab[a]}, b={lab[b]}, c={lab[c]}"))
    done = False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    out.append(Violation("distributive-left", (a, b, c),
                                         f"a*(b+c) != a*b + a*c at a={lab[a]}, b={lab[b]}, c={lab[c]}"))
                    done = True
                    break
            if done:
                break
        if done:
            break
    done = False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                    out.append(Violation("distributive-right", (a, b, c),
                                         f"(a+b)*c != a*c + b*c at a={lab[a]}, b={lab[b]}, c={lab[c]}"))
                    done = True
                    break
            if done:
                break
        if done:
            break
    for a in range(n):
        if mul[z][a] != z or mul[a][z] != z:
            out.append(Violation("zero-annihilates", (a,), f"zero does not annihilate at a={lab[a]}"))
            break
    return out


def _assoc_witness(table, n):
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    return (a, b, c)
    return None


def verify_order_laws(sr: Semiring) -> OrderLawReport:
    """Exhaustively check that the natural order behaves as a join-semilattice order.

    Checks: the relation is a partial order with minimal element zero;
    a is below a + b for all a, b; and whenever a and b are both below c,
    so is a + b.  Assumes ``verify_axioms`` passed.
    """
    n = sr.size
    add = sr.add_table
    leq = [[add[a][b] == b for b in range(n)] for a in range(n)]
    checks: list[tuple[str, bool]] = []
    counter: list[tuple[str, tuple[int, ...]]] = []

    def record(name: str, witness) -> None:
        checks.append((name, witness is None))
        if witness is not None:
            counter.append((name, witness))

    record("reflexive", next(((a,) for a in range(n) if not leq[a][a]), None))
    record("antisymmetric", next(((a, b) for a in range(n) for b in range(n)
                                  if a != b and leq[a][b] and leq[b][a]), None))
    record("transitive", next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                               if leq[a][b] and leq[b][c] and not leq[a][c]), None))
    record("zero-minimal", next(((a,) for a in range(n) if not leq[sr.zero][a]), None))
    record("join-upper-bound", next(((a, b) for a in range(n) for b in range(n)
                                     if not leq[a][add[a][b]]), None))
    record("join-least-upper-bound",
           next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                 if leq[a][c] and leq[b][c] and not leq[add[a][b]][c]), None))
    return OrderLawReport(checks=tuple(checks), counterexamples=tuple(counter),
                          pairs_checked=n * n, triples_checked=n ** 3)


@lru_cache(maxsize=None)
def natural_order(sr: Semiring) -> NaturalOrder:
    """The natural order of a (valid) semiring plus longest-chain heights.

    ``height[a]`` is the length of the longest strictly increasing chain
    below a; zero always sits at height 0.  Raises StructureError if the
    relation has a cycle, which can only happen on an invalid semiring.
    """
    n = sr.size
    add = sr.add_table
    leq = tuple(tuple(add[a][b] == b for b in range(n)) for a in range(n))
    height = [0] * n
    state = [0] * n  # 0 new, 1 on stack, 2 done

    def visit(a: int) -> int:
        if state[a] == 1:
            raise StructureError("natural order contains a cycle; the semiring is invalid")
        if state[a] == 2:
            return height[a]
        state[a] = 1
        best = 0
        for b in range(n):
            if b != a and leq[b][a] and not leq[a][b]:
                best = max(best, 1 + visit(b))
        # a two-cycle (a <= b and b <= a, a != b) breaks antisymmetry but is
        # skipped by the strictness test above; catch it explicitly
        for b in range(n):
            if b != a and leq[b][a] and leq[a][b]:
                raise StructureError("natural order is not antisymmetric; the semiring is invalid")
        height[a] = best
        state[a] = 2
        return best

    for a in range(n):
        visit(a)
    return NaturalOrder(leq=leq, height=tuple(height))


def boolean_semiring() -> Semiring:
    """Two elements with logical OR as addition and logical AND as multiplication."""
    return Semiring(
        size=2,
        labels=("0", "1"),
        zero=0,
        one=1,
        add_table=((0, 1), (1, 1)),
        mul_table=((0, 0), (0, 1)),
    )


def tropical_semiring(n: int) -> Semiring:
    """Truncated min-plus semiring on {0, 1, ..., n, inf}.

    Addition is min (inf largest), multiplication is the sum capped at n
    with inf absorbing.  The additive identity is inf; the multiplicative
    identity is 0.  Element i carries value i; the last index is inf.
    """
    if n < 0:
        raise ValueError(f"tropical truncation bound must be >= 0, got {n}")
    size = n + 2
    inf = n + 1
    labels = tuple(str(i) for i in range(n + 1)) + ("inf",)

    def mul(a: int, b: int) -> int:
        if a == inf or b == inf:
            return inf
        return min(a + b, n)

    add_table = tuple(tuple(min(a, b) for b in range(size)) for a in range(size))
    mul_table = tuple(tuple(mul(a, b) for b in range(size)) for a in range(size))
    return Semiring(size=size, labels=labels, zero=inf, one=0,
                    add_table=add_table, mul_table=mul_table)


def builtin_semiring(name: str, tropical_n: int | None = None) -> Semiring:
    """Dispatch by builtin name: ``boolean`` or ``tropical`` (needs the bound)."""
    if name == "boolean":
        return boolean_semiring()
    if name == "tropical":
        if tropical_n is None:
            raise ValueError("the tropical builtin needs a truncation bound")
        return tropical_semiring(tropical_n)
    raise ValueError(f"unknown builtin semiring {name!r}")


def table_hash(sr: Semiring) -> str:
    """SHA-256 over size, zero, one and both tables (labels excluded: they are display-only)."""
    parts = [str(sr.size), str(sr.zero), str(sr.one)]
    for table in (sr.add_table, sr.mul_table):
        for row in table:
            parts.append(" ".join(map(str, row)))
    return hashlib.sha256("\n".join(parts).encode("utf-8")).hexdigest()


def parse_semiring(text: str) -> Semiring:
    """Parse the plain-text definition format.

    Layout: ``semiring <n>``, ``labels <n tokens>``, ``zero <i>``,
    ``one <j>``, ``add`` followed by n rows of n indices, ``mul``
    likewise.  ``#`` starts a comment; blank lines are ignored.  Labels
    must be whitespace-free tokens.  Parsing checks structure only;
    callers decide whether to run ``verify_axioms``.
    """
    lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped.split()))
    pos = 0

    def take(keyword: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file: expected '{keyword}'")
        lineno, tokens = lines[pos]
        if tokens[0] != keyword:
            raise ParseError(f"line {lineno}: expected '{keyword}', got '{tokens[0]}'")
        pos += 1
        return lineno, tokens[1:]

    def as_int(token: str, lineno: int, what: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise ParseError(f"line {lineno}: {what} must be an integer, got {token!r}") from None

    lineno, rest = take("semiring")
    if len(rest) != 1:
        raise ParseError(f"line {lineno}: expected 'semiring <n>'")
    n = as_int(rest[0], lineno, "size")
    if n < 1:
        raise ParseError(f"line {lineno}: size must be positive, got {n}")

    lineno, labels = take("labels")
    if len(labels) != n:
        raise ParseError(f"line {lineno}: expected {n} labels, got {len(labels)}")

    special = {}
    for key in ("zero", "one"):
        lineno, rest = take(key)
        if len(rest) != 1:
            raise ParseError(f"line {lineno}: expected '{key} <index>'")
        idx = as_int(rest[0], lineno, key)
        if not 0 <= idx < n:
            raise ParseError(f"line {lineno}: {key} index {idx} out of range [0, {n})")
        special[key] = idx

    tables = {}
    for key in ("add", "mul"):
        lineno, rest = take(key)
        if rest:
            raise ParseError(f"line {lineno}: '{key}' takes no arguments")
        rows = []
        for i in range(n):
            if pos >= len(lines):
                raise ParseError(f"unexpected end of file: {key} row {i} missing")
            row_lineno, tokens = lines[pos]
            pos += 1
            if len(tokens) != n:
                raise ParseError(
                    f"line {row_lineno}: {key} row {i} has {len(tokens)} entries, expected {n}")
            row = []
            for tok in tokens:
                e = as_int(tok, row_lineno, f"{key} entry")
                if not 0 <= e < n:
                    raise ParseError(f"line {row_lineno}: entry {e} out of range [0, {n})")
                row.append(e)
            rows.append(tuple(row))
        tables[key] = tuple(rows)

    if pos != len(lines):
        lineno, tokens = lines[pos]
        raise ParseError(f"line {lineno}: unexpected trailing content '{' '.join(tokens)}'")
    return Semiring(size=n, labels=tuple(labels), zero=special["zero"], one=special["one"],
                    add_table=tables["add"], mul_table=tables["mul"])


def format_semiring(sr: Semiring) -> str:
    """Render a semiring in the definition file format (round-trips through parse)."""
    out = [f"semiring {sr.size}", "labels " + " ".join(sr.labels),
           f"zero {sr.zero}", f"one {sr.one}", "add"]
    out.extend(" ".join(map(str, row)) for row in sr.add_table)
    out.append("mul")
    out.extend(" ".join(map(str, row)) for row in sr.mul_table)
    return "\n".join(out) + "\n"
