"""MAX-2-SAT instances, their diagonal Hamiltonians, and instance file I/O.

A clause is a disjunction of two literals over distinct variables; its
canonical form orders the variable indices, so duplicate detection is plain
set membership. A 2-literal clause has exactly one falsifying assignment:
both literals false, i.e. x_a == neg_a and x_b == neg_b.

Instance files are JSON documents with fields ``n_vars`` and ``clauses``
(a list of ``[var_a, neg_a, var_b, neg_b]`` rows, 0-based indices, negation
flags as 0/1). Serialization is canonical -- sorted clause list, fixed
layout -- so fixtures are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import InfeasibleInstanceError, ParseError, SizeError

MAX_VARS = 24

BUNDLED_INSTANCES = ("clauses10", "clauses20", "clauses30")


@dataclass(frozen=True, order=True)
class Clause:
    """Two-literal disjunction in canonical form (var_a < var_b)."""

    var_a: int
    neg_a: bool
    var_b: int
    neg_b: bool

    def __post_init__(self):
        if not 0 <= self.var_a < self.var_b:
            raise ValueError(
                f"clause variables must satisfy 0 <= var_a < var_b, "
                f"got ({self.var_a}, {self.var_b})"
            )

    @classmethod
    def make(cls, var_a: int, neg_a, var_b: int, neg_b) -> "Clause":
        """Build a clause from literals in either order; rejects var_a == var_b."""
        if var_a == var_b:
            raise ValueError(f"clause needs two distinct variables, got {var_a} twice")
        if var_a > var_b:
            var_a, neg_a, var_b, neg_b = var_b, neg_b, var_a, neg_a
        return cls(int(var_a), bool(neg_a), int(var_b), bool(neg_b))

    def as_row(self) -> list:
        return [self.var_a, int(self.neg_a), self.var_b, int(self.neg_b)]

    def __str__(self) -> str:
        lit_a = ("~" if self.neg_a else "") + f"x{self.var_a}"
        lit_b = ("~" if self.neg_b else "") + f"x{self.var_b}"
        return f"({lit_a} | {lit_b})"


def clause_satisfied(clause: Clause, assignment) -> bool:
    """True unless both literals are false (x_a == neg_a and x_b == neg_b)."""
    if clause.var_b >= len(assignment):
        raise IndexError(
            f"assignment of length {len(assignment)} too short for variable {clause.var_b}"
        )
    return not (
        assignment[clause.var_a] == clause.neg_a
        and assignment[clause.var_b] == clause.neg_b
    )


class ProblemInstance:
    """An ordered list of distinct clauses over n_vars boolean variables.

    Equality and hashing use the canonical (sorted) clause list, matching
    the canonical file serialization.
    """

    __slots__ = ("n_vars", "clauses")

    def __init__(self, n_vars: int, clauses):
        clauses = tuple(clauses)
        if n_vars < 1:
            raise ValueError(f"n_vars must be positive, got {n_vars}")
        if clauses and n_vars < 2:
            raise ValueError("an instance with clauses needs at least 2 variables")
        for cl in clauses:
            if cl.var_b >= n_vars:
                raise ValueError(f"clause {cl} references variable >= n_vars={n_vars}")
        if len(set(clauses)) != len(clauses):
            raise ValueError("duplicate clauses are not allowed")
        self.n_vars = int(n_vars)
        self.clauses = clauses

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)

    def sorted_clauses(self) -> tuple:
        return tuple(sorted(self.clauses))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return self.n_vars == other.n_vars and self.sorted_clauses() == other.sorted_clauses()

    def __hash__(self) -> int:
        return hash((self.n_vars, self.sorted_clauses()))

    def __repr__(self) -> str:
        return f"ProblemInstance(n_vars={self.n_vars}, n_clauses={self.n_clauses})"


@dataclass(frozen=True, eq=False)
class DiagonalHamiltonian:
    """Satisfied-clause counts indexed by assignment (the diagonal of E)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.int64)
        if values.ndim != 1 or values.size & (values.size - 1) != 0 or values.size < 2:
            raise ValueError(f"diagonal length must be a power of two >= 2, got {values.size}")
        object.__setattr__(self, "values", values)

    @property
    def n_qubits(self) -> int:
        return int(self.values.size).bit_length() - 1

    def max_value(self) -> int:
        return int(self.values.max()) if self.values.size else 0


def assignment_bits(index: int, n_vars: int) -> list:
    """Decode a basis index into bits [x_0, ..., x_{n-1}], x_0 most significant."""
    return [(index >> (n_vars - 1 - i)) & 1 for i in range(n_vars)]


def _bit_columns(n_vars: int, var: int) -> np.ndarray:
    idx = np.arange(1 << n_vars, dtype=np.int64)
    return (idx >> (n_vars - 1 - var)) & 1


def build_diagonal(instance: ProblemInstance) -> DiagonalHamiltonian:
    """Satisfied-clause count for every assignment index.

    Each clause contributes 1 everywhere except on its unique falsifier, so
    the count is n_clauses minus the number of falsified clauses.
    """
    if instance.n_vars > MAX_VARS:
        raise SizeError(f"n_vars={instance.n_vars} exceeds limit {MAX_VARS}")
    n = instance.n_vars
    values = np.full(1 << n, instance.n_clauses, dtype=np.int64)
    for cl in instance.clauses:
        falsified = (_bit_columns(n, cl.var_a) == int(cl.neg_a)) & (
            _bit_columns(n, cl.var_b) == int(cl.neg_b)
        )
        values -= falsified
    return DiagonalHamiltonian(values)


def brute_force_cmax(instance: ProblemInstance) -> int:
    """Exhaustive maximum satisfiable clause count over all 2^n assignments."""
    if instance.n_vars > MAX_VARS:
        raise SizeError(f"n_vars={instance.n_vars} exceeds limit {MAX_VARS}")
    n = instance.n_vars
    counts = np.zeros(1 << n, dtype=np.int32)
    for cl in instance.clauses:
        satisfied = (_bit_columns(n, cl.var_a) != int(cl.neg_a)) | (
            _bit_columns(n, cl.var_b) != int(cl.neg_b)
        )
        counts += satisfied
    return int(counts.max()) if instance.n_clauses else 0


def max_distinct_clauses(n_vars: int) -> int:
    """4 * C(n_vars, 2): variable pairs times the four negation patterns."""
    return 2 * n_vars * (n_vars - 1)


def random_instance(n_vars: int, n_clauses: int, rng: np.random.Generator) -> ProblemInstance:
    """Draw n_clauses distinct clauses, resampling any duplicate.

    Each clause picks two unique variable indices uniformly and negates each
    independently with probability 1/2.
    """
    if n_vars < 2:
        raise ValueError(f"need at least 2 variables, got {n_vars}")
    if n_vars > MAX_VARS:
        raise SizeError(f"n_vars={n_vars} exceeds limit {MAX_VARS}")
    if n_clauses < 1:
        raise ValueError(f"n_clauses must be positive, got {n_clauses}")
    if n_clauses > max_distinct_clauses(n_vars):
        raise InfeasibleInstanceError(
            f"{n_clauses} clauses requested but only {max_distinct_clauses(n_vars)} "
            f"distinct clauses exist over {n_vars} variables"
        )
    seen = set()
    clauses = []
    while len(clauses) < n_clauses:
        a, b = rng.choice(n_vars, size=2, replace=False)
        neg_a, neg_b = rng.integers(0, 2, size=2)
        cl = Clause.make(int(a), bool(neg_a), int(b), bool(neg_b))
        if cl in seen:
            continue
        seen.add(cl)
        clauses.append(cl)
    return ProblemInstance(n_vars, clauses)


def parse_instance(text: str) -> ProblemInstance:
    """Parse an instance document; raises ParseError with position context."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"expected a JSON object, got {type(doc).__name__}")
    if "n_vars" not in doc or "clauses" not in doc:
        raise ParseError("instance document needs 'n_vars' and 'clauses' fields")
    n_vars = doc["n_vars"]
    if not isinstance(n_vars, int) or isinstance(n_vars, bool) or n_vars < 1:
        raise ParseError(f"'n_vars' must be a positive integer, got {n_vars!r}")
    if n_vars > MAX_VARS:
        raise ParseError(f"'n_vars'={n_vars} exceeds limit {MAX_VARS}")
    rows = doc["clauses"]
    if not isinstance(rows, list):
        raise ParseError("'clauses' must be a list")
    clauses = []
    seen = set()
    for pos, row in enumerate(rows):
        where = f"clause {pos}"
        if (
            not isinstance(row, list)
            or len(row) != 4
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in row)
        ):
            raise ParseError(f"{where}: expected [var_a, neg_a, var_b, neg_b] integers, got {row!r}")
        var_a, neg_a, var_b, neg_b = row
        if neg_a not in (0, 1) or neg_b not in (0, 1):
            raise ParseError(f"{where}: negation flags must be 0 or 1, got {row!r}")
        if not (0 <= var_a < n_vars and 0 <= var_b < n_vars):
            raise ParseError(f"{where}: variable index out of range [0, {n_vars}) in {row!r}")
        if var_a == var_b:
            raise ParseError(f"{where}: the two variables must be distinct, got {var_a} twice")
        cl = Clause.make(var_a, neg_a, var_b, neg_b)
        if cl in seen:
            raise ParseError(f"{where}: duplicate clause {cl}")
        seen.add(cl)
        clauses.append(cl)
    return ProblemInstance(n_vars, clauses)


def serialize_instance(instance: ProblemInstance) -> str:
    """Canonical byte-stable serialization: sorted clause list, fixed layout."""
    lines = ["{", f'  "n_vars": {instance.n_vars},', '  "clauses": [']
    rows = [cl.as_row() for cl in instance.sorted_clauses()]
    for pos, row in enumerate(rows):
        comma = "," if pos + 1 < len(rows) else ""
        lines.append(f"    [{row[0]}, {row[1]}, {row[2]}, {row[3]}]{comma}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_instance(path) -> ProblemInstance:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_instance(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_instance(instance: ProblemInstance, path) -> None:
    Path(path).write_text(serialize_instance(instance), encoding="utf-8")


def bundled_instance_path(name: str) -> Path:
    """Filesystem path of one of the packaged instances (see BUNDLED_INSTANCES)."""
    if name not in BUNDLED_INSTANCES:
        raise ValueError(f"unknown bundled instance {name!r}; choose from {BUNDLED_INSTANCES}")
    return Path(str(resources.files(__package__) / "instances" / f"{name}.json"))


def bundled_instance(name: str) -> ProblemInstance:
    return load_instance(bundled_instance_path(name))
