"""Equations and systems over a group, and their reduction to diagonal form.

A left-hand side is a :class:`MixedWord`: a product of variable powers and
constant group elements. Coefficient-free systems are brought to the shape

    x_i^{m_i} u_i(x) = h_i     (heads, m_i > 0)
    u_j(x) = h_j               (pure equations)

with every ``u`` of zero exponent sum in each variable, using only the moves
``w_i -> w_i w_j^{±1}`` (rows) and ``x_i -> x_i x_j^{±1}`` (variables), plus a
final sign fix ``x_i -> x_i^{-1}``. Every move is recorded in a
:class:`SubstitutionLog` that can be replayed and used to carry solutions
between the original and the reduced system.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence, Union

from .errors import PreconditionError
from .freewords import ReducedWord
from .groups.base import Group

Element = Any
Assignment = dict


@dataclass(frozen=True)
class Var:
    name: str
    exp: int = 1


@dataclass(frozen=True)
class Const:
    value: Any


Item = Union[Var, Const]


@dataclass(frozen=True)
class MixedWord:
    """Normalized product of variable powers and constants.

    Build through :meth:`of` so adjacent items are merged; the raw
    constructor assumes normalized input.
    """

    items: tuple = ()

    @classmethod
    def of(cls, group: Group, items: Iterable[Item]) -> "MixedWord":
        stack: list[Item] = []
        for it in items:
            if isinstance(it, Var):
                if it.exp == 0:
                    continue
                if stack and isinstance(stack[-1], Var) and stack[-1].name == it.name:
                    e = stack.pop().exp + it.exp
                    if e:
                        stack.append(Var(it.name, e))
                    continue
                stack.append(it)
            elif isinstance(it, Const):
                v = it.value
                if stack and isinstance(stack[-1], Const):
                    v = group.mul(stack.pop().value, v)
                if not group.is_identity(v):
                    stack.append(Const(v))
            else:
                raise TypeError(f"not a mixed-word item: {it!r}")
        return cls(tuple(stack))

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MixedWord":
        return cls((Var(name, exp),) if exp else ())

    @classmethod
    def const(cls, group: Group, value) -> "MixedWord":
        return cls.of(group, [Const(value)])

    def mul(self, other: "MixedWord", group: Group) -> "MixedWord":
        return MixedWord.of(group, self.items + other.items)

    def inverse(self, group: Group) -> "MixedWord":
        out = []
        for it in reversed(self.items):
            out.append(Var(it.name, -it.exp) if isinstance(it, Var) else Const(group.inv(it.value)))
        return MixedWord(tuple(out))

    def power(self, k: int, group: Group) -> "MixedWord":
        if k < 0:
            return self.inverse(group).power(-k, group)
        if len(self.items) == 1 and isinstance(self.items[0], Var):
            v = self.items[0]
            return MixedWord.var(v.name, v.exp * k)
        result = MixedWord()
        base = self
        while k:
            if k & 1:
                result = result.mul(base, group)
            k >>= 1
            if k:
                base = base.mul(base, group)
        return result

    def variables(self) -> list[str]:
        seen: list[str] = []
        for it in self.items:
            if isinstance(it, Var) and it.name not in seen:
                seen.append(it.name)
        return seen

    def constants(self) -> list:
        return [it.value for it in self.items if isinstance(it, Const)]

    def has_constants(self) -> bool:
        return any(isinstance(it, Const) for it in self.items)

    def exponent_sums(self) -> dict[str, int]:
        acc: dict[str, int] = {}
        for it in self.items:
            if isinstance(it, Var):
                acc[it.name] = acc.get(it.name, 0) + it.exp
        return {k: v for k, v in acc.items() if v}

    def substitute(self, mapping: Mapping[str, "MixedWord"], group: Group) -> "MixedWord":
        out: list[Item] = []
        for it in self.items:
            if isinstance(it, Var) and it.name in mapping:
                out.extend(mapping[it.name].power(it.exp, group).items)
            else:
                out.append(it)
        return MixedWord.of(group, out)

    def evaluate(self, assignment: Mapping[str, Element], group: Group) -> Element:
        acc = group.identity()
        for it in self.items:
            if isinstance(it, Var):
                acc = group.mul(acc, group.power(assignment[it.name], it.exp))
            else:
                acc = group.mul(acc, it.value)
        return acc

    def to_free_word(self, variables: Sequence[str]) -> ReducedWord:
        if self.has_constants():
            raise PreconditionError("word contains coefficients")
        index = {v: i for i, v in enumerate(variables)}
        return ReducedWord.from_syllables((index[it.name], it.exp) for it in self.items)

    @classmethod
    def from_free_word(cls, w: ReducedWord, variables: Sequence[str]) -> "MixedWord":
        return cls(tuple(Var(variables[g], e) for g, e in w.syllables))

    def is_identity(self) -> bool:
        return not self.items

    def format(self, group: Group) -> str:
        if not self.items:
            return "1"
        parts = []
        for it in self.items:
            if isinstance(it, Var):
                parts.append(f"?{it.name}" if it.exp == 1 else f"?{it.name}^{it.exp}")
            else:
                text = group.format(it.value)
                parts.append(text if text.startswith("(") or "*" not in text else f"({text})")
        return "*".join(parts)


@dataclass(frozen=True)
class Equation:
    lhs: MixedWord
    rhs: Any

    def format(self, group: Group) -> str:
        return f"{self.lhs.format(group)} = {group.format(self.rhs)}"


@dataclass(frozen=True)
class EquationSystem:
    group: Group
    variables: tuple[str, ...]
    equations: tuple[Equation, ...]

    def __post_init__(self):
        names = set(self.variables)
        if len(names) != len(self.variables):
            raise ValueError("duplicate variable names")
        for eq in self.equations:
            missing = set(eq.lhs.variables()) - names
            if missing:
                raise ValueError(f"undeclared variables {sorted(missing)}")
            self.group.check(eq.rhs)

    @classmethod
    def build(cls, group: Group, equations: Sequence[Equation], variables: Sequence[str] | None = None):
        """System whose variable list defaults to first-appearance order."""
        if variables is None:
            seen: list[str] = []
            for eq in equations:
                for v in eq.lhs.variables():
                    if v not in seen:
                        seen.append(v)
            variables = seen
        return cls(group, tuple(variables), tuple(equations))

    def has_coefficients(self) -> bool:
        return any(eq.lhs.has_constants() for eq in self.equations)

    def format(self) -> str:
        lines = [f"group: {self.group.describe()}", "variables: " + ", ".join(self.variables)]
        lines += [eq.format(self.group) for eq in self.equations]
        return "\n".join(lines) + "\n"


def evaluate(system: EquationSystem, assignment: Mapping[str, Element]) -> list[bool]:
    """Per-equation truth values under ``assignment``."""
    missing = set(system.variables) - set(assignment)
    if missing:
        raise PreconditionError(f"assignment misses variables {sorted(missing)}")
    g = system.group
    return [g.equal(eq.lhs.evaluate(assignment, g), eq.rhs) for eq in system.equations]


def is_solution(system: EquationSystem, assignment: Mapping[str, Element]) -> bool:
    return all(evaluate(system, assignment))


# -- coefficient elimination ------------------------------------------------

def _fresh_names(taken: Iterable[str], prefix: str = "z"):
    taken = set(taken)
    k = 1
    while True:
        name = f"{prefix}{k}"
        if name not in taken:
            taken.add(name)
            yield name
        k += 1


def eliminate_coefficients(system: EquationSystem, prefix: str = "z") -> EquationSystem:
    """Replace each coefficient class by a fresh variable ``z`` plus an equation ``z = h``.

    A class is a group element together with its inverse, so ``h`` and
    ``h^-1`` become ``z`` and ``z^-1``. New variables are appended in order
    of first appearance, and their defining equations follow the
    transformed ones.
    """
    g = system.group
    names = _fresh_names(system.variables, prefix)
    classes: list[tuple[Any, str]] = []

    def lookup(value) -> Var:
        for rep, name in classes:
            if g.equal(rep, value):
                return Var(name, 1)
        inv = g.inv(value)
        for rep, name in classes:
            if g.equal(rep, inv):
                return Var(name, -1)
        name = next(names)
        classes.append((value, name))
        return Var(name, 1)

    new_eqs = []
    for eq in system.equations:
        items = [lookup(it.value) if isinstance(it, Const) else it for it in eq.lhs.items]
        new_eqs.append(Equation(MixedWord.of(g, items), eq.rhs))
    for value, name in classes:
        new_eqs.append(Equation(MixedWord.var(name), value))
    return EquationSystem(g, system.variables + tuple(n for _, n in classes), tuple(new_eqs))


# -- exponent matrices and moves ---------------------------------------------

def exponent_matrix(system: EquationSystem) -> list[list[int]]:
    if system.has_coefficients():
        raise PreconditionError("exponent matrix needs a coefficient-free system")
    rows = []
    for eq in system.equations:
        sums = eq.lhs.exponent_sums()
        rows.append([sums.get(v, 0) for v in system.variables])
    return rows


@dataclass(frozen=True)
class RowMove:
    """``w_i -> w_i w_j^sign`` and ``h_i -> h_i h_j^sign``."""

    i: int
    j: int
    sign: int


@dataclass(frozen=True)
class VarMove:
    """Substitute ``x_i -> x_i x_j^sign`` (column ``j`` gains ``sign`` times column ``i``)."""

    i: int
    j: int
    sign: int


@dataclass(frozen=True)
class InvertMove:
    """Substitute ``x_i -> x_i^-1``."""

    i: int


Move = Union[RowMove, VarMove, InvertMove]


@dataclass(frozen=True)
class SubstitutionLog:
    variables: tuple[str, ...]
    moves: tuple = ()

    def to_json(self) -> list[dict]:
        out = []
        for m in self.moves:
            if isinstance(m, RowMove):
                out.append({"move": "row", "i": m.i, "j": m.j, "sign": m.sign})
            elif isinstance(m, VarMove):
                out.append({"move": "var", "i": self.variables[m.i], "j": self.variables[m.j], "sign": m.sign})
            else:
                out.append({"move": "invert", "i": self.variables[m.i]})
        return out


def apply_move(system: EquationSystem, move: Move) -> EquationSystem:
    g = system.group
    eqs = list(system.equations)
    if isinstance(move, RowMove):
        if move.i == move.j:
            raise ValueError("row move needs two distinct equations")
        wi, wj = eqs[move.i], eqs[move.j]
        lhs = wi.lhs.mul(wj.lhs.power(move.sign, g), g)
        rhs = g.mul(wi.rhs, g.power(wj.rhs, move.sign))
        eqs[move.i] = Equation(lhs, rhs)
    elif isinstance(move, VarMove):
        if move.i == move.j:
            raise ValueError("variable move needs two distinct variables")
        xi, xj = system.variables[move.i], system.variables[move.j]
        repl = MixedWord((Var(xi, 1), Var(xj, move.sign)))
        eqs = [Equation(eq.lhs.substitute({xi: repl}, g), eq.rhs) for eq in eqs]
    elif isinstance(move, InvertMove):
        xi = system.variables[move.i]
        eqs = [Equation(eq.lhs.substitute({xi: MixedWord.var(xi, -1)}, g), eq.rhs) for eq in eqs]
    else:
        raise TypeError(f"unknown move {move!r}")
    return EquationSystem(g, system.variables, tuple(eqs))


def replay(log: SubstitutionLog, system: EquationSystem) -> EquationSystem:
    if tuple(system.variables) != tuple(log.variables):
        raise PreconditionError("log and system variables differ")
    for m in log.moves:
        system = apply_move(system, m)
    return system


def apply_move_to_matrix(matrix: list[list[int]], move: Move) -> list[list[int]]:
    """Integer row/column operation matching ``move``."""
    a = [row[:] for row in matrix]
    if isinstance(move, RowMove):
        a[move.i] = [x + move.sign * y for x, y in zip(a[move.i], a[move.j])]
    elif isinstance(move, VarMove):
        for row in a:
            row[move.j] += move.sign * row[move.i]
    else:
        for row in a:
            row[move.i] = -row[move.i]
    return a


# -- diagonal form -----------------------------------------------------------

@dataclass(frozen=True)
class Head:
    equation: int
    variable: str
    multiplicity: int
    tail: MixedWord


@dataclass(frozen=True)
class Pure:
    equation: int
    word: MixedWord


@dataclass(frozen=True)
class DiagonalForm:
    system: EquationSystem
    heads: tuple[Head, ...]
    pures: tuple[Pure, ...]

    def to_json(self) -> dict:
        g = self.system.group
        return {
            "group": g.describe(),
            "variables": list(self.system.variables),
            "heads": [
                {
                    "equation": h.equation,
                    "variable": h.variable,
                    "multiplicity": h.multiplicity,
                    "tail": h.tail.format(g),
                    "rhs": g.format(self.system.equations[h.equation].rhs),
                }
                for h in self.heads
            ],
            "pure": [
                {
                    "equation": p.equation,
                    "word": p.word.format(g),
                    "rhs": g.format(self.system.equations[p.equation].rhs),
                }
                for p in self.pures
            ],
        }


def diagonal_form_of(system: EquationSystem) -> DiagonalForm:
    """Read heads and pure equations off a system whose exponent matrix is diagonal."""
    g = system.group
    mat = exponent_matrix(system)
    heads, pures = [], []
    used: set[int] = set()
    for r, row in enumerate(mat):
        nz = [k for k, a in enumerate(row) if a]
        lhs = system.equations[r].lhs
        if not nz:
            pures.append(Pure(r, lhs))
            continue
        if len(nz) != 1 or row[nz[0]] <= 0 or nz[0] in used:
            raise PreconditionError(f"equation {r} is not in diagonal shape")
        k = nz[0]
        used.add(k)
        name = system.variables[k]
        m = row[k]
        tail = MixedWord.var(name, -m).mul(lhs, g)
        heads.append(Head(r, name, m, tail))
    return DiagonalForm(system, tuple(heads), tuple(pures))


def reduce_to_diagonal(system: EquationSystem) -> tuple[DiagonalForm, SubstitutionLog]:
    """Minimal-pivot Euclidean reduction expressed through row and variable moves."""
    if system.has_coefficients():
        raise PreconditionError("eliminate coefficients before reducing")
    a = exponent_matrix(system)
    nrows, ncols = len(a), len(system.variables)
    moves: list[Move] = []

    def emit(move: Move):
        nonlocal a, system
        moves.append(move)
        a = apply_move_to_matrix(a, move)
        system = apply_move(system, move)

    rows = set(range(nrows))
    cols = set(range(ncols))
    while True:
        best = None
        for r in sorted(rows):
            for c in sorted(cols):
                v = a[r][c]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (r, c)
        if best is None:
            break
        p, c = best
        pv = a[p][c]
        dirty = False
        for r in sorted(rows - {p}):
            q = a[r][c] // pv
            for _ in range(abs(q)):
                emit(RowMove(r, p, -1 if q > 0 else 1))
            if a[r][c]:
                dirty = True
        for k in sorted(cols - {c}):
            q = a[p][k] // pv
            for _ in range(abs(q)):
                emit(VarMove(c, k, -1 if q > 0 else 1))
            if a[p][k]:
                dirty = True
        if dirty:
            continue
        if pv < 0:
            emit(InvertMove(c))
        rows.discard(p)
        cols.discard(c)
    log = SubstitutionLog(tuple(system.variables), tuple(moves))
    return diagonal_form_of(system), log


# -- moving solutions along the log -----------------------------------------

def _check_assignment(log: SubstitutionLog, assignment: Mapping[str, Element]):
    if set(assignment) != set(log.variables):
        raise PreconditionError("assignment variables do not match the log")


def map_solution_forward(log: SubstitutionLog, assignment: Mapping[str, Element], group: Group) -> Assignment:
    """Original-system assignment to reduced-system assignment."""
    _check_assignment(log, assignment)
    vals = [assignment[v] for v in log.variables]
    for m in log.moves:
        if isinstance(m, VarMove):
            vals[m.i] = group.mul(vals[m.i], group.power(vals[m.j], -m.sign))
        elif isinstance(m, InvertMove):
            vals[m.i] = group.inv(vals[m.i])
    return dict(zip(log.variables, vals))


def map_solution_back(log: SubstitutionLog, assignment: Mapping[str, Element], group: Group) -> Assignment:
    """Reduced-system assignment to original-system assignment."""
    _check_assignment(log, assignment)
    vals = [assignment[v] for v in log.variables]
    for m in reversed(log.moves):
        if isinstance(m, VarMove):
            vals[m.i] = group.mul(vals[m.i], group.power(vals[m.j], m.sign))
        elif isinstance(m, InvertMove):
            vals[m.i] = group.inv(vals[m.i])
    return dict(zip(log.variables, vals))


__all__ = [
    "Var",
    "Const",
    "MixedWord",
    "Equation",
    "EquationSystem",
    "RowMove",
    "VarMove",
    "InvertMove",
    "SubstitutionLog",
    "Head",
    "Pure",
    "DiagonalForm",
    "evaluate",
    "is_solution",
    "eliminate_coefficients",
    "exponent_matrix",
    "apply_move",
    "apply_move_to_matrix",
    "replay",
    "reduce_to_diagonal",
    "diagonal_form_of",
    "map_solution_forward",
    "map_solution_back",
]
