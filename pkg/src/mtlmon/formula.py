"""MTL formula AST: half-open integer intervals, connectives, timed operators.

All nodes are frozen dataclasses, so structural equality and hashing come
for free and formulas can live in sets (verdict sets, branch dedup).
Construction goes through the smart constructors (`mk_not`, `mk_or`, ...)
which constant-fold; `simplify` re-normalizes arbitrary trees with the
same rules, so simplify(progressed output) is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

INF = None  # interval end sentinel for an unbounded interval


@dataclass(frozen=True)
class Interval:
    """Half-open [start, end) over non-negative integers; end=None means unbounded.

    Any constructed interval with a finite end <= start collapses to the
    canonical empty interval [0, 0).
    """

    start: int
    end: Optional[int]

    def __post_init__(self):
        if self.start < 0:
            raise ValueError(f"interval start must be >= 0, got {self.start}")
        if self.end is not None and self.end <= self.start:
            object.__setattr__(self, "start", 0)
            object.__setattr__(self, "end", 0)

    @property
    def is_empty(self) -> bool:
        return self.end == 0

    @property
    def unbounded(self) -> bool:
        return self.end is None

    def __contains__(self, a: int) -> bool:
        if self.end is None:
            return a >= self.start
        return self.start <= a < self.end

    def shift(self, t: int) -> "Interval":
        """Subtract t from both endpoints, clamping at 0 (unbounded stays unbounded)."""
        if t < 0:
            raise ValueError("shift amount must be >= 0")
        new_start = max(0, self.start - t)
        new_end = None if self.end is None else max(0, self.end - t)
        return Interval(new_start, new_end)

    def __str__(self) -> str:
        hi = "inf" if self.end is None else str(self.end)
        return f"[{self.start},{hi})"


EMPTY = Interval(0, 0)
FULL = Interval(0, None)


def interval_shift(iv: Interval, t: int) -> Interval:
    return iv.shift(t)


def in_interval(tau_i: int, tau_0: int, iv: Interval) -> bool:
    """True iff the elapsed time tau_i - tau_0 falls in the half-open interval."""
    return (tau_i - tau_0) in iv


class Formula:
    """Base class; subclasses are frozen dataclasses."""

    __slots__ = ()

    def __str__(self) -> str:
        from .parser import format_formula

        return format_formula(self)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} {self}>"


@dataclass(frozen=True, repr=False)
class TrueF(Formula):
    pass


@dataclass(frozen=True, repr=False)
class FalseF(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class SumAtom(Formula):
    """Aggregate constraint: sum(to:to_party) >= sum(from:from_party) + offset."""

    to_party: str
    from_party: str
    offset: int = 0


@dataclass(frozen=True, repr=False)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Until(Formula):
    left: Formula
    interval: Interval
    right: Formula


@dataclass(frozen=True, repr=False)
class Eventually(Formula):
    interval: Interval
    operand: Formula


@dataclass(frozen=True, repr=False)
class Globally(Formula):
    interval: Interval
    operand: Formula


TRUE = TrueF()
FALSE = FalseF()


def is_const(f: Formula) -> bool:
    return isinstance(f, (TrueF, FalseF))


# ---------------------------------------------------------------------------
# Smart constructors: build nodes with constant folding applied.
# ---------------------------------------------------------------------------


def mk_not(f: Formula) -> Formula:
    if isinstance(f, TrueF):
        return FALSE
    if isinstance(f, FalseF):
        return TRUE
    if isinstance(f, Not):
        return f.operand
    return Not(f)


def _flatten(f: Formula, cls) -> Iterable[Formula]:
    if isinstance(f, cls):
        yield from _flatten(f.left, cls)
        yield from _flatten(f.right, cls)
    else:
        yield f


def mk_or(*fs: Formula) -> Formula:
    """Disjunction of any number of operands; folds constants, dedups, flattens."""
    seen = []
    for f in fs:
        for g in _flatten(f, Or):
            if isinstance(g, TrueF):
                return TRUE
            if isinstance(g, FalseF):
                continue
            if g not in seen:
                seen.append(g)
    if not seen:
        return FALSE
    out = seen[-1]
    for g in reversed(seen[:-1]):
        out = Or(g, out)
    return out


def mk_and(*fs: Formula) -> Formula:
    seen = []
    for f in fs:
        for g in _flatten(f, And):
            if isinstance(g, FalseF):
                return FALSE
            if isinstance(g, TrueF):
                continue
            if g not in seen:
                seen.append(g)
    if not seen:
        return TRUE
    out = seen[-1]
    for g in reversed(seen[:-1]):
        out = And(g, out)
    return out


def mk_implies(l: Formula, r: Formula) -> Formula:
    if isinstance(l, FalseF) or isinstance(r, TrueF):
        return TRUE
    if isinstance(l, TrueF):
        return r
    if isinstance(r, FalseF):
        return mk_not(l)
    return Implies(l, r)


def mk_until(l: Formula, iv: Interval, r: Formula) -> Formula:
    if iv.is_empty:
        return FALSE
    if isinstance(r, FalseF):
        return FALSE
    return Until(l, iv, r)


def mk_eventually(iv: Interval, f: Formula) -> Formula:
    if iv.is_empty:
        return FALSE
    if isinstance(f, FalseF):
        return FALSE
    return Eventually(iv, f)


def mk_globally(iv: Interval, f: Formula) -> Formula:
    if iv.is_empty:
        return TRUE
    if isinstance(f, TrueF):
        return TRUE
    return Globally(iv, f)


def simplify(f: Formula) -> Formula:
    """Bottom-up constant folding; truth-preserving on every timed trace."""
    if isinstance(f, (TrueF, FalseF, Atom, SumAtom)):
        return f
    if isinstance(f, Not):
        return mk_not(simplify(f.operand))
    if isinstance(f, Or):
        return mk_or(simplify(f.left), simplify(f.right))
    if isinstance(f, And):
        return mk_and(simplify(f.left), simplify(f.right))
    if isinstance(f, Implies):
        return mk_implies(simplify(f.left), simplify(f.right))
    if isinstance(f, Until):
        return mk_until(simplify(f.left), f.interval, simplify(f.right))
    if isinstance(f, Eventually):
        return mk_eventually(f.interval, simplify(f.operand))
    if isinstance(f, Globally):
        return mk_globally(f.interval, simplify(f.operand))
    raise TypeError(f"not a formula: {f!r}")


def shift_anchored(f: Formula, t: int) -> Formula:
    """Shift intervals anchored at the evaluation point by elapsed time t.

    Used when a residual formula from one segment is carried across an
    event-free time gap of length t before the next segment begins.
    Operand-internal intervals are anchored at their own (future)
    positions and are left untouched.
    """
    if t == 0:
        return f
    if isinstance(f, (TrueF, FalseF, Atom, SumAtom)):
        return f
    if isinstance(f, Not):
        return mk_not(shift_anchored(f.operand, t))
    if isinstance(f, Or):
        return mk_or(shift_anchored(f.left, t), shift_anchored(f.right, t))
    if isinstance(f, And):
        return mk_and(shift_anchored(f.left, t), shift_anchored(f.right, t))
    if isinstance(f, Implies):
        return mk_implies(shift_anchored(f.left, t), shift_anchored(f.right, t))
    if isinstance(f, Until):
        return mk_until(f.left, f.interval.shift(t), f.right)
    if isinstance(f, Eventually):
        return mk_eventually(f.interval.shift(t), f.operand)
    if isinstance(f, Globally):
        return mk_globally(f.interval.shift(t), f.operand)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> frozenset:
    """All Atom / SumAtom leaves of a formula."""
    out = set()

    def walk(g: Formula):
        if isinstance(g, (Atom, SumAtom)):
            out.add(g)
        elif isinstance(g, Not):
            walk(g.operand)
        elif isinstance(g, (Or, And, Implies)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Until):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Eventually, Globally)):
            walk(g.operand)

    walk(f)
    return frozenset(out)


def propositional_atoms(f: Formula) -> frozenset:
    """Atoms with at least one occurrence outside every timed operator;
    such occurrences are read in the first state of a trace."""
    out = set()

    def walk(g: Formula):
        if isinstance(g, (Atom, SumAtom)):
            out.add(g)
        elif isinstance(g, Not):
            walk(g.operand)
        elif isinstance(g, (Or, And, Implies)):
            walk(g.left)
            walk(g.right)
        # Until / Eventually / Globally operands are handled per node

    walk(f)
    return frozenset(out)


def temporal_nodes(f: Formula) -> list:
    """All timed-operator nodes in a deterministic (pre-order) order."""
    out = []

    def walk(g: Formula):
        if isinstance(g, Not):
            walk(g.operand)
        elif isinstance(g, (Or, And, Implies)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Until):
            out.append(g)
            walk(g.left)
            walk(g.right)
        elif isinstance(g, (Eventually, Globally)):
            out.append(g)
            walk(g.operand)

    walk(f)
    return out


def max_nesting(f: Formula) -> int:
    """Depth of temporal nesting (0 for purely propositional formulas)."""
    if isinstance(f, (TrueF, FalseF, Atom, SumAtom)):
        return 0
    if isinstance(f, Not):
        return max_nesting(f.operand)
    if isinstance(f, (Or, And, Implies)):
        return max(max_nesting(f.left), max_nesting(f.right))
    if isinstance(f, Until):
        return 1 + max(max_nesting(f.left), max_nesting(f.right))
    if isinstance(f, (Eventually, Globally)):
        return 1 + max_nesting(f.operand)
    raise TypeError(f"not a formula: {f!r}")
