"""Solver-backed verdict engine.

One segment's question is unrolled into a quantifier-free boolean/integer
problem over SMT-LIB v2 text and handed to an external solver process; sat
models are decoded back into a (cut order, timestamp assignment) pair,
progression is replayed on the decoded linearization, and a blocking
assertion over the decision bits that determine the rewritten formula is
added so repeated solving enumerates the distinct outcomes.

Symbol scheme (stable across runs for identical inputs):

    rho_<step>_<event_index>   Bool   event is in the cut at this step
    delta_<event_index>        Int    perturbed time of the event
    tau_<step>                 Int    time of the step's added event
    at_<pos>_<atom_id>         Bool   atom truth in the frontier state
    first, span, off_<pos>     Int    tau_1, tau_m - tau_1, tau_<pos+1> - tau_1
    verdict_<node_id>_<pos>    Bool   finite-trace truth of the subformula
    wit_/vio_/pref_/guard_<node_id>   Bool   per-node rewrite decision bits
    shout_<node_id>            Int    the node's window shift outcome

Steps run 1..m; trace position p corresponds to step p+1. Atom ids number
the formula's distinct state predicates in sorted order; node ids number
formula nodes in pre-order.
"""

from __future__ import annotations

import shlex
import subprocess
import sys
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .computation import Computation, Event, is_consistent_cut_indices, time_window
from .formula import (
    And,
    Atom,
    Eventually,
    FalseF,
    Formula,
    Globally,
    Implies,
    Interval,
    Not,
    Or,
    SumAtom,
    TrueF,
    Until,
    atoms_of,
    max_nesting,
    propositional_atoms,
    shift_anchored,
    simplify,
)
from .oracle import merge_frontier
from .progression import progress
from .semantics import State, TimedTrace

DEFAULT_TIMEOUT = 60.0
DEFAULT_VAR_BUDGET = 5000

SATISFACTION = "satisfaction"
VIOLATION = "violation"
ANY = "any"


class EncodingError(ValueError):
    """Formula shape outside the encodable fragment."""


class SegmentTooLargeError(ValueError):
    """Encoding would exceed the configured boolean-variable budget."""


class SolverCrashError(RuntimeError):
    pass


class SolverTimeoutError(RuntimeError):
    pass


class ModelDecodeError(RuntimeError):
    pass


def bundled_solver_command() -> str:
    """Command line for the reference solver shipped with this package."""
    return f"{sys.executable} -m mtlmon.refsolver"


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmtProblem:
    """Declarations and assertions (without check-sat) plus decode metadata."""

    text: str
    events: Tuple[Event, ...]
    epsilon: int
    floor: Optional[int]
    carry: Tuple[Tuple[str, State], ...]
    signature_bools: Tuple[str, ...]
    signature_ints: Tuple[str, ...]
    formula: Formula

    @property
    def m(self) -> int:
        return len(self.events)


def _atom_key(a) -> tuple:
    if isinstance(a, Atom):
        return (0, a.name, "", 0)
    return (1, a.to_party, a.from_party, a.offset)


def _bool_or(parts: List[str]) -> str:
    parts = [p for p in parts if p != "false"]
    if any(p == "true" for p in parts):
        return "true"
    if not parts:
        return "false"
    if len(parts) == 1:
        return parts[0]
    return "(or " + " ".join(parts) + ")"


def _bool_and(parts: List[str]) -> str:
    parts = [p for p in parts if p != "true"]
    if any(p == "false" for p in parts):
        return "false"
    if not parts:
        return "true"
    if len(parts) == 1:
        return parts[0]
    return "(and " + " ".join(parts) + ")"


class _Encoder:
    def __init__(
        self,
        c: Computation,
        f: Formula,
        mode: str,
        floor: Optional[int],
        carry: Mapping[str, State],
        var_budget: int,
        thread_timing: bool = False,
    ):
        self.thread_timing = thread_timing
        if len(c) == 0:
            raise EncodingError("cannot encode an empty segment")
        if mode not in (SATISFACTION, VIOLATION, ANY):
            raise ValueError(f"unknown mode {mode!r}")
        self.c = c
        self.f = f
        self.mode = mode
        self.floor = floor
        self.carry = dict(carry)
        self.var_budget = var_budget
        self.m = len(c.events)
        self.decls: List[str] = []
        self.asserts: List[str] = []
        self.n_bools = 0
        self.atoms = sorted(atoms_of(f), key=_atom_key)
        self.atom_id = {a: i for i, a in enumerate(self.atoms)}
        self.nested = max_nesting(f) >= 2
        self.nodes: List[Formula] = []
        self._number_nodes(f)
        self.sig_bools: List[str] = []
        self.sig_ints: List[str] = []
        # per-process time-ordered event indices
        self.by_proc: Dict[str, List[int]] = {}
        for i, e in enumerate(c.events):
            self.by_proc.setdefault(e.process, []).append(i)
        for idxs in self.by_proc.values():
            idxs.sort(key=lambda i: c.events[i].local_time)

    def _number_nodes(self, g: Formula):
        self.nodes.append(g)
        if isinstance(g, Not):
            self._number_nodes(g.operand)
        elif isinstance(g, (Or, And, Implies)):
            self._number_nodes(g.left)
            self._number_nodes(g.right)
        elif isinstance(g, Until):
            self._number_nodes(g.left)
            self._number_nodes(g.right)
        elif isinstance(g, (Eventually, Globally)):
            self._number_nodes(g.operand)

    def declare(self, name: str, sort: str):
        self.decls.append(f"(declare-const {name} {sort})")
        if sort == "Bool":
            self.n_bools += 1
            if self.n_bools > self.var_budget:
                raise SegmentTooLargeError(
                    f"segment needs more than {self.var_budget} boolean variables"
                )

    def add(self, term: str):
        self.asserts.append(f"(assert {term})")

    # -- structural constraints over the cut sequence --

    def encode_structure(self):
        c, m = self.c, self.m
        for step in range(m + 1):
            for k in range(m):
                self.declare(f"rho_{step}_{k}", "Bool")
        for k in range(m):
            self.declare(f"delta_{k}", "Int")
        for step in range(1, m + 1):
            self.declare(f"tau_{step}", "Int")

        for k in range(m):
            self.add(f"(not rho_0_{k})")
            self.add(f"rho_{m}_{k}")
        for step in range(m):
            for k in range(m):
                self.add(f"(=> rho_{step}_{k} rho_{step + 1}_{k})")
        for step in range(1, m):
            total = " ".join(f"(ite rho_{step}_{k} 1 0)" for k in range(m))
            self.add(f"(= (+ {total}) {step})")
        for b in range(m):
            for a in c.hb[b]:
                for step in range(1, m):
                    self.add(f"(=> rho_{step}_{b} rho_{step}_{a})")

        lows, highs = [], []
        for k, e in enumerate(c.events):
            w = time_window(e, c.epsilon)
            lo, hi = w.start, w.stop - 1
            self.add(f"(>= delta_{k} {lo})")
            self.add(f"(<= delta_{k} {hi})")
            lows.append(lo)
            highs.append(hi)
        tmin = min(lows)
        if self.floor is not None:
            tmin = max(tmin, self.floor)
            self.add(f"(>= tau_1 {self.floor})")
        tmax = max(highs)
        for step in range(1, m + 1):
            self.add(f"(>= tau_{step} {tmin})")
            self.add(f"(<= tau_{step} {tmax})")
            for k in range(m):
                prev = f"(not rho_{step - 1}_{k})"
                self.add(f"(=> (and rho_{step}_{k} {prev}) (= tau_{step} delta_{k}))")
        for step in range(1, m):
            self.add(f"(>= tau_{step + 1} tau_{step})")

    # -- frontier state predicates --

    def _frontier_atom(self, a: Atom, step: int) -> str:
        parts: List[str] = []
        for proc in sorted(self.by_proc):
            idxs = self.by_proc[proc]
            for pos, k in enumerate(idxs):
                if a.name not in self.c.events[k].payload.props:
                    continue
                if pos + 1 < len(idxs):
                    parts.append(f"(and rho_{step}_{k} (not rho_{step}_{idxs[pos + 1]}))")
                else:
                    parts.append(f"rho_{step}_{k}")
        for proc in sorted(self.carry):
            if a.name not in self.carry[proc].props:
                continue
            idxs = self.by_proc.get(proc)
            if idxs:
                parts.append(f"(not rho_{step}_{idxs[0]})")
            else:
                parts.append("true")
        return _bool_or(parts)

    def _total_term(self, key: str, step: int) -> str:
        """Linear term for the cross-process sum of a running-total variable."""
        const = 0
        parts: List[str] = []
        for proc in sorted(set(self.by_proc) | set(self.carry)):
            base = self.carry.get(proc, State()).variables.get(key, 0)
            const += base
            prev = base
            for k in self.by_proc.get(proc, []):
                cur = self.c.events[k].payload.variables.get(key, prev)
                d = cur - prev
                if d:
                    parts.append(f"(ite rho_{step}_{k} {_int(d)} 0)")
                prev = cur
        if not parts:
            return _int(const)
        return f"(+ {_int(const)} " + " ".join(parts) + ")"

    def _frontier_sum(self, a: SumAtom, step: int) -> str:
        to_term = self._total_term(f"to_{a.to_party}", step)
        from_term = self._total_term(f"from_{a.from_party}", step)
        rhs = from_term if a.offset == 0 else f"(+ {from_term} {_int(a.offset)})"
        return f"(>= {to_term} {rhs})"

    def encode_states(self):
        for pos in range(self.m):
            step = pos + 1
            for a in self.atoms:
                name = f"at_{pos}_{self.atom_id[a]}"
                self.declare(name, "Bool")
                if isinstance(a, Atom):
                    self.add(f"(= {name} {self._frontier_atom(a, step)})")
                else:
                    self.add(f"(= {name} {self._frontier_sum(a, step)})")

    # -- timing helpers and the blocking signature --

    def encode_timing(self):
        windows = [time_window(e, self.c.epsilon) for e in self.c.events]
        tmin = min(w.start for w in windows)
        if self.floor is not None:
            tmin = max(tmin, self.floor)
        tmax = max(w.stop - 1 for w in windows)
        width = max(0, tmax - tmin)
        self.declare("first", "Int")
        self.add(f"(= first tau_1)")
        self.add(f"(>= first {tmin})")
        self.add(f"(<= first {tmax})")
        self.declare("span", "Int")
        self.add(f"(= span (- tau_{self.m} tau_1))")
        self.add("(>= span 0)")
        self.add(f"(<= span {width})")
        # Absolute times shape later segments, so they join the signature
        # only when this segment's outcome will be threaded onward.
        if self.thread_timing:
            self.sig_ints.append("first")
            self.sig_ints.append("span")
        if self.nested:
            # Nested windows re-anchor at inner positions: the rewrite can
            # read any pairwise time difference, so the full offset vector
            # (which subsumes the span) joins the signature together with
            # the per-position state bits.
            self.sig_bools.extend(
                f"at_{pos}_{self.atom_id[a]}" for pos in range(self.m) for a in self.atoms
            )
            for pos in range(1, self.m):
                self.declare(f"off_{pos}", "Int")
                self.add(f"(= off_{pos} (- tau_{pos + 1} tau_1))")
                self.add(f"(>= off_{pos} 0)")
                self.add(f"(<= off_{pos} {width})")
                self.sig_ints.append(f"off_{pos}")

    def encode_summary(self):
        """Per-node decision bits that pin the rewrite of a flat formula.

        With propositional operands the rewrite of each timed node is one
        of: a constant, or its own residual over the shifted window. That
        outcome is a function of (witness/violation existence, the left
        obligation for Until, and the window's shift outcome), so blocking
        on these collapses every model with the same rewrite into one
        class. Nested formulas fall back to the fine position signature.
        """
        if self.nested:
            return
        # atoms read outside every timed operator are evaluated in the
        # first state; their truth there co-determines the rewrite
        for a in sorted(propositional_atoms(self.f), key=_atom_key):
            self.sig_bools.append(f"at_0_{self.atom_id[a]}")
        child = self._child_ids()
        m = self.m
        for nid, node in enumerate(self.nodes):
            if not isinstance(node, (Until, Eventually, Globally)):
                continue
            iv = node.interval
            if isinstance(node, Eventually):
                (ch,) = child[nid]
                wit = _bool_or(
                    [
                        _bool_and([self._inin(iv, 0, j), f"verdict_{ch}_{j}"])
                        for j in range(m)
                    ]
                )
                self._sig_bool(f"wit_{nid}", wit)
            elif isinstance(node, Globally):
                (ch,) = child[nid]
                vio = _bool_or(
                    [
                        _bool_and([self._inin(iv, 0, j), f"(not verdict_{ch}_{j})"])
                        for j in range(m)
                    ]
                )
                self._sig_bool(f"vio_{nid}", vio)
            else:
                l, r = child[nid]
                wit = _bool_or(
                    [
                        _bool_and(
                            [self._inin(iv, 0, j), f"verdict_{r}_{j}"]
                            + [f"verdict_{l}_{k}" for k in range(j)]
                        )
                        for j in range(m)
                    ]
                )
                self._sig_bool(f"wit_{nid}", wit)
                pref = _bool_and([f"verdict_{l}_{i}" for i in range(m)])
                self._sig_bool(f"pref_{nid}", pref)
                guard = _bool_and(
                    [
                        f"(=> (< (- tau_{i + 1} tau_1) {iv.start}) verdict_{l}_{i})"
                        for i in range(m)
                    ]
                )
                self._sig_bool(f"guard_{nid}", guard)
            # spans past the window's reach all produce the same residual
            cap = iv.start if iv.end is None else iv.end
            name = f"shout_{nid}"
            self.declare(name, "Int")
            self.add(f"(= {name} (ite (< span {cap}) span {cap}))")
            self.add(f"(>= {name} 0)")
            self.add(f"(<= {name} {cap})")
            self.sig_ints.append(name)

    def _sig_bool(self, name: str, expr: str):
        self.declare(name, "Bool")
        self.add(f"(= {name} {expr})")
        self.sig_bools.append(name)

    def _inin(self, iv: Interval, anchor_pos: int, pos: int) -> str:
        diff = f"(- tau_{pos + 1} tau_{anchor_pos + 1})"
        lower = f"(>= {diff} {iv.start})"
        if iv.end is None:
            return lower
        return _bool_and([lower, f"(< {diff} {iv.end})"])

    # -- finite-semantics truth flags --

    def encode_flags(self):
        m = self.m
        for nid, node in enumerate(self.nodes):
            for pos in range(m):
                self.declare(f"verdict_{nid}_{pos}", "Bool")
        child = self._child_ids()
        for nid, node in enumerate(self.nodes):
            for i in range(m):
                name = f"verdict_{nid}_{i}"
                self.add(f"(= {name} {self._flag_expr(nid, node, i, child)})")

    def _child_ids(self) -> Dict[int, Tuple[int, ...]]:
        out: Dict[int, Tuple[int, ...]] = {}

        # pre-order numbering: a node's right child id follows its left subtree
        def walk(g: Formula, nid: int) -> int:
            if isinstance(g, Not):
                out[nid] = (nid + 1,)
                return 1 + walk(g.operand, nid + 1)
            if isinstance(g, (Or, And, Implies, Until)):
                left = g.left
                right = g.right
                lsize = walk(left, nid + 1)
                out[nid] = (nid + 1, nid + 1 + lsize)
                return 1 + lsize + walk(right, nid + 1 + lsize)
            if isinstance(g, (Eventually, Globally)):
                out[nid] = (nid + 1,)
                return 1 + walk(g.operand, nid + 1)
            out[nid] = ()
            return 1

        walk(self.f, 0)
        return out

    def _flag_expr(self, nid: int, node: Formula, i: int, child) -> str:
        m = self.m
        if isinstance(node, TrueF):
            return "true"
        if isinstance(node, FalseF):
            return "false"
        if isinstance(node, (Atom, SumAtom)):
            return f"at_{i}_{self.atom_id[node]}"
        if isinstance(node, Not):
            return f"(not verdict_{child[nid][0]}_{i})"
        if isinstance(node, Or):
            l, r = child[nid]
            return f"(or verdict_{l}_{i} verdict_{r}_{i})"
        if isinstance(node, And):
            l, r = child[nid]
            return f"(and verdict_{l}_{i} verdict_{r}_{i})"
        if isinstance(node, Implies):
            l, r = child[nid]
            return f"(=> verdict_{l}_{i} verdict_{r}_{i})"
        if isinstance(node, Eventually):
            (ch,) = child[nid]
            return _bool_or(
                [
                    _bool_and([self._inin(node.interval, i, j), f"verdict_{ch}_{j}"])
                    for j in range(i, m)
                ]
            )
        if isinstance(node, Globally):
            (ch,) = child[nid]
            return _bool_and(
                [
                    f"(=> {self._inin(node.interval, i, j)} verdict_{ch}_{j})"
                    for j in range(i, m)
                ]
            )
        if isinstance(node, Until):
            l, r = child[nid]
            cases = []
            for j in range(i, m):
                holds_before = _bool_and([f"verdict_{l}_{k}" for k in range(i, j)])
                cases.append(
                    _bool_and(
                        [self._inin(node.interval, i, j), f"verdict_{r}_{j}", holds_before]
                    )
                )
            return _bool_or(cases)
        raise EncodingError(f"formula node outside the encodable fragment: {node!r}")

    def encode(self) -> SmtProblem:
        self.encode_structure()
        self.encode_states()
        self.encode_timing()
        self.encode_flags()
        self.encode_summary()
        if self.mode == SATISFACTION:
            self.add("verdict_0_0")
        elif self.mode == VIOLATION:
            self.add("(not verdict_0_0)")
        text = "\n".join(["(set-logic QF_LIA)"] + self.decls + self.asserts) + "\n"
        return SmtProblem(
            text=text,
            events=self.c.events,
            epsilon=self.c.epsilon,
            floor=self.floor,
            carry=tuple(sorted(self.carry.items())),
            signature_bools=tuple(self.sig_bools),
            signature_ints=tuple(self.sig_ints),
            formula=self.f,
        )


def _int(v: int) -> str:
    return str(v) if v >= 0 else f"(- {-v})"


def encode(
    seg: Computation,
    f: Formula,
    mode: str = ANY,
    floor: Optional[int] = None,
    carry: Optional[Mapping[str, State]] = None,
    var_budget: int = DEFAULT_VAR_BUDGET,
    thread_timing: bool = False,
) -> SmtProblem:
    """Encode one segment (as a sub-computation) and formula as SMT-LIB text.

    Text is byte-identical across runs for identical inputs. `floor` bounds
    the first step's time from below; `carry` seeds per-process frontier
    state from earlier segments; `thread_timing` adds the absolute first
    time to the blocking signature (needed when later segments will be
    threaded off this one).
    """
    return _Encoder(
        seg, simplify(f), mode, floor, carry or {}, var_budget, thread_timing
    ).encode()


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolverResult:
    status: str  # sat | unsat | unknown
    model: Optional[Dict[str, int]] = None  # bools decoded as 0/1


def run_solver(text: str, solver_command: str, timeout: float = DEFAULT_TIMEOUT) -> str:
    argv = shlex.split(solver_command)
    try:
        proc = subprocess.run(
            argv,
            input=text.encode(),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            timeout=timeout,
        )
    except subprocess.TimeoutExpired as exc:
        raise SolverTimeoutError(f"solver exceeded {timeout}s") from exc
    except OSError as exc:
        raise SolverCrashError(f"cannot run solver {argv[0]!r}: {exc}") from exc
    out = proc.stdout.decode(errors="replace")
    if not out.strip():
        raise SolverCrashError(
            f"solver produced no output (exit {proc.returncode}): "
            f"{proc.stderr.decode(errors='replace')[:200]}"
        )
    return out


def _parse_model(text: str) -> Dict[str, int]:
    from .refsolver import parse_sexprs, tokenize  # reuse the s-expression reader

    forms = parse_sexprs(tokenize(text))
    model: Dict[str, int] = {}

    def visit(form):
        if not isinstance(form, tuple):
            return
        if form and form[0] == "define-fun" and len(form) >= 5:
            name, _args, _sort, value = form[1], form[2], form[3], form[4]
            if value == "true":
                model[name] = 1
            elif value == "false":
                model[name] = 0
            else:
                try:
                    if isinstance(value, tuple) and value[0] == "-":
                        model[name] = -int(value[1])
                    else:
                        model[name] = int(value)
                except (ValueError, TypeError, IndexError):
                    raise ModelDecodeError(f"unparsable value for {name}: {value!r}")
        else:
            for sub in form:
                visit(sub)

    for form in forms:
        visit(form)
    return model


def solve(
    problem: SmtProblem,
    solver_command: str,
    timeout: float = DEFAULT_TIMEOUT,
    extra_assertions: Sequence[str] = (),
) -> SolverResult:
    """Run one query; on sat, decode and sanity-check the model."""
    text = problem.text + "".join(a + "\n" for a in extra_assertions)
    text += "(check-sat)\n(get-model)\n"
    out = run_solver(text, solver_command, timeout)
    lines = [ln.strip() for ln in out.splitlines() if ln.strip()]
    status = lines[0]
    if status == "unsat":
        return SolverResult("unsat")
    if status == "unknown":
        return SolverResult("unknown")
    if status != "sat":
        raise SolverCrashError(f"unrecognized solver verdict {status!r}")
    rest = "\n".join(lines[1:])
    if not rest:
        raise ModelDecodeError("sat result carried no model")
    model = _parse_model(rest)
    decode_linearization(problem, model)  # raises ModelDecodeError when inconsistent
    return SolverResult("sat", model)


@dataclass(frozen=True)
class DecodedModel:
    order: Tuple[int, ...]
    times: Tuple[int, ...]


def decode_linearization(problem: SmtProblem, model: Mapping[str, int]) -> DecodedModel:
    """Extract the cut order and time assignment; re-check all structural
    constraints natively."""
    m = problem.m
    # rebuild the ordering matrix of the segment events for the check
    from .computation import build_computation

    c = build_computation(problem.events, problem.epsilon)
    order: List[int] = []
    members: Set[int] = set()
    times: List[int] = []
    for step in range(1, m + 1):
        added = [
            k
            for k in range(m)
            if model.get(f"rho_{step}_{k}") and not model.get(f"rho_{step - 1}_{k}")
        ]
        if len(added) != 1:
            raise ModelDecodeError(f"step {step} adds {len(added)} events")
        k = added[0]
        order.append(k)
        members.add(k)
        if not is_consistent_cut_indices(c, members):
            raise ModelDecodeError(f"cut at step {step} is not consistent")
        t = model.get(f"tau_{step}")
        if t is None:
            raise ModelDecodeError(f"model lacks tau_{step}")
        if t != model.get(f"delta_{k}"):
            raise ModelDecodeError(f"tau_{step} disagrees with delta_{k}")
        if t not in time_window(problem.events[k], problem.epsilon):
            raise ModelDecodeError(f"delta_{k}={t} outside its window")
        if times and t < times[-1]:
            raise ModelDecodeError("times decrease along the cut sequence")
        times.append(t)
    if problem.floor is not None and times and times[0] < problem.floor:
        raise ModelDecodeError("first time below the threaded floor")
    return DecodedModel(tuple(order), tuple(times))


def replay(problem: SmtProblem, decoded: DecodedModel) -> Tuple[Formula, int, int]:
    """Progress the branch formula over the decoded linearization."""
    latest: Dict[str, State] = dict(problem.carry)
    states: List[State] = []
    for k in decoded.order:
        e = problem.events[k]
        latest[e.process] = e.payload
        states.append(merge_frontier(latest))
    trace = TimedTrace(tuple(states), decoded.times)
    gap = 0 if problem.floor is None else decoded.times[0] - problem.floor
    g = shift_anchored(problem.formula, gap)
    return simplify(progress(trace, g)), decoded.times[0], decoded.times[-1]


def blocking_assertion(problem: SmtProblem, model: Mapping[str, int]) -> str:
    """Exclude every model agreeing with this one on the decision bits."""
    parts: List[str] = []
    for name in problem.signature_bools:
        parts.append(name if model.get(name) else f"(not {name})")
    for name in problem.signature_ints:
        parts.append(f"(= {name} {_int(model.get(name, 0))})")
    if not parts:
        return "(assert false)"
    return "(assert (not " + _bool_and(parts) + "))"


# ---------------------------------------------------------------------------
# Verdict enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Enumeration:
    """Outcome set of one segment, with threading data for the pipeline."""

    branches: Tuple[Tuple[Formula, int], ...]  # (rewritten formula, last time)
    complete: bool
    queries: int

    @property
    def formulas(self) -> Set[Formula]:
        return {f for f, _ in self.branches}


def enumerate_verdicts(
    seg: Computation,
    f: Formula,
    max_verdicts: int,
    solver_command: str,
    floor: Optional[int] = None,
    carry: Optional[Mapping[str, State]] = None,
    timeout: float = DEFAULT_TIMEOUT,
    var_budget: int = DEFAULT_VAR_BUDGET,
    thread_timing: bool = False,
    emit_dir: Optional[str] = None,
    emit_tag: str = "seg",
) -> Enumeration:
    """Solve repeatedly, blocking each found decision class, until unsat or
    the verdict cap; hitting the cap is not an error but flags the result
    incomplete."""
    if max_verdicts < 1:
        raise ValueError("max_verdicts must be >= 1")
    g = simplify(f)
    if isinstance(g, (TrueF, FalseF)):
        # constants rewrite to themselves on every linearization; one query
        # against the impossible side doubles as an encoder consistency probe
        mode = VIOLATION if isinstance(g, TrueF) else SATISFACTION
        problem = encode(seg, g, mode, floor, carry, var_budget)
        result = _query(problem, solver_command, timeout, (), emit_dir, emit_tag, 0)
        if result.status != "unsat":
            raise SolverCrashError(f"constant probe answered {result.status}")
        last = floor if floor is not None else 0
        return Enumeration(((g, last),), True, 1)
    problem = encode(seg, g, ANY, floor, carry, var_budget, thread_timing)
    blocks: List[str] = []
    found: List[Tuple[Formula, int]] = []
    seen: Set[Tuple[Formula, int]] = set()
    queries = 0
    while True:
        result = _query(
            problem, solver_command, timeout, blocks, emit_dir, emit_tag, queries
        )
        queries += 1
        if result.status == "unsat":
            return Enumeration(tuple(found), True, queries)
        if result.status == "unknown":
            raise SolverCrashError("solver answered unknown")
        decoded = decode_linearization(problem, result.model)
        formula, _first, last = replay(problem, decoded)
        key = (formula, last)
        if key not in seen:
            seen.add(key)
            found.append(key)
        if len(found) >= max_verdicts:
            return Enumeration(tuple(found), False, queries)
        blocks.append(blocking_assertion(problem, result.model))


def _query(problem, solver_command, timeout, blocks, emit_dir, emit_tag, n):
    if emit_dir:
        import os

        os.makedirs(emit_dir, exist_ok=True)
        path = os.path.join(emit_dir, f"{emit_tag}_q{n}.smt2")
        with open(path, "w") as fh:
            fh.write(problem.text)
            for b in blocks:
                fh.write(b + "\n")
            fh.write("(check-sat)\n(get-model)\n")
    return solve(problem, solver_command, timeout, blocks)
