"""Shared corpus builders for the test suite: seeded random formulas,
traces, and computations with a bound on how many linearizations a
computation admits (keeps exhaustive enumeration affordable)."""

from __future__ import annotations

import random
from typing import List, Sequence

from mtlmon.computation import Computation, Event, build_computation
from mtlmon.formula import (
    And,
    Atom,
    Eventually,
    Formula,
    Globally,
    Implies,
    Interval,
    Not,
    Or,
    Until,
    FALSE,
    TRUE,
)
from mtlmon.oracle import OracleBudgetError, enumerate_linearizations
from mtlmon.semantics import State, TimedTrace

ATOMS = ("p", "q", "r")


def random_interval(rng: random.Random, max_start: int = 5, max_width: int = 8) -> Interval:
    start = rng.randrange(0, max_start + 1)
    if rng.random() < 0.25:
        return Interval(start, None)
    return Interval(start, start + rng.randrange(1, max_width + 1))


def random_formula(rng: random.Random, depth: int, constants: bool = True) -> Formula:
    if depth == 0:
        leaves: List[Formula] = [Atom(rng.choice(ATOMS)) for _ in range(3)]
        if constants:
            leaves += [TRUE, FALSE]
        return rng.choice(leaves)
    k = rng.randrange(7)
    if k == 0:
        return Not(random_formula(rng, depth - 1, constants))
    if k == 1:
        return Or(random_formula(rng, depth - 1, constants),
                  random_formula(rng, depth - 1, constants))
    if k == 2:
        return And(random_formula(rng, depth - 1, constants),
                   random_formula(rng, depth - 1, constants))
    if k == 3:
        return Implies(random_formula(rng, depth - 1, constants),
                       random_formula(rng, depth - 1, constants))
    if k == 4:
        return Until(random_formula(rng, depth - 1, constants), random_interval(rng),
                     random_formula(rng, depth - 1, constants))
    if k == 5:
        return Eventually(random_interval(rng), random_formula(rng, depth - 1, constants))
    return Globally(random_interval(rng), random_formula(rng, depth - 1, constants))


def random_flat_formula(rng: random.Random) -> Formula:
    """Timed operators over propositional operands only."""

    def prop() -> Formula:
        a = Atom(rng.choice(ATOMS))
        return Not(a) if rng.random() < 0.4 else a

    k = rng.randrange(6)
    if k == 0:
        return Until(prop(), random_interval(rng), prop())
    if k == 1:
        return Eventually(random_interval(rng), prop())
    if k == 2:
        return Globally(random_interval(rng), prop())
    if k == 3:
        return Or(Eventually(random_interval(rng), prop()),
                  Globally(random_interval(rng), prop()))
    if k == 4:
        return Implies(prop(), Eventually(random_interval(rng), prop()))
    return And(Until(prop(), random_interval(rng), prop()),
               Eventually(random_interval(rng), prop()))


def random_trace(rng: random.Random, max_len: int = 12) -> TimedTrace:
    n = rng.randrange(1, max_len + 1)
    t = rng.randrange(0, 3)
    states, times = [], []
    for _ in range(n):
        props = frozenset(a for a in ATOMS if rng.random() < 0.4)
        states.append(State(props))
        times.append(t)
        t += rng.randrange(0, 4)
    return TimedTrace(tuple(states), tuple(times))


def random_events(
    rng: random.Random,
    processes: int,
    events: int,
    spread: int = 4,
    prop_rate: float = 0.35,
) -> List[Event]:
    out = []
    for pi in range(processes):
        t = rng.randrange(0, 3)
        count = events // processes + (1 if pi < events % processes else 0)
        for _ in range(count):
            props = frozenset(a for a in ATOMS if rng.random() < prop_rate)
            out.append(Event(f"P{pi + 1}", t, State(props)))
            t += rng.randrange(1, spread + 1)
    return out


def bounded_computation(
    rng: random.Random,
    max_events: int = 8,
    max_processes: int = 3,
    epsilons: Sequence[int] = (1, 2, 3),
    lin_cap: int = 1200,
) -> Computation:
    """Random computation admitting at most lin_cap linearizations."""
    for attempt in range(60):
        epsilon = rng.choice(list(epsilons))
        events = rng.randrange(3, max_events + 1)
        processes = rng.randrange(1, max_processes + 1)
        evs = random_events(rng, processes, events, spread=2 * epsilon + 2 + attempt)
        comp = build_computation(evs, epsilon)
        try:
            sum(1 for _ in enumerate_linearizations(comp, budget=lin_cap))
            return comp
        except OracleBudgetError:
            continue
    raise RuntimeError("could not draw a bounded computation")
