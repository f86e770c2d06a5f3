"""Distributed computations: events, the skew-closed happened-before order,
consistent cuts, frontiers, timestamp windows, and time-window segmentation.

Two events on different processes are ordered whenever their local
timestamps differ by at least the maximum clock skew epsilon; within one
process events are totally ordered; message sends precede their receives.
The relation is closed transitively at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .semantics import State


class ComputationError(ValueError):
    """The event log cannot form a valid computation (duplicate timestamps,
    dangling message ids, or an ordering cycle)."""


@dataclass(frozen=True)
class Event:
    process: str
    local_time: int
    payload: State = State()
    kind: str = "local"  # local | send | recv
    msg: Optional[str] = None

    def __post_init__(self):
        if self.local_time < 0:
            raise ValueError("local_time must be non-negative")
        if self.kind not in ("local", "send", "recv"):
            raise ValueError(f"unknown event kind {self.kind!r}")
        if (self.kind != "local") == (self.msg is None):
            raise ValueError("msg id is required exactly for send/recv events")

    def __str__(self):
        return f"{self.process}@{self.local_time}"


def time_window(e: Event, epsilon: int) -> range:
    """All real times the event may have occurred at, given skew < epsilon.

    The closed integer range [max(0, sigma-epsilon+1), sigma+epsilon-1];
    for epsilon=1 the window is the singleton {sigma}.
    """
    if epsilon < 1:
        raise ValueError("epsilon must be a positive integer")
    sigma = e.local_time
    return range(max(0, sigma - epsilon + 1), sigma + epsilon)


@dataclass(frozen=True)
class Computation:
    """Immutable event set with its transitively closed ordering matrix."""

    events: Tuple[Event, ...]  # indexed by event_index
    epsilon: int
    hb: Tuple[FrozenSet[int], ...]  # hb[i] = indices that happened before event i

    def __len__(self):
        return len(self.events)

    @property
    def processes(self) -> Tuple[str, ...]:
        seen = []
        for e in self.events:
            if e.process not in seen:
                seen.append(e.process)
        return tuple(sorted(seen))

    def index_of(self, e: Event) -> int:
        try:
            return self._index[e]
        except AttributeError:
            object.__setattr__(self, "_index", {ev: i for i, ev in enumerate(self.events)})
            return self._index[e]

    @property
    def length(self) -> int:
        """Computation length: the maximum local timestamp."""
        return max((e.local_time for e in self.events), default=0)

    def restrict(self, indices: Iterable[int]) -> "Computation":
        """Sub-computation induced by a subset of event indices."""
        keep = sorted(set(indices))
        remap = {old: new for new, old in enumerate(keep)}
        events = tuple(self.events[i] for i in keep)
        hb = tuple(
            frozenset(remap[p] for p in self.hb[i] if p in remap) for i in keep
        )
        return Computation(events, self.epsilon, hb)


def build_computation(events: Sequence[Event], epsilon: int) -> Computation:
    """Close the ordering over program order, messages, and the skew rule.

    Events are indexed deterministically by (local_time, process). Raises
    ComputationError for duplicate (process, local_time) pairs, dangling or
    reused message ids, and ordering cycles (a physically impossible log).
    """
    if epsilon < 1:
        raise ValueError("epsilon must be a positive integer")
    ordered = sorted(events, key=lambda e: (e.local_time, e.process))
    n = len(ordered)

    seen_slots = set()
    for e in ordered:
        slot = (e.process, e.local_time)
        if slot in seen_slots:
            raise ComputationError(f"duplicate event at {e.process}@{e.local_time}")
        seen_slots.add(slot)

    sends: Dict[str, int] = {}
    recvs: Dict[str, int] = {}
    for i, e in enumerate(ordered):
        if e.kind == "send":
            if e.msg in sends:
                raise ComputationError(f"message id {e.msg!r} sent twice")
            sends[e.msg] = i
        elif e.kind == "recv":
            if e.msg in recvs:
                raise ComputationError(f"message id {e.msg!r} received twice")
            recvs[e.msg] = i
    if set(sends) != set(recvs):
        dangling = set(sends) ^ set(recvs)
        raise ComputationError(f"dangling message ids: {sorted(dangling)}")
    for m, si in sends.items():
        if ordered[si].process == ordered[recvs[m]].process:
            raise ComputationError(f"message {m!r} sent and received on one process")

    adj: List[Set[int]] = [set() for _ in range(n)]  # adj[i] = direct successors
    for i, e in enumerate(ordered):
        for j, f in enumerate(ordered):
            if i == j:
                continue
            if e.process == f.process:
                if e.local_time < f.local_time:
                    adj[i].add(j)
            elif f.local_time - e.local_time >= epsilon:
                adj[i].add(j)
    for m, si in sends.items():
        adj[si].add(recvs[m])

    # transitive closure (desk-scale n, cubic is fine)
    reach = [set(s) for s in adj]
    for k in range(n):
        for i in range(n):
            if k in reach[i]:
                reach[i] |= reach[k]
    for i in range(n):
        if i in reach[i]:
            raise ComputationError(
                f"ordering cycle through {ordered[i]}: log is physically impossible"
            )

    preds: List[Set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in reach[i]:
            preds[j].add(i)
    return Computation(tuple(ordered), epsilon, tuple(frozenset(p) for p in preds))


def happened_before(c: Computation, e: Event, f: Event) -> bool:
    i, j = c.index_of(e), c.index_of(f)
    return i in c.hb[j]


def is_consistent_cut(c: Computation, cut: Iterable[Event]) -> bool:
    """True iff the cut is downward closed under the ordering."""
    idx = {c.index_of(e) for e in cut}
    return all(c.hb[i] <= idx for i in idx)


def is_consistent_cut_indices(c: Computation, indices: Set[int]) -> bool:
    return all(c.hb[i] <= indices for i in indices)


def frontier(c: Computation, cut: Iterable[Event]) -> Dict[str, Event]:
    """Per-process latest event of a consistent cut (processes absent from
    the cut are absent from the mapping)."""
    out: Dict[str, Event] = {}
    for e in cut:
        cur = out.get(e.process)
        if cur is None or e.local_time > cur.local_time:
            out[e.process] = e
    return out


@dataclass(frozen=True)
class Segment:
    """A local-time window of a computation, with epsilon overlap."""

    index: int  # 1-based
    events: Tuple[Event, ...]
    lo: int
    hi: int


def segment(c: Computation, g: int, l: Optional[int] = None) -> List[Segment]:
    """Chop the computation into g overlapping time windows.

    Window j covers local times [max(0, (j-1)*l/g - eps), j*l/g]; bounds are
    exact rationals (compared via cross-multiplication), so no event is
    dropped to rounding. The union of all windows is the full event set and
    each event lies in at most two consecutive windows when eps <= l/g.
    """
    if g < 1:
        raise ValueError("segment count must be >= 1")
    if l is None:
        l = c.length
    if l < c.length:
        raise ValueError(f"computation length {l} below maximum timestamp {c.length}")
    if g > max(l, 1):
        raise ValueError(f"{g} segments over length {l} would have zero width")
    eps = c.epsilon
    out = []
    for j in range(1, g + 1):
        # sigma >= (j-1)*l/g - eps  <=>  sigma*g >= (j-1)*l - eps*g (and >= 0)
        # sigma <= j*l/g            <=>  sigma*g <= j*l
        members = tuple(
            e
            for e in c.events
            if e.local_time * g >= (j - 1) * l - eps * g and e.local_time * g <= j * l
        )
        lo = max(0, -(-((j - 1) * l - eps * g) // g))  # ceil for reporting
        hi = (j * l) // g
        out.append(Segment(j, members, lo, hi))
    return out
