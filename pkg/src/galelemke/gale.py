"""Gale-evenness bitstrings and the combinatorial pivot engine.

Vertices of a dual cyclic polytope in even dimension m with f facets are
exactly the length-f bitstrings with m ones in which every maximal cyclic
run of ones has even length.  Dropping one facet of a vertex leaves m-1
fixed facets that admit exactly two completions, which makes edge-following
a purely combinatorial operation: no arithmetic, O(f) per pivot.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, StepCapExceededError
from .paths import PivotPath, PivotStep


@dataclass(frozen=True)
class GaleString:
    """A vertex bitstring: position p (1-based) is bit p-1 of ``bits``."""

    f: int
    bits: int

    def __post_init__(self):
        if self.f < 1:
            raise ValueError("length must be positive")
        if not 0 <= self.bits < (1 << self.f):
            raise ValueError("bits out of range for length f")
        m = self.m
        if m % 2 != 0:
            raise ValueError(f"number of ones must be even, got {m}")
        if not _cyclic_runs_even(self.bits, self.f):
            raise ValueError(f"odd interior run of ones in {self._raw_text()}")

    @classmethod
    def from_text(cls, text: str) -> "GaleString":
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
            elif ch not in "0.":
                raise ValueError(f"bad character {ch!r} in bitstring")
        return cls(len(text), bits)

    @classmethod
    def from_positions(cls, f: int, positions) -> "GaleString":
        bits = 0
        for p in positions:
            if not 1 <= p <= f:
                raise ValueError(f"position {p} out of range 1..{f}")
            bits |= 1 << (p - 1)
        return cls(f, bits)

    @property
    def m(self) -> int:
        return self.bits.bit_count()

    def bit(self, position: int) -> bool:
        if not 1 <= position <= self.f:
            raise ValueError(f"position {position} out of range 1..{self.f}")
        return bool(self.bits >> (position - 1) & 1)

    def ones(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, self.f + 1) if self.bits >> (p - 1) & 1)

    def _raw_text(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "." for i in range(self.f))

    @property
    def text(self) -> str:
        """Figure convention: ones as '1', zeros as dots."""
        return self._raw_text()

    def __str__(self) -> str:
        return self._raw_text()


def _cyclic_runs_even(bits: int, f: int) -> bool:
    if bits == 0:
        return True
    if bits == (1 << f) - 1:
        return True  # single cyclic run covering everything; popcount checked elsewhere
    zero = next(i for i in range(f) if not bits >> i & 1)
    run = 0
    for offset in range(1, f + 1):
        i = (zero + offset) % f
        if bits >> i & 1:
            run += 1
        else:
            if run % 2:
                return False
            run = 0
    return True


def is_gale_even(bits, m: int) -> bool:
    """Check the evenness condition for a candidate bitstring with m ones.

    Accepts a string of '1'/'0'/'.', a GaleString, or a (length, int) pair.
    Raises ValueError when the popcount differs from m or m is odd (only
    even dimensions carry the cyclic wrap-around form of the condition).
    """
    if isinstance(bits, GaleString):
        raw, f = bits.bits, bits.f
    elif isinstance(bits, str):
        raw = 0
        for i, ch in enumerate(bits):
            if ch == "1":
                raw |= 1 << i
            elif ch not in "0.":
                raise ValueError(f"bad character {ch!r} in bitstring")
        f = len(bits)
    else:
        f, raw = bits
    if m % 2 != 0:
        raise ValueError(f"only even numbers of ones are supported, got m={m}")
    if raw.bit_count() != m:
        raise ValueError(f"expected {m} ones, found {raw.bit_count()}")
    return _cyclic_runs_even(raw, f)


def enumerate_gale_vertices(m: int, f: int, budget: int = 1_000_000) -> list[GaleString]:
    """All valid vertex bitstrings of length f with m ones, in lexicographic
    order of their text form.  Requires even m and f > m."""
    if m % 2 != 0 or m < 2:
        raise ValueError("m must be even and at least 2")
    if f <= m:
        raise ValueError("f must exceed m")
    out: list[GaleString] = []

    # Depth-first over positions; a run closed by an interior zero must be
    # even, and the initial and terminal runs must have an even sum.
    def extend(idx: int, ones_left: int, run: int, lead: int | None):
        if ones_left > f - idx:
            return
        if idx == f:
            if ones_left == 0 and (lead + run) % 2 == 0:
                if len(out) >= budget:
                    raise BudgetExceededError(
                        f"more than {budget} vertex strings for ({m}, {f})"
                    )
                out.append(GaleString(f, _buffer_bits(buffer)))
            return
        # zero branch first: lexicographically ascending output
        if lead is None:
            buffer[idx] = 0
            extend(idx + 1, ones_left, 0, run)
        elif run % 2 == 0:
            buffer[idx] = 0
            extend(idx + 1, ones_left, 0, lead)
        if ones_left > 0:
            buffer[idx] = 1
            extend(idx + 1, ones_left - 1, run + 1, lead)
            buffer[idx] = 0

    buffer = [0] * f
    extend(0, m, 0, None)
    return out


def _buffer_bits(buffer) -> int:
    bits = 0
    for i, v in enumerate(buffer):
        if v:
            bits |= 1 << i
    return bits


def _run_span(bits: int, f: int, p0: int) -> tuple[int, int]:
    """(start, length) of the maximal cyclic run of ones containing bit p0."""
    start = p0
    while bits >> ((start - 1) % f) & 1:
        start = (start - 1) % f
    end = p0
    while bits >> ((end + 1) % f) & 1:
        end = (end + 1) % f
    return start, (end - start) % f + 1


def _pivot_bits(bits: int, f: int, p0: int) -> tuple[int, int]:
    """Drop bit p0 and return (new bits, entered bit).

    Removing a one splits its run into two fragments, exactly one of odd
    length; the only repairs by a single new one are re-adding p0 (the old
    vertex) or extending the odd fragment at its far end, so the traversed
    edge is unique.
    """
    start, length = _run_span(bits, f, p0)
    left = (p0 - start) % f
    if left % 2 == 1:
        q0 = (start - 1) % f
    else:
        q0 = (start + length) % f
    return (bits & ~(1 << p0)) | (1 << q0), q0


def gale_pivot(s: GaleString, drop_position: int) -> tuple[GaleString, int]:
    """Traverse the unique edge leaving vertex s through the facet at
    ``drop_position``; returns the new vertex and the entered position."""
    if not s.bit(drop_position):
        raise ValueError(f"position {drop_position} is not set in {s}")
    if s.m == s.f:
        raise ValueError("cannot pivot: every facet is tight")
    new_bits, q0 = _pivot_bits(s.bits, s.f, drop_position - 1)
    return GaleString(s.f, new_bits), q0 + 1


@dataclass(frozen=True)
class LabeledGalePolytope:
    """A dual cyclic polytope in even dimension m whose facet p carries label
    p for p <= m and label ell(p-m) beyond; ell ranges over 1..m."""

    m: int
    ell: tuple[int, ...]

    def __post_init__(self):
        if self.m < 2 or self.m % 2 != 0:
            raise ValueError("dimension must be even and at least 2")
        if not self.ell:
            raise ValueError("label string must be nonempty")
        if any(not 1 <= v <= self.m for v in self.ell):
            raise ValueError("labels must lie in 1..m")

    @classmethod
    def of(cls, m: int, ell) -> "LabeledGalePolytope":
        return cls(m, tuple(int(v) for v in ell))

    @property
    def n(self) -> int:
        return len(self.ell)

    @property
    def f(self) -> int:
        return self.m + self.n

    def label_of(self, position: int) -> int:
        if not 1 <= position <= self.f:
            raise ValueError(f"position {position} out of range 1..{self.f}")
        return position if position <= self.m else self.ell[position - self.m - 1]

    def position_labels(self) -> tuple[int, ...]:
        return tuple(range(1, self.m + 1)) + self.ell

    def labels_of(self, s: GaleString) -> frozenset[int]:
        return frozenset(self.label_of(p) for p in s.ones())

    def start_vertex(self) -> GaleString:
        return GaleString(self.f, (1 << self.m) - 1)

    def is_completely_labeled(self, s: GaleString) -> bool:
        return self.labels_of(s) == frozenset(range(1, self.m + 1))


def completely_labeled_strings(
    poly: LabeledGalePolytope, budget: int = 1_000_000
) -> list[GaleString]:
    """All vertex strings whose tight positions carry every label 1..m."""
    full = frozenset(range(1, poly.m + 1))
    return [
        s
        for s in enumerate_gale_vertices(poly.m, poly.f, budget)
        if poly.labels_of(s) == full
    ]


def _lemke_pivots(poly: LabeledGalePolytope, missing_label: int):
    """Generate (new_bits, dropped_label, entered_position, picked_label)
    pivots of the path for the missing label, starting from the vertex with
    the first m facets tight."""
    if not 1 <= missing_label <= poly.m:
        raise ValueError(f"missing label {missing_label} out of range 1..{poly.m}")
    f = poly.f
    labels = poly.position_labels()
    positions_of: dict[int, set[int]] = {lab: set() for lab in range(1, poly.m + 1)}
    for p in range(1, poly.m + 1):
        positions_of[labels[p - 1]].add(p)
    bits = (1 << poly.m) - 1
    drop_pos = missing_label
    while True:
        drop_label = labels[drop_pos - 1]
        bits, q0 = _pivot_bits(bits, f, drop_pos - 1)
        entered = q0 + 1
        picked = labels[entered - 1]
        positions_of[drop_label].discard(drop_pos)
        positions_of[picked].add(entered)
        yield bits, drop_label, entered, picked
        if picked == missing_label:
            return
        holders = positions_of[picked]
        if len(holders) != 2:
            raise AssertionError(
                f"label {picked} held by {len(holders)} tight positions; "
                "labeling is degenerate"
            )
        (drop_pos,) = holders - {entered}


def combinatorial_lemke(
    poly: LabeledGalePolytope,
    missing_label: int,
    step_cap: int | None = None,
    check_revisits: bool = True,
) -> PivotPath:
    """Follow the pivot path for the missing label on the labeled polytope.

    Starts at the vertex with the first m facets tight and ends at another
    completely labeled vertex.  Raises StepCapExceededError past
    ``step_cap`` pivots.
    """
    start = poly.start_vertex()
    steps: list[PivotStep] = []
    visited = {start.bits} if check_revisits else None
    for bits, dropped, entered, picked in _lemke_pivots(poly, missing_label):
        if step_cap is not None and len(steps) >= step_cap:
            raise StepCapExceededError(
                f"path for missing label {missing_label} exceeded {step_cap} steps",
                len(steps),
            )
        vertex = GaleString(poly.f, bits)
        if visited is not None:
            if bits in visited:
                raise AssertionError(f"pivoting revisited vertex {vertex}")
            visited.add(bits)
        steps.append(PivotStep(dropped, picked, vertex))
    return PivotPath(missing_label, start, tuple(steps))


def lemke_path_length(
    poly: LabeledGalePolytope, missing_label: int, step_cap: int | None = None
) -> tuple[int, GaleString]:
    """Length (edge count) and endpoint of the path, without recording it.

    Memory-light variant for benchmark runs on exponentially long paths.
    """
    count = 0
    bits = 0
    for bits, _, _, _ in _lemke_pivots(poly, missing_label):
        count += 1
        if step_cap is not None and count > step_cap:
            raise StepCapExceededError(
                f"path for missing label {missing_label} exceeded {step_cap} steps",
                count - 1,
            )
    return count, GaleString(poly.f, bits)


# ---------------------------------------------------------------------------
# The tour multigraph of a label string and its perfect matchings.


@dataclass(frozen=True)
class EulerGraph:
    """Multigraph on nodes 1..m whose edges join consecutive elements of the
    cyclic tour 1, ..., m, ell(1), ..., ell(n); every node has even degree."""

    node_count: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_labeling(cls, poly: LabeledGalePolytope) -> "EulerGraph":
        tour = poly.position_labels()
        f = poly.f
        edges = tuple((tour[t], tour[(t + 1) % f]) for t in range(f))
        return cls(poly.m, edges)

    def degrees(self) -> dict[int, int]:
        deg = {node: 0 for node in range(1, self.node_count + 1)}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def euler_matchings(poly: LabeledGalePolytope, budget: int = 1_000_000) -> list[frozenset[int]]:
    """All loop-free perfect matchings of the tour multigraph, as frozensets
    of 1-based edge positions; edge t joins the labels of positions t and
    t+1 (cyclically).  In bijection with the completely labeled strings."""
    graph = EulerGraph.from_labeling(poly)
    incident: dict[int, list[int]] = {node: [] for node in range(1, graph.node_count + 1)}
    for t, (u, v) in enumerate(graph.edges):
        if u == v:
            continue  # a loop cannot cover its node exactly once
        incident[u].append(t)
        incident[v].append(t)
    matchings: list[frozenset[int]] = []
    covered = [False] * (graph.node_count + 1)
    chosen: list[int] = []

    def extend(node: int):
        while node <= graph.node_count and covered[node]:
            node += 1
        if node > graph.node_count:
            if len(matchings) >= budget:
                raise BudgetExceededError(f"more than {budget} matchings")
            matchings.append(frozenset(t + 1 for t in chosen))
            return
        covered[node] = True
        for t in incident[node]:
            u, v = graph.edges[t]
            other = v if u == node else u
            if covered[other]:
                continue
            covered[other] = True
            chosen.append(t)
            extend(node + 1)
            chosen.pop()
            covered[other] = False
        covered[node] = False

    extend(1)
    return sorted(matchings, key=sorted)


def matching_string(poly: LabeledGalePolytope, matching: frozenset[int]) -> GaleString:
    """The vertex string encoded by a matching: edge t contributes the pair
    of adjacent tight positions (t, t+1)."""
    f = poly.f
    positions: set[int] = set()
    for t in matching:
        positions.add(t)
        positions.add(t % f + 1)
    if len(positions) != 2 * len(matching):
        raise ValueError("matching edges overlap in tour positions")
    return GaleString.from_positions(f, positions)
