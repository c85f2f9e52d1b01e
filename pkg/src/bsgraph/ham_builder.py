"""Hamiltonian cycle of BS_n lifted from a Hamiltonian cycle of prisms.

The C(n, 2) generalised prisms partition BS_n.  Two prisms are joined by
b_(n-2)-edges exactly when their pairs share one value, so the quotient is
the Johnson graph J(n, 2).  A Hamiltonian cycle Q_0..Q_(M-1) of that quotient
is lifted by choosing one connecting edge per consecutive pair and filling
each prism with a Hamiltonian path between its entry and exit vertices.
Connecting edges flip parity and every prism path has odd length, so all
entries share one parity and all exits the other, which is exactly what the
in-prism path construction requires.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial

from .bs_graph import WalkReport, validate_gray_code, walk_indices
from .perm_core import Form, Permutation, apply_form, apply_gen, check_n, histogram, is_even, sjt_cycle, swap
from .prisms import PrismId, ham_path_in_prism

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorGraph:
    n: int
    vertices: tuple[frozenset[int], ...]

    @staticmethod
    def adjacent(a: frozenset[int], b: frozenset[int]) -> bool:
        return len(a & b) == 1

    def neighbors(self, a: frozenset[int]) -> list[frozenset[int]]:
        return [b for b in self.vertices if self.adjacent(a, b)]

    def edges(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        return [(a, b) for a, b in combinations(self.vertices, 2) if self.adjacent(a, b)]

    def degree(self, a: frozenset[int]) -> int:
        return len(self.neighbors(a))


def factor_graph(n: int) -> FactorGraph:
    if n < 5:
        raise ValueError("factor graph defined for n >= 5")
    return FactorGraph(n, tuple(frozenset(c) for c in combinations(range(1, n + 1), 2)))


def factor_edges_from_bs(n: int) -> set[frozenset[frozenset[int]]]:
    """Prism pairs joined by at least one b_(n-2)-edge, found by sweeping BS_n."""
    out = set()
    for img in permutations(range(1, n + 1)):
        a = frozenset(img[-2:])
        b = frozenset(swap(img, n - 2)[-2:])
        if a != b:
            out.add(frozenset((a, b)))
    return out


def _revolving_door(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of 1..n in revolving-door order (Nijenhuis-Wilf)."""
    if k == 0:
        return [()]
    if k == n:
        return [tuple(range(1, n + 1))]
    head = _revolving_door(n - 1, k)
    tail = [c + (n,) for c in reversed(_revolving_door(n - 1, k - 1))]
    return head + tail


def is_factor_cycle(seq: list[frozenset[int]], n: int) -> bool:
    if len(seq) != comb(n, 2) or len(set(seq)) != len(seq):
        return False
    return all(len(seq[s] & seq[(s + 1) % len(seq)]) == 1 for s in range(len(seq)))


def _backtrack_cycle(n: int) -> list[frozenset[int]]:
    graph = factor_graph(n)
    start = graph.vertices[0]
    path = [start]
    used = {start}
    total = len(graph.vertices)

    def go() -> bool:
        if len(path) == total:
            return FactorGraph.adjacent(path[-1], start)
        for nxt in graph.neighbors(path[-1]):
            if nxt not in used:
                used.add(nxt)
                path.append(nxt)
                if go():
                    return True
                path.pop()
                used.discard(nxt)
        return False

    if not go():
        raise RuntimeError(f"no Hamiltonian cycle found in J({n},2)")
    return path


def factor_ham_cycle(n: int, start: frozenset[int] | None = None) -> list[frozenset[int]]:
    """Cyclic ordering of all 2-subsets, consecutive ones sharing one value.

    Rotated so that ``start`` (default ``{n-1, n}``) comes first.
    """
    if n < 5:
        raise ValueError("factor graph defined for n >= 5")
    seq = [frozenset(c) for c in _revolving_door(n, 2)]
    if not is_factor_cycle(seq, n):
        log.warning("revolving-door order fails to close for n=%d; backtracking", n)
        seq = _backtrack_cycle(n)
    start = frozenset((n - 1, n)) if start is None else frozenset(start)
    r = seq.index(start)
    return seq[r:] + seq[:r]


def _split(q: frozenset[int], q_next: frozenset[int]) -> tuple[int, int, int]:
    shared = q & q_next
    if len(shared) != 1:
        raise ValueError(f"prisms {sorted(q)} and {sorted(q_next)} are not adjacent")
    (j,) = shared
    (i,) = q - q_next
    (k,) = q_next - q
    return i, j, k


def exit_candidates(q: frozenset[int], q_next: frozenset[int], n: int) -> list[tuple[int, ...]]:
    """Vertices ``[sigma, k, i, j]`` of ``q`` whose b_(n-2)-neighbour lies in ``q_next``.

    Lexicographic order.
    """
    i, j, k = _split(q, q_next)
    rest = [v for v in range(1, n + 1) if v not in (i, j, k)]
    return [sigma + (k, i, j) for sigma in permutations(rest)]


def pick_exit(q: frozenset[int], q_next: frozenset[int], entry_even: bool, n: int) -> Permutation:
    """Lexicographically smallest exit vertex whose parity differs from the entry's."""
    for img in exit_candidates(q, q_next, n):
        if is_even(img) != entry_even:
            return Permutation._trusted(img)
    raise ValueError("no exit vertex of the required parity")


@dataclass
class LiftPlan:
    n: int
    prism_order: list[frozenset[int]]
    entries: list[Permutation]
    exits: list[Permutation]

    @property
    def start(self) -> Permutation:
        return self.exits[0]

    def check(self) -> None:
        """Raise AssertionError if any plan invariant fails."""
        M = len(self.prism_order)
        n = self.n
        assert is_factor_cycle(self.prism_order, n), "factor cycle invalid"
        entry_par = {is_even(e.image) for e in self.entries}
        exit_par = {is_even(e.image) for e in self.exits}
        assert len(entry_par) == 1 and len(exit_par) == 1 and entry_par != exit_par, "parity chain broken"
        for s in range(M):
            q = self.prism_order[s]
            assert frozenset(self.entries[s].image[-2:]) == q, f"entry {s} outside prism"
            assert frozenset(self.exits[s].image[-2:]) == q, f"exit {s} outside prism"
            nxt = (s + 1) % M
            assert apply_gen(self.exits[s], n - 2) == self.entries[nxt], f"connector {s} broken"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "start": str(self.start),
            "connector": self.n - 2,
            "prisms": [
                {
                    "pair": sorted(q),
                    "entry": str(self.entries[s]),
                    "exit": str(self.exits[s]),
                    "entry_parity": "even" if is_even(self.entries[s].image) else "odd",
                }
                for s, q in enumerate(self.prism_order)
            ],
        }


def plan_lift(n: int) -> LiftPlan:
    order = factor_ham_cycle(n)
    M = len(order)
    start_img = exit_candidates(order[0], order[1], n)[0]
    exits = [Permutation._trusted(start_img)]
    entries: list[Permutation | None] = [None] * M
    for s in range(1, M):
        entry = apply_gen(exits[s - 1], n - 2)
        entries[s] = entry
        exits.append(pick_exit(order[s], order[(s + 1) % M], is_even(entry.image), n))
    entries[0] = apply_gen(exits[M - 1], n - 2)
    plan = LiftPlan(n, order, entries, exits)  # type: ignore[arg-type]
    plan.check()
    return plan


def _base_form(m: int, base_mode: str) -> Form:
    if base_mode == "sjt" or m < 5:
        return sjt_cycle(m)
    if base_mode == "recursive":
        return build_hamiltonian_cycle(m, base_mode="recursive")
    raise ValueError(f"unknown base mode {base_mode!r}")


@dataclass
class HamResult:
    n: int
    form: Form
    plan: LiftPlan
    report: WalkReport

    @property
    def start(self) -> Permutation:
        return self.plan.start


def build_with_plan(n: int, base_mode: str = "sjt") -> HamResult:
    check_n(n, minimum=5)
    plan = plan_lift(n)
    base = _base_form(n - 2, base_mode)
    M = len(plan.prism_order)
    steps: list[int] = []
    # walk starts at plan.start = exit_0, crosses to entry_1, ...
    for s in list(range(1, M)) + [0]:
        prism = PrismId(n, plan.prism_order[s])
        try:
            path = ham_path_in_prism(prism, plan.entries[s], plan.exits[s], base, check_base=False)
        except (ValueError, AssertionError) as exc:
            raise RuntimeError(f"prism {s} ({prism}): {exc}") from exc
        steps.append(n - 2)
        steps.extend(walk_indices(path.vertices))
    # the loop began with the connector leaving exit_0 and ended at exit_0
    form = Form(tuple(steps), cyclic=True)
    report = validate_gray_code(n, form, closed=True)
    if apply_form(plan.start, form) != plan.start:
        report = WalkReport(False, (len(form) - 1, "not-closed"), report.visited)
    return HamResult(n, form, plan, report)


def build_hamiltonian_cycle(n: int, base_mode: str = "sjt") -> Form:
    """A Hamiltonian cycle of BS_n as a closed form of length n!.

    The form is read from the lift's start vertex; by vertex-transitivity it
    is a Hamiltonian cycle from any start.  Raises RuntimeError if the
    independent validator rejects it.
    """
    res = build_with_plan(n, base_mode)
    if not res.report.ok:
        raise RuntimeError(f"constructed cycle failed validation: {res.report}")
    return res.form


def max_rotation(seq: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically maximal rotation, in linear time."""
    s = list(seq)
    m = len(s)
    if m == 0:
        return ()
    doubled = s + s
    i, j, k = 0, 1, 0
    while i < m and j < m and k < m:
        a, b = doubled[i + k], doubled[j + k]
        if a == b:
            k += 1
            continue
        if a < b:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    r = min(i, j)
    return tuple(doubled[r : r + m])


def cyclic_canonical(seq) -> tuple[int, ...]:
    seq = tuple(seq)
    return max(max_rotation(seq), max_rotation(tuple(reversed(seq))))


def compare_sjt(n: int, base_mode: str = "sjt") -> dict:
    lift = build_hamiltonian_cycle(n, base_mode)
    sjt = sjt_cycle(n)
    return {
        "n": n,
        "lift_valid": validate_gray_code(n, lift).ok,
        "sjt_valid": validate_gray_code(n, sjt).ok,
        "distinct": cyclic_canonical(lift.indices) != cyclic_canonical(sjt.indices),
        "lift_histogram": histogram(lift),
        "sjt_histogram": histogram(sjt),
    }


def factor_to_dot(n: int) -> str:
    if n > 9:
        raise ValueError(f"DOT export of the factor graph limited to n <= 9 (got {n})")
    graph = factor_graph(n)

    def label(q):
        a, b = sorted(q)
        return f'"{{{a},{b}}}"'

    lines = [f"graph Gamma_{n} {{"]
    for q in graph.vertices:
        lines.append(f"  {label(q)};")
    for a, b in graph.edges():
        lines.append(f"  {label(a)} -- {label(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def rung_steps(form: Form, n: int) -> int:
    return sum(1 for i in form if i == n - 1)


__all__ = [
    "FactorGraph",
    "HamResult",
    "LiftPlan",
    "build_hamiltonian_cycle",
    "build_with_plan",
    "compare_sjt",
    "cyclic_canonical",
    "exit_candidates",
    "factor_edges_from_bs",
    "factor_graph",
    "factor_ham_cycle",
    "is_factor_cycle",
    "factor_to_dot",
    "max_rotation",
    "pick_exit",
    "plan_lift",
]
