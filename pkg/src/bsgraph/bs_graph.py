"""BS_n as an implicit Cayley graph.

Vertices are never materialised up front; neighbourhoods are computed on
demand.  The brute-force cycle enumerator here is the oracle that the
constructive family characterisation in :mod:`bsgraph.small_cycles` is
certified against, so it deliberately shares no code with it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Sequence

from .perm_core import (
    Form,
    Permutation,
    _indices,
    all_permutations,
    apply_form,
    apply_gen,
    identity,
    inversions,
    lex_rank,
    lex_unrank,
    swap,
)

REASONS = ("repeat-vertex", "bad-step", "not-closed", "wrong-length", "wrong-end")


@dataclass(frozen=True)
class Cycle:
    """A simple cycle, identified by the lex-ranks of its vertices.

    ``order`` keeps one cyclic listing of the ranks so that forms can be read
    off; it does not take part in equality or hashing.
    """

    n: int
    vertices: frozenset[int]
    order: tuple[int, ...] = field(compare=False, hash=False, default=())

    @property
    def length(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_walk(cls, walk: Sequence[Permutation]) -> "Cycle":
        """Build from a closed walk listing (start vertex not repeated)."""
        ranks = tuple(lex_rank(p) for p in walk)
        if len(set(ranks)) != len(ranks):
            raise ValueError("cycle walk repeats a vertex")
        return cls(walk[0].n, frozenset(ranks), ranks)

    def perms(self) -> list[Permutation]:
        return [lex_unrank(self.n, r) for r in self.order]


@dataclass(frozen=True)
class WalkReport:
    ok: bool
    first_violation: tuple[int, str] | None = None
    visited: int = 0

    def to_dict(self) -> dict:
        out: dict = {"ok": self.ok, "visited": self.visited}
        if self.first_violation is not None:
            step, reason = self.first_violation
            out["first_violation"] = {"step": step, "reason": reason}
        else:
            out["first_violation"] = None
        return out


def neighbors(p: Permutation) -> list[Permutation]:
    """The n-1 neighbours of ``p``, ordered by generator index."""
    return [apply_gen(p, i) for i in range(1, p.n)]


def distance(p: Permutation, q: Permutation) -> int:
    """Graph distance: inversion count of ``p^-1 q``."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    # (p^-1 q)(k) = position of q_k in p
    where = {v: k for k, v in enumerate(p.image)}
    return inversions([where[v] for v in q.image])


def bfs_distances(source: Permutation) -> dict[tuple[int, ...], int]:
    """Distances from ``source`` to every vertex, by breadth-first search."""
    n = source.n
    dist = {source.image: 0}
    queue = deque([source.image])
    while queue:
        cur = queue.popleft()
        d = dist[cur] + 1
        for i in range(1, n):
            nxt = swap(cur, i)
            if nxt not in dist:
                dist[nxt] = d
                queue.append(nxt)
    return dist


def enumerate_cycles_through(p: Permutation, length: int) -> set[Cycle]:
    """Every simple ``length``-cycle through ``p``, by exhaustive walk search.

    All index sequences without consecutive (cyclic) repeats are tried; a
    sequence is kept when it returns to ``p`` with every intermediate vertex
    distinct.  Each cycle is found once per direction and deduplicated by
    vertex set.
    """
    if length not in (4, 6):
        raise ValueError(f"unsupported cycle length {length}; use 4 or 6")
    n = p.n
    start = p.image
    found: dict[frozenset, tuple] = {}
    path = [start]
    seq: list[int] = []

    def dfs(cur: tuple[int, ...], last: int) -> None:
        depth = len(seq)
        if depth == length - 1:
            for i in range(1, n):
                if i == last or i == seq[0]:
                    continue
                if swap(cur, i) == start:
                    key = frozenset(path)
                    if key not in found:
                        found[key] = tuple(path)
            return
        for i in range(1, n):
            if i == last:
                continue
            nxt = swap(cur, i)
            if nxt in path:
                continue
            seq.append(i)
            path.append(nxt)
            dfs(nxt, i)
            path.pop()
            seq.pop()

    if n >= 2:
        dfs(start, 0)
    out = set()
    for walk in found.values():
        ranks = tuple(lex_rank(v) for v in walk)
        out.add(Cycle(n, frozenset(ranks), ranks))
    return out


def enumerate_all_cycles(n: int, length: int) -> set[Cycle]:
    """Whole-graph sweep of the oracle: union over every vertex."""
    out: set[Cycle] = set()
    for p in all_permutations(n):
        out |= enumerate_cycles_through(p, length)
    return out


def walk_indices(vertices: Sequence[Permutation], closed: bool = False) -> list[int]:
    """Generator indices joining consecutive vertices; raises if not adjacent."""
    seq = list(vertices)
    if closed:
        seq = seq + [seq[0]]
    out = []
    for a, b in zip(seq, seq[1:]):
        out.append(step_index(a.image, b.image))
    return out


def step_index(a: Sequence[int], b: Sequence[int]) -> int:
    diff = [k for k in range(len(a)) if a[k] != b[k]]
    if len(diff) != 2 or diff[1] != diff[0] + 1 or a[diff[0]] != b[diff[1]]:
        raise ValueError(f"{a} and {b} are not adjacent in BS_n")
    return diff[0] + 1


def _cyclic_readings(seq: Sequence[int]) -> Iterable[tuple[int, ...]]:
    m = len(seq)
    rev = tuple(reversed(seq))
    for s in range(m):
        yield tuple(seq[s:]) + tuple(seq[:s])
        yield rev[s:] + rev[:s]


def canonical_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic maximum over all rotations and reversals of a closed form."""
    return max(_cyclic_readings(tuple(seq)))


def canonical_form(c: Cycle) -> Form:
    """Lexicographically maximal index sequence over the 2l readings of ``c``."""
    if not c.order or len(c.order) != len(c.vertices):
        raise ValueError("cycle carries no vertex order")
    walk = c.perms()
    try:
        seq = walk_indices(walk, closed=True)
    except ValueError as exc:
        raise ValueError(f"malformed cycle: {exc}") from None
    return Form(canonical_sequence(seq), cyclic=True)


def validate_path(
    start: Permutation,
    f: Form | Sequence[int],
    *,
    closed: bool = False,
    expected_count: int | None = None,
    end: Permutation | None = None,
    allowed_gens: Iterable[int] | None = None,
) -> WalkReport:
    """Walk ``f`` from ``start`` and report the first violation, if any.

    Steps are numbered from 0.  For a closed walk the final step must land
    on ``start``; every other step must reach a new vertex.
    """
    n = start.n
    idx = _indices(f)
    allowed = set(allowed_gens) if allowed_gens is not None else set(range(1, n))
    cur = start.image
    seen = {cur}
    last = len(idx) - 1
    for step, i in enumerate(idx):
        if i not in allowed or not 1 <= i <= n - 1:
            return WalkReport(False, (step, "bad-step"), len(seen))
        cur = swap(cur, i)
        if closed and step == last:
            if cur != start.image:
                return WalkReport(False, (step, "not-closed"), len(seen))
            break
        if cur in seen:
            return WalkReport(False, (step, "repeat-vertex"), len(seen))
        seen.add(cur)
    if closed and not idx:
        return WalkReport(False, (0, "not-closed"), len(seen))
    if end is not None and cur != end.image:
        return WalkReport(False, (len(idx), "wrong-end"), len(seen))
    if expected_count is not None and len(seen) != expected_count:
        return WalkReport(False, (len(idx), "wrong-length"), len(seen))
    return WalkReport(True, None, len(seen))


def validate_gray_code(n: int, f: Form | Sequence[int], closed: bool = True) -> WalkReport:
    """Check that ``f`` traced from the identity visits all n! vertices once.

    Closed: ``n!`` steps returning to the identity.  Open: ``n! - 1`` steps
    (a Hamiltonian path).
    """
    return validate_path(identity(n), f, closed=closed, expected_count=factorial(n))


def has_disjoint_return(n: int, gens: Sequence[int]) -> bool:
    """True if some other path of the same length returns from the end of the walk.

    The forward walk is ``gens`` traced from the identity.  A return path runs
    from its end back to the identity in ``len(gens)`` steps, avoids the
    forward path's internal vertices, and is not the forward path reversed.
    Shared endpoints are allowed.
    """
    pi = identity(n).image
    forward = [pi]
    for i in gens:
        forward.append(swap(forward[-1], i))
    d = len(gens)
    tau = forward[-1]
    internal = set(forward[1:-1])
    back_gens = tuple(reversed(gens))
    trail: list[int] = []
    visited = {tau}

    def search(cur) -> bool:
        depth = len(trail)
        if depth == d:
            return cur == pi and tuple(trail) != back_gens
        for i in range(1, n):
            if trail and trail[-1] == i:
                continue
            nxt = swap(cur, i)
            if nxt in visited:
                continue
            if depth + 1 < d and (nxt in internal or nxt == pi):
                continue
            trail.append(i)
            visited.add(nxt)
            found = search(nxt)
            visited.discard(nxt)
            trail.pop()
            if found:
                return True
        return False

    return search(tau)


def unique_return_path_check(n: int, j: int, d: int) -> bool:
    """Check that ``b_j b_(j+1) ... b_(j+d-1)`` from the identity admits no detour.

    True iff :func:`has_disjoint_return` finds no other ``(tau, pi)``-path of
    length ``d``.
    """
    if not (1 <= d <= n - 2 and 1 <= j <= n - d):
        raise ValueError(f"need 1 <= d <= n-2 and 1 <= j <= n-d (n={n}, j={j}, d={d})")
    return not has_disjoint_return(n, range(j, j + d))


def to_dot(n: int) -> str:
    """DOT text for BS_n, vertices in lex order, one edge per generator."""
    if n > 4:
        raise ValueError(f"DOT export of BS_n limited to n <= 4 (got {n})")
    lines = [f"graph BS_{n} {{"]
    verts = list(all_permutations(n))
    for p in verts:
        lines.append(f'  "{p}";')
    for p in verts:
        for i in range(1, n):
            q = apply_gen(p, i)
            if p.image < q.image:
                lines.append(f'  "{p}" -- "{q}" [gen={i}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Cycle",
    "WalkReport",
    "apply_form",
    "bfs_distances",
    "canonical_form",
    "canonical_sequence",
    "distance",
    "enumerate_all_cycles",
    "enumerate_cycles_through",
    "has_disjoint_return",
    "neighbors",
    "step_index",
    "to_dot",
    "unique_return_path_check",
    "validate_gray_code",
    "validate_path",
    "walk_indices",
]
