"""Prisms inside BS_n.

A generalised prism 2-BS_(n-2) is the set of permutations whose last two
values form a fixed unordered pair; generators b_1..b_(n-3) move inside one
of its two copies of BS_(n-2), and b_(n-1) is the rung joining them.  For
n = 5 these are exactly the 6-prisms P6(4, 2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from math import factorial

from .bs_graph import WalkReport, validate_gray_code, validate_path, walk_indices
from .perm_core import Form, Permutation, all_permutations, apply_form, is_even, sjt_cycle, swap


@dataclass(frozen=True)
class PrismId:
    n: int
    pair: frozenset[int]

    def __post_init__(self) -> None:
        pair = frozenset(self.pair)
        object.__setattr__(self, "pair", pair)
        if len(pair) != 2 or not all(1 <= v <= self.n for v in pair):
            raise ValueError(f"prism needs two distinct values in 1..{self.n}, got {sorted(pair)}")

    @classmethod
    def of(cls, n: int, a: int, b: int) -> "PrismId":
        return cls(n, frozenset((a, b)))

    def contains(self, p: Permutation) -> bool:
        return p.n == self.n and frozenset(p.image[-2:]) == self.pair

    def sorted_pair(self) -> tuple[int, int]:
        a, b = sorted(self.pair)
        return a, b

    def __str__(self) -> str:
        a, b = self.sorted_pair()
        return f"{{{a},{b}}}"


@dataclass(frozen=True)
class PrismPath:
    prism: PrismId
    vertices: tuple[Permutation, ...]

    @property
    def endpoints(self) -> tuple[Permutation, Permutation]:
        return self.vertices[0], self.vertices[-1]

    def indices(self) -> list[int]:
        return walk_indices(self.vertices)


def p6_form(i: int, k: int, n: int) -> Form:
    """Closed 12-step form ``(b_k b_i b_(k-1) b_i)^3`` of the 6-prism P6(i, k)."""
    if not 2 <= k <= n - 1 or not 1 <= i <= n - 1:
        raise ValueError(f"P6({i},{k}) out of range for n={n}")
    if k - 2 <= i <= k + 1:
        raise ValueError(f"b_{i} must commute with b_{k} and b_{k - 1}")
    return Form((k, i, k - 1, i) * 3, cyclic=True)


def prism_of(p: Permutation) -> PrismId:
    if p.n < 5:
        raise ValueError("generalised prisms need n >= 5")
    return PrismId(p.n, frozenset(p.image[-2:]))


def cover(n: int) -> list[PrismId]:
    """All C(n, 2) generalised prisms, in lexicographic order of their pairs."""
    if n < 5:
        raise ValueError("generalised prisms need n >= 5")
    return [PrismId.of(n, a, b) for a, b in combinations(range(1, n + 1), 2)]


def prism_vertices(prism: PrismId) -> list[Permutation]:
    return [p for p in all_permutations(prism.n) if prism.contains(p)]


def _check_base(base: Form, m: int) -> None:
    if len(base) != factorial(m) or not validate_gray_code(m, base, closed=True).ok:
        raise ValueError(f"base form is not a Hamiltonian cycle of BS_{m}")


@lru_cache(maxsize=16)
def _default_base(m: int) -> Form:
    return sjt_cycle(m)


def ham_path_in_prism(
    prism: PrismId,
    pi: Permutation,
    tau: Permutation,
    base: Form | None = None,
    check_base: bool = True,
) -> PrismPath:
    """Hamiltonian path of a generalised prism between opposite-parity ends.

    ``base`` is a Hamiltonian cycle form of BS_(n-2) (SJT by default).  The
    copy holding ``pi`` is traversed along ``v_(s+1) = v_s * base_s`` and the
    other copy along the mirror ``vbar_s = v_s * b_(n-1)``.  With
    ``tau = v_t`` (t odd) the path zigzags over the first t rungs, sweeps the
    mirror copy and returns along the rest of the first copy.  With
    ``tau = vbar_t`` (t even) it runs v_0..v_(t-1), comes back along the mirror
    to vbar_0, wraps to vbar_(N-1) and zigzags down to tau.
    """
    n = prism.n
    if n < 5:
        raise ValueError("generalised prisms need n >= 5")
    if not (prism.contains(pi) and prism.contains(tau)):
        raise ValueError("both endpoints must lie in the prism")
    if pi == tau:
        raise ValueError("endpoints coincide")
    if is_even(pi.image) == is_even(tau.image):
        raise ValueError(f"endpoints {pi} and {tau} have the same parity")
    m = n - 2
    if base is None:
        base = _default_base(m)
    elif check_base:
        _check_base(base, m)
    N = len(base)
    rung = n - 1

    v = [pi.image]
    for s in range(N - 1):
        v.append(swap(v[-1], base[s]))
    vb = [swap(x, rung) for x in v]

    top = pi.image[-2:]
    copy1 = tau.image[-2:] == top
    row = v if copy1 else vb
    t = row.index(tau.image)

    order: list[tuple[int, ...]] = []
    if copy1:
        if t % 2 != 1:
            raise AssertionError("same-copy endpoint must sit at odd offset")
        for s in range(t):
            order.extend((v[s], vb[s]) if s % 2 == 0 else (vb[s], v[s]))
        order.extend(vb[t:])
        order.extend(reversed(v[t:]))
    else:
        if t % 2 != 0:
            raise AssertionError("cross-copy endpoint must sit at even offset")
        if t == 0:
            order.extend(v)
            order.extend(reversed(vb))
        else:
            order.extend(v[:t])
            order.extend(reversed(vb[:t]))
            for s in range(N - 1, t - 1, -1):
                order.extend((vb[s], v[s]) if s % 2 == 1 else (v[s], vb[s]))
    return PrismPath(prism, tuple(Permutation._trusted(x) for x in order))


def validate_prism_path(path: PrismPath, pi: Permutation | None = None, tau: Permutation | None = None) -> WalkReport:
    """Check size 2(n-2)!, distinctness, membership, legal generators and ends."""
    prism = path.prism
    n = prism.n
    verts = path.vertices
    if not verts:
        return WalkReport(False, (0, "wrong-length"), 0)
    start, end = verts[0], verts[-1]
    if pi is not None and start != pi:
        return WalkReport(False, (0, "wrong-end"), 0)
    for step, x in enumerate(verts):
        if not prism.contains(x):
            return WalkReport(False, (max(step - 1, 0), "bad-step"), step)
    try:
        idx = walk_indices(verts)
    except ValueError:
        for step, (a, b) in enumerate(zip(verts, verts[1:])):
            diff = sum(1 for x, y in zip(a.image, b.image) if x != y)
            if diff != 2:
                return WalkReport(False, (step, "bad-step"), step + 1)
        raise
    allowed = list(range(1, n - 2)) + [n - 1]
    return validate_path(
        start,
        idx,
        expected_count=2 * factorial(n - 2),
        end=tau if tau is not None else end,
        allowed_gens=allowed,
    )


def _load_table1() -> dict:
    with resources.files("bsgraph").joinpath("data/table1.json").open() as fh:
        return json.load(fh)


def _resolve(symbol: str, i: int, k: int) -> int:
    return {"i": i, "k": k, "k-1": k - 1}[symbol]


def table1_paths(i: int, k: int, n: int | None = None) -> list[tuple[tuple[int, ...], Form]]:
    """The 38 tabulated Hamiltonian paths of P6(i, k), as (target word, form).

    The target word is the generator sequence taking the source vertex to the
    path's end vertex.
    """
    n = n if n is not None else max(i, k) + 1
    p6_form(i, k, n)
    out = []
    for row in _load_table1()["rows"]:
        target = tuple(_resolve(s, i, k) for s in row["target"])
        for word in row["paths"]:
            out.append((target, Form(tuple(_resolve(s, i, k) for s in word))))
    return out


def validate_table1(i: int = 4, k: int = 2, n: int = 5, start: Permutation | None = None) -> list[tuple[tuple[int, ...], Form, WalkReport]]:
    """Validate each tabulated path as an 11-step Hamiltonian path of P6(i, k)."""
    if start is None:
        start = Permutation(tuple(range(1, n + 1)))
    gens = (i, k, k - 1)
    results = []
    for target, form in table1_paths(i, k, n):
        end = apply_form(start, target)
        rep = validate_path(start, form, expected_count=12, end=end, allowed_gens=gens)
        if rep.ok and len(form) != 11:
            rep = WalkReport(False, (len(form), "wrong-length"), rep.visited)
        results.append((target, form, rep))
    return results


def _prism_graph(m: int) -> list[list[int]]:
    # C_m x K_2: vertices 0..m-1 outer ring, m..2m-1 inner ring
    adj = [[] for _ in range(2 * m)]
    for s in range(m):
        for a, b in ((s, (s + 1) % m), (m + s, m + (s + 1) % m), (s, m + s)):
            adj[a].append(b)
            adj[b].append(a)
    return adj


def _ham_path_exists(adj: list[list[int]], u: int, w: int) -> bool:
    total = len(adj)
    visited = [False] * total
    visited[u] = True

    def go(cur: int, count: int) -> bool:
        if count == total:
            return cur == w
        for nxt in adj[cur]:
            if visited[nxt] or (nxt == w and count + 1 != total):
                continue
            visited[nxt] = True
            if go(nxt, count + 1):
                return True
            visited[nxt] = False
        return False

    return go(u, 1)


def prism_hamilton_connected(m: int) -> bool:
    """Brute-force Hamilton-connectivity of the m-prism C_m x K_2."""
    if not 3 <= m <= 8:
        raise ValueError(f"m={m} outside brute-force range 3..8")
    adj = _prism_graph(m)
    # paths are undirected, so unordered pairs suffice
    return all(_ham_path_exists(adj, u, w) for u, w in combinations(range(2 * m), 2))
