"""Constructive characterisation of all 4- and 6-cycles of BS_n.

Seven families of closed forms cover every short cycle:

====== =========================  =========================================
tag    form                       parameters
====== =========================  =========================================
C4     (b_j b_i)^2                1 <= i < j-1 <= n-2
C6_1   (b_i b_(i+1))^3            1 <= i <= n-2
C6_2   b_j b_(i+1) b_i b_j b_i b_(i+1)
                                  1 <= i <= n-2, j in 1..n-1,
                                  j <= i-2 or j >= i+3
C6_3   (b_k b_j b_i)^2            1 <= i < j-1 < k-2 <= n-3
C6_4   b_k b_j b_i b_k b_i b_j    same as C6_3
C6_5   b_k b_j b_k b_i b_j b_i    same as C6_3
C6_6   b_k b_i b_k b_j b_i b_j    same as C6_3
====== =========================  =========================================

How many distinct cycles one form contributes at a fixed vertex is found by
instantiating all of its rotations and reflections there and deduplicating;
it is never taken on trust.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable

from .bs_graph import (
    Cycle,
    _cyclic_readings,
    canonical_form,
    canonical_sequence,
    enumerate_cycles_through,
)
from .perm_core import Form, Permutation, all_permutations, lex_rank, lex_unrank, swap

FAMILIES = ("C4", "C6_1", "C6_2", "C6_3", "C6_4", "C6_5", "C6_6")
C6_FAMILIES = FAMILIES[1:]
MIN_N = {"C4": 4, "C6_1": 3, "C6_2": 5, "C6_3": 6, "C6_4": 6, "C6_5": 6, "C6_6": 6}


def family_length(family: str) -> int:
    return 4 if family == "C4" else 6


@dataclass(frozen=True)
class FormFamily:
    family: str
    params: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not _admissible(self.family, self.params, self.n):
            raise ValueError(f"parameters {self.params} violate {self.family} constraint at n={self.n}")


def _independent_of_pair(i: int, j: int) -> bool:
    # b_j commutes with both b_i and b_(i+1)
    return j <= i - 2 or j >= i + 3


def _admissible(family: str, params: tuple[int, ...], n: int) -> bool:
    if family == "C4":
        if len(params) != 2:
            return False
        i, j = params
        return 1 <= i < j - 1 <= n - 2
    if family == "C6_1":
        return len(params) == 1 and 1 <= params[0] <= n - 2
    if family == "C6_2":
        if len(params) != 2:
            return False
        i, j = params
        return 1 <= i <= n - 2 and 1 <= j <= n - 1 and _independent_of_pair(i, j)
    if len(params) != 3:
        return False
    i, j, k = params
    return 1 <= i < j - 1 < k - 2 <= n - 3


def expand(ff: FormFamily) -> Form:
    p = ff.params
    if ff.family == "C4":
        i, j = p
        seq = (j, i, j, i)
    elif ff.family == "C6_1":
        (i,) = p
        seq = (i, i + 1) * 3
    elif ff.family == "C6_2":
        i, j = p
        seq = (j, i + 1, i, j, i, i + 1)
    else:
        i, j, k = p
        seq = {
            "C6_3": (k, j, i, k, j, i),
            "C6_4": (k, j, i, k, i, j),
            "C6_5": (k, j, k, i, j, i),
            "C6_6": (k, i, k, j, i, j),
        }[ff.family]
    return Form(seq, cyclic=True)


def enumerate_family_params(family: str, n: int) -> list[FormFamily]:
    """All admissible parameter tuples; empty below the family's minimum n."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    out = []
    if family == "C4":
        cands: Iterable[tuple[int, ...]] = ((i, j) for j in range(1, n) for i in range(1, n))
    elif family == "C6_1":
        cands = ((i,) for i in range(1, n))
    elif family == "C6_2":
        cands = ((i, j) for i in range(1, n) for j in range(1, n))
    else:
        cands = ((i, j, k) for i in range(1, n) for j in range(1, n) for k in range(1, n))
    for params in cands:
        if _admissible(family, params, n):
            out.append(FormFamily(family, params, n))
    return out


def family_form_count(family: str, n: int) -> int:
    """Number of forms in a family, by direct enumeration."""
    return len(enumerate_family_params(family, n))


def _instantiate(image: tuple[int, ...], seq: tuple[int, ...]) -> tuple[tuple[int, ...], ...] | None:
    walk = [image]
    cur = image
    for i in seq[:-1]:
        cur = swap(cur, i)
        walk.append(cur)
    if swap(cur, seq[-1]) != image or len(set(walk)) != len(walk):
        return None
    return tuple(walk)


def instantiate_at(p: Permutation, f: Form) -> set[Cycle]:
    """Distinct cycles obtained by reading ``f`` from ``p`` in every rotation and direction."""
    found: dict[frozenset, tuple] = {}
    for reading in set(_cyclic_readings(f.indices)):
        walk = _instantiate(p.image, reading)
        if walk is None:
            raise ValueError(f"form {f.indices} does not trace a simple cycle from {p}")
        found.setdefault(frozenset(walk), walk)
    out = set()
    for walk in found.values():
        ranks = tuple(lex_rank(v) for v in walk)
        out.add(Cycle(p.n, frozenset(ranks), ranks))
    return out


@lru_cache(maxsize=None)
def family_multiplicity(family: str) -> int:
    """Cycles through a fixed vertex contributed by one form of ``family``.

    Measured on the lexicographically first form at the family's minimal n.
    """
    n = MIN_N[family]
    ff = enumerate_family_params(family, n)[0]
    return len(instantiate_at(Permutation(tuple(range(1, n + 1))), expand(ff)))


def cycles_through_vertex(p: Permutation, length: int) -> set[Cycle]:
    if length not in (4, 6):
        raise ValueError(f"unsupported cycle length {length}")
    fams = ("C4",) if length == 4 else C6_FAMILIES
    out: set[Cycle] = set()
    for fam in fams:
        for ff in enumerate_family_params(fam, p.n):
            out |= instantiate_at(p, expand(ff))
    return out


@lru_cache(maxsize=None)
def _canonical_lookup(n: int) -> dict[tuple[int, ...], str]:
    table = {}
    for fam in FAMILIES:
        for ff in enumerate_family_params(fam, n):
            table[canonical_sequence(expand(ff).indices)] = fam
    return table


def classify(c: Cycle) -> str | None:
    """Family tag of a cycle via its canonical form, or None if it matches none."""
    return _canonical_lookup(c.n).get(canonical_form(c).indices)


def family_breakdown(cycles: Iterable[Cycle]) -> dict[str, int]:
    out: dict[str, int] = {}
    for c in cycles:
        tag = classify(c) or "unclassified"
        out[tag] = out.get(tag, 0) + 1
    return out


@dataclass
class CycleCensus:
    n: int
    per_vertex: dict[str, int]
    per_vertex_total_c4: int
    per_vertex_total_c6: int
    total_c4: int
    total_c6: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "per_vertex": dict(self.per_vertex)
            | {"c4": self.per_vertex_total_c4, "c6": self.per_vertex_total_c6},
            "totals": {"c4": self.total_c4, "c6": self.total_c6},
        }


def census(n: int) -> CycleCensus:
    """Per-vertex and total short-cycle counts, in exact integer arithmetic.

    Each l-cycle passes through l vertices, so totals are
    ``per_vertex * n! / l``.
    """
    per_vertex = {}
    for fam in FAMILIES:
        per_vertex[fam] = family_form_count(fam, n) * family_multiplicity(fam) if n >= MIN_N[fam] else 0
    pv4 = per_vertex["C4"]
    pv6 = sum(per_vertex[f] for f in C6_FAMILIES)
    nf = factorial(n) if n >= 1 else 1
    return CycleCensus(n, per_vertex, pv4, pv6, pv4 * nf // 4, pv6 * nf // 6)


def formula_c4_total(n: int) -> int:
    return (n - 2) * (n - 3) * factorial(n) // 8


def formula_c6_total(n: int) -> int:
    return (7 * n**3 - 72 * n**2 + 247 * n - 280) * factorial(n) // 12


def formula_c6_per_vertex(n: int) -> int:
    # (n-2) + 6(n-3)(n-4) + (7/2)(n-3)(n-4)(n-5); the last product is even
    return (n - 2) + 6 * (n - 3) * (n - 4) + 7 * (n - 3) * (n - 4) * (n - 5) // 2


def recurrence_n_c6(n: int) -> int:
    """Forms per three-index family via N(6) = 1, N(n) = N(n-1) + (n-4)(n-5)/2.

    The new forms at size n are those with k = n-1, leaving C(n-4, 2)
    choices of (i, j).
    """
    if n < 6:
        return 0
    value = 1
    for m in range(7, n + 1):
        value += (m - 4) * (m - 5) // 2
    return value


@dataclass
class CertifyReport:
    n: int
    scope: str
    vertices_checked: int
    discrepancies: list[dict] = field(default_factory=list)
    census_ok: bool = True
    oracle_totals: dict[str, int] = field(default_factory=dict)
    seed: int | None = None

    @property
    def certified(self) -> bool:
        return not self.discrepancies and self.census_ok


def _check_vertex(args) -> tuple[int, list[dict], dict[str, set]]:
    n, rank, lengths = args
    p = lex_unrank(n, rank)
    bad = []
    oracle_sets = {}
    for length in lengths:
        oracle = enumerate_cycles_through(p, length)
        built = cycles_through_vertex(p, length)
        oracle_sets[length] = oracle
        if oracle != built:
            bad.append(
                {
                    "vertex": str(p),
                    "length": length,
                    "oracle_only": len(oracle - built),
                    "constructed_only": len(built - oracle),
                }
            )
    return rank, bad, oracle_sets


def certify(
    n: int,
    scope: str = "full",
    sample: int = 1,
    seed: int = 0,
    workers: int = 1,
) -> CertifyReport:
    """Compare constructed and brute-force cycle sets vertex by vertex.

    ``scope="full"`` sweeps every vertex and also checks the census totals
    against the union of oracle cycles.  ``scope="sampled"`` checks ``sample``
    vertices drawn with ``random.Random(seed)``; the identity is always
    included.
    """
    lengths = tuple(length for length in (4, 6) if (length == 4 and n >= 4) or (length == 6 and n >= 3))
    total = factorial(n)
    if scope == "full":
        ranks = list(range(total))
    elif scope == "sampled":
        if sample < 1:
            raise ValueError("sample count must be >= 1")
        rng = random.Random(seed)
        ranks = [0] + sorted(rng.sample(range(1, total), min(sample - 1, total - 1)))
    else:
        raise ValueError(f"unknown scope {scope!r}")
    report = CertifyReport(n, scope, len(ranks), seed=seed if scope == "sampled" else None)
    union: dict[int, set] = {length: set() for length in lengths}
    jobs = [(n, r, lengths) for r in ranks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_vertex, jobs, chunksize=max(1, len(jobs) // (workers * 4))))
    else:
        results = [_check_vertex(job) for job in jobs]
    for _, bad, sets in sorted(results, key=lambda r: r[0]):
        report.discrepancies.extend(bad)
        if scope == "full":
            for length, s in sets.items():
                union[length] |= s
    if scope == "full":
        cen = census(n)
        report.oracle_totals = {
            "c4": len(union.get(4, ())),
            "c6": len(union.get(6, ())),
        }
        report.census_ok = report.oracle_totals == {"c4": cen.total_c4, "c6": cen.total_c6}
    return report
