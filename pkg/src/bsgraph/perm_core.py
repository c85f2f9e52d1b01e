"""Permutations of {1..n}, bubble-sort generators, parity, ranking and SJT.

Positions and generator indices are 1-based everywhere in the public API:
``b_i`` swaps positions ``i`` and ``i+1`` and acts on the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

DEFAULT_CAP = 10

_cap = DEFAULT_CAP


def get_cap() -> int:
    return _cap


def set_cap(cap: int) -> int:
    """Set the largest admissible ``n`` and return the previous value."""
    global _cap
    if cap < 2:
        raise ValueError(f"cap must be >= 2, got {cap}")
    old, _cap = _cap, cap
    return old


def check_n(n: int, minimum: int = 2) -> None:
    if not isinstance(n, int) or n < minimum or n > _cap:
        raise ValueError(f"n={n!r} outside supported range [{minimum}, {_cap}]")


@dataclass(frozen=True)
class Permutation:
    """A vertex of BS_n: ``image[i-1]`` is the value at position ``i``."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        img = tuple(self.image)
        object.__setattr__(self, "image", img)
        check_n(len(img))
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"not a permutation of 1..{len(img)}: {img}")

    @classmethod
    def _trusted(cls, image: tuple[int, ...]) -> "Permutation":
        # skips validation; only for images derived from valid permutations
        obj = object.__new__(cls)
        object.__setattr__(obj, "image", image)
        return obj

    @property
    def n(self) -> int:
        return len(self.image)

    def __getitem__(self, pos: int) -> int:
        """Value at 1-based position ``pos``."""
        if not 1 <= pos <= len(self.image):
            raise IndexError(pos)
        return self.image[pos - 1]

    def __iter__(self):
        return iter(self.image)

    def __len__(self) -> int:
        return len(self.image)

    def __str__(self) -> str:
        sep = "" if self.n <= 9 else ","
        return sep.join(map(str, self.image))

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"

    def __lt__(self, other: "Permutation") -> bool:
        return self.image < other.image

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"1324"``, ``"1,3,2,4"`` or ``"[1 3 2 4]"``."""
        body = text.strip().strip("[]")
        if "," in body:
            parts = [p for p in body.split(",") if p.strip()]
        elif " " in body.strip():
            parts = body.split()
        else:
            parts = list(body)
        return cls(tuple(int(p) for p in parts))


@dataclass(frozen=True)
class Form:
    """A sequence of generator indices describing a walk.

    Consecutive equal indices are rejected (a walk that immediately backtracks
    is never part of a simple cycle).  ``cyclic=True`` also forbids
    ``first == last``; the 2-vertex walk of BS_2, ``[1, 1]``, is the one
    exemption and is built with ``allow_backtrack=True``.
    """

    indices: tuple[int, ...]
    cyclic: bool = False
    allow_backtrack: bool = False

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if any(i < 1 for i in idx):
            raise ValueError(f"generator indices must be >= 1: {idx}")
        if self.allow_backtrack:
            return
        for a, b in zip(idx, idx[1:]):
            if a == b:
                raise ValueError(f"consecutive repeated index {a} in form {idx}")
        if self.cyclic and len(idx) > 1 and idx[0] == idx[-1]:
            raise ValueError(f"cyclic form starts and ends with {idx[0]}")

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, k):
        return self.indices[k]

    def max_index(self) -> int:
        return max(self.indices, default=0)


def _indices(f: Form | Sequence[int]) -> tuple[int, ...]:
    return f.indices if isinstance(f, Form) else tuple(f)


def identity(n: int) -> Permutation:
    check_n(n)
    return Permutation._trusted(tuple(range(1, n + 1)))


def swap(image: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Apply ``b_i`` to a raw image tuple (no range checks)."""
    return image[: i - 1] + (image[i], image[i - 1]) + image[i + 1 :]


def apply_gen(p: Permutation, i: int) -> Permutation:
    if not 1 <= i <= p.n - 1:
        raise ValueError(f"generator b_{i} out of range for n={p.n}")
    return Permutation._trusted(swap(p.image, i))


def apply_form(p: Permutation, f: Form | Sequence[int]) -> Permutation:
    image = p.image
    n = p.n
    for i in _indices(f):
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator b_{i} out of range for n={n}")
        image = swap(image, i)
    return Permutation._trusted(image)


def trace(p: Permutation, f: Form | Sequence[int]) -> list[Permutation]:
    """All vertices visited by walking ``f`` from ``p``, including ``p``."""
    out = [p]
    for i in _indices(f):
        out.append(apply_gen(out[-1], i))
    return out


def inversions(image: Sequence[int]) -> int:
    n = len(image)
    return sum(1 for a in range(n) for b in range(a + 1, n) if image[a] > image[b])


def parity(p: Permutation) -> str:
    """``"even"`` or ``"odd"``."""
    return "odd" if inversions(p.image) % 2 else "even"


def is_even(image: Sequence[int]) -> bool:
    return inversions(image) % 2 == 0


@lru_cache(maxsize=1 << 16)
def _rank_tuple(image: tuple[int, ...]) -> int:
    n = len(image)
    rank = 0
    for a in range(n):
        smaller = sum(1 for b in range(a + 1, n) if image[b] < image[a])
        rank += smaller * factorial(n - 1 - a)
    return rank


def lex_rank(p: Permutation | Sequence[int]) -> int:
    image = p.image if isinstance(p, Permutation) else tuple(p)
    return _rank_tuple(image)


def lex_unrank(n: int, r: int) -> Permutation:
    check_n(n)
    if not 0 <= r < factorial(n):
        raise ValueError(f"rank {r} out of range for n={n}")
    pool = list(range(1, n + 1))
    out = []
    for a in range(n - 1, -1, -1):
        q, r = divmod(r, factorial(a))
        out.append(pool.pop(q))
    return Permutation._trusted(tuple(out))


def all_permutations(n: int) -> Iterable[Permutation]:
    """S_n in lexicographic order."""
    from itertools import permutations

    check_n(n)
    for img in permutations(range(1, n + 1)):
        yield Permutation._trusted(img)


def _sjt_steps(m: int) -> list[int]:
    """Swap positions of the open SJT walk on m elements (m! - 1 steps)."""
    steps: list[int] = []
    inner: list[int] = []
    for size in range(2, m + 1):
        steps = []
        blocks = factorial(size - 1)
        for r in range(blocks):
            if r % 2 == 0:
                steps.extend(range(size - 1, 0, -1))
                if r < blocks - 1:
                    # largest element parked at position 1
                    steps.append(inner[r] + 1)
            else:
                steps.extend(range(1, size))
                if r < blocks - 1:
                    steps.append(inner[r])
        inner = steps
    return steps


def sjt_cycle(n: int) -> Form:
    """The Steinhaus-Johnson-Trotter Gray code closed into a Hamiltonian cycle.

    For n = 2 the result is ``[1, 1]``: BS_2 is a single edge, so its only
    closed spanning walk traverses that edge twice.
    """
    check_n(n)
    steps = _sjt_steps(n)
    image = tuple(range(1, n + 1))
    for i in steps:
        image = swap(image, i)
    diff = [a for a in range(n) if image[a] != a + 1]
    if len(diff) != 2 or diff[1] != diff[0] + 1:
        raise RuntimeError("SJT walk does not end adjacent to its start")
    steps.append(diff[0] + 1)
    if n == 2:
        return Form(tuple(steps), cyclic=True, allow_backtrack=True)
    return Form(tuple(steps), cyclic=True)


def histogram(f: Form | Sequence[int]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for i in _indices(f):
        counts[i] = counts.get(i, 0) + 1
    return dict(sorted(counts.items()))
