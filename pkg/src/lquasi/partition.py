"""Partitions of {0..n-1} stored as canonical block-label tuples."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError


def _canonical(labels: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Blocks are numbered by first appearance, so equal partitions compare equal."""

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", _canonical(self.labels))

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        return cls(tuple(int(x) for x in labels))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "Partition":
        blocks = [sorted(set(b)) for b in blocks]
        elems = sorted(x for b in blocks for x in b)
        size = n if n is not None else len(elems)
        if elems != list(range(size)):
            raise InputError(f"blocks do not partition range({size})")
        labels = [0] * size
        for i, b in enumerate(blocks):
            for x in b:
                labels[x] = i
        return cls(tuple(labels))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return (max(self.labels) + 1) if self.labels else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.labels):
            out[b].append(x)
        return out

    def block_of(self, x: int) -> list[int]:
        b = self.labels[x]
        return [y for y, c in enumerate(self.labels) if c == b]

    def related(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def is_discrete(self) -> bool:
        return self.num_blocks == self.size

    def is_total(self) -> bool:
        return self.num_blocks <= 1

    def array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)

    def meet(self, other: "Partition") -> "Partition":
        return Partition(tuple(zip(self.labels, other.labels)))  # pairs canonicalize fine

    def join(self, other: "Partition") -> "Partition":
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for part in (self, other):
            first: dict[int, int] = {}
            for x, b in enumerate(part.labels):
                if b in first:
                    ra, rb = find(first[b]), find(x)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
                else:
                    first[b] = x
        return Partition(tuple(find(x) for x in range(self.size)))

    def refines(self, other: "Partition") -> bool:
        """``self <= other`` in the refinement order."""
        image: dict[int, int] = {}
        for a, b in zip(self.labels, other.labels):
            if image.setdefault(a, b) != b:
                return False
        return True

    def sort_key(self):
        return (-self.num_blocks, self.labels)

    def __le__(self, other: "Partition") -> bool:  # type: ignore[override]
        return self.refines(other)

    def __lt__(self, other: "Partition") -> bool:  # type: ignore[override]
        return self != other and self.refines(other)

    def __ge__(self, other: "Partition") -> bool:  # type: ignore[override]
        return other.refines(self)

    def __gt__(self, other: "Partition") -> bool:  # type: ignore[override]
        return self != other and other.refines(self)

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks()) + "}"

    def __repr__(self) -> str:
        return f"Partition({self})"


def all_partitions(n: int):
    """Yield every partition of range(n) as a restricted growth string."""
    if n == 0:
        yield Partition(())
        return
    labels = [0] * n

    def rec(i, m):
        if i == n:
            yield Partition(tuple(labels))
            return
        for b in range(m + 1):
            labels[i] = b
            yield from rec(i + 1, max(m, b + 1))

    labels[0] = 0
    yield from rec(1, 1)
