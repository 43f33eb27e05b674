"""Edge bookkeeping for layered triangulations built by flips.

Each slot of a seed corresponds to an edge of the current surface
triangulation.  Attaching a tetrahedron of modulus ``w`` at slot ``m``
kills the edge in slot ``m`` (the tetrahedron contributes ``w`` to it),
creates a new edge in the same slot (contribution ``w``), and contributes
``w''`` or ``w'`` to every other edge according to the sign of the
exchange-matrix entry ``b[m, e]``.  Multiplying the contributions around an
edge gives its gluing product, which is 1 for a consistent solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cluster import ExchangeMatrix, mutate_matrix, permute

__all__ = ["Layer", "EdgeInstance", "EdgeTracker", "class_products"]


@dataclass(frozen=True)
class Layer:
    """One flip: mutations then transpositions applied in order.

    Each mutation is ``(slot, modulus)`` or ``(slot, modulus, label)``; the
    label names the tetrahedron in :attr:`EdgeInstance.angles`.
    """

    mutations: tuple[tuple, ...]
    swaps: tuple[tuple[int, int], ...]


@dataclass
class EdgeInstance:
    """An edge from its birth (or the bottom surface) to its death (or the top)."""

    born: int | None
    start_slot: int
    product: complex = 1 + 0j
    killed: int | None = None
    end_slot: int | None = None
    angles: dict = field(default_factory=dict)

    def add(self, label, kind: int, count: int = 1) -> None:
        """Record ``count`` copies of angle ``kind`` (0: z, 1: z', 2: z'') of tetrahedron ``label``."""
        key = (label, kind)
        self.angles[key] = self.angles.get(key, 0) + count


@dataclass
class EdgeTracker:
    """Run flips over an exchange matrix and record every edge instance."""

    b: ExchangeMatrix
    slots: list[EdgeInstance] = field(default_factory=list)
    edges: list[EdgeInstance] = field(default_factory=list)
    layer: int = 0

    def __post_init__(self):
        if not self.slots:
            self.slots = [EdgeInstance(None, s) for s in range(self.b.n)]
            self.edges = list(self.slots)

    def apply(self, layer: Layer) -> None:
        for mut in layer.mutations:
            m, w = mut[0], complex(mut[1])
            label = mut[2] if len(mut) > 2 else self.layer
            w1 = 1 - 1 / w
            w2 = 1 / (1 - w)
            dead = self.slots[m]
            dead.product *= w
            dead.add(label, 0)
            dead.killed = self.layer
            dead.end_slot = m
            for e in range(self.b.n):
                if e == m:
                    continue
                bme = self.b[m, e]
                if bme > 0:
                    self.slots[e].product *= w2**bme
                    self.slots[e].add(label, 2, bme)
                elif bme < 0:
                    self.slots[e].product *= w1 ** (-bme)
                    self.slots[e].add(label, 1, -bme)
            born = EdgeInstance(self.layer, m, w)
            born.add(label, 0)
            self.slots[m] = born
            self.edges.append(born)
            self.b = mutate_matrix(self.b, m)
        for i, j in layer.swaps:
            self.slots[i], self.slots[j] = self.slots[j], self.slots[i]
            self.b = permute(self.b, i, j)
        self.layer += 1

    def run(self, layers: Sequence[Layer]) -> EdgeTracker:
        for layer in layers:
            self.apply(layer)
        return self

    def alive(self) -> list[EdgeInstance]:
        for s, inst in enumerate(self.slots):
            inst.end_slot = s
        return list(self.slots)


def class_products(groups: Sequence[Sequence[EdgeInstance]]) -> list[complex]:
    """Product of contributions over each group of identified edge instances."""
    out = []
    for g in groups:
        prod = 1 + 0j
        for inst in g:
            prod *= inst.product
        out.append(prod)
    return out
