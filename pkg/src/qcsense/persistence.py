"""Persistent homology of one-parameter filtrations over the two-element
field: interval decomposition, diagrams, and maximal persistence lengths.

The reduction is the standard left-to-right boundary-column elimination
with bit-packed columns.  Classes alive at the end of the index range are
capped there and flagged essential.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dowker import Filtration, _mask_to_verts


@dataclass(frozen=True)
class PersistenceInterval:
    dim: int
    birth_numer: int
    death_numer: int
    denominator: int
    essential: bool = False

    def __post_init__(self):
        if self.birth_numer > self.death_numer:
            raise ValueError("interval dies before it is born")

    @property
    def birth(self) -> float:
        return self.birth_numer / self.denominator

    @property
    def death(self) -> float:
        return self.death_numer / self.denominator

    @property
    def length(self) -> float:
        return (self.death_numer - self.birth_numer) / self.denominator


@dataclass(frozen=True)
class PersistenceDiagram:
    """Per-dimension multiset of grid intervals for dimensions 0..d_up."""

    d_up: int
    denominator: int
    t_end_numer: int
    intervals: tuple[PersistenceInterval, ...]

    def by_dim(self, k: int) -> tuple[PersistenceInterval, ...]:
        return tuple(iv for iv in self.intervals if iv.dim == k)

    def betti(self, grade: float) -> list[int]:
        """Rank of dimension-k homology at the given grade, per k <= d_up,
        read off the interval decomposition: alive means born at or before
        the grade and (essential or dying strictly after it)."""
        g = int(round(grade * self.denominator))
        counts = [0] * (self.d_up + 1)
        for iv in self.intervals:
            if iv.birth_numer <= g and (iv.essential or iv.death_numer > g):
                counts[iv.dim] += 1
        return counts

    def to_json_obj(self) -> list[dict]:
        return [
            {"dim": iv.dim, "birth": iv.birth, "death": iv.death, "essential": iv.essential}
            for iv in self.intervals
        ]


@dataclass(frozen=True)
class MaxLengths:
    """Longest interval length per dimension k = 0..d_up; 0 when empty."""

    lengths: tuple[float, ...]

    def __getitem__(self, k: int) -> float:
        return self.lengths[k]

    def __len__(self) -> int:
        return len(self.lengths)


def pair_reduction(columns: list[int]) -> tuple[dict[int, int], list[int]]:
    """Reduce bit-packed boundary columns left to right.

    columns[j] has bits at the positions of j's facets (all < j).  Returns
    (pairs, creators): pairs maps creator position -> destroyer position;
    creators lists positions whose column reduced to zero.
    """
    red = [0] * len(columns)
    pivot_owner: dict[int, int] = {}
    pairs: dict[int, int] = {}
    creators: list[int] = []
    for j, col in enumerate(columns):
        cur = col
        while cur:
            p = cur.bit_length() - 1
            owner = pivot_owner.get(p)
            if owner is None:
                pivot_owner[p] = j
                pairs[p] = j
                break
            cur ^= red[owner]
        red[j] = cur
        if cur == 0:
            creators.append(j)
    return pairs, creators


def _boundary_columns(F: Filtration) -> tuple[list[int], list[int]]:
    """Bit-packed boundary columns in filtration order plus face sizes.

    Raises if a face is missing or enters after one of its cofaces, which
    is the structural failure mode of an invalid filtration.
    """
    position: dict[int, int] = {}
    columns: list[int] = []
    sizes: list[int] = []
    for j, (g, f) in enumerate(F.entries):
        col = 0
        size = f.bit_count()
        if size > 1:
            for v in _mask_to_verts(f):
                facet = f & ~(1 << (v - 1))
                p = position.get(facet)
                if p is None:
                    raise ValueError(
                        f"structural error: face of {f:b} absent or born after it"
                    )
                col |= 1 << p
        position[f] = j
        columns.append(col)
        sizes.append(size)
    return columns, sizes


def persistence_intervals(F: Filtration, d_up: int) -> PersistenceDiagram:
    """Interval decomposition of the filtration's homology in dimensions
    0..d_up over the two-element field.

    Zero-length intervals are recorded (they witness creator/destroyer
    pairs at equal grades) but contribute nothing to lengths; classes
    surviving to t_end are capped there and flagged essential.
    """
    if d_up < 0:
        raise ValueError("d_up must be >= 0")
    columns, sizes = _boundary_columns(F)
    pairs, creators = pair_reduction(columns)
    grades = [g for g, _ in F.entries]
    intervals = []
    for j in creators:
        k = sizes[j] - 1
        if k > d_up:
            continue
        destroyer = pairs.get(j)
        if destroyer is None:
            intervals.append(
                PersistenceInterval(k, grades[j], F.t_end_numer, F.denominator, True)
            )
        else:
            intervals.append(
                PersistenceInterval(k, grades[j], grades[destroyer], F.denominator)
            )
    intervals.sort(key=lambda iv: (iv.dim, iv.birth_numer, iv.death_numer, not iv.essential))
    return PersistenceDiagram(d_up, F.denominator, F.t_end_numer, tuple(intervals))


def max_lengths(D: PersistenceDiagram) -> MaxLengths:
    """Per-dimension supremum of interval lengths, essential classes
    included at their capped deaths; 0 for dimensions with no interval."""
    best = [0.0] * (D.d_up + 1)
    for iv in D.intervals:
        if iv.length > best[iv.dim]:
            best[iv.dim] = iv.length
    return MaxLengths(tuple(best))


def _f2_rank(rows: list[int]) -> int:
    """Rank of a bitmask-row matrix over the two-element field."""
    rank = 0
    basis: list[int] = []
    for row in rows:
        cur = row
        for b in basis:
            top = 1 << (b.bit_length() - 1)
            if cur & top:
                cur ^= b
        if cur:
            basis.append(cur)
            basis.sort(key=int.bit_length, reverse=True)
            rank += 1
    return rank


def betti_numbers_by_elimination(F: Filtration, grade: float, d_up: int) -> list[int]:
    """Independent rank oracle: Betti numbers of the complex at the given
    grade by Gaussian elimination of each boundary operator.

    beta_k = #k-faces - rank(boundary_k) - rank(boundary_{k+1}).
    """
    cutoff = int(np.floor(grade * F.denominator + 1e-9))
    faces = [f for g, f in F.entries if g <= cutoff]
    by_size: dict[int, list[int]] = {}
    for f in faces:
        by_size.setdefault(f.bit_count(), []).append(f)
    index_by_size = {
        s: {f: i for i, f in enumerate(fs)} for s, fs in by_size.items()
    }

    def boundary_rank(size: int) -> int:
        # columns are size-vertex faces, rows their (size-1)-vertex facets
        if size < 2 or size not in by_size:
            return 0
        idx = index_by_size[size - 1]
        cols = []
        for f in by_size[size]:
            col = 0
            for v in _mask_to_verts(f):
                col |= 1 << idx[f & ~(1 << (v - 1))]
            cols.append(col)
        return _f2_rank(cols)

    betti = []
    for k in range(d_up + 1):
        n_k = len(by_size.get(k + 1, []))
        betti.append(n_k - boundary_rank(k + 1) - boundary_rank(k + 2))
    return betti
