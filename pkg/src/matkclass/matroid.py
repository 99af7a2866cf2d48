"""Matroids on the ground set {1..n}, stored as sets of basis bitmasks.

Element ``j`` (1-based) is bit ``j - 1``.  Public methods take and return
1-based element sets; bitmask helpers are available for hot loops.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import EmptyBases, ExchangeAxiomViolation, InputError, NotABasis, RankDeficient


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def _check_permutation(word: Sequence[int], n: int) -> tuple[int, ...]:
    word = tuple(int(x) for x in word)
    if sorted(word) != list(range(1, n + 1)):
        raise InputError(f"{word} is not a permutation of 1..{n}")
    return word


class Matroid:
    """Immutable matroid given by its bases (validated at construction)."""

    __slots__ = ("n", "r", "_bases", "__dict__")

    def __init__(self, n: int, r: int, basis_masks: Iterable[int], *, validate: bool = True):
        self.n = int(n)
        self.r = int(r)
        self._bases = frozenset(basis_masks)
        if validate:
            self._validate()

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_bases(cls, n: int, r: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        if n < 0 or r < 0 or r > n:
            raise InputError(f"need 0 <= r <= n, got r={r}, n={n}")
        masks = set()
        for b in bases:
            b = tuple(b)
            if len(set(b)) != len(b) or len(b) != r:
                raise InputError(f"basis {b} does not have {r} distinct elements")
            if any(not 1 <= e <= n for e in b):
                raise InputError(f"basis {b} is not a subset of 1..{n}")
            masks.add(to_mask(b))
        return cls(n, r, masks)

    @classmethod
    def from_matrix(cls, entries: Sequence[Sequence[object]], r: int | None = None) -> "Matroid":
        """Column matroid of an exact rational matrix with ``r`` rows (default: all rows)."""
        rows = [[Fraction(x) for x in row] for row in entries]
        if not rows or not rows[0]:
            raise InputError("empty matrix")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise InputError("ragged matrix")
        r = len(rows) if r is None else int(r)
        actual = matrix_rank(rows)
        if actual != r or len(rows) < r:
            raise RankDeficient(actual, r)
        masks = set()
        # work with a row basis of r rows so every r-subset minor is a plain determinant
        basis_rows = _row_basis(rows)
        for cols in combinations(range(n), r):
            if _det([[row[c] for c in cols] for row in basis_rows]) != 0:
                masks.add(to_mask(c + 1 for c in cols))
        return cls(n, r, masks, validate=False)

    def _validate(self) -> None:
        if not self._bases:
            raise EmptyBases("a matroid needs at least one basis")
        full = (1 << self.n) - 1
        for b in self._bases:
            if b & ~full or b.bit_count() != self.r:
                raise InputError(f"basis {from_mask(b)} is not an {self.r}-subset of 1..{self.n}")
        for b1 in self._bases:
            for b2 in self._bases:
                diff = b1 & ~b2
                while diff:
                    x = diff & -diff
                    diff ^= x
                    rest = b1 ^ x
                    cand = b2 & ~b1
                    ok = False
                    while cand:
                        y = cand & -cand
                        cand ^= y
                        if rest | y in self._bases:
                            ok = True
                            break
                    if not ok:
                        raise ExchangeAxiomViolation(
                            f"exchange fails for B1={set(from_mask(b1))}, B2={set(from_mask(b2))}, "
                            f"x={from_mask(x)[0]}",
                            witness=(from_mask(b1), from_mask(b2), from_mask(x)[0]))

    # -- basic data ------------------------------------------------------------

    @property
    def basis_masks(self) -> frozenset[int]:
        return self._bases

    @cached_property
    def sorted_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self._bases, key=from_mask))

    @property
    def bases(self) -> list[tuple[int, ...]]:
        return [from_mask(b) for b in self.sorted_masks]

    def is_basis(self, subset: Iterable[int]) -> bool:
        return to_mask(subset) in self._bases

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.n, self.r, self._bases) == (other.n, other.r, other._bases)

    def __hash__(self):
        return hash((self.n, self.r, self._bases))

    def __repr__(self) -> str:
        body = ",".join("".join(map(str, b)) if self.n < 10 else str(b) for b in self.bases)
        return f"Matroid(n={self.n}, r={self.r}, bases={{{body}}})"

    # -- rank ----------------------------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        best = 0
        for b in self._bases:
            k = (b & mask).bit_count()
            if k > best:
                best = k
                if best == self.r:
                    break
        return best

    def rank(self, subset: Iterable[int]) -> int:
        return self.rank_mask(to_mask(subset))

    @cached_property
    def loops(self) -> tuple[int, ...]:
        union = 0
        for b in self._bases:
            union |= b
        return tuple(j for j in range(1, self.n + 1) if not union >> (j - 1) & 1)

    @property
    def is_loopless(self) -> bool:
        return not self.loops

    # -- lexicographically first bases -----------------------------------------------------

    def lex_first_basis_mask(self, word: Sequence[int]) -> int:
        # greedy: keep w_i iff some basis contains the kept set plus w_i
        kept = 0
        candidates = list(self._bases)
        for e in word:
            bit = 1 << (e - 1)
            narrowed = [b for b in candidates if b & bit]
            if narrowed:
                kept |= bit
                candidates = narrowed
                if kept.bit_count() == self.r:
                    break
        return kept

    def lex_first_basis(self, word: Sequence[int]) -> tuple[int, ...]:
        """The greedy basis along the permutation ``word`` (1-based)."""
        word = _check_permutation(word, self.n)
        return from_mask(self.lex_first_basis_mask(word))

    def is_lex_first_by_rank(self, basis: Iterable[int], word: Sequence[int]) -> bool:
        """Rank test: ``basis`` is B(word) iff every prefix P has rk(P) = |basis & P|."""
        bmask = to_mask(basis)
        if bmask not in self._bases:
            return False
        prefix = 0
        for e in word:
            prefix |= 1 << (e - 1)
            if self.rank_mask(prefix) != (bmask & prefix).bit_count():
                return False
        return True

    # -- connectivity ------------------------------------------------------------

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        full = (1 << self.n) - 1
        separators = [s for s in range(full + 1)
                      if self.rank_mask(s) + self.rank_mask(full ^ s) == self.r]
        # i and j share a component iff no separator splits them
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(self.n):
            for j in range(i + 1, self.n):
                if all(((s >> i) & 1) == ((s >> j) & 1) for s in separators):
                    parent[find(j)] = find(i)
        groups: dict[int, list[int]] = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i + 1)
        return tuple(sorted(tuple(g) for g in groups.values()))

    def connected_components(self) -> tuple[tuple[int, ...], ...]:
        return self.components

    @property
    def num_components(self) -> int:
        return len(self.components)

    @property
    def codimension(self) -> int:
        return self.r * (self.n - self.r) - (self.n - self.num_components)

    # -- derived matroids ------------------------------------------------------------

    def relabel(self, sigma: Sequence[int] | dict[int, int]) -> "Matroid":
        """Image under the ground-set bijection ``j -> sigma(j)``.

        A sequence is read as ``(sigma(1), ..., sigma(n))``.
        """
        if not isinstance(sigma, dict):
            sigma = dict(zip(range(1, self.n + 1), sigma))
        if sorted(sigma.values()) != list(range(1, self.n + 1)) or len(sigma) != self.n:
            raise InputError("relabelling must be a permutation of the ground set")
        return Matroid(self.n, self.r,
                       {to_mask(sigma[e] for e in from_mask(b)) for b in self._bases},
                       validate=False)


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise InputError(f"U_{{{r},{n}}} needs 0 <= r <= n")
    return Matroid(n, r, {to_mask(c) for c in combinations(range(1, n + 1), r)}, validate=False)


def schubert_matroid(r: int, n: int, defining: Iterable[int]) -> Matroid:
    """Bases are the r-sets J with j_k <= i_k for all k (both sorted), I the defining set."""
    top = tuple(sorted(defining))
    if len(top) != r or len(set(top)) != r or any(not 1 <= e <= n for e in top):
        raise InputError(f"defining set must be an {r}-subset of 1..{n}")
    masks = {to_mask(c) for c in combinations(range(1, n + 1), r)
             if all(a <= b for a, b in zip(c, top))}
    return Matroid(n, r, masks, validate=False)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    masks = {b1 | (b2 << m1.n) for b1 in m1.basis_masks for b2 in m2.basis_masks}
    return Matroid(m1.n + m2.n, m1.r + m2.r, masks, validate=False)


def all_permutations(n: int):
    return permutations(range(1, n + 1))


# -- exact linear algebra over Q -----------------------------------------------------------

def _echelon(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    a = [list(r) for r in rows]
    out = []
    col = 0
    ncols = len(a[0]) if a else 0
    while a and col < ncols:
        piv = next((i for i, row in enumerate(a) if row[col] != 0), None)
        if piv is None:
            col += 1
            continue
        prow = a.pop(piv)
        for row in a:
            if row[col] != 0:
                f = row[col] / prow[col]
                for k in range(col, ncols):
                    row[k] -= f * prow[k]
        out.append(prow)
        col += 1
    return out


def matrix_rank(rows: Sequence[Sequence[object]]) -> int:
    if not rows:
        return 0
    return len(_echelon([[Fraction(x) for x in row] for row in rows]))


def _row_basis(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    return _echelon(rows)


def _det(m: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in m]
    size = len(a)
    det = Fraction(1)
    for c in range(size):
        piv = next((i for i in range(c, size) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, size):
            f = a[i][c] / a[c][c]
            if f:
                for k in range(c, size):
                    a[i][k] -= f * a[c][k]
    return det


def require_basis(m: Matroid, basis: Iterable[int]) -> int:
    mask = to_mask(basis)
    if mask not in m.basis_masks:
        raise NotABasis(f"{tuple(sorted(basis))} is not a basis of {m!r}")
    return mask
