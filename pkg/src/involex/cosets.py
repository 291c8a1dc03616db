"""Coset enumeration over the trivial subgroup (regular representation).

Deduction-driven strategy: define the smallest undefined table entry,
then process deductions to a fixed point by scanning relator rotations
through each new edge.  Coincidences are handled with a union-find that
always keeps the smaller coset number, so surviving cosets stay in
first-definition order and the output is bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CosetOverflow
from .words import Presentation, Word

DEFAULT_MAX_COSETS = 1 << 20
_UNDEF = -1


@dataclass
class CosetTable:
    """Complete coset table: rows[c][column(letter)] is the coset of c * letter."""

    n_generators: int
    rows: list[list[int]]

    @property
    def n_cosets(self) -> int:
        return len(self.rows)

    @staticmethod
    def column(letter: int) -> int:
        return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)

    def step(self, coset: int, letter: int) -> int:
        return self.rows[coset][self.column(letter)]

    def trace(self, coset: int, word: Word) -> int:
        for letter in word.letters:
            coset = self.step(coset, letter)
        return coset

    def is_complete(self) -> bool:
        return all(entry != _UNDEF for row in self.rows for entry in row)


def _rotation_buckets(relators):
    """Unique cyclic rotations of each relator and its inverse, keyed by first letter."""
    seen = set()
    buckets: dict[int, list[tuple[int, ...]]] = {}
    for rel in relators:
        for base in (rel.letters, rel.inverse().letters):
            k = len(base)
            for i in range(k):
                rot = base[i:] + base[:i]
                if rot not in seen:
                    seen.add(rot)
                    buckets.setdefault(rot[0], []).append(rot)
    return buckets


class _Enumerator:
    def __init__(self, presentation: Presentation, max_cosets: int):
        self.ngens = presentation.n_generators
        self.ncols = 2 * self.ngens
        self.relators = [r.reduced() for r in presentation.relators if r.reduced().letters]
        if not self.relators:
            raise ValueError("presentation has no nonempty relators; enumeration would not terminate")
        self.max_cosets = max_cosets
        self.buckets = _rotation_buckets(self.relators)
        self.table: list[list[int]] = [[_UNDEF] * self.ncols]
        self.parent = [0]
        self.n_live = 1
        self.deductions: list[tuple[int, int]] = []
        self.n_events = 0  # table writes + merges, to detect progress

    # -- union-find (representative is always the smallest index) --

    def find(self, c: int) -> int:
        r = c
        while self.parent[r] != r:
            r = self.parent[r]
        while self.parent[c] != r:
            self.parent[c], c = r, self.parent[c]
        return r

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    # -- table updates --

    @staticmethod
    def _letter(col: int) -> int:
        return col // 2 + 1 if col % 2 == 0 else -(col // 2 + 1)

    def _set(self, c: int, letter: int, d: int):
        self.table[c][CosetTable.column(letter)] = d
        self.table[d][CosetTable.column(-letter)] = c
        self.deductions.append((c, letter))
        self.deductions.append((d, -letter))
        self.n_events += 1

    def _new_coset(self, c: int, letter: int) -> int:
        if self.n_live + 1 > self.max_cosets:
            raise CosetOverflow(self.max_cosets)
        d = len(self.table)
        self.table.append([_UNDEF] * self.ncols)
        self.parent.append(d)
        self.n_live += 1
        self._set(c, letter, d)
        return d

    def _merge(self, a: int, b: int, queue: list[int]):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = (a, b) if a < b else (b, a)
        self.parent[hi] = lo
        self.n_live -= 1
        self.n_events += 1
        queue.append(hi)

    def _coincide(self, a: int, b: int):
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            row = self.table[gamma]
            for col in range(self.ncols):
                delta = row[col]
                if delta == _UNDEF:
                    continue
                row[col] = _UNDEF
                self.table[delta][col ^ 1] = _UNDEF
                mu, nu = self.find(gamma), self.find(delta)
                mu_entry = self.table[mu][col]
                if mu_entry != _UNDEF:
                    self._merge(nu, mu_entry, queue)
                    continue
                nu_entry = self.table[nu][col ^ 1]
                if nu_entry != _UNDEF:
                    self._merge(mu, nu_entry, queue)
                    continue
                self.table[mu][col] = nu
                self.table[nu][col ^ 1] = mu
                self.n_events += 1
                self.deductions.append((mu, self._letter(col)))
                self.deductions.append((nu, -self._letter(col)))

    # -- relator scanning --

    def _scan(self, c: int, word: tuple[int, ...]):
        """Scan one relator word at coset c, deducing or coinciding as forced."""
        table = self.table
        col = CosetTable.column
        k = len(word)
        f, i = c, 0
        while i < k:
            d = table[f][col(word[i])]
            if d == _UNDEF:
                break
            f = d
            i += 1
        else:
            if f != c:
                self._coincide(f, c)
            return
        b, j = c, k - 1
        while j >= i:
            d = table[b][col(-word[j])]
            if d == _UNDEF:
                break
            b = d
            j -= 1
        if j < i:
            # both scans met across the gap edge: endpoints are forced equal
            self._coincide(f, b)
        elif j == i:
            self._set(f, word[i], b)

    def _process_deductions(self):
        while self.deductions:
            c, letter = self.deductions.pop()
            for rot in self.buckets.get(letter, ()):
                c = self.find(c)
                self._scan(c, rot)

    def _full_scan(self) -> bool:
        """Scan every relator at every live coset; True if anything changed."""
        before = self.n_events
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for rel in self.relators:
                self._scan(self.find(c), rel.letters)
                self._process_deductions()
        return self.n_events != before

    def _find_hole(self, start: int) -> tuple[int, int] | None:
        pos = start
        end = len(self.table) * self.ncols
        while pos < end:
            c, col = divmod(pos, self.ncols)
            if self.is_live(c) and self.table[c][col] == _UNDEF:
                return c, col
            pos += 1
        return None

    def run(self) -> CosetTable:
        for rel in self.relators:
            self._scan(0, rel.letters)
        self._process_deductions()
        cursor = 0
        while True:
            hole = self._find_hole(cursor)
            if hole is None and cursor:
                hole = self._find_hole(0)  # re-check entries freed by coincidences
            if hole is None:
                if self._full_scan():
                    cursor = 0
                    continue
                break
            c, col = hole
            cursor = c * self.ncols + col
            self._new_coset(c, self._letter(col))
            self._process_deductions()
        return self._compact()

    def _compact(self) -> CosetTable:
        live = [c for c in range(len(self.table)) if self.is_live(c)]
        renumber = {c: i for i, c in enumerate(live)}
        rows = [[renumber[self.find(entry)] for entry in self.table[c]] for c in live]
        return CosetTable(self.ngens, rows)


def enumerate_cosets(presentation: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup.

    On success the number of cosets equals the group order and each
    generator acts on cosets as a permutation (the regular representation).
    Raises CosetOverflow if more than max_cosets cosets stay live at once.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    table = _Enumerator(presentation, max_cosets).run()
    # paranoia: every relator must fix every coset of the finished table
    for rel in presentation.relators:
        rel = rel.reduced()
        if not rel.letters:
            continue
        for c in range(table.n_cosets):
            if table.trace(c, rel) != c:
                raise AssertionError("internal error: incomplete relator closure")
    return table


def regular_generators(table: CosetTable) -> list[np.ndarray]:
    """One permutation of {0..n_cosets-1} per generator, acting by right multiplication."""
    if not table.is_complete():
        raise ValueError("coset table is incomplete")
    n = table.n_cosets
    perms = []
    for g in range(table.n_generators):
        col = CosetTable.column(g + 1)
        perm = np.array([table.rows[c][col] for c in range(n)], dtype=np.int32)
        if len(np.unique(perm)) != n:
            raise ValueError("coset table column is not a permutation")
        perms.append(perm)
    return perms
