"""Explicit finite groups: table arithmetic, subgroups, quotients, structure.

A ConcreteGroup is a full n-by-n product table on element indices with the
identity at index 0.  Subgroups are bitsets over element indices.  All
element numbering is deterministic (breadth-first closure over the
distinguished generators in declaration order), so results reproduce
bit-for-bit across runs.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .cosets import DEFAULT_MAX_COSETS, enumerate_cosets, regular_generators
from .errors import NonRegularAction, SizeLimitExceeded, StructureError
from .words import Presentation, Word, format_word

MAX_CLOSURE = 1 << 12


class ConcreteGroup:
    """Finite group on indices {0..order-1}; identity is index 0."""

    def __init__(self, table: np.ndarray, generators: Sequence[int], gen_names=None):
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("product table must be square")
        idx = np.arange(n, dtype=np.int32)
        if not (np.array_equal(table[0], idx) and np.array_equal(table[:, 0], idx)):
            raise ValueError("index 0 must be a two-sided identity")
        rows, cols = np.nonzero(table == 0)
        if len(rows) != n or not np.array_equal(rows, idx):
            raise ValueError("every element needs a unique right inverse")
        self.table = table
        self.order = n
        self.inv = cols.astype(np.int32)
        self.generators = tuple(int(g) for g in generators)
        if any(g < 0 or g >= n for g in self.generators):
            raise ValueError("generator index out of range")
        if gen_names is not None and len(gen_names) != len(self.generators):
            raise ValueError("one name per generator expected")
        self.gen_names = tuple(gen_names) if gen_names is not None else tuple(
            f"g{i + 1}" for i in range(len(self.generators))
        )
        self._run_bfs()

    @property
    def identity(self) -> int:
        return 0

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc = 0
        while k:
            if k & 1:
                acc = int(self.table[acc, x])
            x = int(self.table[x, x])
            k >>= 1
        return acc

    def conjugate(self, x: int, y: int) -> int:
        """y * x * y^-1."""
        return int(self.table[self.table[y, x], self.inv[y]])

    def _run_bfs(self):
        """Breadth-first closure over the generators; records one parent edge per element."""
        n = self.order
        parent_elem = np.full(n, -1, dtype=np.int32)
        parent_gen = np.full(n, -1, dtype=np.int32)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        bfs_order = [0]
        head = 0
        while head < len(bfs_order):
            x = bfs_order[head]
            head += 1
            for gi, g in enumerate(self.generators):
                y = int(self.table[x, g])
                if not seen[y]:
                    seen[y] = True
                    parent_elem[y] = x
                    parent_gen[y] = gi
                    bfs_order.append(y)
        if not seen.all():
            raise ValueError("distinguished generators do not generate the group")
        self.bfs_order = np.array(bfs_order, dtype=np.int32)
        self.parent_elem = parent_elem
        self.parent_gen = parent_gen

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        base = np.arange(n, dtype=np.int32)
        cur = base.copy()
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        k = 1
        while (orders == 0).any():
            cur = self.table[cur, base]
            k += 1
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if k > n:
                raise AssertionError("internal error: element order exceeds group order")
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def _rows(self) -> list[list[int]]:
        # plain nested lists are much faster than numpy for scalar-heavy loops
        return self.table.tolist()

    def word_for(self, x: int) -> Word:
        """A positive word in the generators reaching element x (via BFS parents)."""
        letters: list[int] = []
        while x != 0:
            letters.append(int(self.parent_gen[x]) + 1)
            x = int(self.parent_elem[x])
        return Word(tuple(reversed(letters)))

    def describe_element(self, x: int) -> str:
        return format_word(self.word_for(x), self.gen_names)

    def check_associativity(self, sample: int | None = None, seed: int = 0) -> bool:
        """Exhaustive associativity check, or a random sample of triples if given."""
        t = self.table
        if sample is None:
            left = t[t]  # (x,y,z) -> (x*y)*z
            right = t[:, t]  # (x,y,z) -> x*(y*z)
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(seed)
        xs, ys, zs = rng.integers(0, self.order, size=(3, sample))
        return bool(np.array_equal(t[t[xs, ys], zs], t[xs, t[ys, zs]]))

    def __repr__(self) -> str:
        return f"ConcreteGroup(order={self.order}, generators={self.generators})"


class Subgroup:
    """A subgroup as a bitset of element indices over an ambient group order."""

    __slots__ = ("ambient_order", "mask", "generator_witness")

    def __init__(self, ambient_order: int, mask: int, generator_witness=None):
        self.ambient_order = ambient_order
        self.mask = mask
        self.generator_witness = tuple(generator_witness) if generator_witness else None

    @classmethod
    def from_indices(cls, ambient_order: int, indices: Iterable[int], generator_witness=None):
        mask = 0
        for i in indices:
            mask |= 1 << int(i)
        return cls(ambient_order, mask, generator_witness)

    def indices(self) -> np.ndarray:
        bits = np.frombuffer(
            self.mask.to_bytes((self.ambient_order + 7) // 8, "little"), dtype=np.uint8
        )
        return np.flatnonzero(np.unpackbits(bits, bitorder="little")[: self.ambient_order]).astype(
            np.int32
        )

    def member_array(self) -> np.ndarray:
        out = np.zeros(self.ambient_order, dtype=bool)
        out[self.indices()] = True
        return out

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> int(i)) & 1)

    def __iter__(self):
        return iter(int(i) for i in self.indices())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.ambient_order == other.ambient_order
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.ambient_order, self.mask))

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.ambient_order, self.mask & other.mask)

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self)} of {self.ambient_order})"


# --- constructors -----------------------------------------------------------


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Permutation product 'p then q' (matches left-to-right word application)."""
    return q[p]


def from_permutations(perms, n_points: int | None = None, gen_names=None) -> ConcreteGroup:
    """Build the abstract group generated by permutations acting regularly.

    Elements are numbered by breadth-first closure (identity first).  The
    action must be regular: only the identity may fix a point, and the
    closure size must equal the number of points.
    """
    perms = [np.asarray(p, dtype=np.int32) for p in perms]
    if perms:
        n = len(perms[0])
    else:
        n = 1 if n_points is None else int(n_points)
    base = np.arange(n, dtype=np.int32)
    for p in perms:
        if len(p) != n or not np.array_equal(np.sort(p), base):
            raise ValueError("generators must be permutations of the same point set")
    elements = [base]
    index_of = {base.tobytes(): 0}
    gen_index = []
    head = 0
    while head < len(elements):
        x = elements[head]
        head += 1
        for p in perms:
            y = compose(x, p)
            key = y.tobytes()
            if key not in index_of:
                if len(elements) >= MAX_CLOSURE:
                    raise SizeLimitExceeded(f"closure exceeds {MAX_CLOSURE} elements")
                index_of[key] = len(elements)
                elements.append(y)
    gen_index = [index_of[p.tobytes()] for p in perms]
    if len(elements) != n:
        raise NonRegularAction(
            f"closure has {len(elements)} elements on {n} points; regular action required"
        )
    stack = np.stack(elements)
    if ((stack[1:] == base).any(axis=1)).any():
        raise NonRegularAction("a non-identity element fixes a point")
    # regularity makes an element recoverable from the image of point 0,
    # which turns the stack of permutations into the product table
    point_to_index = np.empty(n, dtype=np.int32)
    point_to_index[stack[:, 0]] = base
    base_image = stack[:, 0]
    table = np.empty((n, n), dtype=np.int32)
    for y in range(n):
        table[:, y] = point_to_index[stack[y][base_image]]
    return ConcreteGroup(table, gen_index, gen_names)


def from_table(table, generators=None, gen_names=None) -> ConcreteGroup:
    """Wrap a raw product table; generators default to a greedy generating set."""
    table = np.ascontiguousarray(table, dtype=np.int32)
    if generators is None:
        generators = _greedy_generators(table)
    return ConcreteGroup(table, generators, gen_names)


def _greedy_generators(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    gens: list[int] = []
    have = _close_indices(table, [])
    while int(have.sum()) < n:
        outside = np.flatnonzero(~have)
        gens.append(int(outside[0]))
        have = _close_indices(table, gens)
    return gens


def _close_indices(table: np.ndarray, seed) -> np.ndarray:
    """Boolean membership array of the subgroup generated by seed indices."""
    n = table.shape[0]
    members = np.zeros(n, dtype=bool)
    members[0] = True
    seed = np.unique(np.asarray(sorted(set(int(s) for s in seed)), dtype=np.int32))
    if seed.size == 0:
        return members
    frontier = np.array([0], dtype=np.int32)
    while frontier.size:
        products = table[np.ix_(frontier, seed)].ravel()
        products = np.unique(products)
        new = products[~members[products]]
        members[new] = True
        frontier = new
    return members


def realize(presentation: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> ConcreteGroup:
    """Concretize a finite presentation via coset enumeration."""
    table = enumerate_cosets(presentation, max_cosets)
    perms = regular_generators(table)
    return from_permutations(perms, n_points=table.n_cosets, gen_names=presentation.generator_names)


# --- subgroup machinery ------------------------------------------------------


def closure(group: ConcreteGroup, seed) -> Subgroup:
    """Smallest subgroup containing the seed indices."""
    seed = sorted(set(int(s) for s in seed))
    members = _close_indices(group.table, seed)
    return Subgroup.from_indices(group.order, np.flatnonzero(members), generator_witness=seed)


def involutions(group: ConcreteGroup) -> frozenset[int]:
    """Indices of elements of order exactly 2."""
    diag = group.table.diagonal()
    return frozenset(int(i) for i in np.flatnonzero((diag == 0) & (np.arange(group.order) != 0)))


def involution_generated_subgroup(group: ConcreteGroup) -> Subgroup:
    return closure(group, involutions(group))


def derived_subgroup(group: ConcreteGroup) -> Subgroup:
    """Closure of all commutators x^-1 y^-1 x y."""
    t = group.table
    inv = group.inv
    comms = t[t[np.ix_(inv, inv)], t]
    return closure(group, np.unique(comms))


def center(group: ConcreteGroup) -> Subgroup:
    """Elements commuting with every distinguished generator."""
    mask = np.ones(group.order, dtype=bool)
    for g in group.generators:
        mask &= group.table[:, g] == group.table[g, :]
    return Subgroup.from_indices(group.order, np.flatnonzero(mask))


def is_two_group(group: ConcreteGroup) -> bool:
    n = group.order
    return n >= 1 and (n & (n - 1)) == 0


def frattini_subgroup(group: ConcreteGroup) -> Subgroup:
    """For a 2-group: the closure of all squares and commutators."""
    if not is_two_group(group):
        raise StructureError("Frattini computation implemented for 2-groups only")
    t = group.table
    squares = np.unique(t.diagonal())
    comms = np.unique(t[t[np.ix_(group.inv, group.inv)], t])
    return closure(group, np.concatenate([squares, comms]))


def maximal_subgroups(group: ConcreteGroup) -> list[Subgroup]:
    """All index-2 subgroups, via hyperplanes of the elementary abelian quotient."""
    if not is_two_group(group):
        raise StructureError("maximal subgroup computation implemented for 2-groups only")
    phi = frattini_subgroup(group)
    quot, proj = quotient(group, phi)
    r = int(quot.order - 1).bit_length()
    if quot.order != 1 << r:
        raise AssertionError("internal error: Frattini quotient is not elementary abelian")
    if r == 0:
        return []
    # assign GF(2)^r coordinates to quotient elements by spanning over a basis
    basis: list[int] = []
    coords = {0: 0}
    for x in range(1, quot.order):
        if x in coords:
            continue
        vec = 1 << len(basis)
        basis.append(x)
        for y, v in list(coords.items()):
            coords[quot.mul(y, x)] = v | vec
    coord_arr = np.array([coords[i] for i in range(quot.order)], dtype=np.int64)
    elem_coords = coord_arr[proj]
    parity_lut = np.array([v.bit_count() & 1 for v in range(1 << r)], dtype=np.int8)
    out = []
    for chi in range(1, 1 << r):
        parity = parity_lut[elem_coords & chi]
        out.append(Subgroup.from_indices(group.order, np.flatnonzero(parity == 0)))
    return out


def is_normal(group: ConcreteGroup, sub: Subgroup) -> bool:
    idx = sub.indices()
    for g in group.generators:
        conj = group.table[group.table[g, idx], group.inv[g]]
        if not np.array_equal(np.sort(conj), idx):
            return False
    return True


def quotient(group: ConcreteGroup, normal: Subgroup) -> tuple[ConcreteGroup, np.ndarray]:
    """Quotient group and the projection index map; the coset of N is index 0."""
    if not is_normal(group, normal):
        raise StructureError("subgroup is not normal")
    n = group.order
    idx = normal.indices()
    proj = np.full(n, -1, dtype=np.int32)
    reps = []
    for x in range(n):
        if proj[x] >= 0:
            continue
        proj[group.table[x, idx]] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.int32)
    qtable = proj[group.table[np.ix_(reps, reps)]]
    if not np.array_equal(proj[group.table], qtable[np.ix_(proj, proj)]):
        raise AssertionError("internal error: projection is not a homomorphism")
    gens, names = [], []
    for g, name in zip(group.generators, group.gen_names):
        img = int(proj[g])
        if img != 0 and img not in gens:
            gens.append(img)
            names.append(name)
    quot = ConcreteGroup(qtable, gens, names if gens else None)
    return quot, proj


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _int_log(x: int, p: int) -> int:
    e = 0
    while x > 1:
        x //= p
        e += 1
    return e


def abelian_invariants(group: ConcreteGroup) -> tuple[int, ...]:
    """Elementary divisors of a finite abelian group, as a sorted tuple of prime powers.

    Each p-component's type is read off the filtration sizes
    |{x : x^(p^k) = e}|, which determine the partition uniquely.
    """
    if not group.is_abelian:
        raise StructureError("abelian invariants require an abelian group")
    orders = group.element_orders
    parts: list[int] = []
    for p in _prime_factors(group.order):
        s = [0]  # s[k] = log_p #{x : ord(x) divides p^k}
        while True:
            count = int(np.count_nonzero(p ** len(s) % orders == 0))
            level = _int_log(count, p)
            if level == s[-1]:
                break
            s.append(level)
        d = [s[k] - s[k - 1] for k in range(1, len(s))]  # d[k-1] = #parts >= k
        for k in range(1, len(d) + 1):
            mult = d[k - 1] - (d[k] if k < len(d) else 0)
            parts.extend([p**k] * mult)
    return tuple(sorted(parts))


def omega(group: ConcreteGroup) -> Subgroup:
    """Elements of order dividing 2 of an abelian group (a subgroup by commutativity)."""
    if not group.is_abelian:
        raise StructureError("omega subgroup is defined here for abelian groups only")
    return Subgroup.from_indices(group.order, np.flatnonzero(group.table.diagonal() == 0))


def subgroup_group(group: ConcreteGroup, sub: Subgroup) -> ConcreteGroup:
    """The subgroup as a standalone ConcreteGroup (elements kept in index order)."""
    idx = sub.indices()
    if idx.size == 0 or idx[0] != 0:
        raise StructureError("subgroup must contain the identity")
    reindex = np.full(group.order, -1, dtype=np.int32)
    reindex[idx] = np.arange(idx.size, dtype=np.int32)
    block = reindex[group.table[np.ix_(idx, idx)]]
    if (block < 0).any():
        raise StructureError("index set is not closed under multiplication")
    return from_table(block)


def inverted_set(group: ConcreteGroup, alpha) -> frozenset[int]:
    """Elements x of an abelian group with alpha(x) = x^-1.

    Requires alpha to be an automorphism with alpha composed with itself
    equal to the identity; the result is then closed under multiplication,
    which is re-checked before returning.
    """
    if not group.is_abelian:
        raise StructureError("inverted set is defined for abelian groups only")
    phi = np.asarray(alpha.images, dtype=np.int32)
    if alpha.source is not group or alpha.target is not group:
        raise StructureError("alpha must be an automorphism of the given group")
    if not np.array_equal(np.sort(phi), np.arange(group.order)):
        raise StructureError("alpha is not bijective")
    if not np.array_equal(phi[phi], np.arange(group.order)):
        raise StructureError("alpha must square to the identity")
    fixed = np.flatnonzero(phi == group.inv)
    closed = np.isin(group.table[np.ix_(fixed, fixed)], fixed).all()
    if not closed:
        raise AssertionError("internal error: inverted set failed subgroup closure")
    return frozenset(int(i) for i in fixed)
