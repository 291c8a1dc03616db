"""Homomorphisms as total index maps; automorphism and isomorphism search.

A map is determined by generator images: it extends along the source
group's BFS parent edges, and the extension is a homomorphism exactly
when phi(x * g) = phi(x) * phi(g) holds for every element x and every
distinguished generator g (products of generators then follow by
induction).  Searches backtrack over generator-image tuples, pruned by
element order and by partial subgroup size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import SizeLimitExceeded
from .groups import ConcreteGroup, Subgroup, _close_indices, center, derived_subgroup

MAX_SEARCH_ORDER = 1 << 10
MAX_SEARCH_GENERATORS = 4


class GroupMap:
    """A homomorphism between concrete groups as a total index map."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: ConcreteGroup, target: ConcreteGroup, images, *, validate: bool = True):
        self.source = source
        self.target = target
        self.images = np.ascontiguousarray(images, dtype=np.int32)
        if validate:
            if len(self.images) != source.order:
                raise ValueError("one image per source element required")
            if self.images[0] != 0:
                raise ValueError("identity must map to identity")
            if not _is_hom(source, target, self.images):
                raise ValueError("images do not satisfy the homomorphism law")

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    @property
    def generator_images(self) -> tuple[int, ...]:
        return tuple(int(self.images[g]) for g in self.source.generators)

    @property
    def is_bijective(self) -> bool:
        return len(np.unique(self.images)) == self.source.order == self.target.order

    def then(self, other: "GroupMap") -> "GroupMap":
        """Composite map x -> other(self(x))."""
        if other.source is not self.target:
            raise ValueError("maps do not compose")
        return GroupMap(self.source, other.target, other.images[self.images], validate=False)

    def inverse(self) -> "GroupMap":
        if not self.is_bijective:
            raise ValueError("only bijective maps invert")
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self.images), dtype=np.int32)
        return GroupMap(self.target, self.source, inv, validate=False)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupMap)
            and self.source is other.source
            and self.target is other.target
            and np.array_equal(self.images, other.images)
        )

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.images.tobytes()))

    def __repr__(self) -> str:
        gens = ", ".join(
            f"{name} -> {self.target.describe_element(img)}"
            for name, img in zip(self.source.gen_names, self.generator_images)
        )
        return f"GroupMap({gens})"


def identity_map(group: ConcreteGroup) -> GroupMap:
    return GroupMap(group, group, np.arange(group.order, dtype=np.int32), validate=False)


def _extend_images(source: ConcreteGroup, target: ConcreteGroup, gen_images) -> np.ndarray:
    """Propagate generator images along BFS parent edges (no validity check)."""
    phi = np.zeros(source.order, dtype=np.int32)
    trows = target._rows
    parent_elem = source.parent_elem
    parent_gen = source.parent_gen
    for x in source.bfs_order[1:]:
        phi[x] = trows[phi[parent_elem[x]]][gen_images[parent_gen[x]]]
    return phi


def _is_hom(source: ConcreteGroup, target: ConcreteGroup, phi: np.ndarray) -> bool:
    """Check phi(x*g) = phi(x)*phi(g) for all x and distinguished generators g."""
    for g in source.generators:
        if not np.array_equal(phi[source.table[:, g]], target.table[phi, phi[g]]):
            return False
    return True


def hom_from_generator_images(
    source: ConcreteGroup, target: ConcreteGroup, images: Sequence[int]
) -> Optional[GroupMap]:
    """Extend generator images to a homomorphism, or None if no extension exists."""
    if len(images) != len(source.generators):
        raise ValueError("one image per distinguished generator required")
    images = [int(i) for i in images]
    phi = _extend_images(source, target, images)
    if not _is_hom(source, target, phi):
        return None
    return GroupMap(source, target, phi, validate=False)


def _search_tuples(source: ConcreteGroup, target: ConcreteGroup, bijective: bool) -> Iterator[GroupMap]:
    """Backtracking search for isomorphic-type maps, in deterministic order.

    Candidates are filtered by element order; partial tuples are pruned
    when the subgroup generated by the images has the wrong size (valid
    because the maps sought are bijective).
    """
    gens = source.generators
    k = len(gens)
    if k == 0:
        if not bijective or target.order == 1:
            yield GroupMap(source, target, np.zeros(source.order, dtype=np.int32), validate=False)
        return
    src_orders = source.element_orders
    tgt_orders = target.element_orders
    candidate_lists = [np.flatnonzero(tgt_orders == src_orders[g]) for g in gens]
    prefix_sizes = [int(_close_indices(source.table, gens[: i + 1]).sum()) for i in range(k)]
    chosen: list[int] = []

    def descend(level: int) -> Iterator[GroupMap]:
        for img in candidate_lists[level]:
            chosen.append(int(img))
            if int(_close_indices(target.table, chosen).sum()) == prefix_sizes[level]:
                if level + 1 == k:
                    phi = _extend_images(source, target, chosen)
                    if _is_hom(source, target, phi) and len(np.unique(phi)) == source.order:
                        yield GroupMap(source, target, phi, validate=False)
                else:
                    yield from descend(level + 1)
            chosen.pop()

    yield from descend(0)


def automorphism_stream(group: ConcreteGroup) -> Iterator[GroupMap]:
    """All automorphisms, lazily, in the same order enumerate_automorphisms uses."""
    return _search_tuples(group, group, bijective=True)


def enumerate_automorphisms(group: ConcreteGroup) -> list[GroupMap]:
    """The full automorphism list, deterministically ordered."""
    if group.order > MAX_SEARCH_ORDER:
        raise SizeLimitExceeded(f"automorphism search supports order <= {MAX_SEARCH_ORDER}")
    if len(group.generators) > MAX_SEARCH_GENERATORS:
        raise SizeLimitExceeded(
            f"automorphism search supports at most {MAX_SEARCH_GENERATORS} generators"
        )
    return list(automorphism_stream(group))


@dataclass(frozen=True)
class Fingerprint:
    """Cheap isomorphism invariants; equal fingerprints are necessary, not sufficient."""

    order: int
    order_histogram: tuple[tuple[int, int], ...]
    abelian: bool
    derived_order: int
    center_order: int
    frattini_rank: int
    square_image_size: int


def fingerprint(group: ConcreteGroup) -> Fingerprint:
    orders, counts = np.unique(group.element_orders, return_counts=True)
    histogram = tuple((int(o), int(c)) for o, c in zip(orders, counts))
    squares = np.unique(group.table.diagonal())
    n_squares = len(squares)
    t = group.table
    comms = np.unique(t[t[np.ix_(group.inv, group.inv)], t])
    sq_comm = _close_indices(t, np.concatenate([squares, comms]))
    rank = (group.order // int(sq_comm.sum()) - 1).bit_length()
    return Fingerprint(
        order=group.order,
        order_histogram=histogram,
        abelian=group.is_abelian,
        derived_order=len(derived_subgroup(group)),
        center_order=len(center(group)),
        frattini_rank=rank,
        square_image_size=n_squares,
    )


def are_isomorphic(g: ConcreteGroup, h: ConcreteGroup) -> Optional[GroupMap]:
    """A witness isomorphism, or None after fingerprint screen and search."""
    if max(g.order, h.order) > MAX_SEARCH_ORDER:
        raise SizeLimitExceeded(f"isomorphism search supports order <= {MAX_SEARCH_ORDER}")
    if g.order != h.order:
        return None
    if fingerprint(g) != fingerprint(h):
        return None
    for witness in _search_tuples(g, h, bijective=True):
        return witness
    return None


def is_characteristic(group: ConcreteGroup, sub: Subgroup, auts: Sequence[GroupMap]) -> bool:
    """True when every automorphism in auts maps the subgroup onto itself."""
    member = sub.member_array()
    idx = sub.indices()
    for alpha in auts:
        if not member[alpha.images[idx]].all():
            return False
    return True
