"""The core decision procedure: does a finite 2-group embed with index 2
in a group generated by involutions?

Any overgroup Gamma of index 2 is determined, once an outer coset
representative t is fixed, by the pair (alpha, h) with t*x*t^-1 = alpha(x)
and t^2 = h; the pair must satisfy alpha(h) = h and alpha^2 equal to
conjugation by h.  Whether Gamma is generated by involutions does not
depend on the choice of representative, so exhausting all pairs decides
the property.  Pairs are tried in a fixed order (automorphism search
order, then h ascending) and the first witness wins.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import SizeLimitExceeded, StructureError
from .groups import (
    ConcreteGroup,
    Subgroup,
    closure,
    derived_subgroup,
    frattini_subgroup,
    from_table,
    involution_generated_subgroup,
    involutions,
    omega,
    quotient,
    realize,
)
from .maps import GroupMap, automorphism_stream, enumerate_automorphisms, is_characteristic

DEFAULT_MAX_STAR_ORDER = 1 << 9
MAX_ORDER_ENV = "INVOLEX_MAX_ORDER"


@dataclass
class ExtensionSpec:
    """Index-2 extension datum: t^2 = h and conjugation by t acts as alpha."""

    alpha: GroupMap
    h: int

    def validate(self, group: ConcreteGroup):
        phi = self.alpha.images
        if self.alpha.source is not group or self.alpha.target is not group:
            raise StructureError("extension automorphism must act on the extended group")
        if not self.alpha.is_bijective:
            raise StructureError("extension datum needs a bijective alpha")
        if int(phi[self.h]) != self.h:
            raise StructureError("alpha must fix h")
        conj_h = group.table[group.table[self.h], group.inv[self.h]]
        if not np.array_equal(phi[phi], conj_h):
            raise StructureError("alpha squared must equal conjugation by h")

    def describe(self, group: ConcreteGroup) -> str:
        images = ", ".join(
            f"{name} -> {group.describe_element(img)}"
            for name, img in zip(group.gen_names, self.alpha.generator_images)
        )
        return f"t^2 = {group.describe_element(self.h)}; t conjugation: {images}"


@dataclass
class StarReport:
    """Outcome of the embedding check for one group."""

    satisfies: bool
    witness: Optional[ExtensionSpec]
    extensions_tried: int
    involution_subgroup_orders: dict[int, int] = field(default_factory=dict)

    def summary(self) -> str:
        if self.satisfies:
            return f"SATISFIES (*) [witness after {self.extensions_tried} extensions]"
        orders = ", ".join(f"{k}:{v}" for k, v in sorted(self.involution_subgroup_orders.items()))
        return f"FAILS (*) [{self.extensions_tried} extensions exhausted; subgroup orders {orders}]"


def _compatible_h(group: ConcreteGroup, alpha: GroupMap) -> list[int]:
    """All h with alpha(h) = h and alpha^2 = conjugation by h, ascending."""
    phi = alpha.images
    alpha2 = phi[phi]
    t = group.table
    ok = phi == np.arange(group.order, dtype=np.int32)
    for g in group.generators:
        # h*g*h^-1 must equal alpha^2(g); agreement on generators extends
        ok &= t[t[:, g], group.inv] == alpha2[g]
    return [int(h) for h in np.flatnonzero(ok)]


def _spec_stream(group: ConcreteGroup, auts) -> Iterator[ExtensionSpec]:
    for alpha in auts:
        for h in _compatible_h(group, alpha):
            yield ExtensionSpec(alpha, h)


def compatible_extension_specs(group: ConcreteGroup, auts: Sequence[GroupMap]) -> list[ExtensionSpec]:
    """All extension data (alpha, h) over the given automorphism list."""
    return list(_spec_stream(group, auts))


def build_extension(group: ConcreteGroup, spec: ExtensionSpec) -> tuple[ConcreteGroup, GroupMap]:
    """Materialize Gamma = <G, t> for the extension datum.

    Element (g, eps) gets index g + eps*|G|; products follow
    (g1, e1)*(g2, e2) = (g1 * alpha^e1(g2) * h^[e1 & e2], e1 xor e2).
    """
    spec.validate(group)
    n = group.order
    t = group.table
    phi = spec.alpha.images
    twisted = t[:, phi]  # [g1, g2] -> g1 * alpha(g2)
    mul_h = t[:, spec.h]
    gamma_table = np.block([[t, t + n], [twisted + n, mul_h[twisted]]])
    gens = list(group.generators) + [n]
    outer_name = "t"
    while outer_name in group.gen_names:
        outer_name += "_"
    names = list(group.gen_names) + [outer_name]
    gamma = from_table(gamma_table, gens, names)
    embedding = GroupMap(group, gamma, np.arange(n, dtype=np.int32), validate=False)
    return gamma, embedding


def _star_order_bound(max_order: int | None) -> int:
    if max_order is not None:
        return max_order
    env = os.environ.get(MAX_ORDER_ENV)
    return int(env) if env else DEFAULT_MAX_STAR_ORDER


def satisfies_star(group: ConcreteGroup, max_order: int | None = None) -> StarReport:
    """Decide the index-2 involution-embedding property by exhaustive search.

    Automorphisms are streamed lazily so that groups with an early witness
    never pay for the full automorphism enumeration.  The first witness in
    the fixed spec order is reported; failure reports carry the histogram
    of involution-generated subgroup orders seen across all extensions.
    """
    bound = _star_order_bound(max_order)
    if group.order > bound:
        raise SizeLimitExceeded(
            f"group order {group.order} exceeds the bound {bound} "
            f"(override with {MAX_ORDER_ENV} or max_order)"
        )
    tried = 0
    seen_orders: dict[int, int] = {}
    for spec in _spec_stream(group, automorphism_stream(group)):
        gamma, _ = build_extension(group, spec)
        tried += 1
        generated = involution_generated_subgroup(gamma)
        size = len(generated)
        seen_orders[size] = seen_orders.get(size, 0) + 1
        if size == gamma.order:
            return StarReport(True, spec, tried, seen_orders)
    return StarReport(False, None, tried, seen_orders)


def exists_inverting_automorphism(
    group: ConcreteGroup, normal: Subgroup, auts: Sequence[GroupMap]
) -> bool:
    """Does some automorphism act as x -> x^-1 on the (abelian) quotient G/N?"""
    quot, proj = quotient(group, normal)
    if not quot.is_abelian:
        raise StructureError("quotient by the given subgroup is not abelian")
    target = quot.inv[proj]  # x -> inverse of the image of x
    for alpha in auts:
        if np.array_equal(proj[alpha.images], target):
            return True
    return False


def inverted_decomposition_holds(big: ConcreteGroup, sub: Subgroup) -> bool:
    """For involution-generated B with abelian index-2 subgroup A: test
    whether A equals Omega(A) times the subgroup inverted by outer elements."""
    n = big.order
    if 2 * len(sub) != n:
        raise StructureError("subgroup must have index 2")
    a_idx = sub.indices()
    t = big.table
    block = t[np.ix_(a_idx, a_idx)]
    if not np.array_equal(block, block.T):
        raise StructureError("index-2 subgroup must be abelian")
    if sub.member_array()[block].sum() != block.size:
        raise StructureError("index set is not closed under multiplication")
    if len(involution_generated_subgroup(big)) != n:
        raise StructureError("ambient group must be generated by involutions")
    member = sub.member_array()
    omega_idx = a_idx[t[a_idx, a_idx] == 0]
    inverted = np.zeros(n, dtype=bool)
    inv_a = big.inv[a_idx]
    outer = np.flatnonzero(~member)
    for y in outer:
        conj = t[t[y, a_idx], big.inv[y]]
        inverted[a_idx[conj == inv_a]] = True
    inv_idx = np.flatnonzero(inverted)
    if not np.isin(t[np.ix_(inv_idx, inv_idx)], inv_idx).all():
        raise AssertionError("internal error: inverted elements failed subgroup closure")
    product = np.unique(t[np.ix_(omega_idx, inv_idx)])
    return np.array_equal(product, a_idx)


def check_quotient_propagation(
    group: ConcreteGroup,
    normal: Subgroup,
    auts: Sequence[GroupMap] | None = None,
    max_order: int | None = None,
) -> bool:
    """Consistency check: a failing quotient by a characteristic subgroup
    forces the group itself to fail.  True when the implication holds here."""
    if auts is None:
        auts = enumerate_automorphisms(group)
    if not is_characteristic(group, normal, auts):
        raise StructureError("subgroup is not characteristic")
    quot, _ = quotient(group, normal)
    if satisfies_star(quot, max_order).satisfies:
        return True  # implication is vacuous
    return not satisfies_star(group, max_order).satisfies


def family_fails_star(
    m: int, n: int, *, cross_check: bool = False, max_order: int | None = None
) -> bool:
    """Run the structural obstruction chain for <a,b | a^m, b^n, [b,a] = a^4>.

    Returns True when the obstruction applies, which proves the group
    cannot embed with index 2 in an involution-generated group:
    with N = <a^4> (the derived subgroup, hence characteristic), the
    quotient G/N is abelian with Omega(G/N) inside its Frattini subgroup,
    and no automorphism of G inverts G/N.  With cross_check=True the
    direct exhaustive decision is run as well and must agree.
    """
    from .families import FamilySpec, make_presentation

    spec = FamilySpec("gmn", (m, n))
    group = realize(make_presentation(spec))
    a = group.generators[0]
    fourth_power = group.power(a, 4)
    normal = closure(group, [fourth_power])
    if normal != derived_subgroup(group):
        raise AssertionError("internal error: <a^4> is not the derived subgroup")
    quot, _ = quotient(group, normal)
    if not quot.is_abelian:
        return False
    omega_in_frattini = omega(quot) <= frattini_subgroup(quot)
    auts = enumerate_automorphisms(group)
    no_inversion = not exists_inverting_automorphism(group, normal, auts)
    applies = omega_in_frattini and no_inversion
    if cross_check:
        direct = satisfies_star(group, max_order)
        if applies and direct.satisfies:
            raise AssertionError("obstruction chain and direct search disagree")
    return applies
