"""Constructors for standard 2-group families and the two-parameter
family <a,b | a^m, b^n, [b,a] = a^4> together with its structure checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cosets import DEFAULT_MAX_COSETS
from .groups import abelian_invariants, closure, derived_subgroup, quotient, realize, subgroup_group
from .words import Presentation, Word, word_commutator

FAMILY_KINDS = (
    "gmn",
    "cyclic",
    "dihedral",
    "generalized_quaternion",
    "semidihedral",
    "abelian_of_type",
    "direct_product",
)


def _is_power_of_two(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class FamilySpec:
    """A named family plus parameters; direct products nest two sub-specs."""

    kind: str
    parameters: tuple = ()

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; choose from {FAMILY_KINDS}")
        object.__setattr__(self, "parameters", tuple(self.parameters))
        self.validate()

    def validate(self):
        k, p = self.kind, self.parameters
        if k == "gmn":
            if len(p) != 2:
                raise ValueError("gmn takes parameters (m, n)")
            m, n = p
            if not _is_power_of_two(m) or not _is_power_of_two(n):
                raise ValueError("requires m and n to be powers of 2")
            if m < 16:
                raise ValueError("requires m >= 16")
            if n < 4:
                raise ValueError("requires n >= 4")
            if m > 4 * n:
                raise ValueError("requires m <= 4n")
        elif k in ("cyclic", "dihedral", "generalized_quaternion", "semidihedral"):
            if len(p) != 1:
                raise ValueError(f"{k} takes a single order parameter")
            (order,) = p
            if not _is_power_of_two(order):
                raise ValueError("order must be a power of 2")
            minimum = {"cyclic": 1, "dihedral": 4, "generalized_quaternion": 8, "semidihedral": 16}[k]
            if order < minimum:
                raise ValueError(f"{k} requires order >= {minimum}")
        elif k == "abelian_of_type":
            if not p or not all(_is_power_of_two(d) and d >= 2 for d in p):
                raise ValueError("abelian type needs cyclic orders that are powers of 2, each >= 2")
        elif k == "direct_product":
            if len(p) != 2 or not all(isinstance(s, FamilySpec) for s in p):
                raise ValueError("direct product takes exactly two sub-specs")


_GEN_POOL = "abcdefgh"


def _w(*letters: int) -> Word:
    return Word(tuple(letters))


def make_presentation(spec: FamilySpec) -> Presentation:
    """The standard presentation for the family member."""
    k, p = spec.kind, spec.parameters
    if k == "gmn":
        m, n = p
        a, b = _w(1), _w(2)
        return Presentation(
            ("a", "b"), (a**m, b**n, word_commutator(b, a) * a**-4)
        )
    if k == "cyclic":
        (order,) = p
        return Presentation(("a",), (_w(1) ** order,))
    if k == "dihedral":
        (order,) = p
        r, s = _w(1), _w(2)
        return Presentation(("r", "s"), (r ** (order // 2), s**2, (r * s) ** 2))
    if k == "generalized_quaternion":
        (order,) = p
        a, b = _w(1), _w(2)
        return Presentation(
            ("a", "b"),
            (a ** (order // 2), b**2 * a ** -(order // 4), b**-1 * a * b * a),
        )
    if k == "semidihedral":
        (order,) = p
        a, b = _w(1), _w(2)
        twist = order // 4 - 1
        return Presentation(
            ("a", "b"),
            (a ** (order // 2), b**2, b**-1 * a * b * a**-twist),
        )
    if k == "abelian_of_type":
        names = tuple(_GEN_POOL[: len(p)])
        relators = [_w(i + 1) ** d for i, d in enumerate(p)]
        for j in range(len(p)):
            for i in range(j):
                relators.append(word_commutator(_w(j + 1), _w(i + 1)))
        return Presentation(names, tuple(relators))
    if k == "direct_product":
        left, right = p
        return direct_product_presentation(make_presentation(left), make_presentation(right))
    raise AssertionError(f"unhandled kind {k!r}")


def direct_product_presentation(p1: Presentation, p2: Presentation) -> Presentation:
    """Union of generators and relators plus cross-commutators; p2 generators
    are renamed when they clash with p1."""
    names = list(p1.generator_names)
    for name in p2.generator_names:
        candidate = name
        while candidate in names:
            candidate += "2"
        names.append(candidate)
    shift = p1.n_generators

    def shift_word(w: Word) -> Word:
        return Word(tuple(x + shift if x > 0 else x - shift for x in w.letters))

    relators = list(p1.relators) + [shift_word(r) for r in p2.relators]
    for i in range(p1.n_generators):
        for j in range(p2.n_generators):
            relators.append(word_commutator(_w(shift + j + 1), _w(i + 1)))
    return Presentation(tuple(names), tuple(relators))


@dataclass
class FamilyStructureReport:
    """Structure check for one (m, n) family member."""

    m: int
    n: int
    order: int
    derived_order: int
    derived_is_cyclic: bool
    derived_equals_fourth_powers: bool
    quotient_invariants: tuple[int, ...]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        state = "OK" if self.ok else "FAIL: " + "; ".join(self.failures)
        return (
            f"G({self.m},{self.n}): order {self.order}, derived order {self.derived_order}, "
            f"abelianization {self.quotient_invariants} [{state}]"
        )


def verify_family_structure(m: int, n: int, max_cosets: int = DEFAULT_MAX_COSETS) -> FamilyStructureReport:
    """Concretize G(m, n) and verify its expected structure:
    order m*n; derived subgroup generated by a^4, cyclic of order m/4;
    abelianization of type {4, n}."""
    spec = FamilySpec("gmn", (m, n))
    group = realize(make_presentation(spec), max_cosets)
    failures: list[str] = []
    if group.order != m * n:
        failures.append(f"order {group.order} != {m * n}")
    derived = derived_subgroup(group)
    a = group.generators[0]
    fourth = closure(group, [group.power(a, 4)])
    derived_equals = derived == fourth
    if not derived_equals:
        failures.append("derived subgroup differs from <a^4>")
    derived_group = subgroup_group(group, derived)
    cyclic = derived_group.exponent == derived_group.order
    if not cyclic:
        failures.append("derived subgroup is not cyclic")
    if len(derived) != m // 4:
        failures.append(f"derived order {len(derived)} != {m // 4}")
    quot, _ = quotient(group, derived)
    quot_invariants = abelian_invariants(quot)
    expected = tuple(sorted((4, n)))
    if quot_invariants != expected:
        failures.append(f"abelianization {quot_invariants} != {expected}")
    return FamilyStructureReport(
        m=m,
        n=n,
        order=group.order,
        derived_order=len(derived),
        derived_is_cyclic=cyclic,
        derived_equals_fourth_powers=derived_equals,
        quotient_invariants=quot_invariants,
        failures=failures,
    )
