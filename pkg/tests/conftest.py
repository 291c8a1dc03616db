from pathlib import Path

import pytest

import involex
from involex import (
    FamilySpec,
    enumerate_automorphisms,
    make_presentation,
    parse_presentation,
    realize,
    satisfies_star,
)

DATA_DIR = Path(involex.__file__).parent / "data"

PRESENTATIONS = {
    "C2": "<a | a^2>",
    "C4": "<a | a^4>",
    "C8": "<a | a^8>",
    "C16": "<a | a^16>",
    "C32": "<a | a^32>",
    "D8": "<r,s | r^4, s^2, (r s)^2>",
    "D16": "<r,s | r^8, s^2, (r s)^2>",
    "D32": "<r,s | r^16, s^2, (r s)^2>",
    "Q8": "<a,b | a^4, b^2 = a^2, b^-1 a b = a^-1>",
    "Q16": "<a,b | a^8, b^2 = a^4, b^-1 a b = a^-1>",
    "Q32": "<a,b | a^16, b^2 = a^8, b^-1 a b = a^-1>",
    "SD16": "<a,b | a^8, b^2, b^-1 a b = a^3>",
    "SD32": "<a,b | a^16, b^2, b^-1 a b = a^7>",
    "C2x2": "<a,b | a^2, b^2, [b,a]>",
    "C4x2": "<a,b | a^4, b^2, [b,a]>",
    "C4x4": "<a,b | a^4, b^4, [b,a]>",
    "C8x2": "<a,b | a^8, b^2, [b,a]>",
    "C2x2x2": "<a,b,c | a^2, b^2, c^2, [b,a], [c,a], [c,b]>",
    "C4x2x2": "<a,b,c | a^4, b^2, c^2, [b,a], [c,a], [c,b]>",
    "C2xD8": "<r,s,c | r^4, s^2, (r s)^2, c^2, [c,r], [c,s]>",
    "C2xQ8": "<a,b,c | a^4, b^2 = a^2, b^-1 a b = a^-1, c^2, [c,a], [c,b]>",
    "G1": "<a,b | a^16, b^4, [b,a]=a^4>",
    "G2": "<a,b | a^16, b^4, [b,a]=a^-2>",
}


class Memo:
    """Session cache so expensive groups, automorphism lists and star
    reports are computed once across the whole suite."""

    def __init__(self):
        self._groups = {}
        self._auts = {}
        self._star = {}

    def presentation(self, name):
        if name.startswith("G(") and name.endswith(")"):
            m, n = (int(x) for x in name[2:-1].split(","))
            return make_presentation(FamilySpec("gmn", (m, n)))
        return parse_presentation(PRESENTATIONS[name])

    def group(self, name):
        if name not in self._groups:
            self._groups[name] = realize(self.presentation(name))
        return self._groups[name]

    def auts(self, name):
        if name not in self._auts:
            self._auts[name] = enumerate_automorphisms(self.group(name))
        return self._auts[name]

    def star(self, name, max_order=None):
        key = (name, max_order)
        if key not in self._star:
            self._star[key] = satisfies_star(self.group(name), max_order)
        return self._star[key]


@pytest.fixture(scope="session")
def memo():
    return Memo()
