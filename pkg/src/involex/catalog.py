"""Catalog file I/O, the embedding-property survey, and the maximal-subgroup
search pipeline.

Catalog format (UTF-8, line oriented): one stanza per group,

    group NAME <gens | relators>

with ``#`` comments and blank lines ignored.  Names must be unique.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import CatalogError, InvolexError
from .groups import (
    ConcreteGroup,
    involution_generated_subgroup,
    maximal_subgroups,
    realize,
    subgroup_group,
)
from .maps import are_isomorphic, fingerprint
from .star import satisfies_star
from .words import Presentation, parse_presentation


@dataclass
class Catalog:
    """An ordered list of named presentations."""

    entries: list[tuple[str, Presentation]] = field(default_factory=list)

    def names(self) -> list[str]:
        return [name for name, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def parse_catalog(text: str, source: str = "<string>") -> Catalog:
    entries: list[tuple[str, Presentation]] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) < 3 or parts[0] != "group":
            raise CatalogError(f"{source}:{lineno}: expected 'group NAME <...>'")
        name, body = parts[1], parts[2]
        if name in seen:
            raise CatalogError(f"{source}:{lineno}: duplicate group name {name!r}")
        seen.add(name)
        try:
            presentation = parse_presentation(body)
        except InvolexError as exc:
            raise CatalogError(f"{source}:{lineno}: entry {name!r}: {exc}") from exc
        entries.append((name, presentation))
    return Catalog(entries)


def load_catalog(path) -> Catalog:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_catalog(fh.read(), source=str(path))


def save_catalog(catalog: Catalog, path):
    with open(path, "w", encoding="utf-8") as fh:
        for name, presentation in catalog:
            fh.write(f"group {name} {presentation.to_text()}\n")


# --- survey ------------------------------------------------------------------


@dataclass
class SurveyRow:
    name: str
    order: Optional[int]
    satisfies: Optional[bool]
    detail: str


@dataclass
class SurveyReport:
    rows: list[SurveyRow]

    @property
    def totals(self) -> dict[str, int]:
        return {
            "pass": sum(1 for r in self.rows if r.satisfies is True),
            "fail": sum(1 for r in self.rows if r.satisfies is False),
            "error": sum(1 for r in self.rows if r.satisfies is None),
        }


def run_star_survey(catalog: Catalog, max_order: int | None = None) -> SurveyReport:
    """Decide the embedding property for every catalog entry; errors are
    recorded per entry rather than aborting the survey."""
    rows: list[SurveyRow] = []
    for name, presentation in catalog:
        try:
            group = realize(presentation)
            report = satisfies_star(group, max_order)
            detail = (
                report.witness.describe(group)
                if report.witness is not None
                else f"exhausted {report.extensions_tried} extensions"
            )
            rows.append(SurveyRow(name, group.order, report.satisfies, detail))
        except InvolexError as exc:
            rows.append(SurveyRow(name, None, None, f"error: {exc}"))
    return SurveyReport(rows)


def render_survey_text(report: SurveyReport) -> str:
    width = max([len(r.name) for r in report.rows], default=4)
    lines = [f"{'name'.ljust(width)}  order  star  detail"]
    for r in report.rows:
        order = "-" if r.order is None else str(r.order)
        star = {True: "yes", False: "NO", None: "err"}[r.satisfies]
        lines.append(f"{r.name.ljust(width)}  {order:>5}  {star:<4}  {r.detail}")
    t = report.totals
    lines.append(f"totals: {t['pass']} satisfy, {t['fail']} fail, {t['error']} errors")
    return "\n".join(lines) + "\n"


def survey_json_payload(report: SurveyReport) -> dict:
    return {
        "entries": [
            {
                "name": r.name,
                "order": r.order,
                "satisfies_star": r.satisfies,
                "witness": r.detail if r.satisfies else None,
                "obstructions": None if r.satisfies else r.detail,
            }
            for r in report.rows
        ],
        "totals": report.totals,
    }


def render_survey_json(report: SurveyReport) -> str:
    return json.dumps(survey_json_payload(report), indent=2, sort_keys=True) + "\n"


# --- maximal-subgroup search ---------------------------------------------------


@dataclass
class SearchReport:
    """Diff of a small catalog against the maximal subgroups of an
    involution-generated big catalog.

    Entries listed as unmatched fail the embedding property *by this
    method only when the big catalog is complete*; on partial catalogs
    the result is a necessary condition and is labelled as such.
    """

    big_total: int
    involution_generated: list[str]
    subgroups_collected: int
    class_count: int
    matched: dict[str, str]  # small name -> class label
    unmatched: list[str]
    caveats: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)


def search_by_maximal_subgroups(big: Catalog, small: Catalog) -> SearchReport:
    """Filter the big catalog to involution-generated groups, collect all of
    their maximal subgroups, bucket those into isomorphism classes, and
    report which small-catalog entries match no class."""
    errors: list[str] = []
    caveats: list[str] = []
    big_groups: list[tuple[str, ConcreteGroup]] = []
    for name, presentation in big:
        try:
            big_groups.append((name, realize(presentation)))
        except InvolexError as exc:
            errors.append(f"{name}: {exc}")
    small_groups: list[tuple[str, ConcreteGroup]] = []
    for name, presentation in small:
        try:
            small_groups.append((name, realize(presentation)))
        except InvolexError as exc:
            errors.append(f"{name}: {exc}")
    big_orders = {g.order for _, g in big_groups}
    small_orders = {g.order for _, g in small_groups}
    if len(big_orders) > 1 or len(small_orders) > 1:
        raise CatalogError("catalog entries must share a single order per catalog")
    if big_orders and small_orders:
        (b,) = big_orders
        (s,) = small_orders
        if b != 2 * s:
            raise CatalogError(f"big catalog order {b} must be twice the small order {s}")
    if not big_groups:
        caveats.append("big catalog is empty: the method is vacuous and every entry is unmatched")

    generated = []
    collected = []  # (class label source, ConcreteGroup)
    for name, group in big_groups:
        if len(involution_generated_subgroup(group)) != group.order:
            continue
        generated.append(name)
        for i, sub in enumerate(maximal_subgroups(group)):
            collected.append((f"{name}/max{i}", subgroup_group(group, sub)))

    # fingerprint buckets first, pairwise isomorphism inside buckets
    classes: list[tuple[str, ConcreteGroup]] = []
    buckets: dict = {}
    for label, group in collected:
        fp = fingerprint(group)
        bucket = buckets.setdefault(fp, [])
        if not any(are_isomorphic(group, rep) is not None for _, rep in bucket):
            bucket.append((label, group))
            classes.append((label, group))

    matched: dict[str, str] = {}
    unmatched: list[str] = []
    for name, group in small_groups:
        fp = fingerprint(group)
        hit = None
        for label, rep in buckets.get(fp, []):
            if are_isomorphic(group, rep) is not None:
                hit = label
                break
        if hit is None:
            unmatched.append(name)
        else:
            matched[name] = hit
    return SearchReport(
        big_total=len(big_groups),
        involution_generated=generated,
        subgroups_collected=len(collected),
        class_count=len(classes),
        matched=matched,
        unmatched=unmatched,
        caveats=caveats,
        errors=errors,
    )


def render_search_text(report: SearchReport) -> str:
    lines = [
        f"big catalog entries:        {report.big_total}",
        f"involution-generated:       {len(report.involution_generated)} ({', '.join(report.involution_generated) or '-'})",
        f"maximal subgroups collected: {report.subgroups_collected}",
        f"isomorphism classes:        {report.class_count}",
        f"matched small entries:      {len(report.matched)}",
    ]
    for name in sorted(report.matched):
        lines.append(f"  {name} ~ {report.matched[name]}")
    lines.append(f"unmatched small entries:    {len(report.unmatched)} ({', '.join(report.unmatched) or '-'})")
    lines.append("note: unmatched is a necessary condition only; confirm with a direct star-check")
    for c in report.caveats:
        lines.append(f"caveat: {c}")
    for e in report.errors:
        lines.append(f"error: {e}")
    return "\n".join(lines) + "\n"


def search_json_payload(report: SearchReport) -> dict:
    return {
        "big_total": report.big_total,
        "involution_generated": report.involution_generated,
        "subgroups_collected": report.subgroups_collected,
        "isomorphism_classes": report.class_count,
        "matched": report.matched,
        "unmatched": report.unmatched,
        "caveats": report.caveats,
        "errors": report.errors,
    }


def render_search_json(report: SearchReport) -> str:
    return json.dumps(search_json_payload(report), indent=2, sort_keys=True) + "\n"
