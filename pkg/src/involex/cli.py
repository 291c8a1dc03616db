"""Command-line interface.

Subcommands: inspect, star-check, survey, search, family, lemmas, iso.
Exit codes: 0 success, 1 a --expect demand failed, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .catalog import (
    load_catalog,
    parse_catalog,
    render_search_json,
    render_search_text,
    render_survey_json,
    render_survey_text,
    run_star_survey,
    search_by_maximal_subgroups,
)
from .errors import InvolexError
from .families import FamilySpec, make_presentation, verify_family_structure
from .groups import (
    closure,
    frattini_subgroup,
    inverted_set,
    involution_generated_subgroup,
    involutions,
    maximal_subgroups,
    realize,
)
from .maps import are_isomorphic, enumerate_automorphisms, fingerprint
from .star import exists_inverting_automorphism, inverted_decomposition_holds, satisfies_star
from .words import Presentation, parse_presentation


def _load_single_group(path) -> tuple[str, Presentation]:
    """A group file: either one catalog stanza or a bare presentation."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if stripped.startswith("<"):
        name = str(path).rsplit("/", 1)[-1].rsplit(".", 1)[0]
        return name, parse_presentation(stripped)
    cat = parse_catalog(text, source=str(path))
    if len(cat) != 1:
        raise InvolexError(f"{path}: expected exactly one group, found {len(cat)}")
    return cat.entries[0]


def _cmd_inspect(args) -> int:
    name, presentation = _load_single_group(args.file)
    group = realize(presentation)
    fp = fingerprint(group)
    print(f"{name}: {presentation.to_text()}")
    print(f"order:             {group.order}")
    print(f"abelian:           {group.is_abelian}")
    print(f"exponent:          {group.exponent}")
    print(f"element orders:    {dict(fp.order_histogram)}")
    print(f"involutions:       {len(involutions(group))}")
    print(f"involution-generated subgroup: order {len(involution_generated_subgroup(group))}")
    print(f"center order:      {fp.center_order}")
    print(f"derived order:     {fp.derived_order}")
    phi = frattini_subgroup(group)
    print(f"frattini order:    {len(phi)} (rank {fp.frattini_rank})")
    print(f"maximal subgroups: {len(maximal_subgroups(group))}")
    print(f"square image size: {fp.square_image_size}")
    return 0


def _cmd_star_check(args) -> int:
    name, presentation = _load_single_group(args.file)
    group = realize(presentation)
    report = satisfies_star(group, args.max_order)
    verdict = "SATISFIES (*)" if report.satisfies else "FAILS (*)"
    print(f"{name}: {verdict}  [order {group.order}, {report.extensions_tried} extensions tried]")
    if args.witness and report.witness is not None:
        print(f"witness: {report.witness.describe(group)}")
    if not report.satisfies:
        orders = ", ".join(f"{k}:{v}" for k, v in sorted(report.involution_subgroup_orders.items()))
        print(f"involution-generated subgroup orders seen: {orders}")
    if args.expect is not None:
        want = args.expect == "pass"
        if report.satisfies != want:
            print(f"expectation failed: wanted {args.expect}", file=sys.stderr)
            return 1
    return 0


def _cmd_survey(args) -> int:
    catalog = load_catalog(args.catalog)
    report = run_star_survey(catalog, args.max_order)
    text = render_survey_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(render_survey_json(report))
    return 0


def _cmd_search(args) -> int:
    big = load_catalog(args.big)
    small = load_catalog(args.small)
    report = search_by_maximal_subgroups(big, small)
    text = render_search_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(render_search_json(report))
    return 0


def _parse_family(kind: str, params: list[str]) -> FamilySpec:
    def sub_spec(token: str) -> FamilySpec:
        parts = token.split(":")
        sub_kind = parts[0]
        sub_params = tuple(int(x) for x in parts[1:])
        if sub_kind == "abelian":
            return FamilySpec("abelian_of_type", sub_params)
        if sub_kind == "quaternion":
            return FamilySpec("generalized_quaternion", sub_params)
        return FamilySpec(sub_kind, sub_params)

    if kind == "product":
        if len(params) != 2:
            raise InvolexError("product takes two sub-specs, e.g. 'product cyclic:2 dihedral:8'")
        return FamilySpec("direct_product", (sub_spec(params[0]), sub_spec(params[1])))
    if kind == "abelian":
        return FamilySpec("abelian_of_type", tuple(int(x) for x in params))
    if kind == "quaternion":
        return FamilySpec("generalized_quaternion", tuple(int(x) for x in params))
    return FamilySpec(kind, tuple(int(x) for x in params))


def _cmd_family(args) -> int:
    spec = _parse_family(args.kind, args.params)
    presentation = make_presentation(spec)
    name = args.name or (args.kind + "_" + "_".join(args.params)).replace(":", "_")
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(f"group {name} {presentation.to_text()}\n")
        print(f"wrote {args.emit}")
    else:
        print(f"group {name} {presentation.to_text()}")
    return 0


def _detect_gmn(presentation: Presentation) -> tuple[int, int] | None:
    """Recognize <x,y | x^m, y^n, [y,x] x^-4> up to generator order."""
    if presentation.n_generators != 2 or len(presentation.relators) != 3:
        return None
    for a, b in ((1, 2), (2, 1)):
        m = n = None
        comm_ok = False
        for rel in presentation.relators:
            letters = rel.reduced().letters
            if letters and all(x == a for x in letters):
                m = len(letters)
            elif letters and all(x == b for x in letters):
                n = len(letters)
            else:
                expected = (-b, -a, b) + (-a,) * 3
                if letters == expected:
                    comm_ok = True
        if comm_ok and m and n:
            return m, n
    return None


def _cmd_lemmas(args) -> int:
    name, presentation = _load_single_group(args.file)
    group = realize(presentation)
    failures = 0

    def emit(check: str, ok: bool | None, detail: str = ""):
        nonlocal failures
        state = "PASS" if ok else ("SKIP" if ok is None else "FAIL")
        if ok is False:
            failures += 1
        suffix = f"  ({detail})" if detail else ""
        print(f"{check}: {state}{suffix}")

    gmn = _detect_gmn(presentation)
    if gmn is not None:
        m, n = gmn
        try:
            report = verify_family_structure(m, n)
            emit("family structure", report.ok, report.summary())
        except (InvolexError, ValueError) as exc:
            emit("family structure", None, str(exc))
        a = group.generators[0]
        normal = closure(group, [group.power(a, 4)])
        auts = enumerate_automorphisms(group)
        inverting = exists_inverting_automorphism(group, normal, auts)
        emit("no inverting automorphism on G/<a^4>", not inverting, f"|Aut| = {len(auts)}")
    else:
        emit("family structure", None, "presentation is not of the <a^m, b^n, [b,a]=a^4> form")

    if group.is_abelian and len(group.generators) <= 4:
        auts = enumerate_automorphisms(group)
        order2 = [alpha for alpha in auts if np.array_equal(alpha.images[alpha.images], np.arange(group.order))]
        try:
            for alpha in order2:
                inverted_set(group, alpha)
            emit("inverted sets are subgroups", True, f"{len(order2)} automorphisms of order <= 2")
        except InvolexError as exc:
            emit("inverted sets are subgroups", False, str(exc))
    else:
        emit("inverted sets are subgroups", None, "group not abelian (or too many generators)")

    if len(involution_generated_subgroup(group)) == group.order:
        checked = 0
        ok = True
        for sub in maximal_subgroups(group):
            sub_table = group.table[np.ix_(sub.indices(), sub.indices())]
            if np.array_equal(sub_table, sub_table.T):
                checked += 1
                ok = ok and inverted_decomposition_holds(group, sub)
        if checked:
            emit("omega-times-inverted decomposition", ok, f"{checked} abelian index-2 subgroups")
        else:
            emit("omega-times-inverted decomposition", None, "no abelian index-2 subgroup")
    else:
        emit("omega-times-inverted decomposition", None, "group is not involution-generated")

    if args.expect == "pass" and failures:
        return 1
    return 0


def _cmd_iso(args) -> int:
    name1, p1 = _load_single_group(args.file1)
    name2, p2 = _load_single_group(args.file2)
    g1, g2 = realize(p1), realize(p2)
    witness = are_isomorphic(g1, g2)
    if witness is not None:
        images = ", ".join(
            f"{n} -> {g2.describe_element(i)}" for n, i in zip(g1.gen_names, witness.generator_images)
        )
        print(f"ISOMORPHIC  [{name1} ~ {name2}: {images}]")
    else:
        print(f"NOT ISOMORPHIC  [{name1} !~ {name2}]")
    if args.expect is not None:
        want = args.expect == "iso"
        if (witness is not None) != want:
            print(f"expectation failed: wanted {args.expect}", file=sys.stderr)
            return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="involex",
        description="Decide whether finite 2-groups embed with index 2 in involution-generated groups.",
    )
    parser.add_argument("--version", action="version", version=f"involex {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="order, fingerprint and structural subgroups of one group")
    p.add_argument("file")
    p.set_defaults(func=_cmd_inspect)

    p = sub.add_parser("star-check", help="decide the index-2 involution-embedding property")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="print the witness extension if any")
    p.add_argument("--expect", choices=["pass", "fail"])
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=_cmd_star_check)

    p = sub.add_parser("survey", help="star-check every entry of a catalog")
    p.add_argument("catalog")
    p.add_argument("--out", help="write the text report here instead of stdout")
    p.add_argument("--json", help="also write a JSON report here")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("search", help="diff a catalog against maximal subgroups of a bigger one")
    p.add_argument("big")
    p.add_argument("small")
    p.add_argument("--out")
    p.add_argument("--json")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("family", help="emit a standard family presentation")
    p.add_argument("kind", help="gmn | cyclic | dihedral | quaternion | semidihedral | abelian | product")
    p.add_argument("params", nargs="*", help="integer parameters (product: two kind:params specs)")
    p.add_argument("--emit", help="write a one-stanza catalog file")
    p.add_argument("--name", help="group name for the emitted stanza")
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("lemmas", help="run the structural consistency checks that apply to a group")
    p.add_argument("file")
    p.add_argument("--expect", choices=["pass"])
    p.set_defaults(func=_cmd_lemmas)

    p = sub.add_parser("iso", help="isomorphism test between two group files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--expect", choices=["iso", "noniso"])
    p.set_defaults(func=_cmd_iso)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except (InvolexError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
