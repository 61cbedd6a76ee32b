"""Command-line front end: ``secondspec analyze | verify | export``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields

from .algebra import (
    CapacityError,
    DescriptorError,
    FiniteModule,
    Submodule,
    bits,
    enumerate_submodules,
    module_from_descriptor,
    parse_descriptor,
)
from .second import classify, second_dim, second_spectrum, socle
from .topology import (
    FiniteTopology,
    generic_points,
    is_irreducible,
    psi_map,
    second_zariski,
    separation_profile,
    spectral_check,
)
from .verify import REGISTRY, THEOREM_IDS, CorpusSpec, run_suite

__all__ = ["AnalysisReport", "analyze", "main", "parse_descriptor"]

SCHEMA_VERSION = 1
# closed families larger than this are summarized rather than listed
FAMILY_REPORT_LIMIT = 4096

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


def elements_of(S: Submodule) -> list[list[int]]:
    return [list(x) for x in S.elements]


@dataclass
class AnalysisReport:
    descriptor: str
    ring_modulus: int
    order: int
    submodule_count: int
    second_points: list
    second_dim: int
    classification: dict
    topology: dict
    generic_points: list
    socle: list
    psi: dict | None
    closed_family: list | None
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in names})

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def analyze(M: FiniteModule) -> AnalysisReport:
    lattice = enumerate_submodules(M)
    spec = second_spectrum(M)
    top = second_zariski(M)
    prof = separation_profile(top)
    whole = spec.full
    irreducible = is_irreducible(top, whole)
    spectral = spectral_check(top).is_spectral
    generic = [elements_of(spec.points[i]) for i in generic_points(top, whole)] if spec.points else []
    try:
        psi, target = psi_map(M)
        psi_data = {
            "annihilator_of_socle": target.ideal_generator,
            "target_primes": list(target.primes),
            "assignment": [target.primes[j] for j in psi.assignment],
        }
    except ArithmeticError:
        psi_data = None
    fam = top.family_within(FAMILY_REPORT_LIMIT)
    return AnalysisReport(
        descriptor=M.descriptor,
        ring_modulus=M.ring.modulus,
        order=M.order,
        submodule_count=len(lattice),
        second_points=[elements_of(S) for S in spec],
        second_dim=second_dim(M),
        classification=classify(M).as_dict(),
        topology={
            "t0": prof.t0,
            "t1": prof.t1,
            "hausdorff": prof.hausdorff,
            "discrete": prof.discrete,
            "cofinite": prof.cofinite,
            "irreducible": irreducible,
            "spectral": spectral,
        },
        generic_points=generic,
        socle=elements_of(socle(M.whole)),
        psi=psi_data,
        closed_family=None if fam is None else [hex(c) for c in fam],
    )


def report_text(r: AnalysisReport) -> str:
    def fmt(elems):
        return "{" + ", ".join("(" + ",".join(map(str, e)) + ")" for e in elems) + "}"

    lines = [
        f"module        {r.descriptor}  (ring Z/{r.ring_modulus}, order {r.order})",
        f"submodules    {r.submodule_count}",
        f"second points {len(r.second_points)}",
    ]
    lines += [f"  {fmt(p)}" for p in r.second_points]
    lines.append(f"second_dim    {r.second_dim}")
    lines.append(f"socle         {fmt(r.socle)}")
    lines.append("topology      " + " ".join(f"{k}={str(v).lower()}" for k, v in r.topology.items()))
    lines.append("generic       " + (", ".join(fmt(g) for g in r.generic_points) or "none"))
    lines.append("flags")
    lines += [f"  {k:26s} {str(v).lower()}" for k, v in r.classification.items()]
    if r.psi is not None:
        lines.append(f"psi           I_M = ({r.psi['annihilator_of_socle']}); primes {r.psi['target_primes']}")
        lines.append(f"              assignment {r.psi['assignment']}")
    if r.closed_family is not None:
        lines.append(f"closed sets   {len(r.closed_family)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def _label(S: Submodule) -> str:
    return " ".join("".join(map(str, e)) for e in S.elements)


def lattice_dot(M: FiniteModule) -> str:
    lattice = enumerate_submodules(M)
    points = second_spectrum(M).index
    out = ["digraph lattice {", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
    for i, N in enumerate(lattice):
        style = ', style=filled, fillcolor="lightblue"' if N.mask in points else ""
        out.append(f'  n{i} [label="{_label(N)}"{style}];')
    for i, j in lattice.covers:
        out.append(f"  n{i} -> n{j};")
    out.append("}")
    return "\n".join(out)


def topology_dot(M: FiniteModule, top: FiniteTopology | None = None) -> str:
    """Closed family as a Hasse diagram; the specialization order when the family is large."""
    spec = second_spectrum(M)
    top = top or second_zariski(M)
    fam = top.family_within(FAMILY_REPORT_LIMIT // 16)
    out = ["digraph topology {", "  rankdir=BT;", "  node [fontsize=10];"]
    if fam is not None:
        out[0] = "digraph closed_sets {"
        for k, C in enumerate(fam):
            names = ", ".join(str(i) for i in bits(C)) or "empty"
            out.append(f'  c{k} [label="{{{names}}}"];')
        for a, A in enumerate(fam):
            for b, B in enumerate(fam):
                if A != B and A & ~B == 0:
                    between = any(C not in (A, B) and A & ~C == 0 and C & ~B == 0 for C in fam)
                    if not between:
                        out.append(f"  c{a} -> c{b};")
    else:
        out[0] = "digraph specialization {"
        for i, S in enumerate(spec):
            out.append(f'  p{i} [label="{_label(S)}"];')
        below = spec.strictly_below
        for i in range(len(spec)):
            direct = below[i]
            for j in bits(below[i]):
                direct &= ~below[j]
            for j in bits(direct):
                out.append(f"  p{j} -> p{i};")
    out.append("}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    M = module_from_descriptor(args.descriptor)
    if args.format == "dot":
        print(lattice_dot(M))
        print(topology_dot(M))
        return EXIT_OK
    report = analyze(M)
    print(report.to_json() if args.format == "json" else report_text(report))
    return EXIT_OK


def cmd_export(args) -> int:
    M = module_from_descriptor(args.descriptor)
    print(lattice_dot(M) if args.what == "lattice" else topology_dot(M))
    return EXIT_OK


def _theorem_list(text: str | None) -> list[str]:
    if not text:
        return list(THEOREM_IDS)
    ids = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [t for t in ids if t not in REGISTRY]
    if unknown:
        raise KeyError(", ".join(unknown))
    return ids


def suite_text(report) -> str:
    lines = []
    counts = report.counts()
    for tid in report.theorem_ids:
        c = counts[tid]
        extra = f"  ({c['partial']} partially checked)" if c["partial"] else ""
        lines.append(f"[{tid}] {REGISTRY[tid].statement}")
        lines.append(f"  pass {c['pass']}  fail {c['fail']}  skipped {c['skipped']}{extra}")
        for r in report.results:
            if r.theorem_id == tid and r.status == "fail":
                lines.append(f"  FAIL {r.module}: {json.dumps(r.witness, sort_keys=True)}")
    und = report.undistinguished()
    if und:
        lines.append("sides never distinguished on this corpus: " + ", ".join(und))
    total = sum(c["fail"] for c in counts.values())
    lines.append(f"{len(report.modules)} modules, {len(report.theorem_ids)} theorems, {total} failures")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    try:
        ids = _theorem_list(args.theorems)
    except KeyError as exc:
        print(f"error: unknown theorem id {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    if args.modules:
        report = run_suite(ids=ids, modules=[module_from_descriptor(d) for d in args.modules])
    else:
        spec = CorpusSpec(args.max_order, args.max_factors, args.ring_policy, args.fixed_n)
        report = run_suite(spec, ids)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(suite_text(report))
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="secondspec", description="Second spectrum of finite Z/nZ-modules.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="full report for one module")
    a.add_argument("descriptor", help="module descriptor such as Z6[6] or Z4[4,2]")
    a.add_argument("--format", choices=["json", "text", "dot"], default="text")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="replay the theorem registry over a corpus")
    v.add_argument("--max-order", type=int, default=16)
    v.add_argument("--max-factors", type=int, default=None)
    v.add_argument("--ring-policy", choices=["exponent", "fixed", "all"], default="exponent")
    v.add_argument("--fixed-n", type=int, default=None, help="ring modulus for --ring-policy fixed")
    v.add_argument("--theorems", help="comma-separated theorem ids (default: all)")
    v.add_argument("--modules", nargs="+", metavar="DESCRIPTOR", help="check these modules instead of a corpus")
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="graph description of the lattice or topology")
    e.add_argument("descriptor")
    e.add_argument("--what", choices=["lattice", "topology"], required=True)
    e.add_argument("--format", choices=["dot"], default="dot")
    e.set_defaults(func=cmd_export)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
