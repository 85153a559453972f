"""Command-line interface.

Verbs: structure (the full pipeline with optional certification), oracle,
charpoly, genmat, chains, and bench.  All file formats are the text formats
of the library: matrices as ``n m`` plus rows of rationals, polynomials as
``d c0 ... cd``, factor lists as ``m : d c0 ... cd`` per line.

Exit codes: 0 on success, 2 on any input inconsistency or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .chains import chain_witness, verify_chain
from .errors import InconsistencyError, ParseError
from .genmat import FAMILY_NAMES, generate, benchmark_family
from .jkstructure import MethodVariant, StructureReport, jordan_blocks
from .krylov import rank_of
from .oracle import structure_by_ranks
from .rlinalg import format_matrix, parse_matrix, parse_vector
from .rpoly import (
    FactoredCharPoly,
    charpoly,
    eval_matrix,
    format_factored,
    format_poly,
    parse_factored,
    parse_poly,
    squarefree_decompose,
)
from .runstats import PHASES, RunStats

CSV_HEADER = (
    "family,d,n,variant,preprocess,f1A,annihpol,krylovgs,preprocessing,jkelim,total"
)


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_factor_with_multiplicity(path: str, a) -> tuple:
    """A single factor: either one factored line ``m : d c0 ...`` or a bare
    polynomial line, in which case the multiplicity is derived from the
    characteristic polynomial by exact division."""
    text = _read(path)
    if ":" in text:
        fc = parse_factored(text)
        if len(fc) != 1:
            raise ParseError(1, 1, "expected exactly one factor")
        return fc[0]
    f = parse_poly(text)
    chi = charpoly(a)
    m = 0
    while True:
        q, r = divmod(chi, f)
        if not r.is_zero():
            break
        chi = q
        m += 1
    return f, m


def _factored_input(args, a) -> FactoredCharPoly:
    if args.factors:
        fc = parse_factored(_read(args.factors))
        fc.validate(n=a.rows)
        return fc
    # --squarefree path
    if not args.assume_irreducible:
        raise InconsistencyError(
            "input",
            "squarefree parts are not necessarily irreducible; rerun with "
            "--assume-irreducible to assert that they are",
        )
    parts = squarefree_decompose(charpoly(a))
    return FactoredCharPoly(parts)


def _certify(a, report: StructureReport) -> dict:
    oracle_counts = structure_by_ranks(a, report.factor, report.m).counts
    chains_checked = 0
    for ell, gens in sorted(report.basis_by_rank.items()):
        for u in gens:
            chain = chain_witness(a, report.factor, u, ell)
            if not verify_chain(a, report.factor, chain):
                raise InconsistencyError(
                    "certify", f"chain verification failed for a rank-{ell} generator"
                )
            chains_checked += 1
    if tuple(oracle_counts) != tuple(report.counts):
        raise InconsistencyError(
            "certify",
            f"oracle disagrees: {list(oracle_counts)} vs {list(report.counts)}",
        )
    return {"oracle": list(oracle_counts), "chains_verified": chains_checked}


def _print_report(report: StructureReport, certified: dict | None) -> None:
    print(f"factor: {format_poly(report.factor)}")
    print(f"d: {report.d}")
    print(f"m: {report.m}")
    print(f"lbar: {report.lbar}")
    print("counts: " + " ".join(str(c) for c in report.counts))
    timings = report.stats.timing_row()
    print("timings: " + " ".join(f"{k}={timings[k]:.6f}" for k in PHASES))
    if certified is not None:
        print(f"certified: oracle ok, {certified['chains_verified']} chains verified")
    print()


def cmd_structure(args) -> int:
    a = parse_matrix(_read(args.matrix))
    chi = _factored_input(args, a)
    variant = MethodVariant.from_cli(args.variant, args.preprocess == "on")

    def run(idx: int) -> StructureReport:
        return jordan_blocks(a, chi, idx, variant=variant, stats=RunStats())

    if len(chi) > 1:
        with ThreadPoolExecutor(max_workers=min(len(chi), 8)) as pool:
            reports = list(pool.map(run, range(len(chi))))
    else:
        reports = [run(0)]
    certs = [_certify(a, rep) if args.certify else None for rep in reports]
    if args.json:
        payload = {
            "schema": 1,
            "n": a.rows,
            "variant": args.variant,
            "preprocess": args.preprocess,
            "factors": [
                {**rep.to_json_dict(), **({"certified": c} if c else {})}
                for rep, c in zip(reports, certs)
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for rep, c in zip(reports, certs):
            _print_report(rep, c)
    return 0


def cmd_oracle(args) -> int:
    a = parse_matrix(_read(args.matrix))
    f, m = _load_factor_with_multiplicity(args.factor, a)
    s = structure_by_ranks(a, f, m)
    print(" ".join(str(c) for c in s.counts))
    return 0


def cmd_charpoly(args) -> int:
    a = parse_matrix(_read(args.matrix))
    print(format_poly(charpoly(a)))
    return 0


def cmd_genmat(args) -> int:
    spec = benchmark_family(args.family, args.degree)
    a = generate(spec, args.seed)
    out = Path(args.out)
    out.write_text(format_matrix(a))
    factors_path = out.with_suffix(out.suffix + ".factors")
    factors_path.write_text(format_factored(spec.factored_charpoly()))
    meta = {
        "family": args.family,
        "degree": args.degree,
        "seed": args.seed,
        "n": a.rows,
        "factors": [
            {
                "poly": format_poly(f),
                "multiplicity": m,
                "counts": list(counts),
            }
            for (f, counts), m in zip(spec.factors, spec.multiplicities())
        ],
    }
    meta_path = out.with_suffix(out.suffix + ".json")
    meta_path.write_text(json.dumps(meta, indent=2) + "\n")
    print(f"wrote {out} ({a.rows}x{a.cols}), factors to {factors_path}, spec to {meta_path}")
    return 0


def cmd_chains(args) -> int:
    a = parse_matrix(_read(args.matrix))
    f, m = _load_factor_with_multiplicity(args.factor, a)
    u = parse_vector(_read(args.vector))
    if len(u) != a.rows:
        raise InconsistencyError("input", f"vector length {len(u)} != matrix size {a.rows}")
    fa = eval_matrix(f, a)
    ell, _ = rank_of(fa, u, cap=max(m, 1))
    if ell == 0:
        raise InconsistencyError("input", "the zero vector has no chain")
    chain = chain_witness(a, f, u, ell)
    ok = verify_chain(a, f, chain)
    if args.json:
        payload = {
            "schema": 1,
            "rank": ell,
            "verified": ok,
            "vectors": [
                [format_poly(e.value) for e in vec_.entries] for vec_ in chain.vectors
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"rank: {ell}")
        print(f"verified: {'true' if ok else 'false'}")
        for k, vec_ in zip(range(ell, 0, -1), chain.vectors):
            print(f"entry {k}")
            for e in vec_.entries:
                print(format_poly(e.value))
            print()
    return 0


def _bench_cell(spec, seed: int, variant: MethodVariant, repeat: int) -> dict:
    """Mean phase seconds over ``repeat`` runs across all of the family's
    factors; the matrix is regenerated once per cell."""
    a = generate(spec, seed)
    chi = spec.factored_charpoly()
    sums = {p: 0.0 for p in PHASES}
    for _ in range(repeat):
        stats = RunStats()
        for idx in range(len(chi)):
            jordan_blocks(a, chi, idx, variant=variant, stats=stats)
        for p in PHASES:
            sums[p] += stats.seconds.get(p, 0.0)
    return {p: round(sums[p] / repeat, 6) for p in PHASES}


def cmd_bench(args) -> int:
    degrees = [int(tok) for tok in args.degrees.split(",") if tok.strip()]
    if args.variants == "ALL":
        variant_tokens = ["full", "alg6", "alg6-matrix"]
    else:
        variant_tokens = [tok.strip() for tok in args.variants.split(",") if tok.strip()]
    rows: list[dict] = []
    for d in degrees:
        spec = benchmark_family(args.family, d)
        n = spec.size()
        for token in variant_tokens:
            for preprocess in (False, True):
                row = {
                    "family": args.family,
                    "d": d,
                    "n": n,
                    "variant": token,
                    "preprocess": "on" if preprocess else "off",
                }
                try:
                    cell = _bench_cell(
                        spec, args.seed, MethodVariant.from_cli(token, preprocess), args.repeat
                    )
                    row.update({p: cell[p] for p in PHASES})
                    if not preprocess:
                        row["preprocessing"] = "NA"
                except Exception as exc:  # per-cell failures recorded, not fatal
                    print(f"bench cell failed ({token}, d={d}): {exc}", file=sys.stderr)
                    row.update({p: "NA" for p in PHASES})
                rows.append(row)
    out = Path(args.out)
    with out.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER.split(","))
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    print(f"wrote {out}")
    if not args.no_figure:
        from .plots import render_bench_figure, render_phase_figure

        fig = render_bench_figure(rows, out.with_suffix(".png"))
        phases_fig = render_phase_figure(rows, out.with_suffix(".phases.png"))
        print(f"wrote {fig} and {phases_fig}")
    print()
    print(format_bench_table(rows))
    return 0


def format_bench_table(rows) -> str:
    """Rows grouped by variant, then preprocessing off/on blocks, one line
    per size, like the published timing tables."""
    cols = ["Size(A)", "f1(A)", "AnnihPol", "KrylovGS", "Preprocessing", "JKElim", "Total"]
    keys = ["n", "f1A", "annihpol", "krylovgs", "preprocessing", "jkelim", "total"]
    lines = []
    for variant in dict.fromkeys(r["variant"] for r in rows):
        lines.append(f"variant: {variant}")
        for preprocess in ("off", "on"):
            sub = [r for r in rows if r["variant"] == variant and r["preprocess"] == preprocess]
            if not sub:
                continue
            lines.append(f"  preprocessing {preprocess}")
            lines.append("    " + "  ".join(f"{c:>13}" for c in cols))
            for r in sorted(sub, key=lambda r: int(r["n"])):
                cells = []
                for k in keys:
                    v = r[k]
                    if v == "NA":
                        cells.append("---")
                    elif isinstance(v, float):
                        cells.append(f"{v:.2f}" if v >= 0.01 else f"{v:.2E}")
                    else:
                        cells.append(str(v))
                lines.append("    " + "  ".join(f"{c:>13}" for c in cells))
        lines.append("")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordankrylov",
        description="Exact Jordan block structure of rational matrices",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("structure", help="block structure per irreducible factor")
    p.add_argument("--matrix", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--factors", help="factored characteristic polynomial file")
    src.add_argument(
        "--squarefree",
        action="store_true",
        help="derive factors from the squarefree decomposition of the characteristic polynomial",
    )
    p.add_argument(
        "--assume-irreducible",
        action="store_true",
        help="assert that every squarefree part is irreducible",
    )
    p.add_argument("--variant", choices=["full", "alg6", "alg6-matrix"], default="alg6")
    p.add_argument("--preprocess", choices=["on", "off"], default="off")
    p.add_argument("--certify", action="store_true", help="cross-check with the oracle and verify chains")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("oracle", help="structure from ranks of powers (brute force)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--factor", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("charpoly", help="characteristic polynomial")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("genmat", help="generate a benchmark family matrix")
    p.add_argument("--family", required=True, choices=list(FAMILY_NAMES))
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_genmat)

    p = sub.add_parser("chains", help="symbolic chain of a generalized eigenvector")
    p.add_argument("--matrix", required=True)
    p.add_argument("--factor", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_chains)

    p = sub.add_parser("bench", help="phase timings over a benchmark family")
    p.add_argument("--family", required=True, choices=list(FAMILY_NAMES))
    p.add_argument("--degrees", required=True, help="comma-separated factor degrees")
    p.add_argument("--variants", default="ALL", help="ALL or comma-separated variant names")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--no-figure", action="store_true", help="skip the figures next to the CSV")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
