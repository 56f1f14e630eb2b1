"""Command line interface.

    cocal classify "A_{4,8}+e(1,1)" [--explain] [--certificate out.json]
    cocal construct "A_{4,8}+e(1,1)" -o cert.json [--route]
    cocal verify cert.json
    cocal cohomology "A_{4,8}"
    cocal catalog list [--dim 4]
    cocal sweep [--params grid.json] [--jobs 4] [--no-certificates]

Every command accepts --json.  Exit codes: 0 exists/valid, 1 not-exists/invalid, 2 error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import catalog
from .catalog import AlgebraId, CatalogError
from .certificate import Certificate, check_certificate
from .classify import Verdict, decide, decide_5d_r2, explain
from .construct import ConstructionError, construct, construct_5d_r2
from .lie import cohomology

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, obj, text: str) -> None:
    print(json.dumps(obj, indent=2) if args.json else text)


def _pair(text: str):
    """(kind, g_a, g_b) with kind '4+3' or '5+2'."""
    try:
        return ("4+3",) + catalog.split_pair(text, (4, 3))
    except (CatalogError, ValueError, KeyError):
        pass
    try:
        a, b = catalog.split_pair(text, (5, 2))
    except (CatalogError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read {text!r} as g4+g3 or g5+r2: {exc}") from exc
    if b.family != "r2":
        raise UsageError("a 5-dimensional summand is only supported together with r2")
    return "5+2", a, b


def _verdict(kind, a, b) -> Verdict:
    if kind == "4+3":
        return decide(a, b)
    g5 = a.algebra()
    return decide_5d_r2(g5)


def _certificate(kind, a, b) -> Certificate:
    if kind == "4+3":
        return construct(a, b)
    return construct_5d_r2(a.algebra())


def _write(path: str, cert: Certificate) -> None:
    Path(path).write_text(cert.dumps() + "\n")


# ------------------------------------------------------------------ commands

def cmd_classify(args) -> int:
    kind, a, b = _pair(args.pair)
    v = _verdict(kind, a, b)
    out = v.to_json()
    if v.exists and args.certificate:
        cert = _certificate(kind, a, b)
        _write(args.certificate, cert)
        out["certificate"] = args.certificate
    if v.exists:
        text = f"Exists ({v.branch}, route {v.route})"
    else:
        text = f"NotExists ({v.branch}, obstruction {v.obstruction})"
    if args.explain:
        text = explain(v)
    _emit(args, out, text)
    return EXIT_YES if v.exists else EXIT_NO


def cmd_construct(args) -> int:
    kind, a, b = _pair(args.pair)
    v = _verdict(kind, a, b)
    if not v.exists:
        _emit(args, v.to_json(), f"NotExists ({v.branch}, obstruction {v.obstruction})")
        return EXIT_NO
    cert = _certificate(kind, a, b)
    if args.output:
        _write(args.output, cert)
    if args.json:
        print(cert.dumps())
    elif args.route:
        print(cert.route)
    elif not args.output:
        print(cert.dumps())
    else:
        print(f"wrote {args.output} (route {cert.route}, {cert.evidence.to_json()['kind']} evidence)")
    return EXIT_YES


def cmd_verify(args) -> int:
    try:
        cert = Certificate.loads(Path(args.file).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.file}: not JSON ({exc})") from exc
    rep = check_certificate(cert.algebra, cert)
    out = {"ok": rep.ok, "closed": rep.closed, "orbit_ok": rep.orbit_ok, "reasons": rep.reasons,
           "evidence": cert.evidence.to_json()["kind"]}
    text = "valid" if rep.ok else "invalid"
    text += f" ({out['evidence']} evidence)"
    if rep.reasons:
        text += "\n" + "\n".join(f"  {r}" for r in rep.reasons)
    _emit(args, out, text)
    return EXIT_YES if rep.ok else EXIT_NO


def cmd_cohomology(args) -> int:
    try:
        aid = catalog.parse_name(args.name)
    except (CatalogError, ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    b = cohomology(aid.algebra())
    _emit(args, {"name": aid.name, "betti": b}, "(" + ",".join(map(str, b)) + ")")
    return EXIT_YES


def cmd_catalog(args) -> int:
    rows = []
    fx = catalog.fixtures()
    table = {3: fx["three_dim"], 4: fx["four_dim"]}
    for fam in catalog.families(args.dim):
        row = {"name": fam.name, "dim": fam.dim, "params": list(fam.params), "domain": fam.domain}
        cols = [r for r in table.get(fam.dim, []) if r["family"] == fam.name]
        if cols:
            row["fixtures"] = [{k: r[k] for k in ("when", "betti", "kernels", "derived", "q") if k in r}
                               for r in cols]
        rows.append(row)
    lines = []
    for r in rows:
        head = r["name"]
        if r["params"]:
            head += f"  params {','.join(r['params'])}"
            if r["domain"]:
                head += f"  ({r['domain']})"
        lines.append(head)
        for fx_row in r.get("fixtures", []):
            bits = [f"betti {tuple(fx_row['betti'])}"]
            if "when" in fx_row:
                bits.insert(0, f"when {fx_row['when']}")
            if "q" in fx_row:
                bits.append(f"q {fx_row['q']}")
            lines.append("    " + ", ".join(bits))
    _emit(args, rows, "\n".join(lines))
    return EXIT_YES


def _grid(params_file: str | None) -> tuple[list[AlgebraId], list[AlgebraId]]:
    if params_file is None:
        return catalog.sample_ids(4), catalog.sample_ids(3)
    try:
        requested = json.loads(Path(params_file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{params_file}: {exc}") from exc
    out = {3: [], 4: []}
    for fam_name, samples in requested.items():
        fam = catalog.family(fam_name)
        if fam.dim not in out:
            raise UsageError(f"{fam_name}: only 3- and 4-dimensional families form the grid")
        for s in samples or [[]]:
            vals = [Fraction(x) for x in s]
            if not fam.in_domain(vals):
                raise UsageError(f"{fam_name}{s}: parameters outside the family domain")
            out[fam.dim].append(catalog.make(fam.name, *vals))
    defaults = {3: catalog.sample_ids(3), 4: catalog.sample_ids(4)}
    for dim in (3, 4):
        given = {a.family for a in out[dim]}
        out[dim] += [a for a in defaults[dim] if a.family not in given]
    return out[4], out[3]


def _sweep_one(job):
    a, b, certify = job
    v = decide(a, b)
    row = {"pair": [a.name, b.name], "exists": v.exists, "branch": v.branch,
           "route": v.route, "obstruction": v.obstruction}
    if v.exists and certify:
        try:
            cert = construct(a, b)
            row["certificate"] = "pass" if check_certificate(cert.algebra, cert).ok else "fail"
        except ConstructionError as exc:
            row["certificate"] = "fail"
            row["error"] = str(exc)
    return row


def cmd_sweep(args) -> int:
    g4s, g3s = _grid(args.params)
    jobs = [(a, b, not args.no_certificates) for a in g4s for b in g3s]
    t0 = time.time()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_one, jobs, chunksize=8))
    else:
        rows = [_sweep_one(j) for j in jobs]
    elapsed = time.time() - t0
    tally = Counter((r["route"] or r["obstruction"], r["exists"]) for r in rows)
    certs = Counter(r.get("certificate") for r in rows if r["exists"])
    summary = {"pairs": len(rows), "exists": sum(r["exists"] for r in rows),
               "certificates": {"pass": certs.get("pass", 0), "fail": certs.get("fail", 0)},
               "seconds": round(elapsed, 2)}
    lines = [f"{'verdict':<10} {'route / obstruction':<32} count"]
    for (key, ex), n in sorted(tally.items(), key=lambda kv: (not kv[0][1], kv[0][0])):
        lines.append(f"{'Exists' if ex else 'NotExists':<10} {key:<32} {n}")
    lines.append(f"{summary['pairs']} pairs, {summary['exists']} exist; certificates "
                 f"{summary['certificates']['pass']} pass, {summary['certificates']['fail']} fail; "
                 f"{summary['seconds']} s")
    for r in rows:
        if r.get("certificate") == "fail":
            lines.append(f"  failed: {' + '.join(r['pair'])}: {r.get('error', 'verification failed')}")
    _emit(args, {"summary": summary, "rows": rows}, "\n".join(lines))
    return EXIT_YES if not certs.get("fail") else EXIT_NO


# ------------------------------------------------------------------ entry

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    p = _Parser(prog="cocal", description="Cocalibrated G2-structures on direct sums of Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="decide existence for g4+g3 or g5+r2")
    c.add_argument("pair")
    c.add_argument("--explain", action="store_true", help="print the decision trace")
    c.add_argument("--certificate", metavar="FILE", help="also write a certificate when one exists")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("construct", parents=[common], help="build a certificate")
    c.add_argument("pair")
    c.add_argument("-o", "--output", metavar="FILE")
    c.add_argument("--route", action="store_true", help="print the construction route")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("verify", parents=[common], help="check a certificate file")
    c.add_argument("file")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("cohomology", parents=[common], help="Betti numbers b1..bn")
    c.add_argument("name")
    c.set_defaults(func=cmd_cohomology)

    c = sub.add_parser("catalog", parents=[common], help="inspect the catalog")
    c.add_argument("action", choices=["list"])
    c.add_argument("--dim", type=int, choices=[1, 2, 3, 4, 5])
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("sweep", parents=[common], help="classify (and certify) the sample grid")
    c.add_argument("--params", metavar="FILE", help='JSON {"family": [[p1, ...], ...]} replacing the default samples')
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--no-certificates", action="store_true")
    c.set_defaults(func=cmd_sweep)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"cocal: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (CatalogError, ValueError, ConstructionError, LookupError) as exc:
        print(f"cocal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
