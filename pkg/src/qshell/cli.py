"""
Command-line front end.

Exit codes: 0 success, 1 computed result disagrees with the prediction,
2 resource cap exceeded, 3 axiom violation or malformed rank table,
4 unparseable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .errors import AxiomError, FormatError, ResourceCapError
from .gflin import factor_prime_power, parse_subspaces
from .homology import (euler_check, expected_sphere_homology, finite_space_homology,
                       order_complex, reduced_homology, report_json,
                       shelling_homology_prediction)
from .qcomplex import (QComplex, acyclicity_hypothesis, cone_apex, generate, is_shelling,
                       load_complex, q_sphere, shelling_via_order, sphere_link_check,
                       sphere_shelling, verify_interval_partition)
from .qmatroid import (bases, dual_basis_exchange, exchange_triples, independent_spaces,
                       parse_rank_table, uniform_matroid, verify_basis_axioms,
                       verify_independence_axioms, verify_rank_axioms)
from .subspace import check_cap, max_subspaces_from_env

EXIT_OK, EXIT_MISMATCH, EXIT_CAP, EXIT_AXIOM, EXIT_PARSE = 0, 1, 2, 3, 4
MAX_Q = 9


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    n: int | None = None
    k: int | None = None
    inputs: list[str] = field(default_factory=list)
    json_path: str | None = None
    report_format: str = "text"
    max_subspaces: int = 100_000
    seed: int = 0

    def params(self) -> dict:
        d = asdict(self)
        d.pop("json_path")
        return d


def _check_params(cfg: RunConfig):
    if cfg.q is not None:
        try:
            factor_prime_power(cfg.q)
        except ValueError as exc:
            raise ResourceCapError(str(exc)) from exc
        if cfg.q > MAX_Q:
            raise ResourceCapError(f"q={cfg.q} exceeds the supported maximum {MAX_Q}")
    if cfg.n is not None:
        if cfg.n < 1:
            raise ResourceCapError(f"n must be >= 1, got {cfg.n}")
        check_cap(cfg.n, cfg.q, cfg.max_subspaces)
    if cfg.k is not None and not 1 <= cfg.k <= (cfg.n or cfg.k):
        raise ResourceCapError(f"need 1 <= k <= n, got k={cfg.k}")


def _emit(cfg: RunConfig, doc: dict, text_lines: list[str], out):
    if cfg.report_format == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")
    if cfg.json_path:
        Path(cfg.json_path).write_text(json.dumps(doc, indent=2) + "\n")


def _homology_doc(cfg, report, K, kind, q, n, extra=None):
    ok = euler_check(K, report)
    return json.loads(report_json(report, q=q, n=n, complex_kind=kind, euler_ok=ok,
                                  params=cfg.params(), extra=extra)), ok


def cmd_sphere_homology(cfg: RunConfig, out=sys.stdout) -> int:
    _check_params(cfg)
    S = q_sphere(cfg.n, cfg.q)
    K = order_complex(S.puncture())
    got = reduced_homology(K)
    want = expected_sphere_homology(cfg.n, cfg.q)
    match = got == want
    doc, euler_ok = _homology_doc(cfg, got, K, "sphere", cfg.q, cfg.n,
                                  {"expected": want.degrees(), "match": match})
    lines = [
        f"punctured q-sphere S_{cfg.q}^{cfg.n - 1}: simplices per dimension {K.counts()}",
        f"computed: {got.describe()}",
        f"expected: {want.describe()}",
        f"euler: {'ok' if euler_ok else 'MISMATCH'}",
        f"result: {'match' if match else 'MISMATCH'}",
    ]
    _emit(cfg, doc, lines, out)
    return EXIT_OK if match and euler_ok else EXIT_MISMATCH


def _load_matroid(cfg: RunConfig):
    if cfg.inputs:
        text = Path(cfg.inputs[0]).read_text()
        M = parse_rank_table(text, cfg.max_subspaces)
        cfg.q, cfg.n = M.field.q, M.n
        return M
    _check_params(cfg)
    return uniform_matroid(cfg.k, cfg.n, cfg.q, cfg.max_subspaces)


def _shelling_summary(cx: QComplex, order) -> tuple[dict, list[str]]:
    cert = is_shelling(cx, order)
    t = len(order)
    doc = {
        "facets": t,
        "faces": len(cx),
        "shelling": cert.ok,
        "witnesses": [[i, j, k] for (i, j), k in sorted(cert.witnesses.items())],
        "violation": list(cert.violation) if cert.violation else None,
    }
    lines = [f"facets: {t}, faces: {len(cx)}",
             f"shelling: {'verified' if cert.ok else f'FAILS at (i, j) = {cert.violation}'}"]
    if cert.ok and t:
        lines.append("witnesses (i, j -> k): " + ", ".join(
            f"{i},{j}->{k}" for (i, j), k in sorted(cert.witnesses.items())))
        part = verify_interval_partition(cx, order)
        hyp = acyclicity_hypothesis(order, t)
        links = {i: sphere_link_check(order, i) for i in range(2, t + 1)}
        prefix = 1
        while prefix < t and hyp[prefix + 1]:
            prefix += 1
        doc.update({
            "interval_partition": part.ok,
            "interval_sizes": part.sizes,
            "acyclicity_hypothesis": {str(i): v for i, v in hyp.items()},
            "acyclic_prefix": prefix,
            "sphere_links": {str(i): v for i, v in links.items()},
        })
        lines += [
            f"interval partition: {'verified' if part.ok else part.violation}, sizes {part.sizes}",
            f"acyclicity hypothesis holds for i = 2..{prefix}" if prefix > 1
            else "acyclicity hypothesis: only the trivial prefix",
            "sphere links at i: " + (", ".join(str(i) for i, v in links.items() if v) or "none"),
        ]
    return doc, lines


def cmd_matroid_shell(cfg: RunConfig, out=sys.stdout) -> int:
    try:
        M = _load_matroid(cfg)
    except FormatError as exc:
        out.write(f"malformed rank table: {exc}\n")
        return EXIT_AXIOM
    rep = verify_rank_axioms(M)
    if not rep.ok:
        name = rep.failed()[0]
        out.write(f"axiom {name} violated, witness {rep.violations[name][0]}\n")
        return EXIT_AXIOM
    cx = independent_spaces(M)
    order = shelling_via_order(cx)
    doc, lines = _shelling_summary(cx, order)
    doc = {"version": __version__, "params": cfg.params(), "rank": M.matroid_rank, **doc}
    lines.insert(0, f"q-matroid on F_{M.field.q}^{M.n} of rank {M.matroid_rank}")
    _emit(cfg, doc, lines, out)
    return EXIT_OK if doc["shelling"] and doc.get("interval_partition", True) else EXIT_MISMATCH


def cmd_verify(cfg: RunConfig, kind: str, out=sys.stdout) -> int:
    path = cfg.inputs[0]
    try:
        text = Path(path).read_text()
        if kind == "rank-table":
            M = parse_rank_table(text, cfg.max_subspaces)
            field, n = M.field, M.n
        else:
            field, n, spaces = parse_subspaces(text)
            check_cap(n, field.q, cfg.max_subspaces)
    except FormatError as exc:
        out.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    reports, extra = [], {}
    if kind == "independents":
        reports.append(verify_independence_axioms(spaces, field, n))
    elif kind == "bases":
        reports.append(verify_basis_axioms(spaces, field, n))
    else:
        reports.append(verify_rank_axioms(M))
        if reports[0].ok:
            reports.append(verify_independence_axioms(independent_spaces(M).faces, field, n))
            reports.append(verify_basis_axioms(bases(M), field, n))
            count, failures = 0, []
            for B1, B2, y in exchange_triples(M):
                count += 1
                try:
                    dual_basis_exchange(M, B1, B2, y)
                except AxiomError as exc:
                    failures.append(f"{B1} {B2} {y}: {exc}")
            extra = {"exchange_triples": count, "exchange_failures": len(failures)}
    ok = all(r.ok for r in reports) and not extra.get("exchange_failures")
    doc = {"version": __version__, "params": cfg.params(), "ok": ok,
           "reports": [r.to_dict() for r in reports], **extra}
    lines = [line for r in reports for line in r.lines()]
    if extra:
        lines.append(f"dual basis exchange: {extra['exchange_triples']} triples, "
                     f"{extra['exchange_failures']} failures")
    lines.append(f"result: {'pass' if ok else 'FAIL'}")
    _emit(cfg, doc, lines, out)
    return EXIT_OK if ok else EXIT_AXIOM


def _complexes_for(cfg: RunConfig, order_mode: str):
    """Yield (label, complex, order) triples for explore-links."""
    if cfg.inputs:
        for path in cfg.inputs:
            field, n, spaces = parse_subspaces(Path(path).read_text())
            check_cap(n, field.q, cfg.max_subspaces)
            cx = generate(spaces, field, n)
            if order_mode == "file":
                order = tuple(dict.fromkeys(A for A in spaces if A in cx.facets))
            else:
                order = shelling_via_order(cx) if cx.is_pure else ()
            yield path, cx, order
        return
    _check_params(cfg)
    if cfg.k is not None:
        cx = independent_spaces(uniform_matroid(cfg.k, cfg.n, cfg.q, cfg.max_subspaces))
        yield f"uniform({cfg.k},{cfg.n},{cfg.q})", cx, shelling_via_order(cx)
    else:
        cx = q_sphere(cfg.n, cfg.q)
        if order_mode == "sphere" and cfg.n >= 2:
            order, _ = sphere_shelling(cfg.n, cfg.q)
        else:
            order = shelling_via_order(cx)
        yield f"sphere({cfg.n},{cfg.q})", cx, order


def explore_links(cx: QComplex, order) -> dict:
    """Which prefixes ell make the link-sphere homology prediction applicable."""
    t = len(order)
    result = {"facets": t, "pure": cx.is_pure, "shelling": False, "satisfying_ell": []}
    if not cx.is_pure or not t or set(order) != set(cx.facets):
        return result
    cert = is_shelling(cx, order)
    result["shelling"] = cert.ok
    if not cert.ok:
        return result
    links = {i: sphere_link_check(order, i) for i in range(2, t + 1)}
    for ell in range(1, t + 1):
        if not all(links[i] for i in range(ell + 1, t + 1)):
            continue
        prefix = generate(order[:ell])
        cone = cone_apex(prefix)
        acyclic = finite_space_homology(prefix).is_acyclic
        if acyclic:
            result["satisfying_ell"].append(
                {"ell": ell, "cone": bool(cone and cone.is_cone), "acyclic": acyclic})
    if result["satisfying_ell"]:
        ell = result["satisfying_ell"][0]["ell"]
        d = order[0].dim
        predicted = shelling_homology_prediction(d, cx.field.q, t, ell)
        computed = finite_space_homology(cx)
        result.update({"predicted": predicted.degrees(), "computed": computed.degrees(),
                       "prediction_holds": predicted == computed})
    return result


def cmd_explore_links(cfg: RunConfig, order_mode: str = "preceq", out=sys.stdout) -> int:
    docs, lines = [], []
    try:
        items = list(_complexes_for(cfg, order_mode))
    except FormatError as exc:
        out.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    for label, cx, order in items:
        res = explore_links(cx, order)
        res["label"] = label
        docs.append(res)
        ells = [e["ell"] for e in res["satisfying_ell"]]
        lines.append(f"{label}: facets {res['facets']}, shelling {res['shelling']}, "
                     f"hypotheses hold for ell in {ells or 'none'}"
                     + (f", prediction {'holds' if res['prediction_holds'] else 'FAILS'}"
                        if ells else ""))
    _emit(cfg, {"version": __version__, "params": cfg.params(), "complexes": docs}, lines, out)
    return EXIT_OK


def cmd_homology(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.inputs:
        try:
            cx, closed = load_complex(Path(cfg.inputs[0]).read_text())
        except FormatError as exc:
            out.write(f"parse error: {exc}\n")
            return EXIT_PARSE
        check_cap(cx.n, cx.field.q, cfg.max_subspaces)
        cfg.q, cfg.n = cx.field.q, cx.n
        kind, note = "file", [f"downward closure added faces: {closed}"]
    elif cfg.k is not None:
        _check_params(cfg)
        cx = independent_spaces(uniform_matroid(cfg.k, cfg.n, cfg.q, cfg.max_subspaces))
        kind, note = "uniform", []
    else:
        _check_params(cfg)
        cx = q_sphere(cfg.n, cfg.q)
        kind, note = "sphere", []
    K = order_complex(cx.puncture())
    rep = reduced_homology(K)
    doc, euler_ok = _homology_doc(cfg, rep, K, kind, cfg.q, cfg.n)
    lines = note + [f"simplices per dimension: {K.counts()}", f"homology: {rep.describe()}",
                    f"euler: {'ok' if euler_ok else 'MISMATCH'}"]
    _emit(cfg, doc, lines, out)
    return EXIT_OK if euler_ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qshell", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qshell {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", dest="json_path", metavar="PATH", help="also write the JSON report here")
        p.add_argument("--format", dest="report_format", choices=("text", "json"), default="text")
        p.add_argument("--max-subspaces", type=int, default=None,
                       help="enumeration cap (default: $QSHELL_MAX_SUBSPACES or 100000)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sphere-homology", help="homology of a punctured q-sphere vs. the closed form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)

    p = sub.add_parser("matroid-shell", help="shell the complex of a q-matroid")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--uniform", nargs=3, type=int, metavar=("K", "N", "Q"))
    g.add_argument("--rank-table", metavar="PATH")
    common(p)

    p = sub.add_parser("verify", help="run an axiom suite on a file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--independents", metavar="PATH")
    g.add_argument("--bases", metavar="PATH")
    g.add_argument("--rank-table", metavar="PATH")
    common(p)

    p = sub.add_parser("explore-links", help="search for complexes meeting the link-sphere hypotheses")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sphere", nargs=2, type=int, metavar=("N", "Q"))
    g.add_argument("--uniform", nargs=3, type=int, metavar=("K", "N", "Q"))
    g.add_argument("--from-file", nargs="+", metavar="PATH")
    p.add_argument("--order", choices=("preceq", "file", "sphere"), default="preceq",
                   help="facet order: tower order, as listed in the file, or facets through e_1 first")
    common(p)

    p = sub.add_parser("homology", help="reduced homology of a punctured complex")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--from-file", metavar="PATH")
    g.add_argument("--sphere", nargs=2, type=int, metavar=("N", "Q"))
    g.add_argument("--uniform", nargs=3, type=int, metavar=("K", "N", "Q"))
    common(p)
    return parser


def _config(args) -> RunConfig:
    cap = args.max_subspaces if args.max_subspaces is not None else max_subspaces_from_env()
    cfg = RunConfig(args.command, json_path=args.json_path, report_format=args.report_format,
                    max_subspaces=cap, seed=args.seed)
    if getattr(args, "n", None) is not None:
        cfg.n, cfg.q = args.n, args.q
    if getattr(args, "uniform", None):
        cfg.k, cfg.n, cfg.q = args.uniform
    if getattr(args, "sphere", None):
        cfg.n, cfg.q = args.sphere
    for name in ("rank_table", "independents", "bases"):
        if getattr(args, name, None):
            cfg.inputs = [getattr(args, name)]
    ff = getattr(args, "from_file", None)
    if ff:
        cfg.inputs = ff if isinstance(ff, list) else [ff]
    return cfg


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    try:
        if args.command == "sphere-homology":
            return cmd_sphere_homology(cfg, out)
        if args.command == "matroid-shell":
            return cmd_matroid_shell(cfg, out)
        if args.command == "verify":
            kind = next(k for k in ("independents", "bases", "rank_table") if getattr(args, k))
            return cmd_verify(cfg, kind.replace("_", "-"), out)
        if args.command == "explore-links":
            return cmd_explore_links(cfg, args.order, out)
        return cmd_homology(cfg, out)
    except ResourceCapError as exc:
        out.write(f"resource cap: {exc}\n")
        return EXIT_CAP
    except OSError as exc:
        out.write(f"cannot read input: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
