"""Command-line front end: ``tropbound <command> ...``.

Every command prints one JSON document (or a text rendering with
``--format text``). Exit codes: 0 success, 2 usage, 3 range/cap/domain,
4 failed mathematical precondition, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from tropbound import bounds as B
from tropbound import circuit as C
from tropbound import equivalence as E
from tropbound import generators as G
from tropbound import oracle as O
from tropbound import polynomial as P
from tropbound import semiring as sr
from tropbound.errors import CircuitError, DomainError, ToolkitError
from tropbound.polynomial import Polynomial


class UsageError(CircuitError):
    """Bad command-line input that argparse itself cannot catch."""


# --------------------------------------------------------------------------
# input / output helpers


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def load_poly(path: str, member: Optional[str] = None) -> Polynomial:
    data = _read_json(path)
    if isinstance(data, dict) and "members" in data:
        labels = [m["label"] for m in data["members"]]
        if member is None:
            if len(labels) != 1:
                raise UsageError(f"{path} holds a family; pick one with --member ({', '.join(labels[:5])}, ...)")
            member = labels[0]
        for m in data["members"]:
            if m["label"] == member:
                data = m["polynomial"]
                break
        else:
            raise UsageError(f"no member {member!r} in {path}")
    if isinstance(data, dict) and "subject" in data and "terms" not in data:
        data = data["subject"]
    try:
        return Polynomial.from_json(data)
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"{path} is not a polynomial: {exc}") from None


def load_circuit(path: str) -> C.Circuit:
    return C.Circuit.from_json(_read_json(path))


def load_graph(path: str) -> G.Graph:
    return G.Graph.from_json(_read_json(path))


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, float) and math.isinf(obj):
        return sr.format_value(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [_jsonable(v) for v in sorted(obj)]
    return obj


def _text(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            sub = _text(v, indent + 1)
            lines.append(f"{pad}-" + (" " + sub[0].strip() if sub else ""))
            lines.extend(sub[1:])
        return lines
    return [f"{pad}{obj}"]


def emit(args, payload, text: Optional[Callable[[], str]] = None) -> None:
    payload = _jsonable(payload)
    if args.format == "text":
        out = text() if text is not None else "\n".join(_text(payload))
    else:
        out = json.dumps(payload, sort_keys=True)
    # one write per command keeps the output atomic
    sys.stdout.write(out + "\n")
    sys.stdout.flush()


def _parse_values(text: str, id) -> list:
    s = sr.get(id)
    try:
        return [s.check(sr.parse_value(t.strip())) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"bad value list {text!r}: {exc}") from None


def _parse_ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _parse_edges(text: str) -> List[tuple]:
    out = []
    for item in text.split(","):
        if not item.strip():
            continue
        try:
            u, v = item.split("-")
            out.append((int(u), int(v)))
        except ValueError:
            raise UsageError(f"bad edge {item!r}; use u-v") from None
    return out


# --------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "fg":
        _need(args, "graph")
    elif fam == "bilinear":
        _need(args, "matrix")
    elif fam == "naive":
        _need(args, "poly")
    if fam == "perm":
        out = G.gen_perm(args.n)
    elif fam == "hc":
        out = G.gen_hc(args.n)
    elif fam == "clique":
        out = G.gen_clique(args.n, args.k)
    elif fam == "st":
        out = G.spanning_tree_undirected(args.n) if args.undirected else G.gen_spanning_tree(args.n)
    elif fam == "stconn":
        out = G.gen_stconn(args.n)
    elif fam == "layered-stconn":
        out = G.gen_layered_stconn(args.n, args.d)
    elif fam == "triangle":
        out = G.gen_triangle(args.n)
    elif fam == "mp":
        out = G.gen_mp(args.n)
    elif fam == "apsp":
        out = G.gen_apsp(args.n)
    elif fam == "conn":
        out = G.gen_conn(args.n)
    elif fam == "fg":
        out = G.gen_fG(load_graph(args.graph))
    elif fam == "bilinear":
        out = G.gen_bilinear(_read_json(args.matrix))
    elif fam == "random-poly":
        out = G.random_polynomial(args.n, args.terms, args.maxdeg, args.seed,
                                  multilinear=args.multilinear, homogeneous=args.homogeneous)
    elif fam == "graph":
        emit(args, G.random_graph(args.n, args.p, args.seed).to_json())
        return 0
    elif fam in ("fw", "bf", "naive", "random-circuit"):
        if fam == "fw":
            c = G.build_floyd_warshall(args.n)
        elif fam == "bf":
            c = G.build_bellman_ford(args.n)
        elif fam == "naive":
            c = G.build_naive(load_poly(args.poly))
        else:
            c = G.random_circuit(args.n, args.gates, args.seed)
        emit(args, c.to_json(), lambda: f"circuit: {c.n_vars} variables, size {c.size}, "
                                        f"depth {C.depth(c)}, {len(c.outputs)} outputs")
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    if isinstance(out, G.PolyFamily):
        emit(args, out.to_json(), lambda: "\n".join(f"{lab}: {f.to_string()}" for lab, f in out.members))
    else:
        emit(args, out.to_json(), lambda: out.to_string())
    return 0


# --------------------------------------------------------------------------
# bound


def _cert_text(cert: B.Certificate) -> str:
    lines = [f"{cert.kind}: {cert.applies_to} >= {cert.value}"]
    if cert.note:
        lines.append(f"note: {cert.note}")
    for src, dst, tag in cert.chain:
        lines.append(f"step: {src} -> {dst} [{tag}]")
    return "\n".join(lines)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'kind', '')} needs " +
                         ", ".join("--" + n.replace("_", "-") for n in missing))


_BOUND_INPUTS = {"schnorr": ("poly",), "klfree": ("poly",), "rectangle": ("poly",), "expander": ("graph",),
                 "depth": ("poly",), "transfer": ("cert", "poly", "target"), "verify": ("cert",)}


def cmd_bound(args) -> int:
    kind = args.kind
    _need(args, *_BOUND_INPUTS[kind])
    if kind == "schnorr":
        cert = B.max_separated(load_poly(args.poly, args.member), "greedy" if args.greedy else "exact")
    elif kind == "klfree":
        cert = B.kl_bound(load_poly(args.poly, args.member), args.k, args.l)
    elif kind == "rectangle":
        cert = B.rectangle_bound(load_poly(args.poly, args.member), args.measure)
    elif kind == "expander":
        cert = B.expander_bound(load_graph(args.graph))
    elif kind == "depth":
        cert = B.depth_lower_bound(load_poly(args.poly, args.member))
    elif kind == "transfer":
        src = B.Certificate.from_json(_read_json(args.cert))
        cert = B.transfer(src, load_poly(args.poly, args.member), args.target)
    elif kind == "verify":
        cert = B.Certificate.from_json(_read_json(args.cert))
        ok = B.verify_certificate(cert)
        emit(args, {"kind": cert.kind, "value": cert.value, "verified": ok},
             lambda: f"{cert.kind} {cert.value}: {'verified' if ok else 'REJECTED'}")
        return 0 if ok else 4
    else:  # pragma: no cover
        raise UsageError(f"unknown bound {kind}")
    emit(args, cert.to_json(), lambda: _cert_text(cert))
    return 0


# --------------------------------------------------------------------------
# eval / produce / decompose / equiv / oracle


def cmd_eval(args) -> int:
    c = load_circuit(args.circuit)
    s = sr.get(args.semiring)
    a = _parse_values(args.assign, s.id)
    if len(a) != c.n_vars:
        raise UsageError(f"circuit has {c.n_vars} variables, got {len(a)} values")
    out = C.eval_circuit(c, s.id, a)
    emit(args, {"semiring": s.id.value, "outputs": [sr.format_value(v) for v in out]},
         lambda: " ".join(str(sr.format_value(v)) for v in out))
    return 0


def cmd_produce(args) -> int:
    c = load_circuit(args.circuit)
    if args.dot:
        sys.stdout.write(C.to_dot(c))
        sys.stdout.flush()
        return 0
    f = C.produce_output(c, args.output, args.cap)
    emit(args, f.to_json(), lambda: f.to_string())
    return 0


def cmd_decompose(args) -> int:
    c = load_circuit(args.circuit)
    f = C.produce_output(c, args.output, args.cap)
    if args.how == "sop":
        parts = C.sum_of_products_decompose(c, args.cap, args.output, args.measure)
        pairs = [(p.a, p.b) for p in parts]
        payload = {"kind": "sum-of-products", "measure": args.measure,
                   "parts": [{"gate": p.gate, "a": p.a.to_json(), "b": p.b.to_json()} for p in parts]}
    else:
        if args.gates is None and args.edges is None:
            raise UsageError("cut decomposition needs --gates or --edges")
        nodes = _parse_ints(args.gates) if args.gates is not None else None
        edges = _parse_edges(args.edges) if args.edges is not None else None
        pairs = C.cut_decompose(c, nodes=nodes, edges=edges, cap=args.cap, output=args.output)
        payload = {"kind": "cut", "parts": [{"a": a.to_json(), "b": b.to_json()} for a, b in pairs]}
    union = C.union_of_products(pairs, c.n_vars, args.cap)
    payload["product_gates"] = len(c.product_gates)
    payload["n_parts"] = len(pairs)
    payload["union_check"] = "pass" if union.same_monomials(f) else "fail"
    emit(args, payload, lambda: f"{payload['kind']}: {len(pairs)} parts, union check {payload['union_check']}")
    return 0 if payload["union_check"] == "pass" else 5


def cmd_equiv(args) -> int:
    f, h = load_poly(args.a), load_poly(args.b)
    if f.n_vars != h.n_vars:
        raise DomainError(f"variable universes differ ({f.n_vars} vs {h.n_vars})")
    if args.trials:
        v = E.equivalent(f, h, args.semiring)
        if v.value is None:
            v = E.random_equivalence_test(f, h, args.semiring, E.EXHAUSTIVE_DOMAINS[sr.get(args.semiring).id],
                                          args.trials, args.seed)
    else:
        v = E.equivalent(f, h, args.semiring)
    payload = v.to_json()
    payload["equivalent"] = v.value
    emit(args, payload, lambda: f"{v.label} ({v.method})")
    return 0


def cmd_oracle(args) -> int:
    f = load_poly(args.poly, args.member)
    if args.cert:
        cert = B.Certificate.from_json(_read_json(args.cert))
        rep = O.verify_certificate(f, cert, args.max_size)
        emit(args, rep.to_json(), lambda: f"{rep.to_json()['status']}: certificate {rep.certificate_value}, "
                                          f"oracle {rep.oracle_value}")
        return 0 if rep.ok is not False else 5
    if args.semiring is None:
        res = O.produce_search(f, args.max_size)
    else:
        dom = _parse_values(args.domain, args.semiring) if args.domain else None
        res = O.compute_search(f, args.semiring, args.max_size, dom)
    emit(args, res.to_json(), lambda: f"{res.mode}: {res.value}" + ("" if res.exact else " (not exact)"))
    return 0


# --------------------------------------------------------------------------
# report


def _oracle_status(f: Polynomial, cert: B.Certificate, max_size: int = 6) -> dict:
    if len(f.variables()) > O.MAX_VARS or cert.applies_to not in O.ORACLE_MEASURES:
        return {"status": "not oracle-checkable"}
    rep = O.verify_certificate(f, cert, max_size)
    return rep.to_json()


def _row(table, family, n, tag, caps, measure, value, expected=None, cert=None, oracle=None, extra=None):
    row = {"table": table, "family": family, "size": n, "tag": tag, "caps": caps,
           "measure": measure, "value": value, "expected": expected}
    if expected is not None:
        row["matches"] = value == expected
    if cert is not None:
        row["certificate"] = {"kind": cert.kind, "value": cert.value, "applies_to": cert.applies_to,
                              "chain": [list(s) for s in cert.chain]}
    row["oracle"] = oracle or {"status": "not run"}
    if extra:
        row.update(extra)
    return row


def _skipped(table, family, n, tag, caps, why):
    return {"table": table, "family": family, "size": n, "tag": tag, "caps": caps,
            "status": f"skipped (cap): {why}"}


def build_report(which: str = "all") -> List[dict]:
    rows: List[dict] = []

    def guarded(table, family, n, tag, caps, fn):
        try:
            rows.extend(fn())
        except ToolkitError as exc:
            rows.append(_skipped(table, family, n, tag, caps, str(exc)))

    if which in ("all", "table1"):
        # spanning trees: homogeneous, so bounds on producing circuits hold for
        # every tropical measure; over Bool they collapse to connectivity
        def st(n):
            def go():
                f = G.gen_spanning_tree(n)
                base = B.max_separated(f, "exact") if n == 3 else B.rectangle_bound(f)
                cert = B.transfer(base, f, "min-size")
                eq = E.equivalent(G.spanning_tree_undirected(n), G.gen_conn(n), "bool") if n <= 4 else None
                return [_row(1, "ST", n, "homogeneous-" + base.kind, "n<=5", "min-size", cert.value,
                             cert=cert, oracle=_oracle_status(f, base),
                             extra={"bool_equals_conn": None if eq is None else eq.value,
                                    "bool_upper_circuit": "bellman-ford",
                                    "bool_upper_size": G.build_bellman_ford(n).size})]
            return go
        for n in (3, 4, 5):
            guarded(1, "ST", n, "homogeneous-bound", "n<=5", st(n))

        def stconn(n):
            def go():
                f = G.gen_stconn(n)
                henv = P.higher_envelope(f)
                cert = B.transfer(B.rectangle_bound(henv), f, "max-size")
                return [_row(1, "STCONN", n, "envelope-rectangle", "n<=5", "max-size", cert.value,
                             cert=cert, oracle=_oracle_status(f, cert),
                             extra={"min_upper_circuit": "bellman-ford",
                                    "min_upper_size": G.build_bellman_ford(n).size})]
            return go
        for n in (4, 5):
            guarded(1, "STCONN", n, "envelope-rectangle", "n<=5", stconn(n))

        def mp(n):
            def go():
                tri = G.gen_triangle(n)
                cert = B.max_separated(tri, "exact")
                return [_row(1, "MP", n, "separated-triangle", "n<=3", "produce-size", cert.value,
                             expected=n**3 - 1, cert=cert, oracle=_oracle_status(tri, cert),
                             extra={"fw_gates": G.floyd_warshall_size(n),
                                    "fw_built_size": G.build_floyd_warshall(n).size})]
            return go
        for n in (2, 3):
            guarded(1, "MP", n, "separated-triangle", "n<=3", mp(n))

        def perm_hc(name, gen, n):
            def go():
                f = gen(n)
                cert = B.transfer(B.rectangle_bound(f), f, "min-size")
                return [_row(1, name, n, "homogeneous-rectangle", "n<=6", "min-size", cert.value,
                             cert=cert, oracle=_oracle_status(f, cert))]
            return go
        for n in (4, 5, 6):
            guarded(1, "PERM", n, "homogeneous-rectangle", "n<=6", perm_hc("PERM", G.gen_perm, n))
        for n in (5, 6):
            guarded(1, "HC", n, "homogeneous-rectangle", "n<=6", perm_hc("HC", G.gen_hc, n))

        def clique(n):
            def go():
                f = G.gen_clique(n, 3)
                cert = B.transfer(B.max_separated(f, "exact"), f, "min-size")
                return [_row(1, "Clique_k=3", n, "separated-clique", "n<=6", "min-size", cert.value,
                             expected=math.comb(n, 3) - 1, cert=cert, oracle=_oracle_status(f, cert))]
            return go
        for n in (4, 5, 6):
            guarded(1, "Clique_k=3", n, "separated-clique", "n<=6", clique(n))

    if which in ("all", "table2"):
        def separated():
            f = G.gen_triangle(2)
            cert = B.max_separated(f, "exact")
            return [_row(2, "triangle", 2, "separated", "n=2", "produce-size", cert.value,
                         expected=7, cert=cert)]
        guarded(2, "triangle", 2, "separated", "n=2", separated)

        def homogeneous():
            f = Polynomial.from_set(4, [P.monomial(0, 2), P.monomial(1, 3)])
            r = O.min_produce_size(f, 6)
            mn = O.min_compute_size(f, "min-nat", 6)
            mx = O.min_compute_size(f, "max-nat", 6)
            return [_row(2, "xu+yv", 2, "homogeneous-equalities", "4 vars, 6 gates", "produce-size", r,
                         expected=3, extra={"min_size": mn, "max_size": mx,
                                            "equal": r == mn == mx})]
        guarded(2, "xu+yv", 2, "homogeneous-equalities", "4 vars, 6 gates", homogeneous)

        def klfree():
            f = G.gen_clique(5, 3)
            cert = B.kl_bound(f, 1, 1)
            return [_row(2, "Clique_k=3", 5, "kl-free", "n=5", "produce-size", cert.value, cert=cert)]
        guarded(2, "Clique_k=3", 5, "kl-free", "n=5", klfree)

        def rect():
            f = G.gen_perm(6)
            cert = B.rectangle_bound(f)
            return [_row(2, "PERM", 6, "rectangle-density", "n=6", "produce-size", cert.value,
                         expected=15, cert=cert, extra={"r": cert.witness.get("r")})]
        guarded(2, "PERM", 6, "rectangle-density", "n=6", rect)

        def depth():
            out = []
            for n, d in ((2, 4), (4, 4)):
                f = G.gen_layered_stconn(n, d)
                cert = B.depth_lower_bound(f)
                closed = int(math.log2(d) * (1 + math.log2(n)))
                out.append(_row(2, "layered-STCONN", f"{n}x{d}", "depth-decrease", "n,d<=4", "depth",
                                cert.value, expected=closed, cert=cert))
            return out
        guarded(2, "layered-STCONN", "n,d<=4", "depth-decrease", "n,d<=4", depth)

        def expander():
            g = G.Graph.from_edges(8, [(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)])
            cert = B.expander_bound(g)
            return [_row(2, "f_G (8-node Moebius ladder)", 8, "expander-matching", "8 nodes",
                         "produce-size", cert.value, cert=cert,
                         extra={"matching_number": cert.witness["matching_number"]})]
        guarded(2, "f_G", 8, "expander-matching", "8 nodes", expander)
    return rows


def _report_text(rows: Sequence[dict]) -> str:
    lines = []
    for r in rows:
        head = f"T{r['table']} {r['family']:<14} {str(r['size']):<8} [{r['tag']}]"
        if "status" in r:
            lines.append(f"{head} {r['status']}")
            continue
        exp = "" if r.get("expected") is None else f" (expected {r['expected']})"
        orc = r["oracle"].get("status", "")
        lines.append(f"{head} {r['measure']} >= {r['value']}{exp}; oracle: {orc}; caps: {r['caps']}")
    return "\n".join(lines)


def cmd_report(args) -> int:
    rows = build_report(args.table)
    emit(args, {"rows": rows}, lambda: _report_text(_jsonable(rows)))
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="tropbound", parents=[common],
                                description="Tropical circuit lower-bound toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="emit a polynomial, family, graph or circuit")
    g.add_argument("family", choices=("perm", "hc", "clique", "st", "stconn", "layered-stconn", "triangle",
                                      "mp", "apsp", "conn", "fg", "bilinear", "random-poly", "graph",
                                      "fw", "bf", "naive", "random-circuit"))
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--terms", type=int, default=4)
    g.add_argument("--maxdeg", type=int, default=2)
    g.add_argument("--gates", type=int, default=8)
    g.add_argument("--multilinear", action="store_true")
    g.add_argument("--homogeneous", action="store_true")
    g.add_argument("--undirected", action="store_true",
                   help="st: rename edge variables to K_n edges (same universe as conn)")
    g.add_argument("--graph")
    g.add_argument("--matrix")
    g.add_argument("--poly")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bound", parents=[common], help="compute a lower-bound certificate")
    b.add_argument("kind", choices=("schnorr", "klfree", "rectangle", "expander", "depth", "transfer", "verify"))
    b.add_argument("--poly")
    b.add_argument("--member")
    b.add_argument("--graph")
    b.add_argument("--cert")
    b.add_argument("--target", choices=B.MEASURES)
    mode = b.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact maximum clique (default)")
    mode.add_argument("--greedy", action="store_true")
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--l", type=int, default=1)
    b.add_argument("--measure", choices=("degree", "length"), default="degree")
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("report", parents=[common], help="desk-scale summary tables")
    r.add_argument("--table", choices=("all", "table1", "table2"), default="all")
    r.set_defaults(func=cmd_report)

    e = sub.add_parser("eval", parents=[common], help="evaluate a circuit")
    e.add_argument("--circuit", required=True)
    e.add_argument("--semiring", required=True, choices=[s.value for s in sr.SemiringId])
    e.add_argument("--assign", required=True, help="comma-separated values, inf/-inf allowed")
    e.set_defaults(func=cmd_eval)

    pr = sub.add_parser("produce", parents=[common], help="formal polynomial of a circuit output")
    pr.add_argument("--circuit", required=True)
    pr.add_argument("--output", type=int, default=0)
    pr.add_argument("--cap", type=int, default=C.DEFAULT_CAP)
    pr.add_argument("--dot", action="store_true")
    pr.set_defaults(func=cmd_produce)

    d = sub.add_parser("decompose", parents=[common], help="sum-of-products or cut decomposition")
    d.add_argument("how", choices=("sop", "cut"))
    d.add_argument("--circuit", required=True)
    d.add_argument("--output", type=int, default=0)
    d.add_argument("--cap", type=int, default=C.DEFAULT_CAP)
    d.add_argument("--measure", choices=("degree", "length"), default="degree")
    d.add_argument("--gates", help="comma-separated node cut")
    d.add_argument("--edges", help="comma-separated edge cut, each u-v")
    d.set_defaults(func=cmd_decompose)

    q = sub.add_parser("equiv", parents=[common], help="semantic equivalence of two polynomials")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--semiring", required=True, choices=[s.value for s in sr.SemiringId])
    q.add_argument("--trials", type=int, default=0)
    q.set_defaults(func=cmd_equiv)

    o = sub.add_parser("oracle", parents=[common], help="exact minimal circuit size (tiny inputs)")
    o.add_argument("--poly", required=True)
    o.add_argument("--member")
    o.add_argument("--max-size", type=int, default=5)
    o.add_argument("--semiring", choices=[s.value for s in sr.SemiringId],
                   help="compute over this semiring; omit to count producing circuits")
    o.add_argument("--domain", help="comma-separated grid values")
    o.add_argument("--cert", help="check this certificate against the oracle")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        sys.stderr.write(f"tropbound: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except (KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"tropbound: bad input: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
