"""Command-line front end.

Exit status 0 on success, 1 when the input is malformed, 2 when the
computation is refused (cover conditions fail, the resolution is too long
for the K-groups to be determined, or Koszul operators do not commute).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .covers import Report
from .errors import (BasisError, ClosureError, ConditionError, StructureError, UnsupportedError,
                     ValidationError)
from .families import graph, nq, raam, tiling
from .homology import ChainComplex, IntMatrix, koszul_complex
from .ktheory import UNDETERMINED, KResult


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class Refusal(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _load(args, required=True):
    if args.input and args.data:
        raise ValidationError("give either --input or inline JSON, not both")
    try:
        if args.input:
            text = Path(args.input).read_text()
        elif args.data:
            text = args.data
        elif not required:
            return None
        else:
            text = sys.stdin.read()
        data = json.loads(text)
    except OSError as exc:
        raise ValidationError(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError("input must be a JSON object")
    return data


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _kresult_out(res: KResult, fmt: str) -> str:
    if res.status == UNDETERMINED:
        raise Refusal("K-groups not determined by the homology", res.to_json())
    return _dump(res.to_json()) if fmt == "json" else res.render()


def cmd_graph(args) -> str:
    G = graph.GraphDesc.from_json(_load(args))
    return _kresult_out(graph.graph_ktheory(G, check=args.check), args.format)


def cmd_tiling(args) -> str:
    data = _load(args)
    T = tiling.TilingDesc.from_json(data)
    depths = args.depths or data.get("depths") or [3, 4, 5]
    try:
        depths = [int(d) for d in depths]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"depths must be integers: {exc}") from exc
    st = tiling.tiling_ktheory(T, depths, check=args.check)
    if args.format == "json":
        return _dump(st.to_json())
    lines = []
    for N, r in zip(st.depths, st.results):
        lines.append(f"depth {N}: K0 = {r.K0}, K1 = {r.K1}")
    lines.append(f"stabilized: {'yes' if st.stabilized else 'no'}")
    lines.append(st.result.render())
    return "\n".join(lines)


def cmd_raam(args) -> str:
    R = raam.RaamDesc.from_json(_load(args))
    return _kresult_out(raam.raam_ktheory(R), args.format)


def cmd_nq(args) -> str:
    if args.primes:
        if args.input or args.data:
            raise ValidationError("give primes either with --primes or as JSON input")
        N = nq.NqDesc(tuple(args.primes))
    else:
        N = nq.NqDesc.from_json(_load(args))
    return _kresult_out(nq.nq_ktheory(N, check=args.check), args.format)


def _koszul_from_json(data) -> ChainComplex:
    ops = [IntMatrix([list(map(int, r)) for r in M], len(M[0]) if M else 0) for M in data["operators"]]
    m = int(data.get("m", ops[0].nrows if ops else 1))
    return koszul_complex(ops, m)


def cmd_complex(args) -> str:
    data = _load(args)
    if "complex" in data:
        data = data["complex"]
    try:
        if "operators" in data:
            C = _koszul_from_json(data)
        else:
            C = ChainComplex.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed complex: {exc}") from exc
    except StructureError as exc:
        raise ValidationError(str(exc)) from exc
    H = C.all_homology()
    if args.format == "json":
        return _dump({"complex": C.to_json(), "homology": [h.to_json() for h in H]})
    return "\n".join(f"H{k} = {h}" for k, h in enumerate(H))


def cmd_check_covers(args) -> str:
    data = _load(args, required=args.family != "nq" or not args.primes)
    if args.family == "graph":
        M = graph.graph_model(graph.GraphDesc.from_json(data))
        report = M.check(args.depth or 2)
    elif args.family == "tiling":
        M = tiling.tiling_model(tiling.TilingDesc.from_json(data))
        report = M.check((args.depth or 3) + 1)
    else:
        primes = args.primes or (data or {}).get("primes")
        report = nq.check_nq(nq.NqDesc(tuple(primes or ())))
    if not report.passed:
        raise Refusal("cover conditions failed", report.to_json())
    return _dump(report.to_json()) if args.format == "json" else str(report)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="indres", description="K-theory from independent resolutions of semilattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, check_default=None):
        sp.add_argument("data", nargs="?", help="inline JSON input (default: read --input or stdin)")
        sp.add_argument("--input", help="path to a JSON input file")
        sp.add_argument("--format", choices=("text", "json"), default="json")
        if check_default is not None:
            sp.add_argument("--check", dest="check", action="store_true", default=check_default,
                            help="verify cover conditions before computing")
            sp.add_argument("--no-check", dest="check", action="store_false")

    sp = sub.add_parser("graph", help="graph algebra K-theory from the vertex matrix")
    common(sp, check_default=True)
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("tiling", help="one-dimensional tiling complex over several depths")
    common(sp, check_default=True)
    sp.add_argument("--depths", type=_int_list, help="truncation depths, e.g. 3,4,5")
    sp.set_defaults(func=cmd_tiling)

    sp = sub.add_parser("raam", help="right-angled Artin monoid boundary quotient")
    common(sp)
    sp.set_defaults(func=cmd_raam)

    sp = sub.add_parser("nq", help="boundary quotient of N x| Q for a set of primes")
    common(sp, check_default=True)
    sp.add_argument("--primes", type=_int_list, help="comma-separated distinct primes")
    sp.set_defaults(func=cmd_nq)

    sp = sub.add_parser("complex", help="homology of a user-supplied chain complex")
    common(sp)
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("check-covers", help="run the four cover-condition checks")
    common(sp)
    sp.add_argument("--family", choices=("graph", "tiling", "nq"), required=True)
    sp.add_argument("--depth", type=int, help="universe size: path length or tiling depth")
    sp.add_argument("--primes", type=_int_list)
    sp.set_defaults(func=cmd_check_covers)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        if exc.payload is not None:
            print(_dump(exc.payload), file=sys.stderr)
        return 2
    except ConditionError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        if isinstance(exc.report, Report):
            print(_dump(exc.report.to_json()), file=sys.stderr)
        return 2
    except (UnsupportedError, ClosureError, BasisError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
