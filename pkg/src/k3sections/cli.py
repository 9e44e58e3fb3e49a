"""Command-line interface.

Subcommands: decide, threshold, witness (single spec) and scan, verify
(range surveys).  Data goes to stdout or --output; diagnostics and
warnings go to stderr.

Exit codes: 0 success; 1 usage error; 2 invalid or out-of-bounds input;
3 a verify run found a disagreement outside the documented delta = 0
pattern (a CI tripwire that should never fire); 4 arithmetic overflow.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .decision import Verdict, decide, delta, genus_threshold, splitting_witness
from .errors import ArithmeticOverflowError, InvalidInputError, K3SectionsError
from .lattice import MAX_INPUT, DivisorClass, SurfaceSpec
from .survey import (
    HYPERBOLIC_ONLY,
    AllGenera,
    ScanRange,
    ScanRecord,
    emit,
    scan,
    verify,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_TRIPWIRE = 3
EXIT_OVERFLOW = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) on a bad command line; usage problems are
    # exit code 1 here, so surface them as exceptions instead.
    def error(self, message):
        raise _UsageError(message)


def _span(text: str) -> tuple[int, int]:
    """Parse 'LO:HI' or a single 'N' (meaning N:N) into a pair of ints."""
    lo, sep, hi = text.partition(":")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected INT or LO:HI, got {text!r}")
    return lo_i, hi_i


def _genus_policy(text: str):
    if text == "hyperbolic":
        return HYPERBOLIC_ONLY
    return AllGenera(*_span(text))


def _check_bounds(value: int, lo: int, name: str) -> None:
    if not lo <= value <= MAX_INPUT:
        raise InvalidInputError(f"{name} must be in [{lo}, {MAX_INPUT}], got {value}")


def _fmt_class(dc: DivisorClass) -> str:
    if dc.b >= 0:
        return f"{dc.a}*H + {dc.b}*C"
    return f"{dc.a}*H - {-dc.b}*C"


def _class_dict(dc: Optional[DivisorClass]):
    return None if dc is None else {"a": dc.a, "b": dc.b}


def _verdict_dict(v: Verdict) -> dict:
    w = v.brute_force
    return {
        "n": v.spec.n,
        "d": v.spec.d,
        "g": v.spec.g,
        "delta": v.delta,
        "genus_threshold": v.genus_threshold,
        "closed_form": v.closed_form,
        "brute_force": None
        if w is None
        else {
            "a": w.klass.a,
            "b": w.klass.b,
            "degree": w.degree,
            "square": w.square,
            "complement_degree": w.complement_degree,
        },
        "lemma": {
            "r": v.lemma.r,
            "branch": v.lemma.branch.value,
            "a1": v.lemma.a1,
            "candidate": _class_dict(v.lemma.candidate),
            "condition_holds": v.lemma.condition_holds,
        },
        "bn_general_guaranteed": v.bn_general_guaranteed,
        "health": {
            "discriminant": v.health.discriminant,
            "hyperbolic": v.health.hyperbolic,
            "degree_zero_minus_two_class": _class_dict(
                v.health.degree_zero_minus_two_class
            ),
        },
        "agree": v.agree,
    }


def _threshold_lines(n: int, d: int, dlt: int, thr: int) -> list[str]:
    return [
        f"delta = {dlt} (distance from d = {d} to the nearest multiple of 2n = {2 * n})",
        f"genus threshold = (d^2 - delta^2)/(4n) = ({d * d} - {dlt * dlt})/{4 * n} = {thr}",
    ]


def _verdict_text(v: Verdict) -> str:
    n, d, g = v.spec.n, v.spec.d, v.spec.g
    lines = [
        f"S(n={n}, d={d}, g={g}): lattice Z*H + Z*C with H^2 = {2 * n}, "
        f"H.C = {d}, C^2 = {2 * g - 2}"
    ]
    lines += _threshold_lines(n, d, v.delta, v.genus_threshold)
    if v.closed_form:
        lines.append(
            f"threshold test: g = {g} >= {v.genus_threshold}  "
            "=>  some hyperplane section is reducible or non-reduced"
        )
    else:
        lines.append(
            f"threshold test: g = {g} < {v.genus_threshold}  "
            "=>  every hyperplane section is irreducible and reduced"
        )
    w = v.brute_force
    if w is not None:
        lines.append(
            f"witness: D = {_fmt_class(w.klass)} with deg D = {w.degree}, D^2 = {w.square}"
        )
        lines.append(
            f"splitting: H = D + D' with deg D = {w.degree}, "
            f"deg D' = {w.complement_degree} (sum 2n = {2 * n})"
        )
    else:
        lines.append(
            "witness: none (no D = a*H + b*C with 0 < deg D <= n and D^2 >= -2)"
        )
    lem = v.lemma
    rel = "<=" if lem.branch.value == "r<=n" else ">"
    verdict = ">= -2 (holds)" if lem.condition_holds else "< -2 (fails)"
    lines.append(
        f"residue candidate: r = {lem.r} {rel} n, candidate {_fmt_class(lem.candidate)} "
        f"squares {verdict}"
    )
    if v.bn_general_guaranteed:
        lines.append(
            "Brill-Noether: a general hyperplane section is a Brill-Noether general curve"
        )
    lines.append(
        "cross-check: threshold test and witness search "
        + ("agree" if v.agree else "DISAGREE")
    )
    return "\n".join(lines)


def _warn_health(v: Verdict) -> None:
    h = v.health
    if not h.hyperbolic:
        print(
            f"warning: intersection form is not hyperbolic "
            f"(discriminant {h.discriminant} >= 0); no embedded K3 surface "
            "has this lattice",
            file=sys.stderr,
        )
    dz = h.degree_zero_minus_two_class
    if dz is not None:
        print(
            f"warning: {_fmt_class(dz)} has degree 0 and square -2, so H "
            "cannot be very ample; no embedded surface realizes this spec",
            file=sys.stderr,
        )
    if not v.agree:
        print(
            "warning: threshold test and witness search disagree on this "
            "spec (the delta = 0 corner)",
            file=sys.stderr,
        )


def _cmd_decide(ns) -> int:
    v = decide(SurfaceSpec(ns.n, ns.d, ns.g))
    if not ns.no_warn:
        _warn_health(v)
    if ns.json:
        print(json.dumps(_verdict_dict(v), indent=2))
    else:
        print(_verdict_text(v))
    return EXIT_OK


def _cmd_threshold(ns) -> int:
    _check_bounds(ns.n, 2, "n")
    _check_bounds(ns.d, 1, "d")
    dlt = delta(ns.n, ns.d)
    thr = genus_threshold(ns.n, ns.d)
    if ns.json:
        print(
            json.dumps(
                {"n": ns.n, "d": ns.d, "delta": dlt, "genus_threshold": thr}, indent=2
            )
        )
    else:
        for line in _threshold_lines(ns.n, ns.d, dlt, thr):
            print(line)
        print(
            f"g >= {thr} admits a reducible or non-reduced hyperplane section; "
            f"g < {thr} guarantees Brill-Noether general sections"
        )
    return EXIT_OK


def _cmd_witness(ns) -> int:
    v = decide(SurfaceSpec(ns.n, ns.d, ns.g))
    if not ns.no_warn:
        _warn_health(v)
    w = v.brute_force
    if ns.json:
        payload = {
            "n": ns.n,
            "d": ns.d,
            "g": ns.g,
            "witness": None,
            "splitting": None,
        }
        if w is not None:
            payload["witness"] = {
                "a": w.klass.a,
                "b": w.klass.b,
                "degree": w.degree,
                "square": w.square,
                "complement_degree": w.complement_degree,
            }
            payload["splitting"] = [
                {"a": part.a, "b": part.b, "degree": deg}
                for part, deg in splitting_witness(v.spec, w)
            ]
        print(json.dumps(payload, indent=2))
    elif w is None:
        print("none")
    else:
        print(f"witness: D = {_fmt_class(w.klass)} with deg D = {w.degree}, D^2 = {w.square}")
        (_, deg1), (comp, deg2) = splitting_witness(v.spec, w)
        print(
            f"splitting: H = D + D' with D' = {_fmt_class(comp)}, "
            f"deg {deg1} + {deg2} = {2 * ns.n}"
        )
    return EXIT_OK


def _build_range(ns) -> ScanRange:
    n_lo, n_hi = ns.n
    d_lo, d_hi = ns.d
    return ScanRange(n_lo, n_hi, d_lo, d_hi, ns.g)


def _open_output(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _cmd_scan(ns) -> int:
    rng = _build_range(ns)
    stream, close = _open_output(ns.output)
    try:
        emit(scan(rng, jobs=ns.jobs), ns.format, stream)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def _expected_disagreement(rec: ScanRecord) -> bool:
    """Does this disagreement match the documented delta = 0 pattern?

    On a hyperbolic lattice the pattern is fully pinned down: g = d^2/(4n)
    exactly and the degree-0 square-(-2) class present.  Off the hyperbolic
    locus (reachable only through an explicit g range) delta = 0 is the
    whole pattern: the threshold test holds strictly while the degree window
    stays unsatisfiable.
    """
    if rec.delta != 0:
        return False
    if not rec.hyperbolic:
        return True
    return rec.deg0_m2_class and 4 * rec.n * rec.g == rec.d * rec.d


def _cmd_verify(ns) -> int:
    rng = _build_range(ns)
    report = verify(rng, jobs=ns.jobs)
    stream, close = _open_output(ns.output)
    try:
        emit(report, ns.format, stream)
    finally:
        if close:
            stream.close()
    print(
        f"verify: scanned {report.total_scanned} triples, "
        f"{len(report.disagreements)} disagreement(s)",
        file=sys.stderr,
    )
    unexpected = [r for r in report.disagreements if not _expected_disagreement(r)]
    if unexpected:
        for rec in unexpected[:10]:
            print(
                f"error: disagreement outside the delta = 0 pattern at "
                f"(n={rec.n}, d={rec.d}, g={rec.g})",
                file=sys.stderr,
            )
        return EXIT_TRIPWIRE
    return EXIT_OK


def _add_spec_args(sub, with_g: bool = True) -> None:
    sub.add_argument("n", type=int, help=f"half-degree of the surface (2..{MAX_INPUT})")
    sub.add_argument("d", type=int, help=f"degree of the curve class (1..{MAX_INPUT})")
    if with_g:
        sub.add_argument("g", type=int, help=f"genus of the curve class (0..{MAX_INPUT})")
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")


def _add_range_args(sub) -> None:
    sub.add_argument("--n", type=_span, required=True, metavar="LO:HI", help="n range")
    sub.add_argument("--d", type=_span, required=True, metavar="LO:HI", help="d range")
    sub.add_argument(
        "--g",
        type=_genus_policy,
        default=HYPERBOLIC_ONLY,
        metavar="LO:HI|hyperbolic",
        help="g range, or 'hyperbolic' for 0..largest g with d^2 > 4n(g-1) (default)",
    )
    sub.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    sub.add_argument(
        "--output", metavar="PATH", default=None, help="output file (default stdout)"
    )
    sub.add_argument(
        "--jobs",
        type=int,
        default=os.cpu_count(),
        help="worker processes (output is identical for any value)",
    )


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="k3sections",
        description=(
            "Decide whether every hyperplane section of the degree-2n K3 "
            "surface with a degree-d genus-g curve (Picard number two) is "
            "irreducible and reduced."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="full verdict for one (n, d, g)")
    _add_spec_args(p)
    p.add_argument("--no-warn", action="store_true", help="suppress lattice health warnings")
    p.set_defaults(handler=_cmd_decide)

    p = sub.add_parser("threshold", help="delta and genus threshold for (n, d)")
    _add_spec_args(p, with_g=False)
    p.set_defaults(handler=_cmd_threshold)

    p = sub.add_parser("witness", help="witness class and splitting for one (n, d, g)")
    _add_spec_args(p)
    p.add_argument("--no-warn", action="store_true", help="suppress lattice health warnings")
    p.set_defaults(handler=_cmd_witness)

    p = sub.add_parser("scan", help="survey an (n, d, g) box to CSV or JSON")
    _add_range_args(p)
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser(
        "verify", help="survey a box and classify closed-form/witness disagreements"
    )
    _add_range_args(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help prints and exits
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return ns.handler(ns)
    except ArithmeticOverflowError as exc:
        print(f"error: arithmetic overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except K3SectionsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
