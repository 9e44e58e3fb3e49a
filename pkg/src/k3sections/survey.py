"""Range surveys: drive the decision procedures over (n, d, g) boxes.

A scan produces one flat record per triple, in lexicographic (n, d, g)
order, and the CSV/JSON bytes it emits depend only on the scanned box --
never on how many worker processes ran.  Emission streams, so boxes of
millions of triples need bounded memory.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, List, NamedTuple, Optional, TextIO, Union

from .decision import decide
from .errors import ArithmeticOverflowError, InvalidInputError
from .lattice import MAX_INPUT, SurfaceSpec


@dataclass(frozen=True, slots=True)
class AllGenera:
    """Scan every g in [g_min, g_max], hyperbolic or not.

    An empty interval (g_min > g_max) is allowed and scans nothing.
    """

    g_min: int
    g_max: int


@dataclass(frozen=True, slots=True)
class HyperbolicOnly:
    """Scan g from 0 up to the largest g with d^2 > 4n(g-1), per (n, d)."""


HYPERBOLIC_ONLY = HyperbolicOnly()

GenusPolicy = Union[AllGenera, HyperbolicOnly]


def max_hyperbolic_genus(n: int, d: int) -> int:
    """Largest g >= 0 with 4n(g-1) < d^2, by exact integer arithmetic."""
    return (d * d - 1) // (4 * n) + 1


@dataclass(frozen=True, slots=True)
class ScanRange:
    """An (n, d, g) box; g is governed by the genus policy."""

    n_min: int
    n_max: int
    d_min: int
    d_max: int
    g_policy: GenusPolicy = HYPERBOLIC_ONLY

    def __post_init__(self) -> None:
        if not 2 <= self.n_min <= self.n_max <= MAX_INPUT:
            raise InvalidInputError(
                f"need 2 <= n_min <= n_max <= {MAX_INPUT}, got [{self.n_min}, {self.n_max}]"
            )
        if not 1 <= self.d_min <= self.d_max <= MAX_INPUT:
            raise InvalidInputError(
                f"need 1 <= d_min <= d_max <= {MAX_INPUT}, got [{self.d_min}, {self.d_max}]"
            )
        if isinstance(self.g_policy, AllGenera):
            pol = self.g_policy
            if pol.g_min < 0 or pol.g_max < 0 or pol.g_max > MAX_INPUT:
                raise InvalidInputError(
                    f"need g bounds in [0, {MAX_INPUT}], got [{pol.g_min}, {pol.g_max}]"
                )
        elif not isinstance(self.g_policy, HyperbolicOnly):
            raise InvalidInputError(f"unknown genus policy: {self.g_policy!r}")


class ScanRecord(NamedTuple):
    """One scanned triple, flattened to a row; mirrors a Verdict.

    Witness fields are None when the search found nothing.
    """

    n: int
    d: int
    g: int
    delta: int
    g_min: int
    hyperbolic: bool
    deg0_m2_class: bool
    closed_form: bool
    brute_force: bool
    witness_a: Optional[int]
    witness_b: Optional[int]
    witness_deg: Optional[int]
    witness_sq: Optional[int]
    bn_general: bool
    agree: bool


#: CSV column order; exactly the record fields.
CSV_COLUMNS = ScanRecord._fields


def record_from_verdict(v) -> ScanRecord:
    """Flatten a decision.Verdict into a ScanRecord row."""
    w = v.brute_force
    return ScanRecord(
        n=v.spec.n,
        d=v.spec.d,
        g=v.spec.g,
        delta=v.delta,
        g_min=v.genus_threshold,
        hyperbolic=v.health.hyperbolic,
        deg0_m2_class=v.health.degree_zero_minus_two_class is not None,
        closed_form=v.closed_form,
        brute_force=w is not None,
        witness_a=w.klass.a if w is not None else None,
        witness_b=w.klass.b if w is not None else None,
        witness_deg=w.degree if w is not None else None,
        witness_sq=w.square if w is not None else None,
        bn_general=v.bn_general_guaranteed,
        agree=v.agree,
    )


def _genus_bounds(rng: ScanRange, n: int, d: int) -> tuple[int, int]:
    pol = rng.g_policy
    if isinstance(pol, AllGenera):
        return pol.g_min, pol.g_max
    hi = max_hyperbolic_genus(n, d)
    if hi > MAX_INPUT:
        raise InvalidInputError(
            f"hyperbolic scan at (n={n}, d={d}) needs g up to {hi}, "
            f"beyond the documented bound {MAX_INPUT}"
        )
    return 0, hi


def _scan_column(args: tuple[int, int, int, int]) -> List[ScanRecord]:
    """Decide one (n, d) column of g values; runs inside worker processes."""
    n, d, g_lo, g_hi = args
    out = []
    for g in range(g_lo, g_hi + 1):
        try:
            out.append(record_from_verdict(decide(SurfaceSpec(n, d, g))))
        except ArithmeticError as exc:
            raise ArithmeticOverflowError(
                f"arithmetic failure at triple (n={n}, d={d}, g={g})"
            ) from exc
    return out


def _columns(rng: ScanRange) -> List[tuple[int, int, int, int]]:
    cols = []
    for n in range(rng.n_min, rng.n_max + 1):
        for d in range(rng.d_min, rng.d_max + 1):
            g_lo, g_hi = _genus_bounds(rng, n, d)
            if g_lo <= g_hi:
                cols.append((n, d, g_lo, g_hi))
    return cols


def scan(rng: ScanRange, jobs: Optional[int] = None) -> Iterator[ScanRecord]:
    """Decide every triple in the box, yielding records in lexicographic
    (n, d, g) order.

    ``jobs`` > 1 spreads (n, d) columns over that many worker processes;
    results are merged back in submission order, so the output is identical
    for every jobs value.  Records are yielded as their column completes,
    keeping memory bounded on large boxes.
    """
    cols = _columns(rng)
    if jobs is None or jobs <= 1 or len(cols) < 2:
        for col in cols:
            yield from _scan_column(col)
        return
    chunk = max(1, len(cols) // (jobs * 16))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for records in pool.map(_scan_column, cols, chunksize=chunk):
            yield from records


@dataclass(frozen=True)
class DiscrepancyReport:
    """Classification of every disagreement a scan of the box produced.

    Both booleans are vacuously True when there are no disagreements.
    """

    total_scanned: int
    disagreements: List[ScanRecord]
    all_at_delta_zero: bool
    all_have_deg0_m2_class: bool


def verify(rng: ScanRange, jobs: Optional[int] = None) -> DiscrepancyReport:
    """Scan the box and classify the triples where the closed-form test and
    the witness search disagree.

    Expected shape of the classification: every disagreement sits at
    delta = 0 with the degree-0 square-(-2) class present.  Anything else
    is either an implementation bug or a counterexample to the equivalence
    the procedures embody, and deserves loud attention.
    """
    total = 0
    bad: List[ScanRecord] = []
    for rec in scan(rng, jobs=jobs):
        total += 1
        if not rec.agree:
            bad.append(rec)
    return DiscrepancyReport(
        total_scanned=total,
        disagreements=bad,
        all_at_delta_zero=all(r.delta == 0 for r in bad),
        all_have_deg0_m2_class=all(r.deg0_m2_class for r in bad),
    )


def _cell(value) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def _emit_csv(records: Iterable[ScanRecord], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([_cell(v) for v in rec])


def _emit_json_records(records: Iterable[ScanRecord], stream: TextIO) -> None:
    first = True
    for rec in records:
        stream.write("[\n" if first else ",\n")
        first = False
        stream.write("  " + json.dumps(rec._asdict()))
    stream.write("[]\n" if first else "\n]\n")


def emit(data, fmt: str, stream: TextIO) -> None:
    """Write records or a DiscrepancyReport to ``stream`` as CSV or JSON.

    CSV rows carry exactly the ScanRecord columns (header included),
    lowercase true/false for booleans, empty cells for absent witness
    fields.  A report emits its disagreement rows in CSV mode and the whole
    object in JSON mode.  Output bytes depend only on the data.
    """
    if fmt not in ("csv", "json"):
        raise InvalidInputError(f"format must be 'csv' or 'json', got {fmt!r}")
    if isinstance(data, DiscrepancyReport):
        if fmt == "csv":
            _emit_csv(data.disagreements, stream)
        else:
            json.dump(
                {
                    "total_scanned": data.total_scanned,
                    "disagreements": [rec._asdict() for rec in data.disagreements],
                    "all_at_delta_zero": data.all_at_delta_zero,
                    "all_have_deg0_m2_class": data.all_have_deg0_m2_class,
                },
                stream,
                indent=2,
            )
            stream.write("\n")
    elif fmt == "csv":
        _emit_csv(data, stream)
    else:
        _emit_json_records(data, stream)


def records_from_json(text: str) -> List[ScanRecord]:
    """Parse JSON produced by `emit` back into records (exact round-trip)."""
    return [ScanRecord(**obj) for obj in json.loads(text)]
