"""Report assembly and serialization for the command-line front end.

Machine-readable payloads carry every rational as a ``"p/q"`` string.
JSON and CSV are two renderings of the same payload dict; CSV flattens
it into ``field,value`` lines with dotted paths.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .certify import (
    CertificateRow,
    RangeInfo,
    certify_gap,
    classify,
    crossover_r,
    crossover_table,
    motzkin_straus_polynomial,
)
from .graphs import Graph, stability_number
from .grid import GridMinimum, grid_minimum, grid_size
from .polya import PolyaBound, polya_bound
from .polycore import HomogeneousPolynomial, bernstein_bounds, to_string

DEFAULT_GRID_CAP = 10 ** 8
BRUTE_FORCE_MAX_V = 25


class GridTooLarge(ValueError):
    pass


@dataclass
class BoundRow:
    r: int
    grid_size: int
    f_grid: Fraction
    grid_witnesses: tuple
    running_min: Fraction
    f_polya: Optional[Fraction] = None
    polya_witnesses: tuple = ()
    note: str = ""

    @property
    def gap(self) -> Optional[Fraction]:
        return None if self.f_polya is None else self.f_grid - self.f_polya


@dataclass
class Report:
    command: str
    metadata: Dict[str, Any] = field(default_factory=dict)
    rows: List[BoundRow] = field(default_factory=list)
    certificates: List[CertificateRow] = field(default_factory=list)
    extra: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def violated(self) -> bool:
        return any(not c.holds for c in self.certificates)


def q(x) -> Optional[str]:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def approx(x, digits: int = 6) -> str:
    if x is None:
        return "-"
    return f"{float(x):.{digits}g}"


def _check_cap(n: int, r: int, cap: int) -> int:
    size = grid_size(n, r)
    if size > cap:
        raise GridTooLarge(f"grid I({n},{r}) has {size} points, above the cap of {cap}; raise --grid-cap to proceed")
    return size


def _metadata(f: HomogeneousPolynomial) -> Dict[str, Any]:
    cls = classify(f)
    lo, hi = bernstein_bounds(f)
    return {
        "polynomial": to_string(f),
        "n": f.n,
        "d": f.d,
        "quadratic": cls.is_quadratic,
        "cubic": cls.is_cubic,
        "square_free": cls.is_square_free,
        "bernstein_min": lo,
        "bernstein_max": hi,
        "bernstein_range": hi - lo,
    }


def bounds_report(
    f: HomogeneousPolynomial,
    rs: Sequence[int],
    *,
    workers: int = 1,
    grid_cap: int = DEFAULT_GRID_CAP,
    command: str = "bounds",
) -> Report:
    """Grid and Polya bounds at each requested r (rows sorted by r)."""
    if f.d < 1:
        raise ValueError("bounds need a polynomial of degree >= 1 (constants are their own minimum)")
    t0 = time.perf_counter()
    rep = Report(command, _metadata(f))
    running = None
    for r in sorted(set(rs)):
        if r < 1:
            raise ValueError(f"r must be >= 1, got {r}")
        size = _check_cap(f.n, r, grid_cap)
        g = grid_minimum(f, r, workers)
        running = g.value if running is None or g.value < running else running
        row = BoundRow(r, size, g.value, g.witnesses, running)
        if r >= f.d:
            p = polya_bound(f, r, workers)
            row.f_polya, row.polya_witnesses = p.value, p.witnesses
        else:
            row.note = f"no Polya bound: r < d = {f.d}"
        rep.rows.append(row)
    rep.seconds = time.perf_counter() - t0
    return rep


def certify_report(
    f: HomogeneousPolynomial,
    rs: Sequence[int],
    rng: RangeInfo | None = None,
    *,
    workers: int = 1,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> Report:
    t0 = time.perf_counter()
    rep = bounds_report(f, rs, workers=workers, grid_cap=grid_cap, command="certify")
    rng = rng or RangeInfo()
    rep.metadata["f_min"] = rng.f_min_exact
    rep.metadata["f_max"] = rng.f_max_exact
    rep.metadata["range_source"] = rng.source.value
    for row in rep.rows:
        if row.f_polya is None:
            rep.notes.append(f"r={row.r}: no certificate rows (r < d)")
            continue
        grid = GridMinimum(row.r, row.f_grid, row.grid_witnesses)
        polya = PolyaBound(row.r, f.d, row.f_polya, row.polya_witnesses)
        rep.certificates.extend(certify_gap(f, row.r, rng, grid=grid, polya=polya))
    rep.certificates.sort(key=lambda c: (c.theorem.order, c.r))
    rep.seconds = time.perf_counter() - t0
    return rep


def stableset_report(
    g: Graph,
    rs: Sequence[int],
    *,
    workers: int = 1,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> Report:
    """Bounds on alpha(G) from the Motzkin-Straus quadratic at each r."""
    t0 = time.perf_counter()
    f = motzkin_straus_polynomial(g)
    alpha = None
    notes = []
    if g.v <= BRUTE_FORCE_MAX_V:
        alpha = stability_number(g)
        rng = RangeInfo.closed_form(Fraction(1, alpha), 1)
    else:
        rng = RangeInfo()
        notes.append(f"brute-force stability number skipped: v = {g.v} > {BRUTE_FORCE_MAX_V}")
    rep = certify_report(f, rs, rng, workers=workers, grid_cap=grid_cap)
    rep.command = "stableset"
    rep.notes.extend(notes)
    rep.metadata["vertices"] = g.v
    rep.metadata["edges"] = len(g.edges)
    rep.metadata["alpha_brute_force"] = alpha
    for row in rep.rows:
        entry: Dict[str, Any] = {"r": row.r, "alpha_lower": math.ceil(1 / row.f_grid), "alpha_upper": None}
        if row.f_polya is not None and row.f_polya > 0:
            entry["alpha_upper"] = math.floor(1 / row.f_polya)
        rep.extra.append(entry)
    rep.seconds = time.perf_counter() - t0
    return rep


def crossover_report(d: int, r_max: int) -> Report:
    t0 = time.perf_counter()
    rep = Report("crossover", {"d": d, "r_max": r_max})
    cross = crossover_r(d, r_max)
    rep.metadata["crossover_r"] = cross
    for r, new, old, better in crossover_table(d, r_max):
        rep.extra.append({"r": r, "coeff_general": new, "coeff_klp_sum": old, "refines": better})
    if cross is None:
        rep.notes.append(f"no crossover up to r = {r_max}")
    rep.seconds = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def _plain(v):
    if isinstance(v, Fraction):
        return q(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


def payload(rep: Report, timing: bool = False) -> Dict[str, Any]:
    out: Dict[str, Any] = {"command": rep.command, "metadata": _plain(rep.metadata)}
    if rep.rows:
        out["rows"] = [
            {
                "r": row.r,
                "grid_size": row.grid_size,
                "f_grid": q(row.f_grid),
                "f_polya": q(row.f_polya),
                "gap": q(row.gap),
                "running_min_f_grid": q(row.running_min),
                "grid_witnesses": {"denominator": row.r, "alpha": [list(w) for w in row.grid_witnesses]},
                "polya_witnesses": {"denominator": row.r, "alpha": [list(w) for w in row.polya_witnesses]},
                "note": row.note,
            }
            for row in rep.rows
        ]
    if rep.certificates:
        out["certificates"] = [
            {
                "theorem": c.theorem.value,
                "r": c.r,
                "d": c.d,
                "coefficient": q(c.coefficient),
                "lhs": q(c.lhs),
                "rhs": q(c.rhs),
                "scale_kind": c.scale_kind.value,
                "status": c.status,
            }
            for c in rep.certificates
        ]
    if rep.extra:
        out["table"] = _plain(rep.extra)
    if rep.notes:
        out["notes"] = list(rep.notes)
    if timing:
        out["seconds"] = round(rep.seconds, 6)
    return out


def to_json(rep: Report, timing: bool = False) -> str:
    return json.dumps(payload(rep, timing), indent=2) + "\n"


def _flatten(prefix: str, v, out: list) -> None:
    if isinstance(v, dict):
        for k, x in v.items():
            _flatten(f"{prefix}.{k}" if prefix else k, x, out)
    elif isinstance(v, list):
        if not v:
            out.append((prefix, "[]"))
        for i, x in enumerate(v):
            _flatten(f"{prefix}.{i}", x, out)
    else:
        out.append((prefix, "" if v is None else json.dumps(v) if isinstance(v, bool) else str(v)))


def to_csv(rep: Report, timing: bool = False) -> str:
    rows: list = []
    _flatten("", payload(rep, timing), rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    w.writerows(rows)
    return buf.getvalue()


def to_table(rep: Report) -> str:
    lines = [f"== {rep.command} =="]
    for k, v in rep.metadata.items():
        if isinstance(v, Fraction):
            v = f"{q(v)}  (~{approx(v)})"
        lines.append(f"  {k}: {v}")
    if rep.rows:
        lines.append("")
        hdr = f"{'r':>4} {'grid pts':>10}  {'f_grid':>22}  {'f_polya':>22}  {'gap':>22}"
        lines.append(hdr)
        for row in rep.rows:
            lines.append(
                f"{row.r:>4} {row.grid_size:>10}  {_cell(row.f_grid):>22}  {_cell(row.f_polya):>22}  {_cell(row.gap):>22}"
                + (f"  [{row.note}]" if row.note else "")
            )
    if rep.certificates:
        lines.append("")
        lines.append(f"{'theorem':<16} {'r':>3} {'c(r,d)':>14} {'lhs':>14} {'rhs':>14}  status")
        for c in rep.certificates:
            lines.append(
                f"{c.theorem.value:<16} {c.r:>3} {q(c.coefficient):>14} {q(c.lhs):>14} {q(c.rhs):>14}  {c.status}"
            )
    if rep.extra:
        lines.append("")
        keys = list(rep.extra[0])
        cells = [[_cell(e[k]) if isinstance(e[k], Fraction) else str(e[k]) for k in keys] for e in rep.extra]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        lines.append("  ".join(f"{k:>{w}}" for k, w in zip(keys, widths)))
        for c in cells:
            lines.append("  ".join(f"{x:>{w}}" for x, w in zip(c, widths)))
    for note in rep.notes:
        lines.append(f"note: {note}")
    lines.append(f"({rep.seconds:.3f} s)")
    return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if x is None:
        return "-"
    return f"{q(x)} ~{approx(x)}"
