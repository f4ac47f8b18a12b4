"""Per-N tables of the closed forms, with delimited-text writers."""
from __future__ import annotations

import csv
import io
import json
import math

from . import discrimination as disc
from . import fock
from .qubits import distinguishable_overlap

QUANTITIES = ("overlap", "counting", "photon", "distinguishable")

# explicit photon-state expansion gets slow past this
EXPANSION_MAX_N = 300


def _log10(x: float) -> float:
    return math.log10(x) if x > 0 else -math.inf


def counting_row(n: int) -> dict:
    exact = disc.counting_test_error(n)
    asym = disc.counting_test_asymptote(n)
    return {"N": n, "exact": exact, "asymptote": asym, "rel_gap": asym / exact - 1}


def overlap_row(n: int) -> dict:
    row = {
        "N": n,
        "distinguishable": distinguishable_overlap(n),
        "fock_closed_form": fock.fock_overlap_closed_form(n),
        "log10_fock_closed_form": fock.log10_fock_overlap_closed_form(n),
    }
    row["fock_expansion"] = fock.fock_overlap_expansion(n) if n <= EXPANSION_MAX_N else math.nan
    return row


def photon_row(n: int) -> dict:
    exact, asym = disc.photon_error(n)
    row = {
        "N": n,
        "exact": exact.value,
        "log10_exact": exact.log10,
        "asymptote": asym.value,
        "log10_asymptote": asym.log10,
    }
    if n <= EXPANSION_MAX_N:
        expanded = disc.photon_error_expansion(n)
        row["expansion"] = expanded.value
        row["log10_expansion"] = expanded.log10
    else:
        row["expansion"] = row["log10_expansion"] = math.nan
    return row


def distinguishable_row(n: int) -> dict:
    exact, approx = disc.distinguishable_particles_error(n)
    return {
        "N": n,
        "exact": exact,
        "approx": approx,
        "log10_exact": _log10(exact),
        "rel_gap": (exact - approx) / approx,
    }


_ROWS = {
    "overlap": overlap_row,
    "counting": counting_row,
    "photon": photon_row,
    "distinguishable": distinguishable_row,
}


def build_table(quantity: str, n_min: int, n_max: int) -> list[dict]:
    if quantity not in _ROWS:
        raise ValueError(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}")
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n-min <= n-max, got {n_min}..{n_max}")
    return [_ROWS[quantity](n) for n in range(n_min, n_max + 1)]


def format_number(x) -> str:
    """Shortest round-trip text for floats; inf/nan spelled as Python does."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return repr(x)
    return str(x)


def to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(row[k]) for k in header])
    return buf.getvalue()


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("-inf" if x < 0 else "inf")
    return x


def to_json(rows: list[dict], **kwargs) -> str:
    return json.dumps([{k: _json_safe(v) for k, v in row.items()} for row in rows], **kwargs)
