"""File formats: domain/barcode JSON, GPD and trace CSV, time-series CSV."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .gpd import Barcode, GPDPointCloud
from .intervals import Domain, IntervalError, IntervalVec6, PQInterval


class FormatError(ValueError):
    """A file that does not follow the expected layout."""


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as err:
        raise FormatError(f"{path}: invalid JSON ({err})") from err


def interval_to_json(I) -> dict:
    if isinstance(I, IntervalVec6):
        return dict(zip("xyabcd", (float(v) for v in I.astuple())))
    return {"mins": [[float(x), float(y)] for x, y in I.mins],
            "maxs": [[float(x), float(y)] for x, y in I.maxs]}


def interval_from_json(obj):
    try:
        if "mins" in obj:
            return PQInterval([tuple(map(float, p)) for p in obj["mins"]],
                              [tuple(map(float, p)) for p in obj["maxs"]])
        return IntervalVec6(*(float(obj[k]) for k in "xyabcd"))
    except (KeyError, TypeError) as err:
        raise FormatError(f"malformed interval entry {obj!r}") from err
    except IntervalError as err:
        raise FormatError(f"invalid interval {obj!r}: {err}") from err


def domain_to_json(domain: Domain) -> dict:
    return {"name": domain.name, "intervals": [interval_to_json(I) for I in domain]}


def domain_from_json(obj) -> Domain:
    if not isinstance(obj, dict) or "intervals" not in obj:
        raise FormatError("domain JSON needs an 'intervals' list")
    try:
        return Domain([interval_from_json(e) for e in obj["intervals"]], name=obj.get("name", ""))
    except IntervalError as err:
        raise FormatError(str(err)) from err


def write_domain(domain: Domain, path) -> None:
    # repr-based float output round-trips every finite double exactly
    Path(path).write_text(json.dumps(domain_to_json(domain), indent=1) + "\n")


def read_domain(path) -> Domain:
    return domain_from_json(_load_json(path))


def barcode_to_json(M: Barcode) -> dict:
    return {"bars": [dict(interval_to_json(B), mult=int(k)) for B, k in M.bars]}


def barcode_from_json(obj) -> Barcode:
    if not isinstance(obj, dict) or "bars" not in obj:
        raise FormatError("barcode JSON needs a 'bars' list")
    bars = []
    for e in obj["bars"]:
        B = interval_from_json({"mins": e.get("mins"), "maxs": e.get("maxs")}) if "mins" in e \
            else interval_from_json(e)
        mult = e.get("mult", 1)
        if not isinstance(mult, int) or mult < 1:
            raise FormatError(f"bar multiplicity must be a positive integer, got {mult!r}")
        bars.append((B, mult))
    return Barcode(tuple(bars))


def write_barcode(M: Barcode, path) -> None:
    Path(path).write_text(json.dumps(barcode_to_json(M), indent=1) + "\n")


def read_barcode(path) -> Barcode:
    return barcode_from_json(_load_json(path))


GPD_HEADER = ["x", "y", "a", "b", "c", "d", "mult"]


def write_gpd_csv(cloud: GPDPointCloud, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(GPD_HEADER)
        for v, k in zip(cloud.points, cloud.mults):
            w.writerow([repr(float(t)) for t in v] + [int(k)])


def read_gpd_csv(path) -> GPDPointCloud:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != GPD_HEADER:
        raise FormatError(f"{path}: expected header {','.join(GPD_HEADER)}")
    try:
        pts = np.array([[float(t) for t in r[:6]] for r in rows[1:]], dtype=float).reshape(-1, 6)
        mults = np.array([int(r[6]) for r in rows[1:]], dtype=np.int64)
    except (ValueError, IndexError) as err:
        raise FormatError(f"{path}: malformed row ({err})") from err
    return GPDPointCloud(pts, mults)


def write_matrix_csv(E: np.ndarray, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["r", "s", "eps"])
        for (r, s), v in np.ndenumerate(E):
            w.writerow([r, s, repr(float(v))])


def write_trace_csv(trace, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["epoch", "loss", "seconds"])
        for k, (loss, sec) in enumerate(zip(trace.losses, trace.seconds)):
            w.writerow([k, repr(float(loss)), repr(float(sec))])


def read_trace_csv(path):
    from .optim import LossTrace

    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["epoch", "loss", "seconds"]:
        raise FormatError(f"{path}: expected header epoch,loss,seconds")
    return LossTrace([float(r[1]) for r in rows[1:]], [float(r[2]) for r in rows[1:]])


def read_series_csv(path):
    """One series per row: label, then samples; a blank cell ends the row."""
    from .pipeline import TimeSeries

    out = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or not row[0].strip():
                continue
            vals = []
            for cell in row[1:]:
                if not cell.strip():
                    break
                try:
                    vals.append(float(cell))
                except ValueError as err:
                    raise FormatError(f"{path}:{lineno}: non-numeric sample {cell!r}") from err
            out.append(TimeSeries(row[0], np.array(vals)))
    return out


def normalize_barcode(M: Barcode) -> Barcode:
    """Affine rescale of each axis so the bars' bounding box becomes [0, 1]^2."""
    pts = np.array([p for B, _ in M.bars for p in B.mins + B.maxs], dtype=float)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)

    def f(p):
        return tuple(float(t) for t in (np.asarray(p) - lo) / span)

    return Barcode(tuple((PQInterval([f(p) for p in B.mins], [f(p) for p in B.maxs]), k)
                         for B, k in M.bars))
