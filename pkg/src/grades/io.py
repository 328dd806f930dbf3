"""JSON and CSV persistence for instances, bounds and solver results.

JSON documents carry ``schema_version`` and ``kind``. Floats are written
with Python's shortest round-trip repr, so every float64 reads back
bit-identically. Output is deterministic: fixed key order, LF endings.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .core import ProblemInstance
from .errors import GradesError
from .rip import Exact, RipBounds, Sampled
from .solver import SolveResult, Status

SCHEMA_VERSION = 1


class FormatError(GradesError, ValueError):
    """A file parsed as JSON but does not match the expected schema."""


def _floats(a):
    return [float(v) for v in np.asarray(a).ravel()] if a.ndim == 1 else [_floats(r) for r in a]


def _num(v):
    # JSON has no NaN/Inf; store them as null
    return None if v is None or not math.isfinite(v) else float(v)


def _dump(doc, path):
    text = json.dumps(doc, indent=1, allow_nan=False) + "\n"
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load(path, kind):
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict) or doc.get("kind") != kind:
        raise FormatError(f"{path}: expected a {kind!r} document")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(f"{path}: unsupported schema_version {doc.get('schema_version')!r}")
    return doc


# -- instances ---------------------------------------------------------------

def instance_to_dict(instance: ProblemInstance, metadata=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "instance",
        "m": instance.m,
        "n": instance.n,
        "sparsity": instance.sparsity,
        "metadata": dict(metadata or {}),
        "phi": _floats(instance.phi),
        "y": _floats(instance.y),
        "truth": None if instance.truth is None else _floats(instance.truth),
    }


def instance_from_dict(doc: dict) -> ProblemInstance:
    try:
        phi = np.array(doc["phi"], dtype=np.float64)
        return ProblemInstance(
            phi=phi.reshape(doc["m"], doc["n"]),
            y=np.array(doc["y"], dtype=np.float64),
            truth=None if doc.get("truth") is None else np.array(doc["truth"], dtype=np.float64),
            sparsity=doc.get("sparsity"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed instance: {exc}") from exc


def write_instance(path, instance: ProblemInstance, metadata=None):
    _dump(instance_to_dict(instance, metadata), path)


def read_instance(path) -> ProblemInstance:
    return instance_from_dict(_load(path, "instance"))


def read_instance_metadata(path) -> dict:
    return _load(path, "instance").get("metadata", {})


# -- bounds ------------------------------------------------------------------

def bounds_to_dict(bounds: RipBounds, **extra) -> dict:
    prov = bounds.provenance
    if isinstance(prov, Sampled):
        prov_doc = {"type": "sampled", "trials": prov.trials, "seed": prov.seed}
    else:
        prov_doc = {"type": "exact"}
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "bounds",
        "level": bounds.sparsity,
        "alpha": bounds.alpha,
        "beta": bounds.beta,
        "provenance": prov_doc,
    }
    doc.update(extra)
    return doc


def bounds_from_dict(doc: dict) -> RipBounds:
    try:
        prov = doc["provenance"]
        if prov["type"] == "exact":
            provenance = Exact()
        elif prov["type"] == "sampled":
            provenance = Sampled(int(prov["trials"]), int(prov["seed"]))
        else:
            raise ValueError(f"unknown provenance type {prov['type']!r}")
        return RipBounds(float(doc["alpha"]), float(doc["beta"]), int(doc["level"]), provenance)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed bounds: {exc}") from exc


def write_bounds(path, bounds: RipBounds, **extra):
    _dump(bounds_to_dict(bounds, **extra), path)


def read_bounds(path) -> RipBounds:
    return bounds_from_dict(_load(path, "bounds"))


# -- results -----------------------------------------------------------------

def result_to_dict(result: SolveResult, **extra) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "result",
        "status": result.status.value,
        "iterations": result.iterations,
        "reached_target": result.reached_target,
        "heuristic": result.heuristic,
        "predicted_bound": result.predicted_bound,
        "final_objective": result.final_objective,
    }
    doc.update({k: _num(v) if isinstance(v, float) else v for k, v in extra.items()})
    doc["x"] = _floats(result.x)
    doc["trace"] = _floats(result.trace)
    return doc


def result_from_dict(doc: dict) -> SolveResult:
    try:
        return SolveResult(
            x=np.array(doc["x"], dtype=np.float64),
            trace=np.array(doc["trace"], dtype=np.float64),
            status=Status(doc["status"]),
            iterations=int(doc["iterations"]),
            reached_target=bool(doc["reached_target"]),
            predicted_bound=doc.get("predicted_bound"),
            heuristic=bool(doc["heuristic"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed result: {exc}") from exc


def write_result(path, result: SolveResult, **extra):
    _dump(result_to_dict(result, **extra), path)


def read_result(path) -> SolveResult:
    return result_from_dict(_load(path, "result"))


# -- CSV ---------------------------------------------------------------------

def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows):
    Path(path).write_text(format_csv(header, rows), encoding="utf-8", newline="\n")


def write_trace(path, trace):
    """``iteration,objective`` CSV, one row per entry of ``trace``."""
    write_csv(path, ["iteration", "objective"], ((t, float(f)) for t, f in enumerate(trace)))


def read_trace(path) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return np.array([float(r["objective"]) for r in rows])
