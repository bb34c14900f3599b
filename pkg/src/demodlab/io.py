"""File formats for reproducible runs.

JSON carries signals (interleaved re/im arrays), sample vectors, system
descriptions (dimensions plus seed or explicit chipping), and recovery
results; CSV carries experiment tables with '.' decimals and repr-exact
floats.  Every run directory gets a manifest recording the seed, the full
configuration and its hash, and the schema/tool versions, so a rerun with
the same configuration is byte-identical.
"""

import csv
import hashlib
import json
from pathlib import Path

import numpy as np

from . import __version__
from .seeding import derive_rng
from .system import build_system, draw_chipping

__all__ = [
    "SCHEMA_VERSION",
    "SchemaError",
    "GRID_COLUMNS",
    "MINRATE_COLUMNS",
    "WINDOW_COLUMNS",
    "DIAG_COLUMNS",
    "AMDEMO_COLUMNS",
    "complex_to_interleaved",
    "interleaved_to_complex",
    "signal_to_json",
    "signal_from_json",
    "samples_to_json",
    "samples_from_json",
    "system_to_json",
    "system_from_json",
    "make_system",
    "write_json",
    "read_json",
    "write_csv",
    "config_hash",
    "write_manifest",
]

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """A document on disk does not match its declared schema."""

GRID_COLUMNS = ["w", "k", "r", "trials", "successes"]
MINRATE_COLUMNS = ["w", "k", "r_min"]
WINDOW_COLUMNS = ["k", "err_raw", "err_windowed"]
DIAG_COLUMNS = ["draw", "statistic", "value"]
AMDEMO_COLUMNS = ["w", "k", "r", "carrier", "noise", "snr_db"]


def complex_to_interleaved(z):
    out = np.empty(2 * len(z))
    out[0::2] = np.real(z)
    out[1::2] = np.imag(z)
    return out.tolist()


def interleaved_to_complex(values):
    arr = np.asarray(values, dtype=float)
    if arr.size % 2 != 0:
        raise SchemaError("interleaved re/im array must have even length")
    return arr[0::2] + 1j * arr[1::2]


def signal_to_json(s):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "amplitude_vector",
        "w": len(s),
        "re_im": complex_to_interleaved(s),
    }


def signal_from_json(obj):
    if obj.get("kind") != "amplitude_vector":
        raise SchemaError(f"expected an amplitude_vector document, got {obj.get('kind')!r}")
    s = interleaved_to_complex(obj["re_im"])
    if len(s) != obj["w"]:
        raise SchemaError("signal length disagrees with the recorded bandlimit")
    return s


def samples_to_json(y, w):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "sample_vector",
        "r": len(y),
        "w": int(w),
        "re_im": complex_to_interleaved(y),
    }


def samples_from_json(obj):
    if obj.get("kind") != "sample_vector":
        raise SchemaError(f"expected a sample_vector document, got {obj.get('kind')!r}")
    y = interleaved_to_complex(obj["re_im"])
    if len(y) != obj["r"]:
        raise SchemaError("sample length disagrees with the recorded rate")
    return y, int(obj["w"])


def make_system(w, r, seed):
    """Deterministically rebuild the system named by (w, r, seed)."""
    return build_system(w, r, draw_chipping(w, derive_rng(seed, "chipping", w)))


def system_to_json(system, seed=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "system",
        "w": system.w,
        "r": system.r,
    }
    if seed is not None:
        doc["seed"] = int(seed)
    else:
        doc["eps"] = [int(e) for e in system.chipping]
    return doc


def system_from_json(obj):
    if obj.get("kind") != "system":
        raise SchemaError(f"expected a system document, got {obj.get('kind')!r}")
    w, r = int(obj["w"]), int(obj["r"])
    if "seed" in obj:
        return make_system(w, r, int(obj["seed"]))
    eps = np.asarray(obj["eps"], dtype=float)
    return build_system(w, r, eps)


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())


def _format_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format_cell(cell) for cell in row])


def config_hash(config):
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_manifest(out_dir, command, seed, config, results=None):
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "tool": "demodlab",
        "tool_version": __version__,
        "command": command,
        "seed": None if seed is None else int(seed),
        "config": config,
        "config_sha256": config_hash(config),
        "results": results or {},
    }
    write_json(Path(out_dir) / "manifest.json", manifest)
    return manifest
