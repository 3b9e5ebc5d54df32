"""On-disk formats: reference sets, raw archives, manifests and config files."""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable
from pathlib import Path

import numpy as np

from momark.core import Archive
from momark.errors import ConfigurationError
from momark.indicators import NormalizationFrame, ReferenceSet
from momark.runtime import atomic_write_text

REFSET_FORMAT = "momark-refset/1"
MANIFEST_NAME = "manifest.json"


def refset_path(refset_dir: Path, problem: str) -> Path:
    return Path(refset_dir) / f"{problem}.json"


def write_refset(path: Path, refset: ReferenceSet, frame: NormalizationFrame, config: dict) -> Path:
    doc = {
        "format": REFSET_FORMAT,
        "problem": refset.problem,
        "m": refset.m,
        "size": int(refset.points.shape[0]),
        "ideal": frame.ideal.tolist(),
        "nadir": frame.nadir.tolist(),
        "config": config,
        "points": refset.points.tolist(),
    }
    atomic_write_text(Path(path), json.dumps(doc, indent=1) + "\n")
    return Path(path)


def read_refset(path: Path) -> tuple[ReferenceSet, NormalizationFrame, dict]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise
    except (OSError, ValueError) as exc:
        raise ConfigurationError(f"cannot read reference set {path}: {exc}") from None
    if doc.get("format") != REFSET_FORMAT:
        raise ConfigurationError(f"{path}: not a {REFSET_FORMAT} file")
    refset = ReferenceSet(doc["problem"], np.array(doc["points"], dtype=np.float64))
    frame = NormalizationFrame(np.array(doc["ideal"]), np.array(doc["nadir"]))
    return refset, frame, doc.get("config", {})


def write_archive_csv(path: Path, archive: Archive) -> None:
    m = archive.m or 0
    lines = [",".join(["fe"] + [f"f{i + 1}" for i in range(m)])]
    for fe, row in zip(archive.fe_stamps, archive.points):
        lines.append(",".join([str(int(fe))] + [repr(float(v)) for v in row]))
    atomic_write_text(Path(path), "\n".join(lines) + "\n")


def read_archive_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(fe_stamps, objectives)``."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if not header or header[0] != "fe":
        raise ConfigurationError(f"{path}: archive file must start with an 'fe' column")
    m = len(header) - 1
    fes = np.array([int(r[0]) for r in body], dtype=np.int64)
    pts = np.array([[float(v) for v in r[1:]] for r in body], dtype=np.float64).reshape(len(body), m)
    return fes, pts


def write_manifest(run_dir: Path, manifest: dict) -> Path:
    path = Path(run_dir) / MANIFEST_NAME
    atomic_write_text(path, json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    return path


def read_manifest(run_dir: Path) -> dict:
    path = Path(run_dir) / MANIFEST_NAME
    if not path.exists():
        raise ConfigurationError(f"{run_dir} has no {MANIFEST_NAME}; is it a run directory?")
    return json.loads(path.read_text(encoding="utf-8"))


def parse_config_text(text: str) -> list[tuple[str, str]]:
    """Parse flat ``key = value`` lines; lines starting with ``#`` are comments, keys may repeat."""
    pairs = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"config line {no}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        pairs.append((key.strip().replace("-", "_"), value.strip()))
    return pairs


def format_config(pairs: Iterable[tuple[str, str]]) -> str:
    return "".join(f"{k} = {v}\n" for k, v in pairs)
