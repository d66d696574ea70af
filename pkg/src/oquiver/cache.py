"""
Disk cache for the expensive pipeline artifacts (multiplication table and
module family), plus the orchestration that builds or restores a complete
pipeline for one root system.

Cache files are content-addressed by (type, rank, mode, artifact version)
in the file name, carry a sha256 checksum of the canonical payload, and are
written atomically.  A stale version or corrupted payload is reported and
silently recomputed; rationals restore exactly, so a warm run reproduces a
cold run byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .linalg import QMatrix, format_rational, parse_rational
from .quiver import Quiver, build_quiver
from .rootsystem import WeylGroup, build, generate_weyl, parse_type
from .schubert import CohClass, CohRing
from .soergel import GradedModule, ModuleFamily, build_all

ARTIFACT_VERSION = 1

ENV_CACHE_DIR = "OQUIVER_CACHE"


class CacheUnusable(OSError):
    """The cache directory cannot be created or written."""


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "oquiver"


def cache_file(cache_dir: Path, name: str, mode: str) -> Path:
    return cache_dir / f"{name.lower()}-{mode}-v{ARTIFACT_VERSION}.json"


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _checksum(payload: dict) -> str:
    return hashlib.sha256(_canonical(payload).encode()).hexdigest()


def _matrix_doc(m: QMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.data]


def _matrix_from_doc(doc: list[list[str]], cols: int) -> QMatrix:
    return QMatrix([[parse_rational(x) for x in row] for row in doc], cols=cols)


def payload_of(ring: CohRing, family: ModuleFamily) -> dict:
    """Everything keyed by canonical element strings, rationals as "p/q"."""
    g = ring.group
    mult = {}
    for u in g.elements:
        for v in g.elements:
            product = ring.multiply_basis(u, v)
            mult[f"{u}|{v}"] = {str(w): format_rational(c) for w, c in product.coeffs.items()}
    modules = {}
    for w in g.elements:
        module = family.modules[w.idx]
        modules[str(w)] = {
            "degrees": list(module.degrees),
            "action": {str(v): _matrix_doc(module.action[v.idx]) for v in g.elements},
            "multiplicities": {
                str(g.elements[y]): n
                for y, n in sorted(family.multiplicities[w.idx].items())
            },
            "provenance": module.provenance,
        }
    return {
        "system": {"type": g.rootsystem.type_label, "rank": g.rootsystem.rank},
        "mode": family.mode,
        "elements": [str(w) for w in g.elements],
        "mult": mult,
        "modules": modules,
    }


def restore(group: WeylGroup, payload: dict) -> tuple[CohRing, ModuleFamily]:
    g = group
    if payload["elements"] != [str(w) for w in g.elements]:
        raise ValueError("cached element order does not match this build")
    lookup = {str(w): w for w in g.elements}
    table: list[list[CohClass]] = []
    for u in g.elements:
        row = []
        for v in g.elements:
            entry = payload["mult"][f"{u}|{v}"]
            row.append(CohClass({lookup[k]: parse_rational(c) for k, c in entry.items()}))
        table.append(row)
    ring = CohRing(group, table=table)
    family = ModuleFamily(ring, payload["mode"])
    for w in g.elements:
        doc = payload["modules"][str(w)]
        dim = len(doc["degrees"])
        module = GradedModule(
            dim,
            doc["degrees"],
            [_matrix_from_doc(doc["action"][str(v)], dim) for v in g.elements],
            provenance=doc["provenance"],
        )
        family.modules[w.idx] = module
        family.multiplicities[w.idx] = {
            lookup[y].idx: n for y, n in doc["multiplicities"].items()
        }
    return ring, family


def store(path: Path, ring: CohRing, family: ModuleFamily) -> None:
    payload = payload_of(ring, family)
    envelope = {
        "artifact_version": ARTIFACT_VERSION,
        "system": payload["system"],
        "mode": family.mode,
        "checksum": _checksum(payload),
        "payload": payload,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(envelope), encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        raise CacheUnusable(f"cannot write cache file {path}: {exc}") from exc


def load(path: Path, group: WeylGroup, warn: Callable[[str], None]) -> tuple[CohRing, ModuleFamily] | None:
    try:
        envelope = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return None
    except (OSError, json.JSONDecodeError) as exc:
        warn(f"cache {path.name} unreadable ({exc}); recomputing")
        return None
    if envelope.get("artifact_version") != ARTIFACT_VERSION:
        warn(f"cache {path.name} has version {envelope.get('artifact_version')}; recomputing")
        return None
    payload = envelope.get("payload")
    if payload is None or envelope.get("checksum") != _checksum(payload):
        warn(f"cache {path.name} failed its checksum; recomputing")
        return None
    try:
        return restore(group, payload)
    except (KeyError, ValueError, IndexError) as exc:
        warn(f"cache {path.name} malformed ({exc}); recomputing")
        return None


@dataclass
class Pipeline:
    """Everything computed for one root system, quiver built on demand."""

    group: WeylGroup
    ring: CohRing
    family: ModuleFamily
    _quiver: Quiver | None = field(default=None, repr=False)

    @property
    def quiver(self) -> Quiver:
        if self._quiver is None:
            self._quiver = build_quiver(self.family)
        return self._quiver


def build_pipeline(name: str, full: bool = False) -> Pipeline:
    group = generate_weyl(build(*parse_type(name)))
    ring = CohRing(group)
    family = build_all(ring, shortcut=not full)
    return Pipeline(group, ring, family)


def load_pipeline(
    name: str,
    full: bool = False,
    cache_dir: Path | None = None,
    no_cache: bool = False,
    warn: Callable[[str], None] = lambda s: None,
) -> Pipeline:
    """Build the pipeline, restoring ring and family from cache when possible."""
    label, rank = parse_type(name)
    group = generate_weyl(build(label, rank))
    mode = "full" if full else "shortcut"
    if no_cache:
        ring = CohRing(group)
        return Pipeline(group, ring, build_all(ring, shortcut=not full))
    directory = cache_dir if cache_dir is not None else default_cache_dir()
    path = cache_file(directory, f"{label}{rank}", mode)
    restored = load(path, group, warn)
    if restored is not None:
        ring, family = restored
        return Pipeline(group, ring, family)
    ring = CohRing(group)
    family = build_all(ring, shortcut=not full)
    store(path, ring, family)
    return Pipeline(group, ring, family)


def module_doc(pipeline: Pipeline, w) -> dict:
    """Full dump of one module: degrees plus every action matrix."""
    g = pipeline.group
    module = pipeline.family.modules[w.idx]
    return {
        "system": {"type": g.rootsystem.type_label, "rank": g.rootsystem.rank},
        "element": str(w),
        "mode": pipeline.family.mode,
        "degrees": list(module.degrees),
        "action": {str(v): _matrix_doc(module.action[v.idx]) for v in g.elements},
    }
