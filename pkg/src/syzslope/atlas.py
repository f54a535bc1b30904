"""Grid runs of ``certify`` with a JSON result cache and JSON-lines output."""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import ENGINE_VERSION
from .bundles import certify
from .constructions import k_of

log = logging.getLogger(__name__)

Cell = tuple[int, int, int, int]  # (n, a, b, d)


@dataclass(frozen=True)
class AtlasJob:
    n_values: tuple[int, ...]
    b_values: tuple[int, ...]
    d_values: tuple[int, ...]
    a_values: tuple[int, ...] | None = None  # None: every covered a

    def cells(self) -> list[Cell]:
        out = set()
        for n in self.n_values:
            for b in self.b_values:
                if self.a_values is not None:
                    avals = [a for a in self.a_values if a > b]
                else:
                    avals = [m * b - j for m in range(2, k_of(n) + 1) for j in range(b)]
                    avals = [a for a in avals if a > b]
                for a in avals:
                    for d in self.d_values:
                        out.add((n, a, b, d))
        return sorted(out)


def cell_key(cell: Cell) -> str:
    return "n={},a={},b={},d={}".format(*cell)


def compute_cell(cell: Cell) -> str:
    n, a, b, d = cell
    return certify(a, b, n, d).to_json()


class ResultCache:
    """JSON file cache; entries are only trusted under the same engine version."""

    def __init__(self, path: str | os.PathLike | None):
        self.path = Path(path) if path else None
        self.entries: dict[str, str] = {}
        if self.path and self.path.exists():
            data = json.loads(self.path.read_text())
            if data.get("engine") == ENGINE_VERSION:
                self.entries = data.get("entries", {})
            else:
                log.info("cache %s built by engine %s; ignoring", self.path, data.get("engine"))

    def get(self, cell: Cell) -> str | None:
        return self.entries.get(cell_key(cell))

    def put(self, cell: Cell, value: str) -> None:
        self.entries[cell_key(cell)] = value

    def save(self) -> None:
        if not self.path:
            return
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps({"engine": ENGINE_VERSION, "entries": self.entries}, sort_keys=True))
        tmp.replace(self.path)


def run_atlas(job: AtlasJob, out_path, cache_path=None, threads: int = 1) -> dict:
    cells = job.cells()
    cache = ResultCache(cache_path)
    todo = [c for c in cells if cache.get(c) is None]
    hits = len(cells) - len(todo)
    try:
        if threads > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for cell, res in zip(todo, pool.map(compute_cell, todo, chunksize=16)):
                    cache.put(cell, res)
        else:
            for cell in todo:
                cache.put(cell, compute_cell(cell))
    finally:
        cache.save()

    lines = [cache.get(c) for c in cells]
    Path(out_path).write_text("".join(line + "\n" for line in lines))
    covered = certified = 0
    for line in lines:
        obj = json.loads(line)
        covered += obj["covered"]
        certified += obj["d0"] is not None
    return {"cells": len(cells), "cache_hits": hits, "covered": covered, "with_d0": certified}
