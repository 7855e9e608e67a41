"""Core hypergraph type and its canonical file format.

Edges form a *multiset*: the same edge may appear several times and every
cardinality in the library counts multiplicity.  Vertex ids are dense
integers 0..n-1, edges are strictly sorted tuples of vertex ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

FORMAT_NAME = "hypergraph"
FORMAT_VERSION = 1


class HypergraphError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    """An r-bounded multiset hypergraph on vertex set {0..num_vertices-1}."""

    num_vertices: int
    edges: tuple[tuple[int, ...], ...]
    r_bound: int

    def __post_init__(self):
        if self.num_vertices < 0:
            raise HypergraphError("num_vertices must be nonnegative")
        if self.r_bound < 1:
            raise HypergraphError("r_bound must be >= 1")
        for e in self.edges:
            if not 1 <= len(e) <= self.r_bound:
                raise HypergraphError(f"edge {e} violates size bounds [1, {self.r_bound}]")
            if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise HypergraphError(f"edge {e} is not strictly sorted")
            if e[0] < 0 or e[-1] >= self.num_vertices:
                raise HypergraphError(f"edge {e} has vertex outside [0, {self.num_vertices})")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_uniform(self) -> bool:
        return all(len(e) == self.r_bound for e in self.edges)

    def edge_sizes(self) -> list[int]:
        return [len(e) for e in self.edges]

    @staticmethod
    def from_edges(num_vertices: int, edges: Iterable[Sequence[int]], r_bound: int | None = None) -> "Hypergraph":
        canon = tuple(tuple(sorted(e)) for e in edges)
        if r_bound is None:
            r_bound = max((len(e) for e in canon), default=1)
        return Hypergraph(num_vertices, canon, r_bound)


def write_hypergraph(h: Hypergraph, path: str) -> None:
    """Canonical writer: edges sorted lexicographically."""
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "n": h.num_vertices,
        "r": h.r_bound,
        "edges": [list(e) for e in sorted(h.edges)],
    }
    with open(path, "w") as f:
        json.dump(doc, f)
        f.write("\n")


def read_hypergraph(path: str) -> Hypergraph:
    """Reader accepts edges in any order."""
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as exc:
        raise HypergraphError(f"{path}: not a valid hypergraph file: {exc}") from exc
    try:
        n = int(doc["n"])
        r = int(doc["r"])
        edges = [tuple(int(v) for v in e) for e in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise HypergraphError(f"{path}: missing or malformed fields: {exc}") from exc
    return Hypergraph(n, tuple(tuple(sorted(e)) for e in edges), r)
