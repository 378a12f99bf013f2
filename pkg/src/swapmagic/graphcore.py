"""Complete-graph model: canonical edge indexing, edge labelings, label sums.

Vertices of K_n are numbered 1..n.  Edges are unordered pairs {u, v} with
u < v, ordered lexicographically; the canonical edge index is 1-based, so
labelings are arrays indexed by edge position whose entries form a bijection
onto [eps] with eps = n(n-1)/2.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class LabelingError(ValueError):
    """Raised for malformed labelings, files, or invalid arguments."""


def edge_count(n: int) -> int:
    """Number of edges of K_n."""
    if n < 1:
        raise LabelingError(f"vertex count must be positive, got {n}")
    return n * (n - 1) // 2


def edge_index(n: int, u: int, v: int) -> int:
    """1-based canonical index of edge {u, v} of K_n, lexicographic in (u, v)."""
    if not (1 <= u < v <= n):
        raise LabelingError(f"need 1 <= u < v <= n, got u={u}, v={v}, n={n}")
    return (u - 1) * (2 * n - u) // 2 + (v - u)


def edge_of_index(n: int, idx: int) -> tuple[int, int]:
    """Inverse of edge_index: the edge {u, v} at canonical position idx."""
    eps = edge_count(n)
    if not (1 <= idx <= eps):
        raise LabelingError(f"edge index {idx} out of range [1, {eps}]")
    u = 1
    base = 0
    while base + (n - u) < idx:
        base += n - u
        u += 1
    return u, u + (idx - base)


def all_edges(n: int) -> list[tuple[int, int]]:
    """All edges of K_n in canonical order."""
    return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]


@dataclass(frozen=True)
class EdgeLabeling:
    """A bijection from the edges of K_n to [eps], stored in canonical edge order."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        eps = edge_count(self.n)
        if len(self.values) != eps:
            raise LabelingError(
                f"expected {eps} labels for n={self.n}, got {len(self.values)}"
            )
        if sorted(self.values) != list(range(1, eps + 1)):
            raise LabelingError("labels are not a bijection onto [eps]")

    @property
    def eps(self) -> int:
        return len(self.values)

    def label(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.values[edge_index(self.n, u, v) - 1]

    def edges(self) -> list[tuple[int, int]]:
        return all_edges(self.n)

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return zip(all_edges(self.n), self.values)

    def edge_of_label(self, label: int) -> tuple[int, int]:
        """The edge carrying a given label."""
        return edge_of_index(self.n, self.values.index(label) + 1)

    def label_to_edge(self) -> dict[int, tuple[int, int]]:
        return {lab: e for e, lab in self.items()}


def from_edge_labels(n: int, mapping: Mapping[tuple[int, int], int]) -> EdgeLabeling:
    """Build a labeling from an edge -> label mapping covering all of K_n."""
    eps = edge_count(n)
    values = [0] * eps
    for (u, v), lab in mapping.items():
        if u > v:
            u, v = v, u
        values[edge_index(n, u, v) - 1] = lab
    if 0 in values:
        missing = edge_of_index(n, values.index(0) + 1)
        raise LabelingError(f"no label given for edge {missing}")
    return EdgeLabeling(n, tuple(values))


def identity_labeling(n: int) -> EdgeLabeling:
    """Labels equal to canonical edge positions."""
    return EdgeLabeling(n, tuple(range(1, edge_count(n) + 1)))


def vertex_sums(t: EdgeLabeling) -> dict[int, int]:
    """Label sum s(t, v) for every vertex v."""
    sums = [0] * (t.n + 1)
    for (u, v), lab in t.items():
        sums[u] += lab
        sums[v] += lab
    return {v: sums[v] for v in range(1, t.n + 1)}


def labels_by_vertex(t: EdgeLabeling) -> dict[int, list[int]]:
    """Sorted label set S(t, v) of every vertex."""
    out: dict[int, list[int]] = {v: [] for v in range(1, t.n + 1)}
    for (u, v), lab in t.items():
        out[u].append(lab)
        out[v].append(lab)
    for v in out:
        out[v].sort()
    return out


def alpha_of(t: EdgeLabeling) -> int:
    """Smallest alpha such that all vertex label sums differ by at most alpha."""
    sums = vertex_sums(t).values()
    return max(sums) - min(sums)


def permute_vertices(t: EdgeLabeling, perm: Sequence[int]) -> EdgeLabeling:
    """Relabel vertices; perm[v-1] is the new name of vertex v."""
    if sorted(perm) != list(range(1, t.n + 1)):
        raise LabelingError("perm is not a permutation of 1..n")
    mapping = {}
    for (u, v), lab in t.items():
        a, b = perm[u - 1], perm[v - 1]
        if a > b:
            a, b = b, a
        mapping[(a, b)] = lab
    return from_edge_labels(t.n, mapping)


@dataclass(frozen=True)
class SwapRecord:
    """A base labeling together with a relabeling of bounded per-edge movement."""

    base: EdgeLabeling
    swapped: EdgeLabeling
    p: int

    def __post_init__(self) -> None:
        if self.base.n != self.swapped.n:
            raise LabelingError("base and swapped labelings have different n")
        if self.p < 0:
            raise LabelingError("swap magnitude must be non-negative")

    def is_valid(self) -> bool:
        return self.max_displacement() <= self.p

    def max_displacement(self) -> int:
        return max(
            abs(a - b) for a, b in zip(self.base.values, self.swapped.values)
        )

    def validate(self) -> None:
        if not self.is_valid():
            raise LabelingError(
                f"swap moves a label by {self.max_displacement()} > p={self.p}"
            )


def apply_label_permutation(t: EdgeLabeling, pi: Sequence[int]) -> EdgeLabeling:
    """New labeling with label x replaced by pi[x-1] on every edge."""
    return EdgeLabeling(t.n, tuple(pi[lab - 1] for lab in t.values))


# ---------------------------------------------------------------------------
# Persistence.  Files store explicit (u, v, label) triples so they stay valid
# even if the canonical edge order were ever revised.
# ---------------------------------------------------------------------------


def labeling_to_json(t: EdgeLabeling, meta: dict | None = None) -> dict:
    doc: dict = {"n": t.n, "edges": [[u, v, lab] for (u, v), lab in t.items()]}
    if meta:
        doc["meta"] = meta
    return doc


def labeling_from_json(doc: dict) -> tuple[EdgeLabeling, dict]:
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise LabelingError("labeling file must be an object with 'n' and 'edges'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise LabelingError(f"invalid vertex count: {n!r}")
    eps = edge_count(n)
    entries = doc["edges"]
    if len(entries) != eps:
        raise LabelingError(f"expected {eps} edge entries, got {len(entries)}")
    mapping: dict[tuple[int, int], int] = {}
    seen_labels: set[int] = set()
    for entry in entries:
        try:
            u, v, lab = (int(x) for x in entry)
        except (TypeError, ValueError) as exc:
            raise LabelingError(f"malformed edge entry {entry!r}") from exc
        if not (1 <= u < v <= n):
            raise LabelingError(f"invalid edge ({u}, {v}) for n={n}")
        if not (1 <= lab <= eps):
            raise LabelingError(f"label {lab} outside [1, {eps}] (labels are 1-based)")
        if (u, v) in mapping:
            raise LabelingError(f"duplicate edge ({u}, {v})")
        if lab in seen_labels:
            raise LabelingError(f"not a bijection: label {lab} appears twice")
        mapping[(u, v)] = lab
        seen_labels.add(lab)
    return from_edge_labels(n, mapping), doc.get("meta", {})


def save_labeling(t: EdgeLabeling, path: str | os.PathLike, meta: dict | None = None) -> None:
    """Write a labeling (with optional meta block) as JSON, atomically."""
    doc = labeling_to_json(t, meta)
    payload = json.dumps(doc, sort_keys=True, indent=1)
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_labeling(path: str | os.PathLike) -> EdgeLabeling:
    t, _ = load_labeling_with_meta(path)
    return t


def load_labeling_with_meta(path: str | os.PathLike) -> tuple[EdgeLabeling, dict]:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LabelingError(f"malformed labeling file {path}: {exc}") from exc
    return labeling_from_json(doc)
