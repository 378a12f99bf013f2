"""Supermagic labelings of the cocktail-party graph K_{2q[2]}.

The graph has 4q vertices in parts {2i-1, 2i}; it is K_{4q} minus the
perfect matching of part partners.  Such labelings exist for every q >= 2
but no closed form is implemented here: labelings are found by a
deterministic seeded local search, verified exactly (all vertex sums equal),
and cached.  Shipped results live in the package data directory; freshly
computed ones go to the user cache directory.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .graphcore import LabelingError

DEFAULT_BUDGET = 2_000_000
CACHE_ENV = "SWAPMAGIC_CACHE_DIR"


class SearchBudgetExceeded(RuntimeError):
    """The labeling search ran out of moves before balancing all vertex sums."""


def partner(v: int) -> int:
    """The unique non-neighbour of v (its part mate)."""
    return v + 1 if v % 2 == 1 else v - 1


def cp_edges(q: int) -> list[tuple[int, int]]:
    """Edges of K_{2q[2]} on vertices 1..4q, canonical order."""
    n = 4 * q
    return [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if v != partner(u)
    ]


def cp_edge_count(q: int) -> int:
    return 8 * q * q - 4 * q


def magic_sum(q: int) -> int:
    """Forced vertex sum of any supermagic labeling of K_{2q[2]}."""
    eps = cp_edge_count(q)
    return (2 * q - 1) * (eps + 1)


@dataclass(frozen=True)
class CocktailLabeling:
    """Bijection from the edges of K_{2q[2]} onto [8q^2 - 4q]."""

    q: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        eps = cp_edge_count(self.q)
        if len(self.values) != eps or sorted(self.values) != list(range(1, eps + 1)):
            raise LabelingError("cocktail labels are not a bijection onto [eps]")

    def items(self):
        return zip(cp_edges(self.q), self.values)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.items())

    def vertex_sums(self) -> dict[int, int]:
        sums = [0] * (4 * self.q + 1)
        for (u, v), lab in self.items():
            sums[u] += lab
            sums[v] += lab
        return {v: sums[v] for v in range(1, 4 * self.q + 1)}

    def alpha(self) -> int:
        sums = self.vertex_sums().values()
        return max(sums) - min(sums)


def _initial_values(q: int, rng: np.random.Generator) -> np.ndarray:
    """Block init: distance classes of the circulant model get consecutive
    label blocks, alternated low/high around each class cycle so per-vertex
    class sums start near the block average."""
    n = 4 * q
    index = {e: k for k, e in enumerate(cp_edges(q))}

    def vert(c: int) -> int:
        # circulant vertex c in Z_{4q}; antipodes c, c+2q are part mates
        return 2 * c + 1 if c < 2 * q else 2 * (c - 2 * q) + 2

    values = np.zeros(cp_edge_count(q), dtype=np.int64)
    base = 0
    for d in range(1, 2 * q):
        lo, hi = base + 1, base + n
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            c = start
            flip = False
            while not seen[c]:
                seen[c] = True
                u, v = vert(c), vert((c + d) % n)
                if u > v:
                    u, v = v, u
                if flip:
                    values[index[(u, v)]] = hi
                    hi -= 1
                else:
                    values[index[(u, v)]] = lo
                    lo += 1
                flip = not flip
                c = (c + d) % n
        base += n
    # tiny seeded shake so distinct seeds explore distinct basins
    for _ in range(n):
        i, j = rng.integers(0, len(values), size=2)
        values[i], values[j] = values[j], values[i]
    return values


def search_supermagic(
    q: int, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """Seeded greedy swap search; None if the move budget runs out.

    Any swap that lowers the squared-deviation objective must involve a
    vertex whose sum is off target, so the improving scan only has to look
    at edges incident to off-target vertices.  Plateaus are escaped with
    small-displacement label transpositions, which perturb sums gently.
    """
    rng = np.random.default_rng(seed)
    edges = cp_edges(q)
    m = len(edges)
    eu = np.array([e[0] - 1 for e in edges], dtype=np.int64)
    ev = np.array([e[1] - 1 for e in edges], dtype=np.int64)
    n = 4 * q
    sigma = magic_sum(q)

    edges_at = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        edges_at[u - 1].append(k)
        edges_at[v - 1].append(k)
    edges_at = [np.array(ks, dtype=np.int64) for ks in edges_at]

    values = _initial_values(q, rng)
    label_pos = np.zeros(m + 1, dtype=np.int64)
    label_pos[values] = np.arange(m)

    dev = (
        np.bincount(eu, weights=values, minlength=n)
        + np.bincount(ev, weights=values, minlength=n)
    ).astype(np.int64) - sigma

    def apply_swap(i: int, j: int) -> None:
        delta = values[j] - values[i]
        for w, sign in ((eu[i], 1), (ev[i], 1), (eu[j], -1), (ev[j], -1)):
            dev[w] += sign * delta
        values[i], values[j] = values[j], values[i]
        label_pos[values[i]] = i
        label_pos[values[j]] = j

    def best_swap_at(w: int) -> tuple[int, int, int]:
        cand = edges_at[w]
        x = values[cand]
        other = np.where(eu[cand] == w, ev[cand], eu[cand])
        delta = values[None, :] - x[:, None]
        db = dev[other]
        gain = (
            (dev[w] + delta) ** 2
            - dev[w] ** 2
            + (db[:, None] + delta) ** 2
            - db[:, None] ** 2
            + (dev[eu][None, :] - delta) ** 2
            - dev[eu][None, :] ** 2
            + (dev[ev][None, :] - delta) ** 2
            - dev[ev][None, :] ** 2
        )
        shared = (
            (eu[None, :] == w)
            | (ev[None, :] == w)
            | (eu[None, :] == other[:, None])
            | (ev[None, :] == other[:, None])
        )
        gain = np.where(shared, gain + 2 * delta**2, gain)
        gain[np.arange(len(cand)), cand] = 1  # self-swap is a no-op
        flat = int(np.argmin(gain))
        return int(gain.ravel()[flat]), int(cand[flat // m]), flat % m

    def teleport(defects: np.ndarray) -> bool:
        """Move a (+1, -1) defect pair to fresh vertices without changing the
        objective: swap a label x at the +1 vertex with the label x-1 when it
        sits at the -1 vertex.  Relocating the pair keeps sampling new label
        coincidences until an annihilating swap exists."""
        pos = [int(w) for w in defects if dev[w] > 0]
        neg = [int(w) for w in defects if dev[w] < 0]
        rng.shuffle(pos)
        rng.shuffle(neg)
        for u in pos:
            for w in neg:
                su = {int(values[i]): int(i) for i in edges_at[u]}
                sw = {int(values[j]): int(j) for j in edges_at[w]}
                cands = [
                    (i, sw[x - 1]) for x, i in su.items() if x - 1 in sw
                ]
                if cands:
                    i, j = cands[int(rng.integers(0, len(cands)))]
                    apply_swap(i, j)
                    return True
        return False

    moves = 0
    while moves < budget:
        if not dev.any():
            return tuple(int(x) for x in values)

        defects = np.flatnonzero(dev)
        order = defects[np.argsort(-np.abs(dev[defects]))]
        improved = False
        for w in order:
            gain, i, j = best_swap_at(int(w))
            if gain < 0:
                apply_swap(i, j)
                moves += 1
                improved = True
                break
        if improved:
            continue

        if teleport(defects):
            moves += 1
            continue

        # no sideways move either: nudge a defect edge by a small step
        w = int(rng.choice(defects))
        i = int(rng.choice(edges_at[w]))
        step = int(rng.integers(1, 5)) * (1 if rng.integers(0, 2) else -1)
        target = int(values[i]) + step
        if 1 <= target <= m:
            apply_swap(i, int(label_pos[target]))
        moves += 1
    return None


# ---------------------------------------------------------------------------
# Cache handling
# ---------------------------------------------------------------------------


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "swapmagic"


def _cache_doc(lab: CocktailLabeling) -> dict:
    return {"q": lab.q, "edges": [[u, v, int(l)] for (u, v), l in lab.items()]}


def _labeling_from_doc(q: int, doc: dict) -> CocktailLabeling:
    if doc.get("q") != q:
        raise LabelingError(f"cache file is for q={doc.get('q')}, expected {q}")
    mapping = {(int(u), int(v)): int(l) for u, v, l in doc["edges"]}
    values = tuple(mapping[e] for e in cp_edges(q))
    lab = CocktailLabeling(q, values)
    if lab.alpha() != 0:
        raise LabelingError("stored cocktail labeling is not supermagic")
    return lab


def _load_packaged(q: int) -> CocktailLabeling | None:
    try:
        ref = resources.files("swapmagic").joinpath(f"data/cocktail_q{q}.json")
        if not ref.is_file():
            return None
        doc = json.loads(ref.read_text())
    except (FileNotFoundError, ModuleNotFoundError, OSError):
        return None
    return _labeling_from_doc(q, doc)


def _load_cached(q: int) -> CocktailLabeling | None:
    path = cache_dir() / f"cocktail_q{q}.json"
    if not path.is_file():
        return None
    with open(path) as fh:
        return _labeling_from_doc(q, json.load(fh))


def _store_cache(lab: CocktailLabeling) -> None:
    directory = cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(_cache_doc(lab), sort_keys=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(payload)
    os.replace(tmp, directory / f"cocktail_q{lab.q}.json")


def load_cocktail_file(q: int, path: str | os.PathLike) -> CocktailLabeling:
    """Accept an externally supplied labeling file (same JSON schema)."""
    with open(path) as fh:
        return _labeling_from_doc(q, json.load(fh))


def supermagic_cocktail(q: int, budget: int = DEFAULT_BUDGET) -> CocktailLabeling:
    """Supermagic labeling of K_{2q[2]}: cached if available, searched if not.

    Raises SearchBudgetExceeded when the search cannot balance the sums
    within `budget` moves; a bigger budget, a warm cache directory, or an
    external labeling file (load_cocktail_file) are the remedies.
    """
    if q < 2:
        raise LabelingError(
            f"K_{{2q[2]}} is supermagic only for 2q >= 3; q={q} is too small"
        )
    lab = _load_packaged(q) or _load_cached(q)
    if lab is not None:
        return lab
    for seed in range(8):
        values = search_supermagic(q, seed=seed, budget=budget)
        if values is not None:
            lab = CocktailLabeling(q, values)
            if lab.alpha() != 0:
                raise AssertionError("search returned an unbalanced labeling")
            _store_cache(lab)
            return lab
    raise SearchBudgetExceeded(
        f"no supermagic labeling of K_{{2q[2]}} found for q={q} within "
        f"{budget} moves; retry with a larger budget, point {CACHE_ENV} at a "
        f"warm cache, or supply a labeling file via load_cocktail_file"
    )
