"""Instance generation and fuzzy-ideal enumeration over membership chains."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .algebra import GammaSemiring, parse_gamma_semiring, validate_gamma_semiring
from .errors import CapExceeded
from .fuzzy import FuzzySubset, carrier_of, constraints_for

DEFAULT_ENUMERATION_CAP = 1_000_000
DEFAULT_SEARCH_CAP = 1_000_000
FAMILIES = ("from_semiring_subset", "exhaustive_tables")


# -- built-in semiring catalog -------------------------------------------------


def _table(n, op):
    return np.array([[op(a, b) for b in range(n)] for a in range(n)], dtype=np.int64)


def semiring_catalog(n: int) -> list:
    """Finite semirings ``(name, add, mul)`` on ``{0..n-1}``."""
    if n < 1:
        raise ValueError("size must be positive")
    if n == 1:
        return [("trivial", _table(1, lambda a, b: 0), _table(1, lambda a, b: 0))]
    top = n - 1
    out = [
        ("boolean" if n == 2 else f"maxmin{n}", _table(n, max), _table(n, min)),
        (f"minmax{n}", _table(n, min), _table(n, max)),
        (f"zmod{n}", _table(n, lambda a, b: (a + b) % n), _table(n, lambda a, b: (a * b) % n)),
        (f"truncplus{n}", _table(n, max), _table(n, lambda a, b: min(a + b, top))),
        (f"leftzero{n}", _table(n, max), _table(n, lambda a, b: a)),
        (f"rightzero{n}", _table(n, max), _table(n, lambda a, b: b)),
    ]
    if n == 4:
        # Boolean x Boolean, element 2i+j <-> (i, j)
        def pair(op):
            return lambda a, b: 2 * op(a >> 1, b >> 1) + op(a & 1, b & 1)
        out.append(("boolean2", _table(4, pair(max)), _table(4, pair(min))))
    return out


def _closed_subsets(add, size):
    n = add.shape[0]
    for sub in itertools.combinations(range(n), size):
        members = set(sub)
        if all(int(add[a, b]) in members for a in sub for b in sub):
            yield sub


def gamma_from_semiring(name, add, mul, gamma) -> GammaSemiring:
    """``a alpha b := a * alpha * b`` with Gamma a +-closed subset of the semiring."""
    pos = {v: i for i, v in enumerate(gamma)}
    gam = np.array(gamma, dtype=np.int64)
    add_g = np.array([[pos[int(add[u, v])] for v in gamma] for u in gamma], dtype=np.int64)
    prod = mul[mul[:, gam][:, :, None], np.arange(add.shape[0])[None, None, :]]
    label = f"{name}-g" + ".".join(map(str, gamma))
    return GammaSemiring(add, add_g, prod, label)


@dataclass(frozen=True)
class GeneratorSpec:
    s_size: int
    g_size: int
    chain_k: int = 2
    seed: Optional[int] = None
    family: str = "from_semiring_subset"

    def __post_init__(self):
        if self.s_size < 1 or self.g_size < 1:
            raise ValueError("sizes must be at least 1")
        if self.chain_k < 1:
            raise ValueError("chain_k must be at least 1")
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")


def _from_catalog(spec):
    for name, add, mul in semiring_catalog(spec.s_size):
        for gamma in _closed_subsets(add, spec.g_size):
            yield gamma_from_semiring(name, add, mul, gamma)


def _additions(n):
    out, seen = [], set()
    for name, add, _ in semiring_catalog(n):
        if add.tobytes() not in seen:
            seen.add(add.tobytes())
            out.append((name, add))
    return out


def _exhaustive(spec, cap):
    s, g = spec.s_size, spec.g_size
    adds_s, adds_g = _additions(s), _additions(g)
    cells = s * g * s
    space = len(adds_s) * len(adds_g) * s**cells
    if space > cap:
        raise CapExceeded(f"exhaustive search space {space} exceeds cap {cap}")
    for (ns, add_s), (ng, add_g) in itertools.product(adds_s, adds_g):
        for code, flat in enumerate(itertools.product(range(s), repeat=cells)):
            prod = np.array(flat, dtype=np.int64).reshape(s, g, s)
            cand = GammaSemiring(add_s, add_g, prod, f"exh-s{s}g{g}-{ns}-{ng}-{code}")
            if validate_gamma_semiring(cand).ok:
                yield cand


def generate_gamma_semirings(spec: GeneratorSpec, cap: int = DEFAULT_SEARCH_CAP) -> Iterator[GammaSemiring]:
    """Stream valid Gamma-semirings for ``spec``.

    Catalog order by default; a seed permutes the (materialized) stream.
    """
    if spec.family == "from_semiring_subset":
        stream = _from_catalog(spec)
    else:
        stream = _exhaustive(spec, cap)
    if spec.seed is None:
        yield from stream
        return
    items = list(stream)
    for i in np.random.default_rng(spec.seed).permutation(len(items)):
        yield items[int(i)]


def load_example(name: str) -> GammaSemiring:
    """Shipped example structures: ``trivial``, ``B``, ``Z2``."""
    text = resources.files("gammaring.data").joinpath(f"{name}.gsr").read_text(encoding="utf-8")
    return parse_gamma_semiring(text)


def default_corpus(max_s: int = 4, max_g: int = 3, exhaustive: bool = True) -> list:
    """Shipped examples, every catalog structure up to the given sizes, and
    (optionally) all valid 2x1 tables over catalog additions. Duplicate tables dropped."""
    out, seen = [], set()

    def add(g):
        key = (g.add_s.tobytes(), g.add_g.tobytes(), g.prod.tobytes(), g.s_size, g.g_size)
        if key not in seen:
            seen.add(key)
            out.append(g)

    for name in ("trivial", "B", "Z2"):
        add(load_example(name))
    for s in range(1, max_s + 1):
        for g in range(1, max_g + 1):
            for item in generate_gamma_semirings(GeneratorSpec(s, g)):
                add(item)
    if exhaustive:
        for item in generate_gamma_semirings(GeneratorSpec(2, 1, family="exhaustive_tables")):
            add(item)
    return out


# -- fuzzy ideal enumeration ---------------------------------------------------


def enumerate_levels(structure, chain_k: int, kind, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """Integer level vectors in ``{0..k}^n`` satisfying ``kind``, lexicographic."""
    if chain_k < 1:
        raise ValueError("chain_k must be at least 1")
    _, n = carrier_of(structure)
    total = (chain_k + 1) ** n
    if total > cap:
        raise CapExceeded(f"{total} candidate fuzzy subsets exceed the enumeration cap {cap}")
    return kernels.enumerate_chain(n, chain_k, constraints_for(structure, kind).rows)


def enumerate_fuzzy_ideals(structure, chain_k: int, kind, cap: int = DEFAULT_ENUMERATION_CAP) -> list:
    """Every fuzzy ideal of ``kind`` with values in ``{0, 1/k, ..., 1}``, lexicographic."""
    tag, _ = carrier_of(structure)
    return [FuzzySubset.from_levels(row, chain_k, tag)
            for row in enumerate_levels(structure, chain_k, kind, cap)]


def random_levels(rng: np.random.Generator, n: int, chain_k: int, count: int) -> np.ndarray:
    return rng.integers(0, chain_k + 1, size=(count, n), dtype=np.int64)


def repair_levels(structure, levels: np.ndarray, kind, max_sweeps: int = 100):
    """Raise levels until ``kind`` holds; returns None when the sweeps run out."""
    rows = constraints_for(structure, kind).rows
    fixed, ok = kernels.repair(np.ascontiguousarray(levels, dtype=np.int64), rows, max_sweeps)
    return fixed if ok else None


def sample_levels(structure, chain_k: int, kind, count: int, rng: np.random.Generator,
                  max_sweeps: int = 100) -> np.ndarray:
    """``count`` seeded random vectors, each repaired into a fuzzy ideal of ``kind``.

    Vectors whose repair does not settle are discarded, so fewer rows may come back.
    """
    _, n = carrier_of(structure)
    out = []
    for row in random_levels(rng, n, chain_k, count):
        fixed = repair_levels(structure, row, kind, max_sweeps)
        if fixed is not None:
            out.append(fixed)
    return np.array(out, dtype=np.int64).reshape(len(out), n)
