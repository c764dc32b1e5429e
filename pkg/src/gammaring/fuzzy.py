"""Exact-rational fuzzy subsets and the fuzzy ideal predicates.

Every predicate compiles to rows ``(t, p, q)`` meaning ``mu(t) >= min(mu(p), mu(q))``.
Values are compared after scaling to a common denominator, which is exact.
"""

from __future__ import annotations

import enum
import math
import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .algebra import GammaSemiring
from .errors import CarrierMismatch, ParseError
from .operator import FiniteSemiring


class IdealKind(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two_sided"
    K_LEFT = "k_left"
    K_RIGHT = "k_right"
    K_TWO_SIDED = "k_two_sided"
    H_LEFT = "h_left"
    H_RIGHT = "h_right"
    H_TWO_SIDED = "h_two_sided"

    @classmethod
    def parse(cls, text: Union[str, "IdealKind"]) -> "IdealKind":
        if isinstance(text, cls):
            return text
        key = text.strip().lower().replace("-", "_")
        if key == "ideal":
            key = "two_sided"
        try:
            return cls(key)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown ideal kind {text!r} (choose from {choices})") from None

    @property
    def sides(self) -> tuple:
        base = self.value.split("_", 1)[-1] if self.value[:2] in ("k_", "h_") else self.value
        return ("left", "right") if base == "two_sided" else (base,)

    @property
    def extra(self) -> Optional[str]:
        return self.value[0] if self.value[:2] in ("k_", "h_") else None

    @property
    def base(self) -> "IdealKind":
        return IdealKind(self.value[2:]) if self.extra else self


ALL_KINDS = tuple(IdealKind)


def _membership(v) -> Fraction:
    f = Fraction(v)
    if not 0 <= f <= 1:
        raise ValueError(f"membership value {f} outside [0, 1]")
    return f


@dataclass(frozen=True)
class FuzzySubset:
    """Membership values indexed by a carrier: ``"S"``, ``"L"`` or ``"R"``."""

    values: tuple
    carrier: str = "S"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_membership(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @classmethod
    def constant(cls, n, c, carrier="S"):
        return cls((c,) * n, carrier)

    @classmethod
    def from_levels(cls, levels, k, carrier="S"):
        """Values ``level / k`` from integer levels in ``0..k``."""
        return cls(tuple(Fraction(int(x), k) for x in levels), carrier)

    def denominator(self) -> int:
        return math.lcm(*(v.denominator for v in self.values)) if self.values else 1

    def scaled(self, denominator: Optional[int] = None) -> np.ndarray:
        """Integer numerators over a common denominator (default: the lcm)."""
        d = denominator or self.denominator()
        out = []
        for v in self.values:
            num = v * d
            if num.denominator != 1:
                raise ValueError(f"{v} is not a multiple of 1/{d}")
            out.append(int(num))
        return np.array(out, dtype=np.int64)

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.values) + ")"


def pointwise_leq(a: FuzzySubset, b: FuzzySubset) -> bool:
    if a.carrier != b.carrier or len(a) != len(b):
        raise CarrierMismatch(f"cannot compare fuzzy subsets on {a.carrier}[{len(a)}] and {b.carrier}[{len(b)}]")
    return all(x <= y for x, y in zip(a.values, b.values))


# -- fuzzy subset files --------------------------------------------------------


def parse_fuzzy_subset(text: str, carrier: str = "S", size: Optional[int] = None) -> FuzzySubset:
    """Lines ``index p/q`` (``#`` comments); every index 0..n-1 exactly once."""
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'index p/q', got {line!r}", lineno)
        try:
            idx = int(parts[0])
            val = _membership(Fraction(parts[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), lineno) from None
        if idx in seen:
            raise ParseError(f"index {idx} given twice", lineno)
        seen[idx] = val
    n = len(seen) if size is None else size
    if sorted(seen) != list(range(n)):
        raise ParseError(f"indices must cover 0..{n - 1} exactly once")
    return FuzzySubset(tuple(seen[i] for i in range(n)), carrier)


def serialize_fuzzy_subset(sigma: FuzzySubset) -> str:
    return "".join(f"{i} {v.numerator}/{v.denominator}\n" for i, v in enumerate(sigma.values))


# -- constraint compilation ----------------------------------------------------

_GAMMA_VARS = {
    "additive": ("a", "b"),
    "left-product": ("a", "alpha", "b"),
    "right-product": ("a", "alpha", "b"),
    "k": ("x", "y"),
    "h": ("x", "z", "y1", "y2"),
}
_SEMIRING_VARS = {
    "additive": ("x", "y"),
    "left-product": ("x", "y"),
    "right-product": ("x", "y"),
    "k": ("x", "y"),
    "h": ("x", "z", "y1", "y2"),
}


@dataclass(frozen=True)
class Constraints:
    rows: np.ndarray  # (m, 3) of (t, p, q)
    family: tuple  # family name per row
    witness: tuple  # quantifier tuple per row
    varnames: dict

    def __len__(self):
        return self.rows.shape[0]


def _dedupe_first(rows, wits):
    """Keep the first occurrence of each (t, p, q) row."""
    if len(rows) == 0:
        return rows, wits
    _, first = np.unique(rows, axis=0, return_index=True)
    first.sort()
    return rows[first], wits[first]


def _families(add, n, product_rows, extra_needed):
    """Row blocks for an algebra with addition table ``add`` on ``n`` elements."""
    r = np.arange(n)
    out = {}
    a, b = np.meshgrid(r, r, indexing="ij")
    a, b = a.ravel(), b.ravel()
    out["additive"] = _dedupe_first(np.stack([add[a, b], a, b], axis=1), np.stack([a, b], axis=1))
    out.update(product_rows)
    if "k" in extra_needed:
        out["k"] = _dedupe_first(np.stack([a, add[a, b], b], axis=1), np.stack([a, b], axis=1))
    if "h" in extra_needed:
        # quantifier order (x, z, y1, y2) with x + y1 + z = y2 + z
        lhs = add[add[r[:, None, None], r[None, None, :]], r[None, :, None]]  # (x, z, y1)
        rhs = add.T  # rhs[z, y2] = y2 + z
        hit = np.argwhere(lhs[:, :, :, None] == rhs[None, :, None, :])
        rows = np.stack([hit[:, 0], hit[:, 2], hit[:, 3]], axis=1)
        out["h"] = _dedupe_first(rows, hit)
    return out


def _assemble(blocks, order, varnames):
    rows, fam, wit = [], [], []
    for name in order:
        r, w = blocks[name]
        rows.append(np.asarray(r, dtype=np.int64).reshape(-1, 3))
        fam.extend([name] * len(r))
        wit.extend(tuple(int(x) for x in row) for row in np.asarray(w).reshape(len(r), -1))
    arr = np.ascontiguousarray(np.concatenate(rows)) if rows else np.zeros((0, 3), dtype=np.int64)
    return Constraints(arr, tuple(fam), tuple(wit), varnames)


def _family_order(kind: IdealKind):
    order = ["additive"] + [f"{side}-product" for side in kind.sides]
    if kind.extra:
        order.append(kind.extra)
    return order


_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _cached(structure, kind, build):
    per = _CACHE.setdefault(structure, {})
    if kind not in per:
        per[kind] = build()
    return per[kind]


def gamma_constraints(g: GammaSemiring, kind) -> Constraints:
    kind = IdealKind.parse(kind)

    def build():
        s, m = g.s_size, g.g_size
        a, al, b = (x.ravel() for x in np.meshgrid(np.arange(s), np.arange(m), np.arange(s), indexing="ij"))
        t = g.prod[a, al, b]
        wit = np.stack([a, al, b], axis=1)
        products = {
            "left-product": _dedupe_first(np.stack([t, b, b], axis=1), wit),
            "right-product": _dedupe_first(np.stack([t, a, a], axis=1), wit),
        }
        order = _family_order(kind)
        blocks = _families(g.add_s, s, products, order)
        return _assemble(blocks, order, _GAMMA_VARS)

    return _cached(g, kind, build)


def semiring_constraints(sr: FiniteSemiring, kind) -> Constraints:
    kind = IdealKind.parse(kind)

    def build():
        n = sr.size
        x, y = (v.ravel() for v in np.meshgrid(np.arange(n), np.arange(n), indexing="ij"))
        t = sr.mul[x, y]
        wit = np.stack([x, y], axis=1)
        products = {
            "left-product": _dedupe_first(np.stack([t, y, y], axis=1), wit),
            "right-product": _dedupe_first(np.stack([t, x, x], axis=1), wit),
        }
        order = _family_order(kind)
        blocks = _families(sr.add, n, products, order)
        return _assemble(blocks, order, _SEMIRING_VARS)

    return _cached(sr, kind, build)


def constraints_for(structure, kind) -> Constraints:
    if isinstance(structure, GammaSemiring):
        return gamma_constraints(structure, kind)
    return semiring_constraints(structure, kind)


def carrier_of(structure) -> tuple:
    """(carrier tag, size) of a Gamma-semiring's S or an operator semiring."""
    if isinstance(structure, GammaSemiring):
        return "S", structure.s_size
    return structure.carrier, structure.size


# -- predicates ----------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    family: str
    names: tuple
    witness: tuple

    def __str__(self):
        return " ".join(f"{n}={v}" for n, v in zip(self.names, self.witness))


@dataclass(frozen=True)
class IdealCheck:
    ok: bool
    counterexample: Optional[Counterexample] = None

    def __bool__(self):
        return self.ok


def _check(structure, mu: FuzzySubset, kind) -> IdealCheck:
    tag, n = carrier_of(structure)
    if mu.carrier != tag or len(mu) != n:
        raise CarrierMismatch(f"fuzzy subset on {mu.carrier}[{len(mu)}] does not live on {tag}[{n}]")
    cons = constraints_for(structure, kind)
    hit = kernels.first_violation(mu.scaled(), cons.rows)
    if hit < 0:
        return IdealCheck(True)
    fam = cons.family[hit]
    return IdealCheck(False, Counterexample(fam, cons.varnames[fam], cons.witness[hit]))


def check_gamma_ideal(g: GammaSemiring, sigma: FuzzySubset, kind) -> IdealCheck:
    """Decide whether ``sigma`` is a fuzzy ideal of the given kind on S.

    Every kind includes ``sigma(a+b) >= min(sigma(a), sigma(b))``. On failure the
    counterexample is the smallest witness of the first failing family, in the
    order additive, left-product, right-product, k, h.
    """
    return _check(g, sigma, kind)


def check_semiring_ideal(sr: FiniteSemiring, mu: FuzzySubset, kind) -> IdealCheck:
    return _check(sr, mu, kind)


def satisfies_levels(structure, levels: np.ndarray, kind) -> np.ndarray:
    """Vectorised predicate over integer level vectors, shape (N, n) -> bool (N,)."""
    cons = constraints_for(structure, kind)
    return kernels.batch_satisfies(np.ascontiguousarray(levels, dtype=np.int64), cons.rows)


def check_many(structure, subsets: Sequence[FuzzySubset], kind) -> list:
    return [_check(structure, mu, kind).ok for mu in subsets]
