"""Left and right operator semirings as finite semirings of action tables.

A class of formal sums is identified with the map it induces on S, so two
formal sums are congruent exactly when their action tables agree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

from . import kernels
from .algebra import GammaSemiring, sum_of_products
from .errors import CapExceeded

DEFAULT_MAX_ELEMENTS = 100_000
DEFAULT_BRUTE_FORCE_CAP = 20_000_000

ActionTable = tuple  # image of 0..s_size-1, one S-index per entry


@dataclass(frozen=True)
class FormalSum:
    """A nonempty multiset of generator pairs.

    Left sums hold ``(x, alpha)`` pairs, right sums hold ``(alpha, x)`` pairs.
    Equality is multiset equality; ``terms`` keeps discovery order for printing.
    """

    terms: tuple
    side: str = "left"

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a formal sum needs at least one term")
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', not {self.side!r}")
        object.__setattr__(self, "terms", tuple((int(u), int(v)) for u, v in self.terms))

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.side == other.side and Counter(self.terms) == Counter(other.terms)

    def __hash__(self):
        return hash((self.side, tuple(sorted(self.terms))))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if self.side != other.side:
            raise ValueError("cannot add formal sums from different sides")
        return FormalSum(self.terms + other.terms, self.side)

    def __str__(self):
        return "+".join(f"[{u},{v}]" for u, v in self.terms)


def formal_product(g: GammaSemiring, f: FormalSum, h: FormalSum) -> FormalSum:
    """Expand ``f * h`` term by term.

    Left: ``[x,al]*[y,be] = [x al y, be]``. Right: ``[al,x]*[be,y] = [al, x be y]``.
    """
    if f.side != h.side:
        raise ValueError("cannot multiply formal sums from different sides")
    if f.side == "left":
        terms = [(int(g.prod[x, al, y]), be) for x, al in f.terms for y, be in h.terms]
    else:
        terms = [(al, int(g.prod[x, be, y])) for al, x in f.terms for be, y in h.terms]
    return FormalSum(tuple(terms), f.side)


def canonical_class(g: GammaSemiring, f: FormalSum) -> ActionTable:
    return tuple(sum_of_products(g, f.terms, a, side=f.side) for a in range(g.s_size))


def generator_actions(g: GammaSemiring, side: str):
    """Generator pairs in lexicographic order with their action tables, shape (m, s)."""
    if side == "left":
        pairs = [(x, al) for x in range(g.s_size) for al in range(g.g_size)]
        tables = np.array([g.prod[x, al, :] for x, al in pairs], dtype=np.int64)
    elif side == "right":
        pairs = [(al, x) for al in range(g.g_size) for x in range(g.s_size)]
        tables = np.array([g.prod[:, al, x] for al, x in pairs], dtype=np.int64)
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return pairs, tables


@dataclass(frozen=True, eq=False)
class FiniteSemiring:
    """Operator semiring: elements are action tables, with add/mul Cayley tables.

    ``mul[i, j]`` is the class product ``elements[i] * elements[j]``: composition
    ``f(g(a))`` on the left side, ``g(f(a))`` on the right side.
    """

    add: np.ndarray
    mul: np.ndarray
    elements: tuple
    witnesses: tuple
    side: str
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for attr in ("add", "mul"):
            arr = np.array(getattr(self, attr), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
        if not self._index:
            object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def carrier(self) -> str:
        return "L" if self.side == "left" else "R"

    def index_of(self, action: ActionTable) -> int:
        return self._index[tuple(int(v) for v in action)]

    def element_array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(self.size, -1)

    def law_violations(self):
        """Failing semiring laws with the first witness each; empty when all hold."""
        n = self.size
        add, mul = self.add, self.mul
        r = np.arange(n)
        checks = {
            "add-commutative": add != add.T,
            "add-associative": add[add] != add[r[:, None, None], add[None, :, :]],
            "mul-associative": mul[mul] != mul[r[:, None, None], mul[None, :, :]],
            "left-distributive": mul[r[:, None, None], add[None, :, :]]
            != add[mul[:, :, None], mul[:, None, :]],
            "right-distributive": mul[add] != add[mul[:, None, :], mul[None, :, :]],
        }
        out = []
        for law, bad in checks.items():
            hit = np.argwhere(bad)
            if len(hit):
                out.append((law, tuple(int(i) for i in hit[0])))
        return out


def _compose(side, f, h):
    if side == "left":
        return tuple(f[b] for b in h)
    return tuple(h[b] for b in f)


def _build(g: GammaSemiring, side: str, max_elements: int) -> FiniteSemiring:
    add_s = g.add_s
    pairs, tables = generator_actions(g, side)
    elements = []
    witnesses = []
    index = {}

    def admit(action, witness):
        if action in index:
            return
        if len(elements) >= max_elements:
            raise CapExceeded(f"operator semiring exceeds {max_elements} elements")
        index[action] = len(elements)
        elements.append(action)
        witnesses.append(witness)

    for pair, row in zip(pairs, tables):
        admit(tuple(int(v) for v in row), FormalSum((pair,), side))

    # breadth-first pair closure; first witness found for a class is kept
    i = 0
    while i < len(elements):
        fi, wi = elements[i], witnesses[i]
        for j in range(i + 1):
            fj, wj = elements[j], witnesses[j]
            admit(tuple(int(add_s[u, v]) for u, v in zip(fj, fi)), wj + wi)
            admit(_compose(side, fj, fi), formal_product(g, wj, wi))
            if j != i:
                admit(_compose(side, fi, fj), formal_product(g, wi, wj))
        i += 1

    n = len(elements)
    arr = np.array(elements, dtype=np.int64).reshape(n, g.s_size)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        sums = add_s[arr[i][None, :], arr]
        comps = arr[i][arr] if side == "left" else arr[:, arr[i]]
        for j in range(n):
            add[i, j] = index[tuple(int(v) for v in sums[j])]
            mul[i, j] = index[tuple(int(v) for v in comps[j])]
    return FiniteSemiring(add, mul, tuple(elements), tuple(witnesses), side, dict(index))


def build_left_operator_semiring(g: GammaSemiring, max_elements: int = DEFAULT_MAX_ELEMENTS) -> FiniteSemiring:
    return _build(g, "left", max_elements)


def build_right_operator_semiring(g: GammaSemiring, max_elements: int = DEFAULT_MAX_ELEMENTS) -> FiniteSemiring:
    return _build(g, "right", max_elements)


def build_operator_semiring(g, side, max_elements=DEFAULT_MAX_ELEMENTS):
    return _build(g, side, max_elements)


@dataclass(frozen=True)
class UnityWitness:
    formal_sum: FormalSum
    element: int


def _find_identity_action(g, sr, side):
    if sr.side != side:
        raise ValueError(f"expected a {side} operator semiring, got {sr.side}")
    ident = tuple(range(g.s_size))
    idx = sr._index.get(ident)
    if idx is None:
        return None
    return UnityWitness(sr.witnesses[idx], idx)


def find_left_unity(g: GammaSemiring, l: FiniteSemiring) -> Optional[UnityWitness]:
    return _find_identity_action(g, l, "left")


def find_right_unity(g: GammaSemiring, r: FiniteSemiring) -> Optional[UnityWitness]:
    return _find_identity_action(g, r, "right")


def verify_unity_is_identity(sr: FiniteSemiring, u: UnityWitness) -> bool:
    """Whether the unity's element is a two-sided identity of ``sr.mul``."""
    e = u.element
    r = np.arange(sr.size)
    return bool((sr.mul[e, :] == r).all() and (sr.mul[:, e] == r).all())


def brute_force_operator_semiring(g: GammaSemiring, side: str, max_len: int,
                                  cap: int = DEFAULT_BRUTE_FORCE_CAP) -> set:
    """Action tables of every formal sum with at most ``max_len`` generator terms.

    Independent of the closure: no products are formed, every multiset of
    generators is summed directly.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    _, tables = generator_actions(g, side)
    m, s = tables.shape
    nodes = comb(m + max_len, max_len) - 1
    if nodes > cap:
        raise CapExceeded(f"{nodes} formal sums exceed the brute-force cap {cap}")
    if s**s > 1 << 24:
        raise CapExceeded(f"action space {s}^{s} too large for brute force")
    codes = kernels.multiset_codes(tables, np.ascontiguousarray(g.add_s), max_len)
    out = set()
    for code in codes.tolist():
        digits = []
        for _ in range(s):
            code, d = divmod(code, s)
            digits.append(d)
        out.add(tuple(reversed(digits)))
    return out
