"""Finite Gamma-semirings: tables, validation and the text format."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import ParseError

AXIOM_IDS = (
    "S-commutative",
    "S-associative",
    "Gamma-commutative",
    "Gamma-associative",
    "(1)",
    "(2)",
    "(3)",
    "(4)",
)
_ARITY = (2, 3, 2, 3, 4, 4, 4, 5)


def _frozen(a, ndim, what):
    arr = np.array(a, dtype=np.int64)
    if arr.ndim != ndim:
        raise ValueError(f"{what}: expected a {ndim}-d table, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GammaSemiring:
    """S and Gamma given by addition tables plus the product table ``prod[a, alpha, b]``.

    Elements are dense indices ``0..s_size-1`` and ``0..g_size-1``. Nothing is
    validated here beyond table shapes; see :func:`validate_gamma_semiring`.
    """

    add_s: np.ndarray
    add_g: np.ndarray
    prod: np.ndarray
    name: Optional[str] = None

    def __post_init__(self):
        add_s = _frozen(self.add_s, 2, "addS")
        add_g = _frozen(self.add_g, 2, "addGamma")
        prod = _frozen(self.prod, 3, "prod")
        s, g = add_s.shape[0], add_g.shape[0]
        if s < 1 or g < 1:
            raise ValueError("S and Gamma must be nonempty")
        if add_s.shape != (s, s) or add_g.shape != (g, g) or prod.shape != (s, g, s):
            raise ValueError(
                f"inconsistent table shapes addS={add_s.shape} addGamma={add_g.shape} prod={prod.shape}"
            )
        object.__setattr__(self, "add_s", add_s)
        object.__setattr__(self, "add_g", add_g)
        object.__setattr__(self, "prod", prod)

    @property
    def s_size(self) -> int:
        return self.add_s.shape[0]

    @property
    def g_size(self) -> int:
        return self.add_g.shape[0]

    @property
    def label(self) -> str:
        return self.name or "unnamed"

    def same_tables(self, other: "GammaSemiring") -> bool:
        return (
            np.array_equal(self.add_s, other.add_s)
            and np.array_equal(self.add_g, other.add_g)
            and np.array_equal(self.prod, other.prod)
        )

    def with_prod(self, prod, name=None) -> "GammaSemiring":
        return GammaSemiring(self.add_s, self.add_g, prod, name if name is not None else self.name)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self):
        if self.ok:
            return ["OK: axioms (1)-(4) hold"]
        return [f"FAIL {axiom} witness=({','.join(map(str, w))})" for axiom, w in self.violations]


def _range_violations(g: GammaSemiring):
    out = []
    for label, table, bound in (("addS", g.add_s, g.s_size), ("addGamma", g.add_g, g.g_size),
                                ("prod", g.prod, g.s_size)):
        bad = np.argwhere((table < 0) | (table >= bound))
        if len(bad):
            out.append((f"range:{label}", tuple(int(i) for i in bad[0])))
    return out


def validate_gamma_semiring(g: GammaSemiring) -> ValidationReport:
    """Exhaustively check both additions and the four product axioms.

    Every failing family is listed with its lexicographically smallest witness.
    Out-of-range entries are reported instead, since nothing else can be evaluated.
    """
    bad_range = _range_violations(g)
    if bad_range:
        return ValidationReport(tuple(bad_range))
    wit = kernels.axiom_witnesses(g.add_s, g.add_g, g.prod)
    violations = []
    for row, (axiom, arity) in enumerate(zip(AXIOM_IDS, _ARITY)):
        if wit[row, 0] >= 0:
            violations.append((axiom, tuple(int(x) for x in wit[row, :arity])))
    return ValidationReport(tuple(violations))


def ternary_product(g: GammaSemiring, a: int, alpha: int, b: int) -> int:
    return int(g.prod[a, alpha, b])


def sum_of_products(g: GammaSemiring, terms: Iterable[tuple], a: int, side: str = "left") -> int:
    """Evaluate a formal sum's action at ``a``.

    Left terms are ``(x, alpha)`` giving ``sum x alpha a``; right terms are
    ``(alpha, x)`` giving ``sum a alpha x``.
    """
    acc = None
    for u, v in terms:
        term = g.prod[u, v, a] if side == "left" else g.prod[a, u, v]
        acc = term if acc is None else g.add_s[acc, term]
    if acc is None:
        raise ValueError("empty formal sum")
    return int(acc)


# -- text format -------------------------------------------------------------


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


class _Reader:
    def __init__(self, text):
        self._lines = list(_content_lines(text))
        self._pos = 0

    def next(self, expecting):
        if self._pos >= len(self._lines):
            last = self._lines[-1][0] if self._lines else 1
            raise ParseError(f"unexpected end of input, expected {expecting}", last)
        item = self._lines[self._pos]
        self._pos += 1
        return item

    def keyword(self, word):
        lineno, line = self.next(f"'{word}'")
        if line != word:
            raise ParseError(f"expected '{word}', got {line!r}", lineno)

    def sized(self, word):
        lineno, line = self.next(f"'{word} <n>'")
        parts = line.split()
        if len(parts) != 2 or parts[0] != word:
            raise ParseError(f"expected '{word} <n>', got {line!r}", lineno)
        try:
            n = int(parts[1])
        except ValueError:
            raise ParseError(f"size must be an integer, got {parts[1]!r}", lineno) from None
        if n < 1:
            raise ParseError(f"{word} size must be positive", lineno)
        return n

    def table(self, rows, cols, bound, what):
        out = []
        for _ in range(rows):
            lineno, line = self.next(f"a row of {what}")
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError:
                raise ParseError(f"non-integer entry in {what}: {line!r}", lineno) from None
            if len(row) != cols:
                raise ParseError(f"{what} row has {len(row)} entries, expected {cols}", lineno)
            for v in row:
                if not 0 <= v < bound:
                    raise ParseError(f"{what} entry {v} out of range 0..{bound - 1}", lineno)
            out.append(row)
        return out

    def finish(self):
        if self._pos < len(self._lines):
            lineno, line = self._lines[self._pos]
            raise ParseError(f"trailing content {line!r}", lineno)


def parse_gamma_semiring(text: str) -> GammaSemiring:
    """Read the line-oriented table format. Tables are range-checked, axioms are not."""
    rd = _Reader(text)
    lineno, header = rd.next("'gamma-semiring <name>'")
    head, _, name = header.partition(" ")
    if head != "gamma-semiring":
        raise ParseError(f"expected 'gamma-semiring <name>', got {header!r}", lineno)
    name = name.strip() or None
    s = rd.sized("S")
    g = rd.sized("Gamma")
    rd.keyword("addS")
    add_s = rd.table(s, s, s, "addS")
    rd.keyword("addGamma")
    add_g = rd.table(g, g, g, "addGamma")
    rd.keyword("prod")
    blocks = [rd.table(s, s, s, f"prod block {alpha}") for alpha in range(g)]
    rd.finish()
    prod = np.transpose(np.array(blocks, dtype=np.int64), (1, 0, 2))
    return GammaSemiring(add_s, add_g, prod, name)


def serialize_gamma_semiring(g: GammaSemiring) -> str:
    def rows(table):
        return [" ".join(str(int(v)) for v in row) for row in table]

    out = [f"gamma-semiring {g.name}" if g.name else "gamma-semiring",
           f"S {g.s_size}", f"Gamma {g.g_size}", "addS"]
    out += rows(g.add_s)
    out.append("addGamma")
    out += rows(g.add_g)
    out.append("prod")
    for alpha in range(g.g_size):
        if alpha:
            out.append("")
        out += rows(g.prod[:, alpha, :])
    return "\n".join(out) + "\n"


def load_gamma_semiring(path) -> GammaSemiring:
    with open(path, encoding="utf-8") as fh:
        return parse_gamma_semiring(fh.read())
