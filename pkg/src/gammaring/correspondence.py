"""Transfer maps between fuzzy subsets of S and of its operator semirings,
plus the harness that checks the preservation and bijection claims on a
finite instance.

All bulk work runs on integer level vectors (numerators over a shared
denominator); the maps are minima, so scaling keeps them exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .algebra import GammaSemiring
from .enumeration import enumerate_levels, random_levels, sample_levels
from .errors import CarrierMismatch
from .fuzzy import ALL_KINDS, FuzzySubset, IdealKind, satisfies_levels, serialize_fuzzy_subset
from .operator import (
    DEFAULT_MAX_ELEMENTS,
    FiniteSemiring,
    UnityWitness,
    build_left_operator_semiring,
    build_right_operator_semiring,
    canonical_class,
    find_left_unity,
    find_right_unity,
    verify_unity_is_identity,
)

MAPS = ("plus", "plus-prime", "star", "star-prime")
# map -> (input carrier, output carrier)
MAP_CARRIERS = {
    "plus": ("L", "S"),
    "plus-prime": ("S", "L"),
    "star": ("R", "S"),
    "star-prime": ("S", "R"),
}
# kinds whose lattices the two bijections are claimed for
BIJECTION_KINDS = {
    "L": (IdealKind.RIGHT, IdealKind.TWO_SIDED, IdealKind.K_RIGHT, IdealKind.K_TWO_SIDED,
          IdealKind.H_RIGHT, IdealKind.H_TWO_SIDED),
    "R": (IdealKind.LEFT, IdealKind.TWO_SIDED, IdealKind.K_LEFT, IdealKind.K_TWO_SIDED,
          IdealKind.H_LEFT, IdealKind.H_TWO_SIDED),
}
PRESERVATION_ENUM_LIMIT = 10**5


@dataclass(frozen=True, eq=False)
class TransferContext:
    g: GammaSemiring
    l: FiniteSemiring
    r: FiniteSemiring
    left_unity: Optional[UnityWitness]
    right_unity: Optional[UnityWitness]

    @classmethod
    def build(cls, g: GammaSemiring, max_elements: int = DEFAULT_MAX_ELEMENTS) -> "TransferContext":
        l = build_left_operator_semiring(g, max_elements)
        r = build_right_operator_semiring(g, max_elements)
        return cls(g, l, r, find_left_unity(g, l), find_right_unity(g, r))

    @property
    def has_both_unities(self) -> bool:
        return self.left_unity is not None and self.right_unity is not None

    @cached_property
    def left_generators(self) -> np.ndarray:
        """``[a, alpha]`` class index in L, shape (s, |Gamma|)."""
        g = self.g
        return np.array([[self.l.index_of(g.prod[a, al, :]) for al in range(g.g_size)]
                         for a in range(g.s_size)], dtype=np.int64)

    @cached_property
    def right_generators(self) -> np.ndarray:
        """``[alpha, a]`` class index in R, shape (s, |Gamma|)."""
        g = self.g
        return np.array([[self.r.index_of(g.prod[:, al, a]) for al in range(g.g_size)]
                         for a in range(g.s_size)], dtype=np.int64)

    @cached_property
    def l_tables(self) -> np.ndarray:
        return self.l.element_array()

    @cached_property
    def r_tables(self) -> np.ndarray:
        return self.r.element_array()

    def structure(self, carrier: str):
        return {"S": self.g, "L": self.l, "R": self.r}[carrier]

    def size(self, carrier: str) -> int:
        return self.g.s_size if carrier == "S" else self.structure(carrier).size

    # level-vector maps, batch shape (N, n_in) -> (N, n_out)

    def apply_levels(self, name: str, batch: np.ndarray) -> np.ndarray:
        batch = np.asarray(batch, dtype=np.int64)
        if name == "plus":
            return batch[:, self.left_generators].min(axis=2)
        if name == "star":
            return batch[:, self.right_generators].min(axis=2)
        if name == "plus-prime":
            return batch[:, self.l_tables].min(axis=2)
        if name == "star-prime":
            return batch[:, self.r_tables].min(axis=2)
        raise ValueError(f"unknown map {name!r}")


def _expect(mu: FuzzySubset, carrier: str, n: int):
    if mu.carrier != carrier or len(mu) != n:
        raise CarrierMismatch(f"expected a fuzzy subset on {carrier}[{n}], got {mu.carrier}[{len(mu)}]")


def plus(ctx: TransferContext, mu: FuzzySubset) -> FuzzySubset:
    """``plus(mu)(a) = min over alpha of mu([a, alpha])`` for mu on L."""
    _expect(mu, "L", ctx.l.size)
    gens = ctx.left_generators
    return FuzzySubset(tuple(min(mu[int(i)] for i in gens[a]) for a in range(ctx.g.s_size)), "S")


def plus_prime(ctx: TransferContext, sigma: FuzzySubset) -> FuzzySubset:
    """For each class f of L, the least value of sigma on the image of f."""
    _expect(sigma, "S", ctx.g.s_size)
    return FuzzySubset(tuple(min(sigma[b] for b in f) for f in ctx.l.elements), "L")


def star(ctx: TransferContext, mu: FuzzySubset) -> FuzzySubset:
    _expect(mu, "R", ctx.r.size)
    gens = ctx.right_generators
    return FuzzySubset(tuple(min(mu[int(i)] for i in gens[a]) for a in range(ctx.g.s_size)), "S")


def star_prime(ctx: TransferContext, sigma: FuzzySubset) -> FuzzySubset:
    _expect(sigma, "S", ctx.g.s_size)
    return FuzzySubset(tuple(min(sigma[b] for b in f) for f in ctx.r.elements), "R")


TRANSFERS = {"plus": plus, "plus-prime": plus_prime, "star": star, "star-prime": star_prime}


def transfer(ctx: TransferContext, name: str, mu: FuzzySubset) -> FuzzySubset:
    return TRANSFERS[name](ctx, mu)


def transfer_via_witness(ctx: TransferContext, name: str, sigma: FuzzySubset) -> FuzzySubset:
    """``plus-prime``/``star-prime`` recomputed from each element's witness sum."""
    sr = ctx.l if name == "plus-prime" else ctx.r
    return FuzzySubset(
        tuple(min(sigma[b] for b in canonical_class(ctx.g, w)) for w in sr.witnesses), sr.carrier
    )


# -- reports -------------------------------------------------------------------


@dataclass
class ClaimRecord:
    claim_id: str
    tested: int = 0
    gated: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    @property
    def status(self) -> str:
        if self.failures:
            return "FAIL"
        if self.tested == 0 and self.gated:
            return "GATED"
        return "PASS"

    def merge(self, other: "ClaimRecord") -> "ClaimRecord":
        cex = [c for c in (self.counterexample, other.counterexample) if c]
        return ClaimRecord(self.claim_id, self.tested + other.tested, self.gated + other.gated,
                           self.failures + other.failures, min(cex) if cex else None)

    def line(self) -> str:
        out = f"CLAIM {self.claim_id} {self.status} tested={self.tested}"
        return out + (f" gated={self.gated}" if self.gated else "")


@dataclass
class TheoremReport:
    header: list = field(default_factory=list)
    claims: dict = field(default_factory=dict)

    def record(self, claim_id: str) -> ClaimRecord:
        if claim_id not in self.claims:
            self.claims[claim_id] = ClaimRecord(claim_id)
        return self.claims[claim_id]

    def merge(self, other: "TheoremReport") -> "TheoremReport":
        out = TheoremReport(self.header + other.header, dict(self.claims))
        for cid, rec in other.claims.items():
            out.claims[cid] = out.claims[cid].merge(rec) if cid in out.claims else rec
        out.claims = dict(sorted(out.claims.items()))
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.claims.values())

    def failed(self) -> list:
        return [r for r in self.claims.values() if r.status == "FAIL"]

    def text(self) -> str:
        lines = list(self.header)
        lines += [r.line() for r in self.claims.values()]
        for r in self.claims.values():
            if r.counterexample:
                lines.append(r.counterexample.rstrip("\n"))
        return "\n".join(lines) + "\n"


def _cex_block(claim_id, g, note, subsets):
    out = [f"COUNTEREXAMPLE {claim_id}", f"structure {g.label}", note]
    for label, mu in subsets:
        out.append(f"{label} {mu.carrier}")
        out.append(serialize_fuzzy_subset(mu).rstrip("\n"))
    out.append("END")
    return "\n".join(out)


def _fail(rec, block):
    rec.failures += 1
    if rec.counterexample is None:
        rec.counterexample = block


# -- preservation ------------------------------------------------------------------


def preservation_claim(map_name: str, kind: IdealKind) -> str:
    return f"preserve:{map_name}:{kind.value}"


def verify_preservation_levels(ctx: TransferContext, report: TheoremReport, carrier: str,
                               levels: np.ndarray, denom: int, kinds=ALL_KINDS) -> TheoremReport:
    """Input predicate => output predicate for every map leaving ``carrier``.

    ``levels`` are integer numerators over ``denom``, one row per fuzzy subset.
    """
    if len(levels) == 0:
        return report
    src = ctx.structure(carrier)
    for name in MAPS:
        cin, cout = MAP_CARRIERS[name]
        if cin != carrier:
            continue
        for kind in kinds:
            rec = report.record(preservation_claim(name, kind))
            mask = satisfies_levels(src, levels, kind)
            inputs = levels[mask]
            rec.tested += len(inputs)
            if not len(inputs):
                continue
            outputs = ctx.apply_levels(name, inputs)
            ok = satisfies_levels(ctx.structure(cout), outputs, kind)
            for i in np.flatnonzero(~ok):
                mu = FuzzySubset.from_levels(inputs[i], denom, carrier)
                out = FuzzySubset.from_levels(outputs[i], denom, cout)
                _fail(rec, _cex_block(rec.claim_id, ctx.g, f"map {name} kind {kind.value}",
                                      [("input", mu), ("output", out)]))
    return report


def _to_levels(samples, carrier, n):
    picked = [mu for mu in samples if mu.carrier == carrier]
    for mu in picked:
        if len(mu) != n:
            raise CarrierMismatch(f"fuzzy subset of length {len(mu)} on {carrier}[{n}]")
    if not picked:
        return np.zeros((0, n), dtype=np.int64), 1
    d = 1
    for mu in picked:
        d = np.lcm(d, mu.denominator())
    return np.array([mu.scaled(int(d)) for mu in picked], dtype=np.int64), int(d)


def verify_preservation(ctx: TransferContext, samples: Sequence[FuzzySubset], kinds=ALL_KINDS,
                        report: Optional[TheoremReport] = None) -> TheoremReport:
    """For each sample meeting a kind's predicate, check the transferred subset meets it too.

    Samples may live on S, L or R; each is pushed through every map leaving its carrier.
    """
    report = report if report is not None else TheoremReport()
    for carrier in ("S", "L", "R"):
        levels, denom = _to_levels(samples, carrier, ctx.size(carrier))
        verify_preservation_levels(ctx, report, carrier, levels, denom, kinds)
    return report


def all_levels(n: int, chain_k: int) -> np.ndarray:
    base = chain_k + 1
    codes = np.arange(base**n, dtype=np.int64)
    pows = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // pows[None, :]) % base


def preservation_inputs(ctx, carrier, chain_k, sample_count, rng, kinds=ALL_KINDS,
                        limit=PRESERVATION_ENUM_LIMIT):
    """Every vector over the chain when that is at most ``limit`` candidates,
    otherwise raw random vectors plus vectors repaired into each kind."""
    n = ctx.size(carrier)
    if (chain_k + 1) ** n <= limit:
        return all_levels(n, chain_k)
    parts = [random_levels(rng, n, chain_k, sample_count)]
    for kind in kinds:
        parts.append(sample_levels(ctx.structure(carrier), chain_k, kind, sample_count, rng))
    return np.concatenate(parts)


# -- monotonicity --------------------------------------------------------------------


def verify_monotonicity(ctx: TransferContext, pairs: int, chain_k: int, rng: np.random.Generator,
                        report: Optional[TheoremReport] = None) -> TheoremReport:
    """sigma <= tau pointwise must give map(sigma) <= map(tau), regardless of ideal-hood."""
    report = report if report is not None else TheoremReport()
    for name in MAPS:
        cin, cout = MAP_CARRIERS[name]
        rec = report.record(f"monotone:{name}")
        n = ctx.size(cin)
        lo = random_levels(rng, n, chain_k, pairs)
        hi = np.minimum(lo + random_levels(rng, n, chain_k, pairs), chain_k)
        a, b = ctx.apply_levels(name, lo), ctx.apply_levels(name, hi)
        rec.tested += pairs
        for i in np.flatnonzero(~(a <= b).all(axis=1)):
            _fail(rec, _cex_block(rec.claim_id, ctx.g, f"map {name}",
                                  [("lower", FuzzySubset.from_levels(lo[i], chain_k, cin)),
                                   ("upper", FuzzySubset.from_levels(hi[i], chain_k, cin))]))
    return report


# -- bijection ----------------------------------------------------------------------


def bijection_claim(side: str, kind: IdealKind) -> str:
    return f"bijection:{side}:{kind.value}"


def _rows(a):
    return {tuple(r) for r in a.tolist()}


def _monotone_pairs(src, img):
    """Indices (i, j) with src[i] <= src[j] but not img[i] <= img[j]."""
    if len(src) == 0:
        return []
    le_src = (src[:, None, :] <= src[None, :, :]).all(axis=2)
    le_img = (img[:, None, :] <= img[None, :, :]).all(axis=2)
    return np.argwhere(le_src & ~le_img)


def _bijection_one(ctx, side, kind, chain_k, cap, rec):
    fwd, bwd = ("plus-prime", "plus") if side == "L" else ("star-prime", "star")
    op = ctx.structure(side)
    s_ideals = enumerate_levels(ctx.g, chain_k, kind, cap)
    o_ideals = enumerate_levels(op, chain_k, kind, cap)
    rec.tested += len(s_ideals) + len(o_ideals)
    img = ctx.apply_levels(fwd, s_ideals)
    back = ctx.apply_levels(bwd, o_ideals)

    def sub(note, pairs):
        _fail(rec, _cex_block(rec.claim_id, ctx.g, f"chain {chain_k} {note}", pairs))

    def lv(row, carrier):
        return FuzzySubset.from_levels(row, chain_k, carrier)

    rt_s = ctx.apply_levels(bwd, img)
    for i in np.flatnonzero(~(rt_s == s_ideals).all(axis=1)):
        sub("round-trip on S", [("sigma", lv(s_ideals[i], "S")), ("returned", lv(rt_s[i], "S"))])
    rt_o = ctx.apply_levels(fwd, back)
    for i in np.flatnonzero(~(rt_o == o_ideals).all(axis=1)):
        sub(f"round-trip on {side}", [("mu", lv(o_ideals[i], side)), ("returned", lv(rt_o[i], side))])
    for i, j in _monotone_pairs(s_ideals, img):
        sub(f"order not preserved by {fwd}", [("lower", lv(s_ideals[i], "S")), ("upper", lv(s_ideals[j], "S"))])
    for i, j in _monotone_pairs(o_ideals, back):
        sub(f"order not preserved by {bwd}", [("lower", lv(o_ideals[i], side)), ("upper", lv(o_ideals[j], side))])
    image, target = _rows(img), _rows(o_ideals)
    if len(s_ideals) != len(o_ideals) or image != target:
        missing = sorted(target - image)
        extra = sorted(image - target)
        pairs = []
        if missing:
            pairs.append(("not-hit", lv(missing[0], side)))
        if extra:
            pairs.append(("outside", lv(extra[0], side)))
        sub(f"counts S={len(s_ideals)} {side}={len(o_ideals)} image={len(image)}", pairs)


def verify_bijection(ctx: TransferContext, chain_k: int, cap: int = 10**6, force_ungated: bool = False,
                     report: Optional[TheoremReport] = None, sides=("L", "R")) -> TheoremReport:
    """Chain-restricted check of the inclusion-preserving bijections.

    Over ``{0, 1/k, ..., 1}``: enumerate ideals on both sides, check both
    round-trips exactly, order preservation on every comparable pair, equal
    counts and surjectivity. Needs both unities unless ``force_ungated``.
    """
    report = report if report is not None else TheoremReport()
    for side in sides:
        for kind in BIJECTION_KINDS[side]:
            rec = report.record(bijection_claim(side, kind))
            if not (ctx.has_both_unities or force_ungated):
                rec.gated += 1
                continue
            _bijection_one(ctx, side, kind, chain_k, cap, rec)
    return report


# -- unity and closure checks ----------------------------------------------------------


def verify_operator_semirings(ctx: TransferContext, report: Optional[TheoremReport] = None) -> TheoremReport:
    report = report if report is not None else TheoremReport()
    for side, sr, unity in (("left", ctx.l, ctx.left_unity), ("right", ctx.r, ctx.right_unity)):
        rec = report.record(f"unity:{side}-is-identity")
        if unity is None:
            rec.gated += 1
        else:
            rec.tested += 1
            if not verify_unity_is_identity(sr, unity):
                _fail(rec, f"COUNTEREXAMPLE {rec.claim_id}\nstructure {ctx.g.label}\nunity {unity.formal_sum}\nEND")
        rec = report.record(f"semiring-laws:{sr.carrier}")
        rec.tested += 1
        bad = sr.law_violations()
        if bad:
            law, wit = bad[0]
            _fail(rec, f"COUNTEREXAMPLE {rec.claim_id}\nstructure {ctx.g.label}\n{law} {wit}\nEND")
        rec = report.record(f"witness:{sr.carrier}")
        rec.tested += sr.size
        for i, (elem, w) in enumerate(zip(sr.elements, sr.witnesses)):
            if canonical_class(ctx.g, w) != elem:
                _fail(rec, f"COUNTEREXAMPLE {rec.claim_id}\nstructure {ctx.g.label}\nelement {i} witness {w}\nEND")
    return report


# -- orchestration ------------------------------------------------------------------------


def _unity_text(u):
    return str(u.formal_sum) if u is not None else "none"


def run_suite(g: GammaSemiring, chain_k: int = 2, sample_count: int = 50, seed: int = 0,
              force_ungated: bool = False, max_elements: int = DEFAULT_MAX_ELEMENTS,
              enum_cap: int = 10**6) -> TheoremReport:
    """Unity/closure checks, preservation, monotonicity and (gated) bijection claims.

    Deterministic for a given seed.
    """
    ctx = TransferContext.build(g, max_elements)
    rng = np.random.default_rng(seed)
    if ctx.has_both_unities:
        gate = "open"
    else:
        gate = "forced" if force_ungated else "closed"
    report = TheoremReport(header=[
        f"SUITE {g.label} S={g.s_size} Gamma={g.g_size} L={ctx.l.size} R={ctx.r.size} "
        f"chain={chain_k} samples={sample_count} seed={seed}",
        f"LEFT-UNITY {_unity_text(ctx.left_unity)}",
        f"RIGHT-UNITY {_unity_text(ctx.right_unity)}",
        f"BIJECTION-GATE {gate}",
    ])
    verify_operator_semirings(ctx, report)
    for carrier in ("S", "L", "R"):
        levels = preservation_inputs(ctx, carrier, chain_k, sample_count, rng)
        verify_preservation_levels(ctx, report, carrier, levels, chain_k, ALL_KINDS)
    verify_monotonicity(ctx, sample_count, chain_k, rng, report)
    verify_bijection(ctx, chain_k, enum_cap, force_ungated, report)
    return report
