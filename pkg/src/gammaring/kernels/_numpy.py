"""Pure-numpy kernels. Reference path and fallback when numba is disabled."""

import numpy as np

AXIOM_FAMILIES = 8
_CHUNK = 1 << 16


def _first(out, row, bad):
    hit = np.argwhere(bad)
    if len(hit):
        out[row, : hit.shape[1]] = hit[0]


def axiom_witnesses(add_s, add_g, prod):
    """Smallest failing tuple per axiom family, -1 padded; row of -1 means it holds.

    Rows: S-commutative (a,b), S-associative (a,b,c), Gamma-commutative,
    Gamma-associative, then distributivity/associativity (1)..(4) with tuples
    (a,al,b,c), (a,b,al,c), (a,al,be,c), (a,al,b,be,c).
    """
    s = add_s.shape[0]
    g = add_g.shape[0]
    out = np.full((AXIOM_FAMILIES, 5), -1, dtype=np.int64)
    rs = np.arange(s)
    rg = np.arange(g)

    _first(out, 0, add_s != add_s.T)
    _first(out, 1, add_s[add_s] != add_s[rs[:, None, None], add_s[None, :, :]])
    _first(out, 2, add_g != add_g.T)
    _first(out, 3, add_g[add_g] != add_g[rg[:, None, None], add_g[None, :, :]])

    lhs = prod[:, :, add_s]
    rhs = add_s[prod[:, :, :, None], prod[:, :, None, :]]
    _first(out, 4, lhs != rhs)

    lhs = prod[add_s]
    rhs = add_s[prod[:, None, :, :], prod[None, :, :, :]]
    _first(out, 5, lhs != rhs)

    lhs = prod[:, add_g, :]
    rhs = add_s[prod[:, :, None, :], prod[:, None, :, :]]
    _first(out, 6, lhs != rhs)

    lhs = prod[:, :, prod]
    rhs = prod[prod[:, :, :, None, None], rg[None, None, None, :, None], rs[None, None, None, None, :]]
    _first(out, 7, lhs != rhs)
    return out


def first_violation(values, cons):
    if cons.shape[0] == 0:
        return -1
    ok = values[cons[:, 0]] >= np.minimum(values[cons[:, 1]], values[cons[:, 2]])
    bad = np.flatnonzero(~ok)
    return int(bad[0]) if len(bad) else -1


def batch_satisfies(batch, cons):
    if cons.shape[0] == 0:
        return np.ones(batch.shape[0], dtype=np.bool_)
    out = np.ones(batch.shape[0], dtype=np.bool_)
    # chunk the constraint axis so (N, m) temporaries stay bounded
    step = max(1, _CHUNK * 16 // max(1, batch.shape[0]))
    for lo in range(0, cons.shape[0], step):
        c = cons[lo : lo + step]
        lhs = batch[:, c[:, 0]]
        rhs = np.minimum(batch[:, c[:, 1]], batch[:, c[:, 2]])
        out &= (lhs >= rhs).all(axis=1)
    return out


def _decode(codes, n, base):
    pows = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (codes[:, None] // pows[None, :]) % base


def enumerate_chain(n, k, cons):
    """All vectors in {0..k}^n satisfying cons, lexicographic order."""
    base = k + 1
    total = base**n
    found = []
    for lo in range(0, total, _CHUNK):
        codes = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        batch = _decode(codes, n, base)
        found.append(batch[batch_satisfies(batch, cons)])
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(found).astype(np.int64)


def repair(values, cons, max_sweeps):
    """Raise values until every constraint holds; Jacobi sweeps.

    Returns (repaired copy, success flag).
    """
    v = values.copy()
    if cons.shape[0] == 0:
        return v, True
    t, p, q = cons[:, 0], cons[:, 1], cons[:, 2]
    for _ in range(max_sweeps):
        need = np.minimum(v[p], v[q])
        if (v[t] >= need).all():
            return v, True
        np.maximum.at(v, t, need)
    return v, bool((v[t] >= np.minimum(v[p], v[q])).all())


def multiset_codes(gens, add_s, max_len):
    """Codes of the pointwise sums of every multiset of 1..max_len generators.

    States are (last generator index, action); identical states are merged,
    which leaves the set of reachable actions unchanged.
    """
    m, s = gens.shape
    pows = s ** np.arange(s - 1, -1, -1, dtype=np.int64)
    seen = [gens @ pows]
    last = np.arange(m, dtype=np.int64)
    acts = gens.astype(np.int64)
    for _ in range(1, max_len):
        li, gj = np.nonzero(last[:, None] <= np.arange(m)[None, :])
        if len(li) == 0:
            break
        new_acts = add_s[acts[li], gens[gj]]
        codes = new_acts @ pows
        key = gj * (s**s) + codes
        _, keep = np.unique(key, return_index=True)
        last = gj[keep]
        acts = new_acts[keep]
        seen.append(codes[keep])
    return np.unique(np.concatenate(seen))
