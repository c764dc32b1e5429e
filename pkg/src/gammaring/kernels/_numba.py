"""numba kernels; same contracts as the numpy module."""

import numpy as np
from numba import njit

AXIOM_FAMILIES = 8


@njit(cache=True)
def axiom_witnesses(add_s, add_g, prod):
    s = add_s.shape[0]
    g = add_g.shape[0]
    out = np.full((AXIOM_FAMILIES, 5), -1, dtype=np.int64)

    done = False
    for a in range(s):
        for b in range(s):
            if add_s[a, b] != add_s[b, a]:
                out[0, 0] = a
                out[0, 1] = b
                done = True
                break
        if done:
            break

    done = False
    for a in range(s):
        for b in range(s):
            for c in range(s):
                if add_s[add_s[a, b], c] != add_s[a, add_s[b, c]]:
                    out[1, 0] = a
                    out[1, 1] = b
                    out[1, 2] = c
                    done = True
                    break
            if done:
                break
        if done:
            break

    done = False
    for a in range(g):
        for b in range(g):
            if add_g[a, b] != add_g[b, a]:
                out[2, 0] = a
                out[2, 1] = b
                done = True
                break
        if done:
            break

    done = False
    for a in range(g):
        for b in range(g):
            for c in range(g):
                if add_g[add_g[a, b], c] != add_g[a, add_g[b, c]]:
                    out[3, 0] = a
                    out[3, 1] = b
                    out[3, 2] = c
                    done = True
                    break
            if done:
                break
        if done:
            break

    # (1) a al (b+c) = a al b + a al c
    done = False
    for a in range(s):
        for al in range(g):
            for b in range(s):
                for c in range(s):
                    if prod[a, al, add_s[b, c]] != add_s[prod[a, al, b], prod[a, al, c]]:
                        out[4, 0] = a
                        out[4, 1] = al
                        out[4, 2] = b
                        out[4, 3] = c
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break

    # (2) (a+b) al c = a al c + b al c
    done = False
    for a in range(s):
        for b in range(s):
            for al in range(g):
                for c in range(s):
                    if prod[add_s[a, b], al, c] != add_s[prod[a, al, c], prod[b, al, c]]:
                        out[5, 0] = a
                        out[5, 1] = b
                        out[5, 2] = al
                        out[5, 3] = c
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break

    # (3) a (al+be) c = a al c + a be c
    done = False
    for a in range(s):
        for al in range(g):
            for be in range(g):
                for c in range(s):
                    if prod[a, add_g[al, be], c] != add_s[prod[a, al, c], prod[a, be, c]]:
                        out[6, 0] = a
                        out[6, 1] = al
                        out[6, 2] = be
                        out[6, 3] = c
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break

    # (4) a al (b be c) = (a al b) be c
    done = False
    for a in range(s):
        for al in range(g):
            for b in range(s):
                ab = prod[a, al, b]
                for be in range(g):
                    for c in range(s):
                        if prod[a, al, prod[b, be, c]] != prod[ab, be, c]:
                            out[7, 0] = a
                            out[7, 1] = al
                            out[7, 2] = b
                            out[7, 3] = be
                            out[7, 4] = c
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
        if done:
            break
    return out


@njit(cache=True)
def first_violation(values, cons):
    for i in range(cons.shape[0]):
        lo = values[cons[i, 1]]
        other = values[cons[i, 2]]
        if other < lo:
            lo = other
        if values[cons[i, 0]] < lo:
            return i
    return -1


@njit(cache=True)
def batch_satisfies(batch, cons):
    out = np.ones(batch.shape[0], dtype=np.bool_)
    for r in range(batch.shape[0]):
        out[r] = first_violation(batch[r], cons) < 0
    return out


@njit(cache=True)
def _enumerate_codes(n, k, cons):
    base = k + 1
    total = 1
    for _ in range(n):
        total *= base
    hits = np.empty(total, dtype=np.int64)
    count = 0
    digits = np.zeros(n, dtype=np.int64)
    for code in range(total):
        if first_violation(digits, cons) < 0:
            hits[count] = code
            count += 1
        # odometer, least significant digit last
        j = n - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < base:
                break
            digits[j] = 0
            j -= 1
    return hits[:count]


def enumerate_chain(n, k, cons):
    codes = _enumerate_codes(n, k, cons)
    base = k + 1
    pows = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] // pows[None, :]) % base).astype(np.int64)


@njit(cache=True)
def _repair(v, cons, max_sweeps):
    for _ in range(max_sweeps):
        changed = False
        for i in range(cons.shape[0]):
            need = v[cons[i, 1]]
            other = v[cons[i, 2]]
            if other < need:
                need = other
            if v[cons[i, 0]] < need:
                v[cons[i, 0]] = need
                changed = True
        if not changed:
            return True
    return first_violation(v, cons) < 0


def repair(values, cons, max_sweeps):
    v = values.copy()
    ok = _repair(v, cons, max_sweeps)
    return v, bool(ok)


@njit(cache=True)
def _multiset_seen(gens, add_s, max_len, seen):
    m, s = gens.shape
    idx = np.zeros(max_len, dtype=np.int64)
    acc = np.zeros((max_len, s), dtype=np.int64)
    depth = 0
    while True:
        j = idx[depth]
        code = 0
        for a in range(s):
            if depth == 0:
                acc[0, a] = gens[j, a]
            else:
                acc[depth, a] = add_s[acc[depth - 1, a], gens[j, a]]
            code = code * s + acc[depth, a]
        seen[code] = True
        if depth + 1 < max_len:
            depth += 1
            idx[depth] = idx[depth - 1]
            continue
        while depth >= 0:
            idx[depth] += 1
            if idx[depth] < m:
                break
            depth -= 1
        if depth < 0:
            break


def multiset_codes(gens, add_s, max_len):
    s = gens.shape[1]
    seen = np.zeros(s**s, dtype=np.bool_)
    _multiset_seen(np.ascontiguousarray(gens), np.ascontiguousarray(add_s), max_len, seen)
    return np.flatnonzero(seen).astype(np.int64)
