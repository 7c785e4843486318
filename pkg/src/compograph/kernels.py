"""Batched numeric kernels for the scan and enumeration hot paths.

Three operations dominate the exhaustive scans: turning a batch of labelings
into sorted composition-code fingerprints, collapsing a batch of labelings to
orbit minima under an automorphism group, and canonicalizing small adjacency
matrices over all vertex permutations.  Each kernel has a numba @njit
implementation and a pure-numpy fallback with identical output.

Backend selection: set COMPOGRAPH_KERNELS=numpy to force the fallback,
COMPOGRAPH_KERNELS=numba to require the jit path (ImportError if numba is
missing).  Default is numba when importable, numpy otherwise.

Compositions are encoded as base-(n+1) integers (digit j = count of symbol j),
so codes of different subgraph orders never collide (digit sums differ) and a
whole fingerprint is one sorted int64 row.  Callers must stay within int64:
(n+1)**k < 2**62, which holds everywhere the scans and brute-force guards
allow.
"""

from __future__ import annotations

import os

import numpy as np

_ENV = os.environ.get("COMPOGRAPH_KERNELS", "auto").lower()

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag in CI images
    numba = None
    _HAVE_NUMBA = False

if _ENV == "numba" and not _HAVE_NUMBA:
    raise ImportError("COMPOGRAPH_KERNELS=numba but numba is not importable")

_USE_NUMBA = _HAVE_NUMBA if _ENV == "auto" else _ENV == "numba"


def active_backend() -> str:
    return "numba" if _USE_NUMBA else "numpy"


def composition_code_limit_ok(n: int, k: int) -> bool:
    return (n + 1) ** k < 2 ** 62


# -- fingerprints --------------------------------------------------------------


def sorted_composition_codes_numpy(member: np.ndarray, labs: np.ndarray, k: int) -> np.ndarray:
    """(B, S) sorted composition codes; member is (S, n) 0/1, labs is (B, n)."""
    n = member.shape[1]
    base = np.int64(n + 1)
    powers = base ** np.arange(k, dtype=np.int64)
    onehot = (labs[:, :, None] == np.arange(k, dtype=labs.dtype)[None, None, :])
    counts = np.einsum("sv,bvk->bsk", member.astype(np.int64), onehot.astype(np.int64))
    codes = counts @ powers
    codes.sort(axis=1)
    return codes


def sum_vectors_numpy(member: np.ndarray, sizes: np.ndarray, labs: np.ndarray, k: int) -> np.ndarray:
    """(B, n, k) per-order coordinate sums: out[b, t-1, j] = sum over
    order-t subgraphs of the count of symbol j under labeling b."""
    n = member.shape[1]
    onehot = (labs[:, :, None] == np.arange(k, dtype=labs.dtype)[None, None, :]).astype(np.int64)
    counts = np.einsum("sv,bvk->bsk", member.astype(np.int64), onehot)
    out = np.zeros((labs.shape[0], n, k), dtype=np.int64)
    for t in range(1, n + 1):
        sel = sizes == t
        if sel.any():
            out[:, t - 1, :] = counts[:, sel, :].sum(axis=1)
    return out


def orbit_min_codes_numpy(labs: np.ndarray, perms: np.ndarray, k: int) -> np.ndarray:
    """(B,) minimal base-k code of each labeling's orbit under perms.

    perms rows are automorphisms sigma; the orbit member for sigma is
    lab[sigma[i]] at position i.
    """
    n = labs.shape[1]
    powers = np.int64(k) ** np.arange(n - 1, -1, -1, dtype=np.int64)
    best = None
    for p in range(perms.shape[0]):
        codes = labs[:, perms[p]].astype(np.int64) @ powers
        best = codes if best is None else np.minimum(best, codes)
    return best


def min_adjacency_code_numpy(adj: np.ndarray, perms: np.ndarray) -> int:
    """Minimum row-major bit packing of adj over all vertex permutations."""
    n = adj.shape[0]
    permuted = adj[perms[:, :, None], perms[:, None, :]]
    flat = permuted.reshape(perms.shape[0], n * n).astype(np.uint64)
    powers = (np.uint64(1) << np.arange(n * n - 1, -1, -1, dtype=np.uint64))
    return int((flat * powers).sum(axis=1).min())


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _sorted_composition_codes_njit(member, labs, k):  # pragma: no cover - jit
        B = labs.shape[0]
        S = member.shape[0]
        n = member.shape[1]
        base = np.int64(n + 1)
        powers = np.empty(k, dtype=np.int64)
        p = np.int64(1)
        for j in range(k):
            powers[j] = p
            p *= base
        out = np.empty((B, S), dtype=np.int64)
        counts = np.empty(k, dtype=np.int64)
        for b in range(B):
            for s in range(S):
                for j in range(k):
                    counts[j] = 0
                for v in range(n):
                    if member[s, v]:
                        counts[labs[b, v]] += 1
                code = np.int64(0)
                for j in range(k):
                    code += counts[j] * powers[j]
                out[b, s] = code
            out[b].sort()
        return out

    @numba.njit(cache=True)
    def _sum_vectors_njit(member, sizes, labs, k):  # pragma: no cover - jit
        B = labs.shape[0]
        S = member.shape[0]
        n = member.shape[1]
        out = np.zeros((B, n, k), dtype=np.int64)
        for b in range(B):
            for s in range(S):
                t = sizes[s]
                for v in range(n):
                    if member[s, v]:
                        out[b, t - 1, labs[b, v]] += 1
        return out

    @numba.njit(cache=True)
    def _orbit_min_codes_njit(labs, perms, k):  # pragma: no cover - jit
        B = labs.shape[0]
        n = labs.shape[1]
        P = perms.shape[0]
        powers = np.empty(n, dtype=np.int64)
        p = np.int64(1)
        for i in range(n - 1, -1, -1):
            powers[i] = p
            p *= np.int64(k)
        out = np.empty(B, dtype=np.int64)
        for b in range(B):
            best = np.int64(0x7FFFFFFFFFFFFFFF)
            for q in range(P):
                code = np.int64(0)
                for i in range(n):
                    code += np.int64(labs[b, perms[q, i]]) * powers[i]
                if code < best:
                    best = code
            out[b] = best
        return out

    @numba.njit(cache=True)
    def _min_adjacency_code_njit(adj, perms):  # pragma: no cover - jit
        n = adj.shape[0]
        P = perms.shape[0]
        best = np.uint64(0xFFFFFFFFFFFFFFFF)
        for q in range(P):
            code = np.uint64(0)
            for i in range(n):
                for j in range(n):
                    code = code << np.uint64(1)
                    if adj[perms[q, i], perms[q, j]]:
                        code |= np.uint64(1)
            if code < best:
                best = code
        return best


def sorted_composition_codes(member: np.ndarray, labs: np.ndarray, k: int) -> np.ndarray:
    if _USE_NUMBA:
        return _sorted_composition_codes_njit(
            np.ascontiguousarray(member, dtype=np.uint8),
            np.ascontiguousarray(labs, dtype=np.int64),
            k,
        )
    return sorted_composition_codes_numpy(member, labs, k)


def sum_vectors(member: np.ndarray, sizes: np.ndarray, labs: np.ndarray, k: int) -> np.ndarray:
    if _USE_NUMBA:
        return _sum_vectors_njit(
            np.ascontiguousarray(member, dtype=np.uint8),
            np.ascontiguousarray(sizes, dtype=np.int64),
            np.ascontiguousarray(labs, dtype=np.int64),
            k,
        )
    return sum_vectors_numpy(member, sizes, labs, k)


def orbit_min_codes(labs: np.ndarray, perms: np.ndarray, k: int) -> np.ndarray:
    if _USE_NUMBA:
        return _orbit_min_codes_njit(
            np.ascontiguousarray(labs, dtype=np.int64),
            np.ascontiguousarray(perms, dtype=np.int64),
            k,
        )
    return orbit_min_codes_numpy(labs, perms, k)


def min_adjacency_code(adj: np.ndarray, perms: np.ndarray) -> int:
    if _USE_NUMBA:
        return int(_min_adjacency_code_njit(
            np.ascontiguousarray(adj, dtype=np.uint8),
            np.ascontiguousarray(perms, dtype=np.int64),
        ))
    return min_adjacency_code_numpy(adj, perms)


def decode_labeling(code: int, n: int, k: int) -> tuple[int, ...]:
    """Inverse of the base-k orbit encoding (most significant digit first)."""
    out = []
    for _ in range(n):
        out.append(code % k)
        code //= k
    return tuple(reversed(out))


def membership_arrays(graph) -> tuple[np.ndarray, np.ndarray]:
    """(S, n) uint8 membership matrix and (S,) sizes over all connected sets."""
    sets = graph.all_connected_sets()
    member = np.zeros((len(sets), graph.n), dtype=np.uint8)
    sizes = np.empty(len(sets), dtype=np.int64)
    for i, s in enumerate(sets):
        member[i, list(s)] = 1
        sizes[i] = len(s)
    return member, sizes
