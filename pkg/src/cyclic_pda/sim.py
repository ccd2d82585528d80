"""Byte-level simulation of the multi-access caching system.

K caches sit on a ring and user ``a`` reads caches ``a, a+1, ..., a+L-1``
(mod K). Files are split into K sub-files; cache ``a`` keeps sub-files
``ka, ..., ka+k-1`` (mod K) of every file, so user ``a`` sees the ``kL``
consecutive sub-files starting at ``ka``. After the demands are revealed the
server broadcasts one XOR per PDA symbol and each user peels its missing
sub-files off those XORs using only what it can reach.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .construct import SchemeParams, check_params, construct
from .pda import STAR, Pda, validate

DEFAULT_SUBFILE_SIZE = 64


class DecodeError(RuntimeError):
    def __init__(self, s: int | None, alpha: int, message: str):
        super().__init__(f"user {alpha}, symbol {s}: {message}")
        self.s = s
        self.alpha = alpha


class Library:
    """N files of F equal sub-files, stored as an ``(N, F, size)`` uint8 array."""

    def __init__(self, payloads):
        a = np.array(payloads, dtype=np.uint8, copy=True)
        if a.ndim != 3 or min(a.shape) < 1:
            raise ValueError(f"payloads must have shape (N, F, size), got {a.shape}")
        a.setflags(write=False)
        self._w = a

    @classmethod
    def random(cls, N: int, F: int, subfile_size: int = DEFAULT_SUBFILE_SIZE, rng=None) -> Library:
        rng = np.random.default_rng(rng)
        return cls(rng.integers(0, 256, size=(N, F, subfile_size), dtype=np.uint8))

    @property
    def N(self) -> int:
        return self._w.shape[0]

    @property
    def F(self) -> int:
        return self._w.shape[1]

    @property
    def subfile_size(self) -> int:
        return self._w.shape[2]

    def subfiles(self, n, i) -> np.ndarray:
        """Payloads of sub-files ``(n, i)``; both arguments broadcast like numpy indices."""
        return self._w[n, i]

    def file(self, n: int) -> np.ndarray:
        return self._w[n]


@dataclass(frozen=True)
class CacheNetwork:
    params: SchemeParams
    cache_contents: tuple[tuple[int, ...], ...]

    def accessible(self, alpha: int) -> tuple[int, ...]:
        return accessible(alpha, self.params)


@dataclass(frozen=True, eq=False)
class Transmission:
    """Broadcast symbol ``s``: the XOR of ``W[d_j, i]`` over ``operands`` (user j, sub-file i)."""

    s: int
    payload: np.ndarray
    operands: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SimReport:
    K: int
    k: int
    L: int
    N: int
    S: int
    F: int
    rate_measured: Fraction
    gain_histogram: dict[int, int]
    decode_ok: tuple[bool, ...]
    bytes_sent: int
    demands: tuple[int, ...]

    @property
    def all_decoded(self) -> bool:
        return all(self.decode_ok)

    def to_dict(self) -> dict:
        r = self.rate_measured
        return {
            "K": self.K,
            "k": self.k,
            "L": self.L,
            "N": self.N,
            "S": self.S,
            "F": self.F,
            "rate": f"{r.numerator}/{r.denominator}",
            "rate_float": float(r),
            "gain_histogram": {str(g): n for g, n in sorted(self.gain_histogram.items())},
            "bytes_sent": self.bytes_sent,
            "demands": list(self.demands),
            "decode_ok": list(self.decode_ok),
            "all_decoded": self.all_decoded,
        }


def demand_vector(d: Sequence[int], K: int, N: int) -> np.ndarray:
    """Check a demand vector (length K, entries in [0, N)); repeats are fine."""
    arr = np.asarray(d, dtype=np.int64)
    if arr.shape != (K,):
        raise ValueError(f"demand vector must have length {K}, got {arr.shape}")
    if ((arr < 0) | (arr >= N)).any():
        raise ValueError(f"demands must lie in [0, {N})")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


def place(params: SchemeParams, library: Library) -> CacheNetwork:
    if library.F != params.K:
        raise ValueError(f"library has {library.F} sub-files per file, expected K={params.K}")
    K, k = params.K, params.k
    contents = tuple(tuple((k * a + j) % K for j in range(k)) for a in range(K))
    return CacheNetwork(params, contents)


def accessible(alpha: int, params: SchemeParams) -> tuple[int, ...]:
    """Sub-file indices user ``alpha`` reads from its L caches, in ring order."""
    K, k = params.K, params.k
    n = min(k * params.L, K)
    return tuple((k * alpha + i) % K for i in range(n))


@lru_cache(maxsize=64)
def _checked(pda: Pda):
    rep = validate(pda)
    if not rep.is_pda:
        raise ValueError(f"refusing to deliver with an invalid PDA: {rep.violations[0]}")
    return _symbol_operands(pda)


@lru_cache(maxsize=64)
def _symbol_operands(pda: Pda) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    a = pda.entries
    rows, cols = np.nonzero(a != STAR)
    vals = a[rows, cols]
    order = np.lexsort((rows, cols, vals))
    rows, cols, vals = rows[order], cols[order], vals[order]
    cuts = np.flatnonzero(np.diff(vals)) + 1
    return {
        int(v[0]): (c, r)
        for v, c, r in zip(np.split(vals, cuts), np.split(cols, cuts), np.split(rows, cuts))
        if len(v)
    }


def deliver(pda: Pda, library: Library, d: Sequence[int]) -> list[Transmission]:
    """One transmission per symbol, in increasing symbol order."""
    if pda.F != library.F:
        raise ValueError(f"PDA has {pda.F} rows but files have {library.F} sub-files")
    d = demand_vector(d, pda.K, library.N)
    if not (pda.entries != STAR).any():
        return []
    out = []
    for s, (users, rows) in sorted(_checked(pda).items()):
        payload = np.bitwise_xor.reduce(library.subfiles(d[users], rows), axis=0)
        payload.setflags(write=False)
        out.append(Transmission(s, payload, tuple(zip(users.tolist(), rows.tolist()))))
    return out


class _UserView:
    """What user ``alpha`` can read: its accessible sub-files of every file."""

    def __init__(self, alpha: int, library: Library, allowed):
        self.alpha = alpha
        self._lib = library
        self._allowed = np.zeros(library.F, dtype=bool)
        self._allowed[list(allowed)] = True

    def can_read(self, i) -> np.ndarray:
        return self._allowed[i]

    def read(self, n, i, s=None) -> np.ndarray:
        i = np.asarray(i)
        if not self._allowed[i].all():
            missing = sorted(set(np.asarray(i)[~self._allowed[i]].ravel().tolist()))
            raise DecodeError(s, self.alpha, f"needs sub-files {missing} outside its caches")
        return self._lib.subfiles(n, i)


class _Plan(NamedTuple):
    missing: np.ndarray  # rows of column alpha holding a symbol
    symbols: np.ndarray  # the symbol at each of those rows
    users: np.ndarray  # side-information operands, flattened
    rows: np.ndarray
    starts: np.ndarray  # start of each missing row's run in users/rows
    sizes: np.ndarray


@lru_cache(maxsize=4096)
def _plan(pda: Pda, alpha: int) -> _Plan:
    col = pda.entries[:, alpha]
    ops = _symbol_operands(pda)
    missing = np.flatnonzero(col != STAR)
    users, rows, starts = [], [], []
    for i in missing.tolist():
        s = int(col[i])
        u, r = ops[s]
        keep = ~((u == alpha) & (r == i))
        if keep.all():
            raise DecodeError(s, alpha, f"sub-file {i} is not an operand of its symbol")
        starts.append(len(users))
        users += u[keep].tolist()
        rows += r[keep].tolist()
    starts = np.array(starts, dtype=np.int64)
    sizes = np.diff(np.r_[starts, len(users)]).astype(np.int64)
    return _Plan(missing, col[missing], np.array(users, dtype=np.int64), np.array(rows, dtype=np.int64), starts, sizes)


def decode(
    alpha: int,
    transmissions: Sequence[Transmission],
    pda: Pda,
    net: CacheNetwork,
    library: Library,
    d: Sequence[int],
) -> np.ndarray:
    """Recover file ``W[d[alpha]]`` as an ``(F, size)`` array.

    Sub-files under a star in column ``alpha`` are read from the user's
    caches. Each remaining sub-file ``i`` with symbol ``s`` is ``Y_s`` XOR the
    other operands of ``Y_s``, all of which must be in the user's caches.
    Library payloads are only ever reached through the user's cache view.
    """
    d = demand_vector(d, pda.K, library.N)
    view = _UserView(alpha, library, net.accessible(alpha))
    col = pda.entries[:, alpha]
    out = np.empty((pda.F, library.subfile_size), dtype=np.uint8)

    cached = np.flatnonzero(col == STAR)
    out[cached] = view.read(int(d[alpha]), cached)

    plan = _plan(pda, alpha)
    if not len(plan.missing):
        return out
    by_symbol = {t.s: t for t in transmissions}
    for s in plan.symbols.tolist():
        if s not in by_symbol:
            raise DecodeError(s, alpha, "transmission missing")
    readable = view.can_read(plan.rows)
    if not readable.all():
        group = np.searchsorted(plan.starts, np.flatnonzero(~readable)[0], side="right") - 1
        s = int(plan.symbols[group])
        raise DecodeError(s, alpha, f"needs sub-file {int(plan.rows[~readable][0])} outside its caches")

    out[plan.missing] = np.stack([by_symbol[s].payload for s in plan.symbols.tolist()])
    if len(plan.users):
        side = view.read(d[plan.users], plan.rows)
        nonempty = plan.sizes > 0
        out[plan.missing[nonempty]] ^= np.bitwise_xor.reduceat(side, plan.starts[nonempty], axis=0)
    return out


def simulate(
    K: int,
    k: int,
    L: int,
    N: int,
    subfile_size: int = DEFAULT_SUBFILE_SIZE,
    seed: int = 0,
    demands: Sequence[int] | None = None,
) -> SimReport:
    """Place, deliver and decode for every user with a seeded random library.

    Demands are drawn uniformly from the same generator unless given. Points
    with ``kL >= K`` run with an all-star array and no transmissions.
    """
    params = check_params(K, k, L, N, allow_trivial=True)
    rng = np.random.default_rng(seed)
    library = Library.random(N, K, subfile_size, rng)
    d = demand_vector(rng.integers(0, N, size=K) if demands is None else demands, K, N)

    pda = Pda.all_stars(K, K) if params.trivial else construct(K, k, L)
    net = place(params, library)
    txs = deliver(pda, library, d)

    ok = []
    for alpha in range(K):
        try:
            got = decode(alpha, txs, pda, net, library, d)
        except DecodeError:
            ok.append(False)
            continue
        ok.append(bool(np.array_equal(got, library.file(int(d[alpha])))))

    return SimReport(
        K=K,
        k=k,
        L=L,
        N=N,
        S=len(txs),
        F=pda.F,
        rate_measured=Fraction(len(txs), pda.F),
        gain_histogram=dict(Counter(len(t.operands) for t in txs)),
        decode_ok=tuple(ok),
        bytes_sent=len(txs) * subfile_size,
        demands=tuple(int(x) for x in d),
    )
