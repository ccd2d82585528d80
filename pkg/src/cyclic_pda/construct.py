"""Construction of the k-cyclic, 2K/(K-kL+k)-regular (K, K, kL, (K-kL)(K-kL+k)/2) PDA.

The build runs in four stages:

1. ``build_A``: an upper-triangular square array of side ``(K-kL)/k + 1``
   holding each of the first ``S1`` symbols once above the diagonal.
2. ``build_P1``: a cyclic block arrangement of ``A``, ``A^T`` and all-star
   blocks, giving a ``K/k x K/k`` array.
3. ``expand_rows``: every row of ``P1`` is followed by ``k - 1`` copies whose
   symbols are offset by ``S1`` each time, giving a ``K x K/k`` array.
4. ``construct``: ``k`` copies of that array, the ``t``-th offset by
   ``t * k * S1``, placed side by side.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .pda import STAR, Pda, concat_columns, shift_add, transpose, validate


class ParameterError(ValueError):
    """Parameters fall outside the family the construction covers.

    ``condition`` names the failed requirement so callers (the CLI in
    particular) can report it without parsing the message.
    """

    def __init__(self, condition: str, message: str):
        super().__init__(f"{condition}: {message}")
        self.condition = condition


class TrivialRegimeError(ParameterError):
    """kL >= K: every user already sees every sub-file, nothing is sent."""

    rate = Fraction(0)


class DegenerateBlockCountError(ParameterError):
    """K/(K-kL+k) = 1, so the block layout has no room for both A and A^T."""


class DemandWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SchemeParams:
    """A (K, k, L, N) point together with the quantities derived from it.

    Use :func:`check_params` to obtain a validated instance. Derived sizes of
    the construction are only defined outside the trivial regime.
    """

    K: int
    k: int
    L: int
    N: int

    @property
    def gamma(self) -> Fraction:
        return Fraction(self.k, self.K)

    @property
    def trivial(self) -> bool:
        return self.k * self.L >= self.K

    @property
    def worst_case_demands(self) -> bool:
        """Whether all K users can request distinct files."""
        return self.N >= self.K

    @property
    def F(self) -> int:
        return self.K

    @property
    def Z(self) -> int:
        return min(self.k * self.L, self.K)

    def _nontrivial(self):
        if self.trivial:
            raise TrivialRegimeError("kL<K", "derived construction sizes are undefined when kL >= K")

    @property
    def m(self) -> int:
        self._nontrivial()
        return self.K // (self.K - self.k * self.L + self.k)

    @property
    def A_dim(self) -> int:
        self._nontrivial()
        return (self.K - self.k * self.L) // self.k + 1

    @property
    def S1(self) -> int:
        self._nontrivial()
        d = self.K - self.k * self.L
        return d * (d + self.k) // (2 * self.k * self.k)

    @property
    def S1_tilde(self) -> int:
        return self.k * self.S1

    @property
    def g(self) -> int:
        self._nontrivial()
        return 2 * self.K // (self.K - self.k * self.L + self.k)

    @property
    def S_total(self) -> int:
        if self.trivial:
            return 0
        d = self.K - self.k * self.L
        return d * (d + self.k) // 2

    @property
    def rate(self) -> Fraction:
        return Fraction(self.S_total, self.F)


def check_params(K: int, k: int, L: int, N: int | None = None, *, allow_trivial: bool = False) -> SchemeParams:
    """Validate a parameter point and return it with its derived quantities.

    ``N`` defaults to ``K``. With ``allow_trivial=True`` a point with
    ``kL >= K`` (and ``k | K``) is returned instead of raising
    :class:`TrivialRegimeError`.
    """
    if N is None:
        N = K
    for name, v in (("K", K), ("k", k), ("L", L), ("N", N)):
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise ParameterError("positive", f"{name} must be a positive integer, got {v!r}")
    K, k, L, N = int(K), int(k), int(L), int(N)
    if k > K:
        raise ParameterError("k<=K", f"k={k} exceeds K={K}")
    if K % k:
        raise ParameterError("k|K", f"{k} does not divide {K}")
    params = SchemeParams(K, k, L, N)
    if k * L >= K:
        if not allow_trivial:
            raise TrivialRegimeError("kL<K", f"kL={k * L} >= K={K}; every user sees all sub-files and the rate is 0")
    else:
        span = K - k * L + k
        if K % span:
            raise ParameterError("(K-kL+k)|K", f"K-kL+k={span} does not divide {K}")
        if K // span < 2:
            raise DegenerateBlockCountError(
                "m>=2", f"K/(K-kL+k)={K // span}; the block layout needs at least two blocks"
            )
        d = K - k * L
        assert d % k == 0
        assert (d * (d + k)) % (2 * k * k) == 0
        assert (2 * K) % span == 0
    if N < K:
        warnings.warn(f"N={N} < K={K}: demands cannot all be distinct", DemandWarning, stacklevel=2)
    return params


def build_A(params: SchemeParams) -> Pda:
    n = params.A_dim
    step = (params.K - params.k * params.L) // params.k
    a = np.full((n, n), STAR, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if j <= i:
                continue
            if i == 0:
                a[i, j] = j - 1
            else:
                a[i, j] = a[i - 1, j] + (step - i)
    return Pda(a)


def build_P1(A: Pda, params: SchemeParams) -> Pda:
    """Block (r, c) is A when r == c, A^T when c == r + 1 (mod m), all stars otherwise."""
    m, n = params.m, A.F
    At = transpose(A).entries
    out = np.full((m * n, m * n), STAR, dtype=np.int64)
    for r in range(m):
        for c in range(m):
            if r == c:
                block = A.entries
            elif c == (r + 1) % m:
                block = At
            else:
                continue
            out[r * n:(r + 1) * n, c * n:(c + 1) * n] = block
    return Pda(out)


def expand_rows(P1: Pda, params: SchemeParams) -> Pda:
    k, S1 = params.k, params.S1
    src = P1.entries
    out = np.empty((src.shape[0] * k, src.shape[1]), dtype=np.int64)
    for i in range(out.shape[0]):
        if i % k == 0:
            out[i] = src[i // k]
        else:
            prev = out[i - 1]
            out[i] = np.where(prev == STAR, STAR, prev + S1)
    return Pda(out)


class Stages(NamedTuple):
    params: SchemeParams
    A: Pda
    P1: Pda
    expanded: Pda
    parts: tuple[Pda, ...]
    pda: Pda


def construct_stages(K: int, k: int, L: int) -> Stages:
    """Run the construction and keep every intermediate array."""
    params = check_params(K, k, L, K)
    A = build_A(params)
    P1 = build_P1(A, params)
    expanded = expand_rows(P1, params)
    parts = tuple(shift_add(expanded, t * params.S1_tilde) for t in range(k))
    return Stages(params, A, P1, expanded, parts, concat_columns(parts))


@lru_cache(maxsize=256)
def construct(K: int, k: int, L: int) -> Pda:
    """The K x K PDA for the point (K, k, L)."""
    return construct_stages(K, k, L).pda


def descriptor(K: int, k: int, L: int, pda: Pda | None = None) -> dict:
    """JSON-ready summary ``{K, k, L, Z, S, g, t, F}`` read off the validated array."""
    if pda is None:
        pda = construct(K, k, L)
    rep = validate(pda)
    return {"K": K, "k": k, "L": L, "Z": rep.Z, "S": rep.S, "g": rep.regular_g, "t": rep.cyclic_t, "F": rep.F}
