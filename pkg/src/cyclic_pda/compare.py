"""Closed-form rate, coding gain and sub-packetization of competing schemes.

All quantities are exact :class:`~fractions.Fraction` values or Python
integers. Floats appear only when a table is serialised.

Schemes, for a point with ``gamma = k/K``:

* ``New``: this package's construction.
* ``NT``: MN-scheme extension by transformation (gain k+1).
* ``RK``: index-coding based scheme.
* ``SPE``: the k = 2 special-case scheme; only its sub-packetization is
  closed-form, its rate needs quantities defined elsewhere.
* ``NK``: structured index coding scheme, whose rate is a sum over weak
  compositions.
* ``LowerBound``: the converse bound valid for L >= K/2.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import Iterator, NamedTuple

from .construct import DegenerateBlockCountError, ParameterError, TrivialRegimeError, check_params

CSV_HEADER = ("K", "k", "L", "gamma", "scheme", "rate", "gain", "subpacketization", "applicable", "reason")


class Scheme(str, Enum):
    NEW = "New"
    NT = "NT"
    RK = "RK"
    SPE = "SPE"
    NK = "NK"
    LOWER_BOUND = "LowerBound"


class NotApplicableError(ValueError):
    """The requested formula is not defined at this parameter point."""


@dataclass(frozen=True)
class SchemeRow:
    scheme: Scheme
    rate: Fraction | None = None
    gain: Fraction | None = None
    subpacketization: int | None = None
    applicable: bool = True
    reason: str = ""

    def __post_init__(self):
        if not self.applicable and (self.rate, self.gain, self.subpacketization) != (None, None, None):
            raise ValueError("a non-applicable row carries no values")

    def to_dict(self) -> dict:
        def q(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "scheme": self.scheme.value,
            "rate": q(self.rate),
            "rate_float": None if self.rate is None else float(self.rate),
            "gain": q(self.gain),
            "gain_float": None if self.gain is None else float(self.gain),
            "subpacketization": self.subpacketization,
            "applicable": self.applicable,
            "reason": self.reason,
        }


def _na(scheme: Scheme, reason: str) -> SchemeRow:
    return SchemeRow(scheme, applicable=False, reason=reason)


def _params(K, k, L):
    """Validated params, or None in the trivial regime."""
    try:
        return check_params(K, k, L, K)
    except TrivialRegimeError:
        return None


# --- this construction -------------------------------------------------------


def rate_new(K: int, k: int, L: int) -> Fraction:
    p = _params(K, k, L)
    if p is None:
        return Fraction(0)
    return Fraction((K - k * L) * (K - k * L + k), 2 * K)


def gain_new(K: int, k: int, L: int) -> Fraction:
    check_params(K, k, L, K)
    return Fraction(2 * K, K - k * L + k)


def subpacketization_new(K: int, k: int, L: int) -> int:
    check_params(K, k, L, K)
    return K


# --- NT ----------------------------------------------------------------------


def rate_nt(K: int, k: int, L: int) -> Fraction:
    if k * L >= K:
        return Fraction(0)
    return Fraction(K - k * L, k + 1)


def gain_nt(K: int, k: int, L: int) -> Fraction:
    return Fraction(k + 1)


def subpacketization_nt(K: int, k: int, L: int) -> int:
    return K * comb(K - k * L + k, k)


# --- RK ----------------------------------------------------------------------


def rate_rk(K: int, k: int, L: int) -> Fraction:
    """Defined for k in [0, floor(K/L)], plus k = ceil(K/L) where it is zero."""
    if k <= K // L:
        return Fraction((K - k * L) ** 2, K)
    if k == ceil(K / L):
        return Fraction(0)
    raise NotApplicableError(f"k={k} is outside the RK domain k <= floor(K/L) = {K // L}")


def gain_rk(K: int, k: int, L: int) -> Fraction:
    if k * L >= K:
        raise NotApplicableError("gain undefined when kL >= K")
    return Fraction(K, K - k * L)


def subpacketization_rk(K: int, k: int, L: int) -> int:
    return K // k * comb(K - k * L + k - 1, k - 1)


# --- NK ----------------------------------------------------------------------


def weak_compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Every tuple of ``parts`` non-negative integers summing to ``n``.

    Stars and bars: choose where the ``parts - 1`` bars go among
    ``n + parts - 1`` slots.
    """
    if n < 0 or parts < 1:
        raise ValueError("need n >= 0 and parts >= 1")
    slots = n + parts - 1
    for bars in combinations(range(slots), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(slots - prev - 1)
        yield tuple(out)


def subpacketization_nk(K: int, k: int, L: int) -> int:
    return K // k * comb(K - k * L + k - 1, k - 1)


def rate_nk_numerator(K: int, k: int, L: int) -> int:
    cap = 2 * (K - k * L) + k - 1
    return sum(min(cap - max(b), K) for b in weak_compositions(K - k * L - 1, k + 1))


def rate_nk(K: int, k: int, L: int) -> Fraction:
    if k * L >= K:
        return Fraction(0)
    return Fraction(rate_nk_numerator(K, k, L), subpacketization_nk(K, k, L) * (k + 1))


def gain_nk(K: int, k: int, L: int) -> Fraction:
    # Users served per unit of rate, the same reading as every other row:
    # (K - kL) / rate.
    if k * L >= K:
        raise NotApplicableError("gain undefined when kL >= K")
    return (K - k * L) / rate_nk(K, k, L)


# --- SPE and the lower bound -------------------------------------------------

SPE_GAIN_RANGE = (3, 4)


def spe_row(K: int, L: int, k: int = 2) -> SchemeRow:
    if k != 2:
        return _na(Scheme.SPE, "SPE is defined for k = 2 only")
    span = K - 2 * L + 2
    if span <= 0:
        return _na(Scheme.SPE, f"degenerate: K-2L+2 = {span}")
    F = Fraction(K * span, 4)
    if F.denominator != 1:
        return _na(Scheme.SPE, f"sub-packetization K(K-2L+2)/4 = {F} is not an integer")
    return SchemeRow(
        Scheme.SPE,
        subpacketization=int(F),
        reason="rate depends on quantities defined outside this model; gain lies in [3, 4)",
    )


def rate_lb(K: int, L: int, gamma: Fraction) -> Fraction:
    """Piecewise-linear converse with corners at gamma = 1/K and 2/K (L >= K/2 only)."""
    gamma = Fraction(gamma)
    if 2 * L < K:
        raise NotApplicableError(f"lower bound needs L >= K/2, got L={L}, K={K}")
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    c = Fraction((K - L) * (K - L + 1), 2 * K)
    if gamma <= Fraction(1, K):
        return K - (K - c) * K * gamma
    if gamma <= Fraction(2, K):
        return c * (2 - K * gamma)
    return Fraction(0)


# --- the lemmas ----------------------------------------------------------------


class LemmaCheck(NamedTuple):
    beats_nt: bool
    geq_rk: bool
    gain_new: Fraction
    gain_nt: Fraction
    gain_rk: Fraction
    nt_threshold: Fraction


def gain_lemma_predicates(K: int, k: int, L: int) -> LemmaCheck:
    """Compare gains with NT and RK at a valid point.

    ``beats_nt`` is the threshold test ``L > K(k-1)/(k(k+1)) + 1``, which is
    equivalent to the new gain exceeding ``k + 1``. ``geq_rk`` is the direct
    comparison with ``K/(K-kL)``.
    """
    g_new = gain_new(K, k, L)
    threshold = Fraction(K * (k - 1), k * (k + 1)) + 1
    g_rk = gain_rk(K, k, L)
    return LemmaCheck(L > threshold, g_new >= g_rk, g_new, gain_nt(K, k, L), g_rk, threshold)


# --- tables ----------------------------------------------------------------------


def compare(K: int, k: int, L: int) -> list[SchemeRow]:
    """One row per scheme at a point that passes ``check_params`` or is trivial."""
    p = _params(K, k, L)
    gamma = Fraction(k, K)
    rows = []
    if p is None:
        why = f"trivial regime: kL = {k * L} >= K"
        rows += [SchemeRow(s, rate=Fraction(0), reason=why) for s in (Scheme.NEW, Scheme.NT)]
        try:
            rows.append(SchemeRow(Scheme.RK, rate=rate_rk(K, k, L), reason=why))
        except NotApplicableError as e:
            rows.append(_na(Scheme.RK, str(e)))
        rows.append(_na(Scheme.SPE, why) if k == 2 else spe_row(K, L, k))
        rows.append(SchemeRow(Scheme.NK, rate=Fraction(0), reason=why))
    else:
        rows.append(SchemeRow(Scheme.NEW, rate_new(K, k, L), gain_new(K, k, L), K))
        rows.append(SchemeRow(Scheme.NT, rate_nt(K, k, L), gain_nt(K, k, L), subpacketization_nt(K, k, L)))
        try:
            rows.append(SchemeRow(Scheme.RK, rate_rk(K, k, L), gain_rk(K, k, L), subpacketization_rk(K, k, L)))
        except NotApplicableError as e:
            rows.append(_na(Scheme.RK, str(e)))
        rows.append(spe_row(K, L, k))
        rows.append(SchemeRow(Scheme.NK, rate_nk(K, k, L), gain_nk(K, k, L), subpacketization_nk(K, k, L)))
    try:
        rows.append(SchemeRow(Scheme.LOWER_BOUND, rate=rate_lb(K, L, gamma)))
    except NotApplicableError as e:
        rows.append(_na(Scheme.LOWER_BOUND, str(e)))
    return rows


class SweepPoint(NamedTuple):
    k: int
    L: int
    trivial: bool
    rows: tuple[SchemeRow, ...]

    def row(self, scheme: Scheme | str) -> SchemeRow:
        scheme = Scheme(scheme)
        return next(r for r in self.rows if r.scheme is scheme)


@dataclass(frozen=True)
class SweepTable:
    K: int
    points: tuple[SweepPoint, ...]

    def valid_points(self) -> list[SweepPoint]:
        return [p for p in self.points if not p.trivial]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p in self.points:
            for r in p.rows:
                w.writerow(
                    [
                        self.K,
                        p.k,
                        p.L,
                        _sig(Fraction(p.k, self.K)),
                        r.scheme.value,
                        _sig(r.rate),
                        _sig(r.gain),
                        "" if r.subpacketization is None else r.subpacketization,
                        str(r.applicable).lower(),
                        r.reason,
                    ]
                )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "K": self.K,
                "points": [
                    {"k": p.k, "L": p.L, "trivial": p.trivial, "rows": [r.to_dict() for r in p.rows]}
                    for p in self.points
                ],
            },
            indent=2,
        )


def _sig(x: Fraction | None) -> str:
    return "" if x is None else f"{float(x):.6g}"


def sweep(K: int) -> SweepTable:
    """Every (k, L) with k | K and 1 <= L <= K/k that passes ``check_params``.

    ``L = K/k`` is the single trivial-regime endpoint kept for each k; larger
    L repeats it.
    """
    if K < 2:
        raise ValueError("sweep needs K >= 2")
    points = []
    for k in range(1, K + 1):
        if K % k:
            continue
        for L in range(1, K // k + 1):
            try:
                check_params(K, k, L, K)
            except TrivialRegimeError:
                points.append(SweepPoint(k, L, True, tuple(compare(K, k, L))))
                continue
            except (DegenerateBlockCountError, ParameterError):
                continue
            points.append(SweepPoint(k, L, False, tuple(compare(K, k, L))))
    return SweepTable(K, tuple(points))
