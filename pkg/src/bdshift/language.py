"""Exact word counts, class counts and entropy brackets.

Counts are exact Python integers; logarithms appear only when a bracket or
growth estimate is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _enumerate
from .core import ShiftSpec, WordLike, as_word, is_admissible
from .errors import BudgetExceeded, InputError, NonCanonicalError

CLASSES = ("L", "B", "G")


@dataclass
class CountSeries:
    """``counts[n - 1] = |class_n|`` for ``n = 1..len(counts)``."""

    cls: str
    counts: list = field(default_factory=list)
    partial: bool = False

    @property
    def n_max(self) -> int:
        return len(self.counts)

    def __getitem__(self, n: int) -> int:
        if n == 0:
            return 1  # only the empty word
        if not 1 <= n <= len(self.counts):
            raise IndexError(n)
        return self.counts[n - 1]

    def __iter__(self):
        return iter(self.counts)

    def to_dict(self) -> dict:
        return {"class": self.cls, "partial": self.partial,
                "counts": [str(c) for c in self.counts]}


@dataclass
class EntropyBracket:
    """Rigorous bounds ``lower <= h_top <= upper``.

    ``upper`` is ``min_n log|L_n| / n`` (valid because ``log|L_n|`` is
    subadditive); ``lower`` is ``max_n log|G_n| / n`` (valid because words of
    ``G`` concatenate freely).  The exact integers behind both logarithms
    are kept in ``upper_count`` and ``lower_count``.
    """

    lower: float
    upper: float
    n_lower: int
    n_upper: int
    lower_count: int
    upper_count: int
    lower_method: str
    upper_method: str
    upper_series: list = field(default_factory=list)
    lower_series: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower, "upper": self.upper,
            "n_lower": self.n_lower, "n_upper": self.n_upper,
            "lower_count": str(self.lower_count), "upper_count": str(self.upper_count),
            "lower_method": self.lower_method, "upper_method": self.upper_method,
        }


def _require_canonical(spec: ShiftSpec) -> None:
    if not spec.is_canonical:
        raise NonCanonicalError("operation requires a canonical function; canonicalize first",
                                report=spec.report)


def _class_masks(P: np.ndarray, n: int, alpha):
    """Masks for ``B`` (mean >= alpha) and ``G`` (every prefix and suffix mean < alpha)."""
    a, q = alpha.numerator, alpha.denominator
    total = P[:, n]
    in_b = total * q >= a * n
    k = np.arange(1, n + 1)
    pre_ok = (P[:, 1:] * q < a * k).all(axis=1)
    suf_ok = ((total[:, None] - P[:, :n]) * q < a * (n - np.arange(n))).all(axis=1)
    return in_b, pre_ok & suf_ok


def census(spec: ShiftSpec, n_max: int, classes=CLASSES, *, max_nodes=None, workers=None):
    """Count ``L``, ``B`` and ``G`` words for every length up to ``n_max`` in one pass.

    On budget exhaustion the raised :class:`BudgetExceeded` carries a dict
    of partial :class:`CountSeries` (every completed level).
    """
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    classes = tuple(classes)
    if set(classes) & {"B", "G"}:
        _require_canonical(spec)
    out = {c: CountSeries(c) for c in classes}
    alpha = spec.alpha if set(classes) & {"B", "G"} else None
    try:
        for n, P in _enumerate.levels(spec, n_max, max_nodes=max_nodes, workers=workers):
            if n == 0:
                continue
            if "L" in out:
                out["L"].counts.append(len(P))
            if alpha is not None:
                in_b, in_g = _class_masks(P, n, alpha)
                if "B" in out:
                    out["B"].counts.append(int(in_b.sum()))
                if "G" in out:
                    out["G"].counts.append(int(in_g.sum()))
    except BudgetExceeded as exc:
        for s in out.values():
            s.partial = True
        raise BudgetExceeded(str(exc), partial=out) from None
    return out


def count_words(spec: ShiftSpec, n_max: int, *, max_nodes=None, workers=None) -> CountSeries:
    try:
        return census(spec, n_max, ("L",), max_nodes=max_nodes, workers=workers)["L"]
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), partial=exc.partial["L"]) from None


def count_class(spec: ShiftSpec, cls: str, n_max: int, *, max_nodes=None, workers=None) -> CountSeries:
    if cls not in ("B", "G"):
        raise InputError(f"class must be 'B' or 'G', got {cls!r}")
    try:
        return census(spec, n_max, (cls,), max_nodes=max_nodes, workers=workers)[cls]
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), partial=exc.partial[cls]) from None


def bracket_from_counts(L: CountSeries, G: CountSeries) -> EntropyBracket:
    upper_series, lower_series = [], []
    best_u = (math.inf, 0, 1)
    best_l = (0.0, 0, 1)
    for n in range(1, L.n_max + 1):
        u = math.log(L[n]) / n
        if u < best_u[0]:
            best_u = (u, n, L[n])
        g = G[n]
        if g > 0:
            lo = math.log(g) / n
            if lo > best_l[0]:
                best_l = (lo, n, g)
        upper_series.append(best_u[0])
        lower_series.append(best_l[0])
    return EntropyBracket(
        lower=best_l[0], upper=best_u[0],
        n_lower=best_l[1], n_upper=best_u[1],
        lower_count=best_l[2], upper_count=best_u[2],
        lower_method="free-concatenation of G_n" if best_l[1] else "trivial (h >= 0)",
        upper_method="subadditive minimum of log|L_n|/n",
        upper_series=upper_series, lower_series=lower_series,
    )


def entropy_bracket(spec: ShiftSpec, n_max: int, *, max_nodes=None, workers=None) -> EntropyBracket:
    counts = census(spec, n_max, ("L", "G"), max_nodes=max_nodes, workers=workers)
    return bracket_from_counts(counts["L"], counts["G"])


def h_of_B(spec: ShiftSpec, n_max: int, *, max_nodes=None, workers=None) -> float:
    """Largest ``log|B_n| / n`` over ``n <= n_max``.

    A finite-range stand-in for the limsup growth rate of ``B``; it is an
    estimate, not a bound.
    """
    B = count_class(spec, "B", n_max, max_nodes=max_nodes, workers=workers)
    return max((math.log(B[n]) / n for n in range(1, n_max + 1) if B[n] > 0), default=0.0)


def forbid_word_count(spec: ShiftSpec, w: WordLike, n_max: int, *, max_nodes=None, workers=None) -> CountSeries:
    """Counts of admissible words of each length that avoid ``w`` as a factor."""
    w = as_word(w)
    if not w:
        raise InputError("cannot forbid the empty word")
    if not is_admissible(spec, w):
        raise InputError(f"{w} is not admissible")
    series = CountSeries(f"L-avoiding-{w}")
    try:
        for n, P in _enumerate.levels(spec, n_max, forbid=np.array(w.letters),
                                      max_nodes=max_nodes, workers=workers):
            if n:
                series.counts.append(len(P))
    except BudgetExceeded as exc:
        series.partial = True
        raise BudgetExceeded(str(exc), partial=series) from None
    return series


def words(spec: ShiftSpec, n: int):
    """Admissible words of length ``n`` as a 2-D letter array, lexicographic order."""
    P = None
    for _, P in _enumerate.levels(spec, n):
        pass
    return _enumerate.letters_of(P)
