"""Finite-radius extender-set containment and the measure inequality it implies."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _enumerate
from .core import ShiftSpec, Word, WordLike, as_word, is_admissible, zeros
from .errors import InputError, InvariantViolation
from .periodic import EmpiricalMeasure


@dataclass
class ExtenderVerdict:
    """Result of comparing the extender sets of ``v`` and ``w`` up to radius ``L``.

    A counterexample ``(l, r)`` has ``l·v·r`` admissible and ``l·w·r`` not,
    which proves ``E(v)`` is not contained in ``E(w)``.  No counterexample is
    evidence only.
    """

    v: Word
    w: Word
    L: int
    counterexample: tuple | None = None

    @property
    def verdict(self) -> str:
        return "NoCounterexample" if self.counterexample is None else "Counterexample"

    def to_dict(self) -> dict:
        d = {"v": str(self.v), "w": str(self.w), "radius": self.L, "verdict": self.verdict}
        if self.counterexample is not None:
            d["l"], d["r"] = (str(x) for x in self.counterexample)
        return d


def _contexts(spec: ShiftSpec, L: int) -> list:
    return [_enumerate.letters_of(P) for _, P in _enumerate.levels(spec, L)]


def extender_subset(spec: ShiftSpec, v: WordLike, w: WordLike, L: int, contexts=None) -> ExtenderVerdict:
    """Look for admissible ``l, r`` with ``|l|, |r| <= L`` such that ``l·v·r`` is
    admissible but ``l·w·r`` is not.

    The first counterexample in the order (|r|, r, |l|, l) is reported.
    """
    v, w = as_word(v), as_word(w)
    for x in (v, w):
        if not is_admissible(spec, x):
            raise InputError(f"{x} is not admissible")
    if L < 0:
        raise InputError("radius must be non-negative")
    ctx = _contexts(spec, L) if contexts is None else contexts
    bounds = spec.bounds(2 * L + max(len(v), len(w)))
    va = np.array(v.letters, dtype=np.int64)
    wa = np.array(w.letters, dtype=np.int64)

    def fits(Ls, mid, R):
        k = len(Ls) * len(R)
        rows = np.hstack([np.repeat(Ls, len(R), axis=0), np.tile(mid, (k, 1)), np.tile(R, (len(Ls), 1))])
        return _enumerate.admissible_rows(bounds, rows).reshape(len(Ls), len(R))

    for R in ctx:
        best = None
        for Ls in ctx:
            bad = fits(Ls, va, R) & ~fits(Ls, wa, R)
            if bad.any():
                il, ir = np.nonzero(bad)
                cand = min(zip(ir.tolist(), il.tolist()))
                key = (cand[0], len(Ls[0]) if len(Ls) else 0, cand[1])
                if best is None or key < best[0]:
                    best = (key, Ls[cand[1]], R[cand[0]])
        if best is not None:
            return ExtenderVerdict(v, w, L, (Word(best[1]), Word(best[2])))
    return ExtenderVerdict(v, w, L)


def zero_pad_containment(spec: ShiftSpec, v: WordLike, w: WordLike, L: int, contexts=None) -> ExtenderVerdict:
    """Compare ``E(v)`` with ``E(0^|v| · w · 0^|v|)``.

    When ``sum(v) >= sum(w)`` every window of the padded context is dominated
    by a window of the original one, so containment always holds; a
    counterexample raises :class:`InvariantViolation`.
    """
    v, w = as_word(v), as_word(w)
    if v.total < w.total:
        raise InputError("zero-pad containment needs sum(v) >= sum(w)")
    padded = zeros(len(v)) + w + zeros(len(v))
    verdict = extender_subset(spec, v, padded, L, contexts)
    if verdict.counterexample is not None:
        raise InvariantViolation(f"E({v}) not inside E({padded}): {verdict.to_dict()}")
    return verdict


@dataclass
class InequalityReport:
    v: Word
    w: Word
    mu_v: float
    rhs: float
    h_upper: float

    @property
    def slack(self) -> float:
        return self.rhs - self.mu_v

    @property
    def holds(self) -> bool:
        return self.mu_v <= self.rhs

    def within(self, factor: float) -> bool:
        return self.mu_v <= factor * self.rhs

    def to_dict(self) -> dict:
        return {"v": str(self.v), "w": str(self.w), "mu_v": self.mu_v, "rhs": self.rhs,
                "h_upper": self.h_upper, "slack": self.slack, "holds": self.holds,
                "note": "diagnostic: mu_n approximates the measure of maximal entropy"}


def grp_inequality_check(spec: ShiftSpec, v: WordLike, w: WordLike, mu: EmpiricalMeasure,
                         h_upper: float) -> InequalityReport:
    """Evaluate ``mu([v]) <= mu([w]) * exp(h * (|w| - |v|))`` on an empirical measure.

    The caller is responsible for having established ``E(v) ⊆ E(w)`` (for
    instance with :func:`extender_subset`).
    """
    v, w = as_word(v), as_word(w)
    if max(len(v), len(w)) > mu.word_length_max:
        raise InputError(f"measure stores cylinders only up to length {mu.word_length_max}")
    mu_v = float(mu(v))
    rhs = float(mu(w)) * math.exp(h_upper * (len(w) - len(v)))
    return InequalityReport(v, w, mu_v, rhs, h_upper)
