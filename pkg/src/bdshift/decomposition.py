"""Good/bad word classes, the B·G·B factorisation, padding and synchronisation.

``B`` holds the empty word and every admissible word whose mean is at least
the limiting gradient ``alpha``; ``G`` holds the admissible words all of
whose nonempty prefixes and suffixes have mean strictly below ``alpha``.
The empty word belongs to both (vacuously for ``G``).  Every comparison is
done on integers: ``sum * q >= p * length`` for ``alpha = p/q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _enumerate
from .core import EMPTY, ShiftSpec, Word, WordLike, as_word, is_admissible, zeros
from .errors import InputError, InvariantViolation, NonCanonicalError


def _mean_at_least(total: int, length: int, alpha: Fraction) -> bool:
    return total * alpha.denominator >= alpha.numerator * length


def _admissible_or_raise(spec: ShiftSpec, w: WordLike) -> Word:
    if not spec.is_canonical:
        raise NonCanonicalError("good/bad classes need a canonical function; canonicalize first",
                                report=spec.report)
    w = as_word(w)
    if not is_admissible(spec, w):
        raise InputError(f"{w} is not admissible")
    return w


def is_in_B(spec: ShiftSpec, w: WordLike) -> bool:
    w = _admissible_or_raise(spec, w)
    return not w or _mean_at_least(w.total, len(w), spec.alpha)


def _good(w: Word, alpha: Fraction) -> bool:
    P, n = w.prefix_sums, len(w)
    for k in range(1, n + 1):
        if _mean_at_least(P[k], k, alpha) or _mean_at_least(P[n] - P[n - k], k, alpha):
            return False
    return True


def is_in_G(spec: ShiftSpec, w: WordLike) -> bool:
    return _good(_admissible_or_raise(spec, w), spec.alpha)


@dataclass(frozen=True)
class DecompositionResult:
    u: Word
    y: Word
    w: Word

    def joined(self) -> Word:
        return self.u + self.y + self.w

    def to_dict(self) -> dict:
        return {"u": str(self.u), "y": str(self.y), "w": str(self.w)}


def decompose(spec: ShiftSpec, z: WordLike) -> DecompositionResult:
    """Split ``z = u·y·w`` with ``u, w`` in ``B`` and ``y`` in ``G``.

    ``u`` is the longest prefix of ``z`` in ``B``; ``w`` is the longest
    suffix of the rest in ``B``.  Any prefix of ``y`` with mean at least
    ``alpha`` would make ``u`` longer, so ``y`` is in ``G``.
    """
    z = _admissible_or_raise(spec, z)
    alpha = spec.alpha
    P, n = z.prefix_sums, len(z)
    M = max((k for k in range(n + 1) if k == 0 or _mean_at_least(P[k], k, alpha)))
    rest = n - M
    N = max((k for k in range(rest + 1) if k == 0 or _mean_at_least(P[n] - P[n - k], k, alpha)))
    result = DecompositionResult(z[:M], z[M:n - N], z[n - N:])
    if not _good(result.y, alpha):
        raise InvariantViolation(f"middle factor {result.y} of {z} is not in G")
    return result


def in_G_M(spec: ShiftSpec, z: WordLike, M: int) -> bool:
    """Is ``z = u·v·w`` with ``u, w`` in ``B`` of length at most ``M`` and ``v`` in ``G``?"""
    return _G_M_split(spec, z, M) is not None


def _G_M_split(spec: ShiftSpec, z: WordLike, M: int):
    z = _admissible_or_raise(spec, z)
    alpha = spec.alpha
    P, n = z.prefix_sums, len(z)
    for i in range(min(M, n) + 1):
        if i and not _mean_at_least(P[i], i, alpha):
            continue
        for j in range(min(M, n - i) + 1):
            if j and not _mean_at_least(P[n] - P[n - j], j, alpha):
                continue
            if _good(z[i:n - j], alpha):
                return z[:i], z[i:n - j], z[n - j:]
    return None


def tau(spec: ShiftSpec, M: int) -> int:
    """Padding length ``ceil(2 * M * floor(f(1)) / alpha)``."""
    if M < 0:
        raise InputError("M must be non-negative")
    alpha = spec.alpha
    if alpha == 0:
        raise InputError("padding length is undefined when the limiting gradient is 0")
    return math.ceil(Fraction(2 * M * spec.max_letter) / alpha)


def pad_to_G(spec: ShiftSpec, z: WordLike, M: int) -> Word:
    z = as_word(z)
    if spec.alpha == 0:
        raise InputError("padding requires a positive limiting gradient")
    if not in_G_M(spec, z, M):
        raise InputError(f"{z} is not in G({M})")
    t = tau(spec, M)
    padded = zeros(t) + z + zeros(t)
    if not is_in_G(spec, padded):
        raise InvariantViolation(f"0^{t}·{z}·0^{t} is not in G")
    return padded


def check_free_concatenation(spec: ShiftSpec, words) -> bool:
    """Is the concatenation admissible and its periodic repetition a point of the shift?"""
    from .periodic import Certification, certify_periodic

    words = [as_word(w) for w in words]
    for w in words:
        if not is_in_G(spec, w):
            raise InputError(f"{w} is not in G")
    z = sum(words, EMPTY)
    if not is_admissible(spec, z):
        return False
    if not z:
        return True
    return certify_periodic(spec, z).status is Certification.CERTIFIED


# ----------------------------------------------------------------------------
# synchronisation


@dataclass
class SyncReport:
    """Outcome of testing whether ``0^M`` glues every admissible pair up to length ``L``.

    A counterexample refutes synchronisation of ``0^M``; its absence only
    holds up to the horizon.
    """

    M: int
    L: int
    counterexample: tuple | None = None

    @property
    def verdict(self) -> str:
        return "NoCounterexample" if self.counterexample is None else "Counterexample"

    def to_dict(self) -> dict:
        d = {"M": self.M, "horizon": self.L, "verdict": self.verdict}
        if self.counterexample is not None:
            d["u"], d["w"] = (str(x) for x in self.counterexample)
        else:
            d["note"] = f"no counterexample with |u|, |w| <= {self.L}; not a proof beyond the horizon"
        return d


def _words_by_length(spec: ShiftSpec, L: int) -> list:
    return [_enumerate.letters_of(P) for _, P in _enumerate.levels(spec, L)]


def sync_check(spec: ShiftSpec, M: int, L: int) -> SyncReport:
    """Search all admissible ``u, w`` with ``|u|, |w| <= L`` for a failure of
    ``u·0^M, 0^M·w admissible  =>  u·0^M·w admissible``.

    The first counterexample in the order (|u|, u, |w|, w) is returned.
    """
    if M < 0 or L < 1:
        raise InputError("need M >= 0 and L >= 1")
    bounds = spec.bounds(2 * L + M)
    mid = np.zeros(M, dtype=np.int64)

    def glue(U, Wd):
        rows = np.hstack([np.repeat(U, len(Wd), axis=0),
                          np.tile(mid, (len(U) * len(Wd), 1)),
                          np.tile(Wd, (len(U), 1))])
        return ~_enumerate.admissible_rows(bounds, rows).reshape(len(U), len(Wd))

    by_len = _words_by_length(spec, L)
    empty = np.zeros((1, 0), dtype=np.int64)
    lefts = [U[~glue(U, empty)[:, 0]] for U in by_len]
    rights = [Wd[~glue(empty, Wd)[0]] for Wd in by_len]
    for U in lefts:
        if not len(U):
            continue
        failing = np.zeros(len(U), dtype=bool)
        for Wd in rights:
            if len(Wd):
                failing |= glue(U, Wd).any(axis=1)
        if failing.any():
            u = U[int(np.argmax(failing))][None, :]
            for Wd in rights:
                if len(Wd):
                    bad = glue(u, Wd)[0]
                    if bad.any():
                        return SyncReport(M, L, (Word(u[0]), Word(Wd[int(np.argmax(bad))])))
    return SyncReport(M, L)
