"""Canonical functions, bounded density shifts and words.

A bounded density shift over ``f`` contains every bi-infinite sequence on
``{0, ..., floor(f(1))}`` whose length-``p`` windows all sum to at most
``f(p)``.  Functions are stored exactly, as a finite table of rationals
``f(1)..f(N)`` followed by an affine tail of slope ``c``::

    f(n) = f(N) + c * (n - N)    for n > N

Every comparison in this package is done with :class:`fractions.Fraction`
or with integers, never floats.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from . import _enumerate
from .errors import InputError

RationalLike = Union[Fraction, int, str]


def to_fraction(x: RationalLike) -> Fraction:
    """Parse an exact rational: ``Fraction``, ``int`` or a ``"p/q"`` / ``"p"`` string.

    Floats are rejected because the binary value is almost never the number
    the caller meant.
    """
    if isinstance(x, bool):
        raise InputError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"expected an exact rational, got {type(x).__name__}")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ----------------------------------------------------------------------------
# words


class Word(Sequence[int]):
    """An immutable finite word over a non-negative integer alphabet.

    Prefix sums are cached so window sums are O(1).  The empty word is a
    valid instance.
    """

    __slots__ = ("_letters", "_prefix")

    def __init__(self, letters: Iterable[int] = ()):
        letters = tuple(int(a) for a in letters)
        if any(a < 0 for a in letters):
            raise InputError("letters must be non-negative")
        self._letters = letters
        prefix = [0]
        for a in letters:
            prefix.append(prefix[-1] + a)
        self._prefix = tuple(prefix)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"0101"``, ``"0,1,12"`` or ``""``/``"ε"`` for the empty word."""
        text = text.strip()
        if text in ("", "ε", "eps", "-"):
            return cls()
        if "," in text or " " in text:
            parts = [s for s in text.replace(",", " ").split() if s]
            try:
                return cls(int(s) for s in parts)
            except ValueError as exc:
                raise InputError(f"cannot parse word {text!r}") from exc
        if not text.isdigit():
            raise InputError(f"cannot parse word {text!r}")
        return cls(int(ch) for ch in text)

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        return self._prefix

    @property
    def total(self) -> int:
        return self._prefix[-1]

    def window_sum(self, start: int, length: int) -> int:
        """Sum of ``length`` letters starting at 0-based index ``start``."""
        return self._prefix[start + length] - self._prefix[start]

    def mean(self) -> Fraction:
        if not self._letters:
            raise InputError("the empty word has no mean")
        return Fraction(self.total, len(self._letters))

    def prefixes(self):
        """Nonempty prefixes, shortest first."""
        return [self[:k] for k in range(1, len(self) + 1)]

    def suffixes(self):
        """Nonempty suffixes, shortest first."""
        n = len(self)
        return [self[n - k:] for k in range(1, n + 1)]

    def __len__(self) -> int:
        return len(self._letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self._letters[idx])
        return self._letters[idx]

    def __iter__(self):
        return iter(self._letters)

    def __add__(self, other) -> "Word":
        return Word(self._letters + tuple(as_word(other)))

    def __radd__(self, other) -> "Word":
        return Word(tuple(as_word(other)) + self._letters)

    def __mul__(self, k: int) -> "Word":
        return Word(self._letters * k)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self._letters == other._letters
        if isinstance(other, (tuple, list)):
            return self._letters == tuple(other)
        if isinstance(other, str):
            try:
                return self == Word.parse(other)
            except InputError:
                return False
        return NotImplemented

    def __lt__(self, other: "Word") -> bool:
        return self._letters < as_word(other)._letters

    def __hash__(self) -> int:
        return hash(self._letters)

    def __str__(self) -> str:
        if not self._letters:
            return ""
        if max(self._letters) <= 9:
            return "".join(map(str, self._letters))
        return ",".join(map(str, self._letters))

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


EMPTY = Word()

WordLike = Union[Word, str, Sequence[int]]


def as_word(x: WordLike) -> Word:
    if isinstance(x, Word):
        return x
    if isinstance(x, str):
        return Word.parse(x)
    return Word(x)


def zeros(n: int) -> Word:
    return Word((0,) * n)


# ----------------------------------------------------------------------------
# functions and shifts


@dataclass(frozen=True)
class CanonicalFunction:
    """Table ``f(1)..f(N)`` plus affine tail slope; ``f(0) = 0`` is implicit.

    Construction only enforces representability (``N >= 1``, values and slope
    non-negative).  Whether the function is actually canonical is reported by
    :func:`validate_canonical`.
    """

    table: tuple
    tail_slope: Fraction = Fraction(0)

    def __post_init__(self):
        table = tuple(to_fraction(v) for v in self.table)
        slope = to_fraction(self.tail_slope)
        if not table:
            raise InputError("table must contain at least f(1)")
        if any(v < 0 for v in table):
            raise InputError("function values must be non-negative")
        if slope < 0:
            raise InputError("tail slope must be non-negative")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "tail_slope", slope)

    @property
    def N(self) -> int:
        return len(self.table)

    def __call__(self, n: int) -> Fraction:
        if n < 0:
            raise InputError("f is defined on non-negative integers")
        if n == 0:
            return Fraction(0)
        if n <= self.N:
            return self.table[n - 1]
        return self.table[-1] + self.tail_slope * (n - self.N)

    @classmethod
    def ceiling(cls, alpha: RationalLike, table_length: int = 1) -> "CanonicalFunction":
        """Canonical function whose floor is ``ceil(alpha * n)`` for every ``n >= 1``.

        ``ceil(alpha*n)`` itself is canonical but cannot be written as a table
        with an affine tail, and an integer table glued to a slope-``alpha``
        tail is either not subadditive or defines a different shift.  The
        rational function ``alpha*n + (q - 1)/q`` (``q`` the denominator of
        ``alpha``) is canonical, affine, and has the same floors, hence the
        same shift.
        """
        alpha = to_fraction(alpha)
        if alpha < 0:
            raise InputError("alpha must be non-negative")
        offset = Fraction(alpha.denominator - 1, alpha.denominator) if alpha else Fraction(0)
        table = tuple(alpha * n + offset for n in range(1, max(1, table_length) + 1))
        return cls(table, alpha)

    def to_dict(self) -> dict:
        return {"table": [format_fraction(v) for v in self.table],
                "tail_slope": format_fraction(self.tail_slope)}

    @classmethod
    def from_dict(cls, data: dict) -> "CanonicalFunction":
        unknown = set(data) - {"table", "tail_slope", "name"}
        if unknown:
            raise InputError(f"unknown keys in shift spec: {sorted(unknown)}")
        if "table" not in data:
            raise InputError("shift spec needs a 'table'")
        return cls(tuple(data["table"]), data.get("tail_slope", "0"))


@dataclass(frozen=True)
class ShiftSpec:
    """A bounded density shift: the function and its alphabet ``{0..max_letter}``."""

    function: CanonicalFunction
    name: str = field(default="", compare=False)

    @property
    def max_letter(self) -> int:
        return math.floor(self.function(1))

    @property
    def alphabet(self) -> range:
        return range(self.max_letter + 1)

    @cached_property
    def report(self) -> "ValidationReport":
        return validate_canonical(self.function)

    @property
    def is_canonical(self) -> bool:
        return self.report.ok

    @cached_property
    def alpha(self) -> Fraction:
        return limiting_gradient(self)

    @cached_property
    def _table_floor_envelope(self) -> tuple[int, ...]:
        fn = self.function
        env = [math.floor(v) for v in fn.table]
        for i in range(len(env) - 2, -1, -1):
            env[i] = min(env[i], env[i + 1])
        return tuple(env)

    def bound(self, p: int) -> int:
        """Largest admissible integer sum for a window of length ``p``.

        This is ``floor(min_{q >= p} f(q))``.  A window of length ``p`` sits
        inside windows of every larger length, so the envelope defines the
        same shift as ``f`` and is non-decreasing, which is what makes the
        local window test equivalent to language membership.
        """
        if p <= 0:
            return 0
        return self.bound_list(p)[p]

    def bound_list(self, n: int) -> list[int]:
        """``[bound(0), ..., bound(n)]`` (possibly longer); memoised."""
        cache = self.__dict__.setdefault("_bounds", [0])
        if len(cache) <= n:
            fn, env = self.function, self._table_floor_envelope
            for p in range(len(cache), max(n + 1, 2 * len(cache))):
                cache.append(env[p - 1] if p <= fn.N else math.floor(fn(p)))
        return cache

    def bounds(self, n: int) -> np.ndarray:
        return np.array(self.bound_list(n)[:n + 1], dtype=np.int64)

    def to_dict(self) -> dict:
        d = self.function.to_dict()
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ShiftSpec":
        return cls(CanonicalFunction.from_dict(data), name=str(data.get("name", "")))

    def digest(self) -> str:
        blob = json.dumps(self.function.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def shift(table: Iterable[RationalLike], tail_slope: RationalLike = 0, name: str = "") -> ShiftSpec:
    return ShiftSpec(CanonicalFunction(tuple(table), tail_slope), name=name)


def golden_mean(table_length: int = 1) -> ShiftSpec:
    """``f(n) = ceil(n/2)`` (as ``(n + 1)/2``): the shift with no two adjacent 1s."""
    return ShiftSpec(CanonicalFunction.ceiling(Fraction(1, 2), table_length), name="golden")


def load_spec(path) -> ShiftSpec:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: shift spec must be a JSON object")
    return ShiftSpec.from_dict(data)


def dump_spec(spec: ShiftSpec, path) -> None:
    with open(path, "w") as fh:
        json.dump(spec.to_dict(), fh, indent=2)
        fh.write("\n")


# ----------------------------------------------------------------------------
# operations


def eval_f(spec: ShiftSpec, n: int) -> Fraction:
    return spec.function(n)


@dataclass
class ValidationReport:
    """Outcome of checking the canonical-function axioms.

    ``window`` is the largest ``m + n`` tested.  For a table plus affine
    tail, pairs with ``m + n <= 2N + 1`` already decide subadditivity for all
    pairs, so ``complete`` is true whenever ``window >= 2N + 1``.
    """

    ok: bool
    window: int
    complete: bool
    monotone_violations: list = field(default_factory=list)
    subadditivity_violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "window": self.window,
            "complete": self.complete,
            "monotone_violations": self.monotone_violations,
            "subadditivity_violations": [list(p) for p in self.subadditivity_violations],
        }


def validate_canonical(fn: CanonicalFunction, window: int | None = None) -> ValidationReport:
    """Check monotonicity and subadditivity of ``fn``.

    Monotonicity is checked on the table (the tail is monotone because its
    slope is non-negative).  Subadditivity is checked on all pairs with
    ``m + n <= window`` (default ``3N``).
    """
    N = fn.N
    window = 3 * N if window is None else window
    mono = [n for n in range(0, N) if fn(n + 1) < fn(n)]
    sub = [(a, b) for a in range(1, window) for b in range(a, window - a + 1)
           if fn(a + b) > fn(a) + fn(b)]
    return ValidationReport(
        ok=not mono and not sub,
        window=window,
        complete=window >= 2 * N + 1,
        monotone_violations=mono,
        subadditivity_violations=sub,
    )


def limiting_gradient(spec: ShiftSpec) -> Fraction:
    """``inf_n f(n)/n``, which is the limiting gradient for canonical ``f``.

    Past the table ``f(n)/n`` moves monotonically toward the tail slope, so
    the infimum is the minimum of the first ``N + 1`` ratios and the slope.
    """
    fn = spec.function
    ratios = [fn(n) / n for n in range(1, fn.N + 2)]
    return min(min(ratios), fn.tail_slope)


def _check_letters(spec: ShiftSpec, w: Word) -> None:
    m = spec.max_letter
    for a in w:
        if a > m:
            raise InputError(f"letter {a} outside alphabet 0..{m}")


def first_violation(spec: ShiftSpec, w: WordLike):
    """Return ``(start, length)`` of the shortest-ending violating window, or ``None``."""
    w = as_word(w)
    _check_letters(spec, w)
    P = w.prefix_sums
    for end in range(1, len(w) + 1):
        for p in range(1, end + 1):
            if P[end] - P[end - p] > spec.bound(p):
                return end - p, p
    return None


def is_admissible(spec: ShiftSpec, w: WordLike) -> bool:
    """True iff ``w`` occurs in some point of the shift.

    Every window of ``w`` must satisfy the bound; conversely padding with
    zeros on both sides gives a point containing ``w``, because the bound is
    non-decreasing in the window length.
    """
    return first_violation(spec, w) is None


def hereditary_reduce(spec: ShiftSpec, w: WordLike, v: WordLike) -> bool:
    w, v = as_word(w), as_word(v)
    if len(w) != len(v):
        raise InputError("words must have equal length")
    if any(b > a for a, b in zip(w, v)):
        raise InputError("v must be coordinatewise <= w")
    if not is_admissible(spec, w):
        raise InputError(f"{w} is not admissible")
    return is_admissible(spec, v)


def _max_sums(spec: ShiftSpec, n_max: int) -> list[int]:
    """``best[p]`` = largest letter sum of an admissible word of length ``p``.

    Branch and bound, highest letters first.  A prefix of length ``t`` with
    sum ``s`` can reach at most ``s + best[p - t]`` because the remaining
    suffix is itself admissible.
    """
    m = spec.max_letter
    best = [0]
    for p in range(1, n_max + 1):
        target = [best[-1]]  # an admissible word of length p-1 extends by 0
        P = [0]

        def dfs():
            t = len(P) - 1
            if t == p:
                target[0] = max(target[0], P[-1])
                return
            for a in range(m, -1, -1):
                s = P[-1] + a
                if s + best[p - t - 1] <= target[0]:
                    continue
                if any(s - P[t + 1 - q] > spec.bound(q) for q in range(1, t + 2)):
                    continue
                P.append(s)
                dfs()
                P.pop()

        dfs()
        best.append(min(target[0], spec.bound(p)))
    return best


def canonicalize(spec: ShiftSpec, n_prime: int) -> CanonicalFunction:
    """Canonical function with the same words as ``spec`` up to length ``n_prime``.

    The table holds ``t(p)``, the maximal letter sum of an admissible word
    of length ``p``; it is monotone and subadditive because languages are
    factorial and extendable.  One more entry ``J + s`` and a tail of slope
    ``s`` follow, with ``s`` the largest slope (not above the original one)
    for which the joined function stays canonical, and ``J`` the largest
    junction value compatible with subadditivity across the join.
    """
    if n_prime < 1:
        raise InputError("N' must be at least 1")
    t = [Fraction(b) for b in _max_sums(spec, n_prime)]
    N = n_prime

    def cross(k):
        # smallest t(a) + t(b) over a + b = N + k with a, b <= N
        return min(t[a] + t[N + k - a] for a in range(k, N + 1))

    slope = min([spec.function.tail_slope] + [t[k] / k for k in range(1, N + 1)]
                + [(cross(k) - t[N]) / (k - 1) for k in range(2, N + 1)])
    junction = min([t[N]] + [cross(k) - slope * k for k in range(1, N + 1)])
    return CanonicalFunction(tuple(t[1:]) + (junction + slope,), slope)


def build_x_alpha(alpha: RationalLike, N: int = 1) -> ShiftSpec:
    """The shift over ``f(n) = floor(n * alpha)``.

    The table is extended to a multiple of ``alpha``'s denominator so the
    affine tail ``f(N) + alpha*(n - N)`` has the same floor as
    ``floor(n * alpha)``.  The result need not be canonical; membership does
    not require it.
    """
    alpha = to_fraction(alpha)
    if alpha < 0:
        raise InputError("alpha must be non-negative")
    q = alpha.denominator
    N = max(1, N)
    N = -(-N // q) * q
    table = tuple(Fraction(math.floor(alpha * n)) for n in range(1, N + 1))
    return ShiftSpec(CanonicalFunction(table, alpha), name=f"X_{format_fraction(alpha)}")


def containment_witness(inner: ShiftSpec, outer: ShiftSpec, n_max: int):
    """First word (by length, then lexicographically) of ``inner`` not admissible in ``outer``."""
    outer_bounds = outer.bounds(n_max)
    for n, P in _enumerate.levels(inner, n_max):
        if n == 0:
            continue
        W = _enumerate.letters_of(P)
        ok = (W <= outer.max_letter).all(axis=1) & _enumerate.admissible_rows(outer_bounds, W)
        if not ok.all():
            return Word(W[int(np.argmin(ok))])
    return None


def check_containment(inner: ShiftSpec, outer: ShiftSpec, n_max: int) -> bool:
    return containment_witness(inner, outer, n_max) is None
