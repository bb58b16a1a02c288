"""Periodic points, the uniform measures on ``Per(n)`` and diagnostics.

``Per(n)`` is the set of points whose least period is at most ``n`` (the
union of the fixed-point sets of ``sigma^k`` for ``k <= n``).  Orbits are
stored once, by their Lyndon word (least rotation); the measure counts
points, so an orbit of least period ``p`` contributes ``p`` points.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .core import ShiftSpec, Word, WordLike, as_word, is_admissible
from .errors import InputError, InvariantViolation, NonCanonicalError, UncertifiedOrbit


class Certification(enum.Enum):
    CERTIFIED = "Certified"
    VERIFIED_TO_HORIZON = "VerifiedToHorizon"
    REFUTED = "Refuted"


@dataclass(frozen=True)
class PeriodicCertificate:
    """Verdict on whether ``w^inf`` is a point of the shift.

    ``q`` is the refuting window length for ``REFUTED``; ``horizon`` is the
    largest window length that was checked.
    """

    status: Certification
    horizon: int
    q: int | None = None
    route: str = ""

    def to_dict(self) -> dict:
        d = {"status": self.status.value, "horizon": self.horizon, "route": self.route}
        if self.q is not None:
            d["q"] = self.q
        return d


def _cyclic_maxima(w: Word) -> list[int]:
    """``c[r]`` = largest sum of ``r`` cyclically consecutive letters, ``0 <= r < |w|``."""
    p = len(w)
    doubled = w + w
    P = doubled.prefix_sums
    return [max(P[i + r] - P[i] for i in range(p)) for r in range(p)]


def certify_periodic(spec: ShiftSpec, w: WordLike, horizon: int | None = None) -> PeriodicCertificate:
    """Decide membership of the periodic point ``w^inf``.

    The largest window sum of length ``q = k|w| + r`` is ``k*S + c[r]`` with
    ``S = sum(w)``.  Two arguments bound the lengths that need checking:

    * tail domination: if ``S <= tail_slope * |w|`` then on the affine tail
      the bound grows by at least ``S`` per period, so lengths up to
      ``N + |w|`` decide everything;
    * density: if ``S/|w| < alpha`` then ``f(q) >= alpha*q`` outgrows the
      window sums, and ``|w| * (1 + ceil(|w| m / (alpha |w| - S)))`` suffices.

    If neither applies the window sums eventually exceed ``f`` and the first
    failing length is found by scanning.  Passing ``horizon`` caps the scan;
    a cap below the needed length yields ``VERIFIED_TO_HORIZON``.
    """
    w = as_word(w)
    if not w:
        raise InputError("periodic word must be nonempty")
    m = spec.max_letter
    if any(a > m for a in w):
        raise InputError(f"letter outside alphabet 0..{m}")
    p, S = len(w), w.total
    fn = spec.function
    slope, alpha = fn.tail_slope, spec.alpha
    c = _cyclic_maxima(w)

    needed, route = None, ""
    if S <= slope * p:
        needed, route = fn.N + p, "tail-domination"
    if S < alpha * p:
        dens = p * (1 + math.ceil(Fraction(p * m) / (alpha * p - S)))
        if needed is None or dens < needed:
            needed, route = dens, "density"
    if needed is None:
        # eventually refuted: k*(S - slope*p) > f(N) forces a failure at q = k*p
        excess = S - slope * p
        k = max(math.floor(fn(fn.N) / excess) + 1, fn.N // p + 1)
        scan, route = k * p, "refutation-scan"
    else:
        scan = needed
    limit = scan if horizon is None else min(horizon, scan)

    bound = spec.bound_list(limit)
    for q in range(1, limit + 1):
        k, r = divmod(q, p)
        if k * S + c[r] > bound[q]:
            return PeriodicCertificate(Certification.REFUTED, q, q, route)
    if needed is not None and limit >= needed:
        return PeriodicCertificate(Certification.CERTIFIED, limit, None, route)
    if needed is None and horizon is None:
        raise InvariantViolation("refutation scan ended without a failing window")
    return PeriodicCertificate(Certification.VERIFIED_TO_HORIZON, limit, None, route)


# ----------------------------------------------------------------------------
# orbits


@dataclass(frozen=True)
class PeriodicOrbit:
    primitive_word: Word
    certification: PeriodicCertificate

    @property
    def least_period(self) -> int:
        return len(self.primitive_word)

    def points(self):
        """The ``least_period`` distinct rotations of the primitive word."""
        w = self.primitive_word
        return [w[i:] + w[:i] for i in range(len(w))]


def lyndon_candidates(spec: ShiftSpec, n: int):
    """Lyndon words of length ``<= n`` over the alphabet, in lexicographic order,
    skipping every subtree whose prefix already has an inadmissible window.

    Uses the Fredricksen-Kessler-Maiorana recursion over prenecklaces: a
    prenecklace ``a[1..t]`` whose longest Lyndon prefix has length ``t`` is
    itself a Lyndon word.
    """
    m = spec.max_letter
    a = [0] * (n + 1)
    P = [0] * (n + 1)
    bound = spec.bound_list(n)
    out = []

    def fits(t):
        s = P[t]
        return all(s - P[t - q] <= bound[q] for q in range(1, t + 1))

    def gen(t, per):
        # a[1..t-1] is a prenecklace whose longest Lyndon prefix has length per
        if t - 1 == per and t > 1:
            out.append(Word(a[1:t]))
        if t > n:
            return
        first = a[t - per] if t > 1 else 0
        for j in range(first, m + 1):
            a[t] = j
            P[t] = P[t - 1] + j
            if not fits(t):
                # window sums only grow with the letter, so larger j fail too
                break
            gen(t + 1, per if j == first and t > 1 else t)

    gen(1, 1)
    return out


@dataclass
class PerResult:
    n: int
    orbits: list
    per_count: int

    def fix_count(self, k: int) -> int:
        """Number of points fixed by ``sigma^k`` (requires ``k <= n``)."""
        if not 1 <= k <= self.n:
            raise InputError(f"k must be in 1..{self.n}")
        return sum(o.least_period for o in self.orbits if k % o.least_period == 0)

    def orbit_counts(self) -> dict:
        return dict(Counter(o.least_period for o in self.orbits))


def enumerate_per(spec: ShiftSpec, n: int, horizon: int | None = None) -> PerResult:
    if n < 1:
        raise InputError("n must be at least 1")
    orbits, stuck = [], []
    for w in lyndon_candidates(spec, n):
        cert = certify_periodic(spec, w, horizon)
        if cert.status is Certification.CERTIFIED:
            orbits.append(PeriodicOrbit(w, cert))
        elif cert.status is Certification.VERIFIED_TO_HORIZON:
            stuck.append(w)
    if stuck:
        raise UncertifiedOrbit(
            f"{len(stuck)} orbit(s) neither certified nor refuted: "
            + ", ".join(str(w) for w in stuck[:10]), stuck)
    return PerResult(n, orbits, sum(o.least_period for o in orbits))


# ----------------------------------------------------------------------------
# empirical measures


def _cylinder_counts(per: PerResult, k: int) -> Counter:
    """Counts of ``x[0:j]`` over all points of ``Per(n)`` for ``j = 1..k``."""
    counts = Counter()
    for orbit in per.orbits:
        w = orbit.primitive_word.letters
        p = len(w)
        reps = -(-(k + p) // p)
        long = w * reps
        for s in range(p):
            for j in range(1, k + 1):
                counts[long[s:s + j]] += 1
    return counts


@dataclass
class EmpiricalMeasure:
    """Uniform measure on ``Per(n)``, stored as exact integer cylinder counts."""

    n: int
    per_count: int
    word_length_max: int
    cylinder_counts: dict = field(default_factory=dict)

    def count(self, w: WordLike) -> int:
        w = as_word(w)
        if not w:
            return self.per_count
        if len(w) > self.word_length_max:
            raise InputError(f"cylinders stored only up to length {self.word_length_max}")
        return self.cylinder_counts.get(w.letters, 0)

    def __call__(self, w: WordLike) -> Fraction:
        return Fraction(self.count(w), self.per_count)

    def words(self, k: int):
        return sorted(Word(t) for t in self.cylinder_counts if len(t) == k)

    def to_dict(self) -> dict:
        items = sorted(self.cylinder_counts.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return {
            "n": self.n,
            "per_count": str(self.per_count),
            "word_length_max": self.word_length_max,
            "cylinders": [
                {"word": str(Word(t)), "count": str(c),
                 "measure": f"{c}/{self.per_count}", "decimal": c / self.per_count}
                for t, c in items
            ],
        }


def empirical_measure(spec: ShiftSpec, n: int, word_length_max: int = 1,
                      per: PerResult | None = None) -> EmpiricalMeasure:
    if not 0 <= word_length_max <= n:
        raise InputError("word_length_max must lie in 0..n")
    per = enumerate_per(spec, n) if per is None else per
    counts = _cylinder_counts(per, word_length_max)
    return EmpiricalMeasure(n, per.per_count, word_length_max, dict(counts))


def cylinder_series(spec: ShiftSpec, w: WordLike, n_list) -> list:
    """``mu_n([w])`` for each ``n`` in ``n_list``, as exact fractions."""
    w = as_word(w)
    out = []
    for n in n_list:
        if not w:
            out.append(Fraction(1))
            continue
        if not is_admissible(spec, w):
            out.append(Fraction(0))
            continue
        per = enumerate_per(spec, n)
        out.append(Fraction(_cylinder_counts(per, len(w)).get(w.letters, 0), per.per_count))
    return out


def full_support_check(spec: ShiftSpec, n: int, k: int) -> list:
    """Admissible words of length ``k`` that no point of ``Per(n)`` starts with."""
    from .language import words

    per = enumerate_per(spec, n)
    seen = _cylinder_counts(per, k)
    return [Word(row) for row in words(spec, k) if tuple(int(a) for a in row) not in seen]


# ----------------------------------------------------------------------------
# diagnostics and the certificate


def ergodicity_threshold(m: int) -> Fraction:
    """``sum_{i=1..m} i/(i+1)``."""
    return sum((Fraction(i, i + 1) for i in range(1, m + 1)), Fraction(0))


@dataclass
class DiagnosticsReport:
    n: int
    letter_mean: Fraction
    alpha: Fraction
    letter_frequencies: list
    monotonicity_violations: list
    threshold: Fraction

    @property
    def below_alpha(self) -> bool:
        return self.letter_mean < self.alpha

    @property
    def alpha_exceeds_threshold(self) -> bool:
        return self.alpha > self.threshold

    def to_dict(self) -> dict:
        fmt = lambda x: f"{x.numerator}/{x.denominator}"  # noqa: E731
        return {
            "n": self.n,
            "letter_mean": fmt(self.letter_mean),
            "alpha": fmt(self.alpha),
            "letter_mean_below_alpha": self.below_alpha,
            "letter_frequencies": [fmt(x) for x in self.letter_frequencies],
            "monotonicity_violations": self.monotonicity_violations,
            "threshold": fmt(self.threshold),
            "alpha_exceeds_threshold": self.alpha_exceeds_threshold,
        }


def mme_diagnostics(spec: ShiftSpec, mu: EmpiricalMeasure) -> DiagnosticsReport:
    """Letter statistics of ``mu_n`` against the quantities in the ergodicity criterion.

    Reports ``sum_i i*mu([i])`` compared with ``alpha``, every ``i`` with
    ``mu([i]) > mu([i-1])``, and the threshold ``sum i/(i+1)``.
    """
    if mu.word_length_max < 1:
        raise InputError("measure must store single-letter cylinders")
    m = spec.max_letter
    freqs = [mu((i,)) for i in range(m + 1)]
    return DiagnosticsReport(
        n=mu.n,
        letter_mean=sum((i * freqs[i] for i in range(1, m + 1)), Fraction(0)),
        alpha=spec.alpha,
        letter_frequencies=freqs,
        monotonicity_violations=[i for i in range(1, m + 1) if freqs[i] > freqs[i - 1]],
        threshold=ergodicity_threshold(m),
    )


class Verdict(enum.Enum):
    INTRINSICALLY_ERGODIC = "IntrinsicallyErgodic"
    TRIVIAL_SHIFT = "TrivialShift"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CertificateResult:
    verdict: Verdict
    alpha: Fraction
    threshold: Fraction

    def to_dict(self) -> dict:
        fmt = lambda x: f"{x.numerator}/{x.denominator}"  # noqa: E731
        return {"verdict": self.verdict.value, "alpha": fmt(self.alpha),
                "threshold": fmt(self.threshold)}


def certificate(spec: ShiftSpec) -> CertificateResult:
    """Sufficient test for a unique measure of maximal entropy.

    ``alpha > sum_{i<=m} i/(i+1)`` certifies intrinsic ergodicity; ``alpha = 0``
    leaves only the delta measure at the zero point.  Anything else is
    inconclusive, never a negative answer.
    """
    if not spec.is_canonical:
        raise NonCanonicalError("certificate requires a canonical function", report=spec.report)
    alpha, threshold = spec.alpha, ergodicity_threshold(spec.max_letter)
    if alpha == 0:
        verdict = Verdict.TRIVIAL_SHIFT
    elif alpha > threshold:
        verdict = Verdict.INTRINSICALLY_ERGODIC
    else:
        verdict = Verdict.INCONCLUSIVE
    return CertificateResult(verdict, alpha, threshold)
