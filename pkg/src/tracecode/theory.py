"""Closed-form parameters of the trace code and a prediction/enumeration diff.

Every weight table is a list of ``Row(weight, multiplicity)`` whose entries
are functions of a :class:`Params` bundle, so the same data serves the
consistency sweep, the verifier and the CLI.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import HypothesisError
from .field import bar_eta, is_prime

REGIMES = ("odd", "even2mod4", "even0mod4")


@dataclass(frozen=True)
class Params:
    p: int
    m: int

    @property
    def m_p(self) -> int:
        return self.m % self.p

    @property
    def eps(self) -> int:
        """(-1)^(((p-1)/2)((m-1)/2)), for odd m."""
        return -1 if ((self.p - 1) // 2) * ((self.m - 1) // 2) % 2 else 1

    @property
    def e(self) -> int:
        return bar_eta(self.m_p, self.p)

    def pw(self, k: Fraction | int) -> int:
        k = Fraction(k)
        if k.denominator != 1 or k < 0:
            raise ValueError(f"exponent {k} is not a nonnegative integer")
        return self.p ** int(k)


@dataclass(frozen=True)
class Row:
    weight: Callable[[Params], int | Fraction]
    mult: Callable[[Params], int | Fraction]


def _h(a: Params) -> Fraction:
    return Fraction(a.m - 3, 2)


def _half(a: Params) -> int:
    return a.m // 2


ODD_MP0 = [
    Row(lambda a: (a.p - 1) * a.pw(a.m - 2), lambda a: a.pw(a.m - 1) - 1),
    Row(
        lambda a: (a.p - 1) * (a.pw(a.m - 2) - a.eps * a.pw(_h(a))),
        lambda a: Fraction(a.p - 1, 2) * (a.pw(a.m - 2) + a.eps * a.pw(_h(a) + 1)),
    ),
    Row(
        lambda a: (a.p - 1) * (a.pw(a.m - 2) + a.eps * a.pw(_h(a))),
        lambda a: Fraction(a.p - 1, 2) * (a.pw(a.m - 2) - a.eps * a.pw(_h(a) + 1)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.eps * a.pw(_h(a)),
        lambda a: Fraction((a.p - 1) ** 2, 2) * a.pw(a.m - 2),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) - a.eps * a.pw(_h(a)),
        lambda a: Fraction((a.p - 1) ** 2, 2) * a.pw(a.m - 2),
    ),
]

ODD_MP1 = [
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2),
        lambda a: a.pw(a.m - 2) - 1 + a.e * a.eps * (a.p - 1) * a.pw(_h(a)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.e * a.eps * a.pw(_h(a) + 1),
        lambda a: a.pw(a.m - 2) * (a.p - 1) - a.e * a.eps * (a.p - 1) * a.pw(_h(a)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.e * a.eps * (a.p + 1) * a.pw(_h(a)),
        lambda a: Fraction((a.p - 1) * (a.p - 2), 2)
        * a.pw(_h(a))
        * (a.pw(_h(a) + 1) - a.e * a.eps),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.e * a.eps * (a.p - 1) * a.pw(_h(a)),
        lambda a: Fraction(a.p - 1, 2) * (a.pw(a.m - 1) - a.e * a.eps * a.pw(_h(a) + 1)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.e * a.eps * a.pw(_h(a)),
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.e * a.eps * (a.p - 1) ** 2 * a.pw(_h(a)),
    ),
]

EVEN2_MP0 = [
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2),
        lambda a: a.pw(a.m - 2) - (a.p - 1) * a.pw(_half(a) - 1) - 1,
    ),
    Row(
        lambda a: (a.p - 1) * (a.pw(a.m - 2) - a.pw(_half(a) - 1)),
        lambda a: (a.p - 1) * (2 * a.pw(a.m - 2) + a.pw(_half(a) - 1)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) - (a.p - 2) * a.pw(_half(a) - 1),
        lambda a: (a.p - 1) ** 2 * a.pw(a.m - 2),
    ),
]

EVEN2_MP1 = [
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2),
        lambda a: a.pw(a.m - 2) + Fraction(a.p - 1, 2) * (a.pw(a.m - 1) + a.pw(_half(a))) - 1,
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.pw(_half(a) - 1),
        lambda a: (a.p - 1) * (2 * a.pw(a.m - 2) - a.pw(_half(a) - 1)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + 2 * a.pw(_half(a) - 1),
        lambda a: Fraction((a.p - 1) * (a.p - 2), 2) * (a.pw(a.m - 2) - a.pw(_half(a) - 1)),
    ),
]

EVEN0_MP0 = [
    Row(
        lambda a: a.pw(a.m - 2) * (a.p - 1) - (a.p - 1) ** 2 * a.pw(_half(a) - 1),
        lambda a: (a.p**2 - 1) * a.pw(a.m - 2),
    ),
    Row(
        lambda a: a.pw(a.m - 2) * (a.p - 1),
        lambda a: a.pw(a.m - 4) - (a.p - 1) * a.pw(_half(a) - 2) - 1,
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(_half(a)) * (a.pw(_half(a) - 2) - 1),
        lambda a: (a.p - 1) * (2 * a.pw(a.m - 4) + a.pw(_half(a) - 2)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) - (a.p - 2) * a.pw(_half(a)),
        lambda a: (a.p - 1) ** 2 * a.pw(a.m - 4),
    ),
]

EVEN0_MP1 = [
    Row(
        lambda a: (a.p - 1) * (a.pw(_half(a) - 1) + a.pw(a.m - 2)),
        lambda a: a.pw(a.m) - a.pw(a.m - 2),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2),
        lambda a: a.pw(a.m - 4) + Fraction(a.p - 1, 2) * (a.pw(_half(a) - 1) + a.pw(a.m - 3)) - 1,
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + a.pw(_half(a)),
        lambda a: (a.p - 1) * (2 * a.pw(a.m - 4) - a.pw(_half(a) - 2)),
    ),
    Row(
        lambda a: (a.p - 1) * a.pw(a.m - 2) + 2 * a.pw(_half(a)),
        lambda a: Fraction((a.p - 1) * (a.p - 2), 2) * (a.pw(a.m - 4) - a.pw(_half(a) - 2)),
    ),
]

TABLES = {
    ("odd", True): ODD_MP0,
    ("odd", False): ODD_MP1,
    ("even2mod4", True): EVEN2_MP0,
    ("even2mod4", False): EVEN2_MP1,
    ("even0mod4", True): EVEN0_MP0,
    ("even0mod4", False): EVEN0_MP1,
}


# ---------------------------------------------------------------------------


def _check_pm(p: int, m: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if m < 2:
        raise ValueError("m must be at least 2")


def regime(m: int) -> str:
    if m % 2:
        return "odd"
    return "even2mod4" if m % 4 == 2 else "even0mod4"


def in_hypothesis(p: int, m: int) -> bool:
    r = regime(m)
    if r == "odd":
        return m >= 3
    if r == "even2mod4":
        return m >= 2
    return m >= 6


def predicted_length(p: int, m: int) -> int:
    _check_pm(p, m)
    a = Params(p, m)
    if m % 2:
        return a.pw(m - 1) - 1 + a.eps * a.e * a.pw(Fraction(m - 1, 2))
    h = Fraction(m - 1 + (-1) ** (m // 2), 2)
    if a.m_p == 0:
        return a.pw(m - 1) - 1 - (p - 1) * a.pw(h)
    return a.pw(m - 1) - 1 + a.pw(h)


def _as_int(v, what: str) -> int:
    v = Fraction(v)
    if v.denominator != 1:
        raise ArithmeticError(f"{what} evaluates to the non-integer {v}")
    return int(v)


@dataclass
class Prediction:
    p: int
    m: int
    m_p: int
    n: int
    dist: "WeightDistribution"  # noqa: F821
    regime: str
    notes: list[str] = field(default_factory=list)


def table_rows(p: int, m: int) -> list[tuple[int, int]]:
    """Raw (weight, multiplicity) rows, before merging and dropping."""
    a = Params(p, m)
    rows = TABLES[(regime(m), a.m_p == 0)]
    return [
        (_as_int(r.weight(a), "weight"), _as_int(r.mult(a), "multiplicity"))
        for r in rows
    ]


def predicted_distribution(p: int, m: int) -> Prediction:
    from .code import WeightDistribution

    _check_pm(p, m)
    if not in_hypothesis(p, m):
        raise HypothesisError(
            f"no closed-form distribution for (p, m) = ({p}, {m}): "
            f"{regime(m)} needs m >= {6 if regime(m) == 'even0mod4' else 3}; "
            "use enumeration instead"
        )
    n = predicted_length(p, m)
    notes = []
    counts: dict[int, int] = {}
    for w, a in table_rows(p, m):
        if a < 0:
            raise ArithmeticError(f"negative multiplicity {a} at weight {w}")
        if a == 0:
            notes.append(f"row w={w} has frequency 0 and is dropped")
            continue
        if w in counts:
            notes.append(f"rows with equal weight w={w} are merged")
        counts[w] = counts.get(w, 0) + a
    dist = WeightDistribution(p=p, n=n, k=m, counts=counts, m=m, method="predicted")
    return Prediction(p, m, m % p, n, dist, regime(m), notes)


# ---------------------------------------------------------------------------


@dataclass
class RatioReport:
    w_min: int
    w_max: int
    passed: bool
    case: str
    in_scope: bool

    def to_json(self) -> dict:
        return {"case": self.case, "in_scope": self.in_scope, "pass": self.passed,
                "w_max": self.w_max, "w_min": self.w_min}


def ratio_case(p: int, m: int) -> tuple[str, bool]:
    mp = "m_p=0" if m % p == 0 else "m_p≠0"
    if m % 2:
        return f"m odd, {mp}", m >= 5
    res = 2 if m % 4 == 2 else 0
    return f"m≡{res} (mod 4), {mp}", m >= 6


def ratio_check(dist, p: int, m: int | None = None) -> RatioReport:
    """Exact test of w_min / w_max > (p - 1) / p."""
    if m is None:
        m = dist.m if dist.m is not None else dist.k
    w_min, w_max = dist.min_weight, dist.max_weight
    if w_min is None:
        raise ValueError("ratio_check needs a nonzero weight")
    case, in_scope = ratio_case(p, m)
    return RatioReport(w_min, w_max, p * w_min > (p - 1) * w_max, case, in_scope)


# ---------------------------------------------------------------------------
# enumerators as printed in the literature, kept verbatim

PUBLISHED_EXAMPLES: dict[tuple[int, int], tuple[tuple[int, int, int], str]] = {
    (3, 2): ((3, 2, 2), "1+6z^2+2z^3"),
    (3, 3): ((8, 3, 4), "1+6z^4+6z^5+8z^6+6z^7"),
    (5, 3): ((19, 3, 14), "1+36z^14+24z^15+60z^16+4z^19"),
    (3, 5): ((71, 5, 42), "1+30z^42+60z^45+90z^48+42z^51+20z^54"),
    (3, 9): ((6560, 9, 4320), "1+2268z^4320+4374z^4347+6560z^4374+4374z^4401+2106z^4428"),
    (3, 6): ((224, 6, 144), "1+342z^144+324z^153+62z^162"),
    (5, 6): ((3149, 6, 2500), "1+7124z^2500+2525z^4900+2550z^3600"),
    (3, 8): ((2267, 8, 1458), "1+350z^1458+5832z^1512+306z^1539+32z^1620"),
    (5, 8): ((78749, 8, 62500), "1+7124z^62500+375000z^63000+4900z^63125+3600z^63750"),
}

_ENUM_TERM = re.compile(r"^(\d*)z\^(\d+)$")


def parse_enumerator(text: str) -> list[tuple[int, int]]:
    """``"1+6z^4+..."`` -> [(coefficient, exponent), ...] for the z terms."""
    out = []
    for term in text.replace(" ", "").split("+"):
        if term == "1":
            continue
        mt = _ENUM_TERM.match(term)
        if mt is None:
            raise ValueError(f"bad enumerator term {term!r}")
        out.append((int(mt.group(1) or 1), int(mt.group(2))))
    return out


@dataclass
class PublishedAudit:
    status: str  # "match", "transposed" or "mismatch"
    notes: list[str]

    def to_json(self) -> dict:
        return {"notes": self.notes, "status": self.status}


def audit_published(p: int, m: int, dist) -> PublishedAudit | None:
    """Compare a printed enumerator with an enumerated distribution."""
    if (p, m) not in PUBLISHED_EXAMPLES:
        return None
    (n, k, d), text = PUBLISHED_EXAMPLES[(p, m)]
    terms = parse_enumerator(text)
    printed = {w: a for a, w in terms}
    actual = dist.nonzero
    notes = []
    if n != dist.n:
        notes.append(f"printed length {n}, enumerated {dist.n}")
    if d != dist.min_weight:
        notes.append(f"printed minimum distance {d}, enumerated {dist.min_weight}")
    if printed == actual and not notes:
        return PublishedAudit("match", [])
    total = sum(printed.values())
    if total != p**m - 1:
        notes.append(f"printed multiplicities sum to {total}, not p^m - 1 = {p**m - 1}")
    over = sorted(w for w in printed if w > dist.n)
    if over:
        notes.append(f"printed weights {over} exceed the length {dist.n}")
    swapped = {}
    for a, w in terms:
        # read the term both ways; keep whichever agrees with enumeration
        swapped[a if actual.get(a) == w else w] = w if actual.get(a) == w else a
    if printed != actual and swapped == actual:
        notes.append("weight and multiplicity are transposed in some printed terms")
        return PublishedAudit("transposed", notes)
    for w in sorted(set(printed) | set(actual)):
        if printed.get(w, 0) != actual.get(w, 0):
            notes.append(f"A_{w}: printed {printed.get(w, 0)}, enumerated {actual.get(w, 0)}")
    return PublishedAudit("mismatch" if notes else "match", notes)


# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    p: int
    m: int
    regime: str
    n_predicted: int | None
    n_enumerated: int
    enumerated: "WeightDistribution"  # noqa: F821
    prediction: Prediction | None
    hypothesis_error: str | None
    pless: bool
    pless_failures: list[str]
    ratio: RatioReport
    mismatches: list[dict]
    published: PublishedAudit | None

    @property
    def distribution_match(self) -> bool:
        return self.prediction is not None and not self.mismatches

    @property
    def exit_code(self) -> int:
        if self.prediction is None:
            return 2
        return 0 if self.distribution_match and self.pless else 1

    def to_json(self) -> dict:
        out = {
            "distribution_match": self.distribution_match,
            "enumeration": self.enumerated.to_json(),
            "m": self.m,
            "mismatches": self.mismatches,
            "n_enumerated": self.n_enumerated,
            "n_predicted": self.n_predicted,
            "p": self.p,
            "pless": self.pless,
            "ratio": {
                "case": self.ratio.case,
                "in_scope": self.ratio.in_scope,
                "pass": self.ratio.passed,
            },
            "regime": self.regime,
        }
        if self.prediction is not None:
            out["notes"] = self.prediction.notes
        if self.hypothesis_error:
            out["hypothesis_error"] = self.hypothesis_error
        if self.pless_failures:
            out["pless_failures"] = self.pless_failures
        if self.published is not None:
            out["published"] = self.published.to_json()
        return out


def diff_distributions(pred, enum) -> list[dict]:
    a, b = pred.nonzero, enum.nonzero
    return [
        {"enumerated": b.get(w, 0), "predicted": a.get(w, 0), "w": w}
        for w in sorted(set(a) | set(b))
        if a.get(w, 0) != b.get(w, 0)
    ]


def verify(
    p: int,
    m: int,
    method: str = "fast",
    modulus=None,
    budget: int | None = None,
    workers: int = 1,
) -> VerifyReport:
    from .code import build_code, generator_matrix, pless_check, weight_distribution
    from .field import FieldCtx

    _check_pm(p, m)
    ctx = FieldCtx(p, m, modulus)
    code = build_code(ctx)
    dist = weight_distribution(code, method, budget, workers)
    try:
        pred = predicted_distribution(p, m)
        herr = None
    except HypothesisError as exc:
        pred, herr = None, str(exc)
    n_pred = predicted_length(p, m)
    mismatches = []
    if pred is not None:
        mismatches = diff_distributions(pred.dist, dist)
        if n_pred != code.n:
            mismatches.append({"enumerated": code.n, "predicted": n_pred, "w": "n"})
    pl = pless_check(dist, m, generator_matrix(code))
    return VerifyReport(
        p=p,
        m=m,
        regime=regime(m),
        n_predicted=n_pred,
        n_enumerated=code.n,
        enumerated=dist,
        prediction=pred,
        hypothesis_error=herr,
        pless=pl.ok,
        pless_failures=pl.failures(),
        ratio=ratio_check(dist, p, m),
        mismatches=mismatches,
        published=audit_published(p, m, dist),
    )
