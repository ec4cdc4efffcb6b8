"""Exact sign certificates for the gradient-term coefficients.

The claim to certify is ``p(alpha0, k1, k2) <= 0`` on a cone of principal
curvatures with ``k1 >= k2``:

* hyperbolic cone: ``k2 > 0``, ``k1 >= k2``, ``k1 k2 >= 1``;
* spherical cone:  ``k1 >= k2 > 0``.

Write ``h(x) = p(alpha0, x, k2)``.  On every branch of ``k2`` the admissible
``x`` form a ray ``x >= x0(k2)`` with anchor ``x0 = k2`` (hyperbolic
``k2 >= 1`` and both spherical branches) or ``x0 = 1/k2`` (hyperbolic
``k2 <= 1``).  If the top derivative ``h^(m)`` is nonpositive on the ray and
``h^(k)(x0) <= 0`` for ``k < m`` then ``h <= 0`` on the ray (integrate
``m`` times from the anchor).  We take ``m`` as the degree in ``x``, where
``h^(m)`` no longer depends on ``x``, and every link reduces to the sign of a
univariate polynomial in ``k2`` on a bounded interval, decided exactly with
Sturm sequences.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..speeds import SpeedKind
from .coefficients import CASES, UnsupportedCase, a2_from_a1, coeff_a1
from .poly import RationalPoly, UPoly, k1 as X, k2 as Y, nonpositive_on

__all__ = [
    "Branch",
    "ChainLink",
    "BranchResult",
    "SignCertificate",
    "ConvexityCertificate",
    "TheoremSummary",
    "QuadraticForm",
    "anchored_derivative",
    "certify_endpoint",
    "alpha_convexity",
    "certify_theorem",
    "certify_all",
    "falsification_scan",
    "THEOREM_ENDPOINTS",
    "format_certificates",
]

CERTIFIED, FALSIFIED, INCONCLUSIVE = "certified", "falsified", "inconclusive"

#: alpha intervals on which the maximum of G is claimed non-increasing.
THEOREM_ENDPOINTS = {
    (SpeedKind.MEAN_POW, -1): (Fraction(1, 3), Fraction(4)),
    (SpeedKind.SCALAR_POW, -1): (Fraction(1, 4), Fraction(1)),
    (SpeedKind.GAUSS_POW, -1): (Fraction(1, 4), Fraction(1)),
    (SpeedKind.GAUSS_POW, 1): (Fraction(1, 4), Fraction(1)),
}


@dataclass(frozen=True)
class Branch:
    """Range of ``k2`` with the anchor of the admissible ray in ``k1``.

    ``lo``/``hi`` bound ``k2``; ``hi=None`` means unbounded.  ``anchor`` is
    ``'k2'`` or ``'1/k2'``.
    """

    name: str
    lo: Fraction
    hi: Fraction | None
    anchor: str


CONES = {
    "hyperbolic": (Branch("k2>=1", Fraction(1), None, "k2"), Branch("0<k2<=1", Fraction(0), Fraction(1), "1/k2")),
    "spherical": (Branch("0<k2<=1", Fraction(0), Fraction(1), "k2"), Branch("k2>=1", Fraction(1), None, "k2")),
}


def _cone_name(cone) -> str:
    if cone in (-1, "hyperbolic"):
        return "hyperbolic"
    if cone in (1, "spherical"):
        return "spherical"
    raise ValueError(f"unknown cone {cone!r}")


def in_cone(cone: str, k1, k2) -> bool:
    """Strict interior of the cone (``k1 > k2`` included)."""
    if _cone_name(cone) == "hyperbolic":
        return k2 > 0 and k1 > k2 and k1 * k2 > 1
    return k2 > 0 and k1 > k2


def anchored_derivative(p: RationalPoly, order: int, anchor: str) -> tuple[UPoly, int]:
    """``d^order p / dk1^order`` at ``k1 = anchor`` as ``numerator(k2) / k2**shift``.

    ``p`` must not contain ``alpha``.  For ``anchor='k2'`` the shift is 0.
    """
    if "alpha" in p.variables():
        raise ValueError("substitute alpha before anchoring")
    d = p.diff("k1", order)
    if anchor == "k2":
        out: dict = {}
        for (_, i, j), c in d.terms.items():
            out[i + j] = out.get(i + j, 0) + c
        n = max(out, default=0)
        return UPoly([out.get(e, 0) for e in range(n + 1)]), 0
    if anchor == "1/k2":
        shift = max((i for (_, i, _j) in d.terms), default=0)
        out = {}
        for (_, i, j), c in d.terms.items():
            e = j - i + shift
            out[e] = out.get(e, 0) + c
        n = max(out, default=0)
        return UPoly([out.get(e, 0) for e in range(n + 1)]), shift
    raise ValueError(f"unknown anchor {anchor!r}")


def _sign_on_branch(q: UPoly, branch: Branch):
    """Check ``q(k2) <= 0`` for k2 in the branch; returns (ok, witness k2, roots, note)."""
    if branch.hi is None:
        # k2 in [lo, inf) with lo = 1: map k2 = 1/s, s in (0, 1]
        r = q.reversed()
        ok, w, roots = nonpositive_on(r, 0, 1)
        if w is not None:
            w = None if w == 0 else 1 / w
        return ok, w, roots, "k2 = 1/s, s in [0,1]"
    ok, w, roots = nonpositive_on(q, branch.lo, branch.hi)
    if w == 0:
        w = None
    return ok, w, roots, f"k2 in [{branch.lo},{branch.hi}]"


@dataclass
class ChainLink:
    order: int
    kind: str  # 'top' (independent of k1) or 'anchored'
    numerator: UPoly
    shift: int
    ok: bool
    witness_k2: Fraction | None = None
    roots: list = field(default_factory=list)
    mapping: str = ""


@dataclass
class BranchResult:
    branch: Branch
    status: str
    route: str
    links: list[ChainLink] = field(default_factory=list)
    counterexample: tuple | None = None
    note: str = ""


@dataclass
class SignCertificate:
    case: str
    alpha: Fraction
    cone: str
    status: str
    branches: list[BranchResult]
    note: str = ""


@dataclass(frozen=True)
class QuadraticForm:
    """Representation ``p = A x^2 + B x y + C y^2`` used as a second certification route."""

    x: RationalPoly
    y: RationalPoly
    A: RationalPoly
    B: RationalPoly
    C: RationalPoly

    def expand(self) -> RationalPoly:
        return self.A * self.x**2 + self.B * self.x * self.y + self.C * self.y**2

    @property
    def discriminant(self) -> RationalPoly:
        return self.B**2 - 4 * self.A * self.C


def _chain(h: RationalPoly, branch: Branch) -> tuple[bool, list[ChainLink]]:
    m = h.degree("k1")
    links = []
    if m < 0:
        return True, links
    top = h.diff("k1", m)
    q, shift = anchored_derivative(top, 0, "k2")  # independent of k1: any anchor gives the same
    ok, w, roots, mapping = _sign_on_branch(q, branch)
    links.append(ChainLink(m, "top", q, 0, ok, w, roots, mapping))
    if not ok:
        return False, links
    for k in range(m - 1, -1, -1):
        q, shift = anchored_derivative(h, k, branch.anchor)
        ok, w, roots, mapping = _sign_on_branch(q, branch)
        links.append(ChainLink(k, "anchored", q, shift, ok, w, roots, mapping))
        if not ok:
            return False, links
    return True, links


def _branch_points(branch: Branch, n: int):
    if branch.hi is None:
        return [Fraction(1) + Fraction(i * i, 4) for i in range(n)] + [Fraction(100), Fraction(1000)]
    return [Fraction(i, n) for i in range(1, n + 1)]


def _grid_search(h: RationalPoly, branch: Branch, n: int = 24):
    """Exact evaluation on a structured grid of the open cone; returns (max value, point)."""
    best, where = None, None
    for y in _branch_points(branch, n):
        if y <= 0:
            continue
        x0 = y if branch.anchor == "k2" else 1 / y
        for t in [Fraction(1, 1000), Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(3), Fraction(10), Fraction(100)]:
            x = x0 + t
            v = h.evaluate(None, x, y)
            if best is None or v > best:
                best, where = v, (x, y)
    return best, where


def _certify_nonpositive(h: RationalPoly, cone: str) -> list[BranchResult]:
    results = []
    for branch in CONES[cone]:
        ok, links = _chain(h, branch)
        if ok:
            results.append(BranchResult(branch, CERTIFIED, "derivative-chain", links))
            continue
        best, where = _grid_search(h, branch)
        if best is not None and best > 0 and in_cone(cone, *where):
            results.append(BranchResult(branch, FALSIFIED, "derivative-chain", links, (where, best)))
        else:
            failed = links[-1]
            results.append(BranchResult(
                branch, INCONCLUSIVE, "derivative-chain", links,
                note=f"link h^({failed.order}) not verified; grid search max {best}"))
    return results


def _combine(results: Sequence[BranchResult]) -> str:
    statuses = {r.status for r in results}
    if FALSIFIED in statuses:
        return FALSIFIED
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return CERTIFIED


def certify_endpoint(p: RationalPoly, alpha, cone, case: str = "",
                     quadratic_form: QuadraticForm | None = None) -> SignCertificate:
    """Certify ``p(alpha, k1, k2) <= 0`` on the cone for one exact ``alpha``."""
    alpha = Fraction(alpha)
    cone = _cone_name(cone)
    h = p.subs("alpha", alpha)
    if h.is_zero():
        branches = [BranchResult(b, CERTIFIED, "zero polynomial") for b in CONES[cone]]
        return SignCertificate(case, alpha, cone, CERTIFIED, branches, "zero polynomial")
    results = _certify_nonpositive(h, cone)
    status = _combine(results)
    note = ""
    if status == INCONCLUSIVE and quadratic_form is not None:
        qf_results, note = _certify_quadratic_form(h, quadratic_form, cone)
        if qf_results is not None:
            results, status = qf_results, CERTIFIED
    return SignCertificate(case, alpha, cone, status, results, note)


def _certify_quadratic_form(h: RationalPoly, qf: QuadraticForm, cone: str):
    """``p = A x^2 + B xy + C y^2`` with ``A <= 0``, ``C <= 0`` and ``B^2 - 4AC <= 0``."""
    if qf.expand() != h:
        return None, "quadratic form does not reproduce the polynomial"
    parts = {"A": qf.A, "C": qf.C, "discriminant": qf.discriminant}
    out = []
    for name, poly in parts.items():
        res = _certify_nonpositive(poly, cone)
        if _combine(res) != CERTIFIED:
            return None, f"quadratic-form route failed at {name}"
        for r in res:
            r.route = f"quadratic-form:{name}"
        out += res
    return out, "certified via p = A x^2 + B x y + C y^2 with A, C <= 0 and nonpositive discriminant"


# Quadratic-form representations, keyed by (kind, c, which, alpha).
def _scalar_quarter() -> QuadraticForm:
    x = X - Y
    y = Y**2 - 1
    A = -(3 * x + 7 * Y**3) / 4
    return QuadraticForm(x=x, y=y, A=A, B=-5 * Y**2, C=-4 * Y)


QUADRATIC_FORMS = {(SpeedKind.SCALAR_POW, -1, "a1", Fraction(1, 4)): _scalar_quarter}


@dataclass
class ConvexityCertificate:
    case: str
    status: str
    leading: RationalPoly
    factors: list[str]
    remainder: RationalPoly
    note: str = ""


def alpha_convexity(p: RationalPoly, cone, case: str = "") -> ConvexityCertificate:
    """Show that the ``alpha^2`` coefficient of ``p`` is positive on the open cone.

    The coefficient is divided by ``(k1-k2)^2`` and then repeatedly by
    ``k1 k2 - 1`` (hyperbolic cone), all positive on the open cone; the
    remainder must be a single monomial with positive coefficient.
    """
    cone = _cone_name(cone)
    if p.degree("alpha") != 2:
        raise ValueError(f"expected a polynomial quadratic in alpha, got degree {p.degree('alpha')}")
    lead = p.coeff("alpha", 2)
    factors = []
    rest = lead.exact_divide((X - Y) ** 2)
    if rest is None:
        return ConvexityCertificate(case, INCONCLUSIVE, lead, [], lead, "no (k1-k2)^2 factor")
    factors.append("(k1-k2)^2")
    if cone == "hyperbolic":
        while True:
            q = rest.exact_divide(X * Y - 1)
            if q is None:
                break
            rest = q
            factors.append("(k1*k2-1)")
    terms = rest.terms
    if len(terms) == 1 and next(iter(terms.values())) > 0:
        return ConvexityCertificate(case, CERTIFIED, lead, factors, rest,
                                    "positive monomial times factors positive on the open cone")
    return ConvexityCertificate(case, INCONCLUSIVE, lead, factors, rest, "remainder is not a positive monomial")


@dataclass
class TheoremSummary:
    kind: SpeedKind
    c: int
    endpoints: tuple
    status: str
    convexity: list[ConvexityCertificate]
    certificates: list[SignCertificate]
    failing: str = ""


def case_label(kind, c, which="a1") -> str:
    amb = {-1: "H3", 1: "S3", 0: "R3"}[c]
    return f"{SpeedKind(kind).value}/{amb}/{which}"


def certify_theorem(kind, c: int) -> TheoremSummary:
    """Convexity in alpha plus endpoint certificates for ``a1`` and ``a2``."""
    kind = SpeedKind(kind)
    if (kind, c) not in THEOREM_ENDPOINTS:
        coeff_a1(kind, c)  # raises the descriptive error
        raise UnsupportedCase(f"no theorem alpha range for {kind.value} with c = {c}")
    endpoints = THEOREM_ENDPOINTS[(kind, c)]
    a1 = coeff_a1(kind, c)
    polys = {"a1": a1, "a2": a2_from_a1(a1)}
    conv = [alpha_convexity(p, c, case_label(kind, c, w)) for w, p in polys.items()]
    certs = []
    for w, p in polys.items():
        for al in endpoints:
            qf = QUADRATIC_FORMS.get((kind, c, w, al))
            certs.append(certify_endpoint(p, al, c, case_label(kind, c, w), qf() if qf else None))
    failing = ""
    status = CERTIFIED
    for cc in conv:
        if cc.status != CERTIFIED:
            status, failing = INCONCLUSIVE, f"{cc.case} convexity: {cc.note}"
            break
    for sc in certs:
        if sc.status != CERTIFIED and status == CERTIFIED:
            status = sc.status
            bad = next(b for b in sc.branches if b.status != CERTIFIED)
            failing = f"{sc.case} alpha={sc.alpha} branch {bad.branch.name}: {bad.note or bad.status}"
    return TheoremSummary(kind, c, endpoints, status, conv, certs, failing)


def certify_all() -> list[TheoremSummary]:
    return [certify_theorem(kind, c) for kind, c in CASES]


@dataclass
class ScanReport:
    max_value: Fraction | None
    argmax: tuple | None
    positive_hits: list
    samples: int


def falsification_scan(p: RationalPoly, cone, alphas: Sequence, samples: int = 2000, seed: int = 0) -> ScanReport:
    """Exact evaluation of ``p`` at structured and random rational cone points for each alpha."""
    cone = _cone_name(cone)
    rng = random.Random(seed)
    pts = []
    for branch in CONES[cone]:
        for y in _branch_points(branch, 12):
            x0 = y if branch.anchor == "k2" else 1 / y
            for t in (Fraction(1, 100), Fraction(1, 2), Fraction(2), Fraction(20)):
                pts.append((x0 + t, y))
    while len(pts) < samples:
        y = Fraction(rng.randint(1, 4000), 1000)
        x0 = y if (cone == "spherical" or y >= 1) else 1 / y
        pts.append((x0 + Fraction(rng.randint(1, 5000), 1000), y))
    best, where, hits, n = None, None, [], 0
    for al in alphas:
        h = p.subs("alpha", Fraction(al))
        for x, y in pts:
            if not in_cone(cone, x, y):
                continue
            v = h.evaluate(None, x, y)
            n += 1
            if best is None or v > best:
                best, where = v, (Fraction(al), x, y)
            if v > 0:
                hits.append((Fraction(al), x, y, v))
    return ScanReport(best, where, hits, n)


def _fmt_upoly(q: UPoly, var="k2") -> str:
    if q.is_zero():
        return "0"
    parts = []
    for e, c in reversed(list(enumerate(q.c))):
        if c:
            parts.append(f"({c})" + (f"*{var}^{e}" if e > 1 else (f"*{var}" if e == 1 else "")))
    return " + ".join(parts)


def format_certificates(summaries: Sequence[TheoremSummary]) -> str:
    """Structured text report with stable field names."""
    out = []
    for s in summaries:
        out.append(f"theorem: {s.kind.value} c={s.c} alpha in [{s.endpoints[0]}, {s.endpoints[1]}]")
        out.append(f"  status: {s.status}")
        if s.failing:
            out.append(f"  failing: {s.failing}")
        for cc in s.convexity:
            out.append(f"  convexity: case={cc.case} status={cc.status} factors={'*'.join(cc.factors)} "
                       f"remainder={cc.remainder!r}")
        for sc in s.certificates:
            out.append(f"  endpoint: case={sc.case} alpha={sc.alpha} cone={sc.cone} status={sc.status}")
            if sc.note:
                out.append(f"    note: {sc.note}")
            for br in sc.branches:
                out.append(f"    branch: {br.branch.name} anchor={br.branch.anchor} route={br.route} status={br.status}")
                if br.note:
                    out.append(f"      note: {br.note}")
                if br.counterexample:
                    (x, y), v = br.counterexample
                    out.append(f"      counterexample: k1={x} k2={y} value={v}")
                for ln in br.links:
                    den = f" / k2^{ln.shift}" if ln.shift else ""
                    roots = ", ".join(f"[{a},{b}]" for a, b in ln.roots) or "none"
                    out.append(f"      link: order={ln.order} kind={ln.kind} ok={ln.ok} map={ln.mapping} "
                               f"value=({_fmt_upoly(ln.numerator)}){den} sign_changes={roots}"
                               + (f" witness_k2={ln.witness_k2}" if ln.witness_k2 is not None else ""))
    return "\n".join(out) + "\n"
