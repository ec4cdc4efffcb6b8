"""Exact polynomial arithmetic over the rationals.

``RationalPoly`` is a sparse polynomial in the fixed variables
``(alpha, k1, k2)``.  ``UPoly`` is a dense univariate polynomial used for
root isolation with Sturm sequences.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

__all__ = ["RationalPoly", "UPoly", "VARS", "alpha", "k1", "k2", "nonpositive_on"]

VARS = ("alpha", "k1", "k2")
_INDEX = {name: i for i, name in enumerate(VARS)}


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact polynomials; use Fraction")
    return Fraction(x)


class RationalPoly:
    """Sparse polynomial with Fraction coefficients in ``(alpha, k1, k2)``.

    Terms are stored as ``{(e_alpha, e_k1, e_k2): coefficient}`` with zero
    coefficients removed, so equality of polynomials is equality of dicts.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = _frac(c)
            if c:
                exps = tuple(int(e) for e in exps)
                if len(exps) != 3 or min(exps) < 0:
                    raise ValueError(f"bad exponent tuple {exps}")
                clean[exps] = clean.get(exps, 0) + c
        self._terms = {e: c for e, c in sorted(clean.items()) if c}

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> "RationalPoly":
        e = [0, 0, 0]
        e[_INDEX[name]] = 1
        return cls({tuple(e): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @staticmethod
    def _lift(other) -> "RationalPoly":
        return other if isinstance(other, RationalPoly) else RationalPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return RationalPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError("only non-negative integer powers")
        result, base = RationalPoly.const(1), self
        n = int(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        c = _frac(c)
        return RationalPoly({e: v / c for e, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPoly.const(other)
        return isinstance(other, RationalPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(f"{v}^{p}" if p > 1 else v for v, p in zip(VARS, e) if p)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def degree(self, name: str) -> int:
        i = _INDEX[name]
        return max((e[i] for e in self._terms), default=-1)

    def variables(self) -> set[str]:
        return {v for v, i in _INDEX.items() if any(e[i] for e in self._terms)}

    def coeff(self, name: str, n: int) -> "RationalPoly":
        """Coefficient of ``name**n`` as a polynomial in the remaining variables."""
        i = _INDEX[name]
        out = {}
        for e, c in self._terms.items():
            if e[i] == n:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return RationalPoly(out)

    def subs(self, name: str, value) -> "RationalPoly":
        """Substitute an exact rational for one variable."""
        value = _frac(value)
        i = _INDEX[name]
        out: dict = {}
        for e, c in self._terms.items():
            e2 = list(e)
            p = e2[i]
            e2[i] = 0
            out[tuple(e2)] = out.get(tuple(e2), 0) + c * value**p
        return RationalPoly(out)

    def swap_kappa(self) -> "RationalPoly":
        return RationalPoly({(e[0], e[2], e[1]): c for e, c in self._terms.items()})

    def diff(self, name: str, n: int = 1) -> "RationalPoly":
        i = _INDEX[name]
        out = {}
        for e, c in self._terms.items():
            p = e[i]
            if p >= n:
                fall = 1
                for j in range(n):
                    fall *= p - j
                e2 = list(e)
                e2[i] = p - n
                out[tuple(e2)] = c * fall
        return RationalPoly(out)

    def evaluate(self, alpha=None, k1=None, k2=None):
        """Evaluate at exact (or float) values; every variable present must be given."""
        vals = (alpha, k1, k2)
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    if v is None:
                        raise ValueError("missing value for a variable that occurs in the polynomial")
                    term = term * v**p
            total = total + term
        return total

    __call__ = evaluate

    def evaluate_float(self, alpha=0.0, k1=0.0, k2=0.0):
        return sum(float(c) * alpha ** e[0] * k1 ** e[1] * k2 ** e[2] for e, c in self._terms.items())

    def to_univariate(self, name: str) -> "UPoly":
        if self.variables() - {name}:
            raise ValueError(f"polynomial is not univariate in {name}")
        i = _INDEX[name]
        coeffs = [Fraction(0)] * (self.degree(name) + 1)
        for e, c in self._terms.items():
            coeffs[e[i]] += c
        return UPoly(coeffs)

    def exact_divide(self, other: "RationalPoly") -> "RationalPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None.

        Multivariate long division with lexicographic leading terms.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_o = max(other._terms)
        rem = self
        q: dict = {}
        while not rem.is_zero():
            lead_r = max(rem._terms)
            diff = tuple(a - b for a, b in zip(lead_r, lead_o))
            if min(diff) < 0:
                return None
            c = rem._terms[lead_r] / other._terms[lead_o]
            q[diff] = q.get(diff, 0) + c
            rem = rem - RationalPoly({diff: c}) * other
        return RationalPoly(q)


alpha = RationalPoly.var("alpha")
k1 = RationalPoly.var("k1")
k2 = RationalPoly.var("k2")


class UPoly:
    """Dense univariate polynomial, coefficients low to high degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"UPoly({[str(x) for x in self.c]})"

    def __neg__(self):
        return UPoly([-a for a in self.c])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + (0,) * (n - len(self.c))
        b = other.c + (0,) * (n - len(other.c))
        return UPoly([x - y for x, y in zip(a, b)])

    def __mul__(self, other):
        if not self.c or not other.c:
            return UPoly([])
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        return UPoly(out)

    def deriv(self) -> "UPoly":
        return UPoly([i * a for i, a in enumerate(self.c)][1:])

    def reversed(self, degree: int | None = None) -> "UPoly":
        """``x**degree * p(1/x)``; ``degree`` defaults to ``deg p``."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return UPoly((list(self.c) + [Fraction(0)] * (d - self.degree))[::-1])

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError
        rem = list(self.c)
        q = [Fraction(0)] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.c[-1]
        for i in range(len(rem) - len(other.c), -1, -1):
            f = rem[i + len(other.c) - 1] / lead
            q[i] = f
            if f:
                for j, b in enumerate(other.c):
                    rem[i + j] -= f * b
        return UPoly(q), UPoly(rem[: len(other.c) - 1])

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return UPoly([x / a.c[-1] for x in a.c])

    def squarefree(self) -> "UPoly":
        if self.degree < 1:
            return self
        g = self.gcd(self.deriv())
        return self.divmod(g)[0]

    def sturm(self) -> list["UPoly"]:
        seq = [self, self.deriv()]
        while not seq[-1].is_zero():
            seq.append(-seq[-2].divmod(seq[-1])[1])
        return seq[:-1]

    @staticmethod
    def _variations(seq, x) -> int:
        signs = [s for s in (p(x) for p in seq) if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    def count_roots(self, a, b, seq=None) -> int:
        """Distinct real roots in the open interval (a, b); a, b must not be roots."""
        seq = seq or self.sturm()
        return self._variations(seq, a) - self._variations(seq, b)

    def isolate_roots(self, a, b) -> list[tuple[Fraction, Fraction]]:
        """Disjoint intervals, each holding exactly one root of ``self`` in (a, b).

        A degenerate interval ``(x, x)`` marks an exact rational root.  Roots at
        the endpoints themselves are not reported.  Non-degenerate intervals
        lie strictly inside (a, b) and have non-root endpoints.
        """
        a, b = Fraction(a), Fraction(b)
        if self.degree < 1:
            return []
        s = self.squarefree()
        x = UPoly([0, 1])
        for e in (a, b):
            while s.degree >= 1 and s(e) == 0:
                s = s.divmod(x - UPoly([e]))[0]
        if s.degree < 1:
            return []
        seq = s.sturm()
        out = []
        stack = [(a, b)]
        while stack:
            lo, hi = stack.pop()
            n = s.count_roots(lo, hi, seq)
            if n == 0:
                continue
            if n == 1 and lo > a and hi < b:
                out.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            if s(mid) == 0:
                out.append((mid, mid))
                s_lo, s_hi = mid - (hi - lo) / 4, mid + (hi - lo) / 4
                while s(s_lo) == 0 or s(s_hi) == 0:
                    s_lo, s_hi = (mid + s_lo) / 2, (mid + s_hi) / 2
                # keep the neighbourhood of the exact root out of further searches
                while s.count_roots(s_lo, s_hi, seq) > 1:
                    s_lo, s_hi = (mid + s_lo) / 2, (mid + s_hi) / 2
                    while s(s_lo) == 0 or s(s_hi) == 0:
                        s_lo, s_hi = (mid + s_lo) / 2, (mid + s_hi) / 2
                stack += [(lo, s_lo), (s_hi, hi)]
            else:
                stack += [(lo, mid), (mid, hi)]
        return sorted(out)


def nonpositive_on(p: UPoly, a, b) -> tuple[bool, Fraction | None, list]:
    """Decide exactly whether ``p <= 0`` on the closed interval ``[a, b]``.

    Returns ``(ok, witness, roots)``.  ``witness`` is a rational point of
    ``[a, b]`` with ``p(witness) > 0`` when ``ok`` is False.  ``roots`` are the
    isolating intervals of the sign changes examined.
    """
    a, b = Fraction(a), Fraction(b)
    if p.is_zero():
        return True, None, []
    for e in (a, b):
        if p(e) > 0:
            return False, e, []
    roots = p.isolate_roots(a, b)
    samples = []
    if not roots:
        samples.append((a + b) / 2)
    else:
        bounds = [a] + [x for iv in roots for x in iv] + [b]
        # one sample per gap between consecutive roots
        for lo, hi in zip(bounds[0::2], bounds[1::2]):
            samples.append((lo + hi) / 2 if lo != hi else lo)
        for iv in roots:
            if iv[0] != iv[1]:
                samples += list(iv)
    for x in samples:
        if p(x) > 0:
            return False, x, roots
    return True, None, roots
