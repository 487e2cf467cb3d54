"""Integer intersection arithmetic on classes of linear subspaces of P^n.

A class is a vector of integers indexed by dimension: coeffs[i] multiplies
the class of a linear P^i.  The hyperplane class H acts by lowering the
dimension index, and [P^i].[P^j] = [P^(i+j-n)] with truncation below a
point.  Every operation here stays in integers; in particular (1+dH)^-1
expands with integer coefficients, so no rational intermediates appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ChowError(ValueError):
    pass


def _binom(k, j):
    """Generalized binomial C(k, j) for any integer k and j >= 0."""
    if k >= 0:
        return math.comb(k, j)
    return (-1) ** j * math.comb(j - k - 1, j)


@dataclass(frozen=True)
class ChowClass:
    """Element of the Chow group of P^n; coeffs[i] multiplies [P^i]."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ChowError("ambient dimension must be nonnegative")
        if len(self.coeffs) != self.n + 1:
            raise ChowError("need exactly n+1 coefficients")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n, (0,) * (n + 1))

    @classmethod
    def linear(cls, n, i, mult=1):
        """mult copies of [P^i] inside P^n."""
        if not 0 <= i <= n:
            raise ChowError("subspace dimension out of range")
        c = [0] * (n + 1)
        c[i] = mult
        return cls(n, tuple(c))

    @classmethod
    def ambient(cls, n):
        return cls.linear(n, n)

    # -- views --------------------------------------------------------------

    def hvec(self):
        """Coefficients by codimension: hvec[k] multiplies H^k."""
        return [self.coeffs[self.n - k] for k in range(self.n + 1)]

    @classmethod
    def from_hvec(cls, n, h):
        return cls(n, tuple(h[n - i] for i in range(n + 1)))

    def is_zero(self):
        return not any(self.coeffs)

    def _check(self, other):
        if self.n != other.n:
            raise ChowError("classes from different ambient spaces")

    # -- additive structure ---------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return ChowClass(self.n, tuple(a + b for a, b in
                                       zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return ChowClass(self.n, tuple(a - b for a, b in
                                       zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ChowClass(self.n, tuple(-a for a in self.coeffs))

    def scale(self, c):
        return ChowClass(self.n, tuple(c * a for a in self.coeffs))

    # -- rendering ------------------------------------------------------------

    def __str__(self):
        parts = []
        for i in range(self.n, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            term = f"[P^{i}]" if abs(c) == 1 else f"{abs(c)}[P^{i}]"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts) if parts else "0"

    def to_json_dict(self):
        return {"n": self.n, "coeffs": list(self.coeffs)}


def intersect(A, B):
    """Intersection product: [P^i].[P^j] = [P^(i+j-n)], truncated."""
    A._check(B)
    n = A.n
    out = [0] * (n + 1)
    for i, a in enumerate(A.coeffs):
        if not a:
            continue
        for j, b in enumerate(B.coeffs):
            k = i + j - n
            if b and k >= 0:
                out[k] += a * b
    return ChowClass(n, tuple(out))


def line_series(A, d, k):
    """A.(1+dH)^k, truncated mod H^(n+1); k may be negative."""
    n = A.n
    h = A.hvec()
    out = [0] * (n + 1)
    series = [_binom(k, j) * d ** j for j in range(n + 1)]
    for i, a in enumerate(h):
        if not a:
            continue
        for j in range(n + 1 - i):
            out[i + j] += a * series[j]
    return ChowClass.from_hvec(n, out)


def cap_tangent(A):
    """A capped with the total Chern class of the tangent bundle of P^n."""
    return line_series(A, 1, A.n + 1)


def twist(A, d):
    """Aluffi tensor: the codimension-i part is divided by (1+dH)^i."""
    n = A.n
    h = A.hvec()
    out = [0] * (n + 1)
    for i, a in enumerate(h):
        if not a:
            continue
        for j in range(n + 1 - i):
            out[i + j] += a * _binom(-i, j) * d ** j
    return ChowClass.from_hvec(n, out)


def dual(A):
    """Sign flip on components of odd codimension; an involution."""
    n = A.n
    return ChowClass(n, tuple(c if (n - i) % 2 == 0 else -c
                              for i, c in enumerate(A.coeffs)))


def cartier_segre(n, d):
    """dH/(1+dH) in P^n: the Segre class of a degree-d hypersurface."""
    if d <= 0 or n < 1:
        raise ChowError("need a positive degree in P^n, n >= 1")
    h = [0] * (n + 1)
    for k in range(1, n + 1):
        h[k] = (-1) ** (k + 1) * d ** k
    return ChowClass.from_hvec(n, h)


def s_hat(S):
    """[P^n] minus the dual of a pushed-forward Segre class."""
    return ChowClass.ambient(S.n) - dual(S)


def euler_char(C):
    """Degree-zero coefficient; the Euler characteristic of a CSM class."""
    return C.coeffs[0]
