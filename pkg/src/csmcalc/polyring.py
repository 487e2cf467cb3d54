"""Sparse multivariate polynomial arithmetic over a prime field.

Polynomials live in k[x0..xn] where k is F_p for a prime p, or Z when
p == 0 (used for exact integer inputs that are later reduced mod several
independent primes).  Terms are stored as a dict mapping exponent tuples
to nonzero coefficients.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass


def derive_seed(*parts):
    """Stable 64-bit seed from a tag and arbitrary integer/string parts."""
    h = hashlib.sha256(":".join(str(p) for p in parts).encode())
    return int.from_bytes(h.digest()[:8], "big")


class PolyError(ValueError):
    pass


def _norm(c: int, p: int) -> int:
    return c % p if p else c


class Poly:
    """Immutable sparse polynomial.  prime == 0 means integer coefficients."""

    __slots__ = ("nvars", "prime", "terms", "_hash")

    def __init__(self, nvars, prime, terms):
        self.nvars = nvars
        self.prime = prime
        clean = {}
        for e, c in terms.items():
            c = _norm(c, prime)
            if c:
                if len(e) != nvars:
                    raise PolyError("exponent tuple of wrong length")
                clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars, prime):
        return cls(nvars, prime, {})

    @classmethod
    def constant(cls, c, nvars, prime):
        return cls(nvars, prime, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i, nvars, prime):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, prime, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps, coeff, prime):
        return cls(len(exps), prime, {tuple(exps): coeff})

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def total_degree(self):
        """Degree of the zero polynomial is -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.prime == other.prime and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.prime,
                               frozenset(self.terms.items())))
        return self._hash

    def _check(self, other):
        if self.nvars != other.nvars or self.prime != other.prime:
            raise PolyError("polynomials from different rings")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        p = self.prime
        for e, c in other.terms.items():
            v = _norm(t.get(e, 0) + c, p)
            if v:
                t[e] = v
            elif e in t:
                del t[e]
        out = Poly.__new__(Poly)
        out.nvars, out.prime, out.terms, out._hash = self.nvars, p, t, None
        return out

    def __neg__(self):
        p = self.prime
        return Poly(self.nvars, p, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.prime
        t = {}
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        for e1, c1 in small.items():
            for e2, c2 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        out = {}
        for e, c in t.items():
            c = _norm(c, p)
            if c:
                out[e] = c
        r = Poly.__new__(Poly)
        r.nvars, r.prime, r.terms, r._hash = self.nvars, p, out, None
        return r

    def scale(self, c):
        return Poly(self.nvars, self.prime,
                    {e: cc * c for e, cc in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise PolyError("negative polynomial power")
        result = Poly.constant(1, self.nvars, self.prime)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def deriv(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return Poly(self.nvars, self.prime, t)

    def reduce_mod(self, p):
        """Image in F_p[x]; only meaningful from the integer ring."""
        return Poly(self.nvars, p, dict(self.terms))

    def substitute(self, images):
        """Substitute x_i -> images[i]; images are polynomials in a common
        target ring (possibly with a different number of variables)."""
        if len(images) != self.nvars:
            raise PolyError("need one image per variable")
        tv, tp = images[0].nvars, images[0].prime
        pow_cache = [dict() for _ in range(self.nvars)]

        def power(i, k):
            cache = pow_cache[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        acc = Poly.zero(tv, tp)
        for e, c in self.terms.items():
            term = Poly.constant(c, tv, tp)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    # -- printing ------------------------------------------------------------

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda m: (-sum(m), m)):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i}")
                elif k > 1:
                    factors.append(f"x{i}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)


# -- parsing -------------------------------------------------------------


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*()^":
            if ch == "*" and i + 1 < n and text[i + 1] == "*":
                toks.append(("op", "^", i))
                i += 2
            else:
                toks.append(("op", ch, i))
                i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise PolyError(f"bad variable at column {i}")
            toks.append(("var", int(text[i + 1:j]), i))
            i = j
        else:
            raise PolyError(f"unexpected character {ch!r} at column {i}")
    return toks


def parse_polynomial(text, n, p):
    """Parse an expression in x0..xn with + - * ^ and integer literals."""
    toks = _tokenize(text)
    pos = 0
    nv = n + 1

    def peek():
        return toks[pos] if pos < len(toks) else ("end", None, len(text))

    def expect_op(op):
        nonlocal pos
        kind, val, col = peek()
        if kind != "op" or val != op:
            raise PolyError(f"expected {op!r} at column {col}")
        pos += 1

    def atom():
        nonlocal pos
        kind, val, col = peek()
        if kind == "int":
            pos += 1
            return Poly.constant(val, nv, p)
        if kind == "var":
            if val > n:
                raise PolyError(f"unknown variable x{val} (n = {n})")
            pos += 1
            return Poly.variable(val, nv, p)
        if kind == "op" and val == "(":
            pos += 1
            e = expr()
            expect_op(")")
            return e
        if kind == "op" and val == "-":
            pos += 1
            return -atom_pow()
        raise PolyError(f"unexpected token at column {col}")

    def atom_pow():
        nonlocal pos
        base = atom()
        kind, val, _ = peek()
        if kind == "op" and val == "^":
            pos += 1
            kind, val, col = peek()
            if kind != "int":
                raise PolyError(f"exponent must be an integer at column {col}")
            pos += 1
            return base ** val
        return base

    def term():
        nonlocal pos
        f = atom_pow()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                pos += 1
                f = f * atom_pow()
            elif kind in ("int", "var") or (kind == "op" and val == "("):
                # implicit product such as "2x0" or "3(x0+x1)"
                f = f * atom_pow()
            else:
                return f

    def expr():
        nonlocal pos
        kind, val, _ = peek()
        neg = False
        if kind == "op" and val in "+-":
            neg = val == "-"
            pos += 1
        e = term()
        if neg:
            e = -e
        while True:
            kind, val, _ = peek()
            if kind == "op" and val in "+-":
                pos += 1
                t = term()
                e = e - t if val == "-" else e + t
            else:
                return e

    result = expr()
    kind, _, col = peek()
    if kind != "end":
        raise PolyError(f"trailing input at column {col}")
    return result


# -- ideals --------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousIdeal:
    """A list of homogeneous generators cutting out a subscheme of P^n."""

    gens: tuple
    nvars: int
    prime: int

    @classmethod
    def from_gens(cls, gens, nvars=None, prime=None):
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            nvars = gens[0].nvars
            prime = gens[0].prime
        elif nvars is None or prime is None:
            raise PolyError("an empty ideal needs explicit nvars and prime")
        for g in gens:
            if g.nvars != nvars or g.prime != prime:
                raise PolyError("mixed rings in ideal generators")
            if not g.is_homogeneous():
                raise PolyError(f"inhomogeneous generator: {g}")
        return cls(tuple(gens), nvars, prime)

    @property
    def n(self):
        return self.nvars - 1

    def is_zero_ideal(self):
        return not self.gens

    def reduce_mod(self, p):
        return HomogeneousIdeal.from_gens(
            [g.reduce_mod(p) for g in self.gens], self.nvars, p)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def jacobian_ideal(F):
    """The ideal (dF/dx0, ..., dF/dxn, F) of the singular locus of V(F).

    When the characteristic does not divide deg F the Euler relation makes
    F itself redundant, but it is kept so the ideal is right in all
    characteristics.
    """
    if F.is_zero():
        raise PolyError("jacobian of the zero polynomial")
    gens = [F.deriv(i) for i in range(F.nvars)]
    gens.append(F)
    return HomogeneousIdeal.from_gens(gens, F.nvars, F.prime)


# -- linear algebra mod p ---------------------------------------------------


def mat_rank(rows, p):
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] % p:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def mat_inverse(M, p):
    n = len(M)
    aug = [[M[r][c] % p for c in range(n)] + [int(r == c) for c in range(n)]
           for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise PolyError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def random_linear_forms(count, n, p, seed):
    """Deterministic generic linear forms; any n+1 of them independent."""
    rng = random.Random(derive_seed("linforms", seed, p, n, count))
    for _ in range(64):
        rows = [[rng.randrange(p) for _ in range(n + 1)] for _ in range(count)]
        if not rows or mat_rank(rows, p) == min(count, n + 1):
            forms = []
            for row in rows:
                t = {}
                for i, c in enumerate(row):
                    if c % p:
                        e = [0] * (n + 1)
                        e[i] = 1
                        t[tuple(e)] = c
                forms.append(Poly(n + 1, p, t))
            if all(not f.is_zero() for f in forms):
                return forms
    raise PolyError("could not draw independent linear forms")


def apply_linear_change(I, M):
    """Substitute x_i -> sum_j M[i][j] x_j in every generator."""
    p = I.prime
    nv = I.nvars
    if len(M) != nv or any(len(r) != nv for r in M):
        raise PolyError("matrix size must match the ring")
    mat_inverse(M, p)  # raises on singular input
    images = []
    for i in range(nv):
        t = {}
        for j, c in enumerate(M[i]):
            if c % p:
                e = [0] * nv
                e[j] = 1
                t[tuple(e)] = c
        images.append(Poly(nv, p, t))
    return HomogeneousIdeal.from_gens(
        [g.substitute(images) for g in I.gens], nv, p)


# -- primes ------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(seed, bits=31):
    """Deterministic prime near 2^bits derived from the seed."""
    rng = random.Random(derive_seed("prime", seed, bits))
    while True:
        c = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        while not is_prime(c):
            c += 2
        if c < (1 << bits):
            return c
