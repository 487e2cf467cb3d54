"""Buchberger-style Groebner engine plus the ideal operations built on it.

Monomials inside the engine are packed into single integers, 16 bits per
variable, with a guard bit per field so divisibility is one subtraction
and one mask.  Orders: degree-reverse-lexicographic, and a two-block
elimination order whose leading block holds trailing auxiliary variables.

Plain Buchberger with the coprime-lcm and chain criteria is enough at the
scales this engine targets; an F4-style matrix reduction would slot in
behind the same interface if larger inputs ever matter.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .polyring import HomogeneousIdeal, Poly, PolyError

_B = 16
_CAP = (1 << _B) - 1
_GBIT = 1 << (_B - 1)
_EMAX = _GBIT - 1  # exponents must stay below the guard bit


class GroebnerError(ValueError):
    pass


class GBRing:
    """Packing and ordering context for a fixed number of variables.

    order: "drl", or ("elim", k) where the LAST k variables form the
    leading block (they get eliminated by taking block-degree-zero
    elements of a basis).
    """

    def __init__(self, nvars, prime, order="drl"):
        if prime <= 1:
            raise GroebnerError("Groebner engine needs a prime field")
        self.nvars = nvars
        self.prime = prime
        self.order = order
        self.guard = sum(_GBIT << (_B * i) for i in range(nvars))
        self._keys = {}
        if order == "drl":
            self._elim = 0
        elif isinstance(order, tuple) and order[0] == "elim":
            self._elim = order[1]
            if not 0 < self._elim < nvars:
                raise GroebnerError("bad elimination block size")
        else:
            raise GroebnerError(f"unknown order {order!r}")

    def pack(self, exps):
        m = 0
        for i, e in enumerate(exps):
            if e > _EMAX:
                raise GroebnerError("exponent overflow in packed monomial")
            m |= e << (_B * i)
        return m

    def unpack(self, m):
        return tuple((m >> (_B * i)) & _CAP for i in range(self.nvars))

    def _drlkey(self, exps):
        key = sum(exps)
        for e in reversed(exps):
            key = (key << _B) | (_CAP - e)
        return key

    def key(self, m):
        k = self._keys.get(m)
        if k is None:
            exps = self.unpack(m)
            if self._elim:
                cut = self.nvars - self._elim
                k = self._drlkey(exps[cut:])
                k = (k << (_B * (cut + 1))) | self._drlkey(exps[:cut])
            else:
                k = self._drlkey(exps)
            self._keys[m] = k
        return k

    def divides(self, a, m):
        return not ((m - a) & self.guard)

    def lcm(self, a, b):
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack(tuple(max(x, y) for x, y in zip(ea, eb)))

    def to_engine(self, poly):
        return {self.pack(e): c for e, c in poly.terms.items()}

    def to_poly(self, terms):
        return Poly(self.nvars, self.prime,
                    {self.unpack(m): c for m, c in terms.items()})


class _GBPoly:
    __slots__ = ("lm", "tail")

    def __init__(self, ring, terms):
        """terms must be nonempty; stored monic."""
        p = ring.prime
        lm = max(terms, key=ring.key)
        inv = pow(terms[lm], -1, p)
        self.lm = lm
        self.tail = [(m, c * inv % p) for m, c in terms.items() if m != lm]

    def full_terms(self):
        t = dict(self.tail)
        t[self.lm] = 1
        return t


def normal_form_engine(terms, basis, ring):
    """Full reduction of a term dict by a list of monic _GBPoly."""
    p = ring.prime
    key = ring.key
    divides = ring.divides
    coef = {}
    heap = []
    for m, c in terms.items():
        c %= p
        if c:
            coef[m] = c
            heap.append((-key(m), m))
    heapq.heapify(heap)
    out = {}
    lms = [(g.lm, g) for g in basis]
    while heap:
        _, m = heapq.heappop(heap)
        c = coef.pop(m, 0)
        if not c:
            continue
        red = None
        for lm, g in lms:
            if divides(lm, m):
                red = g
                break
        if red is None:
            out[m] = c
            continue
        q = m - red.lm
        for mg, cg in red.tail:
            mm = mg + q
            v = coef.get(mm)
            if v is None:
                v = (-c * cg) % p
                if v:
                    coef[mm] = v
                    heapq.heappush(heap, (-key(mm), mm))
            else:
                v = (v - c * cg) % p
                if v:
                    coef[mm] = v
                else:
                    del coef[mm]
    return out


def _interreduce(polys, ring):
    """Minimalize and tail-reduce a list of monic _GBPoly."""
    # ascending order puts divisors first, so one pass minimalizes
    polys = sorted(polys, key=lambda g: ring.key(g.lm))
    keep = []
    for g in polys:
        if not any(ring.divides(h.lm, g.lm) for h in keep):
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        t = normal_form_engine(g.full_terms(), others, ring)
        if t:
            out.append(_GBPoly(ring, t))
    return sorted(out, key=lambda g: ring.key(g.lm))


def _autoreduce_input(polys, ring):
    """Reduce each generator modulo the others until stable.

    Unlike minimalization this only applies elementary transformations,
    so it is safe on arbitrary generating sets, not just Groebner bases.
    """
    polys = list(polys)
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            g = polys[i]
            if g is None:
                continue
            others = [h for j, h in enumerate(polys) if j != i and h is not None]
            t = normal_form_engine(g.full_terms(), others, ring)
            if not t:
                polys[i] = None
                changed = True
            elif t != g.full_terms():
                polys[i] = _GBPoly(ring, t)
                changed = True
    return [g for g in polys if g is not None]


def buchberger(gen_terms, ring):
    """Reduced Groebner basis of the ideal generated by term dicts."""
    basis = []
    for t in sorted((t for t in gen_terms if t),
                    key=lambda t: sorted(map(ring.key, t))):
        basis.append(_GBPoly(ring, t))
    if not basis:
        return []
    basis = _autoreduce_input(basis, ring)
    if not basis:
        return []
    key = ring.key
    pairs = []
    npairs = set()

    def push_pairs(j):
        gj = basis[j]
        for i in range(j):
            gi = basis[i]
            l = ring.lcm(gi.lm, gj.lm)
            heapq.heappush(pairs, (key(l), i, j, l))
            npairs.add((i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while pairs:
        _, i, j, l = heapq.heappop(pairs)
        npairs.discard((i, j))
        gi, gj = basis[i], basis[j]
        if l != ring.lcm(gi.lm, gj.lm):
            continue
        # coprime leading monomials: S-polynomial reduces to zero
        if l == gi.lm + gj.lm:
            continue
        # chain criterion
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if ring.divides(basis[k].lm, l):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in npairs and b not in npairs:
                    chained = True
                    break
        if chained:
            continue
        p = ring.prime
        qi, qj = l - gi.lm, l - gj.lm
        s = {}
        for m, c in gi.tail:
            s[m + qi] = c
        for m, c in gj.tail:
            mm = m + qj
            v = (s.get(mm, 0) - c) % p
            if v:
                s[mm] = v
            elif mm in s:
                del s[mm]
        h = normal_form_engine(s, basis, ring)
        if h:
            basis.append(_GBPoly(ring, h))
            push_pairs(len(basis) - 1)
    return _interreduce(basis, ring)


# -- public ideal-level API ---------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis together with its order tag."""

    generators: tuple
    order: object
    source: HomogeneousIdeal
    _ring: GBRing
    _engine: tuple

    def __len__(self):
        return len(self.generators)

    def is_unit(self):
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def leading_exponents(self):
        return [self._ring.unpack(g.lm) for g in self._engine]


def groebner_basis(I, order="drl"):
    ring = GBRing(I.nvars, I.prime, order)
    basis = buchberger([ring.to_engine(g) for g in I.gens], ring)
    gens = tuple(ring.to_poly(g.full_terms()) for g in basis)
    return GroebnerBasis(gens, order, I, ring, tuple(basis))


def normal_form(f, G):
    """Remainder of f on division by the basis; zero iff f is in the ideal."""
    ring = G._ring
    if f.nvars != ring.nvars or f.prime != ring.prime:
        raise GroebnerError("polynomial and basis from different rings")
    t = normal_form_engine(ring.to_engine(f), list(G._engine), ring)
    return ring.to_poly(t)


def ideal_sum(I, J):
    _check_ring(I, J)
    return HomogeneousIdeal.from_gens(list(I.gens) + list(J.gens),
                                      I.nvars, I.prime)


def ideal_product(I, J):
    _check_ring(I, J)
    return HomogeneousIdeal.from_gens(
        [f * g for f in I.gens for g in J.gens], I.nvars, I.prime)


def _check_ring(I, J):
    if I.nvars != J.nvars or I.prime != J.prime:
        raise GroebnerError("ideals from different rings")


def ideal_contains(I_Z, I_D):
    """True iff I_D is a subideal of I_Z, i.e. V(I_D) contains V(I_Z)."""
    _check_ring(I_Z, I_D)
    G = groebner_basis(I_Z)
    return all(normal_form(g, G).is_zero() for g in I_D.gens)


def _lift(poly, extra):
    """View a polynomial in a ring with `extra` trailing new variables."""
    nv = poly.nvars + extra
    pad = (0,) * extra
    return Poly(nv, poly.prime, {e + pad: c for e, c in poly.terms.items()})


def _elim_aux(gens, nvars, prime):
    """Groebner-eliminate one trailing auxiliary variable.

    gens live in nvars+1 variables; returns basis elements free of the
    auxiliary variable, as polynomials in the original nvars variables.
    """
    ring = GBRing(nvars + 1, prime, ("elim", 1))
    basis = buchberger([ring.to_engine(g) for g in gens], ring)
    out = []
    for g in basis:
        terms = g.full_terms()
        if all((m >> (_B * nvars)) == 0 for m in terms):
            out.append(Poly(nvars, prime,
                            {ring.unpack(m)[:nvars]: c
                             for m, c in terms.items()}))
    return out


def saturate_single(I, f):
    """(I : f^infinity) by adjoining t and eliminating 1 - t*f."""
    if f.is_zero():
        return I
    nv, p = I.nvars, I.prime
    t = Poly.variable(nv, nv + 1, p)
    one = Poly.constant(1, nv + 1, p)
    gens = [_lift(g, 1) for g in I.gens]
    gens.append(one - t * _lift(f, 1))
    out = _elim_aux(gens, nv, p)
    return HomogeneousIdeal.from_gens(out, nv, p)


def ideal_intersection(I, J):
    """I cap J via t*I + (1-t)*J and elimination of t."""
    _check_ring(I, J)
    nv, p = I.nvars, I.prime
    t = Poly.variable(nv, nv + 1, p)
    one = Poly.constant(1, nv + 1, p)
    gens = [t * _lift(g, 1) for g in I.gens]
    gens += [(one - t) * _lift(g, 1) for g in J.gens]
    out = _elim_aux(gens, nv, p)
    return HomogeneousIdeal.from_gens(out, nv, p)


def saturate(I, J):
    """(I : J^infinity), the intersection of single-generator saturations."""
    _check_ring(I, J)
    if I.is_zero_ideal() or not J.gens:
        return I
    result = None
    for f in J.gens:
        s = saturate_single(I, f)
        result = s if result is None else ideal_intersection(result, s)
    return result


def ideals_equal(I, J):
    return ideal_contains(I, J) and ideal_contains(J, I)


# -- Hilbert series ------------------------------------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for j, y in enumerate(b):
        out[j] -= y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _shift(a, k):
    return [0] * k + list(a)


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(all(x >= y for x, y in zip(g, h)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(lt_gens, nvars, _memo=None):
    """Numerator of the Hilbert series of k[x]/(monomial ideal), over
    the (1-u)^nvars denominator; computed by pivot recursion."""
    if _memo is None:
        _memo = {}
    gens = _minimalize(lt_gens)
    key = tuple(gens)
    if key in _memo:
        return _memo[key]
    if not gens:
        res = [1]
    elif any(sum(g) == 0 for g in gens):
        res = [0]
    else:
        mixed = [g for g in gens if sum(1 for e in g if e) > 1]
        if not mixed:
            # pairwise coprime variable powers
            res = [1]
            for g in gens:
                res = _poly_mul(res, _poly_sub([1], _shift([1], sum(g))))
        else:
            # pivot on one variable power from the most entangled generator
            g = max(mixed, key=sum)
            j = max(range(nvars), key=lambda i: g[i])
            pv = [0] * nvars
            pv[j] = g[j]
            pv = tuple(pv)
            plus = hilbert_numerator(gens + [pv], nvars, _memo)
            colon = [tuple(max(e - p2, 0) for e, p2 in zip(h, pv))
                     for h in gens]
            quot = hilbert_numerator(colon, nvars, _memo)
            res = _poly_sub(plus, [-x for x in _shift(quot, sum(pv))])
    _memo[key] = res
    return res


def hilbert_data(lt_gens, nvars):
    """(krull_dim, degree) of k[x]/(monomial ideal).

    krull_dim is the dimension of the quotient ring; degree is the
    normalized leading Hilbert coefficient (vector-space dimension when
    krull_dim == 0).
    """
    num = hilbert_numerator(lt_gens, nvars)
    # strip powers of (1-u)
    strips = 0
    while len(num) > 0 and sum(num) == 0 and strips < nvars:
        out = []
        acc = 0
        for c in num[:-1]:
            acc += c
            out.append(acc)
        # num = (1-u) * out  =>  synthetic division
        num = out if out else [0]
        strips += 1
    if num == [0] or not num:
        return 0, 0
    return nvars - strips, sum(num)


def dim_degree(I):
    """Projective (dimension, degree) of the subscheme cut out by I.

    The empty subscheme is reported as dimension -1.  Dimension and
    degree are read off the Hilbert polynomial, which does not change
    under saturation, so no explicit saturation is needed.
    """
    if I.is_zero_ideal():
        raise GroebnerError("dim_degree of the zero ideal")
    G = groebner_basis(I)
    if G.is_unit():
        return -1, 0
    lt = G.leading_exponents()
    krull, deg = hilbert_data(lt, I.nvars)
    if krull == 0:
        return -1, 0
    return krull - 1, deg


def affine_vector_dimension(lt_gens, nvars):
    """Dimension of k[x]/(monomial ideal) as a vector space, or None if
    infinite."""
    krull, deg = hilbert_data(lt_gens, nvars)
    if krull > 0:
        return None
    return deg
