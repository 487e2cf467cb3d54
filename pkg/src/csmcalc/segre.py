"""Pushforward Segre classes of projective subschemes via projective degrees.

The degree sequence g_0..g_n of the rational map given by an equal-degree
generating set determines the Segre class through

    s(Z, P^n) = [P^n] - sum_i g_i H^i (1 + dH)^-(i+1)

obtained by resolving the map: on the blow-up along Z the exceptional
divisor is E = dH - L with L the pullback of the target hyperplane, so
1/(1+E) expands as sum_i L^i/(1+dH)^(i+1), and L^i pushes forward to
g_i H^i.

Each g_i is evaluated by Monte Carlo intersection: cut with n-i generic
hyperplanes, impose i generic members of the linear system, restrict to a
generic affine chart, and force a generic member nonzero with a
Rabinowitsch variable; g_i is then the vector-space dimension of the
resulting zero-dimensional affine quotient.  Genericity failures are loud:
a positive-dimensional residual triggers a re-draw with a derived seed and
aborts after five attempts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import chowring
from .chowring import ChowClass
from .groebner import (GBRing, affine_vector_dimension, buchberger,
                       dim_degree, groebner_basis, normal_form)
from .polyring import (HomogeneousIdeal, Poly, PolyError, derive_seed,
                       mat_inverse)


class SegreError(ValueError):
    pass


class GenericityError(SegreError):
    """Random choices failed to be generic after repeated attempts."""


@dataclass(frozen=True)
class ProjectiveDegrees:
    """Degrees g_0..g_n of generic linear-section images of the map."""

    g: tuple
    d: int
    seed: int
    prime: int


def equalize(I):
    """Bring all generators to the common top degree by monomial multiples.

    The output generates a possibly smaller ideal with the same saturation,
    hence the same subscheme.
    """
    gens = I.gens
    if not gens:
        raise SegreError("cannot equalize the zero ideal")
    d = max(g.total_degree() for g in gens)
    nv, p = I.nvars, I.prime
    out = []
    seen = set()
    for g in gens:
        gap = d - g.total_degree()
        if gap == 0:
            if g not in seen:
                seen.add(g)
                out.append(g)
            continue
        for e in _monomials(nv, gap):
            h = g * Poly.monomial(e, 1, p)
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out, d


def _monomials(nv, deg):
    """All exponent tuples of the given total degree, lexicographically."""
    if nv == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in _monomials(nv - 1, deg - first):
            yield (first,) + rest


def minimize_generators(I):
    """Drop top-degree generators lying in the ideal of the others.

    Keeps the ideal identical while lowering the common degree the
    equal-degree generating set needs; in particular it strips a defining
    equation that the Euler relation makes redundant in a Jacobian ideal.
    """
    gens = list(I.gens)
    while True:
        if len(gens) <= 1:
            break
        d = max(g.total_degree() for g in gens)
        top = [g for g in gens if g.total_degree() == d]
        rest = [g for g in gens if g.total_degree() < d]
        if not rest:
            break
        G = groebner_basis(HomogeneousIdeal.from_gens(rest, I.nvars, I.prime))
        kept = [g for g in top if not normal_form(g, G).is_zero()]
        if len(kept) == len(top):
            break
        gens = rest + kept
    return HomogeneousIdeal.from_gens(gens, I.nvars, I.prime)


def _monomial_gcd(gens):
    """Common monomial factor of a list of polynomials."""
    it = iter(gens)
    acc = None
    for g in it:
        for e in g.terms:
            acc = e if acc is None else tuple(min(a, b) for a, b in zip(acc, e))
            if not any(acc):
                return acc
    return acc


def _divide_monomial(g, e):
    return Poly(g.nvars, g.prime,
                {tuple(a - b for a, b in zip(m, e)): c
                 for m, c in g.terms.items()})


def _affine_images(nv, i, p, rng):
    """Substitution images for a random chart-and-cut coordinate frame.

    Returns per-variable affine-linear polynomials in i variables z_1..z_i:
    the original coordinates restricted to a generic P^i slice of P^n, on a
    generic affine chart of that slice.
    """
    while True:
        A = [[rng.randrange(p) for _ in range(nv)] for _ in range(nv)]
        try:
            Ainv = mat_inverse(A, p)
        except PolyError:
            continue
        break
    images = []
    for j in range(nv):
        t = {}
        c0 = Ainv[j][0] % p
        if c0:
            t[(0,) * i] = c0
        for k in range(i):
            c = Ainv[j][nv - i + k] % p
            if c:
                e = [0] * i
                e[k] = 1
                t[tuple(e)] = c
        images.append(Poly(i, p, t))
    return images


def _single_degree(gens, i, p, seed):
    """g_i for an equal-degree generating set, with re-draws on failure."""
    nv = gens[0].nvars
    n = nv - 1
    for attempt in range(5):
        rng = random.Random(derive_seed("pdeg", seed, i, attempt))
        images = _affine_images(nv, i, p, rng)
        sub = [g.substitute(images) for g in gens]
        system = []
        ok = True
        for _ in range(i):
            c = Poly.zero(i, p)
            for s in sub:
                c = c + s.scale(rng.randrange(1, p))
            if c.is_zero():
                ok = False
                break
            system.append(c)
        if not ok:
            continue
        f_r = Poly.zero(i, p)
        for s in sub:
            f_r = f_r + s.scale(rng.randrange(1, p))
        if f_r.is_zero():
            continue  # degenerate draw
        # Rabinowitsch variable t = last variable of the engine ring
        ring = GBRing(i + 1, p)
        eng = []
        for c in system:
            eng.append({e + (0,): v for e, v in c.terms.items()})
        teq = {e + (1,): v for e, v in f_r.terms.items()}
        const = (0,) * (i + 1)
        teq[const] = (teq.get(const, 0) - 1) % p
        eng.append({e: v for e, v in teq.items() if v})
        basis = buchberger([{ring.pack(e): c for e, c in t.items()}
                            for t in eng], ring)
        if not basis:
            # no equations can only happen when the system is trivial
            continue
        lt = [ring.unpack(g.lm) for g in basis]
        if any(not any(e) for e in lt):
            return 0  # inconsistent: no points off the base locus
        vdim = affine_vector_dimension(lt, i + 1)
        if vdim is not None:
            return vdim
    raise GenericityError(
        f"projective degree g_{i}: residual stayed positive-dimensional "
        f"after 5 seed re-draws")


def projective_degrees(gens, d, seed):
    """Degree sequence of the rational map defined by equal-degree gens.

    Seeds for the n+1 independent computations are derived as
    sha256("pdeg:<seed>:<i>:<attempt>"), so they may safely run in any
    order (or concurrently) with bit-identical results.
    """
    if not gens:
        raise SegreError("no generators")
    nv = gens[0].nvars
    p = gens[0].prime
    if any(g.total_degree() != d for g in gens):
        raise SegreError("generators must share the common degree")
    # a common monomial factor does not change the rational map but
    # inflates every Groebner computation; divide it out of the map
    e = _monomial_gcd(gens)
    if any(e):
        gens = [_divide_monomial(g, e) for g in gens]
    g = tuple(_single_degree(gens, i, p, seed) for i in range(nv))
    return ProjectiveDegrees(g, d, seed, p)


def segre_class(I, seed):
    """Pushforward to the Chow group of P^n of the Segre class of V(I)."""
    if I.is_zero_ideal():
        raise SegreError("the zero ideal does not define a proper subscheme")
    n = I.n
    dim, _ = dim_degree(I)
    if dim == -1:
        return ChowClass.zero(n)
    J = minimize_generators(I)
    gens, d = equalize(J)
    degs = projective_degrees(gens, d, seed)
    acc = ChowClass.zero(n)
    for i, gi in enumerate(degs.g):
        if gi:
            acc = acc + chowring.line_series(
                ChowClass.linear(n, n - i, gi), d, -(i + 1))
    return ChowClass.ambient(n) - acc
