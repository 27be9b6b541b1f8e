"""Shared builders for the test suite: deterministic random series, jets,
model fields and surfaces."""

from fractions import Fraction

from holonorm.algebra import Series
from holonorm.backend import GaussRational
from holonorm.field import JetMap, VectorField
from holonorm.hypersurface import HS_VARS, RealHypersurface

VF = ("z", "w")


def gr(re=0, im=0):
    return GaussRational(Fraction(re), Fraction(im))


def series(terms, cap=10, vars=VF, exact=True):
    return Series(vars, cap, terms, exact=exact)


def vf(p_terms, q_terms, cap=12, exact=True):
    return VectorField(
        Series(VF, cap, p_terms, exact=exact),
        Series(VF, cap, q_terms, exact=exact),
    )


def rand_coeff(rng, span=3, den=3, real=False):
    re = Fraction(rng.randint(-span, span), rng.randint(1, den))
    im = 0 if real else Fraction(rng.randint(-span, span), rng.randint(1, den))
    return GaussRational(re, im)


def rand_series(rng, vars=VF, cap=6, max_terms=5, max_deg=4, real=False):
    terms = {}
    nv = len(vars)
    for _ in range(max_terms):
        exps = tuple(rng.randint(0, max_deg) for _ in range(nv))
        if sum(exps) <= min(cap, max_deg):
            terms[exps] = rand_coeff(rng, real=real)
    return Series(vars, cap, terms, exact=False)


def rand_preserves_e_jet(rng, cap=10, max_deg=4):
    """Random invertible jet fixing 0, preserving {w = 0}, with g_w(0) = 1
    (so transported surfaces stay graphs)."""
    f = {(1, 0): GaussRational(1)}
    g = {(0, 1): GaussRational(1)}
    for _ in range(4):
        a, b = rng.randint(0, max_deg), rng.randint(0, max_deg)
        if 2 <= a + b <= max_deg:
            f[(a, b)] = rand_coeff(rng)
        a, b = rng.randint(0, max_deg), rng.randint(1, max_deg)
        if 2 <= a + b <= max_deg:
            g[(a, b)] = rand_coeff(rng)
    return JetMap(Series(VF, cap, f, exact=True), Series(VF, cap, g, exact=True))


def nfgen_field(mu, k, r, cap=12):
    """mu z w^k dz + (w^{k+1} + r w^{2k+1}) dw"""
    p = {(1, k): mu}
    q = {(0, k + 1): GaussRational(1)}
    rr = r if isinstance(r, GaussRational) else gr(r)
    if not rr.is_zero():
        q[(0, 2 * k + 1)] = rr
    return vf(p, q, cap=cap)


def nf14_field(k, q, r, t, c, cap=14):
    """i z w^k (1 + c_1 w + ...) dz + (r w^{k+q+1} + t w^{2(k+q)+1}) dw"""
    i = GaussRational(0, 1)
    p = {(1, k): i}
    for j, cj in enumerate(c, start=1):
        cjg = cj if isinstance(cj, GaussRational) else gr(cj)
        if not cjg.is_zero():
            p[(1, k + j)] = i * cjg
    qd = {(0, k + q + 1): gr(r)}
    tg = t if isinstance(t, GaussRational) else gr(t)
    if not tg.is_zero():
        qd[(0, 2 * (k + q) + 1)] = tg
    return vf(p, qd, cap=cap)


def circle_surface(cap=10):
    """v = u |z|^2, the basic Levi-nonflat nonminimal surface."""
    return RealHypersurface(Series(HS_VARS, cap, {(1, 1, 1): 1}, exact=True))
