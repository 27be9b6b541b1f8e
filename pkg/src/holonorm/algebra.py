"""Sparse truncated multivariate power series over Gaussian rationals.

A Series is a jet: its stored terms are exact through the total-degree cap
and nothing is known beyond it, unless ``exact`` is set, in which case the
stored terms are the whole object (a polynomial). Exactness is tracked so
that derivatives and substitutions of constructed polynomial data do not
leak truncation orders.
"""

from __future__ import annotations

from fractions import Fraction

from .backend import GaussRational, as_gauss, series_add, series_mul, series_neg, series_scale
from .errors import ArityError, OrderGuaranteeError

INFINITY = float("inf")


class Series:
    __slots__ = ("vars", "cap", "terms", "exact")

    def __init__(self, vars, cap, terms=None, exact=False):
        self.vars = tuple(vars)
        if cap < 0:
            raise OrderGuaranteeError("negative truncation cap")
        self.cap = int(cap)
        clean = {}
        if terms:
            nv = len(self.vars)
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nv:
                    raise ArityError(f"exponent tuple {exps} has wrong arity")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = as_gauss(coeff)
                if coeff is None:
                    raise TypeError("coefficients must be Gaussian rationals")
                if sum(exps) > self.cap:
                    if exact:
                        raise OrderGuaranteeError(
                            "exact series has a term beyond its cap"
                        )
                    continue
                if not coeff.is_zero():
                    clean[exps] = coeff
        self.terms = clean
        self.exact = bool(exact)

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, vars, cap, exact=True):
        return cls(vars, cap, {}, exact=exact)

    @classmethod
    def constant(cls, vars, cap, value, exact=True):
        vars = tuple(vars)
        return cls(vars, cap, {(0,) * len(vars): as_gauss(value)}, exact=exact)

    @classmethod
    def monomial(cls, vars, cap, exps, coeff=1, exact=True):
        return cls(vars, cap, {tuple(exps): as_gauss(coeff)}, exact=exact)

    @classmethod
    def variable(cls, vars, cap, name, exact=True):
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = 1
        return cls(vars, max(cap, 1), {tuple(exps): ONE_}, exact=exact)

    # ------------------------------------------------------------------
    # inspection

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Largest stored total degree; -1 for the zero series."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self):
        """Smallest stored total degree; INFINITY for the zero series."""
        return min((sum(e) for e in self.terms), default=INFINITY)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), ZERO_)

    def coefficient_series(self, var, power):
        """Coefficient of var**power as a Series in the remaining variables."""
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1 :]
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                out[exps[:i] + exps[i + 1 :]] = coeff
        cap = self.cap if self.exact else max(self.cap - power, 0)
        return Series(rest, cap, out, exact=self.exact)

    def max_exponent(self, var):
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def min_exponent(self, var):
        i = self.vars.index(var)
        return min((e[i] for e in self.terms), default=None)

    def items(self):
        return self.terms.items()

    def __iter__(self):
        return iter(sorted(self.terms))

    def __len__(self):
        return len(self.terms)

    # ------------------------------------------------------------------
    # equality is on the stored coefficients; cap and exactness are
    # bookkeeping, not values

    def __eq__(self, other):
        if not isinstance(other, Series):
            other = _coerce_scalar_series(self, other)
            if other is None:
                return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # ring structure

    def _check_compatible(self, other):
        if self.vars != other.vars:
            raise ArityError(f"variable lists differ: {self.vars} vs {other.vars}")

    def _eff_cap(self):
        return INFINITY if self.exact else self.cap

    def __add__(self, other):
        if not isinstance(other, Series):
            other = _coerce_scalar_series(self, other)
            if other is None:
                return NotImplemented
        self._check_compatible(other)
        ecap = min(self._eff_cap(), other._eff_cap())
        terms = series_add(self.terms, other.terms)
        if ecap == INFINITY:
            cap = max((sum(e) for e in terms), default=0)
            return Series(self.vars, cap, terms, exact=True)
        return Series(self.vars, int(ecap), terms, exact=False)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.vars, self.cap, series_neg(self.terms), exact=self.exact)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = _coerce_scalar_series(self, other)
            if other is None:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            scalar = as_gauss(other)
            if scalar is None:
                return NotImplemented
            return self.scale(scalar)
        self._check_compatible(other)
        ecap = min(self._eff_cap(), other._eff_cap())
        if ecap == INFINITY:
            cap = max(self.degree() + other.degree(), 0)
            terms = series_mul(self.terms, other.terms, cap)
            return Series(self.vars, cap, terms, exact=True)
        terms = series_mul(self.terms, other.terms, int(ecap))
        return Series(self.vars, int(ecap), terms, exact=False)

    __rmul__ = __mul__

    def scale(self, scalar):
        scalar = as_gauss(scalar)
        return Series(
            self.vars, self.cap, series_scale(self.terms, scalar), exact=self.exact
        )

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Series.constant(self.vars, self.cap, 1, exact=self.exact)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------------
    # truncation

    def truncate(self, cap):
        """Restrict the jet to total degree <= cap."""
        if cap > self.cap and not self.exact:
            raise OrderGuaranteeError(
                f"cannot extend a cap-{self.cap} jet to order {cap}"
            )
        kept = {e: c for e, c in self.terms.items() if sum(e) <= cap}
        exact = self.exact and len(kept) == len(self.terms)
        return Series(self.vars, cap, kept, exact=exact)

    def as_jet(self, cap=None):
        """Forget exactness (view the polynomial as a plain jet)."""
        s = self if cap is None else self.truncate(cap)
        return Series(s.vars, s.cap, s.terms, exact=False)

    # ------------------------------------------------------------------
    # calculus

    def derive(self, var):
        if var not in self.vars:
            raise ArityError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = exps[:i] + (e - 1,) + exps[i + 1 :]
            c = coeff * e
            cur = out.get(new)
            out[new] = c if cur is None else cur + c
        out = {e: c for e, c in out.items() if not c.is_zero()}
        if self.exact:
            return Series(self.vars, self.cap, out, exact=True)
        if self.cap == 0:
            raise OrderGuaranteeError("derivative of an order-0 jet is unknown")
        return Series(self.vars, self.cap - 1, out, exact=False)

    def substitute(self, assignments, cap=None):
        """Compose with var -> Series images sharing one target variable list.

        Unassigned variables must exist in the target list and map to
        themselves. Every image must vanish at the origin. The result is
        exact through the guaranteed order derived from the input caps;
        pass ``cap`` to request a lower (never higher) order.
        """
        if not assignments:
            target_vars = self.vars
        else:
            target_vars = None
            for img in assignments.values():
                if target_vars is None:
                    target_vars = img.vars
                elif img.vars != target_vars:
                    raise ArityError("substitution images disagree on variables")
        images = {}
        for v in self.vars:
            if v in assignments:
                images[v] = assignments[v]
            else:
                if v not in target_vars:
                    raise ArityError(
                        f"variable {v!r} has no image and is absent from the target"
                    )
                images[v] = Series.variable(target_vars, 0, v, exact=True)
        for v in assignments:
            if v not in self.vars:
                raise ArityError(f"substitution for unknown variable {v!r}")

        # guaranteed order bookkeeping
        m_min = INFINITY
        img_limit = INFINITY
        for v, img in images.items():
            ordv = img.order()
            if not img.exact:
                ordv = min(ordv, img.cap + 1)
            if ordv == 0:
                raise OrderGuaranteeError(
                    f"image of {v!r} has a nonzero constant term"
                )
            m_min = min(m_min, ordv)
            if not img.exact:
                img_limit = min(img_limit, img.cap + 1)
        source_limit = INFINITY if self.exact else (self.cap + 1) * m_min
        guaranteed = min(source_limit, img_limit) - 1

        if guaranteed == INFINITY:
            full_bound = max(0, self.degree()) * max(
                (img.degree() for img in images.values() if not img.is_zero()),
                default=1,
            )
            full_bound = max(full_bound, 0)
            if cap is None:
                cap = full_bound
            result_exact = cap >= full_bound
        else:
            guaranteed = int(guaranteed)
            if guaranteed < 0:
                raise OrderGuaranteeError("no exact order can be guaranteed")
            if cap is None:
                cap = guaranteed
            elif cap > guaranteed:
                raise OrderGuaranteeError(
                    f"requested order {cap} exceeds guaranteed order {guaranteed}"
                )
            result_exact = False

        nzero = Series.zero(target_vars, cap, exact=result_exact)
        result = nzero.terms
        power_cache = {v: {0: Series.constant(target_vars, cap, 1, exact=True).terms}
                       for v in self.vars}
        image_terms = {v: images[v].truncate(min(cap, images[v].cap))
                       if not images[v].exact else images[v]
                       for v in self.vars}

        def power_terms(v, n):
            cache = power_cache[v]
            if n in cache:
                return cache[n]
            half = power_terms(v, n // 2)
            sq = series_mul(half, half, cap)
            if n % 2:
                sq = series_mul(sq, image_terms[v].terms, cap)
            cache[n] = sq
            return sq

        for exps, coeff in self.terms.items():
            prod = {(0,) * len(target_vars): coeff}
            for v, e in zip(self.vars, exps):
                if e:
                    prod = series_mul(prod, power_terms(v, e), cap)
                    if not prod:
                        break
            result = series_add(result, prod)
        return Series(target_vars, cap, result, exact=result_exact)

    def conjugate(self, pairing=None):
        """Conjugate coefficients and swap exponents per an involutive pairing."""
        pairing = dict(pairing or {})
        for v in self.vars:
            pairing.setdefault(v, v)
        for v, w in pairing.items():
            if v not in self.vars or w not in self.vars:
                raise ArityError(f"pairing uses unknown variable {v!r} or {w!r}")
            if pairing.get(w) != v:
                raise ArityError("pairing is not an involution")
        index_of = {v: i for i, v in enumerate(self.vars)}
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(exps)
            for v, e in zip(self.vars, exps):
                new[index_of[pairing[v]]] = e
            out[tuple(new)] = coeff.conjugate()
        return Series(self.vars, self.cap, out, exact=self.exact)

    # ------------------------------------------------------------------
    # variable-list surgery

    def embed(self, new_vars, rename=None):
        """Inject into a larger variable list, optionally renaming."""
        rename = rename or {}
        new_vars = tuple(new_vars)
        positions = []
        for v in self.vars:
            name = rename.get(v, v)
            if name not in new_vars:
                raise ArityError(f"target variables lack {name!r}")
            positions.append(new_vars.index(name))
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(new_vars)
            for pos, e in zip(positions, exps):
                new[pos] = e
            out[tuple(new)] = coeff
        return Series(new_vars, self.cap, out, exact=self.exact)

    def divide_monomial(self, exps):
        """Exact division by a monomial; every term must be divisible."""
        exps = tuple(exps)
        d = sum(exps)
        out = {}
        for e, coeff in self.terms.items():
            new = tuple(a - b for a, b in zip(e, exps))
            if any(x < 0 for x in new):
                raise ValueError(f"term {e} not divisible by {exps}")
            out[new] = coeff
        cap = self.cap if self.exact else max(self.cap - d, 0)
        return Series(self.vars, cap, out, exact=self.exact)

    def mul_monomial(self, exps, coeff=1):
        """Multiply by coeff * prod(var**e); a cap-N jet is known to N + deg."""
        shift = tuple(exps)
        d = sum(shift)
        coeff = as_gauss(coeff)
        out = {
            tuple(a + b for a, b in zip(e, shift)): c * coeff
            for e, c in self.terms.items()
        }
        return Series(self.vars, self.cap + d, out, exact=self.exact)

    def invert_unit(self, cap=None):
        """Multiplicative inverse of a series with nonzero constant term."""
        zero_exp = (0,) * len(self.vars)
        c0 = self.terms.get(zero_exp)
        if c0 is None:
            raise ZeroDivisionError("series has zero constant term")
        if cap is None:
            cap = self.cap
        elif not self.exact and cap > self.cap:
            raise OrderGuaranteeError("cannot invert beyond the jet cap")
        inv = Series.constant(self.vars, cap, GaussRational(1) / c0, exact=False)
        # Newton doubling: x <- x(2 - a x)
        two = Series.constant(self.vars, cap, 2, exact=True)
        a = Series(self.vars, cap,
                   {e: c for e, c in self.terms.items() if sum(e) <= cap},
                   exact=False)
        known = 1
        while known <= cap:
            inv = inv * (two - a * inv)
            known *= 2
        return inv

    # ------------------------------------------------------------------

    def __repr__(self):
        kind = "poly" if self.exact else "jet"
        return f"Series[{','.join(self.vars)}; cap {self.cap}; {kind}: {self.pretty()}]"

    def pretty(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            coeff = self.terms[exps]
            mono = " ".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.vars, exps)
                if e > 0
            )
            parts.append(f"{coeff}{' ' + mono if mono else ''}")
        return " + ".join(parts)


ZERO_ = GaussRational(0)
ONE_ = GaussRational(1)


def _coerce_scalar_series(template, value):
    scalar = as_gauss(value)
    if scalar is None:
        return None
    return Series.constant(template.vars, template.cap, scalar, exact=True)


def gauss(re=0, im=0):
    """Convenience constructor accepting ints and Fractions."""
    return GaussRational(re, im)


def frac(n, d=1):
    return Fraction(n, d)
