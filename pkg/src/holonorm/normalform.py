"""The normalization pipeline: leading data, trichotomy, resonance
bookkeeping, prenormalization, the case normal forms, and the majorant
convergence certificate.

All homological solves are per-monomial diagonal solves with the explicit
eigenvalues A(n-1) + Bm (dz slots) and An + B(m-k) (dw slots); a slot is
resonant exactly when its eigenvalue vanishes. Corrections are applied as
honest coordinate changes (pushforward), layer by layer, re-reading the
field after each application, so every cancellation is verified rather
than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import INFINITY, Series
from .backend import GaussRational, as_gauss
from .errors import (
    CertificateError,
    InconsistentTangencyError,
    InternalError,
    NotIntegralManifoldError,
    OrderGuaranteeError,
    WrongBranchError,
)
from .field import JetMap, VectorField, apply_field, pushforward

VF_VARS = ("z", "w")

ORD0 = "ORD0"
GENERIC = "GENERIC"
ALPHA_ZERO = "ALPHA_ZERO"
B_ZERO = "B_ZERO"


# ----------------------------------------------------------------------
# leading data and the trichotomy


@dataclass
class LeadingData:
    k: int
    alpha_k: Series  # series in ("z",)
    beta_k: Series
    A: GaussRational  # alpha_k'(0)
    B: GaussRational  # beta_k(0)
    lam: object  # B/A, or None when A = 0
    mu: object  # A/B, or None when B = 0


def leading_data(x: VectorField) -> LeadingData:
    """Extract k, alpha_k, beta_k, A, B from the layer expansion of X."""
    if x.is_zero():
        raise OrderGuaranteeError("field vanishes through its cap")
    candidates = [e[1] for e in x.p.terms]
    candidates += [e[1] - 1 for e in x.q.terms]
    k = min(candidates)
    if k < 0:
        raise WrongBranchError("dw component not divisible by w")
    alpha_k = x.p.coefficient_series("w", k)
    beta_k = x.q.coefficient_series("w", k + 1)
    A = alpha_k.coefficient((1,))
    B = beta_k.coefficient((0,))
    lam = B / A if not A.is_zero() else None
    mu = A / B if not B.is_zero() else None
    return LeadingData(k=k, alpha_k=alpha_k, beta_k=beta_k, A=A, B=B, lam=lam, mu=mu)


def classify_case(x: VectorField) -> str:
    """ORD0 / GENERIC / ALPHA_ZERO / B_ZERO per the leading layer."""
    ld = leading_data(x)
    if not ld.alpha_k.coefficient((0,)).is_zero():
        return ORD0
    if ld.alpha_k.is_zero():
        return ALPHA_ZERO
    if ld.B.is_zero():
        return B_ZERO
    return GENERIC


def is_rational_negative(value: GaussRational) -> bool:
    return value.is_real() and value.re < 0


def nonneg_integer(value: GaussRational):
    """The value as an int when it is a nonnegative rational integer."""
    if value.is_rational_integer() and value.re >= 0:
        return int(value.re)
    return None


def n1_of(lam: GaussRational, ell: int) -> GaussRational:
    return GaussRational(1) - lam * ell


def n2_of(lam: GaussRational, k: int, ell: int) -> GaussRational:
    return lam * (k - ell)


def homological_matrix(A, B, k, ell, n):
    """The 2x2 block ((An - (A - l B), 0), (B, An - (k - l) B))."""
    a11 = A * n - (A - B * ell)
    a22 = A * n - B * (k - ell)
    return (a11, GaussRational(0), B, a22)


def homological_rank_deficient(A, B, k, ell, n) -> bool:
    a11, a12, a21, a22 = homological_matrix(A, B, k, ell, n)
    det = a11 * a22 - a12 * a21
    return det.is_zero()


# ----------------------------------------------------------------------
# resonance report


@dataclass
class ResonanceEntry:
    ell: int
    n1: object  # GaussRational or None (A = 0)
    n2: object
    n1_integral: bool
    n2_integral: bool
    z_all: bool = False  # every z-power resonant in the dz slot family
    w_all: bool = False


@dataclass
class ResonanceReport:
    k: int
    lam: object
    entries: list

    def slots(self):
        """All resonant (component, z-power, layer) slots within range."""
        out = []
        for e in self.entries:
            if e.n1_integral:
                out.append(("dz", nonneg_integer(e.n1), e.ell))
            if e.n2_integral:
                out.append(("dw", nonneg_integer(e.n2), e.ell))
        return out

    def beyond_model(self):
        """Resonant slots other than the model terms mu*z*w^k and w^{2k+1}."""
        out = []
        for comp, n, ell in self.slots():
            if comp == "dz" and ell == 0 and n == 1:
                continue
            if comp == "dw" and ell == self.k and n == 0:
                continue
            out.append((comp, n, ell))
        return out


def resonance_report(ld: LeadingData, order: int) -> ResonanceReport:
    entries = []
    top = max(order - ld.k, 0)
    for ell in range(0, top + 1):
        if ld.lam is None:
            # A = 0: the dz family is resonant at every n for ell = 0 and
            # the dw family at every n for ell = k
            entries.append(
                ResonanceEntry(
                    ell=ell,
                    n1=None,
                    n2=None,
                    n1_integral=False,
                    n2_integral=False,
                    z_all=(ell == 0),
                    w_all=(ell == ld.k),
                )
            )
            continue
        n1 = n1_of(ld.lam, ell)
        n2 = n2_of(ld.lam, ld.k, ell)
        entries.append(
            ResonanceEntry(
                ell=ell,
                n1=n1,
                n2=n2,
                n1_integral=nonneg_integer(n1) is not None,
                n2_integral=nonneg_integer(n2) is not None,
            )
        )
    return ResonanceReport(k=ld.k, lam=ld.lam, entries=entries)


# ----------------------------------------------------------------------
# the kill loop: remove every non-resonant monomial by honest coordinate
# changes, layer by layer


def _eig_z(A, B, n, m):
    return A * (n - 1) + B * m


def _eig_w(A, B, k, n, m):
    return A * n + B * (m - k)


def _layer_targets(x, k, m, order):
    """Current dz and dw coefficients in layer m, keyed by z-power."""
    tz = {}
    for e, c in x.p.terms.items():
        if e[1] == k + m and e[0] + e[1] <= order:
            tz[e[0]] = c
    tw = {}
    for e, c in x.q.terms.items():
        if e[1] == k + m + 1 and e[0] + e[1] <= order:
            tw[e[0]] = c
    return tz, tw


def _kill_nonresonant(x: VectorField, k: int, A, B, order: int,
                      variant: str = "w_first"):
    """Normalize x = A z w^k dz + B w^{k+1} dw + ... to resonant support.

    Returns (transform, field). The transform is accumulated as a JetMap h
    with field == pushforward(h, x) through `order`. `variant` chooses
    which component's slots each pass removes first; any choice lands on
    the same resonant support (and, for tangent generic fields, the same
    coefficients).
    """
    if x.cap() != INFINITY and x.cap() < order:
        raise OrderGuaranteeError(
            f"field cap {x.cap()} below requested order {order}"
        )
    xc = x.as_jet(order)
    h_total = JetMap.identity(VF_VARS, order, exact=True)
    # each full sweep advances the lowest offending z-power, but every
    # resonant kept slot adds a back-coupling round; the bound is generous
    max_passes = 8 * order + 40

    def w_corrections(tw, m):
        out = {}
        for n, coeff in tw.items():
            if m == 0 and n == 0:
                continue  # the leading B slot is kept by construction
            eig = _eig_w(A, B, k, n, m)
            if not eig.is_zero():
                out[(n, m + 1)] = -coeff / eig
        return out

    def z_corrections(tz, m):
        out = {}
        for n, coeff in tz.items():
            if m == 0 and n <= 1:
                if n == 0:
                    raise InternalError(
                        "constant dz term appeared during the kill loop"
                    )
                continue  # the leading A slot is kept
            eig = _eig_z(A, B, n, m)
            if not eig.is_zero():
                out[(n, m)] = -coeff / eig
        return out

    for m in range(0, order - k + 1):
        for _ in range(max_passes):
            tz, tw = _layer_targets(xc, k, m, order)
            g_corr = {}
            f_corr = {}
            if variant == "w_first":
                g_corr = w_corrections(tw, m)
                if not g_corr:
                    f_corr = z_corrections(tz, m)
            else:
                f_corr = z_corrections(tz, m)
                if not f_corr:
                    g_corr = w_corrections(tw, m)
            if not g_corr and not f_corr:
                break
            z_s = Series.variable(VF_VARS, 1, "z", exact=True)
            w_s = Series.variable(VF_VARS, 1, "w", exact=True)
            step = JetMap(
                z_s + Series(VF_VARS, order, f_corr, exact=True)
                if f_corr
                else z_s,
                w_s + Series(VF_VARS, order, g_corr, exact=True)
                if g_corr
                else w_s,
            )
            xc = pushforward(step, xc, cap=order)
            h_total = step.compose(h_total, cap=order)
        else:
            raise InternalError(f"kill loop did not stabilize in layer {m}")
    return h_total, xc


def _removable_support(x: VectorField, k: int, A, B, order: int):
    """Non-resonant monomials still present (must be empty after the kill)."""
    bad = []
    for e, c in x.p.terms.items():
        n, j = e
        m = j - k
        if m < 0:
            bad.append(("dz", e))
            continue
        if m == 0 and n == 1:
            continue
        if not _eig_z(A, B, n, m).is_zero():
            bad.append(("dz", e))
    for e, c in x.q.terms.items():
        n, j = e
        m = j - (k + 1)
        if m < 0:
            bad.append(("dw", e))
            continue
        if m == 0 and n == 0:
            continue
        if not _eig_w(A, B, k, n, m).is_zero():
            bad.append(("dw", e))
    return bad


@dataclass
class PrenormalizeResult:
    transform: JetMap
    field: VectorField
    resonance: ResonanceReport
    rescale: GaussRational
    case: str
    guaranteed_order: int

    def __iter__(self):
        return iter((self.transform, self.field, self.resonance))


def prenormalize(x: VectorField, order: int, variant: str = "w_first") -> PrenormalizeResult:
    """Bring a GENERIC (or, by extension, B = 0) field to resonant support.

    GENERIC fields are rescaled so the leading dw coefficient is 1; the
    output is then mu z w^k dz + w^{k+1} dw plus the resonant slots
    c_l z^{n1(l)} w^{k+l} dz and d_l z^{n2(l)} w^{k+l+1} dw. For B = 0 the
    same loop leaves i-axis data: z F(w) w^k dz + G(w) dw support.
    """
    case = classify_case(x)
    if case == ORD0:
        raise WrongBranchError("alpha_k(0) != 0: use normalize_ord0")
    if case == ALPHA_ZERO:
        raise WrongBranchError("alpha_k == 0: use normalize_alpha_zero")
    ld = leading_data(x)
    scale = GaussRational(1)
    if case == GENERIC:
        scale = GaussRational(1) / ld.B
    elif case == B_ZERO and ld.A.is_imaginary() and not ld.A.is_zero():
        scale = GaussRational(1) / GaussRational(ld.A.im)
    xs = x.scale(scale)
    lds = leading_data(xs)
    h, xf = _kill_nonresonant(xs, lds.k, lds.A, lds.B, order, variant=variant)
    bad = _removable_support(xf, lds.k, lds.A, lds.B, order)
    if bad:
        raise InternalError(f"kill loop left removable terms: {bad}")
    return PrenormalizeResult(
        transform=h,
        field=xf,
        resonance=resonance_report(lds, order),
        rescale=scale,
        case=case,
        guaranteed_order=order,
    )


# ----------------------------------------------------------------------
# results


@dataclass
class NormalFormResult:
    tag: str
    params: dict
    transform: JetMap
    rescale: GaussRational
    guaranteed_order: int
    convergent_claim: str
    case: str
    field: VectorField
    resonance: object = None
    notes: list = dc_field(default_factory=list)


# ----------------------------------------------------------------------
# ORD0: alpha_k(0) != 0


def normalize_ord0(x: VectorField, order: int):
    """Map X with alpha_k(0) = alpha != 0 to the monomial field alpha w^k dz.

    Solves the first-order system for z -> f(z,w), w -> w g(z,w) by the
    degree-in-z recursion with initial data f(0,w) = 0, g(0,w) = 1.
    """
    if classify_case(x) != ORD0:
        raise WrongBranchError("normalize_ord0 requires alpha_k(0) != 0")
    ld = leading_data(x)
    k = ld.k
    alpha = ld.alpha_k.coefficient((0,))
    avail = x.cap()
    if avail != INFINITY and avail < order + k:
        raise OrderGuaranteeError(
            f"field cap {avail} cannot certify order {order}"
        )
    work = order + 1 if avail == INFINITY else min(order + 1, int(avail) - k)
    pt_raw = x.p.divide_monomial((0, k))  # P / w^k, unit constant term
    qt_raw = x.q.divide_monomial((0, k + 1))
    pt = pt_raw.as_jet(work if pt_raw.exact else min(work, pt_raw.cap))
    qt = qt_raw.as_jet(work if qt_raw.exact else min(work, qt_raw.cap))
    w_s = Series.variable(VF_VARS, 1, "w", exact=True)

    p0 = pt.coefficient_series("z", 0)  # unit series in (w,)
    p0_inv = p0.invert_unit(cap=work)

    f = Series.zero(VF_VARS, work, exact=False)
    g = Series.constant(VF_VARS, work, 1, exact=False)
    for i in range(0, work):
        e2 = pt * g.derive("z") + qt * (g + w_s * g.derive("w"))
        r2 = e2.coefficient_series("z", i)
        if not r2.is_zero():
            gamma = (r2 * p0_inv).scale(Fraction(-1, i + 1))
            g = g + gamma.embed(VF_VARS, {"w": "w"}).mul_monomial((i + 1, 0))
        e1 = pt * f.derive("z") + w_s * qt * f.derive("w") - (g**k).scale(alpha)
        r1 = e1.coefficient_series("z", i)
        if not r1.is_zero():
            phi = (r1 * p0_inv).scale(Fraction(-1, i + 1))
            f = f + phi.embed(VF_VARS, {"w": "w"}).mul_monomial((i + 1, 0))

    target = VectorField(
        Series.monomial(VF_VARS, order, (0, k), alpha, exact=True),
        Series.zero(VF_VARS, order, exact=True),
    )
    h = JetMap(f.truncate(order), (w_s * g).truncate(order))
    # verify the divided defining equations through the solved range
    e1 = pt * f.derive("z") + w_s * qt * f.derive("w") - (g**k).scale(alpha)
    e2 = pt * g.derive("z") + qt * (g + w_s * g.derive("w"))
    for res in (e1, e2):
        if any(e[0] < work for e in res.terms):
            raise InternalError("ord0 recursion failed to solve the system")
    return h, target


# ----------------------------------------------------------------------
# GENERIC with an integral hypersurface


def normalize_generic(x: VectorField, m, order: int, variant: str = "w_first") -> NormalFormResult:
    """Full normalization in the generic case, against an integral surface.

    With a Levi-nonflat integral hypersurface the resonant slots beyond the
    model are forced to vanish (the normal form of a tangent field is
    unique), so after prenormalization the field must land on
    mu z w^k dz + w^{k+1} dw (+ eta w^{2k+1} dw when mu is negative
    rational and k >= 1, with eta real).
    """
    from .hypersurface import leading_tangency_constraints, tangency_residual

    if classify_case(x) != GENERIC:
        raise WrongBranchError("normalize_generic requires the generic case")
    residual = tangency_residual(x, m, order)
    if not residual.is_zero():
        raise NotIntegralManifoldError(
            f"tangency residual nonzero from degree {int(residual.order())}"
        )
    ld = leading_data(x)
    if not ld.B.is_real():
        raise InconsistentTangencyError(
            f"beta_k(0) = {ld.B} is not real, so no real rescale normalizes it"
        )
    if m.in_normal_coordinates():
        # in normal coordinates the basic identity forces more: beta_k is a
        # real constant
        leading_tangency_constraints(x, m)
    pre = prenormalize(x, order, variant=variant)
    xf = pre.field
    k = ld.k
    mu = ld.mu
    notes = list()

    model = {("dz", (1, k)), ("dw", (0, k + 1))}
    eta_slot = ("dw", (0, 2 * k + 1))
    support = set(xf.support())
    eta = GaussRational(0)
    if is_rational_negative(mu):
        allowed = set(model)
        if k >= 1:
            allowed.add(eta_slot)
        if not support <= allowed:
            raise InconsistentTangencyError(
                f"resonant terms {sorted(support - allowed)} survive; the input "
                "cannot be tangent to a Levi-nonflat hypersurface"
            )
        if k >= 1:
            eta = xf.q.coefficient((0, 2 * k + 1))
            if not eta.is_real():
                raise InconsistentTangencyError(f"eta = {eta} is not real")
            tag = "NF11"
        else:
            tag = "NF12"
    else:
        if not support <= model:
            raise InconsistentTangencyError(
                f"terms {sorted(support - model)} survive outside the complete "
                "normal form"
            )
        tag = "NF10"
        if mu.is_real():
            notes.append(
                "mu is real and not negative: outside the classified families, "
                "reported as the complete-form family"
            )
    params = {"k": k, "mu": mu}
    if tag == "NF11":
        params["eta"] = eta
    return NormalFormResult(
        tag=tag,
        params=params,
        transform=pre.transform,
        rescale=pre.rescale,
        guaranteed_order=order,
        convergent_claim="convergent",
        case=GENERIC,
        field=xf,
        resonance=pre.resonance,
        notes=notes,
    )


# ----------------------------------------------------------------------
# ALPHA_ZERO: alpha_k == 0, B != 0


def normalize_alpha_zero(x: VectorField, order: int) -> NormalFormResult:
    """Normalize fields with vanishing dz leading part to w^{k+1} dw forms.

    The kill loop realizes the intermediate form
    (w^{k+1} + c(z) w^{2k+1}) dw; tangency to a Levi-nonflat hypersurface
    forces c constant and real (the w^{2k+1}-level data is a per-leaf
    residue, invariant under all changes of coordinates), so nonconstant
    or nonreal c is rejected.
    """
    if classify_case(x) != ALPHA_ZERO:
        raise WrongBranchError("normalize_alpha_zero requires alpha_k == 0")
    ld = leading_data(x)
    if ld.B.is_zero():
        raise InconsistentTangencyError(
            "alpha_k == 0 with beta_k(0) = 0 admits no Levi-nonflat integral "
            "hypersurface"
        )
    if not ld.B.is_real():
        raise InconsistentTangencyError(f"beta_k(0) = {ld.B} is not real")
    scale = GaussRational(1) / ld.B
    xs = x.scale(scale)
    k = ld.k
    h, xf = _kill_nonresonant(xs, k, GaussRational(0), GaussRational(1), order)
    bad = _removable_support(xf, k, GaussRational(0), GaussRational(1), order)
    if bad:
        raise InternalError(f"kill loop left removable terms: {bad}")
    if not xf.p.is_zero():
        raise InconsistentTangencyError(
            "dz terms survive at the resonant layer; no real constant "
            "multiple of these fields is tangent to a Levi-nonflat surface"
        )
    c_series = xf.q.coefficient_series("w", 2 * k + 1) if k >= 1 else None
    expected = {(0, k + 1)}
    extra = set(xf.q.terms) - expected
    if k >= 1:
        extra -= {(n, 2 * k + 1) for n in range(order + 1)}
    if extra:
        raise InternalError(f"unexpected dw support {sorted(extra)}")
    if k == 0:
        if set(xf.q.terms) != expected:
            raise InconsistentTangencyError(
                "nonconstant linear dw data cannot be normalized away at k = 0"
            )
        tag = "NF9"
        params = {"k": 0, "r": GaussRational(0)}
        notes = []
    else:
        if c_series.degree() > 0:
            raise InconsistentTangencyError(
                f"c(z) = {c_series.pretty()} is nonconstant: it is a per-leaf "
                "residue invariant, so no integral hypersurface exists"
            )
        r = c_series.coefficient((0,))
        if not r.is_real():
            raise InconsistentTangencyError(f"r = {r} is not real")
        tag = "NF8"
        params = {"k": k, "r": r, "shifted_index_K": k + 1}
        notes = [
            "the same field reads (w^K + r w^{2K-1}) dw under the shifted "
            f"index K = k + 1 = {k + 1}; both indexings are reported"
        ]
    return NormalFormResult(
        tag=tag,
        params=params,
        transform=h,
        rescale=scale,
        guaranteed_order=order,
        convergent_claim="convergent",
        case=ALPHA_ZERO,
        field=xf,
        resonance=None,
        notes=notes,
    )


# ----------------------------------------------------------------------
# B_ZERO: beta_k == B = 0


def _b_zero_stage2(x: VectorField, k: int, q: int, r, order: int):
    """Reduce i z F(w) w^k dz + G(w) dw to the form with parameters
    (c_1..c_q, r, t), using corrections built on the r w^{k+q+1} slot."""
    xc = x
    h_total = JetMap.identity(VF_VARS, order, exact=True)
    z_s = Series.variable(VF_VARS, 1, "z", exact=True)
    w_s = Series.variable(VF_VARS, 1, "w", exact=True)
    t_slot = 2 * (k + q) + 1

    # pure-w dw slots first: P never feeds back into Q under these maps
    for j in range(k + q + 2, order + 1):
        if j == t_slot:
            continue
        coeff = xc.q.coefficient((0, j))
        if coeff.is_zero():
            continue
        mexp = j - k - q
        eig = r * (mexp - (k + q + 1))
        step = JetMap(z_s, w_s + Series.monomial(VF_VARS, order, (0, mexp), -coeff / eig, exact=True))
        xc = pushforward(step, xc, cap=order)
        h_total = step.compose(h_total, cap=order)

    # z w^{k+j} dz slots with j > q, killed through the r-slot coupling
    for j in range(q + 1, order - k):
        coeff = xc.p.coefficient((1, k + j))
        if coeff.is_zero():
            continue
        eig = r * (j - q)
        step = JetMap(
            z_s + Series.monomial(VF_VARS, order, (1, j - q), -coeff / eig, exact=True),
            w_s,
        )
        xc = pushforward(step, xc, cap=order)
        h_total = step.compose(h_total, cap=order)
    return h_total, xc


def normalize_b_zero(x: VectorField, m, order: int) -> NormalFormResult:
    """Normalize the B = 0 branch against an integral hypersurface.

    After prenormalization the field is i z F(w) w^k dz + G(w) dw. A zero
    G at the cap is reported as the rotation form NF13 (with a caveat for
    k >= 1, where a genuine dw part may hide beyond the cap); otherwise
    the second-stage reduction produces NF14 and tangency forces its
    parameters r, t, c_j to be real.
    """
    from .hypersurface import leading_tangency_constraints, tangency_residual

    if classify_case(x) != B_ZERO:
        raise WrongBranchError("normalize_b_zero requires the B = 0 case")
    residual = tangency_residual(x, m, order)
    if not residual.is_zero():
        raise NotIntegralManifoldError(
            f"tangency residual nonzero from degree {int(residual.order())}"
        )
    ld0 = leading_data(x)
    if ld0.A is None or not ld0.A.is_imaginary() or ld0.A.is_zero():
        raise InconsistentTangencyError(
            f"B = 0 requires alpha_k'(0) purely imaginary; got {ld0.A}"
        )
    if m.in_normal_coordinates():
        leading_tangency_constraints(x, m)  # also enforces phi_s = |z|^s
    pre = prenormalize(x, order)
    xf = pre.field
    ld = leading_data(x)
    k = ld.k
    notes = []

    ghat = xf.q
    if ghat.is_zero():
        f_slots = xf.p.divide_monomial((1, k))
        if k == 0:
            if f_slots != Series.constant(VF_VARS, order, GaussRational(0, 1), exact=False):
                raise InconsistentTangencyError(
                    "i z F(w) dz with F nonconstant is not tangent to any "
                    "Levi-nonflat hypersurface"
                )
            tag = "NF13"
            params = {"k": 0}
        else:
            tag = "NF13"
            params = {"k": k}
            notes.append(
                "dw part vanishes at the cap: reported as NF13-at-cap; a "
                "genuine r != 0 may hide beyond the cap, and true NF13 "
                "requires k = 0"
            )
        return NormalFormResult(
            tag=tag,
            params=params,
            transform=pre.transform,
            rescale=pre.rescale,
            guaranteed_order=order,
            convergent_claim="convergent",
            case=B_ZERO,
            field=xf,
            resonance=pre.resonance,
            notes=notes,
        )

    ord_g = min(e[1] for e in ghat.terms)
    q = ord_g - (k + 1)
    if q < 1:
        raise InternalError("prenormal dw part starts at w^{k+1} despite B = 0")
    r = ghat.coefficient((0, ord_g))
    h2, x2 = _b_zero_stage2(xf, k, q, r, order)
    if not r.is_real():
        raise InconsistentTangencyError(f"r = {r} is not real")
    t = x2.q.coefficient((0, 2 * (k + q) + 1))
    if not t.is_real():
        raise InconsistentTangencyError(f"t = {t} is not real")
    c = []
    for j in range(1, q + 1):
        cj = x2.p.coefficient((1, k + j))
        # the dz part is i z w^k (1 + c_1 w + ...): divide the stored
        # coefficient by i to expose c_j
        cj = cj / GaussRational(0, 1)
        if not cj.is_real():
            raise InconsistentTangencyError(f"c_{j} = {cj} is not real")
        c.append(cj)
    expected = {("dz", (1, k))}
    expected |= {("dz", (1, k + j)) for j in range(1, q + 1)}
    expected |= {("dw", (0, k + q + 1)), ("dw", (0, 2 * (k + q) + 1))}
    support = set(x2.support())
    if not support <= expected:
        raise InternalError(f"stage-2 left support {sorted(support - expected)}")
    params = {"k": k, "q": q, "r": r, "t": t, "c": c}
    return NormalFormResult(
        tag="NF14",
        params=params,
        transform=h2.compose(pre.transform, cap=order),
        rescale=pre.rescale,
        guaranteed_order=order,
        convergent_claim="formal-only",
        case=B_ZERO,
        field=x2,
        resonance=pre.resonance,
        notes=notes,
    )


# ----------------------------------------------------------------------
# one-variable normalization (the dim-1 helper)


def normalize_1d(h: Series, order: int) -> Series:
    """Jet tau conjugating h(w) d/dw to q w d/dw: h tau' = q tau.

    h must be q w + O(w^{k+1}) with q != 0; tau = w + O(w^2).
    """
    if h.vars != ("w",):
        raise WrongBranchError("normalize_1d expects a series in ('w',)")
    qcoef = h.coefficient((1,))
    if qcoef.is_zero():
        raise WrongBranchError("linear coefficient q must be nonzero")
    if not h.coefficient((0,)).is_zero():
        raise WrongBranchError("h must vanish at the origin")
    tau = Series.variable(("w",), order, "w", exact=False).truncate(order)
    hj = h.as_jet(min(order, h.cap) if not h.exact else order)
    for j in range(2, order + 1):
        res = hj * tau.derive("w") - tau.scale(qcoef)
        cj = res.coefficient((j,))
        if cj.is_zero():
            continue
        tau = tau + Series.monomial(("w",), order, (j,), -cj / (qcoef * (j - 1)), exact=False)
    res = (hj * tau.derive("w") - tau.scale(qcoef)).truncate(order - 1)
    if not res.is_zero():
        raise InternalError("one-variable linearization failed")
    return tau


# ----------------------------------------------------------------------
# majorant certificate


def _abs_bound(c: GaussRational) -> GaussRational:
    """A rational upper bound |Re c| + |Im c| >= |c|, keeping exactness."""
    return GaussRational(abs(c.re) + abs(c.im))


def _bound_series(a: Series) -> Series:
    return Series(a.vars, a.cap, {e: _abs_bound(c) for e, c in a.terms.items()},
                  exact=a.exact)


@dataclass
class MajorantReport:
    holds: bool
    order: int
    p: int
    q: int
    k: int
    r: GaussRational
    failures: list = dc_field(default_factory=list)
    f_jet: Series = None  # solved inverse-map jets (diagonalized chart)
    g_jet: Series = None
    f_star: Series = None  # dominating jets
    g_star: Series = None


def majorant_certificate(x: VectorField, order: int) -> MajorantReport:
    """Certify |F_ab| <= F*_ab, |G_ab| <= G*_ab for the inverse-map jets.

    F, G solve the homological system for the map (z+F, w+wG) sending the
    normal form back to X, with resonant slots pinned to zero; F*, G* are
    the jets of the dominating solution of the implicit system built from
    coefficientwise upper bounds. Comparison is by exact modulus squares.
    """
    if classify_case(x) != GENERIC:
        raise WrongBranchError("majorant certificate applies to the generic case")
    ld = leading_data(x)
    mu = ld.mu
    if mu is None or not is_rational_negative(mu):
        raise WrongBranchError("majorant certificate requires mu in Q^-")
    if not ld.B.is_real():
        raise WrongBranchError("certificate requires a real leading dw constant")
    p = -mu.re.numerator
    qq = mu.re.denominator
    scale = GaussRational(Fraction(qq)) / ld.B
    xs = x.scale(scale)
    k = ld.k
    if xs.cap() != INFINITY and xs.cap() < order + k + 1:
        raise OrderGuaranteeError(
            f"field cap {xs.cap()} cannot certify order {order}: "
            f"need {order + k + 1}"
        )

    _, xf = _kill_nonresonant(xs, k, GaussRational(-p), GaussRational(qq), order)
    model = {("dz", (1, k)), ("dw", (0, k + 1)), ("dw", (0, 2 * k + 1))}
    support = set(xf.support())
    if not support <= model:
        raise WrongBranchError(
            "input does not normalize to the (p, q, r) model at this cap; "
            f"extra slots {sorted(support - model)}"
        )
    r = GaussRational(0) if k == 0 else xf.q.coefficient((0, 2 * k + 1))

    # ingredient series of the right-hand functionals, in (z, w)
    ptil = xs.p.divide_monomial((0, k)).as_jet(order)
    qtil = xs.q.divide_monomial((0, k + 1)).as_jet(order)
    z_s = Series.variable(VF_VARS, 1, "z", exact=True)
    w_s = Series.variable(VF_VARS, 1, "w", exact=True)
    a_ing = ptil + z_s.scale(p)  # P/w^k + p z, vanishing at the origin
    b_ing = qtil - Series.constant(VF_VARS, order, qq, exact=True) \
        - Series.monomial(VF_VARS, order, (0, k), r, exact=True)

    # one-variable change removing r w^{k+1} d/dw from the operator: the
    # scalar system keeps its shape with w replaced by tau_inv(w) in all
    # explicit ingredients
    if not r.is_zero():
        h1 = Series(("w",), order + 1,
                    {(1,): GaussRational(qq), (k + 1,): r}, exact=True)
        tau = normalize_1d(h1, order + 1).truncate(order)
        tau_inv = Series.variable(("w",), order, "w", exact=False)
        w_var1 = Series.variable(("w",), order, "w", exact=False)
        for _ in range(order + 2):
            err = tau.substitute({"w": tau_inv}, cap=order) - w_var1
            if err.is_zero():
                break
            tau_inv = tau_inv - err
        else:
            raise InternalError("one-variable inversion did not converge")
        wimg = tau_inv.embed(VF_VARS, {"w": "w"})
    else:
        wimg = Series.variable(VF_VARS, order, "w", exact=False)

    one = Series.constant(VF_VARS, order, 1, exact=True)

    def functional_A(fj, gj, a_series, p_const, wseries):
        og = one + gj
        img = {"z": z_s + fj, "w": wseries * og}
        comp = a_series.substitute(img, cap=order)
        return (z_s + fj).scale(p_const) * (og**k - one) + og**k * comp

    def functional_B(fj, gj, b_series, q_const, r_t1, r_t3, wseries):
        og = one + gj
        img = {"z": z_s + fj, "w": wseries * og}
        comp = b_series.substitute(img, cap=order)
        kp1 = og ** (k + 1)
        wk = wseries**k if k else one.as_jet(order)
        t1 = (wk * gj).scale(r_t1)
        t2 = (kp1 - one - gj.scale(k + 1)).scale(q_const)
        t3 = (wk * (og ** (2 * k + 1) - one)).scale(r_t3)
        return t1 + t2 + t3 + kp1 * comp

    # exact homological solve for F, G with resonant slots pinned to zero;
    # F is solved first at each degree because the dw data may carry a
    # z-linear slope feeding F into G's equation without a degree shift
    fj = Series.zero(VF_VARS, order, exact=False)
    gj = Series.zero(VF_VARS, order, exact=False)
    for mdeg in range(1, order + 1):
        af = functional_A(fj, gj, a_ing, -p, wimg)
        newf = {}
        for alpha in range(0, mdeg + 1):
            beta = mdeg - alpha
            cf = -p * alpha + qq * beta + p
            val = af.coefficient((alpha, beta))
            if cf == 0:
                if not val.is_zero():
                    raise CertificateError(
                        f"resonant F slot ({alpha},{beta}) is obstructed"
                    )
            elif not val.is_zero():
                newf[(alpha, beta)] = val / cf
        if newf:
            fj = fj + Series(VF_VARS, order, newf, exact=False)
        bf = functional_B(fj, gj, b_ing, qq, -r, r, wimg)
        newg = {}
        for alpha in range(0, mdeg + 1):
            beta = mdeg - alpha
            cg = -p * alpha + qq * beta - k * qq
            val = bf.coefficient((alpha, beta))
            if cg == 0:
                if not val.is_zero():
                    raise CertificateError(
                        f"resonant G slot ({alpha},{beta}) is obstructed"
                    )
            elif not val.is_zero():
                newg[(alpha, beta)] = val / cg
        if newg:
            gj = gj + Series(VF_VARS, order, newg, exact=False)

    # sanity: the solved jets satisfy the diagonalized system
    af = functional_A(fj, gj, a_ing, -p, wimg)
    bf = functional_B(fj, gj, b_ing, qq, -r, r, wimg)
    zj = z_s.as_jet(order)
    wj = w_s.as_jet(order)
    lhs_f = (zj * fj.derive("z")).scale(-p) + (wj * fj.derive("w")).scale(qq) \
        + fj.scale(p)
    lhs_g = (zj * gj.derive("z")).scale(-p) + (wj * gj.derive("w")).scale(qq) \
        - gj.scale(k * qq)
    if not (lhs_f - af).truncate(order - 1).is_zero() \
            or not (lhs_g - bf).truncate(order - 1).is_zero():
        raise InternalError("homological solve failed verification")

    # dominating jets from the implicit system with bounded coefficients
    a_abs = _bound_series(a_ing)
    b_abs = _bound_series(b_ing)
    w_abs = _bound_series(wimg)
    r_abs = _abs_bound(r)
    fstar = Series.zero(VF_VARS, order, exact=False)
    gstar = Series.zero(VF_VARS, order, exact=False)
    for mdeg in range(1, order + 1):
        af = functional_A(fstar, gstar, a_abs, p, w_abs)
        newf = {}
        for alpha in range(0, mdeg + 1):
            beta = mdeg - alpha
            val = af.coefficient((alpha, beta))
            if not val.is_zero():
                newf[(alpha, beta)] = val
        if newf:
            fstar = fstar + Series(VF_VARS, order, newf, exact=False)
        bf = functional_B(fstar, gstar, b_abs, qq, r_abs, r_abs, w_abs)
        newg = {}
        for alpha in range(0, mdeg + 1):
            beta = mdeg - alpha
            val = bf.coefficient((alpha, beta))
            if not val.is_zero():
                newg[(alpha, beta)] = val
        if newg:
            gstar = gstar + Series(VF_VARS, order, newg, exact=False)

    failures = []
    for series, star, name in ((fj, fstar, "F"), (gj, gstar, "G")):
        for e, c in series.terms.items():
            bound = star.coefficient(e)
            if not bound.is_real() or bound.re < 0:
                raise InternalError("majorant coefficients must be nonnegative")
            if c.modulus_squared() > bound.re * bound.re:
                failures.append((name, e))
    if failures:
        raise CertificateError(f"majorant domination failed at {failures}")
    return MajorantReport(
        holds=True, order=order, p=p, q=qq, k=k, r=r, failures=[],
        f_jet=fj, g_jet=gj, f_star=fstar, g_star=gstar,
    )
