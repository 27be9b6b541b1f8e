import random
from fractions import Fraction

import pytest

from holonorm.algebra import Series, gauss
from holonorm.errors import (
    InconsistentTangencyError,
    NotNormalCoordinatesError,
    OrderGuaranteeError,
)
from holonorm.field import JetMap, pushforward
from holonorm.hypersurface import (
    HS_VARS,
    RealHypersurface,
    leading_tangency_constraints,
    tangency_residual,
    transport,
    validate,
)

from helpers import circle_surface, rand_preserves_e_jet, series, vf


def hs(terms, cap=10, exact=True):
    return Series(HS_VARS, cap, terms, exact=exact)


class TestValidate:
    def test_basic(self):
        m = RealHypersurface(hs({(1, 1, 1): 1}))
        rep = validate(m)
        assert rep.nonminimality_order == 1
        assert rep.leading_degree == 2
        assert rep.levi_nonflat_at_cap

    def test_harmonic_rejected(self):
        with pytest.raises(InconsistentTangencyError):
            # u z^2 alone is not even real
            RealHypersurface(hs({(2, 0, 1): 1}))
        m = RealHypersurface(hs({(2, 0, 1): 1, (0, 2, 1): 1}))
        with pytest.raises(NotNormalCoordinatesError):
            validate(m)

    def test_m_and_s(self):
        m = RealHypersurface(hs({(3, 3, 2): 1, (1, 1, 3): 1}))
        rep = validate(m)
        assert rep.nonminimality_order == 2
        assert rep.leading_degree == 6

    def test_levi_flat_warning(self):
        rep = validate(RealHypersurface(hs({})))
        assert rep.warnings


class TestTangencyResidual:
    def test_rotation_tangent(self):
        x = vf({(1, 0): gauss(0, 1)}, {})
        assert tangency_residual(x, circle_surface(), 8).is_zero()

    def test_w_dw_tangent(self):
        x = vf({}, {(0, 1): 1})
        assert tangency_residual(x, circle_surface(), 8).is_zero()

    def test_w_dz_not_tangent(self):
        x = vf({(0, 1): 1}, {})
        r = tangency_residual(x, circle_surface(), 8)
        assert not r.is_zero()
        # leading term -Re((u + i u z zbar) zbar) = -u^2 (z + zbar)/2 + ...
        assert r.coefficient((1, 0, 2)) == gauss(Fraction(-1, 2))
        assert r.coefficient((0, 1, 2)) == gauss(Fraction(-1, 2))

    def test_residual_is_real(self):
        rng = random.Random(17)
        from helpers import rand_series

        for _ in range(5):
            p = rand_series(rng, cap=8, max_deg=4)
            q = rand_series(rng, cap=8, max_deg=4)
            q = q - Series.constant(("z", "w"), 8, q.coefficient((0, 0)), exact=True)
            p = p - Series.constant(("z", "w"), 8, p.coefficient((0, 0)), exact=True)
            from holonorm.field import VectorField

            x = VectorField(p, q)
            r = tangency_residual(x, circle_surface(), 7)
            assert r.conjugate({"z": "zbar", "zbar": "z"}) == r

    def test_cap_guard(self):
        x = vf({(1, 0): gauss(0, 1)}, {}, cap=4)
        with pytest.raises(OrderGuaranteeError):
            tangency_residual(x.as_jet(4), circle_surface(cap=4), 8)


class TestLeadingConstraints:
    def test_generic_readoff(self):
        x = vf({(1, 1): 1}, {(0, 2): 1})
        rep = leading_tangency_constraints(x, circle_surface())
        assert rep.k == 1 and rep.A == gauss(1) and rep.B == gauss(1)
        assert rep.branch == "GENERIC"

    def test_b_zero_branch(self):
        x = vf({(1, 1): gauss(0, 1)}, {})
        rep = leading_tangency_constraints(x, circle_surface())
        assert rep.branch == "B_ZERO"
        assert rep.A == gauss(0, 1)
        assert rep.phi_s_is_circular

    def test_nonconstant_beta_rejected(self):
        x = vf({(1, 1): 1}, {(0, 2): 1, (1, 2): 1})
        with pytest.raises(InconsistentTangencyError):
            leading_tangency_constraints(x, circle_surface())

    def test_b_zero_needs_circular_phi(self):
        x = vf({(1, 1): gauss(0, 1)}, {})
        bad = RealHypersurface(
            hs({(2, 1, 1): 1, (1, 2, 1): 1})
        )  # phi_s = z^2 zbar + z zbar^2, not |z|^s
        with pytest.raises(InconsistentTangencyError):
            leading_tangency_constraints(x, bad)


class TestTransport:
    def test_identity(self):
        m = circle_surface()
        out = transport(JetMap.identity(("z", "w"), 8), m, 8)
        assert out.psi == m.psi.truncate(8)

    def test_covariance_of_tangency(self):
        rng = random.Random(23)
        x = vf({}, {(0, 1): 1}, cap=12)  # w dw is tangent to v = u|z|^2
        m = circle_surface(cap=12)
        assert tangency_residual(x, m, 8).is_zero()
        for _ in range(3):
            h = rand_preserves_e_jet(rng, cap=10)
            xt = pushforward(h, x, cap=10)
            mt = transport(h, m, 8)
            assert tangency_residual(xt, mt, 7).is_zero()

    def test_transport_roundtrip(self):
        rng = random.Random(29)
        m = circle_surface(cap=10)
        from holonorm.field import jet_inverse

        h = rand_preserves_e_jet(rng, cap=10)
        mt = transport(h, m, 8)
        back = transport(jet_inverse(h, cap=10), mt, 7)
        assert back.psi.truncate(7) == m.psi.truncate(7)
