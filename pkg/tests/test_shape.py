import math

import numpy as np
import pytest

from qorder.errors import DomainError, TooOscillatoryError
from qorder.models import Govindarajulu, TukeyGeneralized, UnitExponential
from qorder.shape import (
    CONSTANT,
    DECREASING,
    INCREASING,
    N_MODAL,
    UNIMODAL_MAX,
    UNIMODAL_MIN,
    GridConfig,
    find_shape,
    ratio_qd,
    tukey_unimodal_region,
)


class TestRatioQd:
    def test_identity_pair(self):
        t = TukeyGeneralized(4, 1, 2.5)
        for p in (0.1, 0.5, 0.9):
            assert ratio_qd(t, t, p) == 1.0

    def test_tukey_pair_value(self):
        X = TukeyGeneralized(4, 1, 2.5)
        Y = TukeyGeneralized(1.5, 1, 1.5)
        # eta*alpha*(p^(a-1)+(1-p)^(a-1)) ratio at the median
        assert ratio_qd(X, Y, 0.5) == pytest.approx(2.1213203435596424 / 1.7677669529663687,
                                                    rel=1e-12)

    def test_equals_hazard_against_exponential(self):
        g = Govindarajulu(0, 2, 2)
        e = UnitExponential()
        assert ratio_qd(g, e, 1 / 3) == pytest.approx(0.5625, rel=1e-12)

    def test_reciprocal_identity(self):
        X = TukeyGeneralized(4, 1, 2.5)
        Y = Govindarajulu(0, 2, 2)
        for p in np.linspace(0.05, 0.95, 19):
            prod = ratio_qd(X, Y, float(p)) * ratio_qd(Y, X, float(p))
            assert prod == pytest.approx(1.0, rel=1e-12)


class TestFindShape:
    def test_constant(self):
        rep = find_shape(lambda p: 3.0 + 0.0 * np.asarray(p))
        assert rep.classification == CONSTANT
        assert rep.n_modes == 0

    def test_monotone(self):
        assert find_shape(lambda p: np.asarray(p) ** 2).classification == INCREASING
        assert find_shape(lambda p: 1.0 / np.asarray(p)).classification == DECREASING

    def test_symmetric_unimodal_max_location(self):
        rep = find_shape(lambda p: np.asarray(p) ** 0.5 + (1 - np.asarray(p)) ** 0.5)
        assert rep.classification == UNIMODAL_MAX
        assert rep.modes[0].location == pytest.approx(0.5, abs=1e-8)

    def test_govindarajulu_hazard_min(self):
        g = Govindarajulu(0, 2, 2)
        e = UnitExponential()
        rep = find_shape(lambda p: ratio_qd(g, e, p))
        assert rep.classification == UNIMODAL_MIN
        assert rep.modes[0].location == pytest.approx(1 / 3, abs=1e-6)

    def test_tukey_pair_unimodal_max(self):
        X = TukeyGeneralized(4, 1, 2.5)
        Y = TukeyGeneralized(1.5, 1, 1.5)
        rep = find_shape(lambda p: ratio_qd(X, Y, p))
        assert rep.classification == UNIMODAL_MAX

    def test_two_modes(self):
        rep = find_shape(lambda p: np.sin(2 * math.pi * np.asarray(p)))
        assert rep.classification == N_MODAL
        assert [m.kind for m in rep.modes] == ["max", "min"]
        assert rep.modes[0].location == pytest.approx(0.25, abs=1e-7)
        assert rep.modes[1].location == pytest.approx(0.75, abs=1e-7)

    def test_segments_consistent_with_modes(self):
        rep = find_shape(lambda p: np.sin(2 * math.pi * np.asarray(p)))
        assert len(rep.segments) == rep.n_modes + 1
        dirs = [s.direction for s in rep.segments]
        assert dirs == ["increasing", "decreasing", "increasing"]
        locs = [m.location for m in rep.modes]
        assert locs == sorted(locs)

    def test_too_oscillatory(self):
        with pytest.raises(TooOscillatoryError):
            find_shape(lambda p: np.sin(40 * math.pi * np.asarray(p)))

    def test_scale_invariant_mode_locations(self):
        fn = lambda p: np.asarray(p) ** 0.3 + (1 - np.asarray(p)) ** 0.7
        a = find_shape(fn)
        b = find_shape(lambda p: 17.0 * fn(p))
        assert a.classification == b.classification
        for ma, mb in zip(a.modes, b.modes):
            assert ma.location == pytest.approx(mb.location, abs=1e-9)

    def test_grid_config_respected(self):
        rep = find_shape(lambda p: np.asarray(p), GridConfig(n=256))
        assert rep.classification == INCREASING


class TestTukeyRegion:
    def test_worked_cells(self):
        assert tukey_unimodal_region(2.5, 1.5) is True
        assert tukey_unimodal_region(0.5, 1.5) is True

    def test_outside_region(self):
        assert tukey_unimodal_region(2.5, 0.5) is False

    def test_special_alpha_rejected(self):
        with pytest.raises(DomainError):
            tukey_unimodal_region(1.0, 1.5)
        with pytest.raises(DomainError):
            tukey_unimodal_region(2.5, 2.0)

    def test_equal_alphas_rejected(self):
        with pytest.raises(DomainError):
            tukey_unimodal_region(1.5, 1.5)

    def test_region_cells_have_unimodal_ratio(self):
        # spot checks; the full 0.05-step grid runs in the acceptance sweep
        rng = np.random.default_rng(7)
        found = 0
        while found < 12:
            a1, a2 = rng.uniform(0.1, 4.9, size=2)
            try:
                ok = tukey_unimodal_region(a1, a2)
            except DomainError:
                continue
            if not ok:
                continue
            found += 1
            X = TukeyGeneralized(a1 + 1, 1.0, a1)
            Y = TukeyGeneralized(a2 + 1, 1.0, a2)
            rep = find_shape(lambda p: ratio_qd(X, Y, p))
            assert rep.classification == UNIMODAL_MAX, (a1, a2)
