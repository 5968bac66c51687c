import numpy as np
import pytest

import frustra as fr
from frustra import ed, phases


def axis(start, stop, count):
    return tuple(np.linspace(start, stop, count).tolist())


class TestScanSpec:
    def test_axis_counts_validated(self):
        with pytest.raises(fr.ParameterError):
            phases.ScanSpec(gamma=1.0, h_values=(0.5,), delta_values=axis(0, 1, 3))

    def test_ed_engine_cap(self):
        with pytest.raises(fr.CapacityError):
            phases.ScanSpec(
                gamma=1.0,
                h_values=axis(0, 2, 3),
                delta_values=axis(0, 2, 3),
                L=15,
                engine=phases.Engine.ED,
            )


class TestScan:
    def test_cell_examples(self):
        spec = phases.ScanSpec(
            gamma=1.0, h_values=(0.5, 2.0), delta_values=(0.5, 1.2), L=11
        )
        cells = {(c.delta, c.h): c for c in phases.scan(spec)}
        kink = cells[(0.5, 0.5)]
        assert kink.phase.kind is fr.PhaseKind.KINK_PLUS
        assert kink.im_ground < 1e-10
        broken = cells[(1.2, 0.5)]
        assert broken.phase.kind is fr.PhaseKind.T_BREAKING
        assert broken.im_ground > 0.0

    def test_row_major_order(self):
        spec = phases.ScanSpec(gamma=1.0, h_values=(0.1, 0.2), delta_values=(0.3, 0.4), L=5)
        cells = phases.scan(spec)
        assert [(c.delta, c.h) for c in cells] == [
            (0.3, 0.1),
            (0.3, 0.2),
            (0.4, 0.1),
            (0.4, 0.2),
        ]

    def test_engines_agree_on_subgrid(self):
        hs = axis(0.2, 1.8, 5)
        ds = axis(0.2, 1.8, 5)
        a = phases.scan(
            phases.ScanSpec(gamma=1.0, h_values=hs, delta_values=ds, L=7, engine=phases.Engine.ANALYTIC)
        )
        b = phases.scan(
            phases.ScanSpec(gamma=1.0, h_values=hs, delta_values=ds, L=7, engine=phases.Engine.ED)
        )
        for ca, cb in zip(a, b):
            assert abs(ca.im_ground - cb.im_ground) < 1e-8

    def test_im_above_threshold_implies_t_breaking(self):
        spec = phases.ScanSpec(
            gamma=1.0, h_values=axis(0, 2, 21), delta_values=axis(0, 2, 21), L=9
        )
        for cell in phases.scan(spec):
            if cell.im_ground > 1e-6:
                assert cell.phase.kind is fr.PhaseKind.T_BREAKING

    def test_delta_sign_symmetry(self):
        hs = axis(0.2, 1.8, 5)
        up = phases.scan(
            phases.ScanSpec(gamma=1.0, h_values=hs, delta_values=(0.7, 1.3), L=7)
        )
        down = phases.scan(
            phases.ScanSpec(gamma=1.0, h_values=hs, delta_values=(-0.7, -1.3), L=7)
        )
        for cu, cd in zip(up, down):
            assert cu.im_ground == pytest.approx(cd.im_ground, abs=1e-12)
            assert cu.phase.kind is cd.phase.kind

    def test_phase_label_engine_independent(self):
        spec = phases.ScanSpec(
            gamma=1.0, h_values=(0.5, 1.5), delta_values=(0.5, 1.5), L=5, engine=phases.Engine.ED
        )
        for cell in phases.scan(spec):
            expected = fr.classify_phase(fr.ModelParams(L=5, gamma=1.0, delta=cell.delta, h=cell.h))
            assert cell.phase == expected


class TestBoundaryCurves:
    def test_critical_segment_present_for_small_delta(self):
        curves = {c.label: c for c in fr.boundary_curves(1.0)}
        crit = curves["critical_h_plus"]
        assert np.all(np.abs(crit.deltas) <= 1.0)
        assert np.all(crit.hs == 1.0)

    def test_reality_curve_passes_through_unit_field_at_unit_delta(self):
        curves = {c.label: c for c in fr.boundary_curves(1.0)}
        reality = curves["reality_h_plus"]
        i = int(np.argmin(np.abs(reality.deltas - 1.0)))
        assert reality.hs[i] == pytest.approx(1.0, abs=1e-6)

    def test_no_critical_segment_beyond_gamma(self):
        for c in fr.boundary_curves(1.0):
            if c.label.startswith("critical"):
                assert np.abs(c.deltas).max() <= 1.0 + 1e-12

    def test_gap_product_on_reality_curve(self):
        for c in fr.boundary_curves(1.3):
            if c.label.startswith("reality"):
                product = 1.3**2 - c.deltas**2
                assert np.allclose(product + c.hs**2, 1.0, atol=1e-10)
