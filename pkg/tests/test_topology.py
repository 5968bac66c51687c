import math

import numpy as np
import pytest

import frustra as fr


def params(gamma=1.0, delta=0.5, h=0.5):
    return fr.ModelParams(L=3, gamma=gamma, delta=delta, h=h)


class TestBlochVector:
    def test_at_zero_momentum(self):
        s = fr.bloch_vector(params(gamma=0.8, delta=1.7, h=0.4), 0.0)
        assert s.hx == 0.0 and s.hy == 0.0
        assert s.hz == pytest.approx(0.6)

    def test_component_example(self):
        s = fr.bloch_vector(params(), math.pi / 2)
        assert s.hx == pytest.approx(-0.5j)
        assert s.hy == pytest.approx(1.0)
        assert s.hz == pytest.approx(-0.5)
        assert s.norm == pytest.approx(1.0)

    def test_bilinear_identity(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            p = params(
                gamma=float(rng.uniform(-2, 2)),
                delta=float(rng.uniform(-2, 2)),
                h=float(rng.uniform(-2, 2)),
            )
            q = float(rng.uniform(-math.pi, math.pi))
            s = fr.bloch_vector(p, q)
            bilinear = s.hx**2 + s.hy**2 + s.hz**2
            assert abs(bilinear - fr.reality_function(p, q)) < 1e-12


class TestWindingNumber:
    def test_table_values(self):
        value, rounded = fr.winding_number(params(1.0, 0.5, 0.5), 10000)
        assert rounded == 1 and value == pytest.approx(1.0, abs=1e-8)
        value, rounded = fr.winding_number(params(1.0, 0.5, 2.0), 10000)
        assert rounded == 0 and value == pytest.approx(0.0, abs=1e-8)
        value, rounded = fr.winding_number(params(-1.0, 0.5, 0.5), 10000)
        assert rounded == -1 and value == pytest.approx(-1.0, abs=1e-8)

    def test_value_close_to_integer_away_from_critical(self):
        rng = np.random.default_rng(4)
        n = 0
        while n < 200:
            gamma = float(rng.uniform(-2, 2))
            delta = float(rng.uniform(-2, 2))
            h = float(rng.uniform(-3, 3))
            p = params(gamma, delta, h)
            if p.gap_product <= 1e-3 or abs(abs(h) - 1.0) < 0.05:
                continue
            n += 1
            value, rounded = fr.winding_number(p, 10000)
            assert abs(value - rounded) < 1e-6

    def test_refinement_invariance(self):
        for h in (0.3, 0.9, 1.1, 2.5):
            p = params(1.0, 0.5, h)
            w1, _ = fr.winding_number(p, 4096)
            w2, _ = fr.winding_number(p, 8192)
            assert abs(w1 - w2) < 1e-8

    def test_rounded_equals_phase_hint(self):
        rng = np.random.default_rng(9)
        counts = {1: 0, -1: 0, 0: 0}
        trials = 0
        while sum(counts.values()) < 1000 and trials < 100000:
            trials += 1
            gamma = float(rng.uniform(-2, 2))
            delta = float(rng.uniform(-2, 2))
            h = float(rng.uniform(-3, 3))
            p = params(gamma, delta, h)
            if p.gap_product <= 1e-3 or abs(abs(h) - 1.0) < 0.05:
                continue
            hint = fr.classify_phase(p).winding_hint
            if hint is None:
                continue
            _, rounded = fr.winding_number(p, 4096)
            assert rounded == hint, (gamma, delta, h)
            counts[hint] += 1
        assert min(counts.values()) > 50  # all three regions exercised

    def test_errors(self):
        with pytest.raises(fr.ParameterError):
            fr.winding_number(params(1.0, 1.5, 0.5), 4096)  # negative gap product
        with pytest.raises(fr.ParameterError):
            fr.winding_number(params(), 32)  # grid too coarse
        with pytest.raises(fr.SingularLoopError):
            fr.winding_number(params(1.0, 0.5, 1.0), 4096)


class TestTrajectory:
    def test_closed_loop(self):
        traj = fr.trajectory(params(), 128)
        assert traj.closed

    def test_real_at_special_momenta(self):
        traj = fr.trajectory(params(), 65)  # includes q = pi exactly at midpoint
        assert abs(traj.hx[0].imag) < 1e-12
        mid = len(traj.q) // 2
        assert abs(traj.q[mid] - math.pi) < 1e-12
        assert abs(traj.hx[mid].imag) < 1e-12

    def test_imaginary_stream_confined_to_x(self):
        traj = fr.trajectory(params(1.0, 0.5, 0.9), 128)
        assert np.abs(traj.hy.imag).max() < 1e-12
        assert np.abs(traj.hz.imag).max() < 1e-12
        assert np.abs(traj.hx.real).max() < 1e-12
        assert np.abs(traj.hx.imag).max() > 0.1

    def test_sample_count_validated(self):
        with pytest.raises(fr.ParameterError):
            fr.trajectory(params(), 8)

    def test_singular_loop(self):
        with pytest.raises(fr.SingularLoopError):
            fr.trajectory(params(1.0, 0.5, 1.0), 64)

    def test_lagrange_identity_ties_loop_to_integrand(self):
        # |a x b|^2 = (a.a)(b.b) - (a.b)^2 for the bilinear product, with
        # a the normalized loop (a.a = 1) and b its finite-difference derivative
        p = params(1.0, 0.5, 0.4)
        rng = np.random.default_rng(6)
        eps = 1e-5
        for _ in range(50):
            q = float(rng.uniform(0.05, 2 * math.pi - 0.05))
            def normalized(qq):
                s = fr.bloch_vector(p, qq)
                return np.array([s.hx, s.hy, s.hz]) / s.norm
            a = normalized(q)
            b = (normalized(q + eps) - normalized(q - eps)) / (2 * eps)
            cross = np.array(
                [
                    a[1] * b[2] - a[2] * b[1],
                    a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0],
                ]
            )
            lhs = np.sum(cross * cross)
            rhs = np.sum(a * a) * np.sum(b * b) - np.sum(a * b) ** 2
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))
