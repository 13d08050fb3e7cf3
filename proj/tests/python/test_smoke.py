from fractions import Fraction

import pytest

import walsh_fejer as wf


def test_version():
    assert wf.__version__


def test_step_function_roundtrip():
    f = wf.StepFunction(2, [Fraction(1, 3), -2, 0, Fraction(5, 7)])
    assert len(f) == 4
    assert f[0] == Fraction(1, 3)
    assert f == wf.synthesize(2, wf.fwht(f))
    assert wf.integrate(f) == (Fraction(1, 3) - 2 + Fraction(5, 7)) / 4


def test_binary_data():
    assert wf.order(5) == 2
    assert wf.variation(5) == 4
    assert wf.in_A02(13)
    assert not wf.in_A02(9)


def test_kernels():
    assert wf.lp_quasinorm(wf.dirichlet(3, 2), 1)[0] == Fraction(3, 2)
    k = wf.fejer_kernel(8, 4)
    assert wf.integrate(k) == 1
    assert wf.kernel_decomposition_residual(27) == wf.StepFunction(0, [0])


def test_fejer_mean_matches_convolution():
    f = wf.StepFunction(3, [1, -1, 2, 0, Fraction(1, 2), 3, -4, 1])
    for n in range(1, 9):
        assert wf.fejer_mean(f, n) == wf.dyadic_convolve(f, wf.fejer_kernel(n, 3))


def test_theorem2_norm_and_identity():
    for m in range(0, 6):
        exact, approx = wf.hp_quasinorm(wf.build_theorem2_martingale(m, m + 1), Fraction(1, 2))
        assert exact == 1
        assert approx == pytest.approx(1.0)
    assert wf.sigma_identity_16b_residual(4, 3) == wf.StepFunction(0, [0])


def test_experiment_reports():
    r = wf.run_theorem2(2, 5)
    assert r["id"] == "theorem2"
    assert len(r["rows"]) == 4
    fine = wf.run_fine_average(1024)
    assert dict((c[0], c[1]) for c in fine["checks"])["closed_form"]
    atom = wf.run_theorem1a(2, Fraction(1, 2), 64)
    assert len(atom["rows"]) == 64


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        wf.run_theorem2(5, 4)
