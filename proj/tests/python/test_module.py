import cmath
import math

import pytest

import jspec


def test_linear_free_regularized_matches_sine():
    spec = jspec.linear_free(1.0)
    z = 0.3 + 0.4j
    v = jspec.charfn(spec, z, regularized=True)
    assert abs(v["value"] - cmath.sin(math.pi * z) / math.pi) < 1e-9
    assert v["tail_err"] >= 0.0


def test_spectrum_of_free_operator_is_the_integers():
    pts = jspec.spectrum(jspec.linear_free(1.0), [-2.5, 2.5, -0.5, 0.5])
    assert [round(p["z"].real) for p in pts] == [-2, -1, 0, 1, 2]
    assert all(p["multiplicity"] == 1 for p in pts)


def test_q_zeros():
    pts = jspec.spectrum(jspec.q_geometric(0.5, 0.8), [0.1, 1.1, -0.1, 0.1])
    got = sorted(p["z"].real for p in pts)
    assert got == pytest.approx([0.125, 0.25, 0.5, 1.0], abs=1e-8)


def test_bessel_eigenvector_ratio():
    a, b, N = 0.3, 0.7, 1
    v = jspec.eigenvector(jspec.bessel_compact(a, b), 1 / (N + a), -3, 3)
    o = [cmath.sqrt(a + n) * jspec.bessel_j(n - N, 2 * b * (N + a)) for n in range(-3, 4)]
    ratios = [x / y for x, y in zip(v, o)]
    assert max(abs(r - ratios[0]) for r in ratios) < 1e-8 * abs(ratios[0])


def test_green_is_symmetric():
    spec = jspec.bessel_compact(0.3, 0.7)
    z = 0.5 + 0.5j
    assert jspec.green(spec, z, 2, -1) == pytest.approx(jspec.green(spec, z, -1, 2), rel=1e-14)


def test_detp_identity():
    assert jspec.detp_identity_residual(jspec.bessel_compact(0.3, 0.7), 2, 1.25, 8) < 1e-12


def test_errors_surface_as_exceptions():
    with pytest.raises(jspec.JspecError, match="PoleHit"):
        jspec.charfn(jspec.linear_free(1.0), 2.0)
    with pytest.raises(jspec.JspecError, match="InvalidFamilyParams"):
        jspec.bessel_compact(2.0, 0.7)


def test_json_spec():
    spec = jspec.from_json('{"family": "q_geometric", "q": 0.5, "beta": 0.8}')
    assert spec.lam(-1) == pytest.approx(2.0)
    assert spec.family == "q_geometric"
