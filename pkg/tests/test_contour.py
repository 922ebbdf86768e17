import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xlq.contour import (
    path_integral,
    rectangle,
    residue_at,
    residue_at_infinity,
    stadium,
    tube,
    winding_number,
)
from xlq.errors import ConvergenceError


@given(st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
def test_simple_pole_residue(a, c):
    assert residue_at(lambda z: c / (z - a), a, 0.5) == pytest.approx(c, abs=1e-10)


def test_double_pole_has_zero_residue():
    assert abs(residue_at(lambda z: 1 / (z - 1) ** 2, 1.0, 0.3)) < 1e-12


def test_residue_at_infinity_of_rational():
    # (z^2 + 3)/(z (z - 1)) = 1 + 1/z + ... so Res_inf = -1
    f = lambda z: (z**2 + 3) / (z * (z - 1))  # noqa: E731
    assert residue_at_infinity(f, 5.0) == pytest.approx(-1.0, abs=1e-10)


def test_pole_hugging_the_circle_is_not_converged():
    with pytest.raises(ConvergenceError):
        residue_at(lambda z: 1 / (z - 0.999), 0.0, 1.0, max_points=256)


@pytest.mark.parametrize(
    "path",
    [
        stadium(0.5 + 0j, 2.0 + 0j, 0.2),
        rectangle(-1 - 1j, 2 + 1j, 0.1),
        tube(np.linspace(0.0, 1.5, 40) + 0.3j * np.sin(np.linspace(0, 3, 40)), 0.1),
    ],
)
def test_contours_are_counter_clockwise(path):
    inside = {0: 1.0 + 0j, 1: 0.5 + 0j, 2: 0.75 + 0.3j * np.sin(1.5)}
    z = next(v for v in inside.values() if winding_number(path, v) != 0)
    assert winding_number(path, z) == 1
    assert winding_number(path, 10 + 10j) == 0
    assert path_integral(lambda w: 1 / (w - z), path) == pytest.approx(2j * np.pi, abs=1e-10)


@given(st.integers(0, 5))
def test_polynomials_integrate_to_zero(k):
    path = rectangle(-1 - 1j, 2 + 1j, 0.2)
    assert abs(path_integral(lambda z: z**k, path)) < 1e-10


def test_open_path_integral():
    line = np.linspace(0, 1, 5) + 0j
    assert path_integral(lambda z: z**2, line, closed=False) == pytest.approx(1 / 3, abs=1e-14)
