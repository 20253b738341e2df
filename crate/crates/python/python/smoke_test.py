"""Smoke test for the franel_py extension module.

Build and install with `maturin develop` (or `pip install .`) from crates/python,
then run `python python/smoke_test.py`.
"""

from fractions import Fraction
import math

import franel_py as fp


def main() -> None:
    assert fp.franel_integral(1, [2, 3]) == Fraction(1, 72)
    assert fp.franel_integral(1, [1, 1, 1]) == 0

    spec = fp.IntegralSpec(3, [1, 1])
    assert spec.index == 3 and spec.multipliers == [1, 1] and len(spec) == 2
    assert spec.integral() == Fraction(1, 840)
    assert spec.breakpoints() == [Fraction(0), Fraction(1)]

    assert fp.bernoulli_number(12) == Fraction(-691, 2730)
    assert fp.bernoulli_polynomial(2) == [Fraction(1, 6), Fraction(-1), Fraction(1)]
    assert fp.periodic_bernoulli(1, Fraction(5, 4)) == Fraction(-1, 4)
    assert [fp.general_constant(n) for n in (6, 8, 10, 12)] == [6, 10, 6, 210]
    assert fp.higher_constants(1, 1) == (6, 15120)
    assert fp.dedekind_sum(1, 3) == Fraction(1, 18)
    assert fp.gcd_product(2, [2, 4, 6]) == 2 * 2 * 2

    report = fp.certificate("mcintosh", [1, 1, 1, 1])
    assert report.integral == Fraction(1, 80)
    assert report.product == 3 and report.is_integer
    assert report.constant_part == 240 and report.gcd_part == 1
    assert fp.certificate("higher", [1, 1], k=1, n=1).product == 18
    assert fp.certificate("general", [1] * 6, k=3).is_integer

    assert fp.sharpness_check(Fraction(43, 6480), 6480)
    assert not fp.sharpness_check(Fraction(1, 80), 240)

    assert fp.truncated_reciprocal_sum(3, [1, 1], 2) == Fraction(-65, 32)
    assert fp.linear_form_truncated_sum([[1, 0], [0, 1]], [1, 1], 3, 2) == Fraction(-65, 32)
    coeff, power = fp.IntegralSpec(3, [1, 1]).pi_coefficient()
    assert (coeff, power) == (Fraction(-2, 945), 6)
    results = fp.IntegralSpec(1, [1, 1, 1, 1]).convergence_report([20, 40])
    assert results[1].float_discrepancy < results[0].float_discrepancy
    assert math.isclose(results[0].predicted_value, math.pi**4 / 5)

    for bad in (lambda: fp.franel_integral(0, [1]), lambda: fp.certificate("mcintosh", [1, 2])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("franel_py smoke test passed")


if __name__ == "__main__":
    main()
