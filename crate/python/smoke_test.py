"""Smoke test for the Python bindings: build with `maturin develop` or `pip install` in crates/py."""

from fractions import Fraction

import gschow

EDGE = ([0, 1], [(0, 1)])
K3 = ([0, 1, 2], [(0, 1), (0, 2), (1, 2)])


def main() -> None:
    square = gschow.Product([EDGE, EDGE])
    assert square.dim == 2 and square.cube_count == 1
    assert square.degree("C(0,0)^3") == 1
    assert square.structure(3) == (1, [])
    assert len(square.basis(3)) == 2
    assert square.is_zero("C(0,0)*C(1,1) - C(0,0)*C(1,1)")
    assert not square.is_zero("C(0,0)^2*C(1,1)")

    k3 = gschow.Product([K3])
    assert k3.degree("C(0)^2") == -2
    assert k3.degree("C(0)*C(1)") == 1
    value = k3.pairing([{(0,): 1, (1,): Fraction(1, 2)}, {(1,): 2, (2,): -1}])
    assert isinstance(value, Fraction)

    assert gschow.fourier_degree(["00", "11", "11"]) == 0
    assert gschow.vanishes(["00", "11", "11"])
    assert gschow.to_fourier(1, "C(0)") == "1/2*F(0) + 1/2*F(1)"
    assert gschow.from_fourier(1, "1/2*F(0) + 1/2*F(1)") == "C(0)"

    try:
        square.degree("C(5,0)^3")
    except gschow.GschowError as e:
        assert "parse error" in str(e)
    else:
        raise AssertionError("expected GschowError")
    print("smoke test passed")


if __name__ == "__main__":
    main()
