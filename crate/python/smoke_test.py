"""Smoke test for the compiled `salpeter` extension module.

Build and install first, e.g. `pip install ./crates/py` or
`maturin develop -m crates/py/Cargo.toml`.
"""

import math

import salpeter


def main():
    grid = salpeter.Grid(-10 * math.pi, 10 * math.pi, 256)
    assert grid.n_points == 256 and abs(grid.dp - 0.1) < 1e-12

    # single plane wave: scalar density is E |A|^2
    p = 1.2
    psi = salpeter.plane_waves([(1.0 + 0.0j, p)], grid)
    energy = math.hypot(p, 1.0)
    rho = psi.density("scalar")
    assert max(abs(r - energy) for r in rho) < 1e-10, "scalar plane-wave density"

    # fast and generic paths agree
    two = salpeter.plane_waves([(1.0, 2.0), (0.7 + 0.3j, -0.5)], grid)
    for kernel in ("scalar", "spinhalf"):
        fast, slow = two.density(kernel), two.density(kernel, generic=True)
        assert max(abs(a - b) for a, b in zip(fast, slow)) < 1e-10, kernel

    # evolution is unitary
    assert abs(two.evolve(3.0).norm() - two.norm()) < 1e-12

    # covariance: scalar holds, Born fails at the witness
    assert salpeter.covariance_residual("scalar", [(1.0, 0.5), (0.4j, -1.1)], 0.6) < 1e-10
    assert salpeter.constraint_residual("born", 0.5, -0.5, 0.5) > 1e-3

    # Dirac lift of a box state
    box = salpeter.box_state(1.0, 2, salpeter.Grid.around_box(1.0, 4.0, 1024))
    current_res, evolution_res = box.dirac_residuals(1.7)
    assert current_res < 1e-8 and evolution_res < 1e-8

    fig = salpeter.figure2(normalization="unit-area", grid_points=1024)
    dx = fig["x"][1] - fig["x"][0]
    for column in ("rho_born", "rho_scalar", "rho_half"):
        assert abs(sum(fig[column]) * dx - 1.0) < 1e-6, column

    try:
        salpeter.Grid(0.0, 1.0, 1000)
    except ValueError as err:
        assert "power of two" in str(err)
    else:
        raise AssertionError("non power-of-two grid accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
