"""Quick check that the extension imports and agrees with known values."""

import math

import dtqw


def main():
    p = dtqw.CoinParams(math.pi / 4)
    assert abs(p.dispersion(0.0) - math.acos(math.cos(math.pi / 4))) < 1e-12
    n = p.bloch_vector(0.7)
    assert abs(sum(c * c for c in n) - 1.0) < 1e-12

    bands = p.band_structure(64)
    assert len(bands) == 64

    inv = p.invariant()
    assert inv["winding_mt"] == 1
    assert p.rotated_winding("v1") == -1
    assert p.rotated_winding("v2") == 1

    q = dtqw.CoinParams(-math.pi / 4)
    assert not dtqw.rel_homotopic(p, q)
    assert dtqw.predicted_edge_states(p, q) == 2

    reports = p.symmetry_checks(ring_size=8)
    assert all(r["passed"] for r in reports), reports

    edge = dtqw.edge_state(-math.pi / 4, math.pi / 4, eta=math.pi, beta=math.pi / 2)
    assert edge["residual"] < 1e-10

    run = dtqw.interface_experiment("overlap-both", steps=80)
    assert run["record"]["passed"]

    count = dtqw.count_gap_states(-1.0, 0.8)
    assert count["near_delta"] == 2 and count["near_delta_plus_pi"] == 2

    try:
        dtqw.CoinParams(0.0).invariant()
    except ValueError:
        pass
    else:
        raise AssertionError("gapless walk accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
