"""Smoke test for the hjelmslev extension module.

Build it first, e.g. `maturin develop --release` from the repository root.
"""

import json
import math

import hjelmslev


def main():
    z4 = hjelmslev.Ring(2)
    assert len(z4) == 4 and z4.q == 2
    assert z4.mul([2], [2]) == [0]
    assert z4.invert([3]) == [3]
    assert z4.decompose([3]) == ([1], [1])
    try:
        z4.invert([2])
    except ValueError:
        pass
    else:
        raise AssertionError("2 is not a unit in Z4")

    plane = hjelmslev.Plane(z4)
    assert (plane.num_points, plane.num_lines) == (28, 28)
    assert sorted(len(c) for c in plane.neighbour_classes()) == [4] * 7
    assert all(len(plane.points_on_line(l)) == 6 for l in range(28))
    assert json.loads(plane.to_json())["schema"] == "hjelmslev.plane"

    conic = json.loads(hjelmslev.analyse_conic(plane))
    assert len(conic["points"]) == 6 and len(conic["classes"]) == 3
    assert conic["proper_verdict"] == "proper"
    assert hjelmslev.is_proper(plane, [1, 0, 0, 0, 0, 0]) == "improper"

    arc = json.loads(hjelmslev.max_arc_search(plane, target=7))
    assert arc["max_size"] == 7
    dual = hjelmslev.Plane(hjelmslev.Ring(2, kind="dual"))
    arc = json.loads(hjelmslev.max_arc_search(dual, target=7))
    assert arc["max_size"] < 7 and arc["exhausted"]

    for p, r in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        mubs = hjelmslev.build_mub_set(p, r)
        q = p**r
        assert mubs.num_bases == q + 1 and mubs.is_complete()
        u, v = mubs.basis(0)[0], mubs.basis(1)[0]
        overlap = abs(sum(complex(*a).conjugate() * complex(*b) for a, b in zip(u, v)))
        assert math.isclose(overlap, 1 / math.sqrt(q), abs_tol=1e-12)
    assert hjelmslev.build_mub_set(2, 3).exact() is True

    for p, r in [(2, 1), (3, 1), (2, 2)]:
        cert = json.loads(hjelmslev.certify(p, r))
        assert all(c["pass"] for c in cert["checks"]), cert["checks"]

    print("hjelmslev smoke test passed")


if __name__ == "__main__":
    main()
