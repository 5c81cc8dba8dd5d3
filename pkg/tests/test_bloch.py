import random

import pytest

from kgroups.bloch import VModel, bloch_v_approx, closed_points, residue_vector
from kgroups.errors import DegreeOverflow
from kgroups.finite_field import prime_field
from kgroups.function_field import elliptic_curve, random_function
from oracles import affine_points

F5 = prime_field(5)
E5 = elliptic_curve(F5, 0, 1)


def _count_points_f25(a, b):
    """#E(F_25) from #E(F_5) via the trace of Frobenius."""
    n1 = 1 + len(affine_points(5, a, b))
    t = 5 + 1 - n1
    return 25 + 1 - (t * t - 2 * 5)


def test_closed_points_counts():
    pts1 = closed_points(E5, 1)
    assert len(pts1) == 1 + len(affine_points(5, 0, 1))
    assert pts1[0] == E5.infinite_place()
    pts2 = closed_points(E5, 2)
    n2 = _count_points_f25(0, 1)
    assert len(pts2) - len(pts1) == (n2 - (len(pts1))) // 2


def test_residue_vectors_lie_in_the_kernel():
    V = VModel(E5, 2)
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        f, g = random_function(E5, rng, 2), random_function(E5, rng, 2)
        try:
            vec = residue_vector(V, E5, f, g)
        except DegreeOverflow:
            continue
        assert V.in_kernel(vec)
        checked += 1


@pytest.fixture(scope="module")
def report():
    return bloch_v_approx(E5, d=2, stabilize_to=3)[1]


def test_bloch_comparison(report):
    assert report.well_defined
    assert report.surjective
    assert report.failures == []
    assert report.v_group.is_trivial()
    assert report.somekawa_group.is_trivial()


def test_structural_part_is_the_point_group(report):
    # before symbol pairs are imposed, V is cut down to E(F_5) = Z/6
    assert str(report.structural_group) == "Z/6"


def test_stabilization(report):
    st = report.stabilization
    assert st["d"] == [2, 3]
    assert st["v_stable"] and st["somekawa_stable"]


def test_report_serialises(report):
    out = report.to_dict()
    for key in ("v_group", "somekawa_group", "well_defined", "surjective", "relation_counts",
                "structural_v_group", "stabilization"):
        assert key in out
    assert out["relation_counts"]["kernel_failures"] == 0
