"""Tests for the verify-all profiles."""

from __future__ import annotations

import pytest

from qcong.cases.profiles import cases_in, profile_points
from qcong.cases.registry import CaseRegistry
from qcong.types import Profile


def test_quick_profile_points_are_admissible_and_ordered() -> None:
    registry = CaseRegistry()
    points = profile_points(Profile.QUICK, registry)
    assert all(registry.get(case_id).violation(params) is None for case_id, params in points)
    order = registry.ids()
    positions = [order.index(case_id) for case_id, _ in points]
    assert positions == sorted(positions)


def test_quick_profile_covers_every_case_but_the_printed_variant() -> None:
    registry = CaseRegistry()
    covered = cases_in(profile_points(Profile.QUICK, registry))
    assert covered == [case_id for case_id in registry.ids() if case_id != "E2p2k-printed"]


def test_quick_profile_grids() -> None:
    points = profile_points(Profile.QUICK, CaseRegistry())
    t1a = [params["n"] for case_id, params in points if case_id == "T1a"]
    assert t1a == list(range(3, 32, 2))
    assert [params["p"] for case_id, params in points if case_id == "GAO"] == [5, 7, 11, 13]
    assert [params["p"] for case_id, params in points if case_id == "SUN5"] == [5, 7, 11, 13, 3]
    assert {"d": 4, "r": 1, "n": 3} in [params for case_id, params in points if case_id == "T5"]
    assert len([1 for case_id, _ in points if case_id == "INV-CYCLO"]) == 60


@pytest.mark.parametrize("profile", [Profile.QUICK, Profile.FULL])
def test_mod_square_grid_covers_both_steps(profile: Profile) -> None:
    points = [params for case_id, params in profile_points(profile, CaseRegistry()) if case_id == "INV-MODSQ"]
    assert {(p["d"], p["alpha"]) for p in points} == {(4, 1), (4, 3), (6, 1), (6, 3), (6, 5)}
    assert max(p["n"] for p in points) == 13


def test_full_profile_extends_quick() -> None:
    registry = CaseRegistry()
    quick = profile_points(Profile.QUICK, registry)
    full = profile_points(Profile.FULL, registry)
    assert len(full) > len(quick)
    assert set(cases_in(full)) == set(cases_in(quick))


def test_cases_in_keeps_first_seen_order() -> None:
    assert cases_in([("B", {}), ("A", {}), ("B", {"n": 1})]) == ["B", "A"]
