import json

import pytest
from hypothesis import given, strategies as st

from enriques_collection.lattice import B1, B2, E, E0, H, SUM_E, chi_glued_difference, format_class
from enriques_collection.verifier import (
    BOUND_ONLY, DEGREE, FLAGGED, NEF, PROVEN, SEMI, SYMMETRY, CertificateEntry, NotInTableError,
    SymmetryNotApplicable, VanishingTask, Verdict, audit_representative, degree_bound_on_Y,
    nef_h_vanishing, normalize, plane_twist_excess, representative_for, required_tasks,
    semicontinuity_bound, symmetry_reduce, target_class, verify_all,
)

T = VanishingTask
REFERENCE_NEF = {"h2_9_0", "h0_10_9", "h2_11_0", "h2_11_9", "h2_11_10", "h2_12_0", "h2_12_9", "h2_12_10", "h2_12_11"}


def test_required_tasks():
    tasks = required_tasks()
    assert len(tasks) == 156 and len(set(tasks)) == 156
    assert T(9, 0, 0) in tasks
    with pytest.raises(ValueError):
        T(0, 9, 0)


def test_task_key_roundtrip():
    for t in required_tasks():
        assert T.parse(t.key) == t


def test_nef_examples():
    e = nef_h_vanishing(T(12, 11, 2))
    assert e.verdict.status == PROVEN and e.pairing_with_B1 == -3 and "B1g-nef" in e.assumptions
    e = nef_h_vanishing(T(10, 9, 0))
    assert e.pairing_with_B1 == -1
    assert nef_h_vanishing(T(9, 0, 0)) is None


def test_nef_hits_on_table_pairs():
    idx = (0, 9, 10, 11, 12)
    hits = {t.key for t in required_tasks() if t.i in idx and t.j in idx and nef_h_vanishing(t)}
    assert hits == REFERENCE_NEF


def test_degree_bound_examples():
    e = degree_bound_on_Y(T(2, 1, 0))
    assert e.verdict.status == PROVEN and e.bound == 0
    e = degree_bound_on_Y(T(9, 8, 2))
    assert e.verdict.status == PROVEN and e.bound == 0
    assert degree_bound_on_Y(T(10, 9, 0)) is None


def test_symmetry_examples():
    assert symmetry_reduce(T(11, 3, 0))[0] == T(11, 9, 0)
    assert symmetry_reduce(T(4, 0, 0))[0] == T(9, 0, 0)
    with pytest.raises(SymmetryNotApplicable):
        symmetry_reduce(T(12, 10, 0))


@given(st.sampled_from(required_tasks()))
def test_normalize_idempotent(t):
    assert normalize(normalize(t)) == normalize(t)


@given(st.sampled_from(required_tasks()))
def test_symmetry_moves_target_by_swap(t):
    try:
        t2, _ = symmetry_reduce(t)
    except SymmetryNotApplicable:
        return
    k = t.j if t.j in range(1, 9) else t.i
    c = target_class(t)
    swapped = list(c.coords)
    swapped[1 + k], swapped[10] = swapped[10], swapped[1 + k]
    assert tuple(swapped) == target_class(t2).coords


def test_representative_examples():
    rep, w = representative_for(T(11, 0, 0))
    assert rep == 5 * H - SUM_E - 3 * E0 - 2 * B1 - 2 * B2 and w.as_tuple() == (0, 1, 0)
    rep, w = representative_for(T(12, 0, 0))
    assert w.as_tuple() == (1, 3, 0)
    audit = audit_representative(T(12, 9, 0))
    assert audit.flagged and audit.listed_witness is None
    assert audit.corrected_witness.as_tuple() == (1, 2, 0)
    assert format_class(audit.chosen[0]) == "12H-3(E1+..+E8)-2E9-5E0-5B1-4B2"
    audit = audit_representative(T(12, 10, 0))
    assert audit.flagged and audit.corrected_witness.as_tuple() == (0, 3, 0)
    with pytest.raises(NotInTableError):
        representative_for(T(10, 0, 0))


def test_overrides_replace_table_rows():
    rep = 13 * H - 3 * SUM_E - 5 * E0 - 5 * B1 - 6 * B2
    audit = audit_representative(T(12, 10, 0), overrides={"h0_12_10": rep})
    assert audit.source == "override" and not audit.flagged


def test_plane_twists():
    assert [plane_twist_excess(d) for d in (-2, -1, 0, 1, 2, 3)] == [0, 0, 0, 0, 1, 3]


def test_semicontinuity_examples(reference_cfg):
    assert semicontinuity_bound(16 * H - 4 * SUM_E - 6 * E0 - 6 * B1 - 6 * B2, reference_cfg) == 0
    assert semicontinuity_bound(4 * H - SUM_E + E(9) - 2 * E0 - B1 - 2 * B2, reference_cfg) == 0
    assert semicontinuity_bound(H - E(9) + E0 - B1 - B2, reference_cfg) == 1


def test_entry_invariants():
    with pytest.raises(ValueError):
        CertificateEntry(T(1, 0, 0), SEMI, Verdict(PROVEN), bound=1)
    with pytest.raises(ValueError):
        CertificateEntry(T(1, 0, 0), SEMI, Verdict(BOUND_ONLY, -1), bound=-1)


def test_reference_report(reference_report):
    r = reference_report
    assert r.exit_code == 3
    bound_only = [e for e in r.entries if e.verdict.status == BOUND_ONLY]
    assert [(e.task.key, e.bound) for e in bound_only] == [("h2_10_9", 1)]
    flagged = [e for e in r.entries if e.verdict.status == FLAGGED]
    assert {e.reduced_to.key for e in flagged} == {"h2_10_9"}
    assert {a.task.key for a in r.representatives if a.flagged} == {"h0_12_9", "h0_12_10"}
    assert all(e.bound >= 0 for e in r.entries)


def test_alternate_report(alternate_report):
    r = alternate_report
    assert r.exit_code == 0
    assert r.summary["verdicts"][PROVEN] == 156
    assert all(c["h1_vanishes"] for c in r.h1_closure)


def test_h1_closure_matches_chi(reference_report):
    for c in reference_report.h1_closure:
        i, j = c["pair"]
        assert c["chi"] == chi_glued_difference(i, j) == 0


def test_cross_method_agreement(reference_cfg):
    """Tasks resolved by nef or degree bounds also have a zero semicontinuity bound where computable."""
    checked = 0
    for t in required_tasks():
        if t.i < 9 or t.j in range(1, 9):
            continue
        if nef_h_vanishing(t) is None:
            continue
        from enriques_collection.lattice import reduced_representative
        rep = reduced_representative(target_class(t))
        assert semicontinuity_bound(rep, reference_cfg) == 0, t.key
        checked += 1
    for t in (T(2, 1, 0), T(5, 3, 2), T(9, 1, 0), T(9, 8, 2)):
        e = degree_bound_on_Y(t)
        assert e.bound == 0
    assert checked >= 9


def test_method_priority(reference_report):
    for e in reference_report.entries:
        if nef_h_vanishing(e.task) is not None:
            assert e.method == NEF
        elif 1 <= e.task.j < e.task.i <= 9:
            assert e.method == DEGREE
        elif e.method == SYMMETRY:
            assert e.reduced_to == symmetry_reduce(e.task)[0]


def test_deterministic_serialisation(reference_cfg, reference_report):
    again = verify_all(reference_cfg)
    assert again.dumps() == reference_report.dumps()
    data = json.loads(reference_report.dumps())
    assert data["version"] and len(data["entries"]) == 156
    assert list(data) == sorted(data)


def test_invalid_options(reference_cfg):
    with pytest.raises(ValueError):
        verify_all(reference_cfg, ks_torsion=2)
    with pytest.raises(ValueError):
        verify_all(reference_cfg, oracle="exact")
