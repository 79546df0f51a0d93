import json

import pytest

from carlitz import field_make, Poly, is_squarefree
from carlitz.motive import TwistedPower, analytic_rank
from carlitz.scan import (ScanSpec, RankTable, ScanCapError, run_scan,
                          shift_stable_expand, coset_audit, dim_report,
                          equation_count, _squarefree_ints)
from carlitz.symmetry import Mu, act_on_poly


def test_spec_validation():
    with pytest.raises(ValueError):
        ScanSpec(q=3, n=1, m=5, lead=0)
    with pytest.raises(ValueError):
        ScanSpec(q=3, n=1, m=5, lead=1, mode="shift-stable")  # 3 does not divide 5
    with pytest.raises(ValueError):
        ScanSpec(q=3, n=0, m=5, lead=1)


def test_cap_enforced():
    spec = ScanSpec(q=3, n=1, m=6, lead=1, cap=10)
    with pytest.raises(ScanCapError):
        run_scan(spec)
    assert run_scan(ScanSpec(q=3, n=1, m=2, lead=1, cap=10, force=True,
                             workers=1)) is not None


def test_counts_match_direct_enumeration():
    # independent oracle: enumerate all P of degree 4 and rank symbolically
    f3 = field_make(3)
    m, lead = 4, 2
    want = {}
    for code in range(3**m):
        coeffs = []
        v = code
        for _ in range(m):
            coeffs.append(v % 3)
            v //= 3
        coeffs.append(lead)
        p = Poly(f3, coeffs)
        if not is_squarefree(p):
            continue
        r = analytic_rank(TwistedPower(p, 1))
        if r >= 1:
            want[r] = want.get(r, 0) + 1
    table = run_scan(ScanSpec(q=3, n=1, m=m, lead=lead, workers=1))
    assert table.hist[(m, lead)] == want


def test_worker_and_screen_independence():
    base = None
    for workers, screen, chunk in [(1, True, 100), (4, True, 57),
                                   (16, True, 23), (2, False, 100)]:
        spec = ScanSpec(q=3, n=1, m=6, lead=2, workers=workers,
                        chunk_size=chunk, use_batch_screen=screen)
        got = run_scan(spec).to_json_obj()
        got.pop("audits")
        if base is None:
            base = got
        else:
            assert got == base


def test_nested_thresholds_and_witnesses():
    spec = ScanSpec(q=3, n=1, m=9, lead=2, workers=2, witness_cap=4)
    table = run_scan(spec)
    assert table.count(9, 2, 1) >= table.count(9, 2, 2) >= table.count(9, 2, 3)
    assert table.count(9, 2, 3) == 6
    ws = table.witnesses[(9, 2, 3)]
    assert 0 < len(ws) <= 4
    f3 = field_make(3)
    for w in ws:
        coeffs = [int(x) for x in w.split(",")]
        p = Poly(f3, coeffs)
        assert is_squarefree(p)
        assert analytic_rank(TwistedPower(p, 1)) == 3


def test_csv_and_json_round_trip(tmp_path):
    spec = ScanSpec(q=3, n=1, m=3, lead=2, workers=1)
    table = run_scan(spec)
    csv = table.to_csv()
    assert "m,a,r,count" in csv
    assert "3,2,2,3" in csv
    obj = table.to_json_obj()
    again = RankTable.from_json_obj(json.loads(json.dumps(obj)))
    assert again.to_json_obj() == obj


def test_report_rank_restriction():
    spec = ScanSpec(q=3, n=1, m=3, lead=2, workers=1, report_ranks=(2,))
    table = run_scan(spec)
    lines = table.to_csv().strip().splitlines()
    assert lines[1:] == ["3,2,2,3"]


def test_checkpoint_resume(tmp_path):
    ck = str(tmp_path / "scan.ckpt")
    spec = ScanSpec(q=3, n=1, m=6, lead=2, workers=1, chunk_size=100)
    full = run_scan(spec, checkpoint=ck)
    lines = open(ck).read().strip().splitlines()
    assert len(lines) == 1 + (3**6 + 99) // 100
    # drop the last two chunks and resume
    with open(ck, "w") as fh:
        fh.write("\n".join(lines[:-2]) + "\n")
    resumed = run_scan(spec, checkpoint=ck, resume=True)
    assert resumed.to_json_obj() == full.to_json_obj()
    other = ScanSpec(q=3, n=1, m=6, lead=1, workers=1, chunk_size=100)
    with pytest.raises(ValueError):
        run_scan(other, checkpoint=ck, resume=True)


def test_shift_stable_expand_examples(f3):
    assert shift_stable_expand([0, 1], 3) == Poly(f3, [0, 2, 0, 1])
    assert shift_stable_expand([2, 0, 1], 3) == Poly(f3, [2, 0, 1, 0, 1, 0, 1])
    w = shift_stable_expand([0, 2, 0, 1, 0, 1, 0, 1], 3)
    assert int(w.degree) == 21
    t = TwistedPower(w, 1)
    for d in range(3):
        assert act_on_poly(Mu(d), t).P == w


def test_squarefree_int_helper_matches_poly(rng):
    f3 = field_make(3)
    for _ in range(300):
        m = rng.randrange(0, 9)
        coeffs = [rng.randrange(3) for _ in range(m)] + [rng.randrange(1, 3)]
        assert _squarefree_ints(coeffs, 3) == is_squarefree(Poly(f3, coeffs))


def test_tally_mod_q_structure():
    # counts minus the shift-stable contribution are multiples of q
    spec = ScanSpec(q=3, n=1, m=9, lead=2, workers=2)
    full = run_scan(spec).count(9, 2, 2)
    st = run_scan(ScanSpec(q=3, n=1, m=9, lead=2, mode="shift-stable",
                           workers=1)).count(9, 2, 2)
    assert (full - st) % 3 == 0


def test_coset_audit_basics():
    rep = coset_audit(3, 1, 4)
    assert rep["violations"] == []
    assert rep["coset"] == {"lead": 2, "m_mod_q_minus_1": 1}
    assert rep["subgroup_index"] == 4
    assert rep["on_coset"] == rep["on_coset_rank_ge1"]
    rep2 = coset_audit(2, 1, 4)
    assert rep2["off_coset"] == 0 and rep2["violations"] == []


def test_dim_report_values():
    assert equation_count(1, 5) == 6
    single = dim_report(3, 3, "single")
    assert single["max_feasible_r"] == 3 and single["single_max_r"] == 3
    assert dim_report(3, 4, "single")["feasible"] is False
    fam = dim_report(3, 3, "infinite-family")
    assert fam["max_feasible_r"] == 3 and fam["feasible"]
    assert dim_report(3, 4, "infinite-family")["feasible"] is False
    st = dim_report(3, 2, "shift-stable", m=15)
    assert st["expected_dims"]["lead_-1"]["r2"] == 2
    assert st["expected_dims"]["lead_1"]["r1"] == 3
    st2 = dim_report(3, 1, "shift-stable", m=12)
    assert st2["expected_dims"]["any_lead"]["r1"] == 1
    # m odd: expected dimension of the rank>=2 locus matches (m-1)/2 shape
    s = dim_report(3, 2, "single", m=5)
    assert s["expected_dimension"] == (5 - 1) // 2


def test_audit_failure_reporting_structure():
    spec = ScanSpec(q=3, n=1, m=5, lead=2, workers=1, audit_rate=1.0,
                    audit_cap=5)
    table = run_scan(spec)
    assert table.audits > 0
    assert table.audit_failures == []
