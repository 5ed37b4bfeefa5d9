import pytest

from conftest import code
from tracecode.code import weight_distribution
from tracecode.errors import HypothesisError
from tracecode.theory import (
    audit_published,
    in_hypothesis,
    parse_enumerator,
    predicted_distribution,
    predicted_length,
    ratio_check,
    ratio_case,
    table_rows,
    verify,
)

ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]
SWEEP = [(p, m) for p in ODD_PRIMES for m in range(2, 13) if in_hypothesis(p, m)]
ENUMERABLE = [
    (3, 2), (3, 3), (3, 5), (3, 6), (3, 7), (3, 8), (3, 9),
    (5, 2), (5, 3), (5, 5), (5, 6), (7, 2), (7, 3), (7, 5), (11, 3), (13, 3),
]


@pytest.mark.parametrize("p,m", SWEEP)
def test_table_self_consistency(p, m):
    pred = predicted_distribution(p, m)
    nz = pred.dist.nonzero
    assert sum(nz.values()) == p**m - 1
    assert sum(w * a for w, a in nz.items()) == (p - 1) * pred.n * p ** (m - 1)
    assert all(a > 0 for a in nz.values())
    assert all(a >= 0 for _, a in table_rows(p, m))


@pytest.mark.parametrize("p,m", ENUMERABLE)
def test_prediction_matches_enumeration(p, m):
    c = code(p, m)
    assert predicted_length(p, m) == c.n
    pred = predicted_distribution(p, m)
    assert weight_distribution(c, "fast").counts == pred.dist.counts
    if c.ctx.q <= 3**8:
        assert weight_distribution(c, "walsh").counts == pred.dist.counts


def test_m4p0_table_at_3_12_by_walsh():
    # the only desk-scale point of the m = 0 mod 4, m_p = 0 table
    c = code(3, 12)
    pred = predicted_distribution(3, 12)
    assert weight_distribution(c, "walsh").counts == pred.dist.counts


def test_lengths():
    assert predicted_length(3, 9) == 6560
    assert predicted_length(5, 6) == 3149
    assert predicted_length(5, 8) == 78749
    with pytest.raises(ValueError):
        predicted_length(4, 3)
    with pytest.raises(ValueError):
        predicted_length(3, 1)


def test_dropped_rows():
    # m = 3, m_p = 0: one row of the odd table vanishes
    for p in (3,):
        pred = predicted_distribution(p, 3)
        assert len(pred.dist.nonzero) == 4 and len(pred.notes) == 1
    # m = 3, m_p != 0, p = 2 mod 3: the (p-1)p^(m-2) row vanishes
    for p in (5, 11, 17, 23):
        pred = predicted_distribution(p, 3)
        assert (p - 1) * p not in pred.dist.counts
        assert len(pred.dist.nonzero) == 4
    for p in (7, 13, 19):
        assert len(predicted_distribution(p, 3).dist.nonzero) == 5
    # m = 2: two weights
    for p in ODD_PRIMES:
        assert len(predicted_distribution(p, 2).dist.nonzero) == 2
        assert len(predicted_distribution(p, 6).dist.nonzero) == 3


def test_hypothesis_gate():
    for m in (4,):
        with pytest.raises(HypothesisError, match="enumeration"):
            predicted_distribution(3, m)
    rep = verify(3, 4)
    assert rep.exit_code == 2
    assert rep.enumerated.nonzero == {18: 6, 24: 72, 27: 2}


@pytest.mark.parametrize("p,m", [pm for pm in SWEEP if ratio_case(*pm)[1]])
def test_ratio_holds_in_scope(p, m):
    pred = predicted_distribution(p, m)
    rep = ratio_check(pred.dist, p, m)
    assert rep.in_scope and rep.passed


def test_ratio_cases():
    seen = {ratio_case(p, m)[0] for p, m in SWEEP if ratio_case(p, m)[1]}
    assert seen == {
        "m odd, m_p=0", "m odd, m_p≠0",
        "m≡2 (mod 4), m_p=0", "m≡2 (mod 4), m_p≠0",
        "m≡0 (mod 4), m_p=0", "m≡0 (mod 4), m_p≠0",
    }
    r = ratio_check(predicted_distribution(3, 3).dist, 3)
    assert (r.w_min, r.w_max, r.passed, r.in_scope) == (4, 7, False, False)
    r = ratio_check(predicted_distribution(3, 9).dist, 3)
    assert (r.w_min, r.w_max, r.passed, r.case) == (4320, 4428, True, "m odd, m_p=0")


def test_published_audit():
    assert parse_enumerator("1+6z^2+2z^3") == [(6, 2), (2, 3)]
    d56 = predicted_distribution(5, 6).dist
    audit = audit_published(5, 6, d56)
    assert audit.status == "transposed"
    d38 = predicted_distribution(3, 8).dist
    audit = audit_published(3, 8, d38)
    assert audit.status == "mismatch"
    assert any("printed 32, enumerated 72" in n for n in audit.notes)
    assert any("6520" in n for n in audit.notes)
    assert audit_published(3, 5, predicted_distribution(3, 5).dist).status == "match"
    assert audit_published(7, 7, predicted_distribution(7, 7).dist) is None


def test_verify_report():
    rep = verify(3, 6, "walsh")
    js = rep.to_json()
    assert rep.exit_code == 0
    assert js["ratio"]["case"] == "m≡2 (mod 4), m_p=0" and js["ratio"]["pass"]
    for key in ("p", "m", "regime", "n_predicted", "n_enumerated",
                "distribution_match", "pless", "ratio", "mismatches"):
        assert key in js
