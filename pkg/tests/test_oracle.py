"""Brute-force oracle: rank certificates, lattice search, refusals."""

import random
from fractions import Fraction
from types import SimpleNamespace

import pytest

from parahol.classify import HolonomyDatum, Verdict, classify, conjugate_by_exp
from parahol.errors import OracleRefusedError, UnsupportedDepthError
from parahol.families import build_conformal, build_cr
from parahol.oracle import brute_force_oracle
from parahol.sampling import comparison_instances, planted_instance
from parahol.scales import default_scale


@pytest.fixture(scope="module")
def so41():
    return build_conformal(3, 0)


@pytest.fixture(scope="module")
def su21():
    return build_cr(1)


def test_zero_element_inessential_with_zero_witness(so41):
    report = brute_force_oracle(HolonomyDatum(so41, so41.zero()), grid_steps=1)
    assert report.decided
    assert report.classification.verdict is Verdict.INESSENTIAL
    assert report.classification.witness == so41.zero()


def test_rank_certificate_matches_classify_on_catalog(so41):
    for named in ({"D": 1}, {"M_12": 1}, {"K_1": 1}, {"M_12": 1, "K_1": 1}):
        datum = HolonomyDatum(so41, so41.element(named))
        ours = classify(datum)
        report = brute_force_oracle(datum, grid_steps=0)
        assert report.decided
        assert report.method == "rank-certificate"
        assert report.classification.verdict is ours.verdict


def test_rank_certificate_witness_verifies(so41):
    x = so41.element({"M_12": 1, "K_1": 1})
    datum = HolonomyDatum(so41, x)
    report = brute_force_oracle(datum, grid_steps=0)
    witness = report.classification.witness
    conj = conjugate_by_exp(witness, x) if not witness.is_zero else x
    assert conj.component(1).is_zero


def test_lattice_certifies_planted_depth_two(su21):
    scale = default_scale(su21)
    rng = random.Random(88)
    for _ in range(15):
        x = planted_instance(su21, scale, rng)
        datum = HolonomyDatum(su21, x, scale)
        report = brute_force_oracle(datum, grid_radius=Fraction(1), grid_steps=1)
        assert report.decided
        ours = classify(datum)
        assert report.classification.verdict is ours.verdict
        # the lattice witness itself must verify exactly
        w = report.classification.witness
        conj = conjugate_by_exp(w, x) if not w.is_zero else x
        assert conj.component(1).is_zero and conj.component(2).is_zero


def test_lattice_leaves_essential_instances_undecided(su21):
    datum = HolonomyDatum(su21, su21.element({"J_1": 1, "K_1": 1}))
    report = brute_force_oracle(datum, grid_radius=Fraction(1), grid_steps=2)
    assert not report.decided
    assert report.classification is None
    assert report.points_checked == 5 ** 3


def test_agreement_on_comparison_stream(su21):
    scale = default_scale(su21)
    elements = comparison_instances(su21, scale, 40, seed=7)
    certified = agreements = 0
    for x in elements:
        datum = HolonomyDatum(su21, x, scale)
        report = brute_force_oracle(datum, grid_steps=1)
        if not report.decided:
            continue
        certified += 1
        if report.classification.verdict is classify(datum).verdict:
            agreements += 1
    assert certified >= 20   # planted half guarantees a non-vacuous set
    assert agreements == certified


def test_refuses_large_positive_part():
    fake_algebra = SimpleNamespace(
        k=1, indices_of_grade=lambda g: tuple(range(9)) if g == 1 else ())
    fake = SimpleNamespace(algebra=fake_algebra, x=None, scale=None)
    with pytest.raises(OracleRefusedError):
        brute_force_oracle(fake)


def test_refuses_depth_three():
    fake = SimpleNamespace(algebra=SimpleNamespace(k=3), x=None, scale=None)
    with pytest.raises(UnsupportedDepthError):
        brute_force_oracle(fake)


def test_refuses_oversized_lattice(su21):
    datum = HolonomyDatum(su21, su21.zero())
    with pytest.raises(OracleRefusedError):
        brute_force_oracle(datum, grid_steps=80)


def test_report_serialization(so41):
    report = brute_force_oracle(HolonomyDatum(so41, so41.element({"D": 1})),
                                grid_steps=0)
    doc = report.to_json_dict()
    assert doc["decided"] is True
    assert doc["method"] == "rank-certificate"
    assert doc["classification"]["verdict"] == "Essential"
