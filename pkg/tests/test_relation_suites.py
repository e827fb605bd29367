"""Golden relation suites: fixtures, structural checks, mutation coverage."""

import pytest

from twistcalc.errors import ConfigurationError
from twistcalc.verify import (AGGREGATE_SUITES, FIXTURE_SUITES,
                              REFUTED_DEPENDENCE_RESIDUAL,
                              REFUTED_DERIVATION_FORM_RESIDUAL,
                              HyperboloidSession, available_suites,
                              load_fixture_records, run_fixture_records,
                              run_suites, verify_relation_suite)

SESSION = HyperboloidSession(order=6)

EXPECTED_SIZES = {
    "hyperboloid-commutation": 24,
    "hyperboloid-leibniz": 9,
    "hyperboloid-wedge": 6,
    "hyperboloid-generators": 3,
    "hyperboloid-quotient": 3,
}


def test_registry_shape():
    names = available_suites()
    assert set(FIXTURE_SUITES) <= set(names)
    assert {"twist-axioms", "rmatrix-exchange", "geometry-tables",
            "gauss-equation"} <= set(names)
    assert "hyperboloid-quotient-variant" not in AGGREGATE_SUITES
    assert set(AGGREGATE_SUITES) <= set(names)


def test_fixture_suites_pass_with_symbolic_parameters():
    for suite, size in EXPECTED_SIZES.items():
        report = verify_relation_suite(suite, SESSION)
        assert report["passed"], [c for c in report["checks"]
                                  if not c["passed"]]
        assert len(report["checks"]) == size
        for check in report["checks"]:
            assert check["residual"] is None


def test_commutation_suite_covers_coordinates_and_derivations():
    ids = {c["id"] for c in
           verify_relation_suite("hyperboloid-commutation", SESSION)["checks"]}
    # each exchange line is instantiated for the coordinate family and for
    # the raised-index derivation family
    assert "y+*y-" in ids and "d+*d-" in ids
    assert "y+*eta0" in ids and "d+*eta0" in ids


def test_variant_quotient_suite_fails_exactly_on_the_dependence_line():
    report = verify_relation_suite("hyperboloid-quotient-variant", SESSION)
    assert not report["passed"]
    failing = [c for c in report["checks"] if not c["passed"]]
    assert [c["id"] for c in failing] == ["tangent-dependence"]
    assert failing[0]["residual"] == REFUTED_DEPENDENCE_RESIDUAL


def test_derivation_form_plain_commutation_is_refuted():
    # the braided exchange law for derivations against one-forms does not
    # collapse to a plain commutator; the sample residual is pinned
    from twistcalc.expressions import render_element
    star = SESSION.star
    alg = SESSION.alg
    dprime = star.gauge_action(alg.d(1), antipode=True)
    residual = star.star(dprime, alg.xi(1)) - star.star(alg.xi(1), dprime)
    assert render_element(residual) == REFUTED_DERIVATION_FORM_RESIDUAL


def test_rmatrix_exchange_suite_passes():
    report = verify_relation_suite("rmatrix-exchange", SESSION)
    assert report["passed"], [c["id"] for c in report["checks"]
                              if not c["passed"]]
    assert len(report["checks"]) == 56


def test_rmatrix_exchange_requires_enough_orders():
    with pytest.raises(ConfigurationError):
        verify_relation_suite("rmatrix-exchange", HyperboloidSession(order=3))


def mutate_sign(text: str) -> str:
    """Flip one sign in a golden expression."""
    if " + " in text:
        return text.replace(" + ", " - ", 1)
    if " - " in text:
        return text.replace(" - ", " + ", 1)
    if text.startswith("-"):
        return text[1:]
    return "-(" + text + ")"


def test_every_single_sign_mutation_is_detected():
    # corrupting any one golden record must produce at least one failure
    # whenever the flip changes the evaluated element at all (a flipped sign
    # on a vanishing square is value-neutral: -0 = 0 stays true)
    parser = SESSION.star_parser
    effective = vacuous = 0
    for suite in EXPECTED_SIZES:
        records = load_fixture_records(FIXTURE_SUITES[suite][0])
        reduce_ideal = FIXTURE_SUITES[suite][1]
        for k, rec in enumerate(records):
            mutated = [dict(r) for r in records]
            side = "rhs" if mutated[k]["rhs"] != "0" else "lhs"
            mutated[k][side] = mutate_sign(mutated[k][side])
            changed = parser.parse(mutated[k][side]) != parser.parse(rec[side])
            report = run_fixture_records(SESSION, mutated,
                                         reduce_ideal=reduce_ideal,
                                         suite=f"{suite}::mutated-{k}")
            if changed:
                effective += 1
                assert not report["passed"], (suite, k)
                failing = [c["id"] for c in report["checks"]
                           if not c["passed"]]
                assert rec["id"] in failing, (suite, k)
            else:
                vacuous += 1
                assert report["passed"], (suite, k)
    assert effective >= 40
    assert vacuous <= 5


def test_run_suites_subset_and_failure_reporting():
    result = run_suites(SESSION, suites=("hyperboloid-commutation",
                                         "hyperboloid-leibniz"))
    assert result["passed"] is True
    assert result["failures"] == 0
    assert result["suites"] == ["hyperboloid-commutation",
                                "hyperboloid-leibniz"]
    assert len(result["reports"]) == 2
    bad = run_suites(SESSION, suites=("hyperboloid-quotient-variant",))
    assert bad["passed"] is False
    assert bad["failures"] == 1


def test_unknown_suite_and_fixture_errors():
    with pytest.raises(ConfigurationError):
        verify_relation_suite("no-such-suite", SESSION)
    with pytest.raises(ConfigurationError):
        load_fixture_records("no-such-fixture")
    with pytest.raises(ConfigurationError):
        run_fixture_records(SESSION, [{"id": "x"}])  # missing lhs/rhs


def test_session_configuration_guards():
    with pytest.raises(ConfigurationError):
        HyperboloidSession(order=1)
    unit = HyperboloidSession(order=4, a=1, b=1)
    unit.require_unit_shape("this test")
    with pytest.raises(ConfigurationError):
        SESSION.require_unit_shape("this test")
