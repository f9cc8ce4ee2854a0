import pytest

from biquat.exactfield import field_from_name
from biquat.instances import t_alpha_tensor, transpose_m4
from biquat.verify import CHAR2_ONLY, ODD_ONLY, VerifyConfig, applicable_checks, format_summary, metabolic_idempotents_f2, run_verification


@pytest.mark.parametrize("name", ["F2", "F3", "F4", "F5", "Q", "F2t"])
def test_short_runs_pass(name):
    field = field_from_name(name)
    config = VerifyConfig(field, trials=3 if name != "Q" else 2, seed=5)
    tallies = run_verification(config)
    assert all(t.failed == 0 for t in tallies.values()), format_summary(config, tallies)
    assert sum(t.passed for t in tallies.values()) > 0
    summary = format_summary(config, tallies)
    assert all(label in summary for label in applicable_checks(field))


def test_applicable_checks_follow_characteristic():
    even = applicable_checks(field_from_name("F4"))
    odd = applicable_checks(field_from_name("F5"))
    assert set(CHAR2_ONLY) <= set(even) and not set(ODD_ONLY) & set(even)
    assert set(ODD_ONLY) <= set(odd) and not set(CHAR2_ONLY) & set(odd)


def test_zero_trials():
    config = VerifyConfig(field_from_name("F3"), trials=0)
    tallies = run_verification(config)
    assert all(t.passed == t.failed == 0 for t in tallies.values())


def test_metabolic_idempotents_over_f2():
    F2 = field_from_name("F2")
    # the transpose over F2 is metabolic; T_1 (x) T_1 is the same involution
    assert len(metabolic_idempotents_f2(transpose_m4(F2))) > 0
    assert len(metabolic_idempotents_f2(t_alpha_tensor(F2, 1, 1))) > 0
