"""Emit one pass/fail line per acceptance criterion in the terminal summary
(the in-test prints are only visible under -s)."""

_LABELS = {
    "test_tukey_worked_example": "tukey-worked-example",
    "test_closed_form_delta_limits": "closed-form-delta-limits",
    "test_figure_region_sweep": "figure-region-sweep",
    "test_govindarajulu_aging_bundle": "govindarajulu-aging-bundle",
    "test_closed_form_star_condition": "closed-form-star-condition",
    "test_property_suites": "property-suites",
    "test_empirical_identity_and_equivariance": "empirical-identity",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            label = _LABELS.get(name)
            if label:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines.append(f"ACCEPTANCE {label}: {verdict}")
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
