from hypothesis import HealthCheck, settings

# symbolic work is slow and variable; no per-example deadline
settings.register_profile(
    "default",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import MANIFEST, RESULTS, RUNTIME_LIMITS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(MANIFEST):
        if cid not in RESULTS:
            terminalreporter.write_line(f"criterion {cid:>2}: NOT RUN  {MANIFEST[cid]}")
            continue
        passed, seconds = RESULTS[cid]
        limit = RUNTIME_LIMITS.get(cid)
        note = f", limit {limit:g}s" if limit else ""
        terminalreporter.write_line(
            f"criterion {cid:>2}: {'PASS' if passed else 'FAIL'}  {MANIFEST[cid]}  [{seconds:.2f}s{note}]"
        )
