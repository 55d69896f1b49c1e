import itertools
import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def two_sparse_codes(n):
    """Every 2-sparse code on n neurons, as support sets."""
    from sparsecodes import NeuralCode

    atoms = [frozenset([i]) for i in range(1, n + 1)]
    atoms += [frozenset(p) for p in itertools.combinations(range(1, n + 1), 2)]
    for mask in range(1 << len(atoms)):
        sups = {frozenset()} | {atoms[k] for k in range(len(atoms)) if mask >> k & 1}
        yield NeuralCode(n, frozenset(sups))


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
