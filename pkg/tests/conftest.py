import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE: list[str] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    verdict = "PASS" if rep.passed else "FAIL"
    _ACCEPTANCE.append(f"criterion {number:>2} {verdict}  {title}" + (f"  [{detail}]" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
