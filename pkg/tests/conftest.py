from collections import defaultdict

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_criteria = defaultdict(list)
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))
            _titles[m.args[0]] = m.args[1]


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[crit].append((report.nodeid, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_criteria):
        results = [o for _, o in _criteria[crit] if o != "skipped"]
        skipped = len(_criteria[crit]) - len(results)
        passed = results.count("passed")
        verdict = "PASS" if passed == len(results) else "FAIL"
        extra = f", {skipped} not applicable" if skipped else ""
        tr.write_line(f"criterion {crit}: {verdict} ({passed}/{len(results)} checks{extra}) {_titles[crit]}")
