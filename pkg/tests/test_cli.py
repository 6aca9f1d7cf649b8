import json
import subprocess
import sys

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from stabilab import cache
from stabilab.cli import main


def run(capsys, *argv, perturb=None):
    code = main(list(argv), perturb=perturb)
    out = capsys.readouterr().out
    return code, out


def doc(out):
    return json.loads(out)


@pytest.fixture
def cdir(tmp_path):
    return str(tmp_path / "cache")


def test_cache_list_on_fresh_directory(capsys, cdir):
    code, out = run(capsys, "cache", "list", "--cache-dir", cdir)
    assert code == 0 and doc(out)["result"]["entries"] == []


def test_cache_clear_is_idempotent(capsys, cdir):
    run(capsys, "verify", "weyl", "--n", "4", "--cache-dir", cdir)
    for _ in range(2):
        code, _ = run(capsys, "cache", "clear", "--cache-dir", cdir)
        assert code == 0
        code, out = run(capsys, "cache", "list", "--cache-dir", cdir)
        assert doc(out)["result"]["entries"] == []


def test_weyl_run_leaves_character_table(capsys, cdir):
    code, _ = run(capsys, "verify", "weyl", "--n", "6", "--cache-dir", cdir)
    assert code == 0
    _, out = run(capsys, "cache", "list", "--cache-dir", cdir)
    assert "chartable_n6.json" in doc(out)["result"]["entries"]


def test_groebner_runs_are_cached(capsys, cdir):
    run(capsys, "verify", "conjecture2", "--k", "2", "--n", "3", "--m", "2", "--cache-dir", cdir)
    _, out = run(capsys, "cache", "list", "--cache-dir", cdir)
    assert any(e.startswith("groebner_k2_n3_") for e in doc(out)["result"]["entries"])


def test_cache_path_and_environment(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "env"))
    _, out = run(capsys, "cache", "path")
    assert doc(out)["result"]["cache_dir"] == str(tmp_path / "env")
    _, out = run(capsys, "cache", "path", "--cache-dir", str(tmp_path / "flag"))
    assert doc(out)["result"]["cache_dir"] == str(tmp_path / "flag")


def test_unusable_cache_directory(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, out = run(capsys, "cache", "clear", "--cache-dir", str(blocker))
    assert code == 3
    code, out = run(capsys, "verify", "theorem1", "--k", "1", "--n", "2", "--cache-dir", str(blocker))
    assert code == 3 and doc(out)["partial"] is True


def test_corollary2_table(capsys, cdir):
    code, out = run(capsys, "verify", "corollary2", "--k", "2", "--n", "5", "--cache-dir", cdir)
    assert code == 0
    d = doc(out)
    assert d["schema"] == "1"
    rows = [r for r in d["records"] if r["statement"] == "corollary2"]
    assert {(r["params"]["r"], r["params"]["m"], r["params"]["n"]) for r in rows} == {
        (r, m, n) for n in range(1, 6) for m in range(1, n + 1) for r in range(m + 1)}
    assert all(r["pass"] for r in d["records"])


def test_theorem1_passes(capsys, cdir):
    code, out = run(capsys, "verify", "theorem1", "--k", "2", "--n", "3", "--cache-dir", cdir)
    assert code == 0
    assert {s["statement"] for s in doc(out)["summary"]} == {"theorem1", "first-relation"}


def test_conjecture2_strict(capsys, cdir):
    code, _ = run(capsys, "verify", "conjecture2", "--k", "2", "--n", "4", "--m", "3", "--strict",
                  "--cache-dir", cdir)
    assert code == 0
    args = ("verify", "conjecture2", "--k", "2", "--n", "4", "--m", "3", "--significance", "reversed",
            "--cache-dir", cdir)
    code, out = run(capsys, *args)
    assert code == 0
    failing = [r for r in doc(out)["records"] if not r["pass"]]
    assert failing and all("monomial" in r["params"] for r in failing)
    code, _ = run(capsys, *args, "--strict")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["verify", "bogus"],
    ["verify", "theorem1", "--k", "x", "--n", "2"],
    ["verify", "theorem1", "--k", "2"],
    ["verify", "conjecture2", "--k", "2", "--n", "3", "--m", "3"],
    ["verify", "quasifree", "--k", "2", "--n", "3", "--m", "4"],
    ["dim", "weyl", "--n", "3"],
    ["series", "product", "--k", "1"],
    ["verify", "weyl", "--n", "3", "--threads", "0"],
    ["dim", "g", "--lambda", "1,2", "--mu", "2"],
    [],
])
def test_usage_errors(capsys, cdir, argv):
    code, _ = run(capsys, *argv, *(["--cache-dir", cdir] if argv else []))
    assert code == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0


def test_degree_cap_gives_partial_report(capsys, cdir):
    code, out = run(capsys, "verify", "theorem1", "--k", "2", "--n", "3", "--max-degree", "3",
                    "--cache-dir", cdir)
    assert code == 3
    d = doc(out)
    assert d["partial"] is True and d["records"] == []


def test_time_budget_gives_partial_report(capsys, cdir):
    code, out = run(capsys, "verify", "quasifree", "--k", "1,2", "--n", "2-3", "--time-budget", "0",
                    "--cache-dir", cdir)
    assert code == 3
    assert doc(out)["partial"] is True


def test_byte_identical_reports(cdir, tmp_path):
    texts, bodies = [], []
    for threads in ("1", "1", "3"):
        out = tmp_path / "report.json"
        code = main(["verify", "quasifree", "--k", "1,2", "--n", "2-3", "--threads", threads,
                     "--cache-dir", cdir, "--out", str(out)])
        assert code == 0
        d = json.loads(out.read_text())
        d.pop("timing")
        texts.append(json.dumps(d, sort_keys=True, indent=2))
        bodies.append((d["summary"], d["records"]))
    assert texts[0] == texts[1]
    assert bodies[0] == bodies[2]


def test_csv_output(capsys, cdir):
    code, out = run(capsys, "verify", "coinvariants", "--k", "1", "--n", "3", "--format", "csv",
                    "--cache-dir", cdir)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "statement,params,lhs,rhs,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_series_and_dims(capsys, cdir):
    _, out = run(capsys, "series", "product", "--k", "1", "--d", "8", "--cache-dir", cdir)
    assert doc(out)["result"]["coefficients"] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    _, out = run(capsys, "series", "plethysm", "--mu", "1,1", "--k", "1", "--d", "3", "--cache-dir", cdir)
    assert [t["coeff"] for t in doc(out)["result"]["terms"]] == ["1", "1", "2"]
    _, out = run(capsys, "series", "hilbert", "--k", "2", "--n", "3", "--d", "3", "--cache-dir", cdir)
    res = doc(out)["result"]
    assert res["harmonics"] == res["coinvariants"] == [1, 4, 7, 4]
    _, out = run(capsys, "dim", "invariants", "--n", "3", "--k", "2", "--d", "3", "--method", "both",
                 "--cache-dir", cdir)
    assert doc(out)["result"]["value"] == 14
    _, out = run(capsys, "dim", "weyl", "--lambda", "2,1", "--n", "4", "--cache-dir", cdir)
    assert doc(out)["result"]["value"] == 1
    _, out = run(capsys, "dim", "g", "--lambda", "2", "--mu", "2", "--cache-dir", cdir)
    assert doc(out)["result"]["value"] == 2
    _, out = run(capsys, "dim", "mL", "--mu", "3", "--L", "1,1", "--cache-dir", cdir)
    assert doc(out)["result"]["value"] == 2
    code, out = run(capsys, "dim", "g", "--lambda", "2", "--mu", "2", "--format", "csv", "--cache-dir", cdir)
    assert code == 0 and out.splitlines()[0] == "key,value"


def test_other_verifiers_pass(capsys, cdir):
    for argv in (["verify", "gstab", "--n", "5", "--r", "2"],
                 ["verify", "multigraded", "--k", "2", "--n", "4", "--r", "2"],
                 ["verify", "quasifree", "--k", "2", "--n", "3", "--index", "generators"],
                 ["verify", "coinvariants", "--k", "2", "--n", "3"]):
        code, out = run(capsys, *argv, "--cache-dir", cdir)
        assert code == 0, argv
        assert doc(out)["records"]


class Injector:
    """Perturb the left-hand side of chosen instance numbers."""

    def __init__(self, targets):
        self.targets = set(targets)
        self.count = 0
        self.hit: list[str] = []

    def __call__(self, statement, params, lhs):
        idx = self.count
        self.count += 1
        if idx in self.targets:
            self.hit.append(statement)
            return lhs + 1
        return lhs


@given(st.sets(st.integers(0, 30), max_size=3), st.booleans())
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_exit_code_contract(capsys, tmp_path, targets, strict):
    # quasifree at n = 4 mixes theorem reports (m <= 3) with conjecture reports (m = 4)
    inj = Injector(targets)
    argv = ["verify", "quasifree", "--k", "1", "--n", "4", "--cache-dir", str(tmp_path / "c")]
    if strict:
        argv.append("--strict")
    code, out = run(capsys, *argv, perturb=inj)
    kinds = {s["statement"] + str(s["grid"]["m"]): s["kind"] for s in doc(out)["summary"]}
    failed = [s for s in doc(out)["summary"] if not s["pass"]]
    theorem_failed = any(s["kind"] == "theorem" for s in failed)
    conjecture_failed = any(s["kind"] == "conjecture" for s in failed)
    assert bool(failed) == bool(inj.hit)
    assert kinds
    if theorem_failed or (strict and conjecture_failed):
        assert code == 1
    else:
        assert code == 0


def test_injected_theorem_failure_is_located(capsys, cdir):
    def bump(statement, params, lhs):
        return lhs + 1 if statement == "weyl" and params["lambda"] == (2, 1) and params["n"] == 5 else lhs

    code, out = run(capsys, "verify", "weyl", "--n", "5", "--cache-dir", cdir, perturb=bump)
    assert code == 1
    bad = [r for r in doc(out)["records"] if not r["pass"]]
    assert bad and all(r["params"]["lambda"] == [2, 1] and r["params"]["n"] == 5 for r in bad)


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "stabilab", "dim", "g", "--lambda", "1", "--mu", "2,1",
                           "--cache-dir", str(tmp_path)], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["value"] == 1
