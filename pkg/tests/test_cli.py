import csv
import io
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steercoh import cli, config as cfg, scenarios, verify
from steercoh.steering import msc_l1_closed_form


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


configs = st.builds(
    cfg.ScenarioConfig,
    alpha_sq=st.floats(0, 1),
    family=st.sampled_from(cfg.FAMILIES),
    gamma_over_lambda=st.floats(1e-3, 10),
    n_a=st.integers(1, 9),
    n_b=st.integers(1, 9),
    t_lambda_max=st.floats(0.1, 100),
    steps=st.integers(2, 5000),
    measures=st.lists(st.sampled_from(cfg.MEASURES), unique=True).map(tuple),
    output_path=st.text(st.characters(min_codepoint=33, max_codepoint=126), min_size=1, max_size=12),
    format=st.sampled_from(cfg.FORMATS),
)


class TestConfig:
    @given(configs)
    def test_round_trip(self, c):
        assert cfg.parse(cfg.render(c)) == c

    def test_defaults(self):
        c = cfg.ScenarioConfig()
        assert (c.alpha_sq, c.family, c.gamma_over_lambda, c.steps, c.t_lambda_max) == (0.5, "Psi", 0.2, 1000, 15.0)

    def test_unknown_key(self):
        with pytest.raises(cfg.ConfigError, match="gama"):
            cfg.parse('{"gama": 0.2}')

    @pytest.mark.parametrize(
        "data,field",
        [({"alpha_sq": 1.5}, "alpha_sq"), ({"n_a": 0}, "n_a"), ({"steps": 1}, "steps"),
         ({"measures": ["bogus"]}, "measures"), ({"format": "xml"}, "format"),
         ({"gamma_over_lambda": 0}, "gamma_over_lambda"), ({"n_b": 2.0}, "n_b")],
    )
    def test_field_named_in_error(self, data, field):
        with pytest.raises(cfg.ConfigError, match=field):
            cfg.from_dict(data)

    def test_bad_json(self):
        with pytest.raises(cfg.ConfigError):
            cfg.parse("{nope")


class TestSweep:
    def test_initial_row_and_columns(self, capsys):
        code, out, _ = run(capsys, "sweep", "--steps", "5", "--measures", "msc_l1,concurrence_ab")
        assert code == 0
        assert out.splitlines()[0] == ",".join(scenarios.SWEEP_COLUMNS)
        rows = parse_csv(out)
        assert len(rows) == 5
        assert float(rows[0]["msc_l1"]) == 1.0
        assert float(rows[0]["concurrence_ab"]) == 1.0
        assert rows[0]["msc_re"] == ""

    def test_msc_matches_closed_form_from_row(self, capsys):
        code, out, _ = run(capsys, "sweep", "--steps", "200", "--n-a", "3", "--n-b", "4",
                           "--alpha-sq", "0.3", "--measures", "msc_l1")
        assert code == 0
        a, b = math.sqrt(0.3), math.sqrt(0.7)
        for r in parse_csv(out):
            recomputed = msc_l1_closed_form(a, float(r["p_a"]), b, float(r["p_b"]))
            assert abs(float(r["msc_l1"]) - recomputed) <= 1e-12

    def test_markovian_monotone(self):
        rows = scenarios.sweep(cfg.ScenarioConfig(measures=("msc_l1",)))
        vals = [r.msc_l1 for r in rows]
        assert all(y <= x for x, y in zip(vals, vals[1:]))

    def test_determinism(self, tmp_path, capsys):
        texts = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            assert run(capsys, "sweep", "--steps", "40", "--n-a", "4", "--output", str(path))[0] == 0
            texts.append(path.read_bytes())
        assert texts[0] == texts[1]
        assert b"\r" not in texts[0]
        assert (tmp_path / "a.nonmarkov.csv").exists()

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "sweep", "--steps", "3", "--format", "json", "--measures", "msc_l1")
        data = json.loads(out)
        assert code == 0 and len(data) == 3
        assert list(data[0]) == list(scenarios.SWEEP_COLUMNS)
        assert data[0]["msc_re"] is None

    def test_config_file_with_override(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"steps": 7, "measures": ["msc_l1"], "n_b": 2}))
        code, out, _ = run(capsys, "sweep", "--config", str(path), "--steps", "4")
        assert code == 0
        assert len(parse_csv(out)) == 4

    def test_sidecar_to_stderr(self, capsys):
        code, _, err = run(capsys, "sweep", "--steps", "3", "--measures", "msc_l1,nonmarkov")
        assert code == 0
        assert err.splitlines()[0] == ",".join(scenarios.NONMARKOV_COLUMNS)


class TestExitCodes:
    def test_invalid_config(self, tmp_path, capsys):
        path = tmp_path / "c.json"
        path.write_text('{"typo": 1}')
        code, _, err = run(capsys, "sweep", "--config", str(path))
        assert code == 1 and "typo" in err

    def test_invalid_flag_value(self, capsys):
        code, _, err = run(capsys, "sweep", "--alpha-sq", "2")
        assert code == 1 and "alpha_sq" in err

    def test_unknown_flag(self, capsys):
        assert run(capsys, "sweep", "--bogus")[0] == 1

    def test_unwritable_output(self, tmp_path, capsys):
        assert run(capsys, "sweep", "--steps", "2", "--output", str(tmp_path / "missing" / "x.csv"))[0] == 3

    def test_missing_config_file(self, tmp_path, capsys):
        assert run(capsys, "sweep", "--config", str(tmp_path / "nope.json"))[0] == 3


class TestSurface:
    def test_rows(self, capsys):
        code, out, _ = run(capsys, "surface", "--grid", "11", "--measures", "msc_l1")
        rows = parse_csv(out)
        assert code == 0 and len(rows) == 121
        grid = [[float(rows[11 * i + j]["msc_l1"]) for j in range(11)] for i in range(11)]
        assert float(rows[0]["p_a"]) == 0.0 and float(rows[1]["p_b"]) == 0.1
        assert grid[10][10] == pytest.approx(1.0)
        assert all(grid[i][0] == 0.0 for i in range(11))
        line = grid[5]
        diffs = [y - x for x, y in zip(line, line[1:])]
        assert max(diffs) - min(diffs) < 1e-11  # 12-digit rendering

    def test_grid_too_small(self, capsys):
        assert run(capsys, "surface", "--grid", "5")[0] == 1

    def test_relative_entropy_column(self):
        rows = scenarios.surface(cfg.ScenarioConfig(), 11)
        assert all(0 <= r["msc_re"] <= 1 + 1e-12 for r in rows)
        assert rows[-1]["msc_re"] == pytest.approx(1.0, abs=1e-9)


class TestNonmarkov:
    def test_gamma_02(self, capsys):
        code, out, _ = run(capsys, "nonmarkov", "--gamma", "0.2", "--n-list", "1,2,3,4,5")
        rows = parse_csv(out)
        assert code == 0
        assert [r["regime"] for r in rows[:2]] == ["Markovian", "Markovian"]
        assert all(float(r["n_bri"]) == 0 and float(r["n_blp"]) == 0 for r in rows[:2])
        assert all(r["n_cr"] == "3" for r in rows)
        bri = [float(r["n_bri"]) for r in rows[2:]]
        assert bri[0] < bri[1] < bri[2]
        for r in rows[2:]:
            assert float(r["n_blp_numeric"]) == pytest.approx(float(r["n_blp"]), rel=1e-3)

    def test_gamma_2(self, capsys):
        code, out, _ = run(capsys, "nonmarkov", "--gamma", "2.0", "--n-list", "1")
        row = parse_csv(out)[0]
        assert code == 0 and row["regime"] == "NonMarkovian"
        assert float(row["n_bri"]) == pytest.approx(0.16303, abs=1e-5)

    def test_bad_n_list(self, capsys):
        assert run(capsys, "nonmarkov", "--n-list", "1,x")[0] == 1


class TestVerify:
    def test_all_pass_and_deterministic(self, capsys):
        code, first, _ = run(capsys, "verify", "--samples", "20", "--seed", "5")
        _, second, _ = run(capsys, "verify", "--samples", "20", "--seed", "5")
        assert code == 0
        assert first == second
        assert first.splitlines()[-1] == f"{len(verify.CHECKS)}/{len(verify.CHECKS)} checks passed"

    def test_injected_failure(self, capsys):
        code, out, _ = run(capsys, "verify", "--samples", "5", "--inject-failure", "semigroup")
        assert code == 2
        assert any(line.startswith("FAIL semigroup") for line in out.splitlines())

    def test_unknown_injection(self, capsys):
        assert run(capsys, "verify", "--samples", "5", "--inject-failure", "nope")[0] == 1

    def test_default_run_passes(self):
        assert all(r.passed for r in verify.run_checks(0, 200))
