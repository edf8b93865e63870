"""
Tests for the command-line interface.
"""

import json
from typing import Any, Dict, List

import pytest

from cli import app

LATTICE = '{"ambient": 2, "rows": [[2, 0], [0, 3]]}'


def payloads(output: str) -> List[Dict[str, Any]]:
    """JSON lines of a command's output; diagnostics are skipped."""
    return [json.loads(line) for line in output.splitlines() if line.startswith("{")]


def run(runner, args):
    result = runner.invoke(app, args)
    return result, payloads(result.stdout)


class TestElementCommands:
    """Tests for eval and the Weyl toolkit."""

    def test_commutator(self, runner):
        result, out = run(runner, ["eval", "--ring", "weyl", "d*x - x*d"])
        assert result.exit_code == 0
        assert out == [{"result": "1"}]

    def test_normal_order(self, runner):
        _, out = run(runner, ["eval", "-r", "weyl", "d*x"])
        assert out[0]["result"] == "x*d+1"

    def test_fourier(self, runner):
        _, out = run(runner, ["weyl", "fourier", "x"])
        assert out[0]["result"] == "-d"

    def test_member(self, runner):
        args = ["weyl", "member", "x*d^2 + d", "--ideal", "d"]
        result, out = run(runner, args)
        assert result.exit_code == 0
        assert out[0] == {"member": True, "normal_form": "0"}

    def test_parse_error(self, runner):
        result, out = run(runner, ["eval", "--ring", "weyl", "x +"])
        assert result.exit_code == 1
        assert out[0]["type"] == "ParseError"

    def test_ring_mismatch(self, runner):
        result, out = run(runner, ["eval", "x"])
        assert result.exit_code == 1
        assert out[0]["type"] == "RingMismatchError"


class TestFractionCommands:
    """Tests for fraction arithmetic and units."""

    def test_equal_representatives(self, runner):
        args = ["frac", "eq", "6 | 2", "36 | 12", "--set", "[6]"]
        result, out = run(runner, args)
        assert result.exit_code == 0
        assert out[0] == {"equal": True}

    def test_denominator_outside_set(self, runner):
        result, out = run(runner, ["frac", "add", "4 | 1", "6 | 1", "--set", "[6]"])
        assert result.exit_code == 1
        assert out[0]["type"] == "NotInSetError"

    def test_euler_unit(self, runner):
        args = ["unit", "--set", "theta0", "--frac", "1 | x", "--ring", "weyl"]
        result, out = run(runner, args)
        assert result.exit_code == 0
        assert out[0] == {"unit": True, "inverse": {"den": "x*d+1", "num": "d"}}

    def test_hom_check(self, runner):
        result, out = run(runner, ["hom-check", "--from", "[4]", "--to", "[2]"])
        assert result.exit_code == 0
        assert out[0]["kind"] == "iso"


class TestSaturationCommands:
    """Tests for LSat witnesses and exit codes."""

    def test_witness_found(self, runner):
        result, out = run(runner, ["lsat", "witness", "4", "--set", "[6]"])
        assert result.exit_code == 0
        assert out[0] == {"outcome": "found", "witness": "9"}

    def test_witness_unknown(self, runner):
        args = [
            "--budget-degree",
            "4",
            "lsat",
            "witness",
            "d^2",
            "--set",
            "[x*d]",
            "--ring",
            "weyl",
        ]
        result, out = run(runner, args)
        assert result.exit_code == 2
        assert out[0] == {"outcome": "unknown"}

    def test_generators(self, runner):
        _, out = run(runner, ["lsat", "generators", "--set", "[6]"])
        assert out[0]["normal_form"]["irreducibles"] == ["2", "3"]


class TestLatticeCommands:
    """Tests for the lattice of saturated sets."""

    def test_dot(self, runner):
        result = runner.invoke(app, ["lattice", "dot", "--primes", "2,3,5"])
        assert result.exit_code == 0
        assert result.stdout.startswith("digraph lattice {")
        assert sum("->" in line for line in result.stdout.splitlines()) == 12

    def test_unknown_layout(self, runner):
        result = runner.invoke(app, ["lattice", "dot", "--layout", "spiral"])
        assert result.exit_code == 1

    def test_join(self, runner):
        _, out = run(runner, ["lattice", "join", "primes:2", "coprimes:2,3"])
        assert out[0]["result"] == {
            "ring": "Z",
            "mode": "cofinite",
            "irreducibles": ["3"],
        }


class TestClosureCommands:
    """Tests for closures and the iterated closure driver."""

    def test_lattice_closure(self, runner):
        args = ["closure", "lattice-z", "--lattice", LATTICE, "--set", "primes:2"]
        result, out = run(runner, args)
        assert result.exit_code == 0
        assert out[0]["result"] == {"ambient": 2, "rows": [[1, 0], [0, 3]]}

    def test_factor_bound_from_environment(self, runner):
        args = ["closure", "lattice-z", "--lattice", LATTICE, "--set", "[2021027]"]
        result = runner.invoke(app, args, env={"ORE_FACTOR_BOUND": "100"})
        assert result.exit_code == 1
        assert payloads(result.stdout)[0]["type"] == "FactorizationLimitError"
        result, out = run(runner, args)
        assert result.exit_code == 0
        assert out[0]["result"] == {"ambient": 2, "rows": [[2, 0], [0, 3]]}

    def test_torsion(self, runner):
        module = '{"ambient": 1, "rows": [[12]]}'
        _, out = run(runner, ["torsion", "--module", module, "--set", "primes:2"])
        assert out[0]["invariant_factors"] == [4]
        assert out[0]["is_torsion"] is False

    def test_run_from_file(self, runner, tmp_path):
        plan = {
            "sets": [
                {"kind": "primes", "primes": {"mode": "finite", "irreducibles": ["2"]}},
                {"kind": "primes", "primes": {"mode": "finite", "irreducibles": ["3"]}},
            ],
            "schedule": [0, 1],
        }
        path = tmp_path / "plan.json"
        path.write_text(json.dumps(plan), encoding="utf-8")
        args = ["closure", "run", "--plan", f"@{path}", "--lattice", LATTICE]
        result, out = run(runner, args)
        assert result.exit_code == 0
        assert [line["changed"] for line in out[:4]] == [True, True, False, False]
        assert out[4] == {"verdict": "stabilized"}
        assert out[-1]["result"] == {"ambient": 2, "rows": [[1, 0], [0, 1]]}

    @pytest.mark.parametrize("schedule", [[], [3]])
    def test_run_bad_plan(self, runner, schedule):
        plan = json.dumps(
            {"sets": [{"kind": "monoid", "gens": ["2"]}], "schedule": schedule}
        )
        args = ["closure", "run", "--plan", plan, "--lattice", LATTICE]
        result, out = run(runner, args)
        assert result.exit_code == 1
        assert out[0]["type"] == "ValidationError"
