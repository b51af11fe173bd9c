import json

import pytest

from lad.cli import main
from lad.contexts import parse_context
from lad.corpus import ILLEGAL_PROOF, MURDER_CONTEXT

MURDER_SEQUENT = [
    "p \\/ q",
    "p -> (r -> t)",
    "q -> (s -> t)",
    "(r -> t) | (s -> t)",
]


@pytest.fixture
def murder_file(tmp_path):
    path = tmp_path / "murder.ctx"
    path.write_text(MURDER_CONTEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFmt:
    def test_canonical(self, capsys):
        code, out, _ = run(capsys, "fmt", "((p))->(q&p)")
        assert code == 0 and out.strip() == "p -> q & p"

    def test_plain_expands_macros(self, capsys):
        code, out, _ = run(capsys, "fmt", "--plain", "<>p")
        assert code == 0 and out.strip() == "!(p -> _|_)"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--json", "fmt", "<>p")
        assert code == 0 and json.loads(out) == {"formula": "<>p"}

    def test_parse_error_is_exit_2(self, capsys):
        code, _, err = run(capsys, "fmt", "p ->")
        assert code == 2 and err.startswith("error:")


class TestEval:
    def test_lines(self, capsys, murder_file):
        code, out, _ = run(
            capsys, "eval", murder_file, "p \\/ q", "(r -> t) | (s -> t)"
        )
        assert code == 0
        assert out.splitlines() == [
            "p \\/ q: asserted=true denied=false",
            "(r -> t) | (s -> t): asserted=false denied=true",
        ]

    def test_variant_flag(self, capsys, murder_file):
        code, out, _ = run(
            capsys, "--variant", "nelson", "eval", murder_file, "!(p -> (r -> t))"
        )
        assert code == 0 and "asserted=false denied=true" in out

    def test_unknown_atom(self, capsys, murder_file):
        code, _, err = run(capsys, "eval", murder_file, "zz")
        assert code == 2 and "error:" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "eval", "no/such/file.ctx", "p")
        assert code == 2 and "error:" in err


class TestEntail:
    def test_valid(self, capsys):
        code, out, _ = run(capsys, "entail", "p & q", "p")
        assert code == 0 and out.strip() == "valid"

    def test_invalid(self, capsys):
        code, out, _ = run(capsys, "entail", "p \\/ q", "p | q")
        assert code == 1 and out.startswith("invalid")

    def test_bound_error(self, capsys):
        code, _, err = run(capsys, "entail", *MURDER_SEQUENT)
        assert code == 2 and "bound" in err

    def test_bound_flag(self, capsys):
        code, out, _ = run(capsys, "--atom-bound", "5", "entail", *MURDER_SEQUENT)
        assert code == 1 and "01100 10010" in out

    def test_flags_after_subcommand(self, capsys):
        code, out, _ = run(capsys, "entail", "--atom-bound", "5", *MURDER_SEQUENT)
        assert code == 1 and "01100 10010" in out
        code, out, _ = run(capsys, "nnf", "--variant", "nelson", "!(p -> (q | !q))")
        assert code == 0 and out.strip() == "p & ~q & q"

    def test_bound_env(self, capsys, monkeypatch):
        monkeypatch.setenv("LAD_ATOM_BOUND", "5")
        code, _, _ = run(capsys, "entail", *MURDER_SEQUENT)
        assert code == 1

    def test_json_countermodel(self, capsys):
        code, out, _ = run(capsys, "--json", "entail", "p \\/ q", "p | q")
        assert code == 1
        payload = json.loads(out)
        assert payload["valid"] is False
        assert payload["countermodel"]["worlds"] == ["01", "10"]


class TestCountermodel:
    def test_output_round_trips(self, capsys):
        code, out, _ = run(
            capsys, "--atom-bound", "5", "countermodel", *MURDER_SEQUENT
        )
        assert code == 0
        ctx = parse_context(out)
        assert [w.bits() for w in ctx.worlds()] == ["01100", "10010"]

    def test_none_found(self, capsys):
        code, out, _ = run(capsys, "countermodel", "p", "p")
        assert code == 1 and out.strip() == "none"


class TestEquivPersistent:
    def test_equiv(self, capsys):
        assert run(capsys, "equiv", "p & q", "q & p")[0] == 0
        assert run(capsys, "equiv", "p", "q")[0] == 1

    def test_strong_flag_separates(self, capsys):
        chi = "!(p -> (q | !q))"
        nnf_chi = "<>(p & ~q & q)"
        assert run(capsys, "equiv", chi, nnf_chi)[0] == 0
        assert run(capsys, "equiv", "--strong", chi, nnf_chi)[0] == 1

    def test_persistent(self, capsys):
        code, out, _ = run(capsys, "persistent", "p -> q")
        assert code == 0 and out.strip() == "persistent"

    def test_not_persistent_prints_witness(self, capsys):
        code, out, _ = run(capsys, "--json", "persistent", "!(p -> q)")
        assert code == 1
        payload = json.loads(out)
        assert payload["persistent"] is False
        assert payload["context"]["worlds"] == ["00", "10"]
        assert payload["subcontext"]["worlds"] == ["00"]


class TestTransformCommands:
    def test_weakneg(self, capsys):
        code, out, _ = run(capsys, "weakneg", "p -> q")
        assert code == 0 and out.strip() == "<>(p & <>!q)"

    def test_nnf_variants(self, capsys):
        chi = "!(p -> (q | !q))"
        assert run(capsys, "nnf", chi)[1].strip() == "<>(p & ~q & q)"
        assert (
            run(capsys, "--variant", "nelson", "nnf", chi)[1].strip()
            == "p & ~q & q"
        )

    def test_charform_single(self, capsys, tmp_path):
        f = tmp_path / "c.ctx"
        f.write_text("p q\n01\n10\n")
        code, out, _ = run(capsys, "charform", str(f))
        assert code == 0 and out.strip() == "~p /\\ q (+) p /\\ ~q"

    def test_charform_set(self, capsys, tmp_path):
        a = tmp_path / "a.ctx"
        b = tmp_path / "b.ctx"
        a.write_text("p\n1\n")
        b.write_text("p\n0\n1\n")
        code, out, _ = run(capsys, "charform", str(a), str(b))
        assert code == 0 and " | " in out

    def test_charform_sigma(self, capsys, tmp_path):
        f = tmp_path / "w.ctx"
        f.write_text("p q\n10\n")
        code, out, _ = run(capsys, "charform", "--sigma", str(f))
        assert code == 0 and out.strip() == "p /\\ ~q"

    def test_sigma_needs_single_world(self, capsys, tmp_path):
        f = tmp_path / "c.ctx"
        f.write_text("p\n0\n1\n")
        code, _, err = run(capsys, "charform", "--sigma", str(f))
        assert code == 2 and "error:" in err


class TestCheck:
    def test_ok(self, capsys, tmp_path):
        from lad.corpus import ACCEPTED_PROOFS

        f = tmp_path / "em.prf"
        f.write_text(ACCEPTED_PROOFS["em.prf"])
        code, out, _ = run(capsys, "check", str(f), "--sound")
        assert code == 0 and "sound" in out

    def test_violations(self, capsys, tmp_path):
        f = tmp_path / "illegal.prf"
        f.write_text(ILLEGAL_PROOF)
        code, out, _ = run(capsys, "check", str(f))
        assert code == 1
        assert out.splitlines() == [
            "line 7: UNSAFE_CITATION: line 1 brings an unsafe formula into a round subproof",
            "line 13: UNSAFE_CITATION: line 1 brings an unsafe formula into a round subproof",
        ]

    def test_parse_error(self, capsys, tmp_path):
        f = tmp_path / "bad.prf"
        f.write_text("p ; made_up_rule\n")
        code, _, err = run(capsys, "check", str(f))
        assert code == 2 and "error:" in err

    def test_json_payload(self, capsys, tmp_path):
        f = tmp_path / "illegal.prf"
        f.write_text(ILLEGAL_PROOF)
        code, out, _ = run(capsys, "--json", "check", str(f))
        assert code == 1
        payload = json.loads(out)
        assert payload["ok"] is False and payload["lines"] == 15
        assert [v["line"] for v in payload["violations"]] == [7, 13]
