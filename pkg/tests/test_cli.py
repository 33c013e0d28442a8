import json

import pytest

from famalg.algebra import FamilyProduct, OperatorFamily, lift, zero_algebra
from famalg.cli import main
from famalg.fields import Q
from famalg.io import serialize_algebra, serialize_operators, write_algebra
from famalg.search import SearchConfig, find_witnesses
from famalg.semigroup import cyclic_group, trivial_semigroup

from conftest import e1_algebra, e1_rb


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


@pytest.fixture
def files(tmp_path):
    zero = zero_algebra(Q, 2, cyclic_group(2), names=("dot",), index_arity=2, kind="relative-anti-flexible")
    write_algebra(zero, tmp_path / "zero.json")
    w = find_witnesses(SearchConfig("pre-anti-flexible-family", "F3", 2, 2, samples=3000, seed=1, nontrivial=True,
                                    max_witnesses=1))[0]
    write_algebra(w, tmp_path / "witness.json")
    p = w.product("succ")
    entries = dict(p.entries)
    entries[((0,), 0, 0, 0)] = entries.get(((0,), 0, 0, 0), 0) + 1
    write_algebra(w.with_products({"prec": w.product("prec"), "succ": FamilyProduct("succ", 1, 2, entries)},
                                  kind="pre-anti-flexible-family"), tmp_path / "broken.json")
    write_algebra(lift(e1_algebra(), 2), tmp_path / "e1.json")
    (tmp_path / "rb.json").write_bytes(serialize_operators(e1_rb()))
    (tmp_path / "id.json").write_bytes(serialize_operators(OperatorFamily.identity(Q, trivial_semigroup(), 2)))
    (tmp_path / "bad.json").write_text('{"field": "Q",')
    return tmp_path


def test_check_zero(files, capsys):
    code, out = run(capsys, "check", "--kind", "relative-anti-flexible", files / "zero.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["equations"] == ["eq:associatorid"]
    assert doc["version"] == "0.1.0" and len(doc["inputs"][0]["sha256"]) == 64


def test_check_perturbed(files, capsys):
    code, out = run(capsys, "check", files / "broken.json")
    assert code == 1
    assert json.loads(out)["reports"]["check"]["summary"]["violations"] >= 1


def test_json_is_deterministic(files, capsys):
    _, a = run(capsys, "check", files / "broken.json")
    _, b = run(capsys, "check", files / "broken.json")
    assert a == b


def test_text_mode_one_line_per_violation(files, capsys):
    code, out = run(capsys, "check", "--format", "text", "--max-records", "2", files / "broken.json")
    lines = out.strip().splitlines()
    total = json.loads(run(capsys, "check", files / "broken.json")[1])["reports"]["check"]["summary"]["violations"]
    assert code == 1
    assert sum(line.startswith("eq:") for line in lines) == min(total, 2)


def test_bad_input(files, capsys):
    assert run(capsys, "validate", files / "bad.json")[0] == 2
    assert run(capsys, "validate", files / "missing.json")[0] == 2
    assert run(capsys, "check", "--kind", "relative-lie", files / "witness.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_verify_theorem_2_4(files, capsys):
    code, out = run(capsys, "verify-theorem", "--theorem", "2.4", files / "witness.json")
    doc = json.loads(out)
    assert code == 0
    assert [s["stage"] for s in doc["stages"]] == ["hypothesis", "sum"]
    assert all(s["pass"] for s in doc["stages"])


@pytest.mark.parametrize("thm", ["2.8", "2.10", "2.13", "tensor-2.5"])
def test_family_theorems(files, capsys, thm):
    assert run(capsys, "verify-theorem", "--theorem", thm, files / "witness.json")[0] == 0


def test_derive_and_tensor(files, capsys):
    out_path = files / "sum.json"
    assert run(capsys, "derive", "--construction", "sum", "-o", out_path, files / "witness.json")[0] == 0
    assert run(capsys, "check", out_path)[0] == 0
    assert run(capsys, "tensor", "-o", files / "big.json", files / "witness.json")[0] == 0
    code, out = run(capsys, "validate", files / "big.json")
    assert code == 0 and json.loads(out)["algebra"]["dimension"] == 4


def test_rb_subcommand(files, capsys):
    induced = files / "induced.json"
    assert run(capsys, "rb", "--operators", files / "rb.json", "--induce", induced, files / "e1.json")[0] == 0
    assert run(capsys, "check", induced)[0] == 0
    assert run(capsys, "rb", "--variant", "relative", "--operators", files / "id.json", files / "e1.json")[0] == 1
    assert run(capsys, "rb", "--variant", "generalized", "--operators", files / "id.json", files / "e1.json")[0] == 0
    assert run(capsys, "rb", "--variant", "lie", "--operators", files / "id.json", files / "e1.json")[0] == 0


def test_verify_operator_theorems(files, capsys):
    code, out = run(capsys, "verify-theorem", "--theorem", "4.3", "--operators", files / "rb.json", files / "e1.json")
    assert code == 0
    code, out = run(capsys, "verify-theorem", "--theorem", "4.3", "--operators", files / "id.json", files / "e1.json")
    assert code == 1 and json.loads(out)["stages"][-1]["pass"] is False
    code, out = run(capsys, "verify-theorem", "--theorem", "4.6", "--operators", files / "id.json", files / "e1.json")
    assert code == 1 and json.loads(out)["lieRB"]["iffHolds"] is False


def test_search_subcommand(tmp_path, capsys):
    code, out = run(capsys, "search", "--kind", "pre-anti-flexible-family", "--field", "F2", "--dim", "2",
                    "--semigroup-order", "2", "--samples", "2000", "--nontrivial", "--max-witnesses", "3",
                    "--emit-dir", tmp_path / "w")
    assert code == 0
    assert len(json.loads(out)["witnesses"]) == 3
    assert len(list((tmp_path / "w").iterdir())) == 3
