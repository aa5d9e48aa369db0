import json

import numpy as np
import pytest

from qincompat import Basis, dump_object, fourier_basis, haar_random_basis
from qincompat.cli import main

from conftest import rotation_basis


@pytest.fixture
def qubit_files(tmp_path):
    paths = {}
    for name, b in (
        ("b0", Basis.computational(2)),
        ("narrow", rotation_basis(np.pi / 6)),
        ("wide", rotation_basis(np.pi / 3)),
        ("mub", fourier_basis(2)),
    ):
        p = tmp_path / f"{name}.json"
        dump_object(b, p)
        paths[name] = str(p)
    return paths


def test_compare_holds_exit_zero(qubit_files, capsys):
    code = main(["compare", qubit_files["b0"], qubit_files["narrow"], qubit_files["wide"]])
    out = capsys.readouterr().out
    assert code == 0
    assert "yes" in out
    assert "post-processing matrix" in out


def test_compare_fails_exit_one_with_witness(qubit_files, capsys):
    code = main(["compare", qubit_files["b0"], qubit_files["wide"], qubit_files["narrow"]])
    out = capsys.readouterr().out
    assert code == 1
    assert "witness" in out


def test_compare_machine_format(qubit_files, capsys):
    code = main(
        [
            "compare",
            qubit_files["b0"],
            qubit_files["narrow"],
            qubit_files["wide"],
            "--format",
            "machine",
        ]
    )
    data = json.loads(capsys.readouterr().out)
    assert code == 0
    assert data["holds"] is True
    assert "m" in data
    assert len(data["bloch_angles"]) == 2


def test_report_prints_tolerance_and_quantifiers(qubit_files, capsys):
    code = main(["report", qubit_files["b0"], qubit_files["mub"]])
    out = capsys.readouterr().out
    assert code == 0
    assert "tolerance" in out
    assert "Maassen-Uffink" in out
    assert "fluctuation" in out


def test_report_samples_require_seed(qubit_files, capsys):
    code = main(["report", qubit_files["b0"], qubit_files["mub"], "--samples", "500"])
    assert code == 2


def test_emulate_writes_aux_bases(qubit_files, tmp_path, capsys):
    outdir = tmp_path / "aux"
    code = main(
        [
            "emulate",
            qubit_files["b0"],
            qubit_files["narrow"],
            qubit_files["wide"],
            "--out",
            str(outdir),
        ]
    )
    assert code == 0
    assert len(list(outdir.glob("aux_*.json"))) == 1


def test_emulate_infeasible_exit_two(qubit_files, capsys):
    code = main(["emulate", qubit_files["b0"], qubit_files["wide"], qubit_files["narrow"]])
    assert code == 2


def test_random_and_check_roundtrip(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert main(["random", "--kind", "basis", "-d", "3", "--seed", "5", "--out", str(out)]) == 0
    assert main(["check", str(out)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "nope"}')
    assert main(["check", str(bad)]) == 2


def test_random_is_seed_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["random", "--kind", "povm", "-d", "2", "--n-effects", "3", "--seed", "9", "--out", str(a)])
    main(["random", "--kind", "povm", "-d", "2", "--n-effects", "3", "--seed", "9", "--out", str(b)])
    assert a.read_text() == b.read_text()


def test_parent_cli(tmp_path, capsys):
    d = 2
    comp = tmp_path / "comp.json"
    mub = tmp_path / "mub.json"
    dump_object(Basis.computational(d), comp)
    dump_object(fourier_basis(d), mub)
    code = main(["parent", str(comp), str(mub), "--seed", "1", "--n-bases", "3"])
    assert code == 1
    code = main(["parent", str(comp), str(comp), "--seed", "1", "--n-bases", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "yes" in out


def test_compare_column_stochastic_class(tmp_path, capsys):
    b0 = tmp_path / "b0.json"
    b1 = tmp_path / "b1.json"
    b2 = tmp_path / "b2.json"
    dump_object(Basis.computational(3), b0)
    dump_object(haar_random_basis(3, seed=7), b1)
    dump_object(fourier_basis(3), b2)
    code = main(["compare", str(b0), str(b1), str(b2), "--class", "stoch"])
    assert code == 0
