import json
import shutil
import subprocess
import sys
from fractions import Fraction

import pytest

from ihara.cli import main
from ihara.families import banana, complete, path
from ihara.multigraph import Multigraph, deck_to_json, edge_deck, format_graph


def write_graph(tmp_path, G, name="g.txt"):
    p = tmp_path / name
    p.write_text(format_graph(G))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_zeta(tmp_path, capsys):
    code, out, _ = run(capsys, "zeta", write_graph(tmp_path, banana(3)))
    assert code == 0
    assert out["char_poly"] == ["-4", "0", "9", "0", "-6", "0", "1"]
    assert out["zeta_inverse_series"][:5] == ["1", "0", "-6", "0", "9"]
    assert out["bass_identity"] is True
    assert out["girth"] == {"girth": 2, "count": 3}


def test_deck_round_trip(tmp_path, capsys):
    G = Multigraph(3, ((0, 1), (0, 1), (0, 2), (1, 2), (1, 2), (2, 2), (0, 0), (0, 2)))
    code, deck, _ = run(capsys, "deck", write_graph(tmp_path, G))
    assert code == 0 and deck["class_count"] == len(edge_deck(G).cards)
    deck_file = tmp_path / "deck.json"
    deck_file.write_text(json.dumps(deck))
    code, out, _ = run(capsys, "reconstruct", "--deck-file", str(deck_file), "--what", "zeta")
    assert code == 0 and out["from_deck_only"]
    code, direct, _ = run(capsys, "reconstruct", write_graph(tmp_path, G), "--what", "zeta")
    assert out["reconstruction"]["char_poly"] == direct["reconstruction"]["char_poly"]
    assert direct["verdicts"]["char_poly"] == "match"


def test_reconstruct_all_matches(tmp_path, capsys):
    code, out, _ = run(capsys, "reconstruct", write_graph(tmp_path, banana(5)))
    assert code == 0
    assert out["all_match"]
    assert set(out["verdicts"]) == {"char_poly", "N_total", "N", "M", "F", "W", "pf"}


def test_deterministic(tmp_path, capsys):
    path_ = write_graph(tmp_path, banana(5))
    first = run(capsys, "reconstruct", path_, "--from-deck-only")[1]
    second = run(capsys, "reconstruct", path_, "--from-deck-only")[1]
    assert first == second


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "zeta", str(tmp_path / "missing.txt"))[0] == 3
    code, _, err = run(capsys, "reconstruct", write_graph(tmp_path, complete(4)))
    assert code == 1 and "average degree" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n0 1\n")
    assert run(capsys, "zeta", str(bad))[0] == 1
    assert run(capsys, "reconstruct")[0] == 1


def test_corrupted_deck_file(tmp_path, capsys):
    payload = deck_to_json(edge_deck(banana(5)))
    payload["cards"][0]["multiplicity"] = 4
    f = tmp_path / "deck.json"
    f.write_text(json.dumps(payload))
    assert run(capsys, "reconstruct", "--deck-file", str(f))[0] == 1


def test_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", write_graph(tmp_path, banana(5)))
    assert code == 0 and out["all_pass"]
    code, out, _ = run(capsys, "verify", write_graph(tmp_path, path(2)))
    assert out["all_pass"] and out["checks"]["jordan_zero"]["nontrivial_zero_block"]
    code, out, _ = run(capsys, "verify", "--fault", write_graph(tmp_path, complete(4)))
    assert code == 0 and not out["all_pass"]
    assert not out["checks"]["J_symmetry"]["pass"]


def test_verify_random(capsys, monkeypatch):
    monkeypatch.setenv("IHARA_THREADS", "1")
    code, out, _ = run(capsys, "verify", "--random", "4", "--seed", "3", "--r-max", "5")
    assert code == 0 and out["count"] == 4 and out["all_pass"]


def test_probe(capsys):
    code, out, _ = run(capsys, "probe", "--max-edges", "3", "--question", "semisimple")
    assert code == 0 and out["semisimple_with_end_vertex"] == []
    code, out, _ = run(capsys, "probe", "--max-edges", "4", "--question", "single-deletion-zeta")
    assert code == 0
    for c in out["collisions"]:
        assert all(Fraction(d) <= 2 for d in c["average_degrees"])


@pytest.mark.skipif(shutil.which("ihara") is None, reason="console script not installed")
def test_console_script(tmp_path):
    proc = subprocess.run(["ihara", "zeta", write_graph(tmp_path, banana(3))], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["bass_polynomial"] == ["4", "0", "-5", "0", "1"]


def test_module_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ihara.cli", "zeta", str(tmp_path / "missing")], capture_output=True, text=True
    )
    assert proc.returncode == 3
