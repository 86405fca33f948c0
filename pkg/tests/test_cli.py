import json

import pytest

from sdeslab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_subkeys_line(capsys):
    code, out, _ = run(capsys, "subkeys", "--key", "1010000010")
    assert code == 0
    assert out == "K1=10100100 K2=01000011\n"


def test_encrypt_block_known_answer(capsys):
    code, out, _ = run(capsys, "encrypt", "--key", "0000000000", "--block", "00000000")
    assert code == 0 and out.strip() == "11110000"


def test_encrypt_hex_byte(capsys):
    code, out, _ = run(capsys, "encrypt", "--key", "0000000000", "--hex", "00")
    assert code == 0 and out.strip() == "f0"


def test_decrypt_round_trip(capsys, tmp_path):
    plain = tmp_path / "plain.txt"
    plain.write_bytes(b"attack at dawn, bring snacks")
    ct = tmp_path / "ct.bin"
    rt = tmp_path / "rt.txt"
    code, _, _ = run(capsys, "encrypt", "--key", "1110001110",
                     "--infile", str(plain), "--out-file", str(ct))
    assert code == 0
    code, _, _ = run(capsys, "decrypt", "--key", "1110001110",
                     "--infile", str(ct), "--out-file", str(rt))
    assert code == 0
    assert rt.read_bytes() == plain.read_bytes()


def test_fitness_zero_at_true_key(capsys, tmp_path):
    plain = tmp_path / "plain.txt"
    plain.write_bytes(b"the quick brown fox jumps over the lazy dog" * 4)
    ct = tmp_path / "ct.bin"
    run(capsys, "encrypt", "--key", "0101100101", "--infile", str(plain),
        "--out-file", str(ct))
    code, out, _ = run(capsys, "fitness", "--key", "0101100101",
                       "--infile", str(ct), "--plaintext-file", str(plain))
    assert code == 0 and out.strip() == "0.0"


def test_fitness_language_model(capsys, tmp_path):
    ct = tmp_path / "ct.bin"
    ct.write_bytes(b"\x00\x01\x02garbage")
    code, out, _ = run(capsys, "fitness", "--key", "0000000000",
                       "--infile", str(ct), "--model", "language")
    assert code == 0
    assert float(out.strip()) > 0.0


def test_bruteforce_recovers_key(capsys, tmp_path):
    plain = tmp_path / "plain.txt"
    plain.write_bytes(b"a steady stream of ordinary english words for scoring " * 3)
    ct = tmp_path / "ct.bin"
    run(capsys, "encrypt", "--key", "1010000010", "--infile", str(plain),
        "--out-file", str(ct))
    table = tmp_path / "table.csv"
    code, out, _ = run(capsys, "bruteforce", "--infile", str(ct),
                       "--plaintext-file", str(plain), "--csv", str(table))
    assert code == 0
    assert out.startswith("min_fitness=0.0 keys=")
    assert "1010000010" in out
    lines = table.read_text().splitlines()
    assert lines[0] == "key,fitness" and len(lines) == 1025


def test_compare_small_campaign(capsys, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"sizes": [100], "runs": 2}))
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "compare", "--out", str(out_dir),
                       "--config", str(config), "--seed", "42")
    assert code == 0
    assert "grand means:" in out
    meta = json.loads((out_dir / "metadata.json").read_text())
    assert meta["base_seed"] == 42  # flag overrides config file
    rows = (out_dir / "runs.csv").read_text().splitlines()
    assert len(rows) == 1 + 2 * 1 * 2


def test_compare_sizes_flag(capsys, tmp_path):
    out_dir = tmp_path / "out"
    code, _, _ = run(capsys, "compare", "--out", str(out_dir),
                     "--sizes", "100,200", "--runs", "1")
    assert code == 0
    summary = (out_dir / "summary.csv").read_text().splitlines()
    assert len(summary) == 1 + 4


def test_landscape_command(capsys, tmp_path):
    out_dir = tmp_path / "scans"
    code, out, _ = run(capsys, "landscape", "--out", str(out_dir),
                       "--refs", "2", "--size", "200")
    assert code == 0
    assert "4 scan files" in out
    assert (out_dir / "fdc_summary.csv").exists()


def test_runtime_error_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "encrypt", "--key", "0000000000",
                       "--infile", str(tmp_path / "absent.bin"))
    assert code == 1
    assert err.startswith("error:")


def test_missing_input_is_an_error(capsys):
    code, _, err = run(capsys, "encrypt", "--key", "0000000000")
    assert code == 1 and "no input given" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["subkeys", "--key", "10100"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["no-such-command"])
    assert info.value.code == 2


def test_sbox_preset_flag_changes_output(capsys):
    # pick a block whose S0 path hits the differing cell
    outputs = {}
    for preset in ("paper", "canonical"):
        _, out, _ = run(capsys, "encrypt", "--key", "1111111111",
                        "--block", "11111111", "--sbox", preset)
        outputs[preset] = out.strip()
    assert len(outputs["paper"]) == len(outputs["canonical"]) == 8
