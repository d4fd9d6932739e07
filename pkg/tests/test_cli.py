import io
import json

import pytest

from k3frag.cli import EXIT_BUDGET, EXIT_ERROR, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, parse_budget
from k3frag.expected import ENCODINGS
from k3frag.records import HEADER, read_records


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_fragments_text_and_records():
    code, out, _ = run("fragments", "--degree", "8")
    assert code == EXIT_OK and out.startswith("degree 8: 3 fragments")
    code, out, _ = run("fragments", "--degree", "8", "--format", "records")
    recs = read_records(out.splitlines())
    assert out.splitlines()[0] == HEADER
    assert len(recs) == 3
    code, out, _ = run("fragments", "--degree", "26")
    assert code == EXIT_OK and "0 fragments" in out


@pytest.mark.parametrize("argv", [
    ("fragments", "--degree", "7"),
    ("fragments", "--degree", "34"),
    ("fragments",),
    ("search", "--degree", "4"),
    ("search", "--degree", "6"),
    ("search", "--degree", "22", "--workers", "0"),
    ("search", "--degree", "22", "--budget", "soon"),
    ("verify", "--degrees", "8-10"),
    ("nonsense",),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_parse_budget():
    assert parse_budget("tiny") == (1, None)
    assert parse_budget("500") == (500, None)
    assert parse_budget("90s") == (None, 90.0)
    assert parse_budget("2m") == (None, 120.0)
    assert parse_budget(None) == (None, None)


def test_search_degree_22_records_are_deterministic():
    code, a, _ = run("search", "--degree", "22", "--format", "records")
    assert code == EXIT_OK
    code, b, _ = run("search", "--degree", "22", "--format", "records")
    assert a == b
    recs = read_records(a.splitlines())
    configs = [r for r in recs if r["type"] == "config"]
    assert len(configs) == 1 and configs[0]["complete"]
    code, text, _ = run("search", "--degree", "22")
    assert text.startswith("degree 22: 1 h-configurations, max 1,") and "complete" in text


def test_search_budget_exit_code():
    code, out, _ = run("search", "--degree", "12", "--budget", "tiny", "--format", "records")
    assert code == EXIT_BUDGET
    summary = [r for r in read_records(out.splitlines()) if r["type"] == "summary"]
    assert summary and summary[0]["complete"] is False


def test_search_checkpoint_and_resume(tmp_path):
    cp = str(tmp_path / "d18.records")
    code, _, _ = run("search", "--degree", "18", "--budget", "3", "--checkpoint", cp)
    assert code == EXIT_BUDGET
    code, out, _ = run("search", "--degree", "18", "--resume", cp)
    assert code == EXIT_OK and out.startswith("degree 18: 6 h-configurations, max 3,")


def test_verify_fragments_only():
    code, out, _ = run("verify", "--degrees", "22..26", "--fragments-only")
    assert code == EXIT_OK
    # counts for 22, 24, 26 and triples for 22, 24
    assert out.count("PASS") == 5 and "FAIL" not in out


def test_verify_search_and_tampered_table(tmp_path):
    code, out, _ = run("verify", "--degrees", "22..22")
    assert code == EXIT_OK and "h-configurations" in out
    bad = tmp_path / "expected.json"
    bad.write_text(json.dumps({"max_count": {"22": 2}}))
    code, out, _ = run("verify", "--degrees", "22..22", "--expected", str(bad))
    assert code == EXIT_MISMATCH
    assert "FAIL degree 22 max count" in out
    bad.write_text(json.dumps({"bogus": {}}))
    assert run("verify", "--degrees", "22..22", "--expected", str(bad))[0] == EXIT_USAGE


def test_verify_budget_exit_code():
    code, out, _ = run("verify", "--degrees", "20..20", "--budget", "tiny")
    assert code == EXIT_BUDGET


def test_decode_and_encode():
    code, out, _ = run("decode", ENCODINGS[6][0], "--degree", "6")
    assert code == EXIT_OK and "vertices 6  edges 9  girth 3  |Aut| 12" in out and "rank 6" in out
    for d in (6, 8, 10, 12):
        for text in ENCODINGS[d]:
            code, once, _ = run("encode", text)
            code, twice, _ = run("encode", once.strip())
            assert code == EXIT_OK and once == twice
    code, out, _ = run("encode", "0-1 0-2 0-3 1-2 1-3 2-3")
    assert out.strip() == ENCODINGS[4][0]


def test_decode_errors(tmp_path):
    code, _, err = run("decode", "(1x")
    assert code == EXIT_ERROR and "line 1, column" in err
    f = tmp_path / "g.txt"
    # one encoding per line
    f.write_text(ENCODINGS[6][0] + "\n\n" + ENCODINGS[6][1] + "\n")
    code, out, _ = run("decode", "--file", str(f))
    assert code == EXIT_OK and out.count("vertices 6") == 2
    assert run("decode")[0] == EXIT_USAGE
