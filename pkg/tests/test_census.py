import csv
import random
from pathlib import Path

import pytest

from knotmal.census import CensusEntry, default_census, load_census, lookup, parse_census
from knotmal.errors import CrossCheckFailed, MalformedDT, ParseError, UnknownTableName
from knotmal.notation import DTCode

HEAD = "# provenance: test rows\nname,dt,type,params\n"
FIXTURE = Path(__file__).parent / "data" / "alexander9.csv"


def test_rows_load():
    t = parse_census(HEAD + '3_1,"4 6 2",torus,"2 3"\n4_1,"4 6 8 2",hyperbolic,\n')
    assert t.lookup("3_1") == CensusEntry("3_1", DTCode((4, 6, 2)), "torus", (2, 3))
    assert t.lookup("4_1").geometric_type == "hyperbolic"
    assert t.provenance == "provenance: test rows"


def test_gcd_violation_fails_cross_check():
    with pytest.raises(CrossCheckFailed):
        parse_census(HEAD + '3_1,"4 6 2",torus,"2 4"\n')


def test_wrong_torus_polynomial_fails_cross_check():
    with pytest.raises(CrossCheckFailed):
        parse_census(HEAD + '3_1,"4 6 8 2",torus,"2 3"\n')
    with pytest.raises(CrossCheckFailed):
        parse_census(HEAD + '5_1,"4 6 2",torus,"2 5"\n')


@pytest.mark.parametrize("body", [
    '3_1,"4 6 2",torus\n',
    '3_1,"4 6 2",spherical,\n',
    '3_1,"4 6 2",torus,\n',
    '3_1,"4 6 2",torus,"2 x"\n',
    '3_1,"4 6 2",torus,"2 3"\n3_1,"4 6 2",torus,"2 3"\n',
])
def test_malformed_rows(body):
    with pytest.raises(ParseError):
        parse_census(HEAD + body)


def test_bad_dt_and_header():
    with pytest.raises(MalformedDT):
        parse_census(HEAD + '4_1,"4 4 8 2",hyperbolic,\n')
    with pytest.raises(ParseError):
        parse_census("name,dt,type,params\n4_1,\"4 6 8 2\",hyperbolic,\n")
    with pytest.raises(ParseError):
        parse_census("# x\nname,code,type,params\n")
    with pytest.raises(ParseError):
        parse_census(HEAD)


def test_lookup():
    t = default_census()
    assert t.lookup("3_1").params == (2, 3)
    assert lookup(t, "4_1").geometric_type == "hyperbolic"
    with pytest.raises(UnknownTableName):
        lookup(t, "99_999")


def test_bundled_table_contents():
    t = default_census()
    assert "KnotInfo" in t.provenance
    torus = {n for n, e in t.entries.items() if e.geometric_type == "torus"}
    assert torus == {"3_1", "5_1", "7_1", "8_19", "9_1"}
    assert {e.geometric_type for e in t.entries.values()} == {"torus", "hyperbolic"}
    # every prime knot through nine crossings: 1 + 1 + 2 + 3 + 7 + 21 + 49
    assert len(t.entries) == 84
    with open(FIXTURE) as f:
        names = {r[0] for r in csv.reader(line for line in f if not line.startswith("#"))} - {"name"}
    assert names == set(t.entries)


def test_order_independent(tmp_path):
    path = Path(__file__).parent.parent / "src" / "knotmal" / "data" / "knots9.csv"
    lines = path.read_text().splitlines()
    comments, header, rows = lines[:1], lines[1], lines[2:]
    random.Random(2).shuffle(rows)
    shuffled = tmp_path / "shuffled.csv"
    shuffled.write_text("\n".join(comments + [header] + rows) + "\n")
    assert load_census(shuffled) == load_census(path)
    assert load_census(path) == load_census(path)
