import json

import pytest

from twisted_zhu.fock import FockVOA, words_up_to
from twisted_zhu.grades import parse_grade
from twisted_zhu.quotient import TruncationError, filtered_quotient
from twisted_zhu.table import ModeTable, TableError, TableVOA, dump_table


@pytest.fixture(scope="module")
def table():
    return dump_table(FockVOA("trivial"), 6)


def test_table_matches_engine(table):
    voa = FockVOA("trivial")
    for u in words_up_to(3):
        for v in words_up_to(3):
            for n in range(-2, sum(u) + sum(v)):
                if sum(u) + sum(v) - n - 1 <= 6:
                    assert tuple(sorted(voa.mode(u, n, v))) == table.mode(u, n, v)


def test_round_trip_and_digest(table):
    again = ModeTable.from_json(json.loads(json.dumps(table.to_json())))
    assert again.entries == table.entries and again.digest() == table.digest()


def test_grading_law_enforced():
    bad = {"weight_cap": 4, "records": [{"u": [1], "n": 1, "v": [1], "result": [[[1], "1/1"]]}]}
    with pytest.raises(TableError, match="grading law"):
        ModeTable.from_json(bad)


def test_cap_enforced(table):
    with pytest.raises(TruncationError):
        table.mode((4, 3), -1, (1,))
    with pytest.raises(TableError):
        ModeTable.from_json({"weight_cap": 1, "records": [{"u": [1], "n": -1, "v": [1], "result": []}]})


def test_table_voa_reproduces_dims(table):
    tv = TableVOA(table, "trivial")
    g = parse_grade("0", 1)
    fq = filtered_quotient(tv, g, g, 2, 4, level="prime")
    assert fq.dim == 3 and fq.stable
    assert tv.cache_key != FockVOA("trivial").cache_key
