import hashlib
import json

import pytest

from sumsquares import tables
from sumsquares.quadfield import K3, K17, QuadInt, make_context


def test_first_alphas():
    assert [(a.x, a.y) for a in tables.enumerate_alphas(K3, 5)] == [(1, 0), (2, 1), (3, 1), (4, 1), (5, 0)]
    assert [(a.x, a.y) for a in tables.enumerate_alphas(K17, 5)] == [(1, 0), (2, 0), (3, 0), (5, 0), (5, 1)]
    assert (2, 0) not in [(a.x, a.y) for a in tables.enumerate_alphas(K3, 40)]


def test_disc_markers():
    q17 = lambda x, y=0: QuadInt(x, y, K17)
    assert tables.disc_marker(q17(1)) == (2, 2)
    assert tables.disc_marker(q17(3)) == (0, 0)
    assert tables.disc_marker(q17(6)) == (2, 2)
    assert tables.disc_marker(QuadInt(1, 0, K3)) == (1,)


def test_specific_rows():
    assert tables.table_row(QuadInt(35, 17, K3)) == tables.TableRow(35, 17, (4,), 18)
    assert tables.table_row(QuadInt(38, 23, K17)) == tables.TableRow(38, 23, (2, 2), 12)
    assert tables.table_row(QuadInt(1, 0, K3)) == tables.TableRow(1, 0, (1,), 1)


@pytest.mark.parametrize("field", [K3, K17])
def test_golden_checksum_and_shape(field):
    text = tables.golden_text(field)
    assert hashlib.sha256(text.encode()).hexdigest() == tables.GOLDEN_SHA256[field]
    assert len(tables.golden_rows(field)) == 220


@pytest.mark.parametrize("field", [K3, K17])
def test_kept_alphas_are_pairwise_inequivalent(field):
    alphas = tables.enumerate_alphas(field, 220)
    eps2 = make_context(field).fundamental_unit ** 2
    keys = {tables.orbit_key(a) for a in alphas}
    assert len(keys) == 220
    for a in alphas[:30]:
        for moved in (a * eps2, a.conjugate(), a.conjugate() * eps2.inverse_unit()):
            assert tables.orbit_key(moved) in keys


@pytest.mark.parametrize("field", [K3, K17])
def test_deterministic_output(field):
    first = tables.to_csv(field, tables.generate_table(field, 40, workers=1))
    second = tables.to_csv(field, tables.generate_table(field, 40, workers=2))
    assert first == second
    rows = json.loads(tables.to_json(field, tables.generate_table(field, 3, workers=1)))
    assert rows[0]["a"] == 1


def test_diff_reports_changes():
    golden = tables.golden_rows(K3)[:3]
    rows = list(golden)
    rows[1] = tables.TableRow(rows[1].a, rows[1].b, rows[1].marker, rows[1].h + 1)
    diff = tables.diff_against_golden(K3, rows, golden)
    assert not diff.ok and diff.summary() == "2/3 rows match"
    assert diff.details()[0].startswith("changed a=2 b=1")
