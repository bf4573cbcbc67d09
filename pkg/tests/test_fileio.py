import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negadual.codes import LinearCode, same_code
from negadual.fileio import CodeFileError, export_code, format_code, import_code, parse_code
from negadual.gf import field_make


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(3, 1), (13, 1), (5, 2), (3, 3)]), st.integers(1, 4), st.integers(0, 5), st.randoms(use_true_random=False))
def test_roundtrip(pm, k, extra, rnd):
    F = field_make(*pm)
    n = k + extra
    rows = [[1 if i == j else 0 for j in range(k)] + [rnd.randrange(F.order) for _ in range(extra)]
            for i in range(k)]
    C = LinearCode.from_rows(F, rows)
    D = parse_code(format_code(C))
    assert D.field is F and D.rows == C.rows and same_code(C, D)
    assert format_code(D) == format_code(C)


def test_file_layout(tmp_path):
    F = field_make(5, 2)
    C = LinearCode.from_rows(F, [[1, 0, 7], [0, 1, 24]])
    path = export_code(C, tmp_path / "c.code")
    assert path.read_text() == "5 2 3 2\n2 0 1\n1 0 7\n0 1 24\n"
    assert import_code(path).rows == C.rows


@pytest.mark.parametrize("text,msg", [
    ("", "header"),
    ("5 1 2\n", "header"),
    ("5 1 2 1\n1 x\n", "non-integer"),
    ("4 1 2 1\n1 1\n", "prime"),
    ("5 2 2 1\n1 0 1\n1 1\n", "modulus"),
    ("5 1 2 2\n1 1\n", "expected 2"),
    ("5 1 3 1\n1 1\n", "length"),
    ("5 1 2 1\n1 5\n", "outside"),
    ("5 1 2 2\n1 1\n2 2\n", "rank"),
])
def test_malformed(text, msg):
    with pytest.raises(CodeFileError, match=msg):
        parse_code(text)
