from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heatjet import metricfile
from heatjet.fixtures import constant_curvature_metric, flat_metric, random_normal_2jet

SPHERE = """{
  "dimension": 2,
  "order": 2,
  "normal_form": true,
  "entries": [
    {"i": 1, "j": 1, "monomial": [0, 2], "coeff": "-1/3"},
    {"i": 1, "j": 2, "monomial": [1, 1], "coeff": "1/3"},
    {"i": 2, "j": 2, "monomial": [2, 0], "coeff": "-1/3"}
  ]
}
"""


def test_load_example():
    g = metricfile.loads(SPHERE)
    assert g == constant_curvature_metric(2, 1, 2)
    assert metricfile.dumps(g) == SPHERE


@pytest.mark.parametrize("g", [flat_metric(1, 3), constant_curvature_metric(3, -2, 6), random_normal_2jet(3, 4, 4)])
def test_round_trip(g):
    text = metricfile.dumps(g)
    assert metricfile.loads(text) == g
    assert metricfile.dumps(metricfile.loads(text)) == text


def test_flat_has_no_entries():
    assert '"entries": []' in metricfile.dumps(flat_metric(2, 4))


def test_file_io(tmp_path):
    path = tmp_path / "g.json"
    g = constant_curvature_metric(2, 3, 4)
    metricfile.dump(g, path)
    assert metricfile.load(path) == g


@given(st.fractions(max_denominator=50))
def test_coeff_round_trip(c):
    assert metricfile.parse_coeff(metricfile.format_coeff(c)) == c


@pytest.mark.parametrize("text", ["1/0", "2/4", "3/1", "1.5", "x", "", "1/-2", "--1"])
def test_bad_coeffs(text):
    with pytest.raises(metricfile.MetricFileError):
        metricfile.parse_coeff(text)


def test_coeff_must_be_string():
    with pytest.raises(metricfile.MetricFileError):
        metricfile.parse_coeff(F(1, 3))


@pytest.mark.parametrize(
    "old, new, line, fragment",
    [
        ('"coeff": "1/3"}', '"coeff": "1/0"}', 7, "zero denominator"),
        ('"coeff": "-1/3"},\n    {"i": 1, "j": 2', '"coeff": "-2/6"},\n    {"i": 1, "j": 2', 6, "lowest terms"),
        ('"i": 2, "j": 2', '"i": 2, "j": 1', 8, "1 <= i <= j"),
        ('"monomial": [1, 1]', '"monomial": [2, 1]', 7, "degree above order"),
        ('"monomial": [1, 1]', '"monomial": [1]', 7, "list of 2"),
        ('"i": 1, "j": 2,', '"i": 1, "j": 2, "extra": 0,', 7, "exactly the keys"),
    ],
)
def test_errors_carry_line(old, new, line, fragment):
    text = SPHERE.replace(old, new, 1)
    assert text != SPHERE
    with pytest.raises(metricfile.MetricFileError) as info:
        metricfile.loads(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_structural_errors():
    for text in ("[]", "{", '{"dimension": 2}', SPHERE.replace('"order": 2', '"order": -1')):
        with pytest.raises(metricfile.MetricFileError):
            metricfile.loads(text)


def test_duplicate_entry():
    text = SPHERE.replace('{"i": 2, "j": 2, "monomial": [2, 0]', '{"i": 1, "j": 1, "monomial": [0, 2]')
    with pytest.raises(metricfile.MetricFileError, match="duplicate"):
        metricfile.loads(text)


def test_false_normal_form_claim():
    text = SPHERE.replace('"monomial": [0, 2]', '"monomial": [2, 0]')
    with pytest.raises(metricfile.MetricFileError):
        metricfile.loads(text)
    g = metricfile.loads(text.replace('"normal_form": true', '"normal_form": false'))
    assert not g.normal_form
