import cmath
import math

import pytest

from lab.function_spec import parse_function
from models.errors import ParamOutOfDomain, SpecParseError


@pytest.mark.parametrize("text, family", [
    ("moebius:1,0.5", "moebius"),
    ("blaschke:0,0", "blaschke"),
    ("blaschke:0.3+0.4j,-0.2", "blaschke"),
    ("S", "singular"),
    ("singular:1.5@0.5,3@2", "singular"),
    ("balpha:0.5", "compose"),
    ("id", "moebius"),
    ("power:3", "blaschke"),
    ("outer:2|0^-2", "outer"),
    ("prod(S,blaschke:0)", "product"),
    ("compose(moebius:1,0.5,S)", "compose"),
    ("deriv(blaschke:0,0.5)", "derivative"),
    ("quot(blaschke:0.3,0.5,blaschke:0.3)", "quotient_blaschke"),
])
def test_parse_families(text, family):
    f = parse_function(text)
    assert f.family == family
    assert f.label == text


def test_parsed_values():
    z = 0.2 - 0.3j
    assert parse_function("moebius:1,0.5").eval(z) == pytest.approx((z - 0.5) / (1 - 0.5 * z))
    assert parse_function("S").eval(z) == pytest.approx(cmath.exp((z + 1) / (z - 1)))
    assert parse_function("outer:2|0^-2").eval(z) == pytest.approx(2 / (1 - z) ** 2)
    assert parse_function("prod(S,blaschke:0)").eval(z) == pytest.approx(z * cmath.exp((z + 1) / (z - 1)))


def test_nested_combinators():
    f = parse_function("prod(compose(moebius:1,0.5,S),blaschke:0.1,0.2)")
    z = 0.4j
    s = cmath.exp((z + 1) / (z - 1))
    inner = (s - 0.5) / (1 - 0.5 * s)
    b = (z - 0.1) / (1 - 0.1 * z) * (z - 0.2) / (1 - 0.2 * z)
    assert f.eval(z) == pytest.approx(inner * b)
    assert f.singular_support == (0.0,)


def test_singular_masses():
    f = parse_function("singular:1.5@0.5,3@2")
    assert f.params['masses'] == [(1.5, 0.5), (3.0, 2.0)]
    assert f.singular_support == pytest.approx((1.5, 3.0))


def test_whitespace_is_ignored():
    f = parse_function("  prod( S , blaschke:0 )  ")
    assert f.family == "product"
    assert f.eval(0.5) == pytest.approx(0.5 * math.exp(-3.0))


@pytest.mark.parametrize("text", [
    "",
    "foo:1",
    "moebius:1",
    "prod(S)",
    "prod(S,blaschke:0",
    "wrap(S)",
    "quot(S,moebius:1,0)",
    "power:x",
    "blaschke:",
    "outer:1|0",
    "S:1",
])
def test_parse_errors(text):
    with pytest.raises(SpecParseError):
        parse_function(text)


def test_parameter_errors_surface_as_domain_errors():
    with pytest.raises(ParamOutOfDomain):
        parse_function("blaschke:1.5")
    with pytest.raises(ParamOutOfDomain):
        parse_function("balpha:0")


def test_derivative_map_label_round_trip():
    f = parse_function("deriv(S)")
    assert not f.inner and not f.self_map
    assert abs(f.eval(0.0)) == pytest.approx(2 * math.exp(-1.0))
