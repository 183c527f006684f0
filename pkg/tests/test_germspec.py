import pytest

from imilnor.germspec import SpecSemanticError, format_germ_spec, parse_germ_spec, parse_germ_specs
from imilnor.parse import ParseError
from conftest import P


def test_e6_example():
    spec = parse_germ_spec('germ E6 { n=1 p=2 vars=[z] comps=["z^3","z^4"] }')
    f = spec.germ()
    assert (f.n, f.p, f.z_var, f.x_vars) == (1, 2, "z", ())
    assert f.components == (P("z^3"), P("z^4"))


def test_f4_example():
    spec = parse_germ_spec('germ F4 { n=2 p=3 vars=[x, z] comps=["z^2","z^5 + x^3*z"] }')
    f = spec.germ()
    assert f.x_vars == ("x",)
    assert [str(c) for c in f.full_components()] == ["x", "z^2", "z^5 + x^3*z"]


def test_component_count_error():
    with pytest.raises(SpecSemanticError, match="needs 2 components"):
        parse_germ_spec('germ bad { n=1 p=2 vars=[z] comps=["z^2"] }')


@pytest.mark.parametrize(
    "body, message",
    [
        ('n=1 p=2 vars=[z] comps=["z^2", "1 + z^3"]', "does not vanish"),
        ('n=1 p=2 vars=[z] comps=["z^2", "y*z"]', "unknown variable"),
        ('n=2 p=3 vars=[z] comps=["z^2", "z^3"]', "source variables"),
        ('n=2 p=2 vars=[x, z] comps=["z^2"]', "p > n"),
        ('n=1 p=2 vars=[z] comps=["z^2", "z^3"] colour=3', "unknown key"),
        ('n=1 p=2 vars=[z] comps=["z^2", "z^3"] stab { param=z comps=["z^2", "z^3"] }', "clashes"),
        ('n=1 p=2 vars=[z] comps=["z^2", "z^3"] stab { param=s comps=["z^2", "z^3 + z"] }', "restrict"),
    ],
)
def test_semantic_errors(body, message):
    with pytest.raises(SpecSemanticError, match=message):
        parse_germ_spec("germ bad { " + body + " }")


def test_syntax_error_location():
    text = 'germ E6 {\n  n=1 p=2\n  vars=[z]\n  comps=["z^3", "z^4"\n}'
    with pytest.raises(ParseError) as err:
        parse_germ_spec(text)
    assert err.value.line == 5


def test_error_location_inside_polynomial():
    text = 'germ E6 {\n  n=1 p=2 vars=[z]\n  comps=["z^3", "z^4 +"]\n}'
    with pytest.raises(ParseError) as err:
        parse_germ_spec(text)
    assert err.value.line == 3
    assert err.value.column == 23


def test_round_trip_catalog(catalog):
    for spec in catalog.values():
        again = parse_germ_spec(format_germ_spec(spec))
        assert again == spec
        assert format_germ_spec(again) == format_germ_spec(spec)


def test_several_blocks_and_comments():
    text = """
    # two germs
    germ A { n=1 p=2 vars=[z] comps=["z^2", "z^3"] }
    germ B { n=1 p=2 vars=[z] comps=["z^3", "z^4"] expect { mu_image=3 } }
    """
    specs = parse_germ_specs(text)
    assert [s.name for s in specs] == ["A", "B"]
    assert specs[1].expect == {"mu_image": 3}
    with pytest.raises(ParseError):
        parse_germ_spec(text)


def test_catalog_contents(catalog):
    for name in ["cusp", "E6", "A1", "A2", "A3", "crosscap", "F4"]:
        assert name in catalog
    assert catalog["F4"].family() is not None
    assert catalog["E6"].family().at(0) == catalog["E6"].germ()
