import pytest

from drinfeld import (
    ParseError,
    Poly,
    TwistedPoly,
    fq_make,
    function_field,
    make_module,
    parse_poly,
    parse_rational,
    parse_twisted,
)
from drinfeld.parsing import (
    load_module_file,
    module_file_text,
    parse_height_table,
    parse_module_text,
)

MODULE_TEXT = """
[field]
p = 3
e = 1

[module]
rank = 2
g1 = "T^5 + 2*T"
g2 = "T"
"""


def test_parse_poly_basic(f3):
    T = Poly.x(f3)
    two = Poly.constant(f3, f3.from_int(2))
    assert parse_poly("T^5 + 2*T", f3) == T**5 + two * T
    assert parse_poly("(T + 1)*(T + 2)", f3) == T * T + two
    assert parse_poly("-T", f3) == two * T
    assert parse_poly("7", f3) == Poly.one(f3)


def test_parse_rational(F3, f3):
    x = parse_rational("(T^2 + 1) / (T + 1)", f3)
    T = Poly.x(f3)
    assert x.num == T * T + Poly.one(f3)
    assert x.den == T + Poly.one(f3)
    y = parse_rational("1 / T + 1", f3)  # binds as (1/T) + 1
    assert y == F3.one / F3.from_poly(T) + F3.one


def test_parse_twisted(F3):
    u = parse_twisted("T + (T^5 + 2*T)*t + T*t^2", F3)
    assert u.tau_degree == 2
    assert u.d_part == F3.t
    # twisted power expands with the twist
    v = parse_twisted("(T + t)^2", F3)
    assert v == TwistedPoly(F3, [F3.t * F3.t, F3.t + F3.t**3, F3.one])


def test_parse_z_extension_generator():
    f9 = fq_make(3, 2)
    x = parse_rational("z*T + 1", f9)
    assert x.num.coeff(1) == f9.generator
    with pytest.raises(ParseError):
        parse_rational("z + 1", fq_make(3))  # z undefined over prime field


def test_parse_errors_carry_offsets(f3):
    with pytest.raises(ParseError) as err:
        parse_poly("T^^2", f3)
    assert err.value.position is not None
    with pytest.raises(ParseError):
        parse_poly("T +", f3)
    with pytest.raises(ParseError):
        parse_poly("(T + 1", f3)
    with pytest.raises(ParseError):
        parse_poly("T ? 1", f3)
    with pytest.raises(ParseError):
        parse_poly("T/t + t", f3)  # t not allowed in polynomial context
    with pytest.raises(ParseError):
        parse_rational("1/(T - T)", f3)


def test_poly_requires_trivial_denominator(f3):
    with pytest.raises(ParseError):
        parse_poly("1/T", f3)


def test_division_involving_t_rejected(F3):
    with pytest.raises(ParseError):
        parse_twisted("t / T", F3)
    with pytest.raises(ParseError):
        parse_twisted("T / t", F3)


def test_module_file_roundtrip(F3):
    mf = parse_module_text(MODULE_TEXT)
    assert mf.fq.q == 3 and mf.rank == 2 and mf.d == 1
    phi = mf.module
    assert phi is not None
    text = module_file_text(phi)
    again = parse_module_text(text)
    assert again.module == phi


def test_display_reparse_equality(F3, f3):
    # printed twisted polynomials re-parse to equal values
    T = Poly.x(f3)
    phi = make_module(
        F3,
        2,
        [F3.from_poly(T**5 + Poly.constant(f3, f3.from_int(2)) * T), F3.from_poly(T)],
    )
    u = phi.phi(T * T)
    assert parse_twisted(repr(u), F3) == u
    x = F3.from_poly(T * T + Poly.one(f3)) / F3.from_poly(T**3)
    assert parse_rational(repr(x), f3) == x


def test_display_reparse_extension_coeffs():
    f9 = fq_make(3, 2)
    F9 = function_field(f9)
    z = f9.generator
    phi = make_module(F9, 1, [F9.from_base(z + f9.one)])
    assert parse_twisted(repr(phi.phi_t), F9) == phi.phi_t


def test_module_file_missing_sections():
    with pytest.raises(ParseError):
        parse_module_text("[field]\np = 3\ne = 1\n")
    with pytest.raises(ParseError):
        parse_module_text("[module]\nrank = 1\ng1 = \"1\"\n")


def test_module_file_partial_coeffs_rejected():
    text = "[field]\np = 3\ne = 1\n[module]\nrank = 2\ng1 = \"1\"\n"
    with pytest.raises(ParseError):
        parse_module_text(text)


def test_module_file_without_coeffs_for_tables():
    text = "[field]\np = 3\ne = 1\n[module]\nrank = 2\n[extension]\nd = 2\n"
    mf = parse_module_text(text)
    assert mf.module is None and mf.d == 2


def test_height_table_parse():
    rows = parse_height_table(
        "place_label,deg,n_nu,v(g1),v(g2)\nP1,1,2,-3,0\ninf1,1,1,2,-4\n", 2
    )
    assert len(rows) == 2
    assert rows[0].label == "P1" and rows[0].valuations == (-3, 0)
    # headerless variant
    rows2 = parse_height_table("P1,1,2,-3,0\n", 2)
    assert rows2[0].n_nu == 2


def test_height_table_errors():
    with pytest.raises(ParseError):
        parse_height_table("P1,1,2,-3\n", 2)  # missing a column
    with pytest.raises(ParseError):
        parse_height_table("", 2)


def test_load_module_file(tmp_path):
    path = tmp_path / "m.ini"
    path.write_text(MODULE_TEXT, encoding="utf-8")
    mf = load_module_file(str(path))
    assert mf.module is not None and mf.module.rank == 2
