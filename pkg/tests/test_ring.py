import pytest
from hypothesis import given

from motivic_dt import parse
from motivic_dt.ring import (
    AtomTable,
    BundleGenerator,
    HalfInt,
    MissingData,
    MotivicClass,
    RingError,
    UnsupportedSmash,
    euler_specialize,
    format_q,
    mu,
    one_minus_l_power,
    rewrite_mu2,
    upsilon,
    upsilon_from_cover,
    weight_specialize,
)
from strategies import A, G, H, classes

ONE = MotivicClass.one()
L = MotivicClass.lefschetz(1)
SQRT_L = MotivicClass.lefschetz(HalfInt(1))
MU2 = MotivicClass.of_atom(mu(2))
MU3 = MotivicClass.of_atom(mu(3))


def test_halfint_arithmetic():
    assert HalfInt(1) + HalfInt(1) == HalfInt(2)
    assert -HalfInt(3) == HalfInt(-3)
    assert HalfInt(3) + HalfInt(0) == HalfInt(3)
    assert HalfInt.from_fraction("3/2") == HalfInt(3)
    with pytest.raises(ValueError):
        HalfInt.from_fraction("1/3")


def test_add_identity_and_inverse():
    x = L + MU2
    assert x + MotivicClass() == x
    assert (L + (-L)).is_zero()
    assert ONE + ONE == MotivicClass.integer(2)


def test_sqrt_lefschetz_squares_to_lefschetz():
    assert SQRT_L * SQRT_L == L


def test_point_is_unit():
    x = 3 * MU2 - SQRT_L + MotivicClass.of_atom(A)
    assert x * ONE == x


def test_mu1_is_the_point():
    assert MotivicClass.of_atom(mu(1)) == ONE


def test_two_monodromic_atoms_rejected():
    with pytest.raises(UnsupportedSmash):
        MU3 * MU2
    with pytest.raises(UnsupportedSmash):
        MU2 * MU2


def test_lefschetz_is_central_against_monodromy():
    assert SQRT_L * MU3 == MU3 * SQRT_L
    assert (SQRT_L * MU3).terms == MU3.twist(HalfInt(1)).terms


def test_upsilon_squares_collapse():
    g = BundleGenerator("g")
    assert upsilon(g, ONE) * upsilon(g, ONE) == ONE


def test_upsilon_distinct_generators():
    g, h = BundleGenerator("g"), BundleGenerator("h")
    x = upsilon(g, ONE) * upsilon(h, ONE)
    ((term, coeff),) = x.items()
    assert coeff == 1 and [u.name for u in term.units] == ["g", "h"]


def test_upsilon_euler_sign():
    assert euler_specialize(upsilon(BundleGenerator("g", -1), ONE)) == -1


def test_upsilon_rejects_base_with_units():
    with pytest.raises(RingError):
        upsilon(G, MotivicClass.unit(H))


def test_euler_values():
    assert euler_specialize(L) == 1
    assert euler_specialize(SQRT_L) == -1
    for n in range(1, 8):
        assert euler_specialize(ONE - MotivicClass.of_atom(mu(n))) == 1 - n


def test_euler_missing_data():
    from motivic_dt.ring import Atom
    with pytest.raises(MissingData):
        euler_specialize(MotivicClass.of_atom(Atom("X")))


def test_weight_specialization():
    assert weight_specialize(L) == {2: 1}
    table = AtomTable.from_dict({"atoms": [{"name": "C", "euler": 0, "poincare": {"1": 1, "0": -1}}]})
    gm = parse("[C]", table)
    assert weight_specialize(gm) == weight_specialize(L - 1) == {0: -1, 2: 1}
    assert format_q(weight_specialize(L - 1)) == "q - 1"
    assert format_q(weight_specialize(SQRT_L * 2 + 1)) == "2*q^{1/2} + 1"
    with pytest.raises(RingError):
        weight_specialize(MU2)
    with pytest.raises(RingError):
        weight_specialize(MotivicClass.unit(G))


def test_binomial_powers():
    for k in range(6):
        assert one_minus_l_power(k) == (L - 1) ** k
        assert one_minus_l_power(k, sign=1) == (1 - L) ** k


def test_mu2_rewrite():
    assert rewrite_mu2(MU2) == ONE - SQRT_L
    assert rewrite_mu2(MU3 + L) == MU3 + L
    x = MU2 * L * MotivicClass.of_atom(A)
    assert rewrite_mu2(x) == (ONE - SQRT_L) * L * MotivicClass.of_atom(A)


def test_upsilon_of_trivial_double_cover():
    # the defining formula with cover [pt x mu2] reduces to 1 once MU2 is rewritten
    assert rewrite_mu2(upsilon_from_cover(ONE, MU2)) == ONE


def test_canonical_term_order():
    x = L + MU2 + ONE + SQRT_L
    assert str(x) == "1 + L^{1/2} + L + [MU2]"


def test_atom_table_roundtrip():
    doc = {"atoms": [{"name": "C", "euler": 3, "mu_order": 1, "poincare": {"2": 1}, "dim": 2}],
           "bundles": [{"name": "P", "euler_sign": -1}]}
    table = AtomTable.from_dict(doc)
    assert AtomTable.from_dict(table.to_dict()).to_dict() == table.to_dict()
    with pytest.raises(ValueError):
        AtomTable.from_dict({"atoms": [{"name": "C", "euler": 1}, {"name": "C", "euler": 2}]})
    with pytest.raises(ValueError):
        AtomTable.from_dict({"atoms": [{"name": "MU4", "euler": 1}]})


@given(classes(), classes(), classes(monodromic=True))
def test_ring_axioms(a, b, m):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * m == a * (b * m)
    assert m * (a + b) == m * a + m * b
    assert (a + b) + m == a + (b + m)


@given(classes(), classes(monodromic=True))
def test_euler_is_a_homomorphism(a, m):
    assert euler_specialize(a * m) == euler_specialize(a) * euler_specialize(m)
    assert euler_specialize(a + m) == euler_specialize(a) + euler_specialize(m)


@given(classes(monodromic=True))
def test_immutable_hash_consistency(x):
    y = MotivicClass(x.terms)
    assert x == y and hash(x) == hash(y)
