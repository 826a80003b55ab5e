import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divlat.errors import (
    LatticeError,
    LatticeMismatchError,
    ParseError,
    PreconditionError,
)
from divlat.lattice import (
    Cluster,
    IntersectionLattice,
    as_rational,
    definiteness,
    format_divisor,
    intersect,
    is_nef,
    nef_over,
    parse_divisor,
    rational_json,
    rational_str,
    rounddown,
    roundup,
    selfint,
)

from conftest import random_lattice


class TestRationals:
    def test_accepts_int_str_fraction(self):
        assert as_rational(3) == 3
        assert as_rational("-7/2") == Fraction(-7, 2)
        assert as_rational(Fraction(1, 3)) == Fraction(1, 3)

    def test_rejects_float(self):
        with pytest.raises(LatticeError):
            as_rational(0.5)

    def test_rejects_bool(self):
        # bool is an int subclass, must still be refused
        with pytest.raises(LatticeError):
            as_rational(True)

    def test_rejects_garbage_string(self):
        with pytest.raises(LatticeError):
            as_rational("2/0")
        with pytest.raises(LatticeError):
            as_rational("x")

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**4))
    def test_str_roundtrip(self, p, q):
        v = Fraction(p, q)
        assert as_rational(rational_str(v)) == v

    def test_json_form(self):
        assert rational_json(Fraction(4, 2)) == 2
        assert rational_json(Fraction(-1, 3)) == "-1/3"


class TestConstruction:
    def test_requires_symmetric(self):
        with pytest.raises(LatticeError):
            IntersectionLattice(("A", "B"), [[0, 1], [2, 0]])

    def test_requires_square(self):
        with pytest.raises(LatticeError):
            IntersectionLattice(("A", "B"), [[0, 1]])

    def test_duplicate_primes(self):
        with pytest.raises(LatticeError):
            IntersectionLattice(("A", "A"), [[0, 1], [1, 0]])

    def test_rejects_float_entries(self):
        with pytest.raises(LatticeError):
            IntersectionLattice(("A",), [[0.5]])

    def test_adjunction_enforced_when_smooth(self, l3):
        # l3 carries consistent genus/canonical data
        assert l3.smooth
        bad = [list(r) for r in l3.matrix]
        with pytest.raises(LatticeError):
            IntersectionLattice(
                l3.primes, bad, genus=l3.genus,
                canonical=[c + 1 for c in l3.canonical], smooth=True,
            )

    def test_unchecked_when_not_smooth(self):
        lat = IntersectionLattice(("C",), [[-2]], genus=(5,), canonical=(100,))
        assert lat.canonical == (Fraction(100),)

    def test_name_excluded_from_equality(self, l2):
        twin = IntersectionLattice(l2.primes, l2.matrix, name="other")
        assert twin == IntersectionLattice(l2.primes, l2.matrix, name="l2_surface")
        assert hash(twin) == hash(l2)


class TestDivisorAlgebra:
    def test_arithmetic(self, l2):
        d = l2.divisor([2, 3])
        e = l2.divisor(["1/2", 0])
        assert (d + e).coeffs == (Fraction(5, 2), Fraction(3))
        assert (d - e).coeffs == (Fraction(3, 2), Fraction(3))
        assert (2 * e).coeffs == (Fraction(1), Fraction(0))

    def test_flags(self, l2):
        assert l2.divisor([1, 0]).is_effective
        assert not l2.divisor([-1, 2]).is_effective
        assert l2.divisor([4, 7]).is_integral
        assert not l2.divisor(["1/2", 0]).is_integral
        assert l2.zero().is_zero

    def test_rounding(self, l2):
        d = l2.divisor(["5/3", "-1/2"])
        assert roundup(d).coeffs == (Fraction(2), Fraction(0))
        assert rounddown(d).coeffs == (Fraction(1), Fraction(-1))

    def test_support(self, l3):
        assert l3.divisor([1, 0, 2]).support() == (0, 2)

    def test_cross_lattice_guard(self, l2, l3):
        with pytest.raises(LatticeMismatchError):
            intersect(l2.divisor([1, 0]), l3.divisor([1, 0, 0]))

    def test_structural_identity_interoperates(self, l2):
        twin = IntersectionLattice(l2.primes, l2.matrix, name="reloaded")
        v = intersect(l2.divisor([1, 0]), twin.divisor([0, 1]))
        assert v == Fraction(4, 3)


class TestIntersectionForm:
    def test_frozen_values(self, l2, l3):
        assert intersect(l2.divisor([1, 0]), l2.divisor([0, 1])) == Fraction(4, 3)
        assert selfint(l2.divisor([1, 0])) == Fraction(-2, 3)
        h = l3.divisor([6, 4, 3])
        assert selfint(h) == 13
        for j in range(3):
            assert intersect(h, l3.prime_divisor(j)) == 1

    def test_bilinear_symmetric(self):
        rng = random.Random(11)
        for _ in range(50):
            lat = random_lattice(rng, rng.randint(1, 4))
            a = lat.divisor([rng.randint(-3, 3) for _ in range(lat.n)])
            b = lat.divisor([rng.randint(-3, 3) for _ in range(lat.n)])
            c = lat.divisor([rng.randint(-3, 3) for _ in range(lat.n)])
            assert intersect(a, b) == intersect(b, a)
            assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
            assert intersect(3 * a, b) == 3 * intersect(a, b)

    def test_nef(self, l3):
        assert is_nef(l3.divisor([6, 4, 3]))
        assert not is_nef(l3.prime_divisor(0))
        assert nef_over(l3.prime_divisor(0), l3.prime_divisor(1))


class TestDefiniteness:
    def test_negdef(self):
        a2 = IntersectionLattice(("E1", "E2"), [[-2, 1], [1, -2]])
        assert definiteness(a2, (0, 1), "negdef")
        assert definiteness(a2, (0,), "negdef")

    def test_not_negdef(self):
        lat = IntersectionLattice(("A", "B"), [[-1, 2], [2, -1]])
        assert not definiteness(lat, (0, 1), "negdef")
        pos = IntersectionLattice(("A",), [[1]])
        assert not definiteness(pos, (0,), "negdef")

    def test_empty_support_is_negdef(self, l2):
        assert definiteness(l2, (), "negdef")


class TestParser:
    def test_basic(self, l2):
        assert parse_divisor("2C1 + 2C2", l2).coeffs == (2, 2)
        assert parse_divisor("1/3 C2 - C1", l2).coeffs == (Fraction(-1), Fraction(1, 3))
        assert parse_divisor("0", l2).is_zero

    def test_whitespace_insensitive(self, l2):
        a = parse_divisor("2C1+1/2C2", l2)
        b = parse_divisor("  2 C1 + 1/2  C2 ", l2)
        assert a == b

    def test_star_and_primes_with_quote(self, l3):
        d = parse_divisor("2*C'1 + C'3", l3)
        assert d.coeffs == (2, 0, 1)

    def test_repeated_prime_accumulates(self, l2):
        assert parse_divisor("C1 + C1", l2).coeffs == (2, 0)

    def test_unknown_prime(self, l2):
        with pytest.raises(ParseError):
            parse_divisor("2C9", l2)

    def test_bad_character_position(self, l2):
        with pytest.raises(ParseError) as err:
            parse_divisor("C1 ; C2", l2)
        assert err.value.details.get("position") == 4

    def test_trailing_operator(self, l2):
        with pytest.raises(ParseError):
            parse_divisor("C1 +", l2)

    def test_empty(self, l2):
        with pytest.raises(ParseError):
            parse_divisor("   ", l2)

    def test_roundtrip_random(self, l3):
        rng = random.Random(5)
        for _ in range(200):
            coeffs = [
                Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)
            ]
            d = l3.divisor(coeffs)
            assert parse_divisor(format_divisor(d), l3) == d

    def test_format_zero(self, l2):
        assert format_divisor(l2.zero()) == "0"


class TestCluster:
    def test_incidence(self, l3):
        zeta = Cluster("zeta", ("C'1", "C'3"))
        assert zeta.incidence(l3) == (True, False, True)
        assert zeta.meets_divisor(l3.divisor([0, 0, 1]))
        assert not zeta.meets_divisor(l3.divisor([0, 2, 0]))

    def test_unknown_class(self):
        with pytest.raises(PreconditionError):
            Cluster("zeta", ("C1",), singclass="weird")
