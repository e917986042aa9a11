import itertools

from hypothesis import given, strategies as st
import pytest

from afasim import residue
from afasim.exceptions import BasisMismatch, StructuralError
from afasim.residue import Order, PrimeBasis
from afasim.space import SpaceMeter, register_bound

BASIS_105 = PrimeBasis((3, 5, 7))
BASIS_1155 = PrimeBasis((3, 5, 7, 11))


def test_iter_odd_primes():
    assert list(itertools.islice(residue.iter_odd_primes(), 8)) == [
        3,
        5,
        7,
        11,
        13,
        17,
        19,
        23,
    ]


def test_prime_basis():
    assert residue.prime_basis(3) == BASIS_105
    assert BASIS_105.product == 105
    assert BASIS_105.largest == 7
    assert residue.prime_basis(1).primes == (3,)
    with pytest.raises(StructuralError):
        residue.prime_basis(0)


@pytest.mark.parametrize("primes", [(2, 3), (3, 9), (5, 3), ()])
def test_prime_basis_invalid(primes):
    with pytest.raises(StructuralError):
        PrimeBasis(primes)


@pytest.mark.parametrize(
    "bound, r",
    [(0, 1), (2, 1), (3, 2), (14, 2), (15, 3), (104, 3), (105, 4), (1154, 4)],
)
def test_basis_for_bound(bound, r):
    basis = residue.basis_for_bound(bound)
    assert basis.r == r
    assert basis.product > bound


def test_reduce():
    assert residue.reduce(0, BASIS_105).digits == (0, 0, 0)
    assert residue.reduce(104, BASIS_105).digits == (2, 4, 6)
    assert residue.reduce(52, BASIS_105).digits == (1, 2, 3)
    assert residue.reduce(-1, BASIS_105) == residue.reduce(104, BASIS_105)


def test_reduce_matrix():
    rm = residue.reduce_matrix(((10, 4), (0, 7)), BASIS_105)
    assert rm.for_prime(0) == ((1, 1), (0, 1))
    assert rm.for_prime(2) == ((3, 4), (0, 0))


def test_residue_digits_validated():
    with pytest.raises(StructuralError):
        residue.Residues(BASIS_105, (0, 0))
    with pytest.raises(StructuralError):
        residue.Residues(BASIS_105, (3, 0, 0))


def test_crt_roundtrip():
    for x in range(BASIS_1155.product):
        assert residue.crt_reconstruct(residue.reduce(x, BASIS_1155)) == x
    assert residue.crt_reconstruct(residue.Residues(BASIS_1155, (1, 2, 3, 4))) == 367


@pytest.mark.parametrize("M", [2, 3, 4, 10])
def test_residue_mod(M):
    for x in range(BASIS_1155.product):
        assert residue.residue_mod(residue.reduce(x, BASIS_1155), M) == x % M


def test_residue_mod_invalid_modulus():
    with pytest.raises(StructuralError):
        residue.residue_mod(residue.reduce(3, BASIS_105), 1)


def test_parity_criterion_exhaustive():
    N = BASIS_105.product
    for x in range(N):
        for y in range(N):
            z = (x - y) % N
            assert (x >= y) == ((x - y) % 2 == z % 2)


def test_residue_compare_exhaustive():
    residues = [residue.reduce(x, BASIS_105) for x in range(105)]
    for (x, xres), (y, yres) in itertools.product(enumerate(residues), repeat=2):
        expected = Order.EQ if x == y else Order.GT if x > y else Order.LT
        assert residue.residue_compare(xres, yres) is expected


@pytest.mark.parametrize("x, y, expected", [(0, 104, 104), (104, 0, 104), (17, 17, 0)])
def test_residue_abs_diff(x, y, expected):
    diff = residue.residue_abs_diff(
        residue.reduce(x, BASIS_105), residue.reduce(y, BASIS_105)
    )
    assert residue.crt_reconstruct(diff) == expected


def test_basis_mismatch():
    with pytest.raises(BasisMismatch):
        residue.residue_compare(
            residue.reduce(1, BASIS_105), residue.reduce(1, BASIS_1155)
        )
    with pytest.raises(BasisMismatch):
        residue.residue_add(residue.reduce(1, BASIS_105), residue.reduce(1, BASIS_1155))


@given(
    x=st.integers(min_value=0, max_value=1154),
    y=st.integers(min_value=0, max_value=1154),
    c=st.integers(min_value=0, max_value=50),
)
def test_residue_homomorphism(x, y, c):
    rx, ry = residue.reduce(x, BASIS_1155), residue.reduce(y, BASIS_1155)
    assert residue.residue_add(rx, ry) == residue.reduce(x + y, BASIS_1155)
    assert residue.residue_sub(rx, ry) == residue.reduce(x - y, BASIS_1155)
    assert residue.residue_scale(rx, c) == residue.reduce(c * x, BASIS_1155)


@given(
    x=st.integers(min_value=-(10 ** 6), max_value=10 ** 6),
    y=st.integers(min_value=-(10 ** 6), max_value=10 ** 6),
    z=st.integers(min_value=-(10 ** 6), max_value=10 ** 6),
)
def test_residue_product_plus_offset(x, y, z):
    basis = residue.prime_basis(6)
    rx, ry, rz = (residue.reduce(v, basis) for v in (x, y, z))
    expected = residue.reduce(x * y + z, basis)
    assert residue.residue_add(residue.residue_mul(rx, ry), rz) == expected
    assert expected.digits == tuple((x * y + z) % p for p in basis.primes)


def test_residue_mul_basis_mismatch():
    with pytest.raises(BasisMismatch):
        residue.residue_mul(residue.reduce(2, BASIS_105), residue.reduce(2, BASIS_1155))


def test_mod_mat_apply():
    p = 7
    matrix = ((3, 4), (6, 0))
    assert residue.mod_mat_apply(matrix, (5, 2), p) == ((15 + 8) % p, 30 % p)


def test_garner_registers_stay_within_bound():
    basis = residue.prime_basis(40)
    meter = SpaceMeter()
    for x in (0, 1, basis.product // 3, basis.product - 1):
        for M in (2, 3, 10):
            assert residue.residue_mod(residue.reduce(x, basis), M, meter) == x % M
    assert meter.observations > 0
    assert meter.max_bits <= register_bound(basis.largest)
