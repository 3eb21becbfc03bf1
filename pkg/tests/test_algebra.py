import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from supermanin.algebra import (
    Idempotent,
    algebra_from_relations,
    algebra_from_terms,
    algebra_X,
    algebra_Xi,
    antisymmetrizer_idempotent,
    black,
    build_Lambda,
    build_S,
    build_T,
    check_homomorphism,
    component,
    coproduct,
    graded_tensor,
    hilbert,
    koszul_dual,
    opposite,
    parity_shift,
    symmetrizer_idempotent,
    tensor,
    transport,
    unit_dual_numbers,
    unit_K,
    unit_polynomial,
    white,
)
from supermanin.errors import (
    DimensionMismatch,
    FormatMismatch,
    NotIdempotentError,
    ParityError,
    SizeCapExceeded,
)
from supermanin.fixtures import fixture_pairs, random_algebra, random_idempotent
from supermanin.linalg import Matrix
from supermanin.verify import koszul_identities

import oracles

formats = st.lists(st.integers(0, 1), min_size=1, max_size=2).map(tuple)
seeds = st.integers(0, 10**6)


def multichoose(p, m):
    return comb(p + m - 1, m) if p else int(m == 0)


def sym_series(fmt, top):
    """Free supercommutative algebra: polynomial in even, exterior in odd."""
    p, q = fmt.count(0), fmt.count(1)
    return [sum(multichoose(p, n - k) * comb(q, k) for k in range(min(n, q) + 1))
            for n in range(top + 1)]


# --------------------------------------------------------------------------
# presentations


def test_mixed_relation_rejected():
    # x1x1 is even and x1x2 is odd in format (0, 1)
    with pytest.raises(ParityError) as exc:
        algebra_from_relations((0, 1), [[1, 1, 0, 0]])
    assert exc.value.offending == [1, 1, 0, 0]


def test_relation_length_checked():
    with pytest.raises(DimensionMismatch):
        algebra_from_relations((0, 1), [[1, 0, 0]])


def test_terms_and_vectors_agree():
    a = algebra_from_terms((0, 0), [[(1, (0, 1)), (-1, (1, 0))]])
    b = algebra_from_relations((0, 0), [[0, 2, -2, 0]])
    assert a == b
    assert a.relation_terms() == [[(1, (0, 1)), (-1, (1, 0))]]


def test_unknown_generator_in_terms():
    with pytest.raises(DimensionMismatch):
        algebra_from_terms((0,), [[(1, (0, 1))]])


def test_names_do_not_affect_equality():
    a = build_S((0, 0), names=("x", "y"))
    assert a == build_S((0, 0))
    assert a.generator_names == ("x", "y")
    assert build_S((0, 0)).generator_names == ("x1", "x2")


@given(seeds, formats)
def test_random_algebras_are_homogeneous(seed, fmt):
    assert random_algebra(random.Random(seed), fmt).is_homogeneous()


# --------------------------------------------------------------------------
# standard algebras and Hilbert series


def test_free_algebra_series():
    assert hilbert(build_T((0, 0)), 4) == [1, 2, 4, 8, 16]
    assert hilbert(build_T((0, 1, 1)), 3) == [1, 3, 9, 27]


@pytest.mark.parametrize("fmt", [(0,), (1,), (0, 0), (0, 1), (1, 1), (0, 0, 1), (0, 1, 1)])
def test_symmetric_algebra_series(fmt):
    assert hilbert(build_S(fmt), 4) == sym_series(fmt, 4)
    assert hilbert(build_Lambda(fmt), 4) == sym_series(tuple(1 - k for k in fmt), 4)


def test_polynomial_ring_two_variables():
    assert hilbert(build_S((0, 0)), 4) == [1, 2, 3, 4, 5]


def test_grassmann_on_two_odd_generators():
    # odd generators in S behave like an exterior algebra
    assert hilbert(build_S((1, 1)), 4) == [1, 2, 1, 0, 0]


def test_grassmann_tensor():
    g = build_Lambda((0,))
    t = tensor(g, g)
    assert hilbert(t, 3) == [1, 2, 1, 0]
    # two odd nilpotents anticommute in the super tensor product
    odd = build_S((1,))
    assert tensor(odd, odd) == build_S((1, 1))
    g2 = graded_tensor(odd, odd)
    assert g2.relations.dim == 3
    assert hilbert(g2, 3) == [1, 2, 1, 0]


def test_unit_K():
    assert hilbert(unit_K(), 3) == [1, 0, 0, 0]


def test_size_cap():
    with pytest.raises(SizeCapExceeded) as exc:
        hilbert(build_T((0, 0, 0)), 8, size_cap=1000)
    assert exc.value.cap == 1000
    assert hilbert(build_T((0, 0, 0)), 8, size_cap=None)[8] == 3**8


def test_component_membership():
    c = component(build_S((0, 0)), 2)
    assert c.quotient_dim == 3
    assert c.contains([0, 1, -1, 0])
    assert not c.contains([1, 0, 0, 0])


def test_degree_must_be_non_negative():
    with pytest.raises(ValueError):
        hilbert(build_T((0,)), -1)


def _series_product(f, g, n):
    return [sum(f[k] * g[m - k] for k in range(m + 1)) for m in range(n + 1)]


@given(seeds, formats, formats)
def test_tensor_series_multiply(seed, fa, fb):
    rng = random.Random(seed)
    a, b = random_algebra(rng, fa), random_algebra(rng, fb)
    ha, hb = hilbert(a, 4), hilbert(b, 4)
    assert hilbert(tensor(a, b), 4) == _series_product(ha, hb, 4)
    assert hilbert(graded_tensor(a, b), 4) == _series_product(ha, hb, 4)


@given(seeds, formats, formats)
def test_coproduct_series(seed, fa, fb):
    # 1/h = 1/h_a + 1/h_b - 1 for the free product
    rng = random.Random(seed)
    a, b = random_algebra(rng, fa), random_algebra(rng, fb)

    def inverse(h):
        out = [1]
        for m in range(1, len(h)):
            out.append(-sum(h[k] * out[m - k] for k in range(1, m + 1)))
        return out

    ia, ib = inverse(hilbert(a, 4)), inverse(hilbert(b, 4))
    target = [x + y - (m == 0) for m, (x, y) in enumerate(zip(ia, ib))]
    assert inverse(hilbert(coproduct(a, b), 4)) == target


def test_coproduct_example():
    c = coproduct(build_S((0, 0)), build_S((0,)))
    assert c.dim == 3
    assert c.relations.dim == 1
    assert hilbert(c, 2) == [1, 3, 8]


# --------------------------------------------------------------------------
# white and black products


def test_white_of_odd_lines():
    odd = build_S((1,))
    w = white(odd, odd)
    assert w.format == (0,)
    assert w == algebra_from_relations((0,), [[1]])
    assert w.generator_names == ("x1.x1",)


@pytest.mark.parametrize("fmt", [(0,), (1,), (0, 1), (1, 1)])
def test_unit_laws(fmt):
    rng = random.Random(sum(fmt) + len(fmt))
    for _ in range(5):
        a = random_algebra(rng, fmt)
        assert white(a, unit_polynomial()) == a
        assert white(unit_polynomial(), a) == a
        assert black(a, unit_dual_numbers()) == a
        assert black(unit_dual_numbers(), a) == a


def test_white_with_free_algebras():
    t = white(build_T((0, 0)), build_T((0,)))
    assert t == build_T((0, 0))


def test_black_with_free_algebra_is_free():
    a = build_S((0, 0))
    assert black(a, build_T((0, 1))).relations.dim == 0


@given(seeds, formats, formats)
def test_white_degree_two_is_tensor_of_pieces(seed, fa, fb):
    rng = random.Random(seed)
    a, b = random_algebra(rng, fa), random_algebra(rng, fb)
    ha, hb, hw = hilbert(a, 2), hilbert(b, 2), hilbert(white(a, b), 2)
    assert hw[2] == ha[2] * hb[2]


@given(seeds, formats, formats)
def test_black_relations_are_products(seed, fa, fb):
    rng = random.Random(seed)
    a, b = random_algebra(rng, fa), random_algebra(rng, fb)
    assert black(a, b).relations.dim == a.relations.dim * b.relations.dim


single_parity = st.tuples(st.integers(1, 2), st.integers(0, 1)).map(lambda t: (t[1],) * t[0])


@given(seeds, single_parity, single_parity)
def test_parity_shift_cancels_in_products(seed, fa, fb):
    rng = random.Random(seed)
    a, b = random_algebra(rng, fa), random_algebra(rng, fb)
    pa, pb = parity_shift(a), parity_shift(b)
    assert white(pa, pb) == white(a, b)
    assert black(pa, pb) == black(a, b)


# --------------------------------------------------------------------------
# Koszul duality


@pytest.mark.parametrize("fmt", [(0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1), (0, 1, 1)])
def test_dual_of_symmetric_is_exterior(fmt):
    assert koszul_dual(build_S(fmt)) == build_Lambda(fmt)
    assert koszul_dual(build_Lambda(fmt)) == build_S(fmt)


def test_dual_of_free_has_all_relations():
    d = koszul_dual(build_T((0, 1)))
    assert d.relations.is_full()
    assert hilbert(d, 3) == [1, 2, 0, 0]


def test_dual_units():
    assert koszul_dual(unit_polynomial()) == unit_dual_numbers()
    assert koszul_dual(unit_K()) == unit_K()


def test_dual_keeps_names():
    assert koszul_dual(build_S((0, 1), ("x", "y"))).generator_names == ("x", "y")


def test_dual_odd_line_relation():
    # θ odd: the pairing sign on θ⊗θ is -1, and R = 0 dualises to all of V⊗V
    free = build_T((1,))
    assert koszul_dual(free).relations.is_full()
    assert koszul_dual(build_S((1,))) == build_T((1,))


@given(seeds, formats)
def test_double_dual(seed, fmt):
    a = random_algebra(random.Random(seed), fmt)
    assert koszul_dual(koszul_dual(a)) == a
    assert koszul_dual(a).relations.dim == a.dim**2 - a.relations.dim


@given(seeds)
def test_koszul_identities_on_fixtures(seed):
    for a, b in fixture_pairs(seed, 6):
        assert all(koszul_identities(a, b).values())


# --------------------------------------------------------------------------
# opposite and parity shift


@given(seeds, formats)
def test_opposite_and_shift_are_involutions(seed, fmt):
    a = random_algebra(random.Random(seed), fmt)
    assert opposite(opposite(a)) == a
    assert parity_shift(parity_shift(a)) == a
    assert koszul_dual(opposite(a)) == opposite(koszul_dual(a))


def test_opposite_example():
    # xy = 0 becomes yx = 0
    a = algebra_from_terms((0, 0), [[(1, (0, 1))]])
    assert opposite(a) == algebra_from_terms((0, 0), [[(1, (1, 0))]])
    odd = algebra_from_terms((1, 1), [[(1, (0, 1))]])
    assert opposite(odd) == algebra_from_terms((1, 1), [[(-1, (1, 0))]])


def test_parity_shift_symmetric_to_exterior():
    # shifting generators but keeping relations
    s = parity_shift(build_S((0, 0)))
    assert s.format == (1, 1)
    assert hilbert(s, 3) == [1, 2, 3, 4]


# --------------------------------------------------------------------------
# idempotents


def test_idempotent_validation():
    with pytest.raises(NotIdempotentError):
        Idempotent((0,), Matrix.from_rows([[2]]))
    with pytest.raises(ParityError):
        Idempotent((0, 1), Matrix.from_rows([[1 if (r, c) == (0, 1) else 0 for c in range(4)]
                                              for r in range(4)]))
    with pytest.raises(DimensionMismatch):
        Idempotent((0, 0), Matrix.identity(3))


@pytest.mark.parametrize("fmt", [(0,), (1,), (0, 0), (0, 1), (1, 1)])
def test_antisymmetrizer_algebras(fmt):
    A = antisymmetrizer_idempotent(fmt)
    assert algebra_X(A) == build_S(fmt)
    assert algebra_Xi(A) == build_Lambda(fmt)
    assert algebra_X(symmetrizer_idempotent(fmt)) == build_Lambda(fmt)


@given(seeds, formats)
def test_x_and_xi_are_dual(seed, fmt):
    B = random_idempotent(random.Random(seed), fmt)
    assert koszul_dual(algebra_X(B)) == algebra_Xi(B)
    assert algebra_X(B.with_complement()) == koszul_dual(algebra_Xi(B.with_complement()))


@given(seeds, formats)
def test_idempotent_operations_stay_idempotent(seed, fmt):
    B = random_idempotent(random.Random(seed), fmt)
    assert B.dual().dual() == B
    assert B.swap_conjugate().swap_conjugate() == B
    assert B.parity_change().format == tuple(1 - k for k in fmt)
    assert B.parity_change().parity_change() == B
    if len(set(fmt)) == 1:
        assert B.parity_change().matrix == B.matrix
    assert B.with_complement().with_complement() == B


def test_x_of_opposite_idempotent():
    B = random_idempotent(random.Random(5), (0, 1))
    assert algebra_X(B.swap_conjugate()) == opposite(algebra_X(B))


# --------------------------------------------------------------------------
# homomorphisms and transport


def test_free_maps_onto_polynomial():
    one = Matrix.identity(2)
    assert check_homomorphism(one, build_T((0, 0)), build_S((0, 0)))
    assert not check_homomorphism(one, build_S((0, 0)), build_T((0, 0)))


def test_homomorphism_shape_and_parity():
    with pytest.raises(FormatMismatch):
        check_homomorphism(Matrix.identity(3), build_T((0, 0)), build_S((0, 0)))
    with pytest.raises(ParityError):
        check_homomorphism(Matrix.identity(2), build_T((0, 1)), build_S((1, 0)))


def test_exterior_to_exterior_by_scaling():
    m = Matrix.diagonal([2, 3])
    assert check_homomorphism(m, build_Lambda((0, 0)), build_Lambda((0, 0)))


def test_transport_swap_generators():
    a = algebra_from_terms((0, 0), [[(1, (0, 0))]])
    swapped = transport(a, Matrix.from_rows([[0, 1], [1, 0]]))
    assert swapped == algebra_from_terms((0, 0), [[(1, (1, 1))]])


@given(seeds, formats)
def test_identity_is_homomorphism(seed, fmt):
    a = random_algebra(random.Random(seed), fmt)
    assert check_homomorphism(Matrix.identity(len(fmt)), a, a)
    assert check_homomorphism(Matrix.identity(len(fmt)), build_T(fmt), a)


def test_rank_oracle_on_components():
    # quotient dimension from the independent elimination matches
    a = build_S((0, 1))
    c = component(a, 3)
    rows = [[r.get(i, 0) for i in range(c.ambient_dim)] for r in c._rows]
    assert c.ambient_dim - oracles.rank(rows) == c.quotient_dim == sym_series((0, 1), 3)[3]
