import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supermanin.algebra import Idempotent, antisymmetrizer_idempotent, build_S, opposite
from supermanin.errors import FormatMismatch, InvalidStructure, ParityError
from supermanin.fixtures import (
    dual_numbers_module,
    fixture_representations,
    grassmann_module,
    matrix_algebra_module,
    random_format,
    random_idempotent,
)
from supermanin.linalg import Matrix
from supermanin.manin import AlgebraMatrix, coend, inverse_super_transpose, scalar_matrix
from supermanin.quantum import (
    BialgebraPresentation,
    ClassicalModule,
    LinearAction,
    QuantumRepresentation,
    action_from_representation,
    check_multiplicative,
    coaction_axioms,
    coopposite_representation,
    cop_comult,
    dual_coaction,
    intertwiner_check,
    lift_classical_module,
    opposite_representation,
    parity_change_representation,
    representation,
    representation_from_action,
    trivial_bialgebra,
    universal_representation,
)

seeds = st.integers(0, 10**6)
REPS = fixture_representations(7, 12)


def random_universal(seed):
    rng = random.Random(seed)
    return universal_representation(coend(random_idempotent(rng, random_format(rng, rng.randint(1, 2)))))


# --------------------------------------------------------------------------
# multiplicativity


@given(seeds)
@settings(max_examples=15)
def test_universal_representation_is_valid(seed):
    rep = random_universal(seed)
    assert rep.validate() == {"manin": True, "multiplicative": True}


def test_trivial_bialgebra_identity():
    host = trivial_bialgebra()
    one = scalar_matrix((0, 1), (0, 1), [[1, 0], [0, 1]])
    assert check_multiplicative(one, host)
    assert not check_multiplicative(scalar_matrix((0,), (0,), [[2]]), host)
    # idempotent but not the identity
    assert not check_multiplicative(scalar_matrix((0, 0), (0, 0), [[1, 0], [0, 0]]), host)


def test_swapped_entries_are_not_multiplicative():
    rep = universal_representation(coend(antisymmetrizer_idempotent((0, 0))))
    M = rep.M
    swapped = AlgebraMatrix(M.row_format, M.col_format, M.ambient,
                            [list(reversed(row)) for row in M.entries])
    assert not check_multiplicative(swapped, rep.host)


def test_multiplicative_needs_square_matrix():
    rep = universal_representation(coend(antisymmetrizer_idempotent((0,))))
    with pytest.raises(FormatMismatch):
        check_multiplicative(scalar_matrix((0,), (0,), [[1]]), rep.host)


def test_representation_rejects_invalid():
    host = trivial_bialgebra()
    B = antisymmetrizer_idempotent((0,))
    assert representation(host, B, scalar_matrix((0,), (0,), [[1]])).is_valid()
    with pytest.raises(InvalidStructure):
        representation(host, B, scalar_matrix((0,), (0,), [[3]]))


def test_bialgebra_axioms_checked():
    a = build_S((0,))
    with pytest.raises(InvalidStructure):
        BialgebraPresentation(a, Matrix.zeros(1, 1), (1,))
    with pytest.raises(FormatMismatch):
        BialgebraPresentation(a, Matrix.zeros(2, 1), (1,))


def test_cop_comult_of_coend():
    c = coend(antisymmetrizer_idempotent((0, 0)))
    cop = cop_comult(c.algebra, c.comult)
    # Δ^cop(M^0_1) = M^0_1 ⊗ M^0_0 + M^1_1 ⊗ M^0_1
    assert [k for k, x in enumerate(cop.column(1)) if x] == [1 * 4 + 0, 3 * 4 + 1]
    assert cop_comult(c.algebra, cop) == c.comult


# --------------------------------------------------------------------------
# coactions


@pytest.mark.parametrize("rep", REPS, ids=range(len(REPS)))
def test_action_round_trip(rep):
    action = action_from_representation(rep)
    assert representation_from_action(action) == rep
    assert all(coaction_axioms(action).values())


def test_action_parity_checked():
    rep = lift_classical_module(grassmann_module())
    d = rep.B.dim
    bad = [[0] * d for _ in range(rep.host.dim * d)]
    bad[0 * d + 1][0] = 1  # an even host generator in an odd slot
    with pytest.raises(ParityError):
        representation_from_action(LinearAction(rep.host, rep.B, Matrix.from_rows(bad, cols=d)))


def test_action_shape_checked():
    rep = REPS[0]
    with pytest.raises(FormatMismatch):
        representation_from_action(LinearAction(rep.host, rep.B, Matrix.zeros(1, 1)))


def test_broken_coaction_detected():
    rep = lift_classical_module(dual_numbers_module())
    delta = action_from_representation(rep).delta.scale(2)
    report = coaction_axioms(LinearAction(rep.host, rep.B, delta))
    assert not report["counit"]
    assert not report["coassociative"]


@pytest.mark.parametrize("rep", REPS, ids=range(len(REPS)))
def test_dual_coaction_matches_coopposite(rep):
    # moving ψ_j past M^j_i costs (-1)^{k_j (k_i + k_j)}
    k, m, d = rep.B.format, rep.host.dim, rep.B.dim
    dual = dual_coaction(rep)
    moved = [[Fraction(0)] * d for _ in range(m * d)]
    for i in range(d):
        for j in range(d):
            sign = (-1) ** (k[j] * (k[i] + k[j]))
            for p in range(m):
                moved[p * d + j][i] = sign * dual.data[j * m + p][i]
    cop = coopposite_representation(rep)
    assert action_from_representation(cop).delta == Matrix.from_rows(moved, cols=d)


# --------------------------------------------------------------------------
# intertwiners


def _commutes_with_action(K, mod):
    return all(K @ a == a @ K for a in mod.action)


def test_intertwiners_of_dual_numbers_by_brute_force():
    mod = dual_numbers_module()
    rep = lift_classical_module(mod)
    found = 0
    for vals in product((-1, 0, 1), repeat=4):
        K = [list(vals[:2]), list(vals[2:])]
        expected = _commutes_with_action(Matrix.from_rows(K), mod)
        assert intertwiner_check(scalar_matrix((0, 0), (0, 0), K), rep, rep) == expected
        found += expected
    # the commutant of E12 is {a + b E12}
    assert found == 9


@pytest.mark.parametrize("rep", REPS[:6], ids=range(6))
def test_identity_and_zero_intertwine(rep):
    k = rep.B.format
    d = len(k)
    one = scalar_matrix(k, k, [[int(i == j) for j in range(d)] for i in range(d)])
    zero = scalar_matrix(k, k, [[0] * d for _ in range(d)])
    assert intertwiner_check(one, rep, rep)
    assert intertwiner_check(zero, rep, rep)


def test_permutation_is_not_an_intertwiner_of_the_universal_rep():
    rep = universal_representation(coend(antisymmetrizer_idempotent((0, 0))))
    P = scalar_matrix((0, 0), (0, 0), [[0, 1], [1, 0]])
    assert not intertwiner_check(P, rep, rep)


def test_intertwiner_must_be_scalar():
    rep = REPS[0]
    with pytest.raises(FormatMismatch):
        intertwiner_check(rep.M, rep, rep)


# --------------------------------------------------------------------------
# derived representations


@pytest.mark.parametrize("rep", REPS, ids=range(len(REPS)))
def test_closure(rep):
    op = opposite_representation(rep)
    assert op.host.algebra == opposite(rep.host.algebra)
    assert op.B == rep.B.swap_conjugate()
    assert op.is_valid()
    cop = coopposite_representation(rep)
    assert cop.M == inverse_super_transpose(rep.M)
    assert cop.B == rep.B.dual().with_complement()
    assert cop.is_valid()
    pc = parity_change_representation(rep)
    assert pc.B.format == tuple(1 - x for x in rep.B.format)
    assert pc.is_valid()
    assert pc.M.entries == rep.M.entries
    assert parity_change_representation(pc) == rep


def test_parity_change_needs_the_sign_twist():
    # the unsigned matrix on the flipped format is not always Manin for M
    failures = 0
    for rep in REPS:
        f = tuple(1 - x for x in rep.B.format)
        plain = QuantumRepresentation(
            rep.host, Idempotent(f, rep.B.matrix),
            AlgebraMatrix(f, f, rep.M.ambient, rep.M.entries))
        failures += not plain.validate()["manin"]
    assert failures > 0


def test_coopposite_with_transposed_idempotent_fails_somewhere():
    failures = 0
    for rep in REPS:
        cop = coopposite_representation(rep)
        alt = QuantumRepresentation(cop.host, rep.B.dual(), cop.M)
        failures += not alt.validate()["manin"]
    assert failures > 0


# --------------------------------------------------------------------------
# lifting classical modules


def test_lift_of_ground_field():
    triv = ClassicalModule([[[1]]], [1], (0,), [[[1]]])
    rep = lift_classical_module(triv)
    assert rep.is_valid()
    assert rep.M.entries == (((Fraction(1),),),)
    # Δ(r*) = r* ⊗ r*
    assert rep.host.comult == Matrix.from_rows([[1]])


@pytest.mark.parametrize("through", ["S", "T"])
def test_lift_of_dual_numbers(through):
    rep = lift_classical_module(dual_numbers_module(), through=through)
    assert rep.is_valid()
    # M = [[r1*, r2*], [0, r1*]]
    assert rep.M.entries[0][1] == (0, 1)
    assert rep.M.entries[1][0] == (0, 0)
    assert rep.host.algebra.generator_names == ("r1*", "r2*")


def test_lift_of_grassmann_module():
    rep = lift_classical_module(grassmann_module())
    assert rep.host.algebra.format == (0, 1)
    assert rep.B.format == (0, 1)
    assert rep.is_valid()


def test_lift_of_matrix_algebra():
    rep = lift_classical_module(matrix_algebra_module(2))
    assert rep.host.dim == 4
    assert rep.is_valid()


def test_non_associative_constants_rejected():
    # e·e = 1 - e is not associative with unit r0
    c = [[[1, 0], [0, 1]], [[0, 1], [1, -1]]]
    with pytest.raises(InvalidStructure):
        ClassicalModule(c, [1, 0], (0, 0), [[[1, 0], [0, 1]], [[0, 0], [0, 0]]])


def test_non_multiplicative_action_rejected():
    with pytest.raises(InvalidStructure):
        dual_numbers_module(nilpotent=((1, 0), (0, 0)))


def test_perturbed_lift_is_not_multiplicative():
    mod = ClassicalModule([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0], (0, 0),
                          [[[1, 0], [0, 1]], [[1, 0], [0, 0]]], check=False)
    rep = lift_classical_module(mod, check=False)
    assert rep.validate()["multiplicative"] is False
    with pytest.raises(InvalidStructure):
        lift_classical_module(mod)


def test_perturbed_constants_break_the_lift():
    # e² = e with ρ(e) = E12: associative, but ρ is not a homomorphism
    mod = ClassicalModule([[[1, 0], [0, 1]], [[0, 1], [0, 1]]], [1, 0], (0, 0),
                          [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], check=False)
    assert mod.homomorphism_defect() == (1, 1)
    assert not lift_classical_module(mod, check=False).is_valid()


def test_odd_unit_rejected():
    with pytest.raises((InvalidStructure, ParityError)):
        ClassicalModule([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [0, 1], (0, 1),
                        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], space_format=(0, 1))


def test_unknown_lift():
    with pytest.raises(ValueError):
        lift_classical_module(dual_numbers_module(), through="X")
