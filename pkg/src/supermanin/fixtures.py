"""Seeded random fixtures: algebras, idempotents, matrices and representations.

Every generator takes a ``random.Random`` so runs are reproducible from a
single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import (
    Idempotent,
    QuadraticSuperAlgebra,
    algebra_from_relations,
)
from .errors import ConsistencyError
from .linalg import Matrix, inverse, rank
from .manin import AlgebraMatrix, coend, scalar_matrix, universal_manin_algebra
from .quantum import ClassicalModule, QuantumRepresentation, lift_classical_module, universal_representation
from .superlinear import Format, tensor_format

# the four formats of a two-dimensional space
PARITY_PATTERNS = ((0, 0), (0, 1), (1, 0), (1, 1))


def random_format(rng: random.Random, d: int) -> Format:
    return tuple(rng.randint(0, 1) for _ in range(d))


def random_homogeneous_vector(rng: random.Random, sq: Format, parity: int, spread: int = 2):
    while True:
        v = [Fraction(rng.randint(-spread, spread)) if p == parity else Fraction(0) for p in sq]
        if any(v):
            return v


def random_algebra(rng: random.Random, fmt: Format, max_relations: int | None = None) -> QuadraticSuperAlgebra:
    """Random parity-homogeneous relations; their count ranges over 0..d²."""
    d = len(fmt)
    sq = tensor_format(fmt, fmt)
    blocks = sorted(set(sq))
    top = d * d if max_relations is None else max_relations
    vecs = []
    for _ in range(rng.randint(0, top)):
        vecs.append(random_homogeneous_vector(rng, sq, rng.choice(blocks)))
    return algebra_from_relations(fmt, vecs)


def random_even_invertible(rng: random.Random, fmt: Format, spread: int = 2) -> tuple[Matrix, Matrix]:
    n = len(fmt)
    while True:
        G = Matrix.from_rows(
            [[rng.randint(-spread, spread) if fmt[r] == fmt[c] else 0 for c in range(n)]
             for r in range(n)], cols=n)
        if rank(G) == n:
            return G, inverse(G)


def random_idempotent(rng: random.Random, fmt: Format) -> Idempotent:
    """G P G⁻¹ with P a random 0/1 diagonal projector and G even invertible."""
    sq = tensor_format(fmt, fmt)
    G, Gi = random_even_invertible(rng, sq)
    P = Matrix.diagonal([rng.randint(0, 1) for _ in sq])
    return Idempotent(fmt, G @ P @ Gi)


def fixture_pairs(seed: int, count: int, max_dim: int = 2):
    """Pairs (a, b) cycling through the parity patterns for both factors."""
    rng = random.Random(seed)
    formats = [p[:max_dim] for p in PARITY_PATTERNS] + [(0,), (1,)]
    formats = list(dict.fromkeys(f for f in formats if len(f) <= max_dim))
    out = []
    for n in range(count):
        fa = formats[n % len(formats)]
        fb = formats[(n // len(formats)) % len(formats)]
        out.append((random_algebra(rng, fa), random_algebra(rng, fb)))
    return out


def idempotent_pairs(seed: int, count: int, max_dim: int = 2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = random_format(rng, rng.randint(1, max_dim))
        l = random_format(rng, rng.randint(1, max_dim))
        out.append((random_idempotent(rng, k), random_idempotent(rng, l)))
    return out


def _quotient(rng, a: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    sq = a.square_format
    extra = [random_homogeneous_vector(rng, sq, rng.choice(sorted(set(sq))))
             for _ in range(rng.randint(1, 2))]
    return algebra_from_relations(a.format, list(a.relations.basis) + extra, a.names)


def fixture_matrices(seed: int, count: int, max_dim: int = 2):
    """Triples (M, B, B̃) mixing Manin and non-Manin matrices.

    Kinds, in rotation: the universal matrix; its image in a random quotient of
    the universal algebra (still Manin); a random matrix over a random algebra;
    the universal matrix checked against unrelated idempotents; and scalar
    matrices (identity with B̃ = B, random even ones).
    """
    rng = random.Random(seed)
    out = []
    for n in range(count):
        k = random_format(rng, rng.randint(1, max_dim))
        l = random_format(rng, rng.randint(1, max_dim))
        B, Bt = random_idempotent(rng, k), random_idempotent(rng, l)
        kind = n % 5
        if kind == 0:
            M = universal_manin_algebra(B, Bt).matrix()
        elif kind == 1:
            U = universal_manin_algebra(B, Bt)
            amb = _quotient(rng, U.algebra)
            M = AlgebraMatrix(k, l, amb, U.matrix().entries)
        elif kind == 2:
            amb = random_algebra(rng, tensor_format(k, l))
            ent = [[tuple(Fraction(rng.randint(-1, 1)) if amb.format[p] == (k[i] + l[a]) % 2 else 0
                          for p in range(amb.dim)) for a in range(len(l))] for i in range(len(k))]
            M = AlgebraMatrix(k, l, amb, ent)
        elif kind == 3:
            U = universal_manin_algebra(B, Bt)
            B, Bt = random_idempotent(rng, k), random_idempotent(rng, l)
            M = U.matrix()
        else:
            if rng.random() < 0.5:
                Bt = B
                l = k
                vals = [[int(i == a) for a in range(len(k))] for i in range(len(k))]
            else:
                vals = [[rng.randint(-1, 1) if k[i] == l[a] else 0 for a in range(len(l))]
                        for i in range(len(k))]
            M = scalar_matrix(k, l, vals)
        out.append((M, B, Bt))
    return out


def dual_numbers_module(nilpotent=((0, 1), (0, 0))) -> ClassicalModule:
    """K[e]/(e²) on K² with e acting by the given matrix (default E₁₂)."""
    return ClassicalModule(
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        [1, 0],
        (0, 0),
        [[[1, 0], [0, 1]], [list(r) for r in nilpotent]],
    )


def grassmann_module() -> ClassicalModule:
    """K[θ]/(θ²), θ odd, on K^{1|1} with θ acting by E₁₂."""
    return ClassicalModule(
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        [1, 0],
        (0, 1),
        [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        space_format=(0, 1),
    )


def matrix_algebra_module(d: int = 2) -> ClassicalModule:
    """Mat_d(K) acting on K^d, basis E_ij in row-major order."""
    n = d * d
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(d):
        for j in range(d):
            for l in range(d):
                c[i * d + j][j * d + l][i * d + l] = 1
    unit = [int(i == j) for i in range(d) for j in range(d)]
    action = [[[int(r == i and s == j) for s in range(d)] for r in range(d)]
              for i in range(d) for j in range(d)]
    return ClassicalModule(c, unit, (0,) * n, action)


def fixture_representations(seed: int, count: int, max_dim: int = 2) -> list[QuantumRepresentation]:
    """Universal representations over coend(B) for random B, plus lifted modules."""
    rng = random.Random(seed)
    reps = [
        lift_classical_module(dual_numbers_module()),
        lift_classical_module(grassmann_module()),
        lift_classical_module(matrix_algebra_module(2)),
        lift_classical_module(dual_numbers_module(), through="T"),
    ]
    while len(reps) < count:
        k = random_format(rng, rng.randint(1, max_dim))
        reps.append(universal_representation(coend(random_idempotent(rng, k))))
    for r in reps:
        if not r.is_valid():
            raise ConsistencyError("fixture representation failed validation")
    return reps[:count]
