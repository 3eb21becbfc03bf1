"""Matrices over quadratic super-algebras and the (B, B̃)-Manin condition.

A first-order matrix M has entries M^i_a in the degree-1 part of an ambient
algebra, stored as coordinate vectors over the ambient generators.  Scalar
matrices (degree 0) live over the ground field and store one rational per
entry.  Rows carry the format k of B, columns the format l of B̃.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    Idempotent,
    QuadraticSuperAlgebra,
    algebra_X,
    algebra_Xi,
    black,
    check_homomorphism,
    koszul_dual,
    tensor_format,
    transport,
    unit_K,
    unit_polynomial,
    white,
)
from .errors import ConsistencyError, FormatMismatch, ParityError
from .linalg import Matrix, integer_row, intersect, span_sparse, to_fraction
from .superlinear import Format, apply_map, make_format, sigma23_map
from .algebra import _algebra, _pair_names, _r_tensor_w2, _v2_tensor_s


@dataclass(frozen=True)
class AlgebraMatrix:
    row_format: Format
    col_format: Format
    ambient: QuadraticSuperAlgebra
    entries: tuple  # entries[i][a] is a coordinate tuple
    degree: int = 1

    def __post_init__(self):
        rf, cf = make_format(self.row_format), make_format(self.col_format)
        object.__setattr__(self, "row_format", rf)
        object.__setattr__(self, "col_format", cf)
        width = self.ambient.dim if self.degree == 1 else 1
        if self.degree not in (0, 1):
            raise ValueError("matrix entries must have degree 0 or 1")
        if self.degree == 0 and self.ambient.dim != 0:
            raise FormatMismatch("scalar matrices live over the ground field")
        ent = tuple(tuple(tuple(to_fraction(x) for x in e) for e in row) for row in self.entries)
        if len(ent) != len(rf) or any(len(row) != len(cf) for row in ent):
            raise FormatMismatch(f"entries do not form a {len(rf)}x{len(cf)} grid")
        for i, row in enumerate(ent):
            for a, e in enumerate(row):
                if len(e) != width:
                    raise FormatMismatch(f"entry ({i},{a}) has {len(e)} coordinates, expected {width}")
                want = (rf[i] + cf[a]) % 2
                if self.degree == 0:
                    if e[0] and want:
                        raise ParityError(f"scalar entry ({i},{a}) joins opposite parities")
                elif any(x and self.ambient.format[p] != want for p, x in enumerate(e)):
                    raise ParityError(f"entry ({i},{a}) must have parity {want}")
        object.__setattr__(self, "entries", ent)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_format), len(self.col_format)

    def entry(self, i: int, a: int) -> tuple[Fraction, ...]:
        return self.entries[i][a]

    @property
    def width(self) -> int:
        return self.ambient.dim if self.degree == 1 else 1


def scalar_matrix(row_format, col_format, values: Sequence[Sequence]) -> AlgebraMatrix:
    return AlgebraMatrix(row_format, col_format, unit_K(),
                         tuple(tuple((x,) for x in row) for row in values), degree=0)


def scalar_values(m: AlgebraMatrix) -> Matrix:
    if m.degree != 0:
        raise FormatMismatch("not a scalar matrix")
    return Matrix.from_rows([[e[0] for e in row] for row in m.entries], cols=m.shape[1])


def super_transpose(m: AlgebraMatrix) -> AlgebraMatrix:
    """(M^st)^a_i = (-1)^{(k_i + l_a) l_a} M^i_a."""
    k, l = m.row_format, m.col_format
    ent = tuple(
        tuple(_scaled(m.entries[i][a], (-1) ** ((k[i] + l[a]) * l[a])) for i in range(len(k)))
        for a in range(len(l))
    )
    return AlgebraMatrix(l, k, m.ambient, ent, m.degree)


def inverse_super_transpose(m: AlgebraMatrix) -> AlgebraMatrix:
    """(M^ist)^a_i = (-1)^{(k_i + l_a) k_i} M^i_a."""
    k, l = m.row_format, m.col_format
    ent = tuple(
        tuple(_scaled(m.entries[i][a], (-1) ** ((k[i] + l[a]) * k[i])) for i in range(len(k)))
        for a in range(len(l))
    )
    return AlgebraMatrix(l, k, m.ambient, ent, m.degree)


def _scaled(v, c):
    return tuple(c * x for x in v)


def _product(u, v, degree: int) -> tuple[Fraction, ...]:
    if degree == 0:
        return (u[0] * v[0],)
    return tuple(x * y for x in u for y in v)


def bracket_compose(m: AlgebraMatrix, n: AlgebraMatrix, reduce: bool = True) -> dict:
    """Entries of M^(1) N^(2) keyed by ((i, j), (a, b)).

    (M^(1)N^(2))^{ij}_{ab} = (-1)^{(k_i + l_a) k'_j} M^i_a N^j_b, as a degree-2
    coordinate vector; with ``reduce`` it is replaced by its normal form modulo
    the ambient relations.
    """
    if m.ambient != n.ambient or m.degree != n.degree:
        raise FormatMismatch("matrices live over different algebras")
    k, l, k2 = m.row_format, m.col_format, n.row_format
    out = {}
    rel = m.ambient.relations if (reduce and m.degree == 1) else None
    for i in range(len(k)):
        for j in range(len(k2)):
            for a in range(len(l)):
                for b in range(len(n.col_format)):
                    sign = (-1) ** ((k[i] + l[a]) * k2[j])
                    v = _scaled(_product(m.entries[i][a], n.entries[j][b], m.degree), sign)
                    out[(i, j), (a, b)] = rel.reduce(v) if rel is not None else v
    return out


@dataclass(frozen=True)
class ManinVerdict:
    manin: bool
    violation: dict | None = None

    def to_json(self) -> dict:
        if self.violation is None:
            return {"manin": self.manin, "violation": None}
        v = dict(self.violation)
        v["residue"] = [str(x) for x in v["residue"]]
        return {"manin": self.manin, "violation": v}

    def __bool__(self):
        return self.manin


def manin_residues(m: AlgebraMatrix, B: Idempotent, Bt: Idempotent):
    """Yield ((s, t, c, d), residue) in lexicographic order.

    residue = Σ (-1)^{(k_i + l_a) k_j} B^{st}_{ij} M^i_a M^j_b S̃^{ab}_{cd}, reduced
    modulo the ambient relations.
    """
    if m.row_format != B.format or m.col_format != Bt.format:
        raise FormatMismatch("matrix formats do not match the idempotents")
    d, dt = B.dim, Bt.dim
    grid = bracket_compose(m, m, reduce=False)
    width = len(next(iter(grid.values()))) if grid else 0
    zero = (Fraction(0),) * width
    St = Bt.complement
    # contract with S̃ first: H[(i,j)][(c,d)] = Σ_ab G[(i,j),(a,b)] S̃[(a,b),(c,d)]
    H = {}
    for i in range(d):
        for j in range(d):
            for cd in range(dt * dt):
                acc = list(zero)
                for a in range(dt):
                    for b in range(dt):
                        s = St.data[a * dt + b][cd]
                        if s:
                            g = grid[(i, j), (a, b)]
                            for p, x in enumerate(g):
                                if x:
                                    acc[p] += s * x
                H[i * d + j, cd] = acc
    rel = m.ambient.relations if m.degree == 1 else None
    for st in range(d * d):
        brow = B.matrix.data[st]
        for cd in range(dt * dt):
            acc = list(zero)
            for ij, x in enumerate(brow):
                if x:
                    for p, y in enumerate(H[ij, cd]):
                        if y:
                            acc[p] += x * y
            res = rel.reduce(acc) if rel is not None else tuple(acc)
            s, t = divmod(st, d)
            c, e = divmod(cd, dt)
            yield (s, t, c, e), res


def is_manin(m: AlgebraMatrix, B: Idempotent, Bt: Idempotent) -> ManinVerdict:
    for (s, t, c, d), res in manin_residues(m, B, Bt):
        if any(res):
            return ManinVerdict(False, {"s": s, "t": t, "c": c, "d": d, "residue": list(res)})
    return ManinVerdict(True)


# --------------------------------------------------------------------------
# the equivalent homomorphism criteria


def fm_homomorphism(m: AlgebraMatrix, B: Idempotent, Bt: Idempotent) -> bool:
    """Whether x^i ↦ Σ_a M^i_a ⊗ y^a defines 𝔛_B → ambient ∘ 𝔛_B̃.

    For scalar matrices the target is 𝔛_B̃ itself with x^i ↦ Σ_a M^i_a y^a.
    """
    _check_formats(m, B, Bt)
    src, tgt = algebra_X(B), algebra_X(Bt)
    d, dt = B.dim, Bt.dim
    if m.degree == 0:
        f1 = Matrix.from_columns(
            [[m.entries[i][a][0] for a in range(dt)] for i in range(d)], dt)
        return check_homomorphism(f1, src, tgt)
    amb = m.ambient
    target = white(amb, tgt)
    cols = []
    for i in range(d):
        col = [Fraction(0)] * (amb.dim * dt)
        for a in range(dt):
            for p, x in enumerate(m.entries[i][a]):
                col[p * dt + a] += x
        cols.append(col)
    return check_homomorphism(Matrix.from_columns(cols, amb.dim * dt), src, target)


def xi_homomorphism(m: AlgebraMatrix, B: Idempotent, Bt: Idempotent) -> bool:
    """Whether ψ̃_a ↦ Σ_i ψ_i ⊗ M^i_a defines Ξ_B̃ → Ξ_B ∘ ambient."""
    _check_formats(m, B, Bt)
    src, tgt = algebra_Xi(Bt), algebra_Xi(B)
    d, dt = B.dim, Bt.dim
    if m.degree == 0:
        f1 = Matrix.from_columns(
            [[m.entries[i][a][0] for i in range(d)] for a in range(dt)], d)
        return check_homomorphism(f1, src, tgt)
    amb = m.ambient
    target = white(tgt, amb)
    cols = []
    for a in range(dt):
        col = [Fraction(0)] * (d * amb.dim)
        for i in range(d):
            for p, x in enumerate(m.entries[i][a]):
                col[i * amb.dim + p] += x
        cols.append(col)
    return check_homomorphism(Matrix.from_columns(cols, d * amb.dim), src, target)


def _check_formats(m, B, Bt):
    if m.row_format != B.format or m.col_format != Bt.format:
        raise FormatMismatch("matrix formats do not match the idempotents")


# --------------------------------------------------------------------------
# universal Manin matrices


@dataclass(frozen=True)
class UniversalManinAlgebra:
    """𝒰_{B,B̃}: generators ℳ^i_a at flat index i * d̃ + a."""

    algebra: QuadraticSuperAlgebra
    B: Idempotent
    Bt: Idempotent

    def matrix(self) -> AlgebraMatrix:
        d, dt = self.B.dim, self.Bt.dim
        n = d * dt
        ent = tuple(
            tuple(tuple(Fraction(int(q == i * dt + a)) for q in range(n)) for a in range(dt))
            for i in range(d)
        )
        return AlgebraMatrix(self.B.format, self.Bt.format, self.algebra, ent)


def _row_basis(m: Matrix) -> list[dict[int, int]]:
    return span_sparse((integer_row(r) for r in m.data), m.cols).integer_rows()


def universal_manin_algebra(B: Idempotent, Bt: Idempotent) -> UniversalManinAlgebra:
    """Relations Σ (-1)^{(k_i + l_a) k_j} B^{st}_{ij} S̃^{ab}_{cd} ℳ^i_a ℳ^j_b = 0.

    The relation space only depends on the row space of B and the column space
    of S̃, so bases of those are enumerated instead of all (s, t, c, d).
    """
    k, l = B.format, Bt.format
    d, dt = len(k), len(l)
    n = d * dt
    brows = _row_basis(B.matrix)
    scols = _row_basis(Bt.complement.T)
    rows = []
    for br in brows:
        for sc in scols:
            v = {}
            for ij, x in br.items():
                i, j = divmod(ij, d)
                for ab, y in sc.items():
                    a, b = divmod(ab, dt)
                    sign = -1 if ((k[i] + l[a]) * k[j]) % 2 else 1
                    v[(i * dt + a) * n + j * dt + b] = sign * x * y
            rows.append(v)
    names = tuple(f"M{i + 1}_{a + 1}" for i in range(d) for a in range(dt))
    return UniversalManinAlgebra(_algebra(tensor_format(k, l), rows, names), B, Bt)


# --------------------------------------------------------------------------
# cohom


def cohom_bullet(b: QuadraticSuperAlgebra, a: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """a • b^!: generators V ⊗ W* ≅ hom(W, V)."""
    return black(a, koszul_dual(b))


def cohom_preimage(b: QuadraticSuperAlgebra, a: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """Relations: maps ξ: W⊗W → V⊗V with ξ(W⊗W) ⊂ R and ξ(S) = 0.

    In V⊗V⊗W*⊗W* these are (R ⊗ W*²) ∩ (V² ⊗ S^⊥); σ^(23) carries them to
    (V⊗W*)^{⊗2}.
    """
    dv, dw = a.dim, b.dim
    amb = (dv * dw) ** 2
    sperp = koszul_dual(b)
    first = span_sparse(_r_tensor_w2(a.relation_rows(), dv, dw), amb)
    second = span_sparse(_v2_tensor_s(sperp.relation_rows(), dv, dw), amb)
    both = intersect(first, second)
    m = sigma23_map(a.format, b.format)
    rows = [apply_map(m, r) for r in both.integer_rows()]
    return _algebra(tensor_format(a.format, b.format), rows, _pair_names(a, b))


def swap_iso_check(a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> bool:
    """cohom(b, a) transported by σ: V⊗W* → W*⊗V equals cohom(a^!, b^!)."""
    left = cohom_bullet(b, a)
    right = cohom_bullet(koszul_dual(a), koszul_dual(b))
    fa, fb = a.format, b.format
    dv, dw = len(fa), len(fb)
    n = dv * dw
    P = [[Fraction(0)] * n for _ in range(n)]
    for i in range(dv):
        for x in range(dw):
            P[x * dv + i][i * dw + x] = Fraction((-1) ** (fa[i] * fb[x]))
    moved = transport(left, Matrix(n, n, tuple(tuple(r) for r in P)), tensor_format(fb, fa))
    return moved == right


# --------------------------------------------------------------------------
# coend comonoid


@dataclass(frozen=True)
class CoendComonoid:
    """𝒰_B with Δ(ℳ^i_j) = Σ_l ℳ^i_l ⊗ ℳ^l_j and ε(ℳ^i_j) = δ^i_j.

    ``comult`` is the (n²)² × n² matrix sending generator (i, j) to the
    coordinates of its image in 𝒰_B ∘ 𝒰_B, whose generator (g, h) sits at
    g * n² + h.  ``counit`` lists ε on the generators.
    """

    universal: UniversalManinAlgebra
    comult: Matrix
    counit: tuple

    @property
    def algebra(self) -> QuadraticSuperAlgebra:
        return self.universal.algebra


def matrix_comultiplication(n: int) -> Matrix:
    m = n * n
    cols = []
    for i in range(n):
        for j in range(n):
            col = [Fraction(0)] * (m * m)
            for l in range(n):
                col[(i * n + l) * m + l * n + j] = Fraction(1)
            cols.append(col)
    return Matrix.from_columns(cols, m * m)


def matrix_counit(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == j)) for i in range(n) for j in range(n))


def coend(B: Idempotent, verify: bool = True) -> CoendComonoid:
    u = universal_manin_algebra(B, B)
    n = B.dim
    c = CoendComonoid(u, matrix_comultiplication(n), matrix_counit(n))
    if verify:
        report = check_comonoid(c.algebra, c.comult, c.counit)
        failed = [k for k, ok in report.items() if not ok]
        if failed:
            raise ConsistencyError(f"coend comonoid axioms failed: {', '.join(failed)}")
    return c


def check_comonoid(a: QuadraticSuperAlgebra, comult: Matrix, counit: Sequence) -> dict[str, bool]:
    """Axioms of a comonoid structure given on generators.

    Δ must extend to a homomorphism a → a ∘ a, ε must kill the relations (so
    x ↦ ε(x) u extends to a → K[u]), and coassociativity and the counit laws
    are compared as exact coordinate vectors.
    """
    m = a.dim
    eps = [to_fraction(x) for x in counit]
    if (comult.rows, comult.cols) != (m * m, m) or len(eps) != m:
        raise FormatMismatch("comultiplication or counit has the wrong shape")
    report = {}
    try:
        report["homomorphism"] = check_homomorphism(comult, a, white(a, a))
    except ParityError:
        report["homomorphism"] = False
    report["counit_homomorphism"] = counit_homomorphism(a, eps)
    # (Δ ⊗ id)Δ and (id ⊗ Δ)Δ as maps into a^{⊗3}
    ident = Matrix.identity(m)
    left = comult.kron(ident) @ comult
    right = ident.kron(comult) @ comult
    report["coassociative"] = left == right
    e_row = Matrix(1, m, (tuple(eps),))
    report["counit_left"] = e_row.kron(ident) @ comult == ident
    report["counit_right"] = ident.kron(e_row) @ comult == ident
    return report


def counit_homomorphism(a: QuadraticSuperAlgebra, counit: Sequence) -> bool:
    """Whether x ↦ ε(x) u extends to a homomorphism a → K[u]."""
    f1 = Matrix(1, a.dim, (tuple(to_fraction(x) for x in counit),))
    try:
        return check_homomorphism(f1, a, unit_polynomial())
    except ParityError:
        return False
