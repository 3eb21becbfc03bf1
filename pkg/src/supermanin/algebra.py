"""Quadratic super-algebras TV/(R) and the operations on them.

An algebra is a generator format together with its relation subspace R of
V ⊗ V.  The coefficient of a relation vector at flat index ``i * d + j`` is
the coefficient of the monomial x^i x^j.  Two presentations compare equal when
their formats and canonical relation subspaces agree; generator names are
display metadata only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    FormatMismatch,
    NotIdempotentError,
    ParityError,
    SizeCapExceeded,
)
from .linalg import (
    EchelonBasis,
    Matrix,
    Subspace,
    integer_row,
    intersect,
    kernel_sparse,
    span_sparse,
    to_fraction,
)
from .superlinear import (
    Format,
    apply_map,
    flip,
    is_even_matrix,
    make_format,
    pairing_signs,
    sigma,
    sigma23_map,
    super_antisymmetrizer,
    super_symmetrizer,
    swap_map,
    tensor_format,
)

DEFAULT_SIZE_CAP = 20000


def default_names(d: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(d))


@dataclass(frozen=True)
class QuadraticSuperAlgebra:
    format: Format
    relations: Subspace
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        d = len(self.format)
        if self.relations.ambient_dim != d * d:
            raise DimensionMismatch(
                f"relations live in dimension {self.relations.ambient_dim}, expected {d * d}"
            )
        if self.names is not None and len(self.names) != d:
            raise DimensionMismatch("one name per generator is required")

    @property
    def dim(self) -> int:
        return len(self.format)

    @property
    def generator_names(self) -> tuple[str, ...]:
        return self.names if self.names is not None else default_names(self.dim)

    @property
    def square_format(self) -> Format:
        return tensor_format(self.format, self.format)

    def relation_rows(self) -> list[dict[int, int]]:
        return self.relations.integer_rows()

    def with_names(self, names: Sequence[str] | None) -> "QuadraticSuperAlgebra":
        return QuadraticSuperAlgebra(self.format, self.relations,
                                     None if names is None else tuple(names))

    def relation_terms(self) -> list[list[tuple[Fraction, tuple[int, int]]]]:
        """Canonical relation basis as lists of (coefficient, (i, j))."""
        d = self.dim
        return [
            [(x, divmod(k, d)) for k, x in enumerate(r) if x]
            for r in self.relations.basis
        ]

    def is_homogeneous(self) -> bool:
        """dim(R ∩ even) + dim(R ∩ odd) = dim R."""
        sq = self.square_format
        n = len(sq)
        dims = [
            intersect(self.relations, _block([i for i in range(n) if sq[i] == p], n)).dim
            for p in (0, 1)
        ]
        return sum(dims) == self.relations.dim


def _block(indices, n) -> Subspace:
    return span_sparse(({i: 1} for i in indices), n)


def _homogeneous(row: dict[int, int], sq: Format, original=None):
    parities = {sq[k] for k in row}
    if len(parities) > 1:
        raise ParityError(
            "relation vector mixes parity blocks of V⊗V",
            offending=original if original is not None else row,
        )


def _sparse(v, n: int) -> dict[int, int]:
    if isinstance(v, dict):
        if any(k < 0 or k >= n for k in v):
            raise DimensionMismatch("relation index outside V⊗V")
        return integer_row([v.get(k, 0) for k in range(n)]) if v else {}
    if len(v) != n:
        raise DimensionMismatch(f"relation vector of length {len(v)}, expected {n}")
    return integer_row(v)


def algebra_from_relations(
    fmt: Sequence[int],
    relation_vectors: Iterable = (),
    names: Sequence[str] | None = None,
) -> QuadraticSuperAlgebra:
    """Presentation with relations spanned by the given vectors of V ⊗ V.

    Vectors may be dense sequences of length d² or sparse ``{flat index: coeff}``
    dicts.  A vector whose support meets both parity blocks is rejected.
    """
    f = make_format(fmt)
    n = len(f) ** 2
    sq = tensor_format(f, f)
    rows = []
    for v in relation_vectors:
        row = _sparse(v, n)
        _homogeneous(row, sq, v)
        rows.append(row)
    return _algebra(f, rows, names)


def _algebra(f: Format, rows, names=None) -> QuadraticSuperAlgebra:
    return QuadraticSuperAlgebra(
        f, span_sparse(rows, len(f) ** 2), None if names is None else tuple(names)
    )


def algebra_from_terms(
    fmt: Sequence[int],
    relations: Iterable[Iterable[tuple]],
    names: Sequence[str] | None = None,
) -> QuadraticSuperAlgebra:
    """Relations given as lists of ``(coeff, (i, j))`` monomial terms."""
    f = make_format(fmt)
    d = len(f)
    vecs = []
    for rel in relations:
        v = [Fraction(0)] * (d * d)
        for coeff, (i, j) in rel:
            if not (0 <= i < d and 0 <= j < d):
                raise DimensionMismatch(f"monomial ({i}, {j}) uses an unknown generator")
            v[i * d + j] += to_fraction(coeff)
        vecs.append(v)
    return algebra_from_relations(f, vecs, names)


# --------------------------------------------------------------------------
# idempotents


@dataclass(frozen=True)
class Idempotent:
    """An even idempotent B on W ⊗ W; entry [(s,t),(i,j)] is B^{st}_{ij}."""

    format: Format
    matrix: Matrix

    def __post_init__(self):
        f = make_format(self.format)
        object.__setattr__(self, "format", f)
        n = len(f) ** 2
        if (self.matrix.rows, self.matrix.cols) != (n, n):
            raise DimensionMismatch(f"idempotent must be {n}x{n}")
        sq = tensor_format(f, f)
        if not is_even_matrix(self.matrix, sq, sq):
            raise ParityError("idempotent is not even for the tensor format")
        if self.matrix @ self.matrix != self.matrix:
            raise NotIdempotentError("B @ B != B")

    @property
    def dim(self) -> int:
        return len(self.format)

    @property
    def complement(self) -> Matrix:
        """S = 1 - B."""
        return Matrix.identity(self.matrix.rows) - self.matrix

    def dual(self) -> "Idempotent":
        """B* in the dual basis: D Bᵀ D with D the pairing signs."""
        return Idempotent(self.format, _conj_signs(self.matrix.T, self.format))

    def parity_change(self) -> "Idempotent":
        """ΠB on ΠW ⊗ ΠW, entry [(s,t),(i,j)] signed by (-1)^{k_s + k_i}.

        The sign comes from identifying Πv ⊗ Πw with (-1)^{[v]} v ⊗ w.  For a
        single-parity format it is trivial and ΠB has the same matrix as B.
        """
        f = self.format
        d = len(f)
        signs = [(-1) ** f[i] for i in range(d) for _ in range(d)]
        m = Matrix(self.matrix.rows, self.matrix.cols, tuple(
            tuple(signs[r] * signs[c] * x for c, x in enumerate(row))
            for r, row in enumerate(self.matrix.data)))
        return Idempotent(flip(f), m)

    def swap_conjugate(self) -> "Idempotent":
        """B^(21) = σ B σ."""
        s = sigma(self.format)
        return Idempotent(self.format, s @ self.matrix @ s)

    def with_complement(self) -> "Idempotent":
        return Idempotent(self.format, self.complement)


def _conj_signs(m: Matrix, f: Format) -> Matrix:
    s = pairing_signs([f, f])
    return Matrix(m.rows, m.cols, tuple(
        tuple(s[r] * s[c] * x for c, x in enumerate(row)) for r, row in enumerate(m.data)))


def idempotent(fmt: Sequence[int], rows: Sequence[Sequence]) -> Idempotent:
    f = make_format(fmt)
    return Idempotent(f, Matrix.from_rows(rows, cols=len(f) ** 2))


def antisymmetrizer_idempotent(fmt: Sequence[int]) -> Idempotent:
    f = make_format(fmt)
    return Idempotent(f, super_antisymmetrizer(f))


def symmetrizer_idempotent(fmt: Sequence[int]) -> Idempotent:
    f = make_format(fmt)
    return Idempotent(f, super_symmetrizer(f))


def algebra_X(B: Idempotent, names=None) -> QuadraticSuperAlgebra:
    """TW*/(Im B*); relations r^{(s,t)}_{ij} = (-1)^{k_i k_j} B^{st}_{ij}."""
    s = pairing_signs([B.format, B.format])
    rows = [integer_row([s[c] * x for c, x in enumerate(row)]) for row in B.matrix.data]
    return _algebra(B.format, rows, names)


def algebra_Xi(B: Idempotent, names=None) -> QuadraticSuperAlgebra:
    """TW/(Im(1 - B))."""
    return _algebra(B.format, [integer_row(c) for c in B.complement.columns()], names)


# --------------------------------------------------------------------------
# standard algebras


def build_T(fmt: Sequence[int], names=None) -> QuadraticSuperAlgebra:
    return _algebra(make_format(fmt), [], names)


def build_S(fmt: Sequence[int], names=None) -> QuadraticSuperAlgebra:
    """xy = (-1)^{[x][y]} yx, i.e. relations Im A_W."""
    f = make_format(fmt)
    return _algebra(f, [integer_row(c) for c in super_antisymmetrizer(f).columns()], names)


def build_Lambda(fmt: Sequence[int], names=None) -> QuadraticSuperAlgebra:
    """xy = -(-1)^{[x][y]} yx, i.e. relations Im S_W."""
    f = make_format(fmt)
    return _algebra(f, [integer_row(c) for c in super_symmetrizer(f).columns()], names)


def unit_K() -> QuadraticSuperAlgebra:
    """The ground field: no generators."""
    return _algebra((), [])


def unit_polynomial() -> QuadraticSuperAlgebra:
    """K[u], unit for the white product."""
    return _algebra((0,), [], ("u",))


def unit_dual_numbers() -> QuadraticSuperAlgebra:
    """K[e]/(e²), unit for the black product."""
    return _algebra((0,), [{0: 1}], ("e",))


# --------------------------------------------------------------------------
# graded components


@dataclass(frozen=True)
class GradedComponent:
    """Degree-n piece of the ideal (R) inside V^{⊗n} and the quotient dimension."""

    degree: int
    ambient_dim: int
    quotient_dim: int
    _rows: tuple = field(repr=False, compare=False)

    @property
    def ideal_dim(self) -> int:
        return self.ambient_dim - self.quotient_dim

    @property
    def ideal_part(self) -> Subspace:
        return span_sparse(self._rows, self.ambient_dim)

    def _engine(self) -> EchelonBasis:
        e = EchelonBasis(self.ambient_dim)
        for r in self._rows:
            e.rows[min(r)] = r
        return e

    def contains(self, v) -> bool:
        """Whether v (dense or sparse) lies in the ideal, i.e. vanishes in the quotient."""
        row = _sparse(v, self.ambient_dim)
        return not self._engine().reduce(row)

    def reduce(self, v) -> dict[int, int]:
        return self._engine().reduce(_sparse(v, self.ambient_dim))


def _check_cap(needed: int, cap: int | None):
    if cap is not None and needed > cap:
        raise SizeCapExceeded(needed, cap)


def components(
    a: QuadraticSuperAlgebra, n: int, size_cap: int | None = DEFAULT_SIZE_CAP
) -> list[GradedComponent]:
    """Components of degrees 0..n, built by I_k = I_{k-1} ⊗ V + V^{⊗(k-2)} ⊗ R."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    d = a.dim
    for k in range(n + 1):
        _check_cap(d**k, size_cap)
    out = [GradedComponent(0, 1, 1, ())]
    if n >= 1:
        out.append(GradedComponent(1, d, d, ()))
    rel = a.relation_rows()
    prev: dict[int, dict[int, int]] = {}
    for k in range(2, n + 1):
        amb = d**k
        e = EchelonBasis(amb)
        # rows of I_{k-1} ⊗ e_c stay in reduced echelon form
        for piv, r in prev.items():
            for c in range(d):
                e.rows[piv * d + c] = {idx * d + c: x for idx, x in r.items()}
        block = d * d
        for w in range(d ** (k - 2)):
            off = w * block
            for r in rel:
                e.add({off + idx: x for idx, x in r.items()})
        prev = e.rows
        out.append(GradedComponent(k, amb, amb - len(e.rows), tuple(e.rows[p] for p in sorted(e.rows))))
    return out[: n + 1]


def component(a: QuadraticSuperAlgebra, n: int, size_cap: int | None = DEFAULT_SIZE_CAP) -> GradedComponent:
    return components(a, n, size_cap)[n]


def hilbert(a: QuadraticSuperAlgebra, n: int, size_cap: int | None = DEFAULT_SIZE_CAP) -> list[int]:
    return [c.quotient_dim for c in components(a, n, size_cap)]


# --------------------------------------------------------------------------
# binary products


def _embed(rows, d_old: int, offset: int, d_new: int):
    out = []
    for r in rows:
        out.append({(offset + i // d_old) * d_new + offset + i % d_old: x for i, x in r.items()})
    return out


def _concat_names(a, b):
    return a.generator_names + b.generator_names


def _commutators(fa: Format, fb: Format, plus: bool):
    da, db = len(fa), len(fb)
    d = da + db
    rows = []
    for i in range(da):
        for j in range(db):
            sign = -1 if fa[i] * fb[j] else 1
            if not plus:
                sign = -sign
            rows.append({i * d + da + j: 1, (da + j) * d + i: sign})
    return rows


def coproduct(a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """Free product: relations R ⊕ S only."""
    d = a.dim + b.dim
    rows = _embed(a.relation_rows(), a.dim, 0, d) + _embed(b.relation_rows(), b.dim, a.dim, d)
    return _algebra(a.format + b.format, rows, _concat_names(a, b))


def tensor(a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """Super tensor product: R ⊕ S ⊕ [V, W]."""
    d = a.dim + b.dim
    rows = _embed(a.relation_rows(), a.dim, 0, d) + _embed(b.relation_rows(), b.dim, a.dim, d)
    rows += _commutators(a.format, b.format, plus=False)
    return _algebra(a.format + b.format, rows, _concat_names(a, b))


def graded_tensor(a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """Twisted tensor product: R ⊕ S ⊕ [V, W]₊."""
    d = a.dim + b.dim
    rows = _embed(a.relation_rows(), a.dim, 0, d) + _embed(b.relation_rows(), b.dim, a.dim, d)
    rows += _commutators(a.format, b.format, plus=True)
    return _algebra(a.format + b.format, rows, _concat_names(a, b))


def _pair_names(a, b):
    return tuple(f"{x}.{y}" for x in a.generator_names for y in b.generator_names)


def _r_tensor_w2(rows, dv: int, dw: int):
    """R ⊗ W⊗W inside V⊗V⊗W⊗W."""
    w2 = dw * dw
    return [{k * w2 + ab: x for k, x in r.items()} for r in rows for ab in range(w2)]


def _v2_tensor_s(rows, dv: int, dw: int):
    w2 = dw * dw
    return [{ij * w2 + k: x for k, x in r.items()} for r in rows for ij in range(dv * dv)]


def white(a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """a ∘ b: generators V ⊗ W, relations σ^(23)(R ⊗ W² + V² ⊗ S)."""
    m = sigma23_map(a.format, b.format)
    rows = _r_tensor_w2(a.relation_rows(), a.dim, b.dim)
    rows += _v2_tensor_s(b.relation_rows(), a.dim, b.dim)
    return _algebra(tensor_format(a.format, b.format), [apply_map(m, r) for r in rows],
                    _pair_names(a, b))


def black(a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """a • b: generators V ⊗ W, relations σ^(23)(R ⊗ S)."""
    m = sigma23_map(a.format, b.format)
    w2 = b.dim * b.dim
    rows = []
    for r in a.relation_rows():
        for s in b.relation_rows():
            rows.append({k * w2 + l: x * y for k, x in r.items() for l, y in s.items()})
    return _algebra(tensor_format(a.format, b.format), [apply_map(m, r) for r in rows],
                    _pair_names(a, b))


# --------------------------------------------------------------------------
# unary functors


def koszul_dual(a: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """TV*/(R^⊥) for the signed pairing; generator names are kept."""
    s = pairing_signs([a.format, a.format])
    rows = [{k: s[k] * x for k, x in r.items()} for r in a.relation_rows()]
    return QuadraticSuperAlgebra(a.format, kernel_sparse(rows, a.dim**2), a.names)


def opposite(a: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """TV/(σR)."""
    m = swap_map(a.format)
    return _algebra(a.format, [apply_map(m, r) for r in a.relation_rows()], a.names)


def parity_shift(a: QuadraticSuperAlgebra) -> QuadraticSuperAlgebra:
    """TΠV/(R): every generator changes parity, relations unchanged."""
    return QuadraticSuperAlgebra(flip(a.format), a.relations, a.names)


def transport(a: QuadraticSuperAlgebra, P: Matrix, fmt: Sequence[int] | None = None,
              names=None) -> QuadraticSuperAlgebra:
    """Image presentation under an invertible even change of generators x ↦ P x.

    Column i of P holds the new coordinates of generator i.
    """
    f = a.format if fmt is None else make_format(fmt)
    d = a.dim
    if (P.rows, P.cols) != (len(f), d):
        raise DimensionMismatch("transport matrix has the wrong shape")
    if not is_even_matrix(P, f, a.format):
        raise ParityError("generator change must preserve parity")
    cols = [[(p, x) for p, x in enumerate(P.column(i)) if x] for i in range(d)]
    n = len(f)
    rows = []
    for r in a.relation_rows():
        acc: dict[int, Fraction] = {}
        for k, x in r.items():
            i, j = divmod(k, d)
            for p, y in cols[i]:
                for q, z in cols[j]:
                    acc[p * n + q] = acc.get(p * n + q, 0) + x * y * z
        rows.append(integer_row([acc.get(c, 0) for c in range(n * n)]))
    return _algebra(f, rows, names)


def check_homomorphism(f1: Matrix, a: QuadraticSuperAlgebra, b: QuadraticSuperAlgebra) -> bool:
    """Whether the generator map f1 (column i = image of x^i) extends to a → b.

    The image of a relation Σ r_ij x^i x^j is Σ r_ij f1(x^i) f1(x^j) in the free
    algebra on b's generators; it must lie in b's relation space.
    """
    if (f1.rows, f1.cols) != (b.dim, a.dim):
        raise FormatMismatch(
            f"generator map is {f1.rows}x{f1.cols}, expected {b.dim}x{a.dim}"
        )
    if not is_even_matrix(f1, b.format, a.format):
        raise ParityError("generator map does not preserve parity")
    return all(b.relations.contains(v) for v in image_of_relations(f1, a, b.dim))


def image_of_relations(f1: Matrix, a: QuadraticSuperAlgebra, db: int) -> list[tuple[Fraction, ...]]:
    cols = [[(p, x) for p, x in enumerate(f1.column(i)) if x] for i in range(a.dim)]
    out = []
    for r in a.relation_rows():
        acc = [Fraction(0)] * (db * db)
        for k, x in r.items():
            i, j = divmod(k, a.dim)
            for p, y in cols[i]:
                for q, z in cols[j]:
                    acc[p * db + q] += x * y * z
        out.append(tuple(acc))
    return out


def dual_identification(fa: Sequence[int], fb: Sequence[int]) -> Matrix:
    """Generator change (V ⊗ W)* → V* ⊗ W*.

    Under the signed pairing, e^i ⊗ f^a evaluates on e_i ⊗ f_a to (-1)^{k_i l_a},
    so the dual basis vector of e_i ⊗ f_a corresponds to that sign times e^i ⊗ f^a.
    """
    return Matrix.diagonal([(-1) ** (p * q) for p in fa for q in fb])
