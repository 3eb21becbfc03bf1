"""Exact dense linear algebra over the rationals.

Matrices are immutable row-major grids of :class:`fractions.Fraction`.  A
:class:`Subspace` is stored by its reduced row echelon basis, so two spanning
sets of the same subspace always give equal values.

Internally, elimination runs on sparse rows of Python integers (each row kept
primitive, i.e. divided by the gcd of its entries) and only the final basis is
converted to fractions.  The quadratic-algebra code produces many long, very
sparse relation vectors, and this keeps the tensor-power computations fast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DegeneratePairingError, DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(x) for x in values)


@dataclass(frozen=True)
class Matrix:
    """A rows x cols matrix of rationals, stored row-major."""

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(
                f"matrix data does not have shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [vector(c) for c in columns]
        for c in cols:
            if len(c) != rows:
                raise DimensionMismatch(f"column of length {len(c)}, expected {rows}")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        )

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        vals = vector(values)
        n = len(vals)
        z = Fraction(0)
        return cls(n, n, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        # sparse rows of the right factor keep products of structural matrices cheap
        right = [[(j, x) for j, x in enumerate(r) if x] for r in other.data]
        out = []
        for r in self.data:
            acc = [Fraction(0)] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, x in right[k]:
                        acc[j] += a * x
            out.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)}, expected {self.cols}")
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(sum((r[k] * x for k, x in nz), Fraction(0)) for r in self.data)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.data:
            for s in other.data:
                rows.append(tuple(a * b for a in r for b in s))
        return Matrix(self.rows * other.rows, self.cols * other.cols, tuple(rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shape {self.rows}x{self.cols} does not match {other.rows}x{other.cols}"
            )

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]


def kron_vectors(u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(a * b for a in u for b in v)


# --------------------------------------------------------------------------
# integer echelon engine


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {k: x // g for k, x in row.items()}
    return row


def integer_row(v: Sequence) -> dict[int, int]:
    """Sparse primitive integer multiple of a rational vector."""
    nz = [(k, to_fraction(x)) for k, x in enumerate(v) if x]
    if not nz:
        return {}
    den = 1
    for _, x in nz:
        den = lcm(den, x.denominator)
    return _primitive({k: int(x * den) for k, x in nz})


class EchelonBasis:
    """Incrementally maintained reduced echelon basis with integer rows."""

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        # pivot rows vanish on every other pivot column, so one pass suffices
        for c in [c for c in v if c in self.rows]:
            a = v.get(c)
            if not a:
                continue
            r = self.rows[c]
            p = r[c]
            new = {k: p * x for k, x in v.items()}
            for k, x in r.items():
                y = new.get(k, 0) - a * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            v = _primitive(new)
        return v

    def add(self, v: dict[int, int]) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        pc = min(v)
        if v[pc] < 0:
            v = {k: -x for k, x in v.items()}
        p = v[pc]
        for c, r in self.rows.items():
            a = r.get(pc)
            if a:
                new = {k: p * x for k, x in r.items()}
                for k, x in v.items():
                    y = new.get(k, 0) - a * x
                    if y:
                        new[k] = y
                    else:
                        new.pop(k, None)
                self.rows[c] = _primitive(new)
        self.rows[pc] = v
        return True

    def extend(self, vectors: Iterable[dict[int, int]]) -> "EchelonBasis":
        for v in vectors:
            if v:
                self.add(v)
        return self

    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        out = []
        for pc in sorted(self.rows):
            r = self.rows[pc]
            p = r[pc]
            dense = [Fraction(0)] * self.ncols
            for k, x in r.items():
                dense[k] = Fraction(x, p)
            out.append(tuple(dense))
        return tuple(out)


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n represented by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.pivots and self.basis:
            piv = tuple(next(k for k, x in enumerate(r) if x) for r in self.basis)
            object.__setattr__(self, "pivots", piv)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> tuple[Fraction, ...]:
        """Canonical representative of v modulo the subspace."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        out = list(vector(v))
        for p, r in zip(self.pivots, self.basis):
            a = out[p]
            if a:
                for k, x in enumerate(r):
                    if x:
                        out[k] -= a * x
        return tuple(out)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def matrix(self) -> Matrix:
        return Matrix(len(self.basis), self.ambient_dim, self.basis)

    def integer_rows(self) -> list[dict[int, int]]:
        """Basis as sparse primitive integer vectors."""
        return [integer_row(r) for r in self.basis]

    def _engine(self) -> EchelonBasis:
        e = EchelonBasis(self.ambient_dim)
        for p, r in zip(self.pivots, self.basis):
            e.rows[p] = integer_row(r)
        return e


def _from_engine(e: EchelonBasis) -> Subspace:
    basis = e.basis()
    return Subspace(e.ncols, basis, tuple(sorted(e.rows)))


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form of m with the zero rows dropped."""
    e = EchelonBasis(m.cols).extend(integer_row(r) for r in m.data)
    b = e.basis()
    return Matrix(len(b), m.cols, b)


def rank(m: Matrix) -> int:
    return EchelonBasis(m.cols).extend(integer_row(r) for r in m.data).rank()


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_subspace(n: int) -> Subspace:
    return _from_engine(EchelonBasis(n).extend({i: 1} for i in range(n)))


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    e = EchelonBasis(ambient_dim)
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
        e.add(integer_row(v))
    return _from_engine(e)


def span_sparse(rows: Iterable[dict[int, int]], ambient_dim: int) -> Subspace:
    """Span of sparse integer vectors given as {index: value} dicts."""
    e = EchelonBasis(ambient_dim)
    for r in rows:
        r = {k: x for k, x in r.items() if x}
        if r:
            if max(r) >= ambient_dim or min(r) < 0:
                raise DimensionMismatch("sparse vector index outside ambient space")
            e.add(_primitive(r))
    return _from_engine(e)


def kernel_basis_sparse(rows: list[dict[int, int]], ncols: int) -> list[tuple[Fraction, ...]]:
    e = EchelonBasis(ncols).extend(rows)
    pivots = sorted(e.rows)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc in pivots:
            r = e.rows[pc]
            x = r.get(f)
            if x:
                v[pc] = Fraction(-x, r[pc])
        out.append(tuple(v))
    return out


def kernel_sparse(rows: Iterable[dict[int, int]], ncols: int) -> Subspace:
    """Null space of the matrix whose rows are the given sparse integer vectors."""
    return span(kernel_basis_sparse([r for r in rows if r], ncols), ncols)


def kernel(m: Matrix) -> Subspace:
    """Right null space {x : m x = 0}."""
    return span(kernel_basis_sparse([integer_row(r) for r in m.data], m.cols), m.cols)


def image(m: Matrix) -> Subspace:
    """Column space of m."""
    return span(m.columns(), m.rows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    e = a._engine()
    for r in b.basis:
        e.add(integer_row(r))
    return _from_engine(e)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b from the kernel of the stacked bases [A^T | -B^T]."""
    _same_ambient(a, b)
    if a.is_zero() or b.is_zero():
        return zero_subspace(a.ambient_dim)
    n = a.ambient_dim
    ra, rb = a.dim, b.dim
    rows = []
    for k in range(n):
        row = {}
        for i, v in enumerate(a.basis):
            if v[k]:
                row[i] = v[k]
        for j, w in enumerate(b.basis):
            if w[k]:
                row[ra + j] = -w[k]
        if row:
            rows.append(integer_row([row.get(c, 0) for c in range(ra + rb)]))
    coeffs = kernel_basis_sparse(rows, ra + rb)
    vecs = []
    for x in coeffs:
        acc = [Fraction(0)] * n
        for i, c in enumerate(x[:ra]):
            if c:
                for k, y in enumerate(a.basis[i]):
                    if y:
                        acc[k] += c * y
        vecs.append(acc)
    return span(vecs, n)


def equals(a: Subspace, b: Subspace) -> bool:
    _same_ambient(a, b)
    return a.basis == b.basis


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def is_subspace(a: Subspace, b: Subspace) -> bool:
    """True when a ⊆ b."""
    _same_ambient(a, b)
    return all(b.contains(r) for r in a.basis)


def annihilator(s: Subspace, pairing: Matrix) -> Subspace:
    """{λ : <λ, v> = 0 for all v in s} where <λ, v> = λᵀ P v."""
    n = s.ambient_dim
    if (pairing.rows, pairing.cols) != (n, n):
        raise DimensionMismatch(f"pairing is {pairing.rows}x{pairing.cols}, ambient is {n}")
    if rank(pairing) != n:
        raise DegeneratePairingError("pairing matrix is degenerate")
    # constraint rows are (P v)ᵀ for each basis vector v
    rows = [integer_row(pairing.apply(v)) for v in s.basis]
    return span(kernel_basis_sparse(rows, n), n)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices are invertible")
    n = m.rows
    aug = Matrix(n, 2 * n, tuple(
        r + tuple(Fraction(int(i == j)) for j in range(n)) for i, r in enumerate(m.data)))
    red = rref(aug)
    if red.rows != n or any(red[i, i] != 1 for i in range(n)) or any(
        red[i, j] for i in range(n) for j in range(n) if i != j
    ):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(n, n, tuple(r[n:] for r in red.data))


def _same_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
