"""Formats, tensor indexing and the sign-carrying structural operators.

A format is a tuple of parities (0 or 1), one per basis vector.  Tensor
products of spaces are flattened row-major with the leftmost factor most
significant, so the basis vector e_i ⊗ f_a of V ⊗ W sits at ``i * dim W + a``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Sequence

from .errors import DimensionMismatch, ParityError
from .linalg import Matrix

Format = tuple  # tuple[int, ...]


def make_format(parities: Sequence[int]) -> Format:
    out = []
    for p in parities:
        if isinstance(p, bool) or p not in (0, 1):
            raise ParityError(f"parity must be 0 or 1, got {p!r}", offending=p)
        out.append(int(p))
    return tuple(out)


def flip(f: Format) -> Format:
    return tuple(1 - p for p in f)


def tensor_format(f: Format, g: Format) -> Format:
    """Parities of the flattened basis of V ⊗ W."""
    return tuple((p + q) % 2 for p in f for q in g)


def tensor_power_format(f: Format, n: int) -> Format:
    return reduce(tensor_format, [f] * n, (0,))


# --------------------------------------------------------------------------
# tensor indices


def flat_index(multi: Sequence[int], dims: Sequence[int]) -> int:
    k = 0
    for i, d in zip(multi, dims):
        k = k * d + i
    return k


def multi_index(k: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        k, r = divmod(k, d)
        out.append(r)
    return tuple(reversed(out))


# --------------------------------------------------------------------------
# Koszul permutations


def _check_perm(perm: Sequence[int], n: int):
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise DimensionMismatch(f"{list(perm)} is not a permutation of {n} factors")


def koszul_map(formats: Sequence[Format], perm: Sequence[int]) -> list[tuple[int, int]]:
    """Signed permutation of basis vectors as a list ``source -> (target, sign)``.

    Output factor q is input factor ``perm[q]``.  Each pair of input factors
    whose relative order is reversed contributes (-1)^(product of parities).
    """
    n = len(formats)
    _check_perm(perm, n)
    dims = [len(f) for f in formats]
    out_dims = [dims[p] for p in perm]
    pos = [0] * n
    for q, p in enumerate(perm):
        pos[p] = q
    inverted = [(p, r) for p in range(n) for r in range(p + 1, n) if pos[p] > pos[r]]
    result = []
    for multi in product(*(range(d) for d in dims)):
        par = [formats[p][multi[p]] for p in range(n)]
        odd = sum(par[p] * par[r] for p, r in inverted) % 2
        target = flat_index([multi[p] for p in perm], out_dims)
        result.append((target, -1 if odd else 1))
    return result


def koszul_permutation(formats: Sequence[Format], perm: Sequence[int]) -> Matrix:
    """Dense signed permutation matrix; column = source index, row = target index."""
    m = koszul_map(formats, perm)
    size = len(m)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for src, (dst, sign) in enumerate(m):
        rows[dst][src] = Fraction(sign)
    return Matrix(size, size, tuple(tuple(r) for r in rows))


def swap_map(f: Format, g: Format | None = None) -> list[tuple[int, int]]:
    """σ: V ⊗ W → W ⊗ V."""
    return koszul_map([f, f if g is None else g], (1, 0))


def sigma(f: Format) -> Matrix:
    return koszul_permutation([f, f], (1, 0))


SIGMA23 = (0, 2, 1, 3)


def sigma23_map(f: Format, g: Format) -> list[tuple[int, int]]:
    """σ^(23): V ⊗ V ⊗ W ⊗ W → (V ⊗ W) ⊗ (V ⊗ W)."""
    return koszul_map([f, f, g, g], SIGMA23)


def apply_map(m: list[tuple[int, int]], v: dict[int, int]) -> dict[int, int]:
    """Apply a signed permutation to a sparse vector."""
    out = {}
    for k, x in v.items():
        t, s = m[k]
        out[t] = s * x
    return out


def apply_map_dense(m: list[tuple[int, int]], v: Sequence) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * len(m)
    for k, x in enumerate(v):
        if x:
            t, s = m[k]
            out[t] = s * x
    return tuple(out)


# --------------------------------------------------------------------------
# dual pairings


def pairing_signs(formats: Sequence[Format]) -> list[int]:
    """Diagonal of the pairing between (V1*⊗…⊗Vn*) and (V1⊗…⊗Vn).

    ⟨λ1⊗…⊗λn, v1⊗…⊗vn⟩ = (-1)^(Σ_{p>q} [λp][vq]) Π λp(vp), and λp pairs
    nontrivially only with the matching basis vector, so the matrix is diagonal.
    """
    n = len(formats)
    signs = []
    for multi in product(*(range(len(f)) for f in formats)):
        par = [formats[p][multi[p]] for p in range(n)]
        odd = sum(par[p] * par[q] for p in range(n) for q in range(p)) % 2
        signs.append(-1 if odd else 1)
    return signs


def dual_pairing(f: Format, n: int = 2) -> Matrix:
    """Pairing matrix P of (W*)^{⊗n} with W^{⊗n}, entries ⟨row basis, column basis⟩."""
    return Matrix.diagonal(pairing_signs([f] * n))


# --------------------------------------------------------------------------
# (anti)symmetrizers


def _half(f: Format, sign: int) -> Matrix:
    d = len(f)
    size = d * d
    rows = [[Fraction(0)] * size for _ in range(size)]
    for src, (dst, s) in enumerate(swap_map(f)):
        rows[src][src] += Fraction(1, 2)
        rows[dst][src] += Fraction(sign * s, 2)
    return Matrix(size, size, tuple(tuple(r) for r in rows))


def super_antisymmetrizer(f: Format) -> Matrix:
    """A_W = (1 - σ)/2 on W ⊗ W."""
    return _half(f, -1)


def super_symmetrizer(f: Format) -> Matrix:
    """S_W = (1 + σ)/2 on W ⊗ W."""
    return _half(f, 1)


# --------------------------------------------------------------------------
# parity helpers


def is_even_matrix(m: Matrix, row_format: Format, col_format: Format) -> bool:
    if (m.rows, m.cols) != (len(row_format), len(col_format)):
        raise DimensionMismatch("matrix shape does not match formats")
    return all(
        not m.data[r][c]
        for r in range(m.rows)
        for c in range(m.cols)
        if row_format[r] != col_format[c]
    )


def vector_parity(v, f: Format) -> int | None:
    """Parity of a homogeneous vector, None for zero; raise if mixed."""
    items = v.items() if isinstance(v, dict) else enumerate(v)
    seen = {f[k] for k, x in items if x}
    if len(seen) > 1:
        raise ParityError("vector mixes even and odd components", offending=v)
    return seen.pop() if seen else None


def standard_order(f: Format) -> tuple[int, ...]:
    """Stable reordering of a basis putting even vectors first.

    Returns ``perm`` with new position q holding old index ``perm[q]``.
    """
    return tuple(sorted(range(len(f)), key=lambda i: f[i]))


def reorder_matrix(f: Format) -> Matrix:
    """Permutation matrix taking coordinates in f to the standard format."""
    perm = standard_order(f)
    n = len(f)
    return Matrix(n, n, tuple(
        tuple(Fraction(int(perm[q] == i)) for i in range(n)) for q in range(n)))
