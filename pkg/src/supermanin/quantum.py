"""Quantum representations: multiplicative Manin matrices over bialgebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    Idempotent,
    QuadraticSuperAlgebra,
    antisymmetrizer_idempotent,
    build_S,
    build_T,
    opposite,
    unit_K,
)
from .errors import FormatMismatch, InvalidStructure, ParityError
from .linalg import Matrix, to_fraction
from .manin import (
    AlgebraMatrix,
    CoendComonoid,
    check_comonoid,
    fm_homomorphism,
    inverse_super_transpose,
    is_manin,
    scalar_values,
)
from .superlinear import Format, make_format, swap_map


@dataclass(frozen=True)
class BialgebraPresentation:
    """A quadratic algebra with comultiplication and counit on generators.

    ``comult`` is an m² × m matrix; column p holds Δ(x^p) in A₁ ⊗ A₁ flattened
    row-major.  The axioms are checked on construction unless ``check=False``.
    """

    algebra: QuadraticSuperAlgebra
    comult: Matrix
    counit: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "counit", tuple(to_fraction(x) for x in self.counit))
        m = self.algebra.dim
        if (self.comult.rows, self.comult.cols) != (m * m, m) or len(self.counit) != m:
            raise FormatMismatch("comultiplication or counit has the wrong shape")
        if self.check:
            report = check_comonoid(self.algebra, self.comult, self.counit)
            failed = [k for k, ok in report.items() if not ok]
            if failed:
                raise InvalidStructure(f"not a bialgebra presentation: {', '.join(failed)} failed")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def delta(self, v: Sequence) -> tuple[Fraction, ...]:
        return self.comult.apply(v)

    def epsilon(self, v: Sequence) -> Fraction:
        return sum((e * to_fraction(x) for e, x in zip(self.counit, v)), Fraction(0))


def trivial_bialgebra() -> BialgebraPresentation:
    """The ground field with Δ(1) = 1 ⊗ 1."""
    return BialgebraPresentation(unit_K(), Matrix(0, 0, ()), ())


def coend_bialgebra(c: CoendComonoid) -> BialgebraPresentation:
    return BialgebraPresentation(c.algebra, c.comult, c.counit)


def cop_comult(a: QuadraticSuperAlgebra, comult: Matrix) -> Matrix:
    """Δ^cop = σ · Δ on generators."""
    m = a.dim
    smap = swap_map(a.format)
    rows = [[Fraction(0)] * m for _ in range(m * m)]
    for p in range(m):
        for k in range(m * m):
            x = comult.data[k][p]
            if x:
                t, s = smap[k]
                rows[t][p] += s * x
    return Matrix(m * m, m, tuple(tuple(r) for r in rows))


def check_multiplicative(M: AlgebraMatrix, host: BialgebraPresentation) -> bool:
    """Δ(M^i_j) = Σ_l M^i_l ⊗ M^l_j and ε(M^i_j) = δ^i_j, compared exactly."""
    n = M.shape[0]
    if M.shape[0] != M.shape[1] or M.row_format != M.col_format:
        raise FormatMismatch("a multiplicative matrix must be square with equal formats")
    if M.ambient != host.algebra:
        raise FormatMismatch("matrix and bialgebra live over different algebras")
    if M.degree == 0:
        vals = scalar_values(M)
        return vals @ vals == vals and vals == Matrix.identity(n)
    for i in range(n):
        for j in range(n):
            want = [Fraction(0)] * (host.dim ** 2)
            for l in range(n):
                u, v = M.entries[i][l], M.entries[l][j]
                for p, x in enumerate(u):
                    if x:
                        off = p * host.dim
                        for q, y in enumerate(v):
                            if y:
                                want[off + q] += x * y
            if host.delta(M.entries[i][j]) != tuple(want):
                return False
            if host.epsilon(M.entries[i][j]) != (1 if i == j else 0):
                return False
    return True


@dataclass(frozen=True)
class QuantumRepresentation:
    host: BialgebraPresentation
    B: Idempotent
    M: AlgebraMatrix

    def __post_init__(self):
        if self.M.row_format != self.B.format or self.M.col_format != self.B.format:
            raise FormatMismatch("matrix formats do not match the idempotent")
        if self.M.ambient != self.host.algebra:
            raise FormatMismatch("matrix is not over the host algebra")

    def validate(self) -> dict[str, bool]:
        return {
            "manin": bool(is_manin(self.M, self.B, self.B)),
            "multiplicative": check_multiplicative(self.M, self.host),
        }

    def is_valid(self) -> bool:
        return all(self.validate().values())


def representation(host: BialgebraPresentation, B: Idempotent, M: AlgebraMatrix) -> QuantumRepresentation:
    """Build and validate a quantum representation."""
    rep = QuantumRepresentation(host, B, M)
    report = rep.validate()
    failed = [k for k, ok in report.items() if not ok]
    if failed:
        raise InvalidStructure(f"not a quantum representation: {', '.join(failed)} failed")
    return rep


def universal_representation(c: CoendComonoid) -> QuantumRepresentation:
    return QuantumRepresentation(coend_bialgebra(c), c.universal.B, c.universal.matrix())


# --------------------------------------------------------------------------
# coactions


@dataclass(frozen=True)
class LinearAction:
    """δ(x^i) = Σ_j M^i_j ⊗ x^j on generators of 𝔛_B.

    ``delta`` is (m·d) × d with column i holding δ(x^i) in A₁ ⊗ W*, flattened
    as p * d + j.
    """

    host: BialgebraPresentation
    B: Idempotent
    delta: Matrix


def action_from_representation(rep: QuantumRepresentation) -> LinearAction:
    m, d = rep.host.dim, rep.B.dim
    cols = []
    for i in range(d):
        col = [Fraction(0)] * (m * d)
        for j in range(d):
            for p, x in enumerate(rep.M.entries[i][j]):
                col[p * d + j] = x
        cols.append(col)
    return LinearAction(rep.host, rep.B, Matrix.from_columns(cols, m * d))


def representation_from_action(action: LinearAction) -> QuantumRepresentation:
    host, B, delta = action.host, action.B, action.delta
    m, d = host.dim, B.dim
    if (delta.rows, delta.cols) != (m * d, d):
        raise FormatMismatch(f"coaction must be a {m * d}x{d} matrix")
    k = B.format
    entries = []
    for i in range(d):
        row = []
        for j in range(d):
            e = tuple(delta.data[p * d + j][i] for p in range(m))
            if any(x and host.algebra.format[p] != (k[i] + k[j]) % 2 for p, x in enumerate(e)):
                raise ParityError(f"coaction component ({i},{j}) has the wrong parity")
            row.append(e)
        entries.append(tuple(row))
    return QuantumRepresentation(host, B, AlgebraMatrix(k, k, host.algebra, tuple(entries)))


def coaction_axioms(action: LinearAction) -> dict[str, bool]:
    """Coassociativity and counit law of δ on generators, plus extension to 𝔛_B."""
    host, d = action.host, action.B.dim
    ident = Matrix.identity(d)
    left = host.comult.kron(ident) @ action.delta
    right = Matrix.identity(host.dim).kron(action.delta) @ action.delta
    eps = Matrix(1, host.dim, (host.counit,))
    rep = representation_from_action(action)
    return {
        "coassociative": left == right,
        "counit": eps.kron(ident) @ action.delta == ident,
        "homomorphism": fm_homomorphism(rep.M, action.B, action.B),
    }


def dual_coaction(rep: QuantumRepresentation) -> Matrix:
    """δ(ψ_i) = Σ_j ψ_j ⊗ M^j_i on Ξ_B, as a (d·m) × d matrix, index j * m + p."""
    m, d = rep.host.dim, rep.B.dim
    cols = []
    for i in range(d):
        col = [Fraction(0)] * (d * m)
        for j in range(d):
            for p, x in enumerate(rep.M.entries[j][i]):
                col[j * m + p] = x
        cols.append(col)
    return Matrix.from_columns(cols, d * m)


# --------------------------------------------------------------------------
# intertwiners


def intertwiner_check(K: AlgebraMatrix, repM: QuantumRepresentation, repN: QuantumRepresentation) -> bool:
    """K is a (B, C)-Manin matrix over K and MK = KN in A₁."""
    if repM.host != repN.host:
        raise FormatMismatch("representations over different hosts")
    if K.degree != 0:
        raise FormatMismatch("intertwiners are scalar matrices")
    if K.row_format != repM.B.format or K.col_format != repN.B.format:
        raise FormatMismatch("intertwiner formats do not match the representations")
    if not is_manin(K, repM.B, repN.B):
        return False
    Kv = scalar_values(K)
    dm, dn = len(K.row_format), len(K.col_format)
    m = repM.host.dim
    for i in range(dm):
        for b in range(dn):
            mk = [Fraction(0)] * m
            for j in range(dm):
                c = Kv.data[j][b]
                if c:
                    for p, x in enumerate(repM.M.entries[i][j]):
                        mk[p] += x * c
            kn = [Fraction(0)] * m
            for a in range(dn):
                c = Kv.data[i][a]
                if c:
                    for p, x in enumerate(repN.M.entries[a][b]):
                        kn[p] += c * x
            if mk != kn:
                return False
    return True


# --------------------------------------------------------------------------
# derived representations


def opposite_representation(rep: QuantumRepresentation) -> QuantumRepresentation:
    """Same entries over the opposite algebra, idempotent σBσ."""
    host = BialgebraPresentation(opposite(rep.host.algebra), rep.host.comult, rep.host.counit)
    M = AlgebraMatrix(rep.M.row_format, rep.M.col_format, host.algebra, rep.M.entries)
    return QuantumRepresentation(host, rep.B.swap_conjugate(), M)


def coopposite_representation(rep: QuantumRepresentation) -> QuantumRepresentation:
    """M^ist over the reversed comultiplication.

    The idempotent is 1 - B*, which presents Ξ_B as its 𝔛-side algebra; the
    representation space of the coopposite is the dual one.
    """
    a = rep.host.algebra
    host = BialgebraPresentation(a, cop_comult(a, rep.host.comult), rep.host.counit)
    B = rep.B.dual().with_complement()
    return QuantumRepresentation(host, B, inverse_super_transpose(rep.M))


def parity_change_representation(rep: QuantumRepresentation) -> QuantumRepresentation:
    M = rep.M
    flipped = tuple(1 - p for p in M.row_format)
    return QuantumRepresentation(
        rep.host, rep.B.parity_change(),
        AlgebraMatrix(flipped, flipped, M.ambient, M.entries, M.degree),
    )


# --------------------------------------------------------------------------
# classical modules


@dataclass(frozen=True)
class ClassicalModule:
    """A module over a finite-dimensional super-algebra R with basis r_0, …

    ``structure_constants[a][b][g]`` is the coefficient of r_g in r_a r_b,
    ``unit`` the coordinates of 1, ``parities`` those of the basis of R, and
    ``action[a]`` the matrix of ρ(r_a) on W (rows and columns in
    ``space_format``).
    """

    structure_constants: tuple
    unit: tuple
    parities: Format
    action: tuple
    space_format: Format = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.parities)
        object.__setattr__(self, "parities", make_format(self.parities))
        c = tuple(tuple(tuple(to_fraction(x) for x in r) for r in m) for m in self.structure_constants)
        if len(c) != n or any(len(m) != n or any(len(r) != n for r in m) for m in c):
            raise FormatMismatch(f"structure constants must be {n}x{n}x{n}")
        object.__setattr__(self, "structure_constants", c)
        u = tuple(to_fraction(x) for x in self.unit)
        if len(u) != n:
            raise FormatMismatch("unit has the wrong length")
        object.__setattr__(self, "unit", u)
        if len(self.action) != n:
            raise FormatMismatch("one action matrix per basis element is required")
        mats = tuple(Matrix.from_rows(r, cols=len(r[0]) if r else 0) if not isinstance(r, Matrix) else r
                     for r in self.action)
        dw = mats[0].rows if mats else 0
        if any((x.rows, x.cols) != (dw, dw) for x in mats):
            raise FormatMismatch("action matrices must be square of equal size")
        object.__setattr__(self, "action", mats)
        sf = make_format(self.space_format) if self.space_format else (0,) * dw
        if len(sf) != dw:
            raise FormatMismatch("space format does not match the action matrices")
        object.__setattr__(self, "space_format", sf)
        if self.check:
            self.validate()

    @property
    def algebra_dim(self) -> int:
        return len(self.parities)

    @property
    def space_dim(self) -> int:
        return len(self.space_format)

    def product(self, a: int, b: int) -> tuple[Fraction, ...]:
        return self.structure_constants[a][b]

    def validate(self):
        n, c, p = self.algebra_dim, self.structure_constants, self.parities
        for a in range(n):
            for b in range(n):
                for g in range(n):
                    if c[a][b][g] and p[g] != (p[a] + p[b]) % 2:
                        raise ParityError(f"product r{a} r{b} has a component of the wrong parity")
        for a in range(n):
            for b in range(n):
                for e in range(n):
                    for h in range(n):
                        lhs = sum(c[a][b][g] * c[g][e][h] for g in range(n))
                        rhs = sum(c[b][e][g] * c[a][g][h] for g in range(n))
                        if lhs != rhs:
                            raise InvalidStructure(
                                f"structure constants are not associative at ({a},{b},{e})")
        for b in range(n):
            for h in range(n):
                want = 1 if b == h else 0
                if sum(self.unit[a] * c[a][b][h] for a in range(n)) != want or \
                        sum(self.unit[a] * c[b][a][h] for a in range(n)) != want:
                    raise InvalidStructure("unit coordinates do not give a two-sided unit")
        if self.unit_defect() is not None:
            raise InvalidStructure("unit coordinates are not even")
        self.validate_action()

    def unit_defect(self):
        bad = [a for a, x in enumerate(self.unit) if x and self.parities[a]]
        return bad[0] if bad else None

    def validate_action(self):
        sf = self.space_format
        for a, m in enumerate(self.action):
            for i in range(m.rows):
                for j in range(m.cols):
                    if m.data[i][j] and (sf[i] + sf[j]) % 2 != self.parities[a]:
                        raise ParityError(f"ρ(r{a}) does not have parity {self.parities[a]}")
        bad = self.homomorphism_defect()
        if bad is not None:
            raise InvalidStructure(f"ρ is not multiplicative on (r{bad[0]}, r{bad[1]})")
        one = Matrix.zeros(self.space_dim, self.space_dim)
        for a, x in enumerate(self.unit):
            one = one + self.action[a].scale(x)
        if one != Matrix.identity(self.space_dim):
            raise InvalidStructure("ρ(1) is not the identity")

    def homomorphism_defect(self):
        n = self.algebra_dim
        for a in range(n):
            for b in range(n):
                rhs = Matrix.zeros(self.space_dim, self.space_dim)
                for g, x in enumerate(self.structure_constants[a][b]):
                    if x:
                        rhs = rhs + self.action[g].scale(x)
                if self.action[a] @ self.action[b] != rhs:
                    return a, b
        return None


def _dual_product_comult(mod: ClassicalModule) -> Matrix:
    """Δ(r*_g) = Σ c^g_{ab} r*_a ⊗ r*_b."""
    n = mod.algebra_dim
    c = mod.structure_constants
    return Matrix(n * n, n, tuple(
        tuple(c[a][b][g] for g in range(n)) for a in range(n) for b in range(n)))


def module_matrix(mod: ClassicalModule, host_algebra: QuadraticSuperAlgebra) -> AlgebraMatrix:
    """M^i_j = Σ_g ρ(r_g)^i_j r*_g."""
    d = mod.space_dim
    ent = tuple(
        tuple(tuple(mod.action[g].data[i][j] for g in range(mod.algebra_dim)) for j in range(d))
        for i in range(d)
    )
    return AlgebraMatrix(mod.space_format, mod.space_format, host_algebra, ent)


def lift_classical_module(mod: ClassicalModule, through: str = "S", check: bool = True) -> QuantumRepresentation:
    """Quantum representation of S(R*) (or of the free T(R*)) on 𝔛_B(K).

    Through S the idempotent is the super-antisymmetrizer of W, through T it is 0.
    """
    names = tuple(f"r{g + 1}*" for g in range(mod.algebra_dim))
    if through == "S":
        alg = build_S(mod.parities, names)
        B = antisymmetrizer_idempotent(mod.space_format)
    elif through == "T":
        alg = build_T(mod.parities, names)
        n = mod.space_dim ** 2
        B = Idempotent(mod.space_format, Matrix.zeros(n, n))
    else:
        raise ValueError(f"unknown lift {through!r}, expected 'S' or 'T'")
    host = BialgebraPresentation(alg, _dual_product_comult(mod), mod.unit, check=check)
    rep = QuantumRepresentation(host, B, module_matrix(mod, alg))
    if check:
        report = rep.validate()
        failed = [k for k, ok in report.items() if not ok]
        if failed:
            raise InvalidStructure(f"lifted module fails: {', '.join(failed)}")
    return rep
