"""Exact linear algebra over the Gaussian rationals.

Vectors are kept unnormalized; every formula that needs a unit vector divides
by the squared norm instead, so no square roots ever appear.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ksgraph.errors import DimensionError, NotDensityError, NotUnitaryError, ZeroVectorError
from ksgraph.scalar import Scalar, gaussian_gcd

__all__ = [
    "Vector",
    "Operator",
    "DensityOperator",
    "RationalUnitary",
    "inner_product",
    "canonical_ray",
    "projector_from_ray",
    "born_probability",
    "commutes",
    "evolve",
    "conjugate",
    "rank",
    "determinant",
    "solve_exact",
    "MAX_PSD_DIM",
]

# principal-minor PSD test enumerates 2^d - 1 minors
MAX_PSD_DIM = 8

_ZERO = Scalar(0)
_ONE = Scalar(1)


@dataclass(frozen=True)
class Vector:
    entries: tuple[Scalar, ...]

    def __init__(self, entries: Iterable[object]) -> None:
        es = tuple(Scalar.coerce(e) for e in entries)
        if not es:
            raise DimensionError("a vector needs at least one entry")
        object.__setattr__(self, "entries", es)

    @classmethod
    def of(cls, *entries: object) -> Vector:
        return cls(entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Scalar:
        return self.entries[i]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def norm2(self) -> Fraction:
        return sum((e.abs2() for e in self.entries), Fraction(0))

    def scale(self, c: object) -> Vector:
        c = Scalar.coerce(c)
        return Vector(e * c for e in self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def _check_dims(a: int, b: int, what: str = "operands") -> None:
    if a != b:
        raise DimensionError(f"dimension mismatch between {what}: {a} vs {b}")


def inner_product(u: Vector, v: Vector) -> Scalar:
    """<u|v>, conjugate-linear in ``u``."""
    _check_dims(u.dim, v.dim, "vectors")
    acc = _ZERO
    for a, b in zip(u.entries, v.entries):
        acc = acc + a.conj() * b
    return acc


def canonical_ray(v: Vector) -> Vector:
    """Primitive Gaussian-integer representative of the ray through ``v``.

    Entries are scaled to coprime Gaussian integers and multiplied by a unit
    so that the first nonzero entry lies in the first quadrant (positive real
    part, or zero real part and positive imaginary part).
    """
    if v.is_zero():
        raise ZeroVectorError("the zero vector does not define a ray")
    den = 1
    for e in v.entries:
        den = math.lcm(den, e.re.denominator, e.im.denominator)
    ints = [(int(e.re * den), int(e.im * den)) for e in v.entries]
    g = (0, 0)
    for z in ints:
        g = gaussian_gcd(z, g) if g != (0, 0) else z
    ints = [_gdiv(z, g) for z in ints]
    lead = next(z for z in ints if z != (0, 0))
    # rotate by the unit u with u*lead in {re > 0, im >= 0}
    for unit in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        r = _gmul(unit, lead)
        if r[0] > 0 and r[1] >= 0:
            break
    ints = [_gmul(unit, z) for z in ints]
    return Vector(Scalar(a, b) for a, b in ints)


def _gmul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    n = b[0] * b[0] + b[1] * b[1]
    pr = a[0] * b[0] + a[1] * b[1]
    pi = a[1] * b[0] - a[0] * b[1]
    assert pr % n == 0 and pi % n == 0, "inexact Gaussian division"
    return (pr // n, pi // n)


@dataclass(frozen=True)
class Operator:
    rows: tuple[tuple[Scalar, ...], ...]

    def __init__(self, rows: Iterable[Iterable[object]]) -> None:
        rs = tuple(tuple(Scalar.coerce(x) for x in row) for row in rows)
        d = len(rs)
        if d == 0 or any(len(r) != d for r in rs):
            raise DimensionError("an operator needs a nonempty square matrix")
        object.__setattr__(self, "rows", rs)

    @classmethod
    def identity(cls, d: int) -> Operator:
        return cls([[_ONE if i == j else _ZERO for j in range(d)] for i in range(d)])

    @classmethod
    def outer(cls, u: Vector, v: Vector) -> Operator:
        """|u><v|."""
        _check_dims(u.dim, v.dim, "vectors")
        return cls([[a * b.conj() for b in v.entries] for a in u.entries])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: Operator) -> Operator:
        if not isinstance(other, Operator):
            return NotImplemented
        _check_dims(self.dim, other.dim, "operators")
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = _ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return Operator(out)

    def __add__(self, other: Operator) -> Operator:
        _check_dims(self.dim, other.dim, "operators")
        return Operator([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: Operator) -> Operator:
        _check_dims(self.dim, other.dim, "operators")
        return Operator([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c: object) -> Operator:
        c = Scalar.coerce(c)
        return Operator([[a * c for a in r] for r in self.rows])

    def apply(self, v: Vector) -> Vector:
        _check_dims(self.dim, v.dim, "operator and vector")
        out = []
        for row in self.rows:
            acc = _ZERO
            for a, b in zip(row, v.entries):
                acc = acc + a * b
            out.append(acc)
        return Vector(out)

    def adjoint(self) -> Operator:
        return Operator([[x.conj() for x in col] for col in zip(*self.rows)])

    def trace(self) -> Scalar:
        acc = _ZERO
        for i, row in enumerate(self.rows):
            acc = acc + row[i]
        return acc

    def is_hermitian(self) -> bool:
        d = self.dim
        return all(self.rows[i][j] == self.rows[j][i].conj() for i in range(d) for j in range(i, d))

    def expectation(self, v: Vector) -> Scalar:
        """<v|A|v> (unnormalized)."""
        return inner_product(v, self.apply(v))

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"


def projector_from_ray(v: Vector) -> Operator:
    """|v><v| / <v|v>."""
    if v.is_zero():
        raise ZeroVectorError("cannot build a projector from the zero vector")
    return Operator.outer(v, v).scale(Fraction(1) / v.norm2())


def commutes(p: Operator, q: Operator) -> bool:
    _check_dims(p.dim, q.dim, "operators")
    return p @ q == q @ p


# ----------------------------------------------------------------------------
# exact elimination helpers


def _eliminate(rows: list[list], *, augmented: bool = False) -> tuple[list[list], list[int], int]:
    """Reduced row echelon form in place. Returns (rows, pivot columns, swaps)."""
    ncols = len(rows[0]) - (1 if augmented else 0) if rows else 0
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            swaps += 1
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, swaps


def rank(matrix: Sequence[Sequence[object]]) -> int:
    rows = [[Scalar.coerce(x) for x in row] for row in matrix]
    if not rows:
        return 0
    _, pivots, _ = _eliminate(rows)
    return len(pivots)


def determinant(matrix: Sequence[Sequence[object]]) -> Scalar:
    rows = [[Scalar.coerce(x) for x in row] for row in matrix]
    n = len(rows)
    det = _ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c]), None)
        if pr is None:
            return _ZERO
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        piv = rows[c][c]
        det = det * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def solve_exact(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> tuple[list[Fraction] | None, str]:
    """Solve ``a x = b`` over the rationals.

    Returns ``(x, "unique")`` on a unique solution, otherwise ``(None, status)``
    with status ``"inconsistent"`` or ``"underdetermined"``. Inconsistency is
    reported first since it holds regardless of the rank.
    """
    ncols = len(a[0])
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    rows, pivots, _ = _eliminate(rows, augmented=True)
    for row in rows[len(pivots):]:
        if row[-1]:
            return None, "inconsistent"
    if len(pivots) < ncols:
        return None, "underdetermined"
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = rows[r][-1]
    return x, "unique"


def is_psd(op: Operator) -> bool:
    """All principal minors nonnegative (Hermitian input, dim <= MAX_PSD_DIM)."""
    d = op.dim
    if d > MAX_PSD_DIM:
        raise DimensionError(f"PSD check capped at dimension {MAX_PSD_DIM}, got {d}")
    for k in range(1, d + 1):
        for idx in itertools.combinations(range(d), k):
            minor = determinant([[op.rows[i][j] for j in idx] for i in idx])
            if minor.im or minor.re < 0:
                return False
    return True


# ----------------------------------------------------------------------------
# states and unitaries


@dataclass(frozen=True)
class DensityOperator:
    op: Operator

    def __post_init__(self) -> None:
        if not self.op.is_hermitian():
            raise NotDensityError("density operator must be Hermitian")
        if self.op.trace() != 1:
            raise NotDensityError(f"density operator must have trace 1, got {self.op.trace()}")
        if not is_psd(self.op):
            raise NotDensityError("density operator must be positive semi-definite")

    @classmethod
    def from_pure(cls, psi: Vector) -> DensityOperator:
        return cls(projector_from_ray(psi))

    @classmethod
    def maximally_mixed(cls, d: int) -> DensityOperator:
        return cls(Operator.identity(d).scale(Fraction(1, d)))

    @classmethod
    def mixture(cls, weighted: Iterable[tuple[object, Vector]]) -> DensityOperator:
        """Convex combination of pure states; weights are renormalized."""
        items = [(Fraction(w), v) for w, v in weighted]
        total = sum(w for w, _ in items)
        if not items or total <= 0 or any(w < 0 for w, _ in items):
            raise NotDensityError("mixture weights must be nonnegative with positive sum")
        acc = None
        for w, v in items:
            term = projector_from_ray(v).scale(w / total)
            acc = term if acc is None else acc + term
        return cls(acc)

    @property
    def dim(self) -> int:
        return self.op.dim


@dataclass(frozen=True)
class RationalUnitary:
    op: Operator

    def __post_init__(self) -> None:
        if self.op @ self.op.adjoint() != Operator.identity(self.op.dim):
            raise NotUnitaryError("matrix is not unitary: U U^dagger != I")

    @property
    def dim(self) -> int:
        return self.op.dim

    @classmethod
    def identity(cls, d: int) -> RationalUnitary:
        return cls(Operator.identity(d))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> RationalUnitary:
        """Maps basis vector ``e_j`` to ``e_{perm[j]}``."""
        d = len(perm)
        if sorted(perm) != list(range(d)):
            raise NotUnitaryError(f"not a permutation of range({d}): {list(perm)}")
        rows = [[0] * d for _ in range(d)]
        for j, i in enumerate(perm):
            rows[i][j] = 1
        return cls(Operator(rows))

    @classmethod
    def rotation(cls, d: int, i: int, j: int, cos: object, sin: object) -> RationalUnitary:
        """Plane rotation in coordinates (i, j); cos^2 + sin^2 must equal 1 exactly."""
        c, s = Fraction(cos), Fraction(sin)
        rows: list[list[object]] = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
        rows[i][i], rows[i][j] = c, s
        rows[j][i], rows[j][j] = -s, c
        return cls(Operator(rows))

    @classmethod
    def phase(cls, d: int, i: int, phase: object) -> RationalUnitary:
        """Diagonal unitary multiplying coordinate ``i`` by a unit-modulus Gaussian rational."""
        rows: list[list[object]] = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
        rows[i][i] = Scalar.coerce(phase)
        return cls(Operator(rows))

    def __matmul__(self, other: RationalUnitary) -> RationalUnitary:
        if not isinstance(other, RationalUnitary):
            return NotImplemented
        return RationalUnitary(self.op @ other.op)

    def apply(self, v: Vector) -> Vector:
        return self.op.apply(v)


State = Union[DensityOperator, Vector]


def born_probability(state: State, v: Vector) -> Fraction:
    """Tr(rho P_v), exactly.

    ``state`` may be a density operator or an unnormalized pure state vector.
    """
    if v.is_zero():
        raise ZeroVectorError("cannot measure along the zero vector")
    if isinstance(state, Vector):
        _check_dims(state.dim, v.dim, "state and ray")
        n = state.norm2()
        if not n:
            raise ZeroVectorError("zero state vector")
        return inner_product(state, v).abs2() / (n * v.norm2())
    if isinstance(state, DensityOperator):
        _check_dims(state.dim, v.dim, "state and ray")
        val = state.op.expectation(v)
        return val.to_fraction() / v.norm2()
    raise NotDensityError(f"not a quantum state: {type(state).__name__}")


def evolve(state: DensityOperator, u: RationalUnitary) -> DensityOperator:
    """U rho U^dagger."""
    _check_dims(state.dim, u.dim, "state and unitary")
    return DensityOperator(u.op @ state.op @ u.op.adjoint())


def conjugate(p: Operator, u: RationalUnitary) -> Operator:
    """U P U^dagger."""
    _check_dims(p.dim, u.dim, "operator and unitary")
    return u.op @ p @ u.op.adjoint()
