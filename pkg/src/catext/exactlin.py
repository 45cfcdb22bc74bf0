"""Exact dense linear algebra over the rationals and prime fields.

Everything downstream (algebra validation, resolutions, cochain complexes)
reduces to rref / kernel / solve over an exact field, so this module is the
single computational substrate.  There are no tolerances anywhere: entries
are Python ints reduced mod p, or fractions.Fraction.

The ground ring of the constructions is restricted to fields (Q and F_p
with p prime < 2**31): Ext computation by linear algebra needs a field.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

import numpy as np

# int64 matmul is overflow-safe when accumulated sums stay below 2**63;
# primes above this bound take the (slow, arbitrary precision) object path.
_FAST_PRIME_BOUND = 1 << 15


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Exact base field: the rationals or F_p for a prime p < 2**31."""

    kind: str  # "rationals" | "prime-field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if not (2 <= p < 2**31 and _is_prime(p)):
                raise ValueError(f"characteristic must be a prime < 2**31, got {p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime-field", p)

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime-field"

    @property
    def p(self) -> int:
        return self.characteristic

    # -- scalars ---------------------------------------------------------
    def coerce(self, x):
        if self.is_prime_field:
            return int(x) % self.characteristic
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime_field else Fraction(1)

    def inv(self, x):
        if self.is_prime_field:
            x = int(x) % self.characteristic
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, self.characteristic - 2, self.characteristic)
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / x

    # -- arrays ----------------------------------------------------------
    @property
    def dtype(self):
        return np.int64 if self.is_prime_field else object

    def array(self, data) -> np.ndarray:
        """Coerce nested-list / array data into a field-valued ndarray."""
        if self.is_prime_field:
            a = np.array(data, dtype=np.int64)
            return np.mod(a, self.characteristic)
        a = np.array(data, dtype=object)
        flat = a.reshape(-1)
        for i, v in enumerate(flat):
            flat[i] = v if isinstance(v, Fraction) else Fraction(v)
        return flat.reshape(a.shape)

    def zeros(self, *shape) -> np.ndarray:
        if self.is_prime_field:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.one
        return a

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.characteristic) if self.is_prime_field else a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime_field:
            p = self.characteristic
            if p < _FAST_PRIME_BOUND:
                return np.mod(a @ b, p)
            ao = a.astype(object)
            return np.mod(ao @ b.astype(object), p).astype(np.int64)
        return a @ b

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.array_equal(a, b))

    def is_zero(self, a: np.ndarray) -> bool:
        if self.is_prime_field:
            return not np.any(a)
        return all(v == 0 for v in np.asarray(a, dtype=object).reshape(-1))

    def vectors(self, dim: int, limit: int = 1 << 20):
        """All vectors of F_p**dim as int tuples, in lexicographic order."""
        if not self.is_prime_field:
            raise ValueError("element enumeration needs a finite field")
        count = self.characteristic**dim
        if count > limit:
            raise ValueError(f"enumeration of {count} vectors exceeds desk-scale limit {limit}")
        return [t for t in iproduct(range(self.characteristic), repeat=dim)]


@dataclass
class Matrix:
    """Dense matrix over a FieldSpec; entries held in a 2-D ndarray."""

    field: FieldSpec
    a: np.ndarray

    def __post_init__(self):
        if self.a.ndim != 2:
            raise ValueError("matrix data must be 2-D")

    @staticmethod
    def make(field: FieldSpec, data) -> "Matrix":
        arr = field.array(data)
        if arr.ndim != 2:
            arr = arr.reshape(len(data), -1) if len(data) else arr.reshape(0, 0)
        return Matrix(field, arr)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return Matrix(field, field.zeros(rows, cols))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Matrix":
        return Matrix(field, field.eye(n))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, self.field.matmul(self.a, other.a))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.field == other.field \
            and self.field.equal(self.a, other.a)


def _eliminate(field: FieldSpec, m: np.ndarray):
    """In-place row reduction to rref; returns pivot column list."""
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sub = m[r:, c]
        nz = np.nonzero(sub)[0] if field.is_prime_field \
            else np.array([i for i, v in enumerate(sub) if v != 0])
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = field.inv(m[r, c])
        m[r] = field.reduce(m[r] * inv)
        col = np.array(m[:, c], copy=True)
        col[r] = field.zero
        other = np.nonzero(col)[0] if field.is_prime_field \
            else np.array([i for i, v in enumerate(col) if v != 0], dtype=np.int64)
        if len(other):
            m[other] = field.reduce(m[other] - np.outer(col[other], m[r]))
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns; rank = len(pivots)."""
    work = np.array(m.a, copy=True)
    pivots = _eliminate(m.field, work)
    return Matrix(m.field, work), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Rows spanning the right null space {v : m v = 0}.

    Row count is cols(m) - rank(m).
    """
    field = m.field
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    out = field.zeros(len(free), m.cols)
    for k, fc in enumerate(free):
        out[k, fc] = field.one
        for i, pc in enumerate(pivots):
            out[k, pc] = field.reduce(field.zero - r.a[i, fc])
    return Matrix(field, out)


def solve(a: Matrix, b: np.ndarray):
    """Some exact solution x of a x = b, or None if inconsistent."""
    b = a.field.array(b).reshape(-1)
    if len(b) != a.rows:
        raise ValueError(f"rhs length {len(b)} != rows {a.rows}")
    x = solve_matrix(a, Matrix(a.field, b.reshape(-1, 1)))
    return None if x is None else x.a[:, 0]


def solve_matrix(a: Matrix, b: Matrix):
    """Exact solution X of a X = b (matrix rhs), or None if inconsistent."""
    field = a.field
    if b.rows != a.rows:
        raise ValueError("rhs row count mismatch")
    aug = np.concatenate([np.array(a.a, copy=True), np.array(b.a, copy=True)], axis=1)
    pivots = _eliminate(field, aug)
    if any(p >= a.cols for p in pivots):
        return None
    x = field.zeros(a.cols, b.cols)
    for i, pc in enumerate(pivots):
        x[pc] = aug[i, a.cols:]
    return Matrix(field, x)


class Echelon:
    """Incremental fully-reduced row basis for span membership and extension.

    Rows are kept mutually reduced (each row vanishes at every other row's
    pivot), so reducing a vector is a single matrix operation.
    """

    def __init__(self, field: FieldSpec, dim: int):
        self.field = field
        self.dim = dim
        self._mat = field.zeros(0, dim)
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def _coerce(self, v) -> np.ndarray:
        if isinstance(v, np.ndarray) and v.dtype == self._mat.dtype:
            return np.array(v, copy=True).reshape(-1)
        return np.array(self.field.array(v), copy=True).reshape(-1)

    def _reduce_vec(self, v: np.ndarray) -> np.ndarray:
        field = self.field
        v = self._coerce(v)
        if self._pivots:
            coeffs = v[self._pivots]
            if field.is_prime_field:
                if np.any(coeffs):
                    v = field.reduce(v - coeffs @ self._mat)
            elif any(c != 0 for c in coeffs):
                v = v - coeffs @ self._mat
        return v

    def contains(self, v) -> bool:
        return self.field.is_zero(self._reduce_vec(v))

    def add(self, v) -> bool:
        """Insert v; True iff it enlarged the span."""
        field = self.field
        red = self._reduce_vec(v)
        nz = np.nonzero(red)[0]
        if len(nz) == 0:
            return False
        piv = int(nz[0])
        red = field.reduce(red * field.inv(red[piv]))
        if self._pivots:
            col = np.array(self._mat[:, piv], copy=True)
            touched = np.nonzero(col)[0]
            if len(touched):
                self._mat[touched] = field.reduce(
                    self._mat[touched] - np.outer(col[touched], red))
        self._mat = np.concatenate([self._mat, red.reshape(1, -1)], axis=0)
        self._pivots.append(piv)
        return True

    def basis_matrix(self) -> Matrix:
        if not self._pivots:
            return Matrix.zeros(self.field, 0, self.dim)
        order = np.argsort(self._pivots)
        return Matrix(self.field, np.array(self._mat[order], copy=True))
