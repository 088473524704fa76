"""Integer alternating forms: symplectic normal form, invariant factors,
self-duality and modularity tests, and the self-dual hermitian lattice
existence decision.

The normal-form reduction is an alternating analogue of Smith reduction:
move the entry of least absolute value into the pivot position, clear its
row and column by unimodular transvections, force the pivot to divide the
complement, then recurse.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class AlternatingForm:
    """Non-degenerate antisymmetric integer Gram matrix of even dimension."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.gram)
        if n == 0 or n % 2:
            raise ValueError(f"dimension {n} must be even and positive")
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
            if row[i] != 0:
                raise ValueError("diagonal must vanish")
            for j in range(n):
                if row[j] != -self.gram[j][i]:
                    raise ValueError("Gram matrix must be antisymmetric")
        if _det(self.rows()) == 0:
            raise ValueError("form is degenerate")

    @classmethod
    def from_rows(cls, rows) -> "AlternatingForm":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def dimension(self) -> int:
        return len(self.gram)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.gram]


@dataclass(frozen=True)
class SymplecticDecomposition:
    """Unimodular U and divisor chain d_1 | ... | d_n with
    U^T * gram * U = direct sum of d_i * [[0,1],[-1,0]]."""

    transform: tuple[tuple[int, ...], ...]
    factors: tuple[int, ...]


def _det(rows: list[list[int]]) -> Fraction:
    """Exact determinant by fraction-free style elimination over Q."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def pfaffian(form: AlternatingForm) -> int:
    """Pfaffian by recursive expansion along the first row (oracle use;
    intended for dimensions <= 8)."""

    def rec(rows: list[list[int]]) -> int:
        n = len(rows)
        if n == 0:
            return 1
        total = 0
        for j in range(1, n):
            if rows[0][j] == 0:
                continue
            keep = [k for k in range(n) if k not in (0, j)]
            minor = [[rows[r][c] for c in keep] for r in keep]
            sign = -1 if j % 2 == 0 else 1
            total += sign * rows[0][j] * rec(minor)
        return total

    return rec(form.rows())


def _swap_basis(a, u, i, j):
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in u:
        row[i], row[j] = row[j], row[i]


def _negate_basis(a, u, i):
    for k in range(len(a)):
        a[i][k] = -a[i][k]
    for row in a:
        row[i] = -row[i]
    for row in u:
        row[i] = -row[i]


def _transvect(a, u, src, dst, q):
    """Basis change e_dst <- e_dst + q * e_src (congruence on a, column op on u)."""
    if q == 0:
        return
    n = len(a)
    for k in range(n):
        a[dst][k] += q * a[src][k]
    for k in range(n):
        a[k][dst] += q * a[k][src]
    for row in u:
        row[dst] += q * row[src]


def symplectic_normal_form(form: AlternatingForm) -> SymplecticDecomposition:
    """Invariant-factor (Lagrangian-basis) decomposition of an integer
    alternating form."""
    n = form.dimension
    a = form.rows()
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    factors: list[int] = []
    for s in range(0, n, 2):
        while True:
            # Least nonzero |entry| in the trailing block.
            best = None
            for i in range(s, n):
                for j in range(i + 1, n):
                    v = abs(a[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                raise ValueError("form is degenerate")
            _, i, j = best
            # j > i >= s, so after moving i to s the pivot sits at (s, j)
            # with j >= s+1, and never at column s.
            _swap_basis(a, u, s, i)
            _swap_basis(a, u, s + 1, j)
            if a[s][s + 1] < 0:
                _negate_basis(a, u, s + 1)
            d = a[s][s + 1]
            # Clear both pivot rows beyond the 2x2 block.
            for k in range(s + 2, n):
                _transvect(a, u, s + 1, k, -(a[s][k] // d))
                _transvect(a, u, s, k, a[s + 1][k] // d)
            if any(a[s][k] or a[s + 1][k] for k in range(s + 2, n)):
                continue  # a smaller pivot emerged; select it next round
            # Force the pivot to divide the complement.
            carrier = next(
                (
                    (i, j)
                    for i in range(s + 2, n)
                    for j in range(i + 1, n)
                    if a[i][j] % d
                ),
                None,
            )
            if carrier is None:
                factors.append(d)
                break
            _transvect(a, u, carrier[0], s, 1)
    for d_prev, d_next in zip(factors, factors[1:]):
        if d_next % d_prev:
            raise AssertionError(f"broken divisor chain {factors}")
    return SymplecticDecomposition(
        transform=tuple(tuple(row) for row in u),
        factors=tuple(factors),
    )


def invariant_factors(form: AlternatingForm) -> tuple[int, ...]:
    return symplectic_normal_form(form).factors


def is_self_dual(form: AlternatingForm) -> bool:
    """True iff the lattice equals its dual: every invariant factor is 1."""
    return all(d == 1 for d in invariant_factors(form))


def is_modular(form: AlternatingForm, a: int) -> bool:
    """True iff the lattice is a-modular: every invariant factor equals a."""
    if a < 1:
        raise ValueError(f"modulus a={a} must be positive")
    return all(d == a for d in invariant_factors(form))


def hermitian_self_dual_exists(
    division_algebra: bool, rank: int, ord_gamma_parity: str
) -> bool:
    """Whether a self-dual lattice exists in the rank-n hermitian module over
    a local quaternion algebra.

    The single obstruction: the algebra is division, the rank is odd and the
    valuation of the skew element gamma is even.  ``ord_gamma_parity`` is
    only meaningful in the division case and is ignored otherwise.
    """
    if rank < 1:
        raise ValueError(f"rank {rank} must be positive")
    if ord_gamma_parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {ord_gamma_parity!r}")
    return not (division_algebra and rank % 2 == 1 and ord_gamma_parity == "even")


def conjugate(gram, u) -> list[list[int]]:
    """U^T * gram * U for plain integer row-lists."""
    n = len(gram)
    left = [
        [sum(u[k][i] * gram[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return [
        [sum(left[i][k] * u[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def block_diagonal_target(factors) -> list[list[int]]:
    """The matrix direct-sum of d * [[0,1],[-1,0]] over the given factors."""
    n = 2 * len(factors)
    out = [[0] * n for _ in range(n)]
    for idx, d in enumerate(factors):
        out[2 * idx][2 * idx + 1] = d
        out[2 * idx + 1][2 * idx] = -d
    return out
