"""Exact rational and integer linear algebra.

Everything here works over ``int`` and ``fractions.Fraction``; there are no
floats and no tolerances.  Matrices are plain lists of row lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Degenerate, InconsistentSystem, NotCharacteristic, NotNegativeDefinite, Singular

Matrix = list


def as_fraction_matrix(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def quadratic(m: Sequence[Sequence], v: Sequence):
    return dot(v, matvec(m, v))


def det(m: Sequence[Sequence]):
    """Determinant by fraction-exact Gaussian elimination; integer input gives int."""
    n = len(m)
    if n == 0:
        return 1
    a = as_fraction_matrix(m)
    sign = 1
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        result *= piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                row_k = a[k]
                a[i] = [x - f * y for x, y in zip(a[i], row_k)]
    result *= sign
    return int(result) if result.denominator == 1 else result


def invert(m: Sequence[Sequence]) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise Singular("matrix is not square")
    a = [as_fraction_matrix([row])[0] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise Singular("matrix is singular")
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def solve_exact(a: Sequence[Sequence], b: Sequence, *, unique: bool = True) -> list:
    """Solve ``a x = b`` exactly by row reduction.

    Raises InconsistentSystem when no solution exists, or when ``unique`` is
    set and the solution is not unique.  Free variables are set to zero.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        piv = aug[r][c]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            raise InconsistentSystem("linear system has no solution")
    if unique and len(pivots) < cols:
        raise InconsistentSystem("linear system is underdetermined")
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x


@dataclass(frozen=True)
class SmithForm:
    """``U @ m @ V == diag(factors)`` with U, V unimodular."""

    factors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f != 1)


def smith_form(m: Sequence[Sequence[int]]) -> SmithForm:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    factors = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithForm(factors, tuple(map(tuple, u)), tuple(map(tuple, v)))


def signature(m: Sequence[Sequence]) -> int:
    """Signature of a nondegenerate symmetric matrix by congruence diagonalization."""
    n = len(m)
    a = as_fraction_matrix(m)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise Degenerate("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if a[i][j] != 0), None)
            if pair is None:
                raise Degenerate("symmetric matrix is degenerate")
            i, j = pair
            # replace e_i by e_i + e_j: diagonal becomes 2 a_ij
            for r in range(n):
                a[i][r] += a[j][r]
            for r in range(n):
                a[r][i] += a[r][j]
            k = i
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            f = a[i][k] / piv
            if f:
                for r in range(n):
                    a[i][r] -= f * a[k][r]
                for r in range(n):
                    a[r][i] -= f * a[r][k]
    return pos - neg


def ldl(m: Sequence[Sequence]) -> tuple[Matrix, list]:
    """Exact ``m = L^T diag(d) L`` with L unit upper-triangular, for positive-definite m.

    The form is then ``x^T m x = sum_i d_i (x_i + sum_{j>i} L_ij x_j)^2``.
    """
    n = len(m)
    a = as_fraction_matrix(m)
    lmat = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        d[i] = a[i][i] - sum(lmat[k][i] ** 2 * d[k] for k in range(i))
        if d[i] <= 0:
            raise NotNegativeDefinite("form is not definite")
        for j in range(i + 1, n):
            s = a[i][j] - sum(lmat[k][i] * lmat[k][j] * d[k] for k in range(i))
            lmat[i][j] = s / d[i]
    return lmat, d


def is_characteristic(g: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return all((v[i] - g[i][i]) % 2 == 0 for i in range(len(g)))


@dataclass(frozen=True)
class SpincClass:
    index: int
    rep: tuple[int, ...]
    key: tuple[int, ...]
    conjugate_rep: tuple[int, ...]
    conjugate: int
    is_spin: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "rep": list(self.rep),
            "conjugate_rep": list(self.conjugate_rep),
            "is_spin": self.is_spin,
        }


class SpincStructures:
    """Characteristic covectors of ``g`` modulo ``2 im(g)``."""

    def __init__(self, g: Sequence[Sequence[int]]):
        self.g = [[int(x) for x in row] for row in g]
        self.m = len(self.g)
        if det(self.g) == 0:
            raise Singular("Goeritz matrix is singular")
        self.snf = smith_form(self.g)
        self.base = tuple(self.g[i][i] % 2 for i in range(self.m))
        self.classes = self._enumerate()
        self._by_key = {c.key: c for c in self.classes}

    def key(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.m or not is_characteristic(self.g, v):
            raise NotCharacteristic(f"covector {tuple(v)} is not characteristic")
        w = [(v[i] - self.base[i]) // 2 for i in range(self.m)]
        uw = matvec(self.snf.U, w)
        return tuple(x % f for x, f in zip(uw, self.snf.factors))

    def classify(self, v: Sequence[int]) -> SpincClass:
        return self._by_key[self.key(v)]

    def _enumerate(self) -> tuple[SpincClass, ...]:
        total = abs(det(self.g))
        found: dict = {}
        radius = 0
        while len(found) < total:
            shell: dict = {}
            for v in self._shell(radius):
                k = self.key(v)
                if k not in found and (k not in shell or v < shell[k]):
                    shell[k] = v
            found.update(shell)
            radius += 1
        ordered = sorted(found, key=lambda k: found[k])
        index = {k: i for i, k in enumerate(ordered)}
        out = []
        for i, k in enumerate(ordered):
            rep = found[k]
            ck = self.key(tuple(-x for x in rep))
            out.append(SpincClass(i, rep, k, found[ck], index[ck], index[ck] == i))
        return tuple(out)

    def _shell(self, r: int):
        """Characteristic vectors of infinity-norm exactly r."""
        choices = []
        for b in self.base:
            choices.append([x for x in range(-r, r + 1) if (x - b) % 2 == 0])
        for v in itertools.product(*choices):
            if not v or max(abs(x) for x in v) == r:
                yield tuple(v)


def spinc_classes(g: Sequence[Sequence[int]]) -> tuple[SpincClass, ...]:
    return SpincStructures(g).classes


def max_q_over_orbit(g: Sequence[Sequence[int]], rep: Sequence[int]) -> tuple[Fraction, tuple[int, ...]]:
    """Maximum of ``q(v) = v^T g^{-1} v`` over ``rep + 2 im(g)``, with a maximizer.

    Writing ``v = rep + 2 g z`` gives ``-q(v) = 4 (z - z*)^T (-g) (z - z*)``
    with ``z* = -g^{-1} rep / 2``; the minimum of that positive form is found
    by complete Fincke-Pohst enumeration, shrinking the radius as better
    points appear.  Ties return the lexicographically smallest ``v``.
    """
    m = len(g)
    if m == 0:
        return Fraction(0), ()
    neg = [[-x for x in row] for row in g]
    lmat, d = ldl(neg)
    ginv = invert(g)
    zstar = [-x / 2 for x in matvec(ginv, rep)]

    def q_of(z):
        v = [rep[i] + 2 * sum(g[i][j] * z[j] for j in range(m)) for i in range(m)]
        return quadratic(ginv, v), tuple(v)

    best_q, best_v = q_of([0] * m)
    # bound on (z - z*)^T neg (z - z*)
    bound = [-best_q / 4]
    hits = {best_v}
    z = [0] * m

    def rec(i, partial):
        # y_j = z_j - z*_j; the i-th term is d_i (y_i + sum_{j>i} L_ij y_j)^2
        shift = sum(lmat[i][j] * (z[j] - zstar[j]) for j in range(i + 1, m))
        centre = zstar[i] - shift
        room = (bound[0] - partial) / d[i]
        if room < 0:
            return
        start = centre.numerator // centre.denominator
        for direction in (0, 1):
            k = start if direction == 0 else start + 1
            while (k - centre) ** 2 <= room:
                z[i] = k
                term = partial + d[i] * (k - centre) ** 2
                if i == 0:
                    leaf(term)
                else:
                    rec(i - 1, term)
                room = (bound[0] - partial) / d[i]
                k = k - 1 if direction == 0 else k + 1
        z[i] = 0

    def leaf(term):
        nonlocal best_q, hits
        q, v = q_of(z)
        if q > best_q:
            best_q, hits = q, {v}
            bound[0] = -q / 4
        elif q == best_q:
            hits.add(v)

    rec(m - 1, Fraction(0))
    return best_q, min(hits)
