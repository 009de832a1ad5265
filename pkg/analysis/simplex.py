from fractions import Fraction
from itertools import combinations

from ..core.errors import AnalysisError

__all__ = ['RationalSimplex', 'solve_square', 'enumerate_vertices']


class RationalSimplex:
    """Primal simplex over exact |Fraction| arithmetic for ``maximize c.x subject to A x <= b, x >= 0`` with ``b >= 0``.

    The origin is feasible for such programs, so no first phase is needed: the slack variables form the initial basis. Pivoting follows Bland's rule (smallest improving variable enters, ties in the ratio test leave by smallest label), which rules out cycling on degenerate vertices. Variables ``0..n-1`` are the structural ones, ``n..n+m-1`` the slacks.

    >>> lp = RationalSimplex([[3, 2]], [1], [1, 1])
    >>> lp.solve()
    'optimal'
    >>> lp.objective, lp.solution()
    (Fraction(1, 2), [Fraction(0, 1), Fraction(1, 2)])
    """

    def __init__(self, A, b, c):
        self.m = len(b)
        self.n = len(c)
        if any(len(row) != self.n for row in A) or len(A) != self.m:
            raise AnalysisError('Constraint matrix shape does not match {} rows and {} variables'.format(self.m, self.n))
        self.A = [[Fraction(v) for v in row] for row in A]
        self.b = [Fraction(v) for v in b]
        if any(v < 0 for v in self.b):
            raise AnalysisError('RationalSimplex requires a nonnegative right hand side')
        self.c = [Fraction(v) for v in c]
        self.objective = Fraction(0)
        self.nb_vars = list(range(self.n))
        self.b_vars = list(range(self.n, self.n + self.m))
        self.status = None


    def pivot(self, i, j):
        piv = self.A[i][j]
        row = [v / piv for v in self.A[i]]
        row[j] = 1 / piv
        bi = self.b[i] / piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f == 0:
                continue
            for l in range(self.n):
                self.A[k][l] = -f * row[j] if l == j else self.A[k][l] - f * row[l]
            self.b[k] -= f * bi
        cj = self.c[j]
        for l in range(self.n):
            self.c[l] = -cj * row[j] if l == j else self.c[l] - cj * row[l]
        self.objective += cj * bi
        self.A[i], self.b[i] = row, bi
        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]


    def step(self):
        improving = [(self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0]
        if not improving:
            return 'optimal'
        _, j = min(improving)
        ratios = [(self.b[i] / self.A[i][j], self.b_vars[i], i) for i in range(self.m) if self.A[i][j] > 0]
        if not ratios:
            return 'unbounded'
        _, _, i = min(ratios)
        self.pivot(i, j)
        return 'go_on'


    def solve(self):
        while True:
            ret = self.step()
            if ret in ('optimal', 'unbounded'):
                self.status = ret
                return ret


    def solution(self):
        """Return the values of the structural variables at the current basis."""
        x = [Fraction(0)] * self.n
        for i, v in enumerate(self.b_vars):
            if v < self.n:
                x[v] = self.b[i]
        return x


#===========================================================================


def solve_square(M, r):
    """Solve the square system ``M x = r`` by Gauss-Jordan elimination over fractions. Return ``None`` if *M* is singular."""
    n = len(r)
    T = [[Fraction(v) for v in row] + [Fraction(rv)] for row, rv in zip(M, r)]
    for col in range(n):
        piv = next((k for k in range(col, n) if T[k][col] != 0), None)
        if piv is None:
            return None
        T[col], T[piv] = T[piv], T[col]
        p = T[col][col]
        T[col] = [v / p for v in T[col]]
        for k in range(n):
            if k != col and T[k][col] != 0:
                f = T[k][col]
                T[k] = [a - f * b for a, b in zip(T[k], T[col])]
    return [T[k][n] for k in range(n)]


def enumerate_vertices(A, b):
    """Return all vertices of ``{x : A x <= b, x >= 0}`` as tuples of |Fraction|.

    Every choice of ``n`` constraints (nonnegativity included) made tight defines a candidate point; nonsingular, feasible candidates are the vertices. The work grows combinatorially and is meant for the handful of variables of a route flow program.
    """
    n = len(A[0]) if A else 0
    rows = [[Fraction(v) for v in row] for row in A] + [[Fraction(-1 if k == i else 0) for k in range(n)] for i in range(n)]
    rhs = [Fraction(v) for v in b] + [Fraction(0)] * n
    found = set()
    for subset in combinations(range(len(rows)), n):
        x = solve_square([rows[k] for k in subset], [rhs[k] for k in subset])
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(row, x)) <= rv for row, rv in zip(rows, rhs)):
            found.add(tuple(x))
    return sorted(found)
