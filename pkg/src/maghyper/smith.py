"""Smith normal form over the integers.

Dense list-of-lists matrices with Python ints. The pivot is always the
smallest nonzero entry (in absolute value) of the remaining block, which keeps
entries small on the sparse 0/±1 matrices produced by boundary maps.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix, inner: int | None = None) -> Matrix:
    if not A:
        return []
    m = len(B[0]) if B else 0
    n = len(B) if inner is None else inner
    out = [[0] * m for _ in A]
    for i, row in enumerate(A):
        oi = out[i]
        for k in range(n):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(m):
                    if bk[j]:
                        oi[j] += a * bk[j]
    return out


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


@dataclass
class SmithDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular; inverses are kept too."""

    D: Matrix
    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    divisors: list[int]

    @property
    def rank(self) -> int:
        return len(self.divisors)


class _Reducer:
    def __init__(self, M: Matrix, transforms: bool):
        self.A = [list(r) for r in M]
        self.m = len(M)
        self.n = len(M[0]) if M else 0
        self.t = transforms
        if transforms:
            self.U = identity(self.m)
            self.Ui = identity(self.m)
            self.V = identity(self.n)
            self.Vi = identity(self.n)

    # row_i += c * row_j
    def add_row(self, i: int, j: int, c: int):
        A = self.A
        ri, rj = A[i], A[j]
        for k in range(self.n):
            if rj[k]:
                ri[k] += c * rj[k]
        if self.t:
            ui, uj = self.U[i], self.U[j]
            for k in range(self.m):
                if uj[k]:
                    ui[k] += c * uj[k]
            # inverse: column_j -= c * column_i
            for row in self.Ui:
                if row[i]:
                    row[j] -= c * row[i]

    # col_i += c * col_j
    def add_col(self, i: int, j: int, c: int):
        for row in self.A:
            if row[j]:
                row[i] += c * row[j]
        if self.t:
            for row in self.V:
                if row[j]:
                    row[i] += c * row[j]
            vi, vj = self.Vi[j], self.Vi[i]
            for k in range(self.n):
                if vj[k]:
                    vi[k] -= c * vj[k]

    def swap_rows(self, i: int, j: int):
        if i == j:
            return
        A = self.A
        A[i], A[j] = A[j], A[i]
        if self.t:
            self.U[i], self.U[j] = self.U[j], self.U[i]
            for row in self.Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(self, i: int, j: int):
        if i == j:
            return
        for row in self.A:
            row[i], row[j] = row[j], row[i]
        if self.t:
            for row in self.V:
                row[i], row[j] = row[j], row[i]
            self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def negate_row(self, i: int):
        self.A[i] = [-x for x in self.A[i]]
        if self.t:
            self.U[i] = [-x for x in self.U[i]]
            for row in self.Ui:
                row[i] = -row[i]

    def _pivot(self, t: int):
        best = None
        for i in range(t, self.m):
            row = self.A[i]
            for j in range(t, self.n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return best
        return best

    def run(self) -> list[int]:
        A = self.A
        t = 0
        while t < min(self.m, self.n):
            p = self._pivot(t)
            if p is None:
                break
            _, i, j = p
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            while True:
                piv = A[t][t]
                done = True
                for i in range(t + 1, self.m):
                    if A[i][t]:
                        q = A[i][t] // piv
                        self.add_row(i, t, -q)
                        if A[i][t]:
                            done = False
                for j in range(t + 1, self.n):
                    if A[t][j]:
                        q = A[t][j] // piv
                        self.add_col(j, t, -q)
                        if A[t][j]:
                            done = False
                if not done:
                    # a nonzero remainder is smaller than the pivot: move it in
                    best = None
                    for i in range(t + 1, self.m):
                        if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                            best = (abs(A[i][t]), i, "r")
                    for j in range(t + 1, self.n):
                        if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                            best = (abs(A[t][j]), j, "c")
                    if best[2] == "r":
                        self.swap_rows(t, best[1])
                    else:
                        self.swap_cols(t, best[1])
                    continue
                # pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, self.m):
                    row = A[i]
                    for j in range(t + 1, self.n):
                        if row[j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if A[t][t] < 0:
                self.negate_row(t)
            t += 1
        return [A[k][k] for k in range(t)]


def smith_decomposition(M: Matrix, n_cols: int | None = None) -> SmithDecomposition:
    if not M and n_cols is not None:
        return SmithDecomposition([], [], identity(n_cols), [], identity(n_cols), [])
    r = _Reducer(M, transforms=True)
    divisors = r.run()
    return SmithDecomposition(r.A, r.U, r.V, r.Ui, r.Vi, divisors)


def smith_normal_form(M: Matrix) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ...`` of ``M`` and its rank."""
    if not M or not M[0]:
        return [], 0
    divisors = _Reducer(M, transforms=False).run()
    return divisors, len(divisors)
