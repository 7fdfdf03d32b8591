"""Exact integer arithmetic in one variable x = q^(1/2).

Every half-integer power of q becomes an integer power of x, so the ring in
play is Z[x]. :class:`HalfPoly` is a sparse polynomial, :class:`HalfSeries` a
dense series truncated after x^order, and :class:`RationalFn` an element of the
fraction field kept in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence


class SingularMatrixError(ArithmeticError):
    pass


class SeriesError(ArithmeticError):
    pass


class HalfPoly:
    """Polynomial in x with arbitrary-precision integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Sequence[int] | int = 0):
        if isinstance(coeffs, int):
            items = {0: coeffs}.items()
        elif isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        c = {}
        for e, v in items:
            if e < 0:
                raise ValueError("negative exponent")
            if v:
                c[int(e)] = c.get(int(e), 0) + int(v)
        self._c = {e: v for e, v in c.items() if v}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "HalfPoly":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    @property
    def degree(self) -> int:
        return max(self._c) if self._c else -1

    @property
    def lead(self) -> int:
        return self._c[self.degree] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def content(self) -> int:
        g = 0
        for v in self._c.values():
            g = gcd(g, v)
        return g

    def dense(self) -> list[int]:
        return [self._c.get(e, 0) for e in range(self.degree + 1)]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfPoly(other)
        if not isinstance(other, HalfPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __neg__(self) -> "HalfPoly":
        return HalfPoly({e: -v for e, v in self._c.items()})

    def __add__(self, other) -> "HalfPoly":
        other = _as_poly(other)
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return HalfPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "HalfPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "HalfPoly":
        other = _as_poly(other)
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return HalfPoly(out)

    __rmul__ = __mul__

    def scale_div(self, k: int) -> "HalfPoly":
        """Divide every coefficient by ``k``; the division must be exact."""
        out = {}
        for e, v in self._c.items():
            q, r = divmod(v, k)
            if r:
                raise ArithmeticError("inexact integer division")
            out[e] = q
        return HalfPoly(out)

    def divmod_exact(self, other: "HalfPoly") -> "HalfPoly":
        """Quotient of an exact division in Z[x]."""
        q, r = pseudo_divmod(self, other, exact=True)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __floordiv__(self, other) -> "HalfPoly":
        return self.divmod_exact(_as_poly(other))

    def __call__(self, x):
        return sum(v * x**e for e, v in self._c.items())

    def __repr__(self) -> str:
        if not self._c:
            return "HalfPoly(0)"
        return f"HalfPoly({dict(sorted(self._c.items()))})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            coef = str(abs(v)) if (abs(v) != 1 or e == 0) else ""
            sep = "*" if coef and mono else ""
            parts.append(("-" if v < 0 else "+", f"{coef}{sep}{mono}"))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _as_poly(p) -> HalfPoly:
    if isinstance(p, HalfPoly):
        return p
    if isinstance(p, int):
        return HalfPoly(p)
    raise TypeError(f"cannot use {type(p).__name__} as HalfPoly")


ZERO = HalfPoly(0)
ONE = HalfPoly(1)
X = HalfPoly({1: 1})


def pseudo_divmod(a: HalfPoly, b: HalfPoly, exact: bool = False):
    """Polynomial long division.

    With ``exact=True`` the quotient must have integer coefficients (raises
    otherwise); else a pseudo-division by powers of ``lead(b)`` is performed
    and ``(q, r)`` satisfy ``lead(b)**k * a == q*b + r``.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    db, lb = b.degree, b.lead
    r = dict(a.coeffs)
    q: dict[int, int] = {}
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        if lr % lb:
            if exact:
                raise ArithmeticError("inexact polynomial division")
            r = {e: v * lb for e, v in r.items()}
            q = {e: v * lb for e, v in q.items()}
            lr = r[dr]
        c = lr // lb
        shift = dr - db
        q[shift] = q.get(shift, 0) + c
        for e, v in b.coeffs.items():
            r[e + shift] = r.get(e + shift, 0) - c * v
            if r[e + shift] == 0:
                del r[e + shift]
    return HalfPoly(q), HalfPoly(r)


def primitive_part(p: HalfPoly) -> HalfPoly:
    c = p.content()
    if c == 0:
        return p
    if p.lead < 0:
        c = -c
    return p.scale_div(c)


def poly_gcd(a: HalfPoly, b: HalfPoly) -> HalfPoly:
    """Greatest common divisor in Z[x] with positive leading coefficient."""
    if a.is_zero() or b.is_zero():
        g = b if a.is_zero() else a
        return -g if g.lead < 0 else g
    content = gcd(a.content(), b.content())
    a, b = primitive_part(a), primitive_part(b)
    if a.degree < b.degree:
        a, b = b, a
    while b:
        _, r = pseudo_divmod(a, b)
        a, b = b, (primitive_part(r) if r else ZERO)
    return primitive_part(a) * content


class RationalFn:
    """Element of Q(x) stored as num/den in lowest terms.

    Numerator and denominator are coprime in Z[x] (contents included) and the
    denominator has positive leading coefficient, so equal rational functions
    share one representation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduce: bool = True):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = ONE
            else:
                g = poly_gcd(num, den)
                if g != ONE:
                    num, den = num // g, den // g
            if den.lead < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, HalfPoly)):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RationalFn":
        other = _as_rat(other)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RationalFn":
        return self + (-_as_rat(other))

    def __mul__(self, other) -> "RationalFn":
        other = _as_rat(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        other = _as_rat(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def to_json(self) -> dict:
        from .metric import format_half

        def cmap(p: HalfPoly):
            return {format_half(e): str(v) for e, v in sorted(p.coeffs.items())}

        return {"num": cmap(self.num), "den": cmap(self.den)}

    def __repr__(self) -> str:
        return f"RationalFn({self.num!s}, {self.den!s})"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _as_rat(r) -> RationalFn:
    if isinstance(r, RationalFn):
        return r
    return RationalFn(_as_poly(r))


class HalfSeries:
    """Power series in x known through x^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        c = list(coeffs)[: order + 1]
        c += [0] * (order + 1 - len(c))
        self.order = order
        self.coeffs = c

    @classmethod
    def from_poly(cls, p: HalfPoly, order: int) -> "HalfSeries":
        return cls([p[e] for e in range(order + 1)], order)

    def __getitem__(self, e: int):
        return self.coeffs[e]

    def _match(self, other) -> tuple["HalfSeries", int]:
        if isinstance(other, HalfPoly):
            other = HalfSeries.from_poly(other, self.order)
        elif isinstance(other, int):
            other = HalfSeries([other], self.order)
        return other, min(self.order, other.order)

    def __add__(self, other) -> "HalfSeries":
        other, n = self._match(other)
        return HalfSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> "HalfSeries":
        return HalfSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "HalfSeries":
        other, _ = self._match(other)
        return self + (-other)

    def __mul__(self, other) -> "HalfSeries":
        other, n = self._match(other)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return HalfSeries(out, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HalfSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> list[dict]:
        from .metric import format_half

        return [{"q": format_half(e), "c": str(c)} for e, c in enumerate(self.coeffs)]

    def __repr__(self) -> str:
        return f"HalfSeries({self.coeffs}, order={self.order})"


def series_expand(r: RationalFn, order: int, integral: bool = True) -> HalfSeries:
    """Power series of ``r`` through x^order.

    Integer long division is used when ``den(0) = ±1``; otherwise exact
    rationals, and ``integral=True`` then demands every coefficient be an
    integer.
    """
    num, den = r.num, r.den
    d0 = den[0]
    if d0 == 0:
        raise SeriesError("denominator vanishes at q = 0; no power series expansion")
    dcoef = [den[e] for e in range(order + 1)]
    out = []
    unit = d0 in (1, -1)
    for n in range(order + 1):
        acc = num[n] - sum(dcoef[k] * out[n - k] for k in range(1, n + 1))
        if unit:
            out.append(acc * d0)
        else:
            val = Fraction(acc, d0)
            if integral and val.denominator != 1:
                raise SeriesError(f"non-integer coefficient {val} at x^{n}")
            out.append(int(val) if val.denominator == 1 else val)
    return HalfSeries(out, order)


def _bareiss_upper(M: list[list[HalfPoly]]) -> list[list[HalfPoly]]:
    """Fraction-free forward elimination on an augmented n x (n+m) matrix."""
    n = len(M)
    A = [row[:] for row in M]
    prev = ONE
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular over Q(x)")
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, len(A[i])):
                val = akk * A[i][j] - aik * A[k][j]
                A[i][j] = val // prev if prev != ONE else val
            A[i][k] = ZERO
        prev = akk
    return A


def linsolve_rational(A: Sequence[Sequence[HalfPoly]], b: Sequence[HalfPoly]) -> list[RationalFn]:
    """Solve ``A w = b`` exactly over Q(x) by Bareiss elimination.

    The final pivot of the fraction-free triangularisation is ``±det A``, so
    ``det * w`` is polynomial and the back substitution divides exactly.
    """
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("A must be square and match b")
    if n == 0:
        return []
    aug = [[_as_poly(x) for x in row] + [_as_poly(bi)] for row, bi in zip(A, b)]
    U = _bareiss_upper(aug)
    det = U[n - 1][n - 1]
    y: list[HalfPoly] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = det * U[i][n]
        for j in range(i + 1, n):
            acc = acc - U[i][j] * y[j]
        y[i] = acc // U[i][i]
    return [RationalFn(yi, det) for yi in y]


def matvec(A: Sequence[Sequence], w: Sequence) -> list:
    out = []
    for row in A:
        acc = RationalFn(0)
        for a, x in zip(row, w):
            if a:
                acc = acc + x * a
        out.append(acc)
    return out
