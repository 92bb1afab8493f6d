"""Exact arithmetic over small cyclotomic fields, and exact sparse linear algebra.

A :class:`Scalar` is an element of Q(zeta_n) in the power basis
1, z, z^2, ..., z^(d-1), where d is the degree of the n-th cyclotomic
polynomial.  Internally the coordinates are arbitrary-precision integers over
one common denominator (gcd-reduced after every operation), which keeps the
hot multiply/add paths fast; ``Scalar.coords`` exposes them as Fractions.

There is no floating point and no tolerance anywhere in this module: equality
of scalars is equality of canonical coordinate vectors, and the linear algebra
(:func:`rank`, :func:`nullspace`, :class:`RowReducer`) is exact Gaussian
elimination over the field.

Conductor n = 1 gives plain Q; n = 4 gives Q(i); the default used by the rest
of the package is n = 8, whose field Q(zeta_8) contains i = zeta_8^2 and all
eighth roots of unity.

All values are immutable after construction and safe to share across threads;
the solver routines are pure functions.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divide_exact(num, den):
    """Exact division of integer polynomials (ascending coeffs, den monic)."""
    num = list(num)
    d = len(den) - 1
    out = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        out[i - d] = c
        if c:
            for j, dj in enumerate(den):
                num[i - d + j] -= c * dj
    if any(num[:d]):
        raise ArithmeticError("polynomial division not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Coefficients of the n-th cyclotomic polynomial, ascending, monic."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _field_data(n):
    """(degree d, reduction rows): row j holds the coords of x^(d+j) mod Phi_n."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [-c for c in phi[:d]]  # x^d
    rows.append(tuple(cur))
    for _ in range(d - 2):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            red0 = rows[0]
            cur = [a + top * b for a, b in zip(cur, red0)]
        rows.append(tuple(cur))
    return d, tuple(rows)


def field_degree(n):
    return _field_data(n)[0]


class Scalar:
    """Element of Q(zeta_n), canonical form: gcd(content(num), den) = 1, den > 0."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den=1):
        d = _field_data(n)[0]
        num = tuple(num)
        if len(num) != d:
            raise ValueError(f"need {d} coordinates for conductor {n}, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-a for a in num)
            den = -den
        g = den
        for a in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            num = tuple(a // g for a in num)
            den //= g
        if den != 1 and not any(num):
            den = 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return _ZERO_CACHE.setdefault(n, cls(n, (0,) * field_degree(n)))

    @classmethod
    def one(cls, n):
        return _ONE_CACHE.setdefault(n, cls.from_int(n, 1))

    @classmethod
    def from_int(cls, n, value):
        num = [0] * field_degree(n)
        num[0] = value
        return cls(n, num)

    @classmethod
    def from_fraction(cls, n, frac):
        frac = Fraction(frac)
        num = [0] * field_degree(n)
        num[0] = frac.numerator
        return cls(n, num, frac.denominator)

    @classmethod
    def from_coords(cls, n, coords):
        """Build from a vector of Fractions/ints in the power basis."""
        coords = [Fraction(c) for c in coords]
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [int(c * den) for c in coords]
        return cls(n, num, den)

    @classmethod
    def zeta(cls, n, power=1):
        d = field_degree(n)
        num = [0] * d
        num[0] = 1
        base = cls(n, num)
        if power % _zeta_order(n) == 0:
            return cls.one(n)
        num = [0] * d
        if d == 1:
            # zeta_1 = 1, zeta_2 = -1
            num[0] = 1 if n == 1 else (-1) ** (power % 2)
            return cls(n, num)
        num[1] = 1
        return cls(n, num) ** (power % _zeta_order(n))

    @property
    def coords(self):
        return tuple(Fraction(a, self.den) for a in self.num)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def __bool__(self):
        return any(self.num)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.n != self.n:
                raise ValueError(f"conductor mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, int):
            return Scalar.from_int(self.n, other)
        if isinstance(other, Fraction):
            return Scalar.from_fraction(self.n, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.n, [a + b for a, b in zip(self.num, o.num)], self.den)
        g = gcd(self.den, o.den)
        ma, mb = o.den // g, self.den // g
        return Scalar(self.n, [a * ma + b * mb for a, b in zip(self.num, o.num)],
                      self.den // g * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.n, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return Scalar(self.n, [a - b for a, b in zip(self.num, o.num)], self.den)
        g = gcd(self.den, o.den)
        ma, mb = o.den // g, self.den // g
        return Scalar(self.n, [a * ma - b * mb for a, b in zip(self.num, o.num)],
                      self.den // g * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d, red = _field_data(self.n)
        a, b = self.num, o.num
        if d == 1:
            return Scalar(self.n, (a[0] * b[0],), self.den * o.den)
        conv = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                row = red[k - d]
                for j, rj in enumerate(row):
                    if rj:
                        out[j] += ck * rj
        return Scalar(self.n, out, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        n = self.n
        d = field_degree(n)
        if d == 1:
            return Scalar(n, (self.den,), self.num[0])
        phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
        a = [Fraction(c, self.den) for c in self.num]
        # invariant: r0 = s0*a mod phi, r1 = s1*a mod phi
        r0, s0 = phi, [Fraction(0)]
        r1, s1 = list(a), [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                coords = [c * inv for c in s1] + [Fraction(0)] * (d - len(s1))
                return Scalar.from_coords(n, coords[:d])
            q = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, _frac_poly_mod(r0, r1, q)
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(self.n, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.n == other.n and self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.n, self.num, self.den))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, n={self.n})"


_ZERO_CACHE = {}
_ONE_CACHE = {}


def _zeta_order(n):
    # zeta_n as stored has multiplicative order n (for n=1 order 1)
    return max(n, 1)


def _frac_poly_divmod(r0, r1):
    """Quotient of r0 by r1 over Fractions (ascending coeffs), r1 != 0."""
    r0 = list(r0)
    q = [Fraction(0)] * max(1, len(r0) - len(r1) + 1)
    lead = r1[-1]
    for i in range(len(r0) - 1, len(r1) - 2, -1):
        c = r0[i] / lead
        q[i - len(r1) + 1] = c
        if c:
            for j, dj in enumerate(r1):
                r0[i - len(r1) + 1 + j] -= c * dj
    return q


def _frac_poly_mod(r0, r1, q):
    rem = list(r0)
    for i, qi in enumerate(q):
        if qi:
            for j, dj in enumerate(r1):
                rem[i + j] -= qi * dj
    while rem and not rem[-1]:
        rem.pop()
    return rem


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _frac_poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    while out and not out[-1]:
        out.pop()
    return out


# -- string form ------------------------------------------------------------
#
# Canonical serialization: terms by ascending power, no whitespace, rationals
# as p/q, the root of unity written z<n>.  Examples: "0", "-1/2", "z8^2",
# "1/2+3*z8-z8^3".  parse_scalar accepts exactly this shape (whitespace is
# tolerated and stripped).


def format_scalar(s):
    if s.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(s.coords):
        if not c:
            continue
        neg = c < 0
        c = -c if neg else c
        if k == 0:
            body = str(c)
        else:
            z = f"z{s.n}" if k == 1 else f"z{s.n}^{k}"
            body = z if c == 1 else f"{c}*{z}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


def parse_scalar(text, n):
    """Parse the canonical scalar syntax into a Scalar over Q(zeta_n)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    d = field_degree(n)
    coords = [Fraction(0)] * d
    i = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while i <= len(s):
        j = i
        while j < len(s) and s[j] not in "+-":
            j += 1
        term = s[i:j]
        if not term:
            raise ValueError(f"malformed scalar {text!r}")
        coeff, power = _parse_term(term, n)
        k = power % _zeta_order(n)
        if k >= d:
            zk = Scalar.zeta(n, k)
            for idx, c in enumerate(zk.coords):
                coords[idx] += sign * coeff * c
        else:
            coords[k] += sign * coeff
        if j == len(s):
            break
        sign = -1 if s[j] == "-" else 1
        i = j + 1
    return Scalar.from_coords(n, coords)


def _parse_term(term, n):
    coeff = Fraction(1)
    power = 0
    for factor in term.split("*"):
        if not factor:
            raise ValueError(f"malformed term {term!r}")
        if factor[0] == "z":
            base, _, exp = factor.partition("^")
            root = int(base[1:])
            if root != n:
                raise ValueError(f"scalar uses z{root} but the field is Q(zeta_{n})")
            power += int(exp) if exp else 1
        else:
            numer, _, denom = factor.partition("/")
            f = Fraction(int(numer), int(denom)) if denom else Fraction(int(numer))
            coeff *= f
    return coeff, power


# -- sparse matrices ---------------------------------------------------------


class SparseMatrix:
    """Sparse matrix over Q(zeta_n): entries maps (row, col) -> nonzero Scalar.

    Instances are treated as frozen once handed out; construction may use
    :meth:`set`.  Iteration orders are row-major and deterministic.
    """

    __slots__ = ("n", "rows", "cols", "entries", "_cols_cache")

    def __init__(self, n, rows, cols, entries=None):
        self.n = n
        self.rows = rows
        self.cols = cols
        self.entries = dict(entries) if entries else {}
        self._cols_cache = None

    @classmethod
    def identity(cls, n, size):
        one = Scalar.one(n)
        return cls(n, size, size, {(i, i): one for i in range(size)})

    def set(self, r, c, value):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError((r, c))
        if value:
            self.entries[r, c] = value
        else:
            self.entries.pop((r, c), None)
        self._cols_cache = None

    def add_to(self, r, c, value):
        cur = self.entries.get((r, c))
        self.set(r, c, value if cur is None else cur + value)

    def get(self, r, c):
        return self.entries.get((r, c), Scalar.zero(self.n))

    def nnz(self):
        return len(self.entries)

    def row_dicts(self):
        """Rows as a list of {col: Scalar} dicts (zero rows are empty)."""
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def _by_col_of_row(self):
        # column -> list of (row, value), for fast mat-mat products
        if self._cols_cache is None:
            cache = {}
            for (r, c), v in self.entries.items():
                cache.setdefault(c, []).append((r, v))
            self._cols_cache = cache
        return self._cols_cache

    def transpose(self):
        return SparseMatrix(self.n, self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def __add__(self, other):
        self._check_shape(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            cur = out.get(k)
            s = v if cur is None else cur + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return SparseMatrix(self.n, self.rows, self.cols, out)

    def __sub__(self, other):
        return self + other.scale(Scalar.from_int(self.n, -1))

    def scale(self, scalar):
        if not scalar:
            return SparseMatrix(self.n, self.rows, self.cols)
        return SparseMatrix(self.n, self.rows, self.cols,
                            {k: v * scalar for k, v in self.entries.items()})

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            left_cols = self._by_col_of_row()
            out = {}
            for (k, j), bv in other.entries.items():
                for i, av in left_cols.get(k, ()):
                    key = (i, j)
                    cur = out.get(key)
                    s = av * bv if cur is None else cur + av * bv
                    out[key] = s
            out = {k: v for k, v in out.items() if v}
            return SparseMatrix(self.n, self.rows, other.cols, out)
        return NotImplemented

    def apply(self, vec):
        """Apply to a sparse vector {index: Scalar}; returns the same shape."""
        cols = self._by_col_of_row()
        out = {}
        for j, x in vec.items():
            for i, a in cols.get(j, ()):
                cur = out.get(i)
                s = a * x if cur is None else cur + a * x
                out[i] = s
        return {i: v for i, v in out.items() if v}

    def _check_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def items_sorted(self):
        return sorted(self.entries.items())

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


class RowReducer:
    """Incremental exact row echelon over Q(zeta_n).

    Rows are fed one at a time ({col: Scalar} dicts); the reducer maintains
    normalized pivot rows.  This streams the elimination of an arbitrarily
    tall stacked system while the unknown count stays small.
    """

    def __init__(self, n, cols):
        self.n = n
        self.cols = cols
        self.pivots = {}  # col -> {col: Scalar}, leading coeff 1
        self._rref_done = False

    def add_row(self, row):
        """Reduce a row against current pivots; returns True if rank grew."""
        row = {c: v for c, v in row.items() if v}
        while row:
            hit = None
            for c in row:
                if c in self.pivots and (hit is None or c < hit):
                    hit = c
            if hit is None:
                break
            f = row.pop(hit)
            for c, v in self.pivots[hit].items():
                if c == hit:
                    continue
                cur = row.get(c)
                s = -f * v if cur is None else cur - f * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
        if not row:
            return False
        lead = min(row)
        inv = row[lead].inverse()
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        self._rref_done = False
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def _rref(self):
        if self._rref_done:
            return
        for pc in sorted(self.pivots, reverse=True):
            prow = self.pivots[pc]
            for qc, qrow in self.pivots.items():
                if qc != pc and pc in qrow:
                    f = qrow.pop(pc)
                    for c, v in prow.items():
                        if c == pc:
                            continue
                        cur = qrow.get(c)
                        s = -f * v if cur is None else cur - f * v
                        if s:
                            qrow[c] = s
                        else:
                            qrow.pop(c, None)
        self._rref_done = True

    def nullspace(self):
        """Canonical basis of the solution space, as dense Scalar tuples."""
        self._rref()
        zero = Scalar.zero(self.n)
        one = Scalar.one(self.n)
        free = [c for c in range(self.cols) if c not in self.pivots]
        basis = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for pc, prow in self.pivots.items():
                if f in prow:
                    v[pc] = -prow[f]
            basis.append(tuple(v))
        return basis


def rank(matrix):
    red = RowReducer(matrix.n, matrix.cols)
    for row in matrix.row_dicts():
        if row:
            red.add_row(row)
    return red.rank


def nullspace(matrix):
    red = RowReducer(matrix.n, matrix.cols)
    for row in matrix.row_dicts():
        if row:
            red.add_row(row)
    return red.nullspace()


def solve_unique(matrix, rhs):
    """Solve M x = rhs for the unique solution; raises if singular.

    rhs is a sparse vector {row: Scalar}; returns {col: Scalar}.
    """
    aug = RowReducer(matrix.n, matrix.cols + 1)
    rows = matrix.row_dicts()
    for r, row in enumerate(rows):
        row = dict(row)
        b = rhs.get(r)
        if b:
            row[matrix.cols] = -b
        if row:
            aug.add_row(row)
    aug._rref()
    if matrix.cols in aug.pivots:
        raise ValueError("inconsistent linear system")
    if aug.rank != matrix.cols:
        raise ValueError("singular system, no unique solution")
    out = {}
    for pc, prow in aug.pivots.items():
        v = prow.get(matrix.cols)
        if v:
            out[pc] = -v
    return out
