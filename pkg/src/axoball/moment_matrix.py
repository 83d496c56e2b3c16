"""Moment matrix of the Legendre polynomials, in exact rational arithmetic.

The central object is the matrix of moments

    F[i][j] = integral_{-1}^{1} P_{i-1}(eta) * eta**(j-1) d(eta),

for 1-based indices i, j.  Orthogonality of P_{i-1} against lower-degree
monomials makes F upper triangular, and the parity of the Legendre
polynomials zeroes every entry with i + j odd.  Three companion matrices
share that rarefied triangle:

  * B, the change of basis writing each monomial in Legendre polynomials
    (entries ``beta_entry``),
  * D = F B, diagonal with D_ii = 2/(2i - 1),
  * G = F^{-1} = B D^{-1}, with an explicit entry formula (``g_entry``).

All quantities are Fractions; there is no floating point in this module.
The public API is 1-based to match the usual F_11, G_13, ... convention;
storage is 0-based internally and keeps only the structural triangle.

Entries are always *built* from the closed forms, which are total and
order-independent; the row recurrence and the diagonal/superdiagonal
factorial formulas are independent verification paths, not construction
paths.
"""

from fractions import Fraction
from math import factorial


def f_entry_closed_form(i, j):
    """Moment F_ij as a finite alternating sum.

    The sum comes from expanding P_{i-1} through the Rodrigues formula and
    integrating each monomial.  Total over all i, j >= 1: structural zeros
    (i > j, or i + j odd) are returned as Fraction(0).
    """
    if i < 1 or j < 1:
        raise ValueError("indices are 1-based")
    if i > j or (i + j) % 2:
        return Fraction(0)
    total = Fraction(0)
    for k in range((i - 1) // 2 + 1):
        num = factorial(2 * i - 2 * k - 2)
        den = (
            factorial(k)
            * factorial(i - k - 1)
            * factorial(i - 2 * k - 1)
            * (i - 2 * k - 1 + j)
        )
        term = Fraction(num, den)
        total += -term if k % 2 else term
    return total / Fraction(2) ** (i - 2)


def f_entry_recurrence(i, j):
    """F_ij from the row recurrence

        (i - 1) F_ij = (2i - 3) F_{i-1, j+1} - (i - 2) F_{i-2, j},

    valid for i >= 3, with the two lower-order entries taken from the
    closed form.  Must agree exactly with ``f_entry_closed_form``; this is
    a verification path.  Structural zeros are returned directly.
    """
    if i > j or (i + j) % 2:
        return Fraction(0)
    if i < 3:
        return f_entry_closed_form(i, j)
    upper = f_entry_closed_form(i - 1, j + 1)
    lower = f_entry_closed_form(i - 2, j)
    return ((2 * i - 3) * upper - (i - 2) * lower) / (i - 1)


def f_diagonal(i):
    """Diagonal entry F_ii = 2**(i+1) * i! * (i-1)! / (2i)!."""
    if i < 1:
        raise ValueError("indices are 1-based")
    return Fraction(2 ** (i + 1) * factorial(i) * factorial(i - 1), factorial(2 * i))


def f_second_superdiagonal(i):
    """Second superdiagonal entry F_{i-2, i} = 2**(i-1) * ((i-1)!)**2 / (2i-2)!,
    for i >= 3."""
    if i < 3:
        raise ValueError("second superdiagonal starts at column 3")
    return Fraction(2 ** (i - 1) * factorial(i - 1) ** 2, factorial(2 * i - 2))


def beta_entry(k, i):
    """Coefficient of P_{k-1} in the Legendre expansion of the monomial
    eta**(i-1):

        beta_ki = (-1)**((i-k)/2) (i+k-2)!
                  / (2**(i-1) (k-1)! ((i-k)/2)! ((i+k)/2 - 1)!)

    for k <= i with k + i even; structurally zero otherwise.
    """
    if k < 1 or i < 1:
        raise ValueError("indices are 1-based")
    if k > i or (k + i) % 2:
        return Fraction(0)
    sign = -1 if ((i - k) // 2) % 2 else 1
    num = sign * factorial(i + k - 2)
    den = (
        2 ** (i - 1)
        * factorial(k - 1)
        * factorial((i - k) // 2)
        * factorial((i + k) // 2 - 1)
    )
    return Fraction(num, den)


def d_diagonal(i):
    """Diagonal entry D_ii = 2/(2i - 1) of D = F B (the squared Legendre
    norm on [-1, 1])."""
    if i < 1:
        raise ValueError("indices are 1-based")
    return Fraction(2, 2 * i - 1)


def g_entry(i, j):
    """Entry of the inverse matrix G = F^{-1}:

        G_ij = (-1)**((j-i)/2) (2j-1)(j+i-2)!
               / (2**j (i-1)! ((j-i)/2)! ((j+i)/2 - 1)!)

    for i <= j with i + j even; structurally zero otherwise.
    """
    if i < 1 or j < 1:
        raise ValueError("indices are 1-based")
    if i > j or (i + j) % 2:
        return Fraction(0)
    sign = -1 if ((j - i) // 2) % 2 else 1
    num = sign * (2 * j - 1) * factorial(j + i - 2)
    den = (
        2**j
        * factorial(i - 1)
        * factorial((j - i) // 2)
        * factorial((j + i) // 2 - 1)
    )
    return Fraction(num, den)


def alpha_coefficients(m, count=None):
    """Coefficients expanding the shifted first-row window of F over rows
    delta, delta+2, ..., m+1 (delta = 1 for even m, 2 for odd m):

        alpha_i = (2i - 1)/2 * F_{i, m+1},    i = 1..count.

    Parity-forbidden positions are zero, as are positions i > m + 1 (below
    the diagonal of F).  ``count`` defaults to m + 1.  The vector solves
    B a = e with e = (0, ..., 0, 1) of length m + 1.
    """
    if m < 0:
        raise ValueError("order m must be >= 0")
    if count is None:
        count = m + 1
    return [
        Fraction(2 * i - 1, 2) * f_entry_closed_form(i, m + 1)
        for i in range(1, count + 1)
    ]


class TriangularParityMatrix:
    """Square exact matrix storing only entries with i <= j and i + j even.

    The zero pattern is structural: forbidden positions are never stored,
    and ``entry`` materializes Fraction(0) for them, so the triangularity
    and parity invariants cannot be violated.  Instances are immutable
    after construction and safe to share across threads.

    Build instances through ``build_f``, ``build_b``, ``build_g``,
    ``build_d`` or ``identity``; the constructor is internal.
    """

    __slots__ = ("order", "_data")

    def __init__(self, order, data):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        self._data = data

    @classmethod
    def from_entry_fn(cls, order, fn):
        data = {}
        for i in range(1, order + 1):
            for j in range(i, order + 1, 2):
                data[(i, j)] = fn(i, j)
        return cls(order, data)

    @classmethod
    def identity(cls, order):
        return cls(order, {(i, i): Fraction(1) for i in range(1, order + 1)})

    def entry(self, i, j):
        """Entry at 1-based (i, j); Fraction(0) on the structural zeros."""
        if not (1 <= i <= self.order and 1 <= j <= self.order):
            raise IndexError(f"index ({i}, {j}) outside order {self.order}")
        return self._data.get((i, j), Fraction(0))

    def row(self, i):
        return [self.entry(i, j) for j in range(1, self.order + 1)]

    def rows(self):
        """Dense list-of-lists copy including the structural zeros."""
        return [self.row(i) for i in range(1, self.order + 1)]

    def diagonal(self):
        return [self.entry(i, i) for i in range(1, self.order + 1)]

    def multiply(self, other):
        """Exact product; the triangle-with-parity structure is closed
        under multiplication, so the result is the same kind of matrix."""
        if self.order != other.order:
            raise ValueError("orders differ")
        n = self.order
        data = {}
        for i in range(1, n + 1):
            for j in range(i, n + 1, 2):
                acc = Fraction(0)
                for k in range(i, j + 1, 2):
                    a = self._data.get((i, k))
                    b = other._data.get((k, j))
                    if a and b:
                        acc += a * b
                data[(i, j)] = acc
        return TriangularParityMatrix(n, data)

    def is_identity(self):
        return all(
            self.entry(i, j) == (1 if i == j else 0)
            for i in range(1, self.order + 1)
            for j in range(i, self.order + 1, 2)
        )

    def is_diagonal(self):
        return all(v == 0 for (i, j), v in self._data.items() if i != j)

    def dump(self):
        """Debug dump: one row per line, entries as "p/q" separated by
        single spaces."""
        return "\n".join(" ".join(str(v) for v in self.row(i)) for i in range(1, self.order + 1))

    def __eq__(self, other):
        if not isinstance(other, TriangularParityMatrix):
            return NotImplemented
        if self.order != other.order:
            return False
        keys = set(self._data) | set(other._data)
        return all(
            self._data.get(k, Fraction(0)) == other._data.get(k, Fraction(0))
            for k in keys
        )

    def __hash__(self):
        return hash((self.order, tuple(sorted(self._data.items()))))

    def __repr__(self):
        return f"<TriangularParityMatrix order={self.order}>"


def build_f(order, verify=False):
    """The moment matrix F of the given order, from the closed form.

    With ``verify=True`` every entry is additionally recomputed through the
    row recurrence and the factorial formulas for the diagonal and second
    superdiagonal, and construction fails if any pair disagrees.
    """
    mat = TriangularParityMatrix.from_entry_fn(order, f_entry_closed_form)
    if verify:
        for i in range(1, order + 1):
            for j in range(i, order + 1, 2):
                val = mat.entry(i, j)
                if i >= 3 and val != f_entry_recurrence(i, j):
                    raise ArithmeticError(f"recurrence mismatch at ({i}, {j})")
                if i == j and val != f_diagonal(i):
                    raise ArithmeticError(f"diagonal mismatch at ({i}, {i})")
                if j - i == 2 and val != f_second_superdiagonal(j):
                    raise ArithmeticError(f"superdiagonal mismatch at ({i}, {j})")
    return mat


def build_b(order):
    """The Legendre change-of-basis matrix B (columns expand monomials)."""
    return TriangularParityMatrix.from_entry_fn(order, beta_entry)


def build_d(order):
    """The diagonal matrix D = F B with D_ii = 2/(2i - 1)."""
    return TriangularParityMatrix(
        order, {(i, i): d_diagonal(i) for i in range(1, order + 1)}
    )


def build_g(order, verify=False):
    """The inverse matrix G = F^{-1}.

    G is always built twice, from the explicit entry formula and as
    B D^{-1}, and the two must agree entry by entry.  With ``verify=True``
    the full products F G and G F are also formed and checked against the
    identity (cubic in the order, so left to verification contexts).
    """
    mat = TriangularParityMatrix.from_entry_fn(order, g_entry)
    via_b = TriangularParityMatrix.from_entry_fn(
        order, lambda i, j: beta_entry(i, j) / d_diagonal(j)
    )
    if mat != via_b:
        raise ArithmeticError("inverse entry formula disagrees with B D^-1")
    if verify:
        f = build_f(order)
        if not f.multiply(mat).is_identity() or not mat.multiply(f).is_identity():
            raise ArithmeticError("F G or G F is not the identity")
    return mat
