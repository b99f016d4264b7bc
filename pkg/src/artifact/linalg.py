"""Exact rational linear algebra helpers.

Two consumers with different scale:

* Subfield bookkeeping works on tiny matrices (dimension of the ambient
  field), where plain Fraction reduced row echelon is the clearest tool.
* The brute-force filtration oracle feeds thousands of rows; those are cleared
  to integers once and reduced fraction-free (cross-multiplication plus
  content stripping), which keeps the arithmetic in machine/big integers.
"""

from fractions import Fraction
from math import gcd

from .errors import SingularMatrix


def rref(rows):
    """Reduced row echelon form over Fraction.

    Takes an iterable of rows (sequences of Fraction-coercible values) and
    returns (basis_rows, pivot_cols) with pivot entries normalized to 1 and
    cleared above and below. Zero rows are dropped.
    """
    basis = []
    pivots = []
    for row in rows:
        row = [Fraction(x) for x in row]
        for piv, col in zip(basis, pivots):
            if row[col]:
                f = row[col]
                row = [a - f * b for a, b in zip(row, piv)]
        lead = next((j for j, a in enumerate(row) if a), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [a / inv for a in row]
        for i, (piv, col) in enumerate(zip(basis, pivots)):
            if piv[lead]:
                f = piv[lead]
                basis[i] = [a - f * b for a, b in zip(piv, row)]
        basis.append(row)
        pivots.append(lead)
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [basis[i] for i in order], [pivots[i] for i in order]


def reduce_against(row, basis, pivots):
    """Reduce a Fraction row against an rref basis; returns the remainder."""
    row = list(row)
    for piv, col in zip(basis, pivots):
        if row[col]:
            f = row[col]
            row = [a - f * b for a, b in zip(row, piv)]
    return row


def _content(row):
    g = 0
    for a in row:
        if a:
            g = gcd(g, abs(a))
            if g == 1:
                return 1
    return g


def _to_int_row(row):
    """Clear a row of Fractions to a primitive integer row."""
    denom = 1
    for a in row:
        if a.denominator != 1:
            denom = denom * a.denominator // gcd(denom, a.denominator)
    ints = [int(a * denom) for a in row]
    g = _content(ints)
    if g > 1:
        ints = [a // g for a in ints]
    return ints


class IntRowSpace:
    """Incremental row space over the rationals, held as primitive int rows.

    add() reduces the incoming row against the stored pivots by
    cross-multiplication (never leaving the integers) and reports whether the
    row enlarged the span. rank is the number of stored pivot rows.
    """

    def __init__(self, width):
        self.width = width
        self.rows = []      # pivot rows, primitive integers
        self.pivcols = []   # pivot column of each row, increasing not required

    @property
    def rank(self):
        return len(self.rows)

    def add(self, row):
        """row: sequence of Fraction or int. Returns True on rank increase."""
        if any(isinstance(a, Fraction) and a.denominator != 1 for a in row):
            work = _to_int_row([Fraction(a) for a in row])
        else:
            work = [int(a) for a in row]
            g = _content(work)
            if g > 1:
                work = [a // g for a in work]
        for piv, col in zip(self.rows, self.pivcols):
            lead = work[col]
            if lead:
                pl = piv[col]
                work = [pl * a - lead * b for a, b in zip(work, piv)]
                g = _content(work)
                if g > 1:
                    work = [a // g for a in work]
        lead = next((j for j, a in enumerate(work) if a), None)
        if lead is None:
            return False
        self.rows.append(work)
        self.pivcols.append(lead)
        return True


def _sparse_content(entries):
    g = 0
    for a in entries.values():
        g = gcd(g, abs(a))
        if g == 1:
            return 1
    return g


class SparseRowSpace:
    """Incremental row space held as sparse primitive integer rows.

    Rows come in as {column: value} dicts with Fraction or int values and
    orderable column keys; they are cleared to primitive integers and
    reduced fraction-free against the stored pivot rows. add() reports
    whether the row enlarged the span. The filtration oracle uses this with
    monomial tuples as columns, so no global width is ever fixed.
    """

    def __init__(self):
        self.rows = []      # primitive integer dicts
        self.pivcols = []   # chosen pivot column per row

    @property
    def rank(self):
        return len(self.rows)

    def add(self, row):
        """row: {column: Fraction | int}. Returns True on rank increase."""
        denom = 1
        cleaned = {}
        for col, val in row.items():
            f = Fraction(val)
            if f:
                cleaned[col] = f
                denom = denom * f.denominator // gcd(denom, f.denominator)
        work = {c: int(v * denom) for c, v in cleaned.items()}
        g = _sparse_content(work)
        if g > 1:
            work = {c: v // g for c, v in work.items()}
        for piv, col in zip(self.rows, self.pivcols):
            lead = work.get(col)
            if lead:
                pl = piv[col]
                merged = {c: pl * v for c, v in work.items()}
                for c, v in piv.items():
                    merged[c] = merged.get(c, 0) - lead * v
                work = {c: v for c, v in merged.items() if v}
                g = _sparse_content(work)
                if g > 1:
                    work = {c: v // g for c, v in work.items()}
        if not work:
            return False
        self.rows.append(work)
        self.pivcols.append(min(work))
        return True


def invert(matrix):
    """Exact inverse of a square rational matrix via Gauss-Jordan.

    Raises SingularMatrix when no inverse exists.
    """
    n = len(matrix)
    aug = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [a / inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def determinant(matrix):
    """Exact determinant over Fraction (fraction elimination)."""
    n = len(matrix)
    work = [[Fraction(a) for a in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        inv = work[col][col]
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / inv
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return det


def is_negative_definite(matrix):
    """Leading principal minors alternate in sign starting negative."""
    n = len(matrix)
    for k in range(1, n + 1):
        minor = [row[:k] for row in matrix[:k]]
        d = determinant(minor)
        if (-1) ** k * d <= 0:
            return False
    return True
