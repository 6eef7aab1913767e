"""De Moivre polynomials: the coefficient of x^n in (a_1 x + a_2 x^2 + ...)^k.

Two independent evaluation routes are kept side by side.  ``dm`` raises the
input series to the k-th power and extracts a coefficient (the fast path);
``dm_partition_sum`` evaluates the explicit multinomial sum over compositions
(the oracle path).  Tests compare the two.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import InsufficientCoefficients
from .exact import ONE, ZERO, FieldElement, FieldLike, binom_general, fe

DmInput = Sequence[FieldLike]


def _coeffs(a: DmInput, needed: int) -> list[FieldElement]:
    """a_1..a_needed as FieldElements; missing entries are an error."""
    if len(a) < needed:
        raise InsufficientCoefficients(f"need a_1..a_{needed}, got {len(a)}")
    return [fe(v) for v in a[:needed]]


def dm(n: int, k: int, a: DmInput) -> FieldElement:
    """A_{n,k}(a_1, a_2, ...) via truncated series powers."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n < 0 or n < k:
        return ZERO
    if k == 0:
        return ONE if n == 0 else ZERO
    coeffs = _coeffs(a, n - k + 1)
    return _power_row(coeffs, n, k)[n]


def _power_row(coeffs: Sequence[FieldElement], n: int, k: int) -> list[FieldElement]:
    """Coefficients 0..n of (sum a_j x^j)^k, a_j given for 1 <= j <= len."""
    base = [ZERO] * (n + 1)
    for j, c in enumerate(coeffs, start=1):
        if j <= n:
            base[j] = c
    row = [ONE] + [ZERO] * n
    exp = k
    cur = base
    while exp:
        if exp & 1:
            row = _convolve_trunc(row, cur, n)
        exp >>= 1
        if exp:
            cur = _convolve_trunc(cur, cur, n)
    return row


def _convolve_trunc(a: list[FieldElement], b: list[FieldElement], n: int) -> list[FieldElement]:
    out = [ZERO] * (n + 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(min(n - i, len(b) - 1) + 1):
            bj = b[j]
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def dm_table(a: DmInput, n_max: int) -> list[list[FieldElement]]:
    """table[k][n] = A_{n,k} for 0 <= k, n <= n_max; needs a_1..a_n_max.

    The table is built once by repeated convolution and is immutable after
    construction, so it may be shared freely between workers.
    """
    coeffs = _coeffs(a, n_max) if n_max > 0 else []
    base = [ZERO] * (n_max + 1)
    for j, c in enumerate(coeffs, start=1):
        if j <= n_max:
            base[j] = c
    rows = [[ONE] + [ZERO] * n_max]
    for _ in range(n_max):
        rows.append(_convolve_trunc(rows[-1], base, n_max))
    return rows


def _compositions(n: int, k: int, m: int):
    """Yield (j_1..j_m) with sum j_i = k and sum i*j_i = n, lexicographically."""
    def rec(prefix, i, rem_k, rem_n):
        if i > m:
            if rem_k == 0 and rem_n == 0:
                yield tuple(prefix)
            return
        for j in range(rem_k + 1):
            rest_k = rem_k - j
            rest_n = rem_n - i * j
            if rest_n < 0:
                break
            # units left for slots i+1..m weigh between i+1 and m each
            if i < m and (rest_n < rest_k * (i + 1) or rest_n > rest_k * m):
                continue
            if i == m and (rest_k or rest_n):
                continue
            prefix.append(j)
            yield from rec(prefix, i + 1, rest_k, rest_n)
            prefix.pop()
    yield from rec([], 1, k, n)


def dm_partition_sum(n: int, k: int, a: DmInput) -> FieldElement:
    """A_{n,k} as the multinomial sum over compositions; the oracle path."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if n < 0 or n < k:
        return ZERO
    if k == 0:
        return ONE if n == 0 else ZERO
    m = n - k + 1
    coeffs = _coeffs(a, m)
    total = ZERO
    kfact = math.factorial(k)
    for js in _compositions(n, k, m):
        weight = kfact
        for j in js:
            weight //= math.factorial(j)
        term = fe(weight)
        for i, j in enumerate(js):
            if j:
                term = term * coeffs[i] ** j
        total = total + term
    return total


def dm_shift(direction: str, n: int, k: int, a: DmInput) -> FieldElement:
    """Shift laws relating A_{n,k} of a sequence and of its tail.

    remove_first:     A_{n,k}(a_2, a_3, ...) from the full input, via
                      sum_j (-a_1)^(k-j) C(k,j) A_{n+j,j}(a_1, a_2, ...)
    constant_prepend: A_{n,k}(a_1, a_2, ...) via the tail,
                      sum_j a_1^(k-j) C(k,j) A_{n-k,j}(a_2, a_3, ...)
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return ONE if n == 0 else ZERO
    if direction == "remove_first":
        coeffs = _coeffs(a, n + 1)
        a1 = coeffs[0]
        total = ZERO
        for j in range(k + 1):
            term = dm(n + j, j, coeffs)
            if term.is_zero():
                continue
            total = total + ((-a1) ** (k - j)) * math.comb(k, j) * term
        return total
    if direction == "constant_prepend":
        needed = max(1, n - k + 1)
        coeffs = _coeffs(a, needed)
        a1 = coeffs[0]
        tail = coeffs[1:]
        total = ZERO
        for j in range(k + 1):
            term = dm(n - k, j, tail)
            if term.is_zero():
                continue
            total = total + (a1 ** (k - j)) * math.comb(k, j) * term
        return total
    raise ValueError(f"unknown direction {direction!r}")


def dm_determinant(form: str, n: int, t: FieldLike, a: DmInput) -> FieldElement:
    """Determinant of the n x n matrix M_n(t), N_n(t) or O_n(t).

    All three have a_{i-j+1} t at entry (i,j) below and on the diagonal and
    zeros above the superdiagonal.  The superdiagonal is 1 for M and O and
    j on row j for N; O additionally multiplies the first column by its row
    index.  Evaluated by Bareiss-style exact elimination.
    """
    if form not in ("M", "N", "O"):
        raise ValueError(f"unknown form {form!r}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return ONE
    t = fe(t)
    coeffs = _coeffs(a, n)
    mat: list[list[FieldElement]] = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j <= i:
                entry = coeffs[i - j] * t
                if form == "O" and j == 1:
                    entry = entry * i
            elif j == i + 1:
                entry = fe(i) if form == "N" else ONE
            else:
                entry = ZERO
            row.append(entry)
        mat.append(row)
    return _bareiss_det(mat)


def _bareiss_det(mat: list[list[FieldElement]]) -> FieldElement:
    n = len(mat)
    sign = 1
    prev = ONE
    for col in range(n - 1):
        if mat[col][col].is_zero():
            for r in range(col + 1, n):
                if not mat[r][col].is_zero():
                    mat[col], mat[r] = mat[r], mat[col]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = mat[col][col]
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                mat[r][c] = (mat[r][c] * pivot - mat[r][col] * mat[col][c]) / prev
            mat[r][col] = ZERO
        prev = pivot
    det = mat[n - 1][n - 1]
    return det if sign == 1 else -det


def stirling_eval(kind: str, n: int, k: int) -> Fraction:
    """Stirling numbers through their De Moivre evaluations."""
    if n < 0 or k < 0:
        raise ValueError("n, k must be nonnegative")
    if kind == "subset":
        a = [Fraction(1, math.factorial(j)) for j in range(1, max(n - k + 1, 1) + 1)]
    elif kind == "cycle":
        a = [Fraction(1, j) for j in range(1, max(n - k + 1, 1) + 1)]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    value = dm(n, k, [fe(c) for c in a])
    result = value * Fraction(math.factorial(n), math.factorial(k))
    return result.as_rational()
