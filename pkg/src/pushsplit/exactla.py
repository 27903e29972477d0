"""Exact scalars and dense matrices with rank computation over Q and Z/p.

Scalars are plain Python objects: a rational entry is an ``int`` or a
``fractions.Fraction`` (always in lowest terms with positive denominator),
a prime-field entry is an ``int`` residue in ``[0, p)``.  The field is a
run-scoped parameter: rational matrices carry ``modulus=None``, prime-field
matrices carry the prime.

Rank over Q uses fraction-free (Bareiss) elimination, so intermediate
values stay integral and never grow past minor size.  Rank over Z/p uses
vectorized Gaussian elimination; it is a lower bound for the rational rank
of an integer matrix, with equality for all primes outside a finite bad
set.  ``rank_verified`` packages the two-prime default mode together with
the optional exact confirmation pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Two fixed primes just above 2**20.  A silent rank drop requires the same
# minor to vanish modulo both, which the splitting-level cross-checks would
# additionally have to miss.
DEFAULT_PRIMES = (1048583, 1048589)

ExactScalar = int | Fraction

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def binomial(a: int, b: int) -> int:
    """C(a, b) when 0 <= b <= a, else 0."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix; ``entries`` is row-major of length rows*cols.

    ``modulus=None`` means rational mode; otherwise entries are residues
    modulo the given prime.  Immutable after construction.
    """

    rows: int
    cols: int
    entries: tuple
    modulus: int | None = None

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries length {len(self.entries)} != {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows_list, modulus: int | None = None,
                  cols: int | None = None) -> "ExactMatrix":
        rows = len(rows_list)
        if rows:
            if cols is not None and cols != len(rows_list[0]):
                raise ValueError("cols does not match row length")
            cols = len(rows_list[0])
        else:
            cols = cols or 0
        flat = []
        for row in rows_list:
            if len(row) != cols:
                raise ValueError("ragged rows")
            flat.extend(row)
        if modulus is not None:
            flat = [int(x) % modulus for x in flat]
        return cls(rows, cols, tuple(flat), modulus)

    @classmethod
    def from_coo(cls, rows: int, cols: int, triples, modulus: int | None = None) -> "ExactMatrix":
        """Build from (row, col, value) triples; repeated positions add."""
        flat = [0] * (rows * cols)
        for r, c, v in triples:
            flat[r * cols + c] += v
        if modulus is not None:
            flat = [x % modulus for x in flat]
        return cls(rows, cols, tuple(flat), modulus)

    def entry(self, r: int, c: int):
        return self.entries[r * self.cols + c]

    def is_integer(self) -> bool:
        return all(isinstance(x, int) or x.denominator == 1 for x in self.entries)

    def transpose(self) -> "ExactMatrix":
        flat = [self.entries[r * self.cols + c]
                for c in range(self.cols) for r in range(self.rows)]
        return ExactMatrix(self.cols, self.rows, tuple(flat), self.modulus)


def rank(m: ExactMatrix) -> int:
    """Rank over the matrix's ambient field (Q, or Z/p when modulus set)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.modulus is not None:
        return rank_mod(m, m.modulus)
    return rank_rational(m)


def rank_rational(m: ExactMatrix) -> int:
    """True rank over Q by fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _rank_bareiss(_integer_rows(m))


def rank_mod(m: ExactMatrix, p: int) -> int:
    """Rank over Z/p; for integer matrices this is <= the rational rank."""
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if m.rows == 0 or m.cols == 0:
        return 0
    if p < (1 << 31):
        return _rank_mod_numpy(_to_numpy_mod(m, p), p)
    return _rank_mod_python(_residue_rows(m, p), p)


@dataclass(frozen=True)
class RankResult:
    """Outcome of the default modular mode plus optional exact pass.

    ``modular`` maps prime -> rank.  The modular value is a lower bound
    for the rational rank; ``value`` is the exact rank when it was
    computed and the best modular lower bound otherwise.
    """

    modular: tuple[tuple[int, int], ...]
    rational: int | None = None

    @property
    def modular_max(self) -> int:
        return max((r for _, r in self.modular), default=0)

    @property
    def agreed(self) -> bool:
        ranks = {r for _, r in self.modular}
        return len(ranks) <= 1

    @property
    def value(self) -> int:
        return self.rational if self.rational is not None else self.modular_max


def rank_verified(m: ExactMatrix, primes=DEFAULT_PRIMES, exact: bool = False) -> RankResult:
    """Rank modulo each prime, with an optional rational confirmation pass.

    Requires integer entries.  Returns all modular ranks (their maximum is
    a certified lower bound for the rank over Q) and the exact rational
    rank when ``exact`` is set or when the primes disagree.
    """
    if not m.is_integer():
        raise ValueError("rank_verified requires integer entries")
    if not primes:
        raise ValueError("at least one prime required")
    modular = tuple((p, rank_mod(m, p)) for p in primes)
    result = RankResult(modular=modular)
    if exact or not result.agreed:
        return RankResult(modular=modular, rational=rank_rational(m))
    return result


def rank_with_target(m: ExactMatrix, target: int, primes=DEFAULT_PRIMES,
                     exact: bool = False) -> RankResult:
    """Like rank_verified, but stops early once a modular rank hits ``target``.

    A modular rank equal to ``target`` already certifies the rational rank
    when ``target`` is an upper bound (e.g. full row rank), since modular
    rank never exceeds rational rank.
    """
    if not m.is_integer():
        raise ValueError("rank_with_target requires integer entries")
    modular = []
    for p in primes:
        r = rank_mod(m, p)
        modular.append((p, r))
        if r >= target:
            return RankResult(modular=tuple(modular))
    rational = rank_rational(m) if exact else None
    return RankResult(modular=tuple(modular), rational=rational)


# ---------------------------------------------------------------------------
# internals


def _integer_rows(m: ExactMatrix) -> list[list[int]]:
    """Rows as integers; Fraction rows are scaled by their denominator lcm."""
    rows = []
    for r in range(m.rows):
        row = list(m.entries[r * m.cols:(r + 1) * m.cols])
        if any(isinstance(x, Fraction) for x in row):
            scale = math.lcm(*(x.denominator if isinstance(x, Fraction) else 1
                               for x in row))
            row = [int(x * scale) for x in row]
        rows.append([int(x) for x in row])
    return rows


def _residue_rows(m: ExactMatrix, p: int) -> list[list[int]]:
    rows = []
    for r in range(m.rows):
        row = []
        for x in m.entries[r * m.cols:(r + 1) * m.cols]:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = x.denominator % p
                if den == 0:
                    raise ValueError(f"prime {p} divides a denominator")
                row.append(x.numerator % p * pow(den, p - 2, p) % p)
            else:
                row.append(int(x) % p)
        rows.append(row)
    return rows


def _to_numpy_mod(m: ExactMatrix, p: int) -> np.ndarray:
    if m.is_integer():
        a = np.array(m.entries, dtype=np.int64).reshape(m.rows, m.cols)
        return np.mod(a, p)
    return np.array(_residue_rows(m, p), dtype=np.int64)


def _rank_mod_numpy(a: np.ndarray, p: int) -> int:
    # entries stay in [0, p); products bounded by p**2 < 2**62, safe in int64
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], c:] = a[[i, r], c:]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = r + 1 + nzb
            a[idx, c:] = (a[idx, c:] - below[nzb, None] * a[r, c:]) % p
        r += 1
    return r


def _rank_mod_python(rows: list[list[int]], p: int) -> int:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c] % p, p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(r + 1, nrows):
            f = rows[i][c] % p
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination; divisions are exact (entries are minors)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, nrows):
            row_i, row_r = rows[i], rows[r]
            f = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (pivot * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
    return r
