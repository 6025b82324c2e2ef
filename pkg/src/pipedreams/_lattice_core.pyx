# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: overflowcheck=True
# cython: overflowcheck.fold=True
# cython: cdivision=False

"""Integer-lattice kernels, compiled backend.

Mirrors the hot entry points of ``_lattice_py`` (``HnfAccumulator`` and
``rank_mod_p``) using C ``long long`` arithmetic with Cython overflow
checking.  Any overflow raises ``OverflowError``; callers are expected to
replay the computation on the pure-Python backend, which has no width limit.

Rows are dense internally (one buffer row per pivot); the public API speaks
sparse ``(column, value)`` pairs exactly like the pure backend.
"""

from libc.stdlib cimport calloc, realloc, free
from libc.string cimport memcpy, memset

COMPILED = True

ctypedef long long ll

cdef ll _INPUT_LIMIT = (<ll>1) << 62


cdef int _xgcd(ll a, ll b, ll *pg, ll *px, ll *py) except -1:
    """g = gcd(a, b) = a*x + b*y with g > 0 (a, b not both zero)."""
    cdef ll x0 = 1, x1 = 0, y0 = 0, y1 = 1, q, r, t
    while b != 0:
        q = a // b
        r = a - q * b
        a = b
        b = r
        t = x0 - q * x1
        x0 = x1
        x1 = t
        t = y0 - q * y1
        y0 = y1
        y1 = t
    if a < 0:
        a = 0 - a
        x0 = 0 - x0
        y0 = 0 - y0
    pg[0] = a
    px[0] = x0
    py[0] = y0
    return 0


cdef class HnfAccumulator:
    """Hermite normal form of the lattice spanned by the rows fed in so far."""

    cdef public Py_ssize_t ncols
    cdef Py_ssize_t cap
    cdef Py_ssize_t nrows
    cdef ll *M              # cap rows, full width
    cdef Py_ssize_t *lead   # pivot column of each stored row
    cdef Py_ssize_t *col2row
    cdef ll *r              # insertion scratch
    cdef ll *t1             # combine scratch: new pivot
    cdef ll *t2             # combine scratch: new remainder
    cdef bint canonical

    def __cinit__(self, Py_ssize_t ncols):
        if ncols < 0:
            raise ValueError("ncols must be nonnegative")
        self.ncols = ncols
        self.cap = 0
        self.nrows = 0
        self.M = NULL
        self.lead = NULL
        self.canonical = True
        self.col2row = <Py_ssize_t *> calloc(max(ncols, 1), sizeof(Py_ssize_t))
        self.r = <ll *> calloc(max(ncols, 1), sizeof(ll))
        self.t1 = <ll *> calloc(max(ncols, 1), sizeof(ll))
        self.t2 = <ll *> calloc(max(ncols, 1), sizeof(ll))
        if self.col2row == NULL or self.r == NULL or self.t1 == NULL or self.t2 == NULL:
            raise MemoryError()
        cdef Py_ssize_t j
        for j in range(ncols):
            self.col2row[j] = -1

    def __dealloc__(self):
        free(self.M)
        free(self.lead)
        free(self.col2row)
        free(self.r)
        free(self.t1)
        free(self.t2)

    cdef int _grow(self) except -1:
        cdef Py_ssize_t newcap = 64 if self.cap == 0 else self.cap * 2
        if newcap > self.ncols:
            newcap = self.ncols
        if newcap <= self.cap:
            raise MemoryError("rank exceeded column count")
        cdef ll *m2 = <ll *> realloc(self.M, <size_t> newcap * self.ncols * sizeof(ll))
        if m2 == NULL:
            raise MemoryError()
        self.M = m2
        cdef Py_ssize_t *l2 = <Py_ssize_t *> realloc(self.lead, <size_t> newcap * sizeof(Py_ssize_t))
        if l2 == NULL:
            raise MemoryError()
        self.lead = l2
        self.cap = newcap
        return 0

    cdef int _fill_scratch(self, items, Py_ssize_t *plead) except -1:
        """Load sparse items into self.r; report the leftmost nonzero column."""
        memset(self.r, 0, <size_t> self.ncols * sizeof(ll))
        cdef Py_ssize_t c, lead0 = self.ncols
        cdef ll v
        for item in items:
            c = item[0]
            if c < 0 or c >= self.ncols:
                raise IndexError(f"column {c} out of range for width {self.ncols}")
            v = item[1]
            if v > _INPUT_LIMIT or v < 0 - _INPUT_LIMIT:
                raise OverflowError("entry exceeds the 64-bit kernel's input range")
            self.r[c] = self.r[c] + v
            if c < lead0:
                lead0 = c
        while lead0 < self.ncols and self.r[lead0] == 0:
            lead0 += 1
        plead[0] = lead0
        return 0

    cdef int _axpy(self, ll *dst, ll coef, Py_ssize_t idx, Py_ssize_t start) except -1:
        """dst[start:] += coef * row[idx][start:]"""
        cdef ll *src = self.M + idx * self.ncols
        cdef Py_ssize_t j
        cdef ll v
        for j in range(start, self.ncols):
            v = src[j]
            if v != 0:
                dst[j] = dst[j] + coef * v
        return 0

    cdef int _reduce_at_pivots(self, ll *row, Py_ssize_t start) except -1:
        """Reduce row entries at pivot columns after ``start`` into [0, pivot)."""
        cdef Py_ssize_t j, idx
        cdef ll pv, q
        for j in range(start + 1, self.ncols):
            if row[j] == 0:
                continue
            idx = self.col2row[j]
            if idx < 0:
                continue
            pv = self.M[idx * self.ncols + j]
            if 0 <= row[j] < pv:
                continue
            q = row[j] // pv
            self._axpy(row, 0 - q, idx, j)
        return 0

    def add_row(self, items):
        """Fold one sparse row into the form.  Returns True iff the rank grew."""
        cdef Py_ssize_t c, j, idx
        cdef ll pv, rem, q, g, x, y, a, b, pvj, rvj
        self._fill_scratch(items, &c)
        while c < self.ncols:
            if self.r[c] == 0:
                c += 1
                continue
            idx = self.col2row[c]
            if idx < 0:
                if self.r[c] < 0:
                    for j in range(c, self.ncols):
                        self.r[j] = 0 - self.r[j]
                self._reduce_at_pivots(self.r, c)
                if self.nrows == self.cap:
                    self._grow()
                memcpy(self.M + self.nrows * self.ncols, self.r,
                       <size_t> self.ncols * sizeof(ll))
                self.lead[self.nrows] = c
                self.col2row[c] = self.nrows
                self.nrows += 1
                self.canonical = False
                return True
            pv = self.M[idx * self.ncols + c]
            q = self.r[c] // pv
            rem = self.r[c] - q * pv
            if q != 0:
                self._axpy(self.r, 0 - q, idx, c)
            if rem == 0:
                continue
            _xgcd(pv, rem, &g, &x, &y)
            a = pv // g
            b = rem // g
            for j in range(c, self.ncols):
                pvj = self.M[idx * self.ncols + j]
                rvj = self.r[j]
                self.t1[j] = x * pvj + y * rvj
                self.t2[j] = a * rvj - b * pvj
            self._reduce_at_pivots(self.t1, c)
            memcpy(self.M + idx * self.ncols + c, self.t1 + c,
                   <size_t> (self.ncols - c) * sizeof(ll))
            memcpy(self.r + c, self.t2 + c,
                   <size_t> (self.ncols - c) * sizeof(ll))
            self.canonical = False
        return False

    def canonicalize(self):
        """Reduce all entries above each pivot into [0, pivot)."""
        if self.canonical:
            return
        cdef Py_ssize_t c, idx, jrow
        cdef ll pv, v, q
        for c in range(self.ncols):
            idx = self.col2row[c]
            if idx < 0:
                continue
            pv = self.M[idx * self.ncols + c]
            for jrow in range(self.nrows):
                if jrow == idx or self.lead[jrow] > c:
                    continue
                v = self.M[jrow * self.ncols + c]
                if 0 <= v < pv:
                    continue
                q = v // pv
                self._axpy(self.M + jrow * self.ncols, 0 - q, idx, c)
        self.canonical = True

    @property
    def rank(self):
        return self.nrows

    def pivot_items(self):
        """Sorted ``(column, pivot value)`` pairs."""
        out = []
        cdef Py_ssize_t c, idx
        for c in range(self.ncols):
            idx = self.col2row[c]
            if idx >= 0:
                out.append((c, self.M[idx * self.ncols + c]))
        return out

    def pivot_rows_sparse(self):
        """The current basis rows as sorted sparse tuples, by pivot column."""
        out = []
        cdef Py_ssize_t c, j, idx
        cdef ll v
        for c in range(self.ncols):
            idx = self.col2row[c]
            if idx < 0:
                continue
            row = []
            for j in range(c, self.ncols):
                v = self.M[idx * self.ncols + j]
                if v != 0:
                    row.append((j, v))
            out.append(tuple(row))
        return tuple(out)

    def canonical_rows_sparse(self):
        self.canonicalize()
        return self.pivot_rows_sparse()

    def reduces_to_zero(self, items):
        """Membership test: does the sparse row lie in the accumulated lattice?"""
        cdef Py_ssize_t c, idx
        cdef ll pv, q, rem
        self._fill_scratch(items, &c)
        while c < self.ncols:
            if self.r[c] == 0:
                c += 1
                continue
            idx = self.col2row[c]
            if idx < 0:
                return False
            pv = self.M[idx * self.ncols + c]
            q = self.r[c] // pv
            rem = self.r[c] - q * pv
            if rem != 0:
                return False
            self._axpy(self.r, 0 - q, idx, c)
        return True


def rank_mod_p(rows, Py_ssize_t ncols, p):
    """Rank over F_p of the matrix whose sparse rows are given."""
    cdef ll pp = p
    if pp < 2:
        raise ValueError("modulus must be a prime >= 2")
    if pp > (<ll>1) << 31:
        raise OverflowError("modulus too large for the 64-bit kernel")
    cdef ll *buf = NULL      # claimed unit-pivot rows, dense
    cdef Py_ssize_t cap = 0, nrows = 0
    cdef Py_ssize_t *col2row = <Py_ssize_t *> calloc(max(ncols, 1), sizeof(Py_ssize_t))
    cdef ll *row = <ll *> calloc(max(ncols, 1), sizeof(ll))
    if col2row == NULL or row == NULL:
        free(col2row)
        free(row)
        raise MemoryError()
    cdef Py_ssize_t c, j, idx
    cdef ll v, coef, inv
    cdef ll *m2
    for j in range(ncols):
        col2row[j] = -1
    try:
        for items in rows:
            memset(row, 0, <size_t> ncols * sizeof(ll))
            for item in items:
                c = item[0]
                if c < 0 or c >= ncols:
                    raise IndexError(f"column {c} out of range for width {ncols}")
                v = item[1]
                row[c] = (row[c] + v % pp) % pp
            c = 0
            while c < ncols:
                if row[c] == 0:
                    c += 1
                    continue
                idx = col2row[c]
                if idx < 0:
                    inv = pow(row[c], -1, pp)
                    for j in range(c, ncols):
                        if row[j] != 0:
                            row[j] = (row[j] * inv) % pp
                    if nrows == cap:
                        cap = 64 if cap == 0 else cap * 2
                        if cap > ncols:
                            cap = ncols
                        m2 = <ll *> realloc(buf, <size_t> cap * ncols * sizeof(ll))
                        if m2 == NULL:
                            raise MemoryError()
                        buf = m2
                    memcpy(buf + nrows * ncols, row, <size_t> ncols * sizeof(ll))
                    col2row[c] = nrows
                    nrows += 1
                    break
                coef = row[c]
                for j in range(c, ncols):
                    v = buf[idx * ncols + j]
                    if v != 0:
                        row[j] = (row[j] - coef * v) % pp
            # fully reduced rows are dependent; nothing to do
        return nrows
    finally:
        free(buf)
        free(col2row)
        free(row)
