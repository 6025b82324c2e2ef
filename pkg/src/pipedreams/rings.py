"""Exact arithmetic in the truncated ring S_{n,k} = Z[x_1..x_n]/(x_i^k) and
machine verification of the quotient-ring statements: the rank and freeness
of R_{n,k}, the equality of the elementary-symmetric ideal with the ideal cut
out by the special Grothendieck classes, and the fact that the Grothendieck
(and Schubert) classes of Fubini words form a Z-basis of the quotient.

Everything reduces to integer-lattice linear algebra on the monomial basis of
S_{n,k}: monomials are the k^n exponent vectors in [0, k-1]^n, ordered
lexicographically, and ideals become row lattices via generator-times-monomial
products.  Hermite normal forms come from the kernel selected in ``_backend``
(compiled 64-bit with overflow detection, or pure Python); any overflow is
replayed on the pure kernel, so results are always exact.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ._backend import lattice_impl, lattice_pure
from .combinat import Word, enumerate_fubini, fubini_count
from .poly import (Poly, elementary_symmetric, grassmannian_cycle,
                   grothendieck, grothendieck_of_word, schubert_of_word)

#: Largest monomial-basis size the verification routines will attempt.
DESK_CEILING = 5000


class DeskScaleError(ValueError):
    """The requested (n, k) exceeds the documented desk-scale ceiling."""


class BasisFailure(RuntimeError):
    """A claimed Z-basis failed verification; carries the offending report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def _require_shape(n, k):
    if not (isinstance(n, int) and isinstance(k, int) and 1 <= k <= n):
        raise ValueError(f"need integers 1 <= k <= n, got (n, k) = ({n}, {k})")


def _require_desk_scale(n, k):
    _require_shape(n, k)
    if k ** n > DESK_CEILING:
        raise DeskScaleError(
            f"monomial basis size k^n = {k ** n} exceeds the desk-scale "
            f"ceiling of {DESK_CEILING}; refusing (n, k) = ({n}, {k})")


# -- the ring S_{n,k} ----------------------------------------------------------


@lru_cache(maxsize=None)
def snk_ring(n, k):
    if not (isinstance(n, int) and isinstance(k, int) and n >= 1 and k >= 1):
        raise ValueError("need integers n >= 1, k >= 1")
    return SnkRing(n, k)


class SnkRing:
    """The monomial basis of S_{n,k}: exponent vectors in [0,k-1]^n, lex order."""

    __slots__ = ("n", "k", "dim", "monomials", "index")

    def __init__(self, n, k):
        self.n = n
        self.k = k
        self.dim = k ** n
        self.monomials = list(itertools.product(range(k), repeat=n))
        self.index = {m: i for i, m in enumerate(self.monomials)}

    def zero(self):
        return SnkElement(self, [0] * self.dim)

    def one(self):
        coeffs = [0] * self.dim
        coeffs[self.index[(0,) * self.n]] = 1
        return SnkElement(self, coeffs)

    def variable(self, i):
        """The image of x_i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"variable x{i} out of range for n={self.n}")
        if self.k == 1:
            return self.zero()
        exp = [0] * self.n
        exp[i - 1] = 1
        coeffs = [0] * self.dim
        coeffs[self.index[tuple(exp)]] = 1
        return SnkElement(self, coeffs)

    def __repr__(self):
        return f"SnkRing(n={self.n}, k={self.k})"


class SnkElement:
    """An element of S_{n,k} as a dense integer coefficient vector."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        if len(coeffs) != ring.dim:
            raise ValueError("coefficient vector has wrong length")
        self.ring = ring
        self.coeffs = list(coeffs)

    def items(self):
        """Sparse view: sorted (monomial index, nonzero coefficient) pairs."""
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, SnkElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        return SnkElement(self.ring,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._coerce(other)
        return SnkElement(self.ring,
                          [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return SnkElement(self.ring, [-a for a in self.coeffs])

    def _coerce(self, other):
        if isinstance(other, SnkElement):
            if other.ring is not self.ring:
                raise ValueError("elements live in different rings")
            return other
        if isinstance(other, int):
            out = self.ring.zero().coeffs
            out[self.ring.index[(0,) * self.ring.n]] = other
            return SnkElement(self.ring, out)
        raise TypeError(f"cannot coerce {type(other).__name__} into S_nk")

    def __mul__(self, other):
        if isinstance(other, int):
            return SnkElement(self.ring, [other * a for a in self.coeffs])
        other = self._coerce(other)
        ring = self.ring
        k = ring.k
        out = [0] * ring.dim
        mono = ring.monomials
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ei = mono[i]
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                s = tuple(p + q for p, q in zip(ei, mono[j]))
                if any(e >= k for e in s):
                    continue
                out[ring.index[s]] += a * b
        return SnkElement(ring, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def to_poly(self):
        """Back to a Poly in x_1..x_n (exact section of the projection)."""
        terms = {m: c for m, c in zip(self.ring.monomials, self.coeffs) if c}
        return Poly(self.ring.n, 0, terms)

    def __repr__(self):
        nnz = sum(1 for c in self.coeffs if c)
        return f"<SnkElement {self.ring!r}, {nnz} terms>"


def project_to_snk(f, n, k):
    """Project a Poly in x_1..x_n onto S_{n,k}: kill monomials with an
    exponent >= k.  The y-alphabet must be unused.
    """
    ring = snk_ring(n, k)
    coeffs = [0] * ring.dim
    for exp, coeff in f.terms.items():
        xs, ys = exp[:f.nx], exp[f.nx:]
        if any(ys):
            raise ValueError("polynomial must not involve the y-alphabet")
        if any(xs[n:]):
            bad = max(i + 1 for i, e in enumerate(xs) if e and i >= n)
            raise ValueError(f"variable x{bad} out of range for n={n}")
        key = tuple(xs[:n]) + (0,) * (n - min(n, len(xs)))
        if any(e >= k for e in key):
            continue
        coeffs[ring.index[key]] += coeff
    return SnkElement(ring, coeffs)


# -- integer lattices ----------------------------------------------------------


def _feed(acc, rows):
    for row in rows:
        acc.add_row(row)
    return acc


class IntegerLattice:
    """A sublattice of Z^ncols held in row Hermite normal form.

    Built from sparse rows; the originals are retained so that a 64-bit
    overflow in the compiled kernel can be replayed exactly on the pure one.
    """

    __slots__ = ("ncols", "_rows", "_acc", "_is_pure")

    def __init__(self, ncols, sparse_rows):
        self.ncols = int(ncols)
        self._rows = tuple(tuple(r) for r in sparse_rows)
        self._acc = None
        self._is_pure = False
        self._build()

    def _build(self):
        if lattice_impl is not lattice_pure:
            try:
                self._acc = _feed(lattice_impl.HnfAccumulator(self.ncols), self._rows)
                return
            except OverflowError:
                self._acc = None
        self._acc = _feed(lattice_pure.HnfAccumulator(self.ncols), self._rows)
        self._is_pure = True

    def _replay_pure(self):
        if not self._is_pure:
            self._acc = _feed(lattice_pure.HnfAccumulator(self.ncols), self._rows)
            self._is_pure = True
        return self._acc

    @classmethod
    def from_dense_rows(cls, rows):
        rows = [list(map(int, r)) for r in rows]
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("rows must have equal width")
        ncols = widths.pop() if widths else 0
        sparse = [tuple((j, v) for j, v in enumerate(r) if v) for r in rows]
        return cls(ncols, sparse)

    @classmethod
    def from_elements(cls, elements):
        """Lattice spanned by SnkElement coefficient vectors."""
        elements = list(elements)
        if not elements:
            raise ValueError("need at least one element to infer the ring")
        ncols = elements[0].ring.dim
        return cls(ncols, [tuple(e.items()) for e in elements])

    # -- queries ----------------------------------------------------------

    @property
    def kernel_name(self):
        """Which kernel currently holds the rows: "pure" or "compiled"."""
        return "pure" if self._is_pure else "compiled"

    @property
    def rank(self):
        return self._acc.rank

    def pivot_items(self):
        return self._acc.pivot_items()

    def pivot_columns(self):
        return [c for c, _ in self.pivot_items()]

    def pivot_values(self):
        return [v for _, v in self.pivot_items()]

    def _pivot_rows(self):
        return self._acc.pivot_rows_sparse()

    def canonical_rows(self):
        """Canonical sparse HNF rows, sorted by pivot column."""
        try:
            return self._acc.canonical_rows_sparse()
        except OverflowError:
            # the failed canonicalization may have corrupted the compiled
            # accumulator's rows, so rebuild from the originals
            return self._replay_pure().canonical_rows_sparse()

    def dense_hnf(self):
        """Canonical HNF as a dense list of rows (desk scale only)."""
        rows = self.canonical_rows()
        out = []
        for r in rows:
            row = [0] * self.ncols
            for c, v in r:
                row[c] = v
            out.append(row)
        return out

    def contains_row(self, items):
        items = tuple(items)
        try:
            return self._acc.reduces_to_zero(items)
        except OverflowError:
            return self._replay_pure().reduces_to_zero(items)

    def contains(self, element):
        return self.contains_row(element.items())

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        if self.ncols != other.ncols:
            return False
        # pivot columns and values are lattice invariants: cheap reject
        if self.pivot_items() != other.pivot_items():
            return False
        return (all(other.contains_row(r) for r in self._pivot_rows())
                and all(self.contains_row(r) for r in other._pivot_rows()))

    __hash__ = None

    def snf_invariants(self):
        """Smith invariant factors d1 | d2 | ... (nonzero ones only)."""
        piv = self.pivot_values()
        if not piv:
            return ()
        if all(v == 1 for v in piv):
            return (1,) * len(piv)
        if len(piv) * self.ncols <= 400_000:
            return tuple(lattice_pure.snf_invariants_dense(self.dense_hnf()))
        raise RuntimeError(
            "exact SNF is not feasible at this size; pivot values "
            f"{sorted(set(piv))} indicate possible torsion")

    def is_torsion_free(self):
        """Is Z^ncols / lattice free?  (All invariant factors 1.)"""
        piv = self.pivot_values()
        if all(v == 1 for v in piv):
            return True
        primes = set()
        for v in piv:
            if v != 1:
                f = _factorize(v)
                if f is None:
                    return all(d == 1 for d in self.snf_invariants())
                primes.update(f)
        return all(self._rank_mod_p(p) == self.rank for p in sorted(primes))

    def _rank_mod_p(self, p):
        rows = self._pivot_rows()
        if lattice_impl is not lattice_pure:
            try:
                return lattice_impl.rank_mod_p(rows, self.ncols, p)
            except OverflowError:
                pass
        return lattice_pure.rank_mod_p(rows, self.ncols, p)

    def to_text(self):
        """Plain integer text format: 'rank ncols' header, then dense rows."""
        rows = self.dense_hnf()
        lines = [f"{len(rows)} {self.ncols}"]
        lines.extend(" ".join(str(v) for v in row) for row in rows)
        return "\n".join(lines) + "\n"

    def __repr__(self):
        kind = "pure" if self._is_pure else "compiled"
        return (f"<IntegerLattice rank {self.rank} in Z^{self.ncols} "
                f"({kind} kernel)>")


def _factorize(v, bound=10 ** 6):
    """Prime factors of v, or None if a cofactor above the bound remains."""
    v = abs(v)
    out = set()
    for p in itertools.chain([2], range(3, bound, 2)):
        if p * p > v:
            break
        while v % p == 0:
            out.add(p)
            v //= p
    if v > 1:
        if v >= bound * bound:
            return None
        out.add(v)
    return out


def hnf(rows):
    """Hermite normal form of a list of dense integer rows."""
    return IntegerLattice.from_dense_rows(rows)


def snf_invariants(lattice):
    """Smith invariant factors of an IntegerLattice."""
    return lattice.snf_invariants()


# -- ideals and classes in S_{n,k} ----------------------------------------------


def elementary_ideal_generators(n, k):
    """Images in S_{n,k} of e_{n-k+1}, ..., e_n (ascending degree)."""
    _require_shape(n, k)
    return [project_to_snk(elementary_symmetric(j, n), n, k)
            for j in range(n - k + 1, n + 1)]


def grothendieck_ideal_generators(n, k):
    """Images in S_{n,k} of the special Grothendieck classes.

    One generator per missing letter i in [k]: the Grothendieck polynomial of
    the cycle (1, .., i-1, i+1, .., n+1, i) in S_{n+1}, whose lowest term is
    e_{n+1-i}(x_1..x_n).  Together their lowest terms sweep e_{n-k+1}, .., e_n.
    """
    _require_shape(n, k)
    out = []
    for i in range(1, k + 1):
        v = grassmannian_cycle(i, n + 1)
        g = grothendieck(v).restrict_arity(n)
        out.append(project_to_snk(g, n, k))
    return out


def special_nonfubini_word(i, n, k):
    """The non-Fubini word missing the letter i whose Grothendieck polynomial
    is the i-th special ideal generator: 1, 2, .., i-1, i+1, .., k padded to
    length n with copies of its last letter.
    """
    _require_shape(n, k)
    if k == 1:
        raise ValueError("every word over a one-letter alphabet is Fubini")
    if not 1 <= i <= k:
        raise ValueError(f"missing letter must lie in [k]=[{k}]")
    prefix = [j for j in range(1, k + 1) if j != i]
    return Word(prefix + [prefix[-1]] * (n - k + 1), k=k)


def k0_class_of_word(word):
    """The K-theory class of a word: its Grothendieck polynomial in S_{n,k}."""
    word = word if isinstance(word, Word) else Word(word)
    return project_to_snk(grothendieck_of_word(word), word.n, word.k)


def chow_class_of_word(word):
    """The Chow/cohomology class of a word: its Schubert polynomial in S_{n,k}."""
    word = word if isinstance(word, Word) else Word(word)
    return project_to_snk(schubert_of_word(word), word.n, word.k)


def coinvariant_ideal_lattice(n, k, generators):
    """The ideal (generators) in S_{n,k} as a sublattice of Z^{k^n}: spanned
    by every monomial multiple of every generator.
    """
    _require_desk_scale(n, k)
    ring = snk_ring(n, k)
    rows = set()
    for g in generators:
        if g.ring is not ring:
            raise ValueError("generator does not live in S_{%d,%d}" % (n, k))
        gitems = [(ring.monomials[i], c) for i, c in g.items()]
        if not gitems:
            continue
        for m in ring.monomials:
            row = []
            for exp, coeff in gitems:
                s = tuple(a + b for a, b in zip(exp, m))
                if any(e >= k for e in s):
                    continue
                row.append((ring.index[s], coeff))
            if row:
                row.sort()
                rows.add(tuple(row))
    return IntegerLattice(ring.dim, sorted(rows))


def rnk_rank(n, k):
    """Rank of R_{n,k} = S_{n,k}/(e_{n-k+1..n}) plus a freeness report."""
    _require_desk_scale(n, k)
    ideal = coinvariant_ideal_lattice(n, k, elementary_ideal_generators(n, k))
    rank = k ** n - ideal.rank
    report = {
        "n": n,
        "k": k,
        "rank": rank,
        "expected": fubini_count(n, k),
        "ideal_rank": ideal.rank,
        "torsion_free": ideal.is_torsion_free(),
        "nontrivial_pivots": sorted({v for v in ideal.pivot_values() if v != 1}),
    }
    return rank, report


def ideals_equal(n, k, gens1, gens2):
    """Do two generator lists cut out the same ideal lattice in S_{n,k}?"""
    _require_desk_scale(n, k)
    return (coinvariant_ideal_lattice(n, k, gens1)
            == coinvariant_ideal_lattice(n, k, gens2))


# -- basis verification ----------------------------------------------------------


def _basis_check(ideal, classes, dim, expected):
    """Stack class rows on the ideal and test that they span Z^dim freely."""
    class_rows = sorted((tuple(e.items()) for e in classes),
                        key=lambda r: (r[0][0] if r else dim, len(r)))
    stacked = IntegerLattice(dim, ideal._pivot_rows() + tuple(class_rows))
    offending = next((v for v in stacked.pivot_values() if v != 1), None)
    return {
        "stacked_rank": stacked.rank,
        "full_rank": stacked.rank == dim,
        "unimodular": offending is None,
        "offending_invariant": offending,
        "count": len(class_rows),
        "expected": expected,
        "basis": (stacked.rank == dim and offending is None
                  and len(class_rows) == expected
                  and ideal.rank + expected == dim),
    }


def verify_grothendieck_basis(n, k):
    """Check that the Fubini Grothendieck classes form a Z-basis of
    S_{n,k}/(e_{n-k+1..n}), and likewise the Fubini Schubert classes.

    Returns a report dict; raises BasisFailure if either check fails.
    """
    _require_desk_scale(n, k)
    ideal = coinvariant_ideal_lattice(n, k, elementary_ideal_generators(n, k))
    words = [Word(u, k=k) for u in enumerate_fubini(n, k)]
    expected = fubini_count(n, k)
    dim = k ** n
    report = {
        "n": n,
        "k": k,
        "expected": expected,
        "ideal_rank": ideal.rank,
        "quotient_rank": dim - ideal.rank,
        "torsion_free": ideal.is_torsion_free(),
        "grothendieck": _basis_check(
            ideal, (k0_class_of_word(w) for w in words), dim, expected),
        "schubert": _basis_check(
            ideal, (chow_class_of_word(w) for w in words), dim, expected),
    }
    report["basis"] = (report["torsion_free"]
                       and report["quotient_rank"] == expected
                       and report["grothendieck"]["basis"]
                       and report["schubert"]["basis"])
    if not report["basis"]:
        bad = (report["grothendieck"]["offending_invariant"]
               or report["schubert"]["offending_invariant"])
        raise BasisFailure(
            f"basis verification failed at (n, k) = ({n}, {k}); "
            f"offending invariant: {bad!r}", report)
    return report


def verify_rings(n, k):
    """The full ring-verification bundle for one (n, k); JSON-friendly."""
    _require_desk_scale(n, k)
    rank, free_report = rnk_rank(n, k)
    equal = ideals_equal(n, k, elementary_ideal_generators(n, k),
                         grothendieck_ideal_generators(n, k))
    try:
        basis_report = verify_grothendieck_basis(n, k)
        basis_ok = True
    except BasisFailure as exc:
        basis_report = exc.report
        basis_ok = False
    report = {
        "n": n,
        "k": k,
        "rank": rank,
        "expected": free_report["expected"],
        "torsion_free": free_report["torsion_free"],
        "ideal_equal": equal,
        "grothendieck_basis": basis_ok and basis_report["grothendieck"]["basis"],
        "schubert_basis": basis_ok and basis_report["schubert"]["basis"],
    }
    report["ok"] = (report["rank"] == report["expected"]
                    and report["torsion_free"] and report["ideal_equal"]
                    and report["grothendieck_basis"] and report["schubert_basis"])
    return report


def desk_scale_pairs(ceiling=DESK_CEILING, n_max=12):
    """All (n, k) with 1 <= k <= n <= n_max and k^n <= ceiling.

    The n_max cap exists because the k = 1 column is otherwise unbounded
    (1^n = 1 for every n); for k >= 2 the ceiling itself forces n <= 12.
    """
    return [(n, k)
            for n in range(1, n_max + 1)
            for k in range(1, n + 1)
            if k ** n <= ceiling]
