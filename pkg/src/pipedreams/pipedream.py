"""Classical and K-theoretic pipe dreams on a staircase.

A pipe dream is a set of crosses inside the staircase {(r, c) : r + c <= N}
(1-indexed, rows growing downward).  Cells without a cross are elbows.  The
permutation of a pipe dream is the 0-Hecke (Demazure) product of its reading
word: rows top to bottom, right to left within a row, a cross at (r, c)
contributing the simple transposition s_{r+c-1}.  A pipe dream is *reduced*
when its cross count equals the length of its permutation.

Word pipe dreams are the restriction of this picture to an n x k rectangle,
with rows relabeled through the associated permutation of the word.
"""

from __future__ import annotations

import json

from .combinat import Permutation, Word
from .poly import Poly


class RectangularityViolation(AssertionError):
    """A pipe dream of a standardized word leaves the n x k rectangle."""


class PipeDream:
    """An immutable set of crosses in the staircase of size N."""

    __slots__ = ("crosses", "N")

    def __init__(self, crosses, N):
        crosses = frozenset((int(r), int(c)) for r, c in crosses)
        for r, c in crosses:
            if r < 1 or c < 1 or r + c > N:
                raise ValueError("cross (%d,%d) outside staircase of size %d"
                                 % (r, c, N))
        object.__setattr__(self, "crosses", crosses)
        object.__setattr__(self, "N", int(N))

    def __setattr__(self, *a):
        raise AttributeError("PipeDream is immutable")

    def __eq__(self, other):
        if isinstance(other, PipeDream):
            return self.crosses == other.crosses and self.N == other.N
        return NotImplemented

    def __hash__(self):
        return hash((self.crosses, self.N))

    def __len__(self):
        return len(self.crosses)

    def sorted_crosses(self):
        return sorted(self.crosses)

    def __repr__(self):
        return "PipeDream(%r, N=%d)" % (self.sorted_crosses(), self.N)

    # -- permutation ---------------------------------------------------------

    def reading_word(self):
        """Simple-reflection indices: rows top->bottom, right->left."""
        return [r + c - 1
                for r, c in sorted(self.crosses, key=lambda rc: (rc[0], -rc[1]))]

    def permutation(self):
        """Demazure (0-Hecke) product of the reading word, trimmed."""
        u = Permutation.identity(self.N)
        for a in self.reading_word():
            u = u.demazure_right(a)
        return u.trim()

    def permutation_by_tracing(self):
        """Trace the pipes, resolving repeated crossings of a pair as bumps.

        Pipes enter at the west edge of each row heading east and exit at
        the north edge; cells are processed in anti-diagonal order so each
        crossing event sees the prior history of its two pipes.  For a
        reduced pipe dream this is plain pipe tracing.
        """
        N = self.N
        east_in = {}   # pipe arriving at (r, c) heading east
        north_in = {}  # pipe arriving at (r, c) heading north
        for r in range(1, N + 1):
            east_in[(r, 1)] = r
        exits = {}
        crossed = set()
        for t in range(1 - N, N):
            for r in range(N, 0, -1):
                c = t + r
                if not 1 <= c <= N:
                    continue
                a = east_in.get((r, c))   # westbound input, heading east
                b = north_in.get((r, c))  # southbound input, heading north
                if a is None and b is None:
                    continue
                if (r, c) in self.crosses:
                    pair = frozenset((a, b)) if a is not None and b is not None else None
                    if pair is not None and pair not in crossed:
                        crossed.add(pair)
                        go_east, go_north = a, b
                    else:
                        # bump: repeated crossing (or a lone pipe) bends
                        go_east, go_north = b, a
                else:
                    go_east, go_north = b, a
                if go_east is not None:
                    if c + 1 <= N:
                        east_in[(r, c + 1)] = go_east
                    else:
                        raise AssertionError("pipe escaped east; N too small")
                if go_north is not None:
                    if r - 1 >= 1:
                        north_in[(r - 1, c)] = go_north
                    else:
                        exits[go_north] = c
        one_line = [exits[i] for i in range(1, N + 1)]
        return Permutation(one_line).trim()

    def is_reduced(self, w=None):
        w = w or self.permutation()
        return len(self.crosses) == w.inversions()

    # -- moves ---------------------------------------------------------------

    def _chute_targets(self):
        """Yield (src, dst) for legal (K-)chute moves.

        A move needs a cross at (k, j+1), empty (k, i), (k+1, i), (k+1, j+1),
        and full rows k, k+1 of crosses across columns i+1..j.
        """
        P = self.crosses
        for (k, jp1) in P:
            j = jp1 - 1
            if j < 1:
                continue
            if (k + 1, jp1) in P:
                continue
            i = j
            while i >= 1:
                top, bot = (k, i) in P, (k + 1, i) in P
                if not top and not bot:
                    if (k + 1) + i <= self.N:
                        yield (k, jp1), (k + 1, i)
                    break
                if top and bot:
                    i -= 1
                    continue
                break

    def chute_moves(self):
        """All pipe dreams one chute move away (cross slides down-left)."""
        out = []
        for src, dst in self._chute_targets():
            out.append(PipeDream(self.crosses - {src} | {dst}, self.N))
        return sorted(out, key=PipeDream.sorted_crosses)

    def k_chute_moves(self):
        """All pipe dreams one K-theoretic chute move away (cross copies
        down-left, original stays)."""
        out = []
        for src, dst in self._chute_targets():
            out.append(PipeDream(self.crosses | {dst}, self.N))
        return sorted(out, key=PipeDream.sorted_crosses)

    # -- weights ---------------------------------------------------------------

    def weight(self, mode="single", nx=None, labels=None):
        """The monomial weight of the pipe dream.

        single:   prod x_r
        double:   prod (x_r - y_c)
        K-single: prod x_r                  (signs live in the K sums)
        K-double: prod (x_r + y_c - x_r y_c)
        labels: optional row relabeling r -> variable index.
        """
        lab = (lambda r: labels[r - 1]) if labels else (lambda r: r)
        n = nx or self.N
        ny = n if mode in ("double", "K-double") else 0
        p = Poly.const(1, n, ny)
        for r, c in self.sorted_crosses():
            xi = Poly.x(lab(r), n, ny)
            if mode in ("single", "K-single"):
                p = p * xi
            elif mode == "double":
                p = p * (xi - Poly.y(c, n, ny))
            elif mode == "K-double":
                yj = Poly.y(c, n, ny)
                p = p * (xi + yj - xi * yj)
            else:
                raise ValueError("unknown mode %r" % (mode,))
        return p

    # -- rendering ----------------------------------------------------------

    def render(self, labels=None):
        """ASCII picture: '+' crosses, '.' elbows, labels on the right."""
        lines = []
        for r in range(1, self.N + 1):
            row = []
            for c in range(1, self.N - r + 2):
                if r + c > self.N + 1:
                    break
                row.append("+" if (r, c) in self.crosses else ".")
            text = " ".join(row)
            if labels:
                text += "   x%d" % labels[r - 1]
            lines.append(text)
        return "\n".join(lines)

    def to_json(self, labels=None):
        d = {"N": self.N, "crosses": [list(rc) for rc in self.sorted_crosses()]}
        if labels is not None:
            d["labels"] = list(labels)
        return json.dumps(d)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls([tuple(rc) for rc in d["crosses"]], d["N"])


# -- construction and enumeration ---------------------------------------------


def top_pipe_dream(w):
    """The top pipe dream: column i carries code(w^{-1})_i crosses,
    top-justified.

    >>> top_pipe_dream(Permutation("24153")).sorted_crosses()
    [(1, 1), (1, 3), (2, 1), (2, 3)]
    """
    w = w if isinstance(w, Permutation) else Permutation(w)
    code_inv = w.inverse().lehmer_code()
    crosses = [(r, i) for i, ci in enumerate(code_inv, start=1)
               for r in range(1, ci + 1)]
    return PipeDream(crosses, w.n)


def permutation_of(P):
    return P.permutation()


def enumerate_reduced(w):
    """All reduced pipe dreams of w: breadth-first chute closure of the
    top pipe dream, returned in canonical (sorted cross list) order."""
    return _closure(w, k_theoretic=False)


def enumerate_all(w):
    """All K-theoretic pipe dreams of w: closure of the top pipe dream
    under chute and K-chute moves."""
    return _closure(w, k_theoretic=True)


def _closure(w, k_theoretic):
    w = w if isinstance(w, Permutation) else Permutation(w)
    start = top_pipe_dream(w)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for P in frontier:
            moves = P.chute_moves()
            if k_theoretic:
                moves = moves + P.k_chute_moves()
            for Q in moves:
                if Q not in seen:
                    seen.add(Q)
                    nxt.append(Q)
        frontier = nxt
    out = sorted(seen, key=PipeDream.sorted_crosses)
    for P in out:
        q = P.permutation()
        if not q.stable_eq(w.trim()):
            raise AssertionError("move closure escaped the permutation: %r" % (P,))
    return out


# -- word pipe dreams -----------------------------------------------------------


class WordPipeDream:
    """A pipe dream truncated to the n x k rectangle of a word, rows
    relabeled by the inverse associated permutation."""

    __slots__ = ("crosses", "n", "k", "labels", "excess")

    def __init__(self, crosses, n, k, labels, excess=0):
        crosses = frozenset((int(r), int(c)) for r, c in crosses)
        for r, c in crosses:
            if not (1 <= r <= n and 1 <= c <= k):
                raise RectangularityViolation(
                    "cross (%d,%d) outside %d x %d rectangle" % (r, c, n, k))
        object.__setattr__(self, "crosses", crosses)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "excess", int(excess))

    def __setattr__(self, *a):
        raise AttributeError("WordPipeDream is immutable")

    def __eq__(self, other):
        if isinstance(other, WordPipeDream):
            return (self.crosses, self.n, self.k, self.labels, self.excess) == \
                   (other.crosses, other.n, other.k, other.labels, other.excess)
        return NotImplemented

    def __hash__(self):
        return hash((self.crosses, self.n, self.k, self.labels, self.excess))

    def sorted_crosses(self):
        return sorted(self.crosses)

    def weight(self, mode="single"):
        """Weight with rows relabeled: row r contributes x_{labels[r-1]}.
        Sign-free, like the permutation-level weight; `excess` records
        crosses - len(std(conv(w))) for the signed K sums."""
        n = self.n
        ny = n if mode in ("double", "K-double") else 0
        p = Poly.const(1, n, ny)
        for r, c in self.sorted_crosses():
            xi = Poly.x(self.labels[r - 1], n, ny)
            if mode in ("single", "K-single"):
                p = p * xi
            elif mode == "double":
                p = p * (xi - Poly.y(c, n, ny))
            elif mode == "K-double":
                yj = Poly.y(c, n, ny)
                p = p * (xi + yj - xi * yj)
            else:
                raise ValueError("unknown mode %r" % (mode,))
        return p

    def render(self):
        lines = []
        for r in range(1, self.n + 1):
            row = ["+" if (r, c) in self.crosses else "."
                   for c in range(1, self.k + 1)]
            lines.append(" ".join(row) + "   x%d" % self.labels[r - 1])
        return "\n".join(lines)

    def to_json(self):
        return json.dumps({
            "n": self.n, "k": self.k,
            "crosses": [list(rc) for rc in self.sorted_crosses()],
            "labels": list(self.labels),
        })

    def __repr__(self):
        return "WordPipeDream(%r, n=%d, k=%d)" % (
            self.sorted_crosses(), self.n, self.k)


def word_row_labels(word):
    """Row r of a word pipe dream carries the variable x_{sigma(r)}, where
    sigma matches positions of convexify(word) to positions of word."""
    sigma = word.associated_permutation()
    return tuple(sigma(r) for r in range(1, word.n + 1))


def truncate_to_word(P, word, w=None):
    """Restrict a pipe dream of standardize(convexify(word)) to the word's
    n x k rectangle.  Raises RectangularityViolation if any cross lies
    outside (the supporting property says none does)."""
    word = word if isinstance(word, Word) else Word(word)
    bad = [rc for rc in P.crosses if rc[1] > word.k or rc[0] > word.n]
    if bad:
        raise RectangularityViolation(
            "crosses outside the %d x %d rectangle: %s"
            % (word.n, word.k, sorted(bad)))
    u = w or P.permutation()
    excess = len(P.crosses) - u.inversions()
    return WordPipeDream(P.crosses, word.n, word.k, word_row_labels(word),
                         excess)


def enumerate_word_pds(word, reduced=True):
    """Word pipe dreams of a word: enumerate the pipe dreams of
    standardize(convexify(word)) and truncate each one."""
    word = word if isinstance(word, Word) else Word(word)
    u = word.convexify().standardize()
    pds = enumerate_reduced(u) if reduced else enumerate_all(u)
    return [truncate_to_word(P, word, u) for P in pds]


def check_word_rectangularity(word, reduced=False):
    """Return the list of pipe dreams of the standardization that leave the
    word's rectangle (expected empty; kept as an inspectable finding)."""
    word = word if isinstance(word, Word) else Word(word)
    u = word.convexify().standardize()
    pds = enumerate_reduced(u) if reduced else enumerate_all(u)
    bad = []
    for P in pds:
        if any(c > word.k or r > word.n for r, c in P.crosses):
            bad.append(P)
    return bad


# -- generating functions -------------------------------------------------------


def pd_schubert(w, double=False):
    """Schubert polynomial as the weight sum over reduced pipe dreams."""
    w = w if isinstance(w, Permutation) else Permutation(w)
    mode = "double" if double else "single"
    total = Poly.zero(w.n, w.n if double else 0)
    for P in enumerate_reduced(w):
        total = total + P.weight(mode)
    return total


def pd_grothendieck(w, double=False):
    """Grothendieck polynomial as the signed weight sum over all pipe
    dreams: a diagram with c crosses contributes with sign (-1)^(c - len(w))."""
    w = w if isinstance(w, Permutation) else Permutation(w)
    mode = "K-double" if double else "K-single"
    ell = w.inversions()
    total = Poly.zero(w.n, w.n if double else 0)
    for P in enumerate_all(w):
        term = P.weight(mode)
        if (len(P.crosses) - ell) % 2:
            term = -term
        total = total + term
    return total


def word_pd_schubert(word):
    """Weight sum over the reduced word pipe dreams."""
    word = word if isinstance(word, Word) else Word(word)
    total = Poly.zero(word.n, 0)
    for P in enumerate_word_pds(word, reduced=True):
        total = total + P.weight("single")
    return total


def word_pd_grothendieck(word):
    """Signed weight sum over all word pipe dreams ((-1)^excess each)."""
    word = word if isinstance(word, Word) else Word(word)
    total = Poly.zero(word.n, 0)
    for P in enumerate_word_pds(word, reduced=False):
        term = P.weight("K-single")
        if P.excess % 2:
            term = -term
        total = total + term
    return total
