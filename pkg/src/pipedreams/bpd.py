"""Bumpless pipe dreams (BPDs), classical and K-theoretic.

A BPD of size N is an N x N grid of the six tiles below; pipes enter the
south boundary (one per column), travel monotonically north/east, and exit
the east boundary (one per row).  The pipe entering south column w(i) exits
east row i.

    BLANK   no pipe
    HOR     west-east strand
    VER     north-south strand
    CROSS   both strands, crossing transversally
    SE      elbow: enters south, turns east
    NW      elbow: enters west, turns north

The *diagram* BPD of w has an SE elbow at (i, w(i)); its blank cells form
the Rothe diagram of w.  Droop moves generate all reduced BPDs from the
diagram BPD; adding K-droop moves (drooping onto another pipe's SE elbow,
which becomes a second, resolved crossing of the pair) generates all
K-theoretic BPDs.
"""

from __future__ import annotations

import json
from enum import IntEnum

from .combinat import Permutation, Word
from .poly import Poly


class Tile(IntEnum):
    BLANK = 0
    HOR = 1
    VER = 2
    CROSS = 3
    SE = 4
    NW = 5


# which cell sides carry a pipe, per tile
N_, E_, S_, W_ = 1, 2, 4, 8
_SIDES = {
    Tile.BLANK: 0,
    Tile.HOR: E_ | W_,
    Tile.VER: N_ | S_,
    Tile.CROSS: N_ | E_ | S_ | W_,
    Tile.SE: S_ | E_,
    Tile.NW: N_ | W_,
}

_GLYPH = {
    Tile.BLANK: "·",   # ·
    Tile.HOR: "─",     # ─
    Tile.VER: "│",     # │
    Tile.CROSS: "┼",   # ┼
    Tile.SE: "╭",      # ╭
    Tile.NW: "╯",      # ╯
}

_TILE_NAME = {t: t.name for t in Tile}
_NAME_TILE = {t.name: t for t in Tile}


class BpdRectangularityViolation(AssertionError):
    """A word BPD's weight-carrying tiles leave the n x k rectangle."""


class Bpd:
    """An immutable N x N grid of tiles."""

    __slots__ = ("tiles", "N")

    def __init__(self, tiles):
        tiles = tuple(tuple(Tile(t) for t in row) for row in tiles)
        N = len(tiles)
        if any(len(row) != N for row in tiles):
            raise ValueError("tile grid must be square")
        object.__setattr__(self, "tiles", tiles)
        object.__setattr__(self, "N", N)

    def __setattr__(self, *a):
        raise AttributeError("Bpd is immutable")

    def __eq__(self, other):
        if isinstance(other, Bpd):
            return self.tiles == other.tiles
        return NotImplemented

    def __hash__(self):
        return hash(self.tiles)

    def tile(self, r, c):
        return self.tiles[r - 1][c - 1]

    def code_string(self):
        """Row-major tile code; the canonical sort key for enumerations."""
        return "".join(str(int(t)) for row in self.tiles for t in row)

    def __repr__(self):
        return "Bpd(N=%d, %s)" % (self.N, self.code_string())

    # -- structural validation ----------------------------------------------

    def validate(self):
        """Check edge-matching and boundary conditions; raises ValueError."""
        N = self.N
        for r in range(1, N + 1):
            for c in range(1, N + 1):
                s = _SIDES[self.tile(r, c)]
                # east edge vs west edge of the right neighbor
                e = bool(s & E_)
                if c == N:
                    if not e:
                        raise ValueError("row %d fails to exit east" % r)
                else:
                    if e != bool(_SIDES[self.tile(r, c + 1)] & W_):
                        raise ValueError("edge mismatch east of (%d,%d)" % (r, c))
                # south edge vs north edge of the lower neighbor
                so = bool(s & S_)
                if r == N:
                    if not so:
                        raise ValueError("column %d fails to enter south" % c)
                else:
                    if so != bool(_SIDES[self.tile(r + 1, c)] & N_):
                        raise ValueError("edge mismatch south of (%d,%d)" % (r, c))
                if r == 1 and (s & N_):
                    raise ValueError("pipe escapes north at column %d" % c)
                if c == 1 and (s & W_):
                    raise ValueError("pipe enters west at row %d" % r)
        return True

    # -- tracing ----------------------------------------------------------------

    def _trace(self):
        """Resolve the pipes.

        Returns (one_line, crossed, se_pipe):
          one_line  - w with w(r) = south column of the pipe exiting row r;
          crossed   - set of frozenset pipe pairs that genuinely cross;
          se_pipe   - pipe id occupying each SE elbow, keyed by (r, c).

        Tiles are processed in anti-diagonal order (increasing (N-r)+c), so
        each crossing sees the full prior history of its two pipes; at a
        cross tile whose pipes have already crossed, the tile acts as a
        bump.  This is the 0-Hecke resolution of redundant crossings.
        """
        N = self.N
        north_out = {}  # (r, c) -> pipe leaving cell's north side... keyed below
        # inputs: south_in[(r,c)] pipe entering from the south edge,
        #         west_in[(r,c)] pipe entering from the west edge
        south_in = {(N, c): c for c in range(1, N + 1)}
        west_in = {}
        exits = {}
        crossed = set()
        se_pipe = {}
        for t in range(0, 2 * N - 1):
            for r in range(N, 0, -1):
                c = t - (N - r) + 1
                if not 1 <= c <= N:
                    continue
                tile = self.tile(r, c)
                b = south_in.get((r, c))  # heading north
                a = west_in.get((r, c))   # heading east
                go_north = go_east = None
                if tile is Tile.BLANK:
                    if a is not None or b is not None:
                        raise ValueError("pipe ran into a blank at (%d,%d)" % (r, c))
                elif tile is Tile.HOR:
                    go_east = a
                elif tile is Tile.VER:
                    go_north = b
                elif tile is Tile.SE:
                    se_pipe[(r, c)] = b
                    go_east = b
                elif tile is Tile.NW:
                    go_north = a
                else:  # CROSS
                    pair = frozenset((a, b))
                    if pair in crossed:
                        go_north, go_east = a, b   # bump
                    else:
                        crossed.add(pair)
                        go_north, go_east = b, a   # transversal crossing
                if go_north is not None:
                    if r == 1:
                        raise ValueError("pipe escaped north at column %d" % c)
                    south_in[(r - 1, c)] = go_north
                if go_east is not None:
                    if c == N:
                        exits[r] = go_east
                    else:
                        west_in[(r, c + 1)] = go_east
        one_line = [exits[r] for r in range(1, N + 1)]
        return one_line, crossed, se_pipe

    def permutation(self):
        """w with w(r) = the south column of the pipe exiting east row r."""
        one_line, _, _ = self._trace()
        return Permutation(one_line)

    # -- cells of interest -------------------------------------------------------

    def blanks(self):
        return [(r, c) for r in range(1, self.N + 1)
                for c in range(1, self.N + 1)
                if self.tile(r, c) is Tile.BLANK]

    def nw_elbows(self):
        return [(r, c) for r in range(1, self.N + 1)
                for c in range(1, self.N + 1)
                if self.tile(r, c) is Tile.NW]

    def is_reduced(self, w=None):
        w = w or self.permutation()
        return len(self.blanks()) == w.inversions()

    # -- moves ---------------------------------------------------------------------

    def _droop_rewrites(self, k_theoretic):
        """Yield the rewritten grids of all legal (K-)droop moves.

        A droop takes the SE elbow at (i, j) and a destination (i2, j2)
        with i2 > i, j2 > j; the destination is blank (droop) or another
        pipe's SE elbow (K-droop, pipes must already cross).  The rectangle
        may contain no elbow other than source and destination, the
        corners (i2, j) / (i, j2) must be plain VER / HOR, and every cell
        on the rectangle edge rewrites by losing or gaining the drooping
        pipe's strand.
        """
        N = self.N
        ses = [(r, c) for r in range(1, N + 1) for c in range(1, N + 1)
               if self.tile(r, c) is Tile.SE]
        crossed = se_pipe = None
        if k_theoretic:
            _, crossed, se_pipe = self._trace()
        for (i, j) in ses:
            for i2 in range(i + 1, N + 1):
                for j2 in range(j + 1, N + 1):
                    dest = self.tile(i2, j2)
                    if k_theoretic:
                        if dest is not Tile.SE:
                            continue
                        p, q = se_pipe[(i, j)], se_pipe[(i2, j2)]
                        if frozenset((p, q)) not in crossed:
                            continue
                    else:
                        if dest is not Tile.BLANK:
                            continue
                    grid = self._try_droop(i, j, i2, j2, k_theoretic)
                    if grid is not None:
                        yield grid

    def _try_droop(self, i, j, i2, j2, k_theoretic):
        g = [list(row) for row in self.tiles]

        def get(r, c):
            return g[r - 1][c - 1]

        def put(r, c, t):
            g[r - 1][c - 1] = t

        # no stray elbows anywhere in the rectangle
        for r in range(i, i2 + 1):
            for c in range(j, j2 + 1):
                if (r, c) in ((i, j), (i2, j2)):
                    continue
                if get(r, c) in (Tile.SE, Tile.NW):
                    return None
        # corners
        if get(i2, j) is not Tile.VER or get(i, j2) is not Tile.HOR:
            return None
        put(i, j, Tile.BLANK)
        put(i2, j, Tile.SE)
        put(i, j2, Tile.SE)
        put(i2, j2, Tile.CROSS if k_theoretic else Tile.NW)
        # top edge loses the horizontal strand
        for c in range(j + 1, j2):
            t = get(i, c)
            if t is Tile.HOR:
                put(i, c, Tile.BLANK)
            elif t is Tile.CROSS:
                put(i, c, Tile.VER)
            else:
                return None
        # left edge loses the vertical strand
        for r in range(i + 1, i2):
            t = get(r, j)
            if t is Tile.VER:
                put(r, j, Tile.BLANK)
            elif t is Tile.CROSS:
                put(r, j, Tile.HOR)
            else:
                return None
        # bottom edge gains a horizontal strand
        for c in range(j + 1, j2):
            t = get(i2, c)
            if t is Tile.BLANK:
                put(i2, c, Tile.HOR)
            elif t is Tile.VER:
                put(i2, c, Tile.CROSS)
            else:
                return None
        # right edge gains a vertical strand
        for r in range(i + 1, i2):
            t = get(r, j2)
            if t is Tile.BLANK:
                put(r, j2, Tile.VER)
            elif t is Tile.HOR:
                put(r, j2, Tile.CROSS)
            else:
                return None
        return Bpd(g)

    def droop_moves(self):
        """All BPDs one droop move away, canonically ordered."""
        return sorted(self._droop_rewrites(False), key=Bpd.code_string)

    def k_droop_moves(self):
        """All BPDs one K-theoretic droop move away.

        A K-droop droops an SE elbow onto the SE elbow of a pipe that
        already crosses the drooping pipe, turning the destination into a
        second, redundant crossing.  Crossing somewhere is necessary but
        not sufficient: if the existing crossing lies downstream of the
        destination, the new tile would become the pair's first crossing
        and rewire the permutation.  Candidates that alter the traced
        permutation are therefore discarded.
        """
        w = self.permutation()
        return sorted((Q for Q in self._droop_rewrites(True)
                       if Q.permutation() == w), key=Bpd.code_string)

    # -- weights -----------------------------------------------------------------

    def weight(self, mode="single", w=None, nx=None, labels=None):
        """Weight of the BPD.

        single:   prod_blank x_r                       (reduced sums)
        double:   prod_blank (x_r - y_c)
        K-single: (-1)^(blanks - len(w)) prod_blank x_r prod_NW (1 - x_r)
        K-double: same shape with x_r (+) y_c = x_r + y_c - x_r y_c and
                  NW factors (1 - x_r)(1 - y_c) expanded.
        """
        lab = (lambda r: labels[r - 1]) if labels else (lambda r: r)
        n = nx or self.N
        ny = n if mode in ("double", "K-double") else 0
        p = Poly.const(1, n, ny)
        for r, c in self.blanks():
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
        if mode.startswith("K"):
            for r, c in self.nw_elbows():
                xi = Poly.x(lab(r), n, ny)
                if mode == "K-single":
                    p = p * (Poly.const(1, n, ny) - xi)
                else:
                    yj = Poly.y(c, n, ny)
                    p = p * (Poly.const(1, n, ny) - xi - yj + xi * yj)
            wperm = w or self.permutation()
            excess = len(self.blanks()) - wperm.inversions()
            if excess < 0:
                raise ValueError("fewer blanks than inversions")
            if excess % 2:
                p = -p
        return p

    # -- rendering -------------------------------------------------------------

    def render(self, labels=None):
        lines = []
        for r in range(1, self.N + 1):
            text = " ".join(_GLYPH[self.tile(r, c)] for c in range(1, self.N + 1))
            if labels:
                text += "   x%d" % labels[r - 1]
            lines.append(text)
        return "\n".join(lines)

    def to_json(self, labels=None):
        d = {"n": self.N,
             "tiles": [[_TILE_NAME[t] for t in row] for row in self.tiles]}
        if labels is not None:
            d["labels"] = list(labels)
        return json.dumps(d)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls([[_NAME_TILE[s] for s in row] for row in d["tiles"]])


# -- construction and enumeration ------------------------------------------------


def diagram_bpd(w):
    """The diagram BPD: SE elbow at (i, w(i)), verticals below it,
    horizontals right of it, crossings where both, blanks elsewhere
    (the blanks form the Rothe diagram)."""
    w = w if isinstance(w, Permutation) else Permutation(w)
    N = w.n
    winv = w.inverse()
    g = []
    for r in range(1, N + 1):
        row = []
        for c in range(1, N + 1):
            i = winv(c)
            vert = i < r
            horiz = w(r) < c
            if i == r and w(r) == c:
                row.append(Tile.SE)
            elif vert and horiz:
                row.append(Tile.CROSS)
            elif vert:
                row.append(Tile.VER)
            elif horiz:
                row.append(Tile.HOR)
            else:
                row.append(Tile.BLANK)
        g.append(row)
    B = Bpd(g)
    B.validate()
    return B


def enumerate_reduced_bpd(w):
    """All reduced BPDs of w: droop closure of the diagram BPD."""
    return _bpd_closure(w, k_theoretic=False)


def enumerate_all_bpd(w):
    """All K-theoretic BPDs of w: droop + K-droop closure."""
    return _bpd_closure(w, k_theoretic=True)


def _bpd_closure(w, k_theoretic):
    w = w if isinstance(w, Permutation) else Permutation(w)
    start = diagram_bpd(w)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for B in frontier:
            moves = B.droop_moves()
            if k_theoretic:
                moves = moves + B.k_droop_moves()
            for Q in moves:
                if Q not in seen:
                    Q.validate()
                    if Q.permutation() != w:
                        raise AssertionError(
                            "droop closure escaped the permutation")
                    seen.add(Q)
                    nxt.append(Q)
        frontier = nxt
    return sorted(seen, key=Bpd.code_string)


def bpd_weight(B, mode="single", w=None):
    return B.weight(mode, w=w)


# -- word BPDs ----------------------------------------------------------------------


class WordBpd:
    """The first k columns x first n rows of a BPD of the standardized
    convexification, rows relabeled through the word's associated
    permutation."""

    __slots__ = ("tiles", "n", "k", "labels", "excess")

    def __init__(self, tiles, labels, excess=0):
        tiles = tuple(tuple(Tile(t) for t in row) for row in tiles)
        n = len(tiles)
        k = len(tiles[0]) if tiles else 0
        if any(len(row) != k for row in tiles):
            raise ValueError("ragged word BPD")
        object.__setattr__(self, "tiles", tiles)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "excess", int(excess))

    def __setattr__(self, *a):
        raise AttributeError("WordBpd is immutable")

    def __eq__(self, other):
        if isinstance(other, WordBpd):
            return (self.tiles, self.labels, self.excess) == \
                   (other.tiles, other.labels, other.excess)
        return NotImplemented

    def __hash__(self):
        return hash((self.tiles, self.labels, self.excess))

    def tile(self, r, c):
        return self.tiles[r - 1][c - 1]

    def code_string(self):
        return "".join(str(int(t)) for row in self.tiles for t in row)

    def blanks(self):
        return [(r, c) for r in range(1, self.n + 1)
                for c in range(1, self.k + 1)
                if self.tile(r, c) is Tile.BLANK]

    def nw_elbows(self):
        return [(r, c) for r in range(1, self.n + 1)
                for c in range(1, self.k + 1)
                if self.tile(r, c) is Tile.NW]

    def weight(self, mode="single"):
        n = self.n
        ny = n if mode in ("double", "K-double") else 0
        p = Poly.const(1, n, ny)
        for r, c in self.blanks():
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
        if mode.startswith("K"):
            for r, c in self.nw_elbows():
                xi = Poly.x(self.labels[r - 1], n, ny)
                if mode == "K-single":
                    p = p * (Poly.const(1, n, ny) - xi)
                else:
                    yj = Poly.y(c, n, ny)
                    p = p * (Poly.const(1, n, ny) - xi - yj + xi * yj)
            if self.excess % 2:
                p = -p
        return p

    def render(self):
        lines = []
        for r in range(1, self.n + 1):
            text = " ".join(_GLYPH[self.tile(r, c)]
                            for c in range(1, self.k + 1))
            lines.append(text + "   x%d" % self.labels[r - 1])
        return "\n".join(lines)

    def to_json(self):
        return json.dumps({
            "n": self.n, "k": self.k,
            "tiles": [[_TILE_NAME[t] for t in row] for row in self.tiles],
            "labels": list(self.labels),
        })

    def __repr__(self):
        return "WordBpd(n=%d, k=%d, %s)" % (self.n, self.k, self.code_string())


def truncate_to_word_bpd(B, word, w=None):
    """Keep the first n rows and k columns of a BPD of
    standardize(convexify(word)).  Every blank and NW elbow must lie inside
    that rectangle (rectangularity); otherwise BpdRectangularityViolation."""
    word = word if isinstance(word, Word) else Word(word)
    n, k = word.n, word.k
    bad = [(r, c) for (r, c) in B.blanks() + B.nw_elbows()
           if r > n or c > k]
    if bad:
        raise BpdRectangularityViolation(
            "weight cells outside the %d x %d rectangle: %s" % (n, k, sorted(bad)))
    u = w or B.permutation()
    excess = len(B.blanks()) - u.inversions()
    sigma = word.associated_permutation()
    labels = tuple(sigma(r) for r in range(1, n + 1))
    tiles = [row[:k] for row in B.tiles[:n]]
    return WordBpd(tiles, labels, excess)


def enumerate_word_bpds(word, reduced=True):
    """Word BPDs: enumerate the BPDs of standardize(convexify(word)) and
    truncate each one (the result is a list; distinct BPDs may in
    principle truncate to equal rectangles and are kept with
    multiplicity)."""
    word = word if isinstance(word, Word) else Word(word)
    u = word.convexify().standardize()
    bpds = enumerate_reduced_bpd(u) if reduced else enumerate_all_bpd(u)
    return [truncate_to_word_bpd(B, word, w=u) for B in bpds]


def check_word_bpd_rectangularity(word, reduced=False):
    """Return the BPDs of the standardization whose blanks or NW elbows
    leave the word's rectangle (expected empty)."""
    word = word if isinstance(word, Word) else Word(word)
    u = word.convexify().standardize()
    bpds = enumerate_reduced_bpd(u) if reduced else enumerate_all_bpd(u)
    n, k = word.n, word.k
    bad = []
    for B in bpds:
        if any(r > n or c > k for (r, c) in B.blanks() + B.nw_elbows()):
            bad.append(B)
    return bad


# -- generating functions -------------------------------------------------------


def bpd_schubert(w, double=False):
    """Schubert polynomial as the blank-weight sum over reduced BPDs."""
    w = w if isinstance(w, Permutation) else Permutation(w)
    mode = "double" if double else "single"
    total = Poly.zero(w.n, w.n if double else 0)
    for B in enumerate_reduced_bpd(w):
        total = total + B.weight(mode, w=w)
    return total


def bpd_grothendieck(w, double=False):
    """Grothendieck polynomial as the wt_K sum over all BPDs (each weight
    already carries its sign (-1)^(blanks - len(w)))."""
    w = w if isinstance(w, Permutation) else Permutation(w)
    mode = "K-double" if double else "K-single"
    total = Poly.zero(w.n, w.n if double else 0)
    for B in enumerate_all_bpd(w):
        total = total + B.weight(mode, w=w)
    return total


def word_bpd_schubert(word):
    """Weight sum over the reduced word BPDs."""
    word = word if isinstance(word, Word) else Word(word)
    total = Poly.zero(word.n, 0)
    for B in enumerate_word_bpds(word, reduced=True):
        total = total + B.weight("single")
    return total


def word_bpd_grothendieck(word):
    """wt_K sum over all word BPDs (signs intrinsic via excess)."""
    word = word if isinstance(word, Word) else Word(word)
    total = Poly.zero(word.n, 0)
    for B in enumerate_word_bpds(word, reduced=False):
        total = total + B.weight("K-single")
    return total
