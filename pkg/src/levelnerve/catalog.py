"""Catalog of standard multicurve representatives, one per stable-graph type.

A multicurve on S_{g,n} is realized as the preimage of a laminar diagram in
the branched double-cover model: slits joining adjacent branch points (their
lifts are the chain curves) and circles around contiguous blocks of branch
points.  A circle enclosing an odd number of branch points lifts to a single
curve double-covering it; an even one lifts to two disjoint curves.  The
complementary pieces upstairs are read off region by region downstairs: a
region's preimage is connected exactly when the region contains an odd loop
(a free branch point or an odd hole), and its fundamental group is the
even-parity part of the region group, computed by Reidemeister-Schreier
rewriting of prefix-conjugated lasso loops.  Every entry checks its own
bookkeeping: Euler characteristics assemble to 2-2g-n, folded subgroup ranks
match the piece genera, boundary and mark loops fold into their piece
subgroups, and the homology classes of the curve words reproduce the
bridge/cut classification of the dual graph.

The shipped range is 1 <= g <= 3, 0 <= n <= 2 (so the model never carries
interior marked points; the surface's punctures are the one or two boundary
lifts).  Types the diagram search cannot reach raise UnsupportedError.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInputError, LevelNerveError, UnsupportedError
from .stablegraph import StableGraph, enumerate_stable_graphs
from .surface import presentation
from .words import FoldedGraph, solve_conjugator, winv, wmul


def _check(cond, msg):
    if not cond:
        raise LevelNerveError(f"catalog self-check failed: {msg}")


@dataclass(frozen=True)
class Piece:
    """A complementary piece of the multicurve.

    genus/marks describe the closed-up piece; gens generate the image of its
    fundamental group in the public free group (up to one conjugation);
    marks pair each puncture index living on the piece with a based loop
    word around it."""

    genus: int
    marks: tuple
    gens: tuple
    chi_filled: int


@dataclass(frozen=True)
class Side:
    """One side of a curve: the piece it bounds, a conjugator w with
    w * curve^sign * w^-1 equal to the based boundary loop of the piece."""

    piece: int
    conj: tuple
    sign: int


class MulticurveRep:
    """A realized multicurve: dual graph, one cyclic word per edge, and the
    piece/side data needed to transport it through covers."""

    def __init__(self, g, n, graph, words, pieces, sides):
        self.g = g
        self.n = n
        self.graph = graph
        self.words = tuple(words)
        self.pieces = tuple(pieces)
        self.sides = tuple(sides)
        self.key = graph.canonical_key()

    @property
    def type(self):
        return self.graph

    def rank(self):
        return len(self.words) - 1

    def word_texts(self):
        p = presentation(self.g, self.n)
        return [p.format(w) for w in self.words]

    def __repr__(self):
        return (f"MulticurveRep(({self.g},{self.n}), "
                f"{len(self.words)} curves, {len(self.pieces)} pieces)")


# -- diagram combinatorics


def _objects(B):
    """All diagram objects on B collinear branch points, canonical order.
    Slits are ("arc", p, p+1); circles ("circ", i, j) need at least two
    branch points, and the 2-point circle is skipped (its lifts are parallel
    to the slit's, rejected later anyway)."""
    objs = []
    for i in range(1, B + 1):
        for j in range(i, B + 1):
            if i == j:
                continue
            if j == i + 1:
                objs.append(("arc", i, j))
                continue
            objs.append(("circ", i, j))
    objs.sort(key=lambda o: (o[1], o[2], o[0]))
    return objs


def _compatible(a, b):
    (ka, ia, ja), (kb, ib, jb) = a, b
    if (ia, ja) == (ib, jb):
        return False
    disjoint = ja < ib or jb < ia
    if disjoint:
        return True
    a_in_b = ib <= ia and ja <= jb
    b_in_a = ia <= ib and jb <= ja
    if ka == "arc" and kb == "arc":
        return False  # overlapping slits share a branch point
    if ka == "arc":
        return a_in_b
    if kb == "arc":
        return b_in_a
    return a_in_b or b_in_a


def _curve_count(obj, B):
    if obj[0] == "arc":
        return 1
    branch = obj[2] - obj[1] + 1
    return 1 if branch % 2 == 1 else 2

def _families(B, max_curves):
    """Laminar families with at most max_curves lifted curves, DFS order."""
    objs = _objects(B)

    def extend(start, chosen, curves):
        for idx in range(start, len(objs)):
            o = objs[idx]
            c = curves + _curve_count(o, B)
            if c > max_curves:
                continue
            if all(_compatible(o, p) for p in chosen):
                chosen.append(o)
                yield tuple(chosen)
                yield from extend(idx + 1, chosen, c)
                chosen.pop()

    yield from extend(0, [], 0)


# -- realization


class _Realizer:
    def __init__(self, g, n):
        self.g = g
        self.n = n
        self.pres = presentation(g, n)
        self.model = self.pres.model
        self.B = self.model.B

    def _std(self, down_word):
        """Downstairs word -> public letters."""
        w = self.model.to_std(self.model.rewrite(down_word))
        return self.pres._kill_phantom(w)

    def realize(self, family):
        """Build the MulticurveRep of a laminar family, or None when some
        piece is inessential or unstable (not a valid multicurve)."""
        B, n = self.B, self.n
        circles = [o for o in family if o[0] == "circ"]
        # region of an object/position: the innermost circle around it
        def region_of(lo, hi):
            best = None
            for c in circles:
                if c[1] <= lo and hi <= c[2] and (c[1], c[2]) != (lo, hi):
                    if best is None or (best[1] <= c[1] and c[2] <= best[2]):
                        best = c
            return best

        # parents before children: wider interval first at equal start
        regions = [None] + sorted(circles, key=lambda c: (c[1], -c[2]))
        items = {r: [] for r in regions}
        consumed = set()
        for o in family:
            items[region_of(o[1], o[2])].append(o)
            if o[0] == "arc":
                consumed.update((o[1], o[2]))
        for p in range(1, B + 1):
            if p in consumed:
                continue
            if any(c[1] <= p <= c[2] for c in circles):
                host = region_of(p, p)
                items[host].append(("pos", p, p))
            else:
                items[None].append(("pos", p, p))
        for r in regions:
            items[r].sort(key=lambda o: o[1])

        def wword(o):
            return tuple(range(o[1], o[2] + 1))

        def parity(o):
            return (o[2] - o[1] + 1) % 2

        # access prefixes and connectivity, outside in
        access = {None: ()}
        connected = {}
        prefix = {}
        for r in regions:
            A = access[r]
            V = A
            odd = False
            for o in items[r]:
                prefix[o] = V
                V = V + wword(o)
                if parity(o):
                    odd = True
                if o[0] == "circ":
                    access[o] = prefix[o]
            connected[r] = odd

        # pieces per region
        piece_ids = {}
        piece_region = []
        for r in regions:
            if connected[r]:
                piece_ids[(r, 0)] = piece_ids[(r, 1)] = len(piece_region)
                piece_region.append((r, None))
            else:
                for eps in (0, 1):
                    piece_ids[(r, eps)] = len(piece_region)
                    piece_region.append((r, eps))

        def based(o):
            pre = prefix[o]
            return wmul(pre, wword(o), winv(pre))

        def based_sq(o):
            pre = prefix[o]
            return wmul(pre, wword(o), wword(o), winv(pre))

        # Sheet access devices.  A split region's two pieces are based via
        # the silent x_1 prefix (applied uniformly, so any curve crossings
        # of that path conjugate the whole piece at once).  A connected
        # region reaches its second sheet through the lasso T of its first
        # odd item, a path inside the region, hence inside the piece.
        T_of = {}
        for r in regions:
            if connected[r]:
                tstar = next(o for o in items[r] if parity(o))
                T_of[r] = (tstar, based(tstar))

        def side_loop(r, base, eps):
            if connected[r]:
                if eps == 0:
                    return base
                T = T_of[r][1]
                return wmul(T, base, winv(T))
            return wmul((1,) * eps, base, (1,) * eps)

        # subgroup generators per piece
        gens = [[] for _ in piece_region]
        for r in regions:
            its = items[r]
            if connected[r]:
                pid = piece_ids[(r, 0)]
                tstar, gstar = T_of[r]
                gs = []
                for o in its:
                    if o is tstar:
                        continue
                    go = based(o)
                    if parity(o):
                        gs.append(wmul(go, winv(gstar)))
                        gs.append(wmul(gstar, go))
                    else:
                        gs.append(go)
                        gs.append(wmul(gstar, go, winv(gstar)))
                gs.append(wmul(gstar, gstar))
                gens[pid] = [self._std(w) for w in gs]
            else:
                for eps in (0, 1):
                    pid = piece_ids[(r, eps)]
                    gens[pid] = [self._std(side_loop(r, based(o), eps))
                                 for o in its]

        # edges: curve word plus its two sides
        edge_words = []
        edge_sides = []
        edge_ends = []
        for o in sorted(family, key=lambda o: (o[1], o[2], o[0])):
            r_out = region_of(o[1], o[2])
            if o[0] == "arc":
                word = self._std(wword(o))
                sides = []
                for eps in (0, 1):
                    loop = self._std(side_loop(r_out, based(o), eps))
                    sides.append((piece_ids[(r_out, eps)], loop))
                edge_words.append(word)
                edge_sides.append(tuple(sides))
                edge_ends.append((sides[0][0], sides[1][0]))
            elif parity(o):
                # both regions around an odd circle are connected and the
                # lifted curve has one collar on each side
                word = self._std(wword(o) + wword(o))
                loop = self._std(based_sq(o))
                pid_out = piece_ids[(r_out, 0)]
                pid_in = piece_ids[(o, 0)]
                edge_words.append(word)
                edge_sides.append(((pid_out, loop), (pid_in, loop)))
                edge_ends.append((pid_out, pid_in))
            else:
                # two lifted curves; the eps-side of the outer region and
                # the eps-side of the inner region face the same lift
                base_par = sum(1 for x in prefix[o] if x <= self.B) % 2
                for eps in (0, 1):
                    delta = eps ^ base_par
                    word = self._std(((1,) * delta) + wword(o)
                                     + ((1,) * delta))
                    out_loop = self._std(side_loop(r_out, based(o), eps))
                    in_loop = self._std(side_loop(o, based(o), eps))
                    pid_out = piece_ids[(r_out, eps)]
                    pid_in = piece_ids[(o, eps)]
                    edge_words.append(word)
                    edge_sides.append(((pid_out, out_loop),
                                       (pid_in, in_loop)))
                    edge_ends.append((pid_out, pid_in))

        # boundary marks: the two lifts of the disk boundary sit on the
        # root pieces; u_1 is real for n >= 1, u_2 for n = 2
        down_all = tuple(range(1, B + 1))
        marks = [[] for _ in piece_region]
        fills = [0] * len(piece_region)
        for sigma in (0, 1):
            pid = piece_ids[(None, sigma)]
            loop = self._std(winv(side_loop(None, down_all, sigma)))
            if sigma + 1 <= n:
                marks[pid].append((sigma + 1, loop))
            else:
                fills[pid] += 1

        # Euler characteristics region by region
        chi_open = [0] * len(piece_region)
        for r in regions:
            holes = sum(1 for o in items[r] if o[0] == "circ")
            slits = sum(1 for o in items[r] if o[0] == "arc")
            free = [o for o in items[r] if o[0] == "pos"]
            chi_r = 1 - holes - slits - len(free)
            if connected[r]:
                pid = piece_ids[(r, 0)]
                chi_open[pid] = 2 * chi_r + len(free)
            else:
                for eps in (0, 1):
                    chi_open[piece_ids[(r, eps)]] = chi_r

        boundary_count = [0] * len(piece_region)
        for u, v in edge_ends:
            boundary_count[u] += 1
            boundary_count[v] += 1

        pieces = []
        for pid in range(len(piece_region)):
            chi_f = chi_open[pid] + fills[pid]
            b = boundary_count[pid]
            r_real = len(marks[pid])
            h2 = 2 - chi_f - b - r_real
            if h2 < 0 or h2 % 2:
                raise LevelNerveError("piece bookkeeping is inconsistent")
            h = h2 // 2
            if 2 * h - 2 + b + r_real <= 0:
                return None  # inessential or parallel curve; not a multicurve
            pieces.append(Piece(h, tuple(sorted(marks[pid])),
                                tuple(gens[pid]), chi_f))

        verts = [(p.genus, tuple(m for m, _ in p.marks)) for p in pieces]
        graph = StableGraph(verts, edge_ends)
        _check(graph.genus() == self.g and graph.is_stable(),
               "assembled dual graph")
        _check(sum(p.chi_filled for p in pieces) == 2 - 2 * self.g - n,
               "Euler characteristic assembly")

        sides = []
        for word, sds in zip(edge_words, edge_sides):
            pair = []
            for pid, loop in sds:
                sign = 1
                c = solve_conjugator(word, loop)
                if c is None:
                    c = solve_conjugator(winv(word), loop)
                    sign = -1
                _check(c is not None, "side loop is a curve conjugate")
                pair.append(Side(pid, c, sign))
            sides.append(tuple(pair))

        rep = MulticurveRep(self.g, n, graph, edge_words, pieces, sides)
        self._verify(rep)
        return rep

    def _verify(self, rep):
        pres = self.pres
        N = pres.cover_rank()
        folded = [FoldedGraph(p.gens, N) for p in rep.pieces]
        # the u_1 boundary slot always sits on the first root piece; for a
        # closed surface it is filled but still punctures the public model
        u1_holder = None
        if self.n == 0:
            u1_holder = 0
            down_all = tuple(range(1, self.B + 1))
            u1_loop = self._std(winv(down_all))
            _check(folded[0].contains(u1_loop), "u_1 slot on the root piece")
        ends = [0] * len(rep.pieces)
        for u, v in rep.graph.edges:
            ends[u] += 1
            ends[v] += 1
        for pid, piece in enumerate(rep.pieces):
            r_pub = len(piece.marks) + (1 if pid == u1_holder else 0)
            want = 2 * piece.genus + ends[pid] + r_pub - 1
            _check(folded[pid].rank() == want, "piece subgroup rank")
            for _, loop in piece.marks:
                _check(folded[pid].contains(loop), "mark loop in piece")
        for word, sds in zip(rep.words, rep.sides):
            for s in sds:
                loop = wmul(s.conj, word if s.sign > 0 else winv(word),
                            winv(s.conj))
                _check(folded[s.piece].contains(loop),
                       "boundary loop in piece")
        # homology classification must reproduce the graph classification
        bridges = set(rep.graph.bridges())
        classes = [pres.homology_class(w) for w in rep.words]
        for i, cls in enumerate(classes):
            zero = all(c == 0 for c in cls)
            _check(zero == (i in bridges), "bridge homology classification")
        for i, j in rep.graph.minimal_two_cuts():
            plus = tuple(a + b for a, b in zip(classes[i], classes[j]))
            minus = tuple(a - b for a, b in zip(classes[i], classes[j]))
            _check(all(c == 0 for c in plus) or all(c == 0 for c in minus),
                   "cut pair homology relation")

    def empty_rep(self):
        """The empty multicurve: a single piece, the whole surface."""
        return self.realize(())


@lru_cache(maxsize=None)
def _catalog(g, n):
    if not (1 <= g <= 3 and 0 <= n <= 2):
        raise UnsupportedError(
            f"signature ({g}, {n}) outside the shipped catalog range")
    if 2 * g - 2 + n <= 0:
        raise UnsupportedError(f"({g}, {n}) admits no stable curves")
    real = _Realizer(g, n)
    want = {t.canonical_key() for t in
            enumerate_stable_graphs(g, n, include_empty=True)}
    found = {}
    max_curves = 3 * g - 3 + n
    for family in itertools.chain([()], _families(real.B, max_curves)):
        rep = real.realize(family)
        if rep is None or rep.key in found:
            continue
        found[rep.key] = rep
        if want <= set(found):
            break
    return found


def multicurve_catalog(g, n):
    """All realized representatives for (g, n), canonical order by type."""
    cat = _catalog(g, n)
    return tuple(cat[k] for k in sorted(cat))


def standard_multicurve(t: StableGraph) -> MulticurveRep:
    """The catalog representative whose dual graph is isomorphic to t."""
    g = t.genus()
    marks = t.marks()
    n = len(marks)
    if marks != tuple(range(1, n + 1)):
        raise InvalidInputError("marking labels must be 1..n")
    cat = _catalog(g, n)
    key = t.canonical_key()
    if key not in cat:
        raise UnsupportedError("type outside catalog")
    return cat[key]


def catalog_coverage(g, n):
    """(realized, missing) stable-graph types for the signature."""
    cat = _catalog(g, n)
    realized, missing = [], []
    for t in enumerate_stable_graphs(g, n, include_empty=True):
        (realized if t.canonical_key() in cat else missing).append(t)
    return realized, missing
