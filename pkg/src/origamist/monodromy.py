"""From an origami to integer symplectic matrices on H_1 of the closed
surface, one per Veech-group Schreier generator.

The covering graph has the d squares as vertices and 2d directed edges
(one x-edge i -> r(i) and one y-edge i -> u(i) per square).  A maximal
spanning tree is chosen breadth-first from square 0, exploring x before
y; the d+1 non-tree edges carry the fundamental-cycle basis t_1, ...,
t_{d+1} of the punctured-surface homology.

For each Veech Schreier word the pipeline is: lift to an automorphism of
F(x, y), correct by an inner automorphism so the covering subgroup is
stabilized, rewrite the action in the t-basis by tracing images through
the graph, change basis to an extended symplectic basis of the
intersection form, and project away the radical (the puncture classes).

Words are group elements (rightmost letter acts first); a *walk* through
the graph applies a word's letters from the right end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInVeechGroup, PathNotClosed, RadicalDimensionMismatch
from .exact import (
    AlternatingForm,
    Permutation,
    invert_word,
    mat_inverse,
    mat_mul,
    mat_vec,
    reduce_word,
    standard_symplectic_gram,
    symplectic_reduce,
    word_mul,
)
from .modular import Mat2
from .origami import AUT_LIFTS, Origami, stratum


# ---------------------------------------------------------------------------
# spanning tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpanningTreeData:
    origami: Origami
    tree: frozenset          # forward edge keys (square, 'x'|'y')
    non_tree: tuple          # ordered edge keys: x ascending, then y ascending
    walk0: tuple             # walk0[i]: traversal letters 0 -> i along the tree

    @property
    def d(self):
        return self.origami.d

    def edge_index(self, edge):
        return self.non_tree.index(edge)


def graph_and_tree(o: Origami) -> SpanningTreeData:
    d = o.d
    ri, ui = o.r.inverse(), o.u.inverse()
    walk0 = [None] * d
    walk0[0] = ""
    tree = set()
    queue = [0]
    while queue:
        i = queue.pop(0)
        # explore x before y, forward before backward
        steps = (
            (o.r(i), (i, "x"), "x"),
            (o.u(i), (i, "y"), "y"),
            (ri(i), (ri(i), "x"), "X"),
            (ui(i), (ui(i), "y"), "Y"),
        )
        for j, edge, letter in steps:
            if walk0[j] is None:
                walk0[j] = walk0[i] + letter
                tree.add(edge)
                queue.append(j)
    non_tree = tuple((i, letter) for letter in "xy"
                     for i in range(d) if (i, letter) not in tree)
    assert len(non_tree) == d + 1
    return SpanningTreeData(o, frozenset(tree), non_tree, tuple(walk0))


def h_generators(t: SpanningTreeData):
    """Free generators of the covering subgroup, one per non-tree edge:
    tree path to the tail, the edge, tree path back from the head."""
    o = t.origami
    gens = []
    for (i, letter) in t.non_tree:
        j = o.r(i) if letter == "x" else o.u(i)
        # traversal letters in walk order; as a group element the word
        # is read right-to-left, i.e. the reversed traversal
        traversal = t.walk0[i] + letter + "".join(
            c.swapcase() for c in reversed(t.walk0[j]))
        gens.append(reduce_word(traversal[::-1]))
    return gens


# ---------------------------------------------------------------------------
# automorphisms of F(x, y)
# ---------------------------------------------------------------------------

class Aut2:
    """An automorphism of the free group on x, y, given by the images."""

    __slots__ = ("wx", "wy")

    def __init__(self, wx, wy):
        self.wx = reduce_word(wx)
        self.wy = reduce_word(wy)

    def apply(self, word):
        table = {"x": self.wx, "y": self.wy,
                 "X": invert_word(self.wx), "Y": invert_word(self.wy)}
        return reduce_word("".join(table[c] for c in word))

    def compose(self, other):
        """self o other (apply ``other`` first)."""
        return Aut2(self.apply(other.wx), self.apply(other.wy))

    def abelianization(self) -> Mat2:
        def counts(w):
            return (w.count("x") - w.count("X"), w.count("y") - w.count("Y"))
        cx, cy = counts(self.wx), counts(self.wy)
        return Mat2(cx[0], cy[0], cx[1], cy[1])

    def __repr__(self):
        return "Aut2(x->%s, y->%s)" % (self.wx or "1", self.wy or "1")


AUT_IDENTITY = Aut2("x", "y")
_AUT_BY_LETTER = {c: Aut2(*AUT_LIFTS[c]) for c in AUT_LIFTS}


def lift_to_aut(word: str) -> Aut2:
    """The fixed lift of a word in S, T; abelianizes to its matrix."""
    aut = AUT_IDENTITY
    for c in word:
        aut = aut.compose(_AUT_BY_LETTER[c])
    return aut


def inner(word: str) -> Aut2:
    return Aut2(word_mul(word, "x", invert_word(word)),
                word_mul(word, "y", invert_word(word)))


def stabilize_H(aut: Aut2, o: Origami, t: SpanningTreeData, hgens) -> Aut2:
    """Compose with an inner automorphism so every image of every
    covering-subgroup generator fixes the base square."""
    images = [aut.apply(u) for u in hgens]
    perms = [o.monodromy(w) for w in images]
    for s in range(o.d):
        if all(p(s) == s for p in perms):
            v = t.walk0[s].swapcase()  # monodromy sends s to the base
            if not v:
                return aut
            return inner(v).compose(aut)
    raise NotInVeechGroup("no inner correction stabilizes the covering group")


# ---------------------------------------------------------------------------
# homology of the graph
# ---------------------------------------------------------------------------

def _walk(o: Origami, t: SpanningTreeData, word, start=0, count_all=False):
    """Walk a word from ``start``; return (end square, edge counts).

    Counts are indexed by non-tree order, or by all 2d edges in the order
    (0,'x'), ..., (d-1,'x'), (0,'y'), ... when ``count_all``.
    """
    d = o.d
    ri, ui = o.r.inverse(), o.u.inverse()
    if count_all:
        index = {(i, l): (0 if l == "x" else d) + i
                 for i in range(d) for l in "xy"}
        counts = [0] * (2 * d)
    else:
        index = {e: k for k, e in enumerate(t.non_tree)}
        counts = [0] * len(t.non_tree)
    cur = start
    for c in reversed(word):
        if c == "x":
            edge, cur, sign = (cur, "x"), o.r(cur), 1
        elif c == "X":
            prev = ri(cur)
            edge, cur, sign = (prev, "x"), prev, -1
        elif c == "y":
            edge, cur, sign = (cur, "y"), o.u(cur), 1
        else:
            prev = ui(cur)
            edge, cur, sign = (prev, "y"), prev, -1
        k = index.get(edge)
        if k is not None:
            counts[k] += sign
    return cur, counts


def rewrite_action(aut: Aut2, t: SpanningTreeData, hgens):
    """Matrix of the automorphism on the fundamental-cycle basis: column
    j holds the signed non-tree crossings of the image of u_j."""
    o = t.origami
    cols = []
    for u in hgens:
        end, counts = _walk(o, t, aut.apply(u))
        if end != 0:
            raise PathNotClosed("image of %r ends at square %d" % (u, end))
        cols.append(counts)
    n = len(hgens)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def edge_expansion(o: Origami, t: SpanningTreeData, word):
    """Signed multiplicities of all 2d directed edges along a closed word."""
    end, counts = _walk(o, t, word, count_all=True)
    assert end == 0
    return counts


def intersection_gram(t: SpanningTreeData, hgens):
    """Intersection pairing on the t-basis via the square-crossing rule:
    in each square the horizontal and vertical mid-segments cross once,
    positively."""
    o = t.origami
    d = o.d
    expansions = [edge_expansion(o, t, u) for u in hgens]
    n = len(hgens)
    gram = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ea, eb = expansions[a], expansions[b]
            gram[a][b] = sum(ea[i] * eb[d + i] - ea[d + i] * eb[i]
                             for i in range(d))
    return gram


# ---------------------------------------------------------------------------
# the symplectic chart and the representation
# ---------------------------------------------------------------------------

@dataclass
class HomologyChart:
    """Shared exact data: tree, generators, form and the basis change
    from the t-basis to (symplectic basis | radical basis)."""
    origami: Origami
    tree: SpanningTreeData
    hgens: list
    gram: list
    basis: list          # columns: e1 f1 ... eg fg c1 ... c_{m-1}, in t-coords
    basis_inv: list
    genus: int
    radical_dim: int

    def to_symplectic(self, t_vector):
        z = mat_vec(self.basis_inv, [Fraction(x) for x in t_vector])
        return z[: 2 * self.genus]

    def project_matrix(self, m_t):
        """Conjugate a t-basis action into the chart and cut the radical."""
        c = mat_mul(self.basis_inv, mat_mul(
            [[Fraction(x) for x in row] for row in m_t], self.basis))
        n = len(c)
        k = 2 * self.genus
        out = [[None] * k for _ in range(k)]
        for i in range(n):
            for j in range(n):
                v = c[i][j]
                assert v.denominator == 1
                if i < k and j >= k:
                    # the radical must map into the radical
                    assert v == 0, "radical not preserved"
                if i < k and j < k:
                    out[i][j] = int(v)
        return out


def build_chart(o: Origami) -> HomologyChart:
    o.validate()
    t = graph_and_tree(o)
    hgens = h_generators(t)
    gram = intersection_gram(t, hgens)
    radical, sympl = symplectic_reduce(AlternatingForm(gram))
    m = stratum(o).punctures
    if len(radical) != m - 1:
        raise RadicalDimensionMismatch(
            "radical dimension %d, punctures %d" % (len(radical), m))
    vectors = list(sympl) + list(radical)
    basis = [[Fraction(vectors[j][i]) for j in range(len(vectors))]
             for i in range(len(vectors))]
    return HomologyChart(o, t, hgens, gram, basis, mat_inverse(basis),
                         len(sympl) // 2, len(radical))


@dataclass
class SymplecticRep:
    """Integer symplectic matrices for the Veech Schreier generators."""
    chart: HomologyChart
    generators: list     # [(word, matrix 2g x 2g)] aligned with the
                         # Veech subgroup's Schreier generators

    @property
    def genus(self):
        return self.chart.genus

    @property
    def radical_dim(self):
        return self.chart.radical_dim

    def to_json(self):
        return {
            "genus": self.genus,
            "radical_dim": self.radical_dim,
            "generators": [{"word": w, "matrix": m} for w, m in self.generators],
        }


def generator_matrix(chart: HomologyChart, word: str):
    """Run the pipeline for one stabilizer word."""
    aut = lift_to_aut(word)
    aut = stabilize_H(aut, chart.origami, chart.tree, chart.hgens)
    m_t = rewrite_action(aut, chart.tree, chart.hgens)
    return chart.project_matrix(m_t)


def homology_rep(o: Origami, veech) -> SymplecticRep:
    chart = build_chart(o)
    j = standard_symplectic_gram(2 * chart.genus)
    gens = []
    for word, _ in veech.subgroup.schreier_gens:
        m = generator_matrix(chart, word)
        assert is_symplectic(m, j)
        gens.append((word, m))
    return SymplecticRep(chart, gens)


def is_symplectic(m, j=None):
    if j is None:
        j = standard_symplectic_gram(len(m))
    mt = [list(r) for r in zip(*m)]
    return mat_mul(mt, mat_mul(j, m)) == j


def dualize(m):
    """(M^-1)^T: the matrix of the left action on cohomology."""
    inv = mat_inverse([[Fraction(x) for x in row] for row in m])
    out = [[inv[j][i] for j in range(len(m))] for i in range(len(m))]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def tautological_plane(rep: SymplecticRep):
    """Symplectic-basis coordinates of the span of the all-horizontal and
    all-vertical cycles; its t-coordinates are supported exactly on the
    horizontal, respectively vertical, non-tree edges."""
    chart = rep.chart
    h = [1 if letter == "x" else 0 for (_, letter) in chart.tree.non_tree]
    v = [1 if letter == "y" else 0 for (_, letter) in chart.tree.non_tree]
    return [chart.to_symplectic(h), chart.to_symplectic(v)]


def deck_action_matrix(chart: HomologyChart, tau: Permutation):
    """Homology action of a deck transformation via the edge permutation."""
    o = chart.origami
    d = o.d
    cols = []
    for u in chart.hgens:
        e = edge_expansion(o, chart.tree, u)
        permuted = [0] * (2 * d)
        for i in range(d):
            permuted[tau(i)] = e[i]
            permuted[d + tau(i)] = e[d + i]
        cols.append([permuted[(0 if l == "x" else d) + i]
                     for (i, l) in chart.tree.non_tree])
    n = len(chart.hgens)
    m_t = [[cols[j][i] for j in range(n)] for i in range(n)]
    return chart.project_matrix(m_t)
