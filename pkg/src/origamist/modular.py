"""Finite-index subgroups of the (projective) modular group.

Elements of SL(2, Z) are written as words over ``S``, ``T`` (inverse
letters ``s``, ``t``) with

    T = [[1, 1], [0, 1]],     S = [[0, -1], [1, 0]].

Subgroups are coset tables for the presentation <S, T | S^2, (S T)^3> of
PSL(2, Z): matrices keep their signs, but indices, widths and cusp data
are projective.  Coset tables are right-coset tables: a word acts on a
coset letter by letter, left to right, and a word lies in the subgroup
iff it stabilizes coset 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EnumerationOverflow,
    InputError,
    NotAMember,
    NotParabolic,
)
from .exact import Permutation, invert_word, reduce_word

LETTERS = "STst"


# ---------------------------------------------------------------------------
# 2x2 integer matrices
# ---------------------------------------------------------------------------

class Mat2:
    """An element of SL(2, Z)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if a * d - b * c != 1:
            raise InputError("determinant must be 1: %r" % ((a, b, c, d),))
        self.a, self.b, self.c, self.d = int(a), int(b), int(c), int(d)

    def __mul__(self, o):
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self):
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k):
        m = self if k >= 0 else self.inverse()
        out = I2
        for _ in range(abs(k)):
            out = out * m
        return out

    @property
    def trace(self):
        return self.a + self.d

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, o):
        return isinstance(o, Mat2) and self.entries() == o.entries()

    def __hash__(self):
        return hash(self.entries())

    def proj_eq(self, o):
        return self == o or self == -o

    def canonical_sign(self):
        """The representative of {m, -m} whose first nonzero entry is > 0."""
        for x in self.entries():
            if x:
                return self if x > 0 else -self
        raise AssertionError("zero matrix")

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    @staticmethod
    def from_rows(rows):
        (a, b), (c, d) = rows
        return Mat2(a, b, c, d)

    def __repr__(self):
        return "[[%d,%d],[%d,%d]]" % self.entries()


I2 = Mat2(1, 0, 0, 1)
T_MAT = Mat2(1, 1, 0, 1)
S_MAT = Mat2(0, -1, 1, 0)

_LETTER_MATRIX = {"S": S_MAT, "T": T_MAT,
                  "s": S_MAT.inverse(), "t": T_MAT.inverse()}


def word_to_matrix(word: str) -> Mat2:
    m = I2
    for c in word:
        m = m * _LETTER_MATRIX[c]
    return m


def matrix_to_word(m: Mat2) -> str:
    """A word evaluating exactly to ``m``; deterministic Euclidean
    reduction of the bottom row (sign resolved with S^2 = -I)."""
    letters = []
    cur = m
    while cur.c != 0:
        q = cur.a // cur.c
        letters.append(("T", q))
        cur = (T_MAT ** (-q)) * cur
        letters.append(("S", 1))
        cur = S_MAT.inverse() * cur
    # cur = [[e, b], [0, e]] with e = +-1
    if cur.a == 1:
        letters.append(("T", cur.b))
    else:
        letters.append(("S", 2))
        letters.append(("T", -cur.b))
    word = ""
    for gen, k in letters:
        if k >= 0:
            word += gen * k
        else:
            word += gen.lower() * (-k)
    word = reduce_word(word)
    assert word_to_matrix(word) == m
    return word


# ---------------------------------------------------------------------------
# classification of elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementClass:
    kind: str                 # "center" | "elliptic" | "parabolic" | "hyperbolic"
    order: int | None = None  # projective order, elliptic only
    fixed: tuple | None = None  # (p, q) lowest terms, q == 0 meaning infinity

    def label(self):
        if self.kind == "elliptic":
            return "elliptic(%d)" % self.order
        return self.kind


def classify(m: Mat2) -> ElementClass:
    if m.proj_eq(I2):
        return ElementClass("center")
    tr = abs(m.trace)
    if tr < 2:
        return ElementClass("elliptic", order=2 if tr == 0 else 3)
    if tr == 2:
        return ElementClass("parabolic", fixed=_fixed_point(m))
    return ElementClass("hyperbolic")


def _fixed_point(m: Mat2):
    if m.c == 0:
        return (1, 0)
    x = Fraction(m.a - m.d, 2 * m.c)
    return (x.numerator, x.denominator)


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def cusp_matrix(p, q):
    """A matrix g in SL(2, Z) with g(infinity) = p/q ((1,0) is infinity)."""
    if q == 0:
        return I2
    g, y, x = _xgcd(p, q)
    assert g == 1, "fixed point not in lowest terms"
    # p*y - q*(-x) ... solve p*v - q*u = 1
    # xgcd gives y*p + x*q = 1, so v = y, u = -x
    return Mat2(p, -x, q, y)


def translation_exponent(m: Mat2):
    """(g, k) with g(infinity) = fixed point of ``m`` and g^-1 m g = +-T^k."""
    cls = classify(m)
    if cls.kind != "parabolic":
        raise NotParabolic("%r is %s" % (m, cls.kind))
    g = cusp_matrix(*cls.fixed)
    n = g.inverse() * m * g
    assert n.c == 0 and abs(n.a) == 1
    k = n.a * n.b
    assert k != 0
    return g, k


# ---------------------------------------------------------------------------
# coset tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CuspClass:
    rep_coset: int
    width: int
    rep_word: str      # g, so the cusp is g(infinity)
    primitive: Mat2    # g T^width g^-1

    def point(self):
        g = word_to_matrix(self.rep_word)
        return (g.a, g.c) if g.c != 0 or g.a != 0 else (1, 0)


class ModularSubgroup:
    """A finite-index subgroup of PSL(2, Z) as a standardized coset table.

    ``sigma_S`` and ``sigma_T`` send coset i to coset i*S, i*T.  The
    table is renumbered breadth-first from coset 0 over the letters
    S, T, s, t, which makes equal subgroups compare equal.
    """

    def __init__(self, sigma_S: Permutation, sigma_T: Permutation,
                 generators=None):
        n = sigma_S.degree
        if sigma_T.degree != n:
            raise InputError("table degree mismatch")
        if not (sigma_S * sigma_S).is_identity():
            raise InputError("sigma_S^2 != id")
        st = sigma_T * sigma_S      # i -> i*S*T
        if not (st * st * st).is_identity():
            raise InputError("(sigma_S sigma_T)^3 != id")
        order = _bfs_order(sigma_S, sigma_T)
        if len(order) != n:
            raise InputError("coset action is not transitive")
        relabel = {old: new for new, old in enumerate(order)}
        self.sigma_S = Permutation([relabel[sigma_S(order[i])] for i in range(n)])
        self.sigma_T = Permutation([relabel[sigma_T(order[i])] for i in range(n)])
        self._sigma = {
            "S": self.sigma_S, "s": self.sigma_S.inverse(),
            "T": self.sigma_T, "t": self.sigma_T.inverse(),
        }
        self._build_tree()
        if generators is None:
            generators = [w for w, _ in self.schreier_gens]
        self.generators = list(generators)
        self._cusps = None

    # -- construction helpers ------------------------------------------

    def _build_tree(self):
        n = self.index
        rep = [None] * n
        rep[0] = ""
        tree = set()          # forward edge keys (coset, 'S'|'T')
        queue = [0]
        while queue:
            i = queue.pop(0)
            for letter in LETTERS:
                j = self._sigma[letter](i)
                if rep[j] is None:
                    rep[j] = rep[i] + letter
                    upper = letter.upper()
                    tree.add((i, letter) if letter == upper
                             else (j, upper))
                    queue.append(j)
        self.rep_words = rep
        self.tree = tree
        gens = []
        key = {}
        for i in range(n):
            for letter in "ST":
                if (i, letter) in tree:
                    continue
                j = self._sigma[letter](i)
                word = reduce_word(rep[i] + letter + invert_word(rep[j]))
                key[(i, letter)] = len(gens)
                gens.append((word, word_to_matrix(word)))
        self.schreier_gens = gens
        self._schreier_key = key

    # -- basic queries ---------------------------------------------------

    @property
    def index(self):
        return self.sigma_S.degree

    def trace(self, coset, word):
        for c in word:
            coset = self._sigma[c](coset)
        return coset

    def contains_word(self, word):
        return self.trace(0, word) == 0

    def contains(self, m: Mat2):
        return self.contains_word(matrix_to_word(m))

    def __eq__(self, other):
        return (isinstance(other, ModularSubgroup)
                and self.sigma_S == other.sigma_S
                and self.sigma_T == other.sigma_T)

    def __hash__(self):
        return hash((self.sigma_S, self.sigma_T))

    def __repr__(self):
        return "ModularSubgroup(index=%d)" % self.index

    # -- Reidemeister-Schreier -------------------------------------------

    def rewrite_word(self, word):
        """Schreier decomposition [(gen index, +-1), ...] of a word that
        stabilizes coset 0; tree edges contribute nothing."""
        out = []
        coset = 0
        for c in word:
            if c in "ST":
                edge = (coset, c)
                coset = self._sigma[c](coset)
            else:
                coset = self._sigma[c](coset)
                edge = (coset, c.upper())
            if edge in self.tree:
                continue
            idx = self._schreier_key[edge]
            out.append((idx, 1 if c in "ST" else -1))
        if coset != 0:
            raise NotAMember("word %r moves coset 0 to %d" % (word, coset))
        return out

    def rewrite_matrix(self, m: Mat2):
        """Schreier decomposition of a member matrix, plus the exact sign
        relating the Schreier product back to ``m``."""
        seq = self.rewrite_word(matrix_to_word(m))
        prod = I2
        for idx, e in seq:
            g = self.schreier_gens[idx][1]
            prod = prod * (g if e == 1 else g.inverse())
        if prod == m:
            return seq, 1
        assert prod == -m
        return seq, -1

    def relator_words(self):
        """The rewritten defining relators, as Schreier-index words.

        Any assignment of images to the Schreier generators extends to a
        homomorphism iff every one of these products is central.
        """
        rels = []
        seen = set()
        for i in range(self.index):
            for relator in ("SS", "STSTST"):
                out = []
                coset = i
                for c in relator:
                    edge = (coset, c)
                    coset = self._sigma[c](coset)
                    if edge in self.tree:
                        continue
                    out.append((self._schreier_key[edge], 1))
                assert coset == i
                key = tuple(out)
                if out and key not in seen:
                    seen.add(key)
                    rels.append(out)
        return rels

    # -- cusps -------------------------------------------------------------

    def cusps(self):
        if self._cusps is None:
            out = []
            for cyc in self.sigma_T.cycles():
                rep = min(cyc)
                word = self.rep_words[rep]
                g = word_to_matrix(word)
                p = g * (T_MAT ** len(cyc)) * g.inverse()
                out.append(CuspClass(rep, len(cyc), word, p))
            out.sort(key=lambda c: c.rep_coset)
            self._cusps = out
        return self._cusps

    def cusp_class_of_coset(self, coset):
        for k, cusp in enumerate(self.cusps()):
            c = cusp.rep_coset
            for _ in range(cusp.width):
                if c == coset:
                    return k
                c = self.sigma_T(c)
        raise AssertionError("unreachable")

    def cusp_class_of_point(self, p, q):
        """Cusp class index of the boundary point p/q (q = 0: infinity)."""
        g = cusp_matrix(p, q)
        return self.cusp_class_of_coset(self.trace(0, matrix_to_word(g)))

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "index": self.index,
            "sigma_S": [i + 1 for i in self.sigma_S.images],
            "sigma_T": [i + 1 for i in self.sigma_T.images],
            "generators": self.generators,
            "cusps": [{"width": c.width, "rep_word": c.rep_word}
                      for c in self.cusps()],
        }

    @staticmethod
    def from_json(data):
        try:
            sigma_S = Permutation([i - 1 for i in data["sigma_S"]])
            sigma_T = Permutation([i - 1 for i in data["sigma_T"]])
            generators = data.get("generators")
        except (KeyError, TypeError) as exc:
            raise InputError("bad subgroup JSON: %s" % exc) from exc
        return ModularSubgroup(sigma_S, sigma_T, generators)


def _bfs_order(sigma_S, sigma_T):
    sig = {"S": sigma_S, "T": sigma_T,
           "s": sigma_S.inverse(), "t": sigma_T.inverse()}
    order = [0]
    seen = {0}
    qi = 0
    while qi < len(order):
        i = order[qi]
        qi += 1
        for letter in LETTERS:
            j = sig[letter](i)
            if j not in seen:
                seen.add(j)
                order.append(j)
    return order


def full_group():
    return ModularSubgroup(Permutation([0]), Permutation([0]), ["S", "T"])


# ---------------------------------------------------------------------------
# Todd-Coxeter enumeration
# ---------------------------------------------------------------------------

_RELATORS = ("SS", "STSTST")
_LIDX = {c: i for i, c in enumerate(LETTERS)}
_LINV = {"S": "s", "s": "S", "T": "t", "t": "T"}


def coset_enumerate(generator_words, max_cosets=10 ** 6):
    """Closed coset table for the subgroup of PSL(2, Z) generated
    (projectively) by the given words.

    HLT strategy: scan the subgroup generators at coset 0, then the
    relators S^2 and (S T)^3 at every live coset, defining new cosets
    where scans stall; coincidences are merged with a union-find.
    Raises EnumerationOverflow when more than ``max_cosets`` cosets are
    alive at once.
    """
    if not generator_words:
        raise InputError("need at least one generator word")
    labels = []      # union-find
    neighbors = []   # per coset, image under S, s, T, t (or None)

    def find(c):
        while labels[c] != c:
            labels[c] = labels[labels[c]]
            c = labels[c]
        return c

    def new_coset():
        if len(neighbors) - _dead[0] >= max_cosets:
            raise EnumerationOverflow("more than %d cosets" % max_cosets)
        labels.append(len(labels))
        neighbors.append([None] * 4)
        return len(labels) - 1

    _dead = [0]

    def set_edge(c, letter, d):
        neighbors[c][_LIDX[letter]] = d
        neighbors[d][_LIDX[_LINV[letter]]] = c

    def follow(c, letter):
        c = find(c)
        d = neighbors[c][_LIDX[letter]]
        if d is None:
            d = new_coset()
            set_edge(c, letter, d)
        return find(d)

    def unify(c, d):
        queue = [(c, d)]
        while queue:
            c, d = queue.pop()
            c, d = find(c), find(d)
            if c == d:
                continue
            if d < c:
                c, d = d, c
            labels[d] = c
            _dead[0] += 1
            for k in range(4):
                n = neighbors[d][k]
                if n is None:
                    continue
                m = neighbors[c][k]
                if m is None:
                    # n's reverse pointer may still name d; reads resolve
                    # through find(), so no eager fix-up is needed
                    neighbors[c][k] = n
                else:
                    queue.append((m, n))

    start = new_coset()
    for word in generator_words:
        c = start
        for letter in word:
            c = follow(c, letter)
        unify(c, start)

    visited = 0
    while visited < len(labels):
        c = visited
        visited += 1
        if find(c) != c:
            continue
        for relator in _RELATORS:
            d = c
            for letter in relator:
                d = follow(d, letter)
            unify(d, c)

    live = sorted(set(find(c) for c in range(len(labels))))
    renum = {c: i for i, c in enumerate(live)}
    n = len(live)
    images_S = [renum[find(neighbors[c][_LIDX["S"]])] for c in live]
    images_T = [renum[find(neighbors[c][_LIDX["T"]])] for c in live]
    return ModularSubgroup(Permutation(images_S), Permutation(images_T),
                           list(generator_words))


def intersect(g1: ModularSubgroup, g2: ModularSubgroup) -> ModularSubgroup:
    """Diagonal-action intersection; index divides index(g1)*index(g2)."""
    pairs = {(0, 0): 0}
    order = [(0, 0)]
    qi = 0
    while qi < len(order):
        i, j = order[qi]
        qi += 1
        for letter in LETTERS:
            nxt = (g1._sigma[letter](i), g2._sigma[letter](j))
            if nxt not in pairs:
                pairs[nxt] = len(order)
                order.append(nxt)
    n = len(order)
    images_S = [pairs[(g1.sigma_S(i), g2.sigma_S(j))] for (i, j) in order]
    images_T = [pairs[(g1.sigma_T(i), g2.sigma_T(j))] for (i, j) in order]
    return ModularSubgroup(Permutation(images_S), Permutation(images_T))


def is_subgroup(h: ModularSubgroup, g: ModularSubgroup) -> bool:
    """True iff every Schreier generator of h lies in g."""
    return all(g.contains_word(w) for w, _ in h.schreier_gens)
