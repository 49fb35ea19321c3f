"""Square-tiled surfaces as permutation pairs.

An origami on d squares is a pair (r, u) of permutations: the right
neighbour of square i is r(i), the upper neighbour u(i).  Equivalently
it is the monodromy homomorphism m: F(x, y) -> S_d with m(x) = r,
m(y) = u; two origamis are the same surface iff the pairs are
simultaneously conjugate.

The SL(2, Z)-action precomposes the monodromy with fixed lifted
automorphisms of F(x, y); the lifts are pinned by two facts checked in
the test suite: their abelianizations are T and S, and the stabilizer of
the L(2, 2) origami is generated by S and T^2 but does not contain T.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InputError, NotConnected
from .exact import Permutation, perms_transitive

# images (sigma(x), sigma(y)) of the lifted automorphisms, one per letter
AUT_LIFTS = {
    "T": ("x", "yx"),
    "t": ("x", "yX"),
    "S": ("y", "X"),
    "s": ("Y", "x"),
}


class Origami:
    """An origami pair; points are 0-based internally."""

    __slots__ = ("r", "u")

    def __init__(self, r: Permutation, u: Permutation):
        if r.degree != u.degree:
            raise InputError("r and u must have the same degree")
        self.r = r
        self.u = u

    @property
    def d(self):
        return self.r.degree

    def validate(self):
        if not perms_transitive((self.r, self.u), self.d):
            raise NotConnected("<r, u> is not transitive")
        return self

    def monodromy(self, word: str) -> Permutation:
        """Evaluate a free word at x -> r, y -> u."""
        table = {"x": self.r, "y": self.u,
                 "X": self.r.inverse(), "Y": self.u.inverse()}
        out = Permutation.identity(self.d)
        for c in word:
            out = out * table[c]
        return out

    def pair_key(self):
        return (self.r.images, self.u.images)

    def __eq__(self, other):
        return isinstance(other, Origami) and self.pair_key() == other.pair_key()

    def __hash__(self):
        return hash(self.pair_key())

    def __repr__(self):
        return "Origami(r=%r, u=%r)" % (self.r, self.u)

    def to_json(self):
        return {
            "d": self.d,
            "r": [[i + 1 for i in c] for c in self.r.cycles()],
            "u": [[i + 1 for i in c] for c in self.u.cycles()],
        }


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text):
    cycles = []
    rest = text
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).strip()
        rest = rest.replace(m.group(0), "", 1)
        if not body:
            continue
        try:
            cyc = tuple(int(tok) for tok in re.split(r"[,\s]+", body))
        except ValueError as exc:
            raise InputError("bad cycle %r" % body) from exc
        cycles.append(cyc)
    if rest.strip():
        raise InputError("unexpected text in permutation: %r" % rest.strip())
    return cycles


def parse_origami_text(text: str) -> Origami:
    """Parse ``"r=(1,4,7)(2,3,5,6,8,9); u=(1,6,8,7,3,2)(4,9,5)"``."""
    parts = {}
    for name in ("r", "u"):
        m = re.search(r"\b%s\s*=\s*((?:\([^()]*\)\s*)+)" % name, text)
        if not m:
            raise InputError("missing %s=... in origami text" % name)
        parts[name] = _parse_cycles(m.group(1))
    points = [i for cycles in parts.values() for c in cycles for i in c]
    if not points or min(points) < 1:
        raise InputError("origami points are 1-based")
    d = max(points)
    r = Permutation.from_cycles([tuple(i - 1 for i in c) for c in parts["r"]], d)
    u = Permutation.from_cycles([tuple(i - 1 for i in c) for c in parts["u"]], d)
    return Origami(r, u)


def parse_origami_json(data) -> Origami:
    try:
        d = int(data["d"])
        rc = [tuple(int(i) - 1 for i in c) for c in data["r"]]
        uc = [tuple(int(i) - 1 for i in c) for c in data["u"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad origami JSON: %s" % exc) from exc
    return Origami(Permutation.from_cycles(rc, d), Permutation.from_cycles(uc, d))


# ---------------------------------------------------------------------------
# stratum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StratumData:
    genus: int
    zero_orders: tuple      # descending, excludes regular points
    vertex_cycle_lengths: tuple
    punctures: int          # all vertices, including regular marked points

    def to_json(self):
        return {
            "genus": self.genus,
            "zero_orders": list(self.zero_orders),
            "vertex_cycle_lengths": list(self.vertex_cycle_lengths),
            "punctures": self.punctures,
        }


def vertex_permutation(o: Origami) -> Permutation:
    """The commutator r u r^-1 u^-1; its cycles are the vertices."""
    return o.r * o.u * o.r.inverse() * o.u.inverse()


def stratum(o: Origami) -> StratumData:
    c = vertex_permutation(o)
    lengths = tuple(sorted((len(cyc) for cyc in c.cycles()), reverse=True))
    m = len(lengths)
    two_g = 2 + o.d - m
    assert two_g % 2 == 0
    g = two_g // 2
    orders = tuple(l - 1 for l in lengths if l > 1)
    assert sum(orders) == 2 * g - 2
    return StratumData(g, orders, lengths, m)


# ---------------------------------------------------------------------------
# SL(2, Z)-action
# ---------------------------------------------------------------------------

def act_generator(letter: str, o: Origami) -> Origami:
    """Precompose the monodromy with the inverse lifted automorphism."""
    inv = letter.swapcase()
    wx, wy = AUT_LIFTS[inv]
    return Origami(o.monodromy(wx), o.monodromy(wy))


def act_word(word: str, o: Origami) -> Origami:
    """Left action of a word: the rightmost letter acts first."""
    for letter in reversed(word):
        o = act_generator(letter, o)
    return o


def central_flip(o: Origami) -> Origami:
    """The action of -I = S^2: invert both permutations."""
    return Origami(o.r.inverse(), o.u.inverse())


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def canonical_form(o: Origami) -> Origami:
    """Lexicographically minimal BFS relabeling; two origamis are
    simultaneously conjugate iff their canonical forms are equal."""
    best = None
    d = o.d
    moves = (o.r, o.u, o.r.inverse(), o.u.inverse())
    for start in range(d):
        label = [-1] * d
        label[start] = 0
        order = [start]
        qi = 0
        while qi < len(order):
            i = order[qi]
            qi += 1
            for mv in moves:
                j = mv(i)
                if label[j] == -1:
                    label[j] = len(order)
                    order.append(j)
        if len(order) != d:
            raise NotConnected("<r, u> is not transitive")
        tau = Permutation(label)
        key = ((tau * o.r * tau.inverse()).images,
               (tau * o.u * tau.inverse()).images)
        if best is None or key < best:
            best = key
    return Origami(Permutation(best[0]), Permutation(best[1]))


# ---------------------------------------------------------------------------
# quotients / block systems
# ---------------------------------------------------------------------------

def _partition_key(leader):
    """Normalize a union-find leader array to a block partition key."""
    rep = {}
    blocks = []
    for i, l in enumerate(leader):
        if l not in rep:
            rep[l] = len(blocks)
            blocks.append([])
        blocks[rep[l]].append(i)
    return tuple(tuple(b) for b in blocks)


def _close_blocks(o: Origami, seeds):
    """Smallest block system of <r, u> merging every seed pair."""
    leader = list(range(o.d))

    def find(i):
        while leader[i] != i:
            leader[i] = leader[leader[i]]
            i = leader[i]
        return i

    work = list(seeds)
    while work:
        a, b = work.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if rb < ra:
            ra, rb = rb, ra
        leader[rb] = ra
        work.append((o.r(a), o.r(b)))
        work.append((o.u(a), o.u(b)))
        work.append((o.r.inverse()(a), o.r.inverse()(b)))
        work.append((o.u.inverse()(a), o.u.inverse()(b)))
    return _partition_key([find(i) for i in range(o.d)])


def block_systems(o: Origami):
    """All block systems of the monodromy action: minimal ones from point
    pairs, closed under joins, plus the coarse one-block system."""
    d = o.d
    systems = {_close_blocks(o, [(0, 0)])} if d == 1 else set()
    for i in range(1, d):
        systems.add(_close_blocks(o, [(0, i)]))
    # joins: merging the seed pairs of both systems yields the join
    changed = True
    while changed:
        changed = False
        for p in list(systems):
            for q in list(systems):
                seeds = [(blk[0], x) for blk in p for x in blk[1:]]
                seeds += [(blk[0], x) for blk in q for x in blk[1:]]
                j = _close_blocks(o, seeds) if seeds else p
                if j not in systems:
                    systems.add(j)
                    changed = True
    if d > 1:
        systems.add(tuple([tuple(range(d))]))
    return sorted(systems, key=lambda p: (len(p), p))


def quotient_covers(o: Origami):
    """Proper quotient origamis, one per block system with fewer than d
    blocks (the torus always appears); each comes with the square map."""
    out = []
    for part in block_systems(o):
        b = len(part)
        if b == o.d and o.d > 1:
            continue
        # blocks are listed with increasing minima; number them in order
        pi = [None] * o.d
        for k, blk in enumerate(part):
            for i in blk:
                pi[i] = k
        rq = Permutation([pi[o.r(blk[0])] for blk in part])
        uq = Permutation([pi[o.u(blk[0])] for blk in part])
        q = Origami(rq, uq)
        for i in range(o.d):  # intertwining is exact by construction
            assert pi[o.r(i)] == rq(pi[i]) and pi[o.u(i)] == uq(pi[i])
        out.append((q, tuple(pi)))
    return out
