"""Exact substrate: permutations, free words, rational/integer linear algebra.

Global conventions, used by every module of the package:

* permutations act on 0-based points internally; 1-based only at the
  serialization boundary;
* composition applies the *right* operand first: ``(a * b)(i) = a(b(i))``;
* a word ``"abc"`` denotes the group element a*b*c, so evaluating it at a
  point applies the last letter first;
* inverse letters are written by swapping case (``'X'`` is the inverse of
  ``'x'``, ``'t'`` the inverse of ``'T'``);
* all arithmetic is arbitrary-precision ``int`` / ``fractions.Fraction``;
  there is no floating point anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations as _all_permutations

from .errors import (
    DegenerateForm,
    DegreeMismatch,
    NonUnimodular,
    OrderMismatch,
)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

class Permutation:
    """A bijection of {0, ..., d-1} stored by its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise DegreeMismatch("not a bijection: %r" % (images,))
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        # apply ``other`` first
        if self.degree != other.degree:
            raise DegreeMismatch("degrees %d and %d" % (self.degree, other.degree))
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, with_fixed=True):
        """Cycle decomposition, each cycle starting at its minimum."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if with_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self):
        n = 1
        for c in self.cycles():
            n = n * len(c) // _gcd(n, len(c))
        return n

    @staticmethod
    def identity(d):
        return Permutation(range(d))

    @staticmethod
    def from_cycles(cycles, degree):
        """Build from 0-based cycles; unmentioned points are fixed."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)((cyc[0],))):
                if a in seen:
                    raise DegreeMismatch("point %d repeated in cycles" % a)
                seen.add(a)
                if not 0 <= a < degree:
                    raise DegreeMismatch("point %d out of range" % a)
                images[a] = b
        return Permutation(images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "id[%d]" % self.degree
        return "".join("(%s)" % ",".join(str(i + 1) for i in c) for c in nontrivial)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def perm_compose(a: Permutation, b: Permutation) -> Permutation:
    """(a o b)(i) = a(b(i)): apply ``b`` first."""
    return a * b


def perms_transitive(perms, degree):
    if degree == 0:
        return False
    seen = {0}
    stack = [0]
    gens = list(perms) + [p.inverse() for p in perms]
    while stack:
        i = stack.pop()
        for p in gens:
            j = p(i)
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == degree


def simultaneous_conjugacy(r1, u1, r2, u2):
    """A permutation t with t*r1*t^-1 = r2 and t*u1*t^-1 = u2, or None.

    Both pairs must act transitively; labels are propagated breadth-first
    along r- and u-edges from each candidate image of point 0.
    """
    d = r1.degree
    if not (u1.degree == r2.degree == u2.degree == d):
        raise DegreeMismatch("all four permutations must have equal degree")
    r1i, u1i = r1.inverse(), u1.inverse()
    r2i, u2i = r2.inverse(), u2.inverse()
    moves1 = (r1, u1, r1i, u1i)
    moves2 = (r2, u2, r2i, u2i)
    for target in range(d):
        tau = [-1] * d
        tau[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            i = stack.pop()
            for m1, m2 in zip(moves1, moves2):
                j, tj = m1(i), m2(tau[i])
                if tau[j] == -1:
                    tau[j] = tj
                    stack.append(j)
                elif tau[j] != tj:
                    ok = False
                    break
        if ok and -1 not in tau:
            t = Permutation(tau)
            if t * r1 * t.inverse() == r2 and t * u1 * t.inverse() == u2:
                return t
    return None


def simultaneous_conjugacy_bruteforce(r1, u1, r2, u2):
    """Oracle: try all d! permutations. Only sensible for small d."""
    d = r1.degree
    for images in _all_permutations(range(d)):
        t = Permutation(images)
        if t * r1 * t.inverse() == r2 and t * u1 * t.inverse() == u2:
            return t
    return None


# ---------------------------------------------------------------------------
# free words over a two-letter alphabet
# ---------------------------------------------------------------------------

def invert_letter(c: str) -> str:
    return c.swapcase()


def invert_word(w: str) -> str:
    return "".join(invert_letter(c) for c in reversed(w))


def reduce_word(w) -> str:
    """Free reduction: cancel adjacent inverse pairs."""
    out = []
    for c in w:
        if out and out[-1] == invert_letter(c):
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def word_mul(*words: str) -> str:
    return reduce_word("".join(words))


# ---------------------------------------------------------------------------
# rational matrices (lists of lists of Fraction)
# ---------------------------------------------------------------------------

def mat_fraction(rows):
    return [[Fraction(x) for x in row] for row in rows]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(row) == k for row in a)
    return [[sum(a[i][l] * b[l][j] for l in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def mat_identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def rref(rows):
    """Reduced row echelon form (deterministic, exact).

    Returns (echelon rows without zero rows, pivot column list).
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_Q(rows):
    """Exact rational basis of the right kernel of a matrix.

    Basis vectors are indexed by the free columns of the reduced row
    echelon form, in column order; deterministic.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -ech[r][fc]
        basis.append(v)
    return basis


def mat_inverse(a):
    """Exact inverse of a square rational matrix."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    ech, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in ech[:n]]


def solve_right(a, b_cols):
    """Solve a * X = B for X, where B is given by columns; exact.

    Raises ValueError when some column is not in the column span.
    """
    n = len(a)
    ncols_a = len(a[0])
    aug = [list(map(Fraction, a[i])) + [Fraction(b[i]) for b in b_cols]
           for i in range(n)]
    ech, pivots = rref(aug)
    if any(p >= ncols_a for p in pivots):
        raise ValueError("inconsistent linear system")
    xs = []
    for k in range(len(b_cols)):
        x = [Fraction(0)] * ncols_a
        for r, pc in enumerate(pivots):
            x[pc] = ech[r][ncols_a + k]
        xs.append(x)
    return xs


# ---------------------------------------------------------------------------
# integer lattice tools
# ---------------------------------------------------------------------------

def integer_kernel(rows):
    """Basis of {v in Z^n : A v = 0} for an integer matrix A.

    Column reduction by unimodular operations: kernels of maps from Z^n
    are saturated, so the returned vectors generate the full lattice of
    integer solutions.
    """
    if not rows:
        return []
    nrows, ncols = len(rows), len(rows[0])
    a = [list(map(int, row)) for row in rows]
    u = mat_identity(ncols)  # column operations mirrored on u
    col = 0
    for row in range(nrows):
        if col >= ncols:
            break
        # clear row ``row`` to a single entry in column ``col``
        while True:
            nz = [c for c in range(col, ncols) if a[row][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda c: (abs(a[row][c]), c))
            if piv != col:
                for m in (a, u):
                    for r in m:
                        r[col], r[piv] = r[piv], r[col]
            done = True
            for c in range(col + 1, ncols):
                if a[row][c] != 0:
                    q = a[row][c] // a[row][col]
                    for m in (a, u):
                        for r in m:
                            r[c] -= q * r[col]
                    if a[row][c] != 0:
                        done = False
            if done:
                break
        if a[row][col] != 0:
            col += 1
    kernel_cols = []
    for c in range(ncols):
        if all(a[r][c] == 0 for r in range(nrows)):
            kernel_cols.append([u[r][c] for r in range(ncols)])
    return kernel_cols


def saturate_subspace(rational_basis, n):
    """Lattice basis of span_Q(basis) `intersect` Z^n."""
    if not rational_basis:
        return []
    # the lattice is the integer kernel of any constraint matrix for the span
    constraints = kernel_Q(rational_basis)
    if not constraints:
        return mat_identity(n)
    lcm = 1
    for row in constraints:
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    int_rows = [[int(x * lcm) for x in row] for row in constraints]
    return integer_kernel(int_rows)


# ---------------------------------------------------------------------------
# alternating forms
# ---------------------------------------------------------------------------

class AlternatingForm:
    """A square integer antisymmetric Gram matrix."""

    __slots__ = ("gram",)

    def __init__(self, gram):
        gram = [list(map(int, row)) for row in gram]
        n = len(gram)
        for i in range(n):
            if len(gram[i]) != n or gram[i][i] != 0:
                raise DegenerateForm("gram must be square with zero diagonal")
            for j in range(n):
                if gram[i][j] != -gram[j][i]:
                    raise DegenerateForm("gram must be antisymmetric")
        self.gram = gram

    @property
    def dim(self):
        return len(self.gram)

    def pair(self, v, w):
        g = self.gram
        return sum(v[i] * g[i][j] * w[j]
                   for i in range(len(g)) for j in range(len(g)) if g[i][j])


def standard_symplectic_gram(two_g):
    """Block-diagonal J with blocks [[0,1],[-1,0]]."""
    g = [[0] * two_g for _ in range(two_g)]
    for k in range(0, two_g, 2):
        g[k][k + 1] = 1
        g[k + 1][k] = -1
    return g


def _symplectic_pairs(form: AlternatingForm):
    """Core reduction: unimodular basis change splitting off hyperbolic pairs.

    Returns (pairs, radical, scale_list): ``pairs`` is a list of (e, f)
    integer vectors with form(e, f) = k_i > 0 and zero pairing with
    everything else extracted later; ``radical`` spans ker(form) as a
    direct summand of Z^n.  The whole collection stays a basis of Z^n.
    """
    n = form.dim
    basis = [list(row) for row in mat_identity(n)]

    def phi(v, w):
        return form.pair(v, w)

    pairs = []
    scales = []
    active = basis
    while True:
        best = None
        for i in range(len(active)):
            for j in range(i + 1, len(active)):
                val = phi(active[i], active[j])
                if val != 0 and (best is None or abs(val) < abs(best[2])):
                    best = (i, j, val)
        if best is None:
            return pairs, active, scales
        i, j, val = best
        # Euclidean steps until the minimal pairing divides every pairing
        # against the chosen pair; the minimum strictly decreases.
        while True:
            e, f = active[i], active[j]
            c = phi(e, f)
            reduced = False
            for k in range(len(active)):
                if k in (i, j):
                    continue
                a = phi(e, active[k])
                if a % c != 0:
                    q = a // c
                    active[k] = [x - q * y for x, y in zip(active[k], f)]
                    if abs(phi(e, active[k])) < abs(c):
                        j, reduced = k, True
                        break
                b = phi(f, active[k])
                if b % c != 0:
                    q = b // c
                    active[k] = [x + q * y for x, y in zip(active[k], e)]
                    if abs(phi(f, active[k])) < abs(c):
                        i, j, reduced = j, k, True
                        break
            if not reduced:
                break
        e, f = active[i], active[j]
        c = phi(e, f)
        if c < 0:
            f = [-x for x in f]
            c = -c
        rest = []
        for k in range(len(active)):
            if k in (i, j):
                continue
            v = active[k]
            a, b = phi(e, v), phi(f, v)
            # a, b are divisible by c after the loop above
            v = [x - (a // c) * y + (b // c) * z for x, y, z in zip(v, f, e)]
            rest.append(v)
        pairs.append((e, f))
        scales.append(c)
        active = rest


def symplectic_reduce(form: AlternatingForm):
    """Integer radical basis plus a symplectic basis with Gram J.

    Raises NonUnimodular when the induced form on the quotient by the
    radical is not unimodular (the closed-surface intersection form
    always is).
    """
    pairs, radical, scales = _symplectic_pairs(form)
    if any(c != 1 for c in scales):
        raise NonUnimodular("pair scales %r" % (scales,))
    basis = []
    for e, f in pairs:
        basis.extend((e, f))
    return radical, basis


def scaled_symplectic_basis_rank2(form: AlternatingForm):
    """Basis (e, f) of Z^2 with Gram [[0,k],[-k,0]], k > 0 minimal."""
    if form.dim != 2:
        raise DegenerateForm("expected a rank-2 lattice form")
    pairs, radical, scales = _symplectic_pairs(form)
    if not pairs:
        raise DegenerateForm("form vanishes")
    assert not radical
    (e, f), k = pairs[0], scales[0]
    return [e, f], k


# ---------------------------------------------------------------------------
# cyclotomic kernels
# ---------------------------------------------------------------------------

def cyclotomic_polynomial(n):
    """Integer coefficient list of Phi_n, lowest degree first."""
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact division
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_polynomial(d))
    return num


def _poly_divexact(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q[i] = c // den[-1]
        for j, dj in enumerate(den):
            num[i + j] -= q[i] * dj
    assert all(c == 0 for c in num)
    return q


def cyclotomic_kernel(m, n, d):
    """Basis of ker Phi_d(m) for a rational square matrix with m^n = 1."""
    if n % d != 0:
        raise OrderMismatch("%d does not divide %d" % (d, n))
    size = len(m)
    power = mat_identity(size, Fraction(1))
    acc = None
    for c in cyclotomic_polynomial(d):
        if c:
            term = [[Fraction(c) * power[i][j] for j in range(size)] for i in range(size)]
            acc = term if acc is None else [[x + y for x, y in zip(r1, r2)]
                                            for r1, r2 in zip(acc, term)]
        power = mat_mul(power, m)
    # power ran one step past deg Phi_d; recompute m^n honestly
    mn = mat_identity(size, Fraction(1))
    for _ in range(n):
        mn = mat_mul(mn, m)
    if not mat_eq(mn, mat_identity(size, Fraction(1))):
        raise OrderMismatch("matrix order does not divide %d" % n)
    return kernel_Q(acc)
