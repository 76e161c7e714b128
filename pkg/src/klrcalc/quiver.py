"""Quivers, dimension vectors, colored sequences and symmetric-group combinatorics.

A quiver here is a finite directed graph without loops.  Everything downstream
(sequences, divided-power pairs, permutation actions, local degree data) is
exact integer combinatorics and lives in this module.  All enumerations are
emitted in a deterministic order: vertices keep their input order and
sequences are sorted lexicographically in that order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _itertools_permutations


class QuiverError(ValueError):
    """Raised for malformed quiver data (loops, unknown vertices, bad counts)."""


# ---------------------------------------------------------------------------
# quivers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quiver:
    """A finite loop-free quiver: ordered vertices and arrow multiplicities.

    ``arrows`` maps ordered pairs ``(i, j)`` to the number of arrows ``i -> j``;
    absent pairs mean zero arrows.
    """

    vertices: tuple
    arrows: tuple  # tuple of ((i, j), count), normalized & sorted

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise QuiverError("duplicate vertices")
        for (i, j), c in self.arrows:
            if i == j:
                raise QuiverError("loop at vertex %r" % (i,))
            if i not in seen or j not in seen:
                raise QuiverError("arrow endpoint not a vertex: %r -> %r" % (i, j))
            if not isinstance(c, int) or c <= 0:
                raise QuiverError("arrow count must be a positive integer")

    @staticmethod
    def make(vertices, arrows):
        """Build a quiver from any iterable of vertices and (i, j, count) triples."""
        vs = tuple(vertices)
        acc = {}
        for item in arrows:
            if len(item) == 3:
                i, j, c = item
            else:
                i, j = item
                c = 1
            acc[(i, j)] = acc.get((i, j), 0) + int(c)
        order = {v: k for k, v in enumerate(vs)}
        for (i, j) in acc:
            if i not in order or j not in order:
                raise QuiverError("arrow endpoint not a vertex: %r -> %r" % (i, j))
        norm = tuple(sorted(acc.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])))
        return Quiver(vs, norm)

    @staticmethod
    def from_json(text):
        """Parse the documented JSON schema; rejects loops and unknown vertices."""
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError("invalid JSON: %s" % exc) from None
        if not isinstance(doc, dict) or "vertices" not in doc:
            raise QuiverError('expected an object with "vertices" and "arrows"')
        vs = doc["vertices"]
        if not isinstance(vs, list) or not vs or not all(isinstance(v, str) for v in vs):
            raise QuiverError('"vertices" must be a non-empty list of strings')
        raw = doc.get("arrows", [])
        if not isinstance(raw, list):
            raise QuiverError('"arrows" must be a list of [src, dst, count] triples')
        triples = []
        for a in raw:
            if not isinstance(a, list) or len(a) not in (2, 3):
                raise QuiverError("bad arrow entry: %r" % (a,))
            triples.append(tuple(a))
        return Quiver.make(vs, triples)

    def to_json(self):
        return json.dumps(
            {"vertices": list(self.vertices),
             "arrows": [[i, j, c] for (i, j), c in self.arrows]},
            sort_keys=True)

    def vertex_index(self, v):
        try:
            return self.vertices.index(v)
        except ValueError:
            raise QuiverError("unknown vertex %r" % (v,)) from None

    def h(self, i, j):
        """Number of arrows i -> j."""
        self.vertex_index(i), self.vertex_index(j)
        return dict(self.arrows).get((i, j), 0)

    def cartan(self, i, j):
        """Symmetric Cartan pairing: 2 on the diagonal, -(h_ij + h_ji) off it."""
        if i == j:
            self.vertex_index(i)
            return 2
        return -self.h(i, j) - self.h(j, i)


# ---------------------------------------------------------------------------
# dimension vectors and sequences
# ---------------------------------------------------------------------------

def normalize_nu(q: Quiver, nu) -> tuple:
    """Canonical hashable form of a dimension vector: ((vertex, count), ...).

    Accepts a dict or an already-normalized tuple; zero entries are dropped,
    vertices follow the quiver order.
    """
    if isinstance(nu, tuple):
        nu = dict(nu)
    out = []
    for v, c in nu.items():
        q.vertex_index(v)
        if not isinstance(c, int) or c < 0:
            raise QuiverError("dimension vector entries must be non-negative integers")
    for v in q.vertices:
        c = nu.get(v, 0)
        if c:
            out.append((v, c))
    return tuple(out)


def nu_total(nu) -> int:
    return sum(c for _, c in nu)


def nu_of_seq(q: Quiver, seq) -> tuple:
    counts = {}
    for v in seq:
        counts[v] = counts.get(v, 0) + 1
    return normalize_nu(q, counts)


def base_seq(q: Quiver, nu) -> tuple:
    """The lexicographically least sequence in I^nu (vertex input order)."""
    nu = normalize_nu(q, nu)
    out = []
    for v, c in nu:
        out.extend([v] * c)
    return tuple(out)


@lru_cache(maxsize=None)
def _color_seqs(q: Quiver, nu) -> tuple:
    order = {v: k for k, v in enumerate(q.vertices)}
    base = base_seq(q, nu)
    seqs = sorted(set(_itertools_permutations(base)),
                  key=lambda s: tuple(order[v] for v in s))
    return tuple(seqs)


def color_seqs(q: Quiver, nu):
    """All sequences in I^nu, lexicographically ordered."""
    return _color_seqs(q, normalize_nu(q, nu))


# ---------------------------------------------------------------------------
# divided-power pairs y = (i, a)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivSeq:
    """A pair of a color sequence and positive powers, sum a_l * i_l = nu."""

    colors: tuple
    powers: tuple

    def __post_init__(self):
        if len(self.colors) != len(self.powers):
            raise QuiverError("colors and powers must have equal length")
        if not all(isinstance(a, int) and a > 0 for a in self.powers):
            raise QuiverError("powers must be positive integers")

    def expand(self) -> tuple:
        """Repeat each color a_l times, in order."""
        out = []
        for v, a in zip(self.colors, self.powers):
            out.extend([v] * a)
        return tuple(out)

    def concat(self, other: "DivSeq") -> "DivSeq":
        return DivSeq(self.colors + other.colors, self.powers + other.powers)

    def total(self) -> int:
        return sum(self.powers)


def ell(n: int) -> int:
    """Length of the longest element of the symmetric group on n letters."""
    return n * (n - 1) // 2


def ell_nu(nu) -> int:
    return sum(ell(c) for _, c in nu)


def ell_tuple(powers) -> int:
    return sum(ell(a) for a in powers)


def enumerate_Y(q: Quiver, nu, cap: int = 6):
    """All divided-power pairs of content nu, lexicographic, bounded by the cap."""
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    if m > cap:
        raise QuiverError("|nu| = %d exceeds the enumeration cap %d" % (m, cap))
    order = {v: k for k, v in enumerate(q.vertices)}
    out = []

    def rec(remaining, prefix_c, prefix_a):
        if all(c == 0 for _, c in remaining.items()):
            out.append(DivSeq(tuple(prefix_c), tuple(prefix_a)))
            return
        for v in q.vertices:
            avail = remaining.get(v, 0)
            if avail == 0:
                continue
            for a in range(1, avail + 1):
                remaining[v] = avail - a
                rec(remaining, prefix_c + [v], prefix_a + [a])
                remaining[v] = avail

    rec(dict(nu), [], [])
    out.sort(key=lambda y: (len(y.colors),
                            tuple(order[v] for v in y.colors),
                            y.powers))
    return out


# ---------------------------------------------------------------------------
# permutations (0-based one-line notation: w[k] = image of k)
# ---------------------------------------------------------------------------

def perm_identity(m):
    return tuple(range(m))


def perm_compose(u, v):
    """(u o v)(k) = u(v(k))."""
    return tuple(u[v[k]] for k in range(len(u)))


def perm_inverse(w):
    inv = [0] * len(w)
    for k, wk in enumerate(w):
        inv[wk] = k
    return tuple(inv)


def perm_length(w):
    """Coxeter length = inversion count."""
    m = len(w)
    return sum(1 for a in range(m) for b in range(a + 1, m) if w[a] > w[b])


def simple_refl(m, l):
    """The transposition s_l (1-based l, swapping l and l+1)."""
    if not 1 <= l <= m - 1:
        raise QuiverError("position %d out of range for m = %d" % (l, m))
    w = list(range(m))
    w[l - 1], w[l] = w[l], w[l - 1]
    return tuple(w)


def perm_act(w, seq):
    """Left action on sequences: w(i) = i o w^{-1}."""
    if len(w) != len(seq):
        raise QuiverError("permutation/sequence size mismatch")
    out = [None] * len(seq)
    for k in range(len(seq)):
        out[w[k]] = seq[k]
    return tuple(out)


def swap_seq(seq, l):
    """The sequence s_l(i): entries at 1-based positions l, l+1 exchanged."""
    if not 1 <= l <= len(seq) - 1:
        raise QuiverError("position %d out of range" % l)
    out = list(seq)
    out[l - 1], out[l] = out[l], out[l - 1]
    return tuple(out)


@lru_cache(maxsize=None)
def all_perms(m):
    return tuple(sorted(_itertools_permutations(range(m))))


@lru_cache(maxsize=None)
def canonical_word(w):
    """The canonical (lexicographically least) reduced word of w.

    Produced by straightening from position 1: repeatedly strip the smallest
    left descent.  All PBW data downstream depends on this choice.
    """
    m = len(w)
    word = []
    cur = w
    inv = list(perm_inverse(cur))
    while True:
        for l in range(1, m):
            if inv[l - 1] > inv[l]:
                word.append(l)
                cur = perm_compose(simple_refl(m, l), cur)
                inv = list(perm_inverse(cur))
                break
        else:
            break
    return tuple(word)


def perm_from_word(word, m):
    p = perm_identity(m)
    for l in word:
        p = perm_compose(p, simple_refl(m, l))
    return p


@lru_cache(maxsize=None)
def all_reduced_words(w):
    """Every reduced word of w, as a sorted tuple of letter tuples."""
    m = len(w)
    if perm_length(w) == 0:
        return ((),)
    out = []
    inv = perm_inverse(w)
    for l in range(1, m):
        if inv[l - 1] > inv[l]:  # left descent
            rest = perm_compose(simple_refl(m, l), w)
            for u in all_reduced_words(rest):
                out.append((l,) + u)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def bruhat_leq(u, w):
    """Bruhat order via the subword property on the canonical word of w."""
    lu, lw = perm_length(u), perm_length(w)
    if lu > lw:
        return False
    if u == w:
        return True
    word = canonical_word(w)
    m = len(w)

    # scan subsequences of the fixed reduced word
    n = len(word)
    for mask in range(1 << n):
        if bin(mask).count("1") != lu:
            continue
        sub = tuple(word[k] for k in range(n) if mask >> k & 1)
        if perm_from_word(sub, m) == u:
            return True
    return False


def longest_perm(m):
    return tuple(range(m - 1, -1, -1))


# ---------------------------------------------------------------------------
# local degree data (positions are 1-based, 1 <= l <= m-1)
# ---------------------------------------------------------------------------

def h_loc(q: Quiver, seq, l: int) -> int:
    """h_i(l): arrow count between the colors at l, l+1, or -1 on equal colors."""
    if not 1 <= l <= len(seq) - 1:
        raise QuiverError("position %d out of range" % l)
    a, b = seq[l - 1], seq[l]
    if a == b:
        return -1
    return q.h(a, b)


def a_loc(q: Quiver, seq, l: int) -> int:
    """a_i(l): degree of the crossing at l; -2 on equal colors, -i.j otherwise."""
    if not 1 <= l <= len(seq) - 1:
        raise QuiverError("position %d out of range" % l)
    a, b = seq[l - 1], seq[l]
    if a == b:
        return -2
    return -q.cartan(a, b)


def dim_tilde_f(q: Quiver, seq) -> int:
    """The dimension d_i of the incidence variety over the sequence i.

    d_i = ell_nu + sum over pairs l' <= l of the arrow count from i_l to i_l'.
    """
    nu = nu_of_seq(q, seq)
    d = ell_nu(nu)
    for l in range(len(seq)):
        for lp in range(l + 1):
            d += q.h(seq[l], seq[lp])
    return d
