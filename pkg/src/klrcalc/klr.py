"""The KLR algebra of a loop-free quiver.

An element is kept in PBW normal form: a finitely supported map

    (source sequence i, permutation w)  ->  coefficient polynomial f,

standing for f * sigma_word(i, w), where sigma_word(i, w) is the product of
intertwiner generators along the canonical reduced word of w, mapping the
i-component of the polynomial module to the w(i)-component, and f lives in
the variables of the target component.

Multiplication rewrites products of normal forms back into normal form using
the defining relations of the presentation:

* polynomial coefficients are pushed left through crossing words (spawning
  divided-difference correction terms on equal colors),
* appended crossings either extend a reduced word (straightened to the
  canonical word by commutation/braid moves, braid moves contributing
  polynomial correction terms) or collapse by the quadratic relation.

Termination: every correction term involves strictly fewer crossing letters
than the expression that spawned it, so the recursion is well founded.
The faithful polynomial representation (``apply``) provides an independent
cross-check, exercised heavily by the test suite.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations_with_replacement

from .polyring import MPoly
from .quiver import (
    QuiverError, a_loc, all_perms, base_seq, canonical_word,
    color_seqs, dim_tilde_f, h_loc, normalize_nu, nu_total, perm_act,
    perm_compose, perm_from_word, perm_identity, perm_inverse, perm_length,
    simple_refl, swap_seq)


# ---------------------------------------------------------------------------
# the polynomial module
# ---------------------------------------------------------------------------

class PolyRep:
    """An element of the polynomial module: one polynomial per color sequence."""

    __slots__ = ("q", "nu", "m", "components")

    def __init__(self, q, nu, components=None):
        self.q = q
        self.nu = normalize_nu(q, nu)
        self.m = nu_total(self.nu)
        comps = {}
        if components:
            valid = set(color_seqs(q, self.nu))
            for seq, poly in components.items():
                seq = tuple(seq)
                if seq not in valid:
                    raise QuiverError("sequence %r is not in I^nu" % (seq,))
                if not poly.is_zero():
                    comps[seq] = poly
        self.components = comps

    @staticmethod
    def monomial(q, nu, seq, exps=None, coeff=1):
        m = nu_total(normalize_nu(q, nu))
        if exps is None:
            exps = (0,) * m
        return PolyRep(q, nu, {tuple(seq): MPoly.monomial(m, exps, coeff)})

    def is_zero(self):
        return not self.components

    def __add__(self, other):
        out = dict(self.components)
        for seq, p in other.components.items():
            s = out.get(seq)
            out[seq] = p if s is None else s + p
        return PolyRep(self.q, self.nu, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return PolyRep(self.q, self.nu,
                       {s: p.scale(c) for s, p in self.components.items()})

    def __eq__(self, other):
        return (isinstance(other, PolyRep) and self.nu == other.nu
                and self.components == other.components)

    def __repr__(self):
        if not self.components:
            return "PolyRep(0)"
        bits = ["%s: %s" % (",".join(s), p.to_text()) for s, p in sorted(self.components.items())]
        return "PolyRep(%s)" % "; ".join(bits)


def degree_offset(q, nu, seq):
    """Normalization offset of the component grading: unit of F_i has this degree.

    The base sequence (lexicographically least) is pinned at offset zero; the
    offset of any other component is the difference of incidence dimensions,
    which agrees with the crossing-degree sum along any word reaching it.
    """
    nu = normalize_nu(q, nu)
    return dim_tilde_f(q, base_seq(q, nu)) - dim_tilde_f(q, seq)


def polyrep_degree(q, nu, rep):
    """Module degree of a homogeneous PolyRep element, or None."""
    degs = set()
    for seq, poly in rep.components.items():
        d = poly.homogeneous_degree()
        if d is None:
            return None
        degs.add(2 * d + degree_offset(q, nu, seq))
    if len(degs) > 1:
        return None
    return degs.pop() if degs else 0


# ---------------------------------------------------------------------------
# crossing degrees and word data
# ---------------------------------------------------------------------------

def sigma_word_degree(q, seq, w):
    """Sum of crossing degrees along the canonical word of w with source seq."""
    total = 0
    cur = tuple(seq)
    for l in reversed(canonical_word(w)):
        total += a_loc(q, cur, l)
        cur = swap_seq(cur, l)
    return total


def word_degree_along(q, seq, word):
    """Crossing-degree sum along an arbitrary word; used for independence tests."""
    total = 0
    cur = tuple(seq)
    for l in reversed(word):
        total += a_loc(q, cur, l)
        cur = swap_seq(cur, l)
    return total


def _tau_sign(q, seq, w):
    """(-1)^(sum of h-exponents) converting sigma-words to tau-words."""
    par = 0
    cur = tuple(seq)
    for l in reversed(canonical_word(w)):
        par += h_loc(q, cur, l)
        cur = swap_seq(cur, l)
    return -1 if par % 2 else 1


# ---------------------------------------------------------------------------
# KLR elements in PBW normal form
# ---------------------------------------------------------------------------

class KLRElement:
    """A KLR algebra element in PBW normal form (sigma-flavored words)."""

    __slots__ = ("q", "nu", "m", "terms")

    def __init__(self, q, nu, terms=None):
        self.q = q
        self.nu = normalize_nu(q, nu)
        self.m = nu_total(self.nu)
        out = {}
        if terms:
            for (seq, w), poly in terms.items():
                if not poly.is_zero():
                    out[(tuple(seq), tuple(w))] = poly
        self.terms = out

    # -- ring structure ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, p in other.terms.items():
            s = out.get(key)
            out[key] = p if s is None else s + p
        return KLRElement(self.q, self.nu, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return KLRElement(self.q, self.nu,
                          {k: p.scale(c) for k, p in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, KLRElement) and self.nu == other.nu
                and self.terms == other.terms)

    def _check(self, other):
        if self.nu != other.nu:
            raise QuiverError("dimension vector mismatch")

    def __mul__(self, other):
        return multiply(self, other)

    def truncate(self, left=None, right=None):
        """Idempotent truncation: keep terms with w(i) = left and/or i = right."""
        out = {}
        for (seq, w), p in self.terms.items():
            if right is not None and seq != tuple(right):
                continue
            if left is not None and perm_act(w, seq) != tuple(left):
                continue
            out[(seq, w)] = p
        return KLRElement(self.q, self.nu, out)

    def degree(self):
        """Algebra degree if homogeneous, else None."""
        degs = set()
        for (seq, w), p in self.terms.items():
            d = p.homogeneous_degree()
            if d is None:
                return None
            degs.add(2 * d + sigma_word_degree(self.q, seq, w))
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def to_json_obj(self):
        out = []
        for (seq, w), p in sorted(self.terms.items()):
            out.append({"source": list(seq),
                        "permutation": [k + 1 for k in w],
                        "coefficient": p.to_text()})
        return out

    def __repr__(self):
        if not self.terms:
            return "KLRElement(0)"
        bits = []
        for (seq, w), p in sorted(self.terms.items()):
            bits.append("(%s | %s | %s)" % (",".join(seq), w, p.to_text()))
        return "KLRElement[%s]" % "; ".join(bits)


def gen_idem(q, nu, seq):
    nu = normalize_nu(q, nu)
    _validate_seq(q, nu, seq)
    m = nu_total(nu)
    return KLRElement(q, nu, {(tuple(seq), perm_identity(m)): MPoly.const(m, 1)})


def gen_x(q, nu, seq, k):
    nu = normalize_nu(q, nu)
    _validate_seq(q, nu, seq)
    m = nu_total(nu)
    if not 1 <= k <= m:
        raise QuiverError("position %d out of range" % k)
    return KLRElement(q, nu, {(tuple(seq), perm_identity(m)): MPoly.var(m, k)})


def gen_sigma(q, nu, seq, l):
    nu = normalize_nu(q, nu)
    _validate_seq(q, nu, seq)
    m = nu_total(nu)
    if not 1 <= l <= m - 1:
        raise QuiverError("position %d out of range" % l)
    return KLRElement(q, nu, {(tuple(seq), simple_refl(m, l)): MPoly.const(m, 1)})


def gen_tau(q, nu, seq, l):
    """The sign-twisted crossing generator of the presentation."""
    sign = -1 if h_loc(q, tuple(seq), l) % 2 else 1
    return gen_sigma(q, nu, seq, l).scale(sign)


def _validate_seq(q, nu, seq):
    if tuple(seq) not in color_seqs(q, nu):
        raise QuiverError("sequence %r is not in I^nu" % (seq,))


def pbw_basis(q, nu, seq, w):
    """The PBW word element with source seq along the canonical word of w."""
    nu = normalize_nu(q, nu)
    _validate_seq(q, nu, seq)
    m = nu_total(nu)
    if len(w) != m:
        raise QuiverError("permutation size mismatch")
    return KLRElement(q, nu, {(tuple(seq), tuple(w)): MPoly.const(m, 1)})


# ---------------------------------------------------------------------------
# the faithful action on the polynomial module
# ---------------------------------------------------------------------------

def _sigma_step(q, comp, l, poly):
    """Apply one crossing generator to a polynomial on the given component."""
    if comp[l - 1] == comp[l]:
        return comp, poly.demazure(l)
    h = q.h(comp[l - 1], comp[l])
    target = swap_seq(comp, l)
    m = poly.m
    moved = poly.swap_vars(l)
    if h:
        moved = moved * (MPoly.var(m, l + 1) - MPoly.var(m, l)) ** h
    return target, moved


def apply(z: KLRElement, rep: PolyRep) -> PolyRep:
    """Act by a normal-form element on the polynomial module."""
    if z.nu != rep.nu:
        raise QuiverError("dimension vector mismatch")
    out = {}
    for (seq, w), coeff in z.terms.items():
        g = rep.components.get(seq)
        if g is None:
            continue
        comp, cur = seq, g
        for l in reversed(canonical_word(w)):
            comp, cur = _sigma_step(z.q, comp, l, cur)
        cur = coeff * cur
        if cur.is_zero():
            continue
        prev = out.get(comp)
        out[comp] = cur if prev is None else prev + cur
    return PolyRep(z.q, z.nu, out)


# ---------------------------------------------------------------------------
# the rewriting engine (tau-flavored internally)
# ---------------------------------------------------------------------------

def _Q_poly(q, seq, l, m):
    """Q_{i,l}(x(l), x(l+1)): the quadratic-relation value on component i."""
    a_col, b_col = seq[l - 1], seq[l]
    if a_col == b_col:
        return MPoly.zero(m)
    h = q.h(a_col, b_col)
    a = h + q.h(b_col, a_col)
    sign = -1 if h % 2 else 1
    return ((MPoly.var(m, l) - MPoly.var(m, l + 1)) ** a).scale(sign)


def _braid_R(q, seq, l, m):
    """Braid correction polynomial on the component entering the 3-letter segment.

    Equals (Q(x(l+2), x(l+1)) - Q(x(l), x(l+1))) / (x(l+2) - x(l)), written as
    the telescoping sum so no division is performed; zero unless the colors at
    positions l and l+2 agree and differ from the color at l+1.
    """
    if seq[l - 1] != seq[l + 1]:
        return MPoly.zero(m)
    a_col, b_col = seq[l - 1], seq[l]
    if a_col == b_col:
        return MPoly.zero(m)
    h = q.h(a_col, b_col)
    a = h + q.h(b_col, a_col)
    sign = -1 if h % 2 else 1
    X = MPoly.var(m, l + 2) - MPoly.var(m, l + 1)
    Y = MPoly.var(m, l) - MPoly.var(m, l + 1)
    total = MPoly.zero(m)
    for p in range(a):
        total = total + X ** p * Y ** (a - 1 - p)
    return total.scale(sign)


@lru_cache(maxsize=None)
def _move_path(m, src_word, dst_word):
    """A chain of reduced words from src to dst using commutation/braid moves."""
    if src_word == dst_word:
        return (src_word,)
    seen = {src_word: None}
    frontier = [src_word]
    while frontier:
        nxt = []
        for word in frontier:
            for cand in _word_moves(word):
                if cand in seen:
                    continue
                seen[cand] = word
                if cand == dst_word:
                    path = [cand]
                    back = word
                    while back is not None:
                        path.append(back)
                        back = seen[back]
                    return tuple(reversed(path))
                nxt.append(cand)
        frontier = nxt
    raise AssertionError("reduced words of one permutation must be connected")


def _word_moves(word):
    out = []
    for p in range(len(word) - 1):
        if abs(word[p] - word[p + 1]) >= 2:
            out.append(word[:p] + (word[p + 1], word[p]) + word[p + 2:])
    for p in range(len(word) - 2):
        a, b = word[p], word[p + 1]
        if word[p + 2] == a and abs(a - b) == 1:
            out.append(word[:p] + (b, a, b) + word[p + 3:])
    return tuple(out)


def _nf_add(acc, key, poly):
    if poly.is_zero():
        return
    prev = acc.get(key)
    if prev is None:
        acc[key] = poly
    else:
        s = prev + poly
        if s.is_zero():
            del acc[key]
        else:
            acc[key] = s


def _word_nf(q, m, src, items):
    """Normal form of an operator expression (items leftmost-first) on F_src.

    Each item is ('gen', l) or ('poly', MPoly-on-the-source-at-that-point).
    """
    letters = [l for kind, l in items if kind == "gen"]
    target = perm_act(perm_from_word(tuple(letters), m), src)
    z = {(target, perm_identity(m)): MPoly.const(m, 1)}
    for kind, payload in items:
        if kind == "gen":
            z = _fold_gen(q, m, z, payload)
        else:
            z = _fold_poly(q, m, z, payload)
        if not z:
            break
    return z


def _fold_poly(q, m, z, g):
    """Right-multiply a tau normal form by a polynomial on its source component."""
    if g.is_zero():
        return {}
    out = {}
    for (src, w), f in z.items():
        word = canonical_word(w)
        r = len(word)
        comps = [None] * (r + 1)
        comps[r] = src
        for idx in range(r - 1, -1, -1):
            comps[idx] = swap_seq(comps[idx + 1], word[idx])
        cur = g
        for idx in range(r - 1, -1, -1):
            l = word[idx]
            comp = comps[idx + 1]  # source of the crossing at this letter
            if comp[l - 1] == comp[l]:
                corr = cur.demazure(l).scale(-1)
                if not corr.is_zero():
                    items = ([("gen", t) for t in word[:idx]]
                             + [("poly", corr)]
                             + [("gen", t) for t in word[idx + 1:]])
                    for key, p in _word_nf(q, m, src, items).items():
                        _nf_add(out, key, f * p)
            cur = cur.swap_vars(l)
        _nf_add(out, (src, w), f * cur)
    return out


def _fold_gen(q, m, z, l):
    """Right-multiply a tau normal form by the crossing generator at position l."""
    out = {}
    for (src, w), f in z.items():
        new_src = swap_seq(src, l)
        w_new = perm_compose(w, simple_refl(m, l))
        word = canonical_word(w)
        if perm_length(w_new) > perm_length(w):
            grown = word + (l,)
            canon = canonical_word(w_new)
            if grown == canon:
                _nf_add(out, (new_src, w_new), f)
                continue
            _nf_add(out, (new_src, w_new), f)
            for key, p in _straighten_corrections(q, m, new_src, grown, canon).items():
                _nf_add(out, key, f * p)
        else:
            # collapse: rewrite along (canonical word of w*s_l) + (l,), then
            # use the quadratic relation on the doubled letter
            shrunk = canonical_word(w_new)
            vword = shrunk + (l,)
            qpoly = _Q_poly(q, new_src, l, m)
            if not qpoly.is_zero():
                main = _fold_poly(q, m, {(new_src, w_new): MPoly.const(m, 1)}, qpoly)
                for key, p in main.items():
                    _nf_add(out, key, f * p)
            for key, p in _straighten_corrections(q, m, src, word, vword).items():
                folded = _fold_gen(q, m, {key: p}, l)
                for key2, p2 in folded.items():
                    _nf_add(out, key2, f * p2)
    return out


def _straighten_corrections(q, m, src, word_from, word_to):
    """Corrections accumulated when rewriting one reduced word into another.

    Returns the normal form of T(word_from) - T(word_to) on F_src (both words
    reduced for the same permutation): commutation moves are exact, each braid
    move contributes prefix * R * suffix with strictly fewer letters.
    """
    acc = {}
    path = _move_path(m, word_from, word_to)
    for step in range(len(path) - 1):
        cur, nxt = path[step], path[step + 1]
        p = _move_position(cur, nxt)
        if p is None:
            continue  # commutation move, exact
        a = cur[p]
        lmin = min(cur[p], cur[p + 1])
        suffix = cur[p + 3:]
        prefix = cur[:p]
        comp0 = perm_act(perm_from_word(suffix, m), src)
        R = _braid_R(q, comp0, lmin, m)
        if R.is_zero():
            continue
        sign = 1 if a == lmin + 1 else -1
        items = ([("gen", t) for t in prefix]
                 + [("poly", R.scale(sign))]
                 + [("gen", t) for t in suffix])
        for key, poly in _word_nf(q, m, src, items).items():
            _nf_add(acc, key, poly)
    return acc


def _move_position(cur, nxt):
    """Position of a braid move between adjacent words, or None for commutation."""
    diff = [p for p in range(len(cur)) if cur[p] != nxt[p]]
    if len(diff) == 2:
        return None
    return diff[0]


def _to_tau(z: KLRElement):
    return {(seq, w): p.scale(_tau_sign(z.q, seq, w))
            for (seq, w), p in z.terms.items()}


def _from_tau(q, nu, terms):
    out = {}
    for (seq, w), p in terms.items():
        out[(seq, w)] = p.scale(_tau_sign(q, seq, w))
    return KLRElement(q, nu, out)


def multiply(a: KLRElement, b: KLRElement) -> KLRElement:
    """Product in PBW normal form."""
    a._check(b)
    q, nu, m = a.q, a.nu, a.m
    ta, tb = _to_tau(a), _to_tau(b)
    acc = {}
    for (ia, wa), fa in ta.items():
        for (ib, wb), fb in tb.items():
            if ia != perm_act(wb, ib):
                continue
            z = {(ia, wa): MPoly.const(m, 1)}
            z = _fold_poly(q, m, z, fb)
            for l in canonical_word(wb):
                if not z:
                    break
                z = _fold_gen(q, m, z, l)
            for key, p in z.items():
                _nf_add(acc, key, fa * p)
    return _from_tau(q, nu, acc)


# ---------------------------------------------------------------------------
# the center
# ---------------------------------------------------------------------------

class CenterElem:
    """A symmetric polynomial in the Chern roots, invariant under the stabilizer."""

    __slots__ = ("q", "nu", "poly")

    def __init__(self, q, nu, poly: MPoly):
        self.q = q
        self.nu = normalize_nu(q, nu)
        base = base_seq(q, self.nu)
        for l in range(1, len(base)):
            if base[l - 1] == base[l] and not poly.is_symmetric_in(l):
                raise QuiverError("polynomial is not invariant under the stabilizer")
        self.poly = poly

    def on_component(self, seq):
        """The polynomial acting on a given component, via any flag choice."""
        base = base_seq(self.q, self.nu)
        used = [False] * len(base)
        v = []
        for color in seq:
            for p, c in enumerate(base):
                if not used[p] and c == color:
                    used[p] = True
                    v.append(p)
                    break
        return self.poly.reindex(perm_inverse(tuple(v)))


def center_act(c: CenterElem, z: KLRElement) -> KLRElement:
    if c.nu != z.nu:
        raise QuiverError("dimension vector mismatch")
    out = {}
    for (seq, w), f in z.terms.items():
        target = perm_act(w, seq)
        out[(seq, w)] = c.on_component(target) * f
    return KLRElement(z.q, z.nu, out)


def center_as_element(c: CenterElem) -> KLRElement:
    m = nu_total(c.nu)
    terms = {}
    for seq in color_seqs(c.q, c.nu):
        terms[(seq, perm_identity(m))] = c.on_component(seq)
    return KLRElement(c.q, c.nu, terms)


# ---------------------------------------------------------------------------
# graded dimensions
# ---------------------------------------------------------------------------

def graded_dim_hom(q, nu, seq_from, seq_to):
    """Graded dimension of the (seq_to, seq_from) idempotent truncation."""
    from .polyring import GradedSeries, QLaurent

    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    _validate_seq(q, nu, seq_from)
    _validate_seq(q, nu, seq_to)
    num = QLaurent.zero()
    for w in all_perms(m):
        if perm_act(w, tuple(seq_from)) == tuple(seq_to):
            num = num + QLaurent.q_power(sigma_word_degree(q, tuple(seq_from), w))
    return GradedSeries(num, m)


# ---------------------------------------------------------------------------
# presentation check (operator evaluation on the polynomial module)
# ---------------------------------------------------------------------------

def monomials_upto(m, bound):
    out = []
    for d in range(bound + 1):
        for comb in combinations_with_replacement(range(m), d):
            e = [0] * m
            for k in comb:
                e[k] += 1
            out.append(tuple(e))
    return out


def _op_idem(q, nu, i):
    def op(rep):
        p = rep.components.get(i)
        return PolyRep(q, nu, {} if p is None else {i: p})
    return op


def _op_kappa(q, nu, i, k):
    m = nu_total(normalize_nu(q, nu))
    xk = MPoly.var(m, k)

    def op(rep):
        p = rep.components.get(i)
        return PolyRep(q, nu, {} if p is None else {i: xk * p})
    return op


def _op_tau(q, nu, i, l):
    def op(rep):
        p = rep.components.get(i)
        if p is None:
            return PolyRep(q, nu, {})
        target, moved = _sigma_step(q, i, l, p)
        if h_loc(q, i, l) % 2:
            moved = moved.scale(-1)
        return PolyRep(q, nu, {target: moved})
    return op


def _op_scalar_poly(q, nu, i, poly):
    def op(rep):
        p = rep.components.get(i)
        return PolyRep(q, nu, {} if p is None else {i: poly * p})
    return op


def _compose(*ops):
    def op(rep):
        for f in reversed(ops):
            rep = f(rep)
        return rep
    return op


def _op_diff(op1, op2):
    return lambda rep: op1(rep) - op2(rep)


def _op_zero(q, nu):
    return lambda rep: PolyRep(q, nu, {})


def check_presentation(q, nu, degree_bound):
    """Evaluate every defining relation as an operator identity on monomials.

    All operators act through the polynomial module, with full idempotent
    routing, so typing and orthogonality are exercised for real.  Returns a
    report listing each relation instance with any violating witness.
    """
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    if m < 2:
        raise QuiverError("presentation check needs |nu| >= 2")
    seqs = color_seqs(q, nu)
    monos = monomials_upto(m, degree_bound)
    checks = []

    def run(name, instance, lhs, rhs, sources):
        for src in sources:
            for e in monos:
                rep = PolyRep.monomial(q, nu, src, e)
                r1, r2 = lhs(rep), rhs(rep)
                if r1 != r2:
                    checks.append({
                        "check": name, "instance": instance, "status": "fail",
                        "witness": {"source": list(src), "monomial": list(e),
                                    "lhs": repr(r1), "rhs": repr(r2)}})
                    return
        checks.append({"check": name, "instance": instance,
                       "status": "ok", "witness": None})

    idem = {i: _op_idem(q, nu, i) for i in seqs}

    for i in seqs:
        si = ",".join(i)
        for ip in seqs:
            rhs = idem[i] if i == ip else _op_zero(q, nu)
            run("idem_orthogonality", {"i": si, "i'": ",".join(ip)},
                _compose(idem[i], idem[ip]), rhs, [i, ip])
        for k in range(1, m + 1):
            kap = _op_kappa(q, nu, i, k)
            run("kappa_typing", {"i": si, "k": k},
                kap, _compose(idem[i], kap, idem[i]), seqs)
            for ip in seqs:
                for kp in range(1, m + 1):
                    kap2 = _op_kappa(q, nu, ip, kp)
                    run("kappa_commute", {"i": si, "i'": ",".join(ip), "k": k, "k'": kp},
                        _compose(kap, kap2), _compose(kap2, kap), [i, ip])
        for l in range(1, m):
            tau = _op_tau(q, nu, i, l)
            isl = swap_seq(i, l)
            run("tau_typing", {"i": si, "l": l},
                tau, _compose(idem[isl], tau, idem[i]), seqs)
            run("tau_quadratic", {"i": si, "l": l},
                _compose(_op_tau(q, nu, isl, l), tau),
                _op_scalar_poly(q, nu, i, _Q_poly(q, i, l, m)), [i])
            for k in range(1, m + 1):
                sk = l + 1 if k == l else (l if k == l + 1 else k)
                if i[l - 1] == i[l] and k == l:
                    rhs = _compose(_op_scalar_poly(q, nu, i, MPoly.const(m, -1)))
                elif i[l - 1] == i[l] and k == l + 1:
                    rhs = _op_scalar_poly(q, nu, i, MPoly.const(m, 1))
                else:
                    rhs = _op_zero(q, nu)
                run("tau_kappa", {"i": si, "l": l, "k": k},
                    _op_diff(_compose(tau, _op_kappa(q, nu, i, k)),
                             _compose(_op_kappa(q, nu, isl, sk), tau)),
                    rhs, [i])
            for lp in range(1, m):
                if l - lp > 1 or lp - l > 1:
                    run("tau_distant", {"i": si, "l": l, "l'": lp},
                        _compose(_op_tau(q, nu, swap_seq(i, l), lp), tau),
                        _compose(_op_tau(q, nu, swap_seq(i, lp), l),
                                 _op_tau(q, nu, i, lp)), [i])
        for l in range(1, m - 1):
            i1 = swap_seq(i, l + 1)
            i2 = swap_seq(i, l)
            lhs = _op_diff(
                _compose(_op_tau(q, nu, swap_seq(i1, l), l + 1),
                         _op_tau(q, nu, i1, l),
                         _op_tau(q, nu, i, l + 1)),
                _compose(_op_tau(q, nu, swap_seq(i2, l + 1), l),
                         _op_tau(q, nu, i2, l + 1),
                         _op_tau(q, nu, i, l)))
            run("tau_braid", {"i": si, "l": l},
                lhs, _op_scalar_poly(q, nu, i, _braid_R(q, i, l, m)), [i])

    failures = sum(1 for c in checks if c["status"] == "fail")
    return {"quiver": json.loads(q.to_json()), "nu": dict(nu),
            "degree_bound": degree_bound, "checks": checks,
            "failures": failures, "ok": failures == 0}
