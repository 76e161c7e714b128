"""Torus fixed-point model of the convolution algebra.

Classes on the Steinberg-type variety are expanded over fixed points: a class
is a sparse matrix of rational functions in the Chern roots indexed by pairs
of permutations (rows act, columns are acted on), and the module side is a
sparse vector indexed by single permutations.  Euler classes of the relevant
conormal data are assembled directly from weight multisets; convolution is
the twisted matrix product.  Everything is exact; no evaluation at sample
points is ever used.
"""

from __future__ import annotations

from functools import lru_cache

from .polyring import MPoly, RatFunc
from .quiver import (
    QuiverError, all_perms, base_seq, bruhat_leq, canonical_word,
    normalize_nu, nu_total, perm_act, perm_compose, perm_identity,
    perm_inverse, perm_length, simple_refl)
from . import klr


# ---------------------------------------------------------------------------
# weight multisets (weights are differences of Chern roots)
# ---------------------------------------------------------------------------

class WeightMultiset:
    """A multiset of weights chi_a - chi_b, stored as (a, b) -> multiplicity.

    Indices are 1-based; orientation matters, so (a, b) and (b, a) are
    different weights.
    """

    __slots__ = ("mult",)

    def __init__(self, mult=None):
        self.mult = {}
        if mult:
            for pair, k in dict(mult).items():
                if k < 0:
                    raise QuiverError("negative multiplicity")
                if k:
                    self.mult[pair] = self.mult.get(pair, 0) + k

    def add(self, a, b, k=1):
        if k:
            self.mult[(a, b)] = self.mult.get((a, b), 0) + k

    def union(self, other):
        out = WeightMultiset(self.mult)
        for pair, k in other.mult.items():
            out.mult[pair] = out.mult.get(pair, 0) + k
        return out

    def dual(self):
        return WeightMultiset({(b, a): k for (a, b), k in self.mult.items()})

    def __eq__(self, other):
        return isinstance(other, WeightMultiset) and self.mult == other.mult

    def total(self):
        return sum(self.mult.values())

    def euler_poly(self, m):
        p = MPoly.const(m, 1)
        for (a, b), k in sorted(self.mult.items()):
            p = p * (MPoly.var(m, a) - MPoly.var(m, b)) ** k
        return p

    def euler_inverse(self, m):
        """1/eu as a rational function; hinges on every weight being a root."""
        num = MPoly.const(m, 1)
        den = {}
        sign = 1
        for (a, b), k in self.mult.items():
            if a > b:
                a, b = b, a
                if k % 2:
                    sign = -sign
            den[(a, b)] = den.get((a, b), 0) + k
        if sign < 0:
            num = -num
        return RatFunc(num, den)

    def to_sorted_list(self):
        return sorted((a, b, k) for (a, b), k in self.mult.items())

    def __repr__(self):
        return "WeightMultiset(%r)" % (self.to_sorted_list(),)


# ---------------------------------------------------------------------------
# weight data of the fixed flags
# ---------------------------------------------------------------------------

def _colors(q, nu):
    """Color of each line: position p (1-based) in the base flag."""
    return base_seq(q, nu)


def _pos(w, x):
    """1-based position of the 1-based value x under the permutation w."""
    return perm_inverse(w)[x - 1] + 1


def _in_pos_cone(w, b, a):
    """Whether chi_b - chi_a lies in w(positive roots)."""
    return _pos(w, b) < _pos(w, a)


@lru_cache(maxsize=None)
def rep_weights(q, nu):
    """Weights of the arrow representation: (b, a) -> arrow count c(a) -> c(b)."""
    nu = normalize_nu(q, nu)
    col = _colors(q, nu)
    m = nu_total(nu)
    out = {}
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if a == b:
                continue
            h = q.h(col[a - 1], col[b - 1])
            if h:
                out[(b, a)] = h
    return out


def e_weights(q, nu, w, wp=None):
    """Arrow-representation weights stable for the flag(s) w (and wp if given)."""
    ws = [w] if wp is None else [w, wp]
    out = WeightMultiset()
    for (b, a), h in rep_weights(q, nu).items():
        if all(_in_pos_cone(u, b, a) for u in ws):
            out.add(b, a, h)
    return out


def n_weights(q, nu, w):
    """Positive-cone roots of the symmetry group at the flag w."""
    nu = normalize_nu(q, nu)
    col = _colors(q, nu)
    m = nu_total(nu)
    out = WeightMultiset()
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if a != b and col[a - 1] == col[b - 1] and _in_pos_cone(w, b, a):
                out.add(b, a, 1)
    return out


def flag_weights(q, nu, w):
    """Cotangent weights of the flag variety at the fixed flag w (same as n)."""
    return n_weights(q, nu, w)


def m_weights(q, nu, big, small):
    """Weights of n_{big} not in n_{small}: small(neg part of rel position) data.

    For big = small * y this is small(y(pos) cap neg) intersected with the
    symmetry roots.
    """
    n_big = n_weights(q, nu, big)
    n_small_keys = set(n_weights(q, nu, small).mult)
    out = WeightMultiset()
    for pair, k in n_big.mult.items():
        if pair not in n_small_keys:
            out.add(pair[0], pair[1], k)
    return out


def lambda_weights(q, nu, w):
    """Weight multiset of the cotangent fiber at the fixed point over w."""
    return e_weights(q, nu, w).dual().union(n_weights(q, nu, w))


def euler_lambda(q, nu, w, base=None):
    """The Euler class at the fixed flag w, as a rational function (a polynomial)."""
    nu = normalize_nu(q, nu)
    if base is not None and tuple(base) != base_seq(q, nu):
        raise QuiverError("the flag base must be the lexicographic base sequence")
    m = nu_total(nu)
    return RatFunc(lambda_weights(q, nu, w).euler_poly(m))


def seq_of_flag(q, nu, w):
    """The color sequence of the flag indexed by w: position k has color c(w(k))."""
    col = _colors(q, nu)
    return tuple(col[w[k]] for k in range(len(w)))


@lru_cache(maxsize=None)
def flags_of_seq(q, nu, seq):
    """All w whose flag has the given color sequence (a stabilizer coset)."""
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    return tuple(w for w in all_perms(m) if seq_of_flag(q, nu, w) == seq)


# ---------------------------------------------------------------------------
# localized classes
# ---------------------------------------------------------------------------

class LocalClassZ:
    """Sparse matrix over permutation pairs: rows = target flag, cols = source."""

    __slots__ = ("q", "nu", "m", "entries")

    def __init__(self, q, nu, entries=None):
        self.q = q
        self.nu = normalize_nu(q, nu)
        self.m = nu_total(self.nu)
        self.entries = {}
        if entries:
            for key, rf in entries.items():
                if not rf.is_zero():
                    self.entries[key] = rf

    def __add__(self, other):
        out = dict(self.entries)
        for key, rf in other.entries.items():
            cur = out.get(key)
            s = rf if cur is None else cur + rf
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return LocalClassZ(self.q, self.nu, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return LocalClassZ(self.q, self.nu,
                           {k: rf * c for k, rf in self.entries.items()})

    def __eq__(self, other):
        if set(self.entries) != set(other.entries):
            keys = set(self.entries) | set(other.entries)
        else:
            keys = set(self.entries)
        z = RatFunc(MPoly.zero(self.m))
        for k in keys:
            if self.entries.get(k, z) != other.entries.get(k, z):
                return False
        return True

    def support_strata(self):
        """Relative positions carrying nonzero coefficients."""
        return sorted({perm_compose(perm_inverse(x), y)
                       for (x, y) in self.entries})

    def truncate(self, left_seq=None, right_seq=None):
        out = {}
        for (x, y), rf in self.entries.items():
            if left_seq is not None and seq_of_flag(self.q, self.nu, x) != tuple(left_seq):
                continue
            if right_seq is not None and seq_of_flag(self.q, self.nu, y) != tuple(right_seq):
                continue
            out[(x, y)] = rf
        return LocalClassZ(self.q, self.nu, out)

    def __repr__(self):
        bits = ["psi[%s,%s]: %s" % (x, y, rf.to_text())
                for (x, y), rf in sorted(self.entries.items())]
        return "LocalClassZ{%s}" % "; ".join(bits)


class LocalClassF:
    """Sparse vector over permutations (a localized module element)."""

    __slots__ = ("q", "nu", "m", "entries")

    def __init__(self, q, nu, entries=None):
        self.q = q
        self.nu = normalize_nu(q, nu)
        self.m = nu_total(self.nu)
        self.entries = {}
        if entries:
            for key, rf in entries.items():
                if not rf.is_zero():
                    self.entries[key] = rf

    def __add__(self, other):
        out = dict(self.entries)
        for key, rf in other.entries.items():
            cur = out.get(key)
            s = rf if cur is None else cur + rf
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return LocalClassF(self.q, self.nu, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return LocalClassF(self.q, self.nu,
                           {k: rf * c for k, rf in self.entries.items()})

    def __eq__(self, other):
        keys = set(self.entries) | set(other.entries)
        z = RatFunc(MPoly.zero(self.m))
        for k in keys:
            if self.entries.get(k, z) != other.entries.get(k, z):
                return False
        return True

    def __repr__(self):
        bits = ["psi[%s]: %s" % (x, rf.to_text())
                for x, rf in sorted(self.entries.items())]
        return "LocalClassF{%s}" % "; ".join(bits)


# ---------------------------------------------------------------------------
# the standard classes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _lambda_inv(q, nu, w):
    m = nu_total(normalize_nu(q, nu))
    return lambda_weights(q, nu, w).euler_inverse(m)


@lru_cache(maxsize=None)
def _lambda_rf(q, nu, w):
    m = nu_total(normalize_nu(q, nu))
    return RatFunc(lambda_weights(q, nu, w).euler_poly(m))


def class_Ze(q, nu, base=None):
    """The unit: the diagonal class with inverse Euler coefficients."""
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    return LocalClassZ(q, nu, {(w, w): _lambda_inv(q, nu, w) for w in all_perms(m)})


def class_Zs(q, nu, l, base=None):
    """The class of the codimension-one stratum closure attached to s_l."""
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    if not 1 <= l <= m - 1:
        raise QuiverError("position %d out of range" % l)
    col = _colors(q, nu)
    s = simple_refl(m, l)
    entries = {}
    for w in all_perms(m):
        ws = perm_compose(w, s)
        same = col[w[l - 1]] == col[w[l]]
        e_star = e_weights(q, nu, ws, w).dual()
        nw = n_weights(q, nu, w)
        if same:
            m_w_ws = WeightMultiset({(w[l - 1] + 1, w[l] + 1): 1})
            m_ws_w = WeightMultiset({(w[l] + 1, w[l - 1] + 1): 1})
            entries[(w, w)] = e_star.union(nw).union(m_w_ws).euler_inverse(m)
            entries[(w, ws)] = e_star.union(nw).union(m_ws_w).euler_inverse(m)
        else:
            rf = e_star.union(nw).euler_inverse(m)
            entries[(w, w)] = rf
            entries[(w, ws)] = rf
    return LocalClassZ(q, nu, entries)


def convolve(A: LocalClassZ, B: LocalClassZ) -> LocalClassZ:
    if A.nu != B.nu:
        raise QuiverError("dimension vector mismatch")
    out = {}
    cols = {}
    for (y, z), rf in B.entries.items():
        cols.setdefault(y, []).append((z, rf))
    for (x, y), a in A.entries.items():
        lam = _lambda_rf(A.q, A.nu, y)
        for z, b in cols.get(y, ()):
            term = a * lam * b
            key = (x, z)
            cur = out.get(key)
            s = term if cur is None else cur + term
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return LocalClassZ(A.q, A.nu, out)


def act(A: LocalClassZ, v: LocalClassF) -> LocalClassF:
    if A.nu != v.nu:
        raise QuiverError("dimension vector mismatch")
    out = {}
    for (x, y), a in A.entries.items():
        b = v.entries.get(y)
        if b is None:
            continue
        term = a * _lambda_rf(A.q, A.nu, y) * b
        cur = out.get(x)
        s = term if cur is None else cur + term
        if s.is_zero():
            out.pop(x, None)
        else:
            out[x] = s
    return LocalClassF(A.q, A.nu, out)


def embed_poly(q, nu, seq, poly: MPoly) -> LocalClassF:
    """The localization embedding of a polynomial on one component."""
    nu = normalize_nu(q, nu)
    entries = {}
    for w in flags_of_seq(q, nu, tuple(seq)):
        twisted = poly.perm_vars(w)
        entries[w] = RatFunc(twisted) * _lambda_inv(q, nu, w)
    return LocalClassF(q, nu, entries)


def embed_polyrep(rep: klr.PolyRep) -> LocalClassF:
    out = LocalClassF(rep.q, rep.nu, {})
    for seq, poly in rep.components.items():
        out = out + embed_poly(rep.q, rep.nu, seq, poly)
    return out


# ---------------------------------------------------------------------------
# cross-checks: the operator formulas against the geometric classes
# ---------------------------------------------------------------------------

def generator_class(q, nu, kind, seq, pos=None):
    """The localized class of a polynomial-representation generator."""
    nu = normalize_nu(q, nu)
    seq = tuple(seq)
    m = nu_total(nu)
    if kind == "idem":
        return LocalClassZ(q, nu, {(w, w): _lambda_inv(q, nu, w)
                                   for w in flags_of_seq(q, nu, seq)})
    if kind == "kappa":
        entries = {}
        for w in flags_of_seq(q, nu, seq):
            chi = RatFunc(MPoly.var(m, w[pos - 1] + 1))
            entries[(w, w)] = chi * _lambda_inv(q, nu, w)
        return LocalClassZ(q, nu, entries)
    if kind == "sigma":
        from .quiver import swap_seq
        return class_Zs(q, nu, pos).truncate(left_seq=swap_seq(seq, pos),
                                             right_seq=seq)
    raise QuiverError("unknown generator kind %r" % kind)


def crosscheck_operators(q, nu, degree_bound):
    """Verify that convolution by generator classes matches the operator action.

    For every generator and every monomial up to the degree bound the identity
    act(class, embed(f)) = embed(generator . f) is checked as an exact
    rational-function identity.
    """
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    seqs = klr.color_seqs(q, nu)
    monos = klr.monomials_upto(m, degree_bound)
    checks = []

    def run(name, instance, cls, gen_elt):
        for seq in seqs:
            for e in monos:
                rep = klr.PolyRep.monomial(q, nu, seq, e)
                lhs = act(cls, embed_polyrep(rep))
                rhs = embed_polyrep(klr.apply(gen_elt, rep))
                if lhs != rhs:
                    checks.append({"check": name, "instance": instance,
                                   "status": "fail",
                                   "witness": {"source": list(seq),
                                               "monomial": list(e)}})
                    return
        checks.append({"check": name, "instance": instance,
                       "status": "ok", "witness": None})

    for seq in seqs:
        si = ",".join(seq)
        run("idem_agrees", {"i": si},
            generator_class(q, nu, "idem", seq),
            klr.gen_idem(q, nu, seq))
        for k in range(1, m + 1):
            run("kappa_agrees", {"i": si, "k": k},
                generator_class(q, nu, "kappa", seq, k),
                klr.gen_x(q, nu, seq, k))
        for l in range(1, m):
            run("sigma_agrees", {"i": si, "l": l},
                generator_class(q, nu, "sigma", seq, l),
                klr.gen_sigma(q, nu, seq, l))

    failures = sum(1 for c in checks if c["status"] == "fail")
    return {"quiver": q.to_json(), "nu": dict(nu), "degree_bound": degree_bound,
            "checks": checks, "failures": failures, "ok": failures == 0}


# ---------------------------------------------------------------------------
# stratum classes and the length-additive product identities
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def class_Zw(q, nu, w):
    """Product of crossing classes along the canonical word (a stratum class
    up to strictly lower Bruhat terms)."""
    nu = normalize_nu(q, nu)
    if perm_length(w) == 0:
        return class_Ze(q, nu)
    word = canonical_word(w)
    out = class_Zs(q, nu, word[0])
    m = nu_total(nu)
    rest = perm_compose(simple_refl(m, word[0]), w)
    return convolve(out, class_Zw(q, nu, rest))


def check_pbw_product(q, nu, l, w):
    """Check that the crossing class times a stratum class equals the longer
    stratum class modulo strictly smaller Bruhat support (plus the support
    filtration itself)."""
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    w = tuple(w)
    s = simple_refl(m, l)
    sw = perm_compose(s, w)
    if perm_length(sw) != perm_length(w) + 1:
        raise QuiverError("length must be additive for the product check")
    prod = convolve(class_Zs(q, nu, l), class_Zw(q, nu, w))
    diff = prod - class_Zw(q, nu, sw)
    bad = []
    for (x, y) in diff.entries:
        u = perm_compose(perm_inverse(x), y)
        if u == sw or not bruhat_leq(u, sw):
            bad.append({"row": list(x), "col": list(y), "stratum": list(u)})
    filt = []
    for (x, y) in prod.entries:
        u = perm_compose(perm_inverse(x), y)
        if not bruhat_leq(u, sw):
            filt.append({"row": list(x), "col": list(y), "stratum": list(u)})
    ok = not bad and not filt
    return {"check": "pbw_product", "instance": {"l": l, "w": [k + 1 for k in w]},
            "status": "ok" if ok else "fail",
            "witness": None if ok else {"above": bad, "outside": filt}}


def _rel_neg_set(y):
    """Pairs (a, b), a < b positions, that y sends into the negative cone."""
    m = len(y)
    out = []
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            if y[a - 1] > y[b - 1]:
                out.append((a, b))
    return out


def O_weights(q, nu, x, y):
    """Cotangent weights of the relative-position-y stratum at the (x, xy) pair."""
    nu = normalize_nu(q, nu)
    col = _colors(q, nu)
    out = WeightMultiset(n_weights(q, nu, x).mult)
    # x(neg part of y) intersected with the symmetry roots
    for (a, b) in _rel_neg_set(y):
        # root chi_{y(a)} - chi_{y(b)} is negative for y; push forward by x
        p1, p2 = x[y[a - 1]] + 1, x[y[b - 1]] + 1
        if col[p1 - 1] == col[p2 - 1]:
            out.add(p1, p2, 1)
    return out


def check_euler_factorizations(q, nu, w, x, y):
    """The two multiset identities behind the length-additive product formula."""
    nu = normalize_nu(q, nu)
    if perm_length(perm_compose(x, y)) != perm_length(x) + perm_length(y):
        raise QuiverError("length must be additive")
    xy = perm_compose(x, y)
    wx = perm_compose(w, x)
    wxy = perm_compose(w, xy)

    lhs1 = O_weights(q, nu, w, xy).union(flag_weights(q, nu, wx))
    rhs1 = O_weights(q, nu, w, x).union(O_weights(q, nu, wx, y))
    ok1 = lhs1 == rhs1

    lhs2 = e_weights(q, nu, w, wxy).dual().union(e_weights(q, nu, wx).dual())
    rhs2 = e_weights(q, nu, w, wx).dual().union(e_weights(q, nu, wx, wxy).dual())
    ok2 = lhs2 == rhs2

    witness = None
    if not (ok1 and ok2):
        witness = {"first": [lhs1.to_sorted_list(), rhs1.to_sorted_list()],
                   "second": [lhs2.to_sorted_list(), rhs2.to_sorted_list()]}
    return {"check": "euler_factorization",
            "instance": {"w": [k + 1 for k in w], "x": [k + 1 for k in x],
                         "y": [k + 1 for k in y]},
            "status": "ok" if ok1 and ok2 else "fail", "witness": witness}


def sweep_pbw_products(q, nu):
    """All length-additive (s_l, w) product checks plus Euler factorizations."""
    nu = normalize_nu(q, nu)
    m = nu_total(nu)
    results = []
    for w in all_perms(m):
        for l in range(1, m):
            s = simple_refl(m, l)
            if perm_length(perm_compose(s, w)) == perm_length(w) + 1:
                results.append(check_pbw_product(q, nu, l, w))
    for w in all_perms(m):
        for x in all_perms(m):
            for y in all_perms(m):
                if perm_length(perm_compose(x, y)) == perm_length(x) + perm_length(y):
                    results.append(check_euler_factorizations(q, nu, w, x, y))
    failures = sum(1 for c in results if c["status"] == "fail")
    return {"quiver": q.to_json(), "nu": dict(nu), "checks": results,
            "failures": failures, "ok": failures == 0}
