"""Exact commutative algebra substrate.

Four value types, all immutable and exact (arbitrary-precision rationals):

* ``MPoly``       sparse multivariate polynomials, variables x(1)..x(m)
* ``RatFunc``     rational functions whose denominators are products of
                  differences of variables (the only denominators that occur
                  in torus localization)
* ``QLaurent``    Laurent polynomials in q
* ``GradedSeries`` a QLaurent numerator over a power of (1 - q^2)

Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations


# ---------------------------------------------------------------------------
# multivariate polynomials
# ---------------------------------------------------------------------------

class MPoly:
    """Sparse polynomial in m variables over the rationals.

    ``terms`` maps exponent tuples (length m) to nonzero Fractions.  Each
    variable carries cohomological degree 2, so the graded degree of a
    monomial is twice its polynomial degree.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = m
        if terms is None:
            terms = {}
        self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(m):
        return MPoly(m)

    @staticmethod
    def const(m, c):
        c = Fraction(c)
        if c == 0:
            return MPoly(m)
        return MPoly(m, {(0,) * m: c})

    @staticmethod
    def var(m, k):
        """x(k), 1-based."""
        if not 1 <= k <= m:
            raise ValueError("variable index %d out of range" % k)
        e = [0] * m
        e[k - 1] = 1
        return MPoly(m, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(m, exps, coeff=1):
        return MPoly(m, {tuple(exps): Fraction(coeff)})

    # -- basics ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.m, out)

    def __neg__(self):
        return MPoly(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.m != other.m:
            raise ValueError("variable count mismatch")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.m, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return MPoly(self.m)
        return MPoly(self.m, {e: cc * c for e, cc in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if self.m != other.m:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.m, other)

    # -- degrees -----------------------------------------------------------

    def total_degree(self):
        """Maximal polynomial degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self):
        """Common polynomial degree of all terms, or None if inhomogeneous."""
        degs = {sum(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def homogeneous_part(self, d):
        return MPoly(self.m, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- symmetric-group operations -----------------------------------------

    def swap_vars(self, l):
        """Exchange x(l) and x(l+1) (1-based)."""
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[l - 1], e2[l] = e2[l], e2[l - 1]
            out[tuple(e2)] = c
        return MPoly(self.m, out)

    def perm_vars(self, w):
        """Substitute x(k) -> x(w(k)) for a 0-based one-line permutation w."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.m
            for k in range(self.m):
                e2[w[k]] = e[k]
            out[tuple(e2)] = c
        return MPoly(self.m, out)

    def reindex(self, mapping):
        """Substitute x(k) -> x(mapping[k]) for a 0-based index map."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.m
            for k in range(self.m):
                e2[mapping[k]] += e[k]
            key = tuple(e2)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MPoly(self.m, out)

    def demazure(self, l):
        """(f - s_l f) / (x(l) - x(l+1)); exact by construction, degree drops by one."""
        out = {}
        a_idx, b_idx = l - 1, l
        for e, c in self.terms.items():
            a, b = e[a_idx], e[b_idx]
            if a == b:
                continue
            # (x^a y^b - x^b y^a)/(x - y) summed over the staircase
            lo, hi = min(a, b), max(a, b)
            sgn = c if a > b else -c
            for k in range(lo, hi):
                e2 = list(e)
                e2[a_idx], e2[b_idx] = k, a + b - 1 - k
                key = tuple(e2)
                s = out.get(key, 0) + sgn
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return MPoly(self.m, out)

    def is_symmetric_in(self, l):
        return self == self.swap_vars(l)

    # -- division by a difference of variables ------------------------------

    def subs_var_equal(self, a, b):
        """Set x(a) := x(b) (1-based)."""
        mapping = list(range(self.m))
        mapping[a - 1] = b - 1
        return self.reindex(mapping)

    def div_linear(self, a, b):
        """Exact quotient by (x(a) - x(b)), or None when not divisible."""
        if not self.subs_var_equal(a, b).is_zero():
            return None
        quo = {}
        rem = dict(self.terms)
        ai = a - 1
        while rem:
            # peel the highest x(a)-degree term
            e = max(rem, key=lambda t: (t[ai], t))
            c = rem[e]
            if e[ai] == 0:
                raise ArithmeticError("inexact division by a linear form")
            e_q = list(e)
            e_q[ai] -= 1
            key = tuple(e_q)
            quo[key] = quo.get(key, 0) + c
            # subtract c * x(a)^(ea-1) * (x(a) - x(b)) * rest
            del rem[e]
            e_b = list(e_q)
            e_b[b - 1] += 1
            kb = tuple(e_b)
            s = rem.get(kb, 0) + c
            if s:
                rem[kb] = s
            else:
                rem.pop(kb, None)
        return MPoly(self.m, {k: v for k, v in quo.items() if v})

    # -- rendering -----------------------------------------------------------

    def sorted_terms(self):
        """Graded lexicographic with x(1) > ... > x(m), leading term first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self, name="x"):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for k, ek in enumerate(e):
                if ek == 1:
                    factors.append("%s(%d)" % (name, k + 1))
                elif ek > 1:
                    factors.append("%s(%d)^%d" % (name, k + 1, ek))
            body = "*".join(factors)
            if not body:
                term = str(c)
            elif c == 1:
                term = body
            elif c == -1:
                term = "-" + body
            else:
                term = "%s*%s" % (c, body)
            parts.append(term)
        text = parts[0]
        for t in parts[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def __repr__(self):
        return "MPoly(%s)" % self.to_text()


def elementary_symmetric(m, positions, r):
    """e_r in the variables x(p) for 1-based positions p."""
    out = {}
    for comb in combinations(positions, r):
        e = [0] * m
        for p in comb:
            e[p - 1] = 1
        out[tuple(e)] = Fraction(1)
    return MPoly(m, out)


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------

class QLaurent:
    """Sparse Laurent polynomial in q with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    @staticmethod
    def zero():
        return QLaurent()

    @staticmethod
    def one():
        return QLaurent({0: 1})

    @staticmethod
    def q_power(n, coeff=1):
        return QLaurent({n: coeff})

    @staticmethod
    def from_int(c):
        return QLaurent({0: c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, QLaurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QLaurent(out)

    def __neg__(self):
        return QLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QLaurent({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return QLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = QLaurent.one()
        base = self
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, QLaurent):
            return other
        return QLaurent.from_int(other)

    def bar(self):
        """The bar involution q -> q^{-1}."""
        return QLaurent({-e: c for e, c in self.terms.items()})

    def is_bar_invariant(self):
        return self == self.bar()

    def coeff(self, e):
        return self.terms.get(e, Fraction(0))

    def at_one(self):
        return sum(self.terms.values(), Fraction(0))

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def has_nonneg_int_coeffs(self):
        return all(c.denominator == 1 and c >= 0 for c in self.terms.values())

    def div_exact(self, other):
        """Exact quotient by another Laurent polynomial, or None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return QLaurent.zero()
        rem = dict(self.terms)
        d_hi = other.max_exp()
        d_c = other.terms[d_hi]
        quo = {}
        while rem:
            hi = max(rem)
            e = hi - d_hi
            c = rem[hi] / d_c
            quo[e] = c
            for de, dc in other.terms.items():
                k = de + e
                s = rem.get(k, 0) - dc * c
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
            if rem and max(rem) >= hi:
                return None
            if len(quo) > len(self.terms) + len(other.terms) + abs(hi) + 8:
                return None  # runaway: not an exact Laurent quotient
        return QLaurent(quo)

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                body = str(c)
            else:
                power = "q" if e == 1 else ("q^%d" % e if e > 1 else "q^(%d)" % e)
                if c == 1:
                    body = power
                elif c == -1:
                    body = "-" + power
                else:
                    body = "%s*%s" % (c, power)
            parts.append(body)
        text = parts[0]
        for t in parts[1:]:
            text += " - " + t[1:] if t.startswith("-") else " + " + t
        return text

    def to_json_dict(self):
        return {str(e): (int(c) if c.denominator == 1 else str(c))
                for e, c in sorted(self.terms.items())}

    def __repr__(self):
        return "QLaurent(%s)" % self.to_text()


def qnum(m):
    """The balanced q-integer [m] = q^{m-1} + q^{m-3} + ... + q^{1-m}."""
    if m < 0:
        raise ValueError("q-integer of a negative number")
    return QLaurent({m + 1 - 2 * l: 1 for l in range(1, m + 1)})


def qfact(a):
    """[a]! for an integer, or the product of [a_l]! over a tuple."""
    if isinstance(a, int):
        out = QLaurent.one()
        for l in range(1, a + 1):
            out = out * qnum(l)
        return out
    out = QLaurent.one()
    for al in a:
        out = out * qfact(al)
    return out


def qbinom(n, k):
    """Gaussian binomial [n choose k]; always a Laurent polynomial."""
    if k < 0 or k > n:
        return QLaurent.zero()
    res = qfact(n).div_exact(qfact(k) * qfact(n - k))
    if res is None:
        raise ArithmeticError("q-binomial division failed")
    return res


# ---------------------------------------------------------------------------
# graded dimension series
# ---------------------------------------------------------------------------

class GradedSeries:
    """A series numerator/(1 - q^2)^pole with exact window expansion."""

    __slots__ = ("num", "pole")

    def __init__(self, num: QLaurent, pole: int = 0):
        if pole < 0:
            raise ValueError("pole order must be non-negative")
        self.num = num
        self.pole = pole

    @staticmethod
    def from_qlaurent(num):
        return GradedSeries(num, 0)

    def __add__(self, other):
        p = max(self.pole, other.pole)
        shift = QLaurent({0: 1, 2: -1})  # (1 - q^2)
        n1 = self.num * shift ** (p - self.pole)
        n2 = other.num * shift ** (p - other.pole)
        return GradedSeries(n1 + n2, p)

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return GradedSeries(self.num * other.num, self.pole + other.pole)
        return GradedSeries(self.num * other, self.pole)

    def coeff(self, d):
        """Exact coefficient of q^d in the Laurent expansion at q = 0."""
        total = Fraction(0)
        for e, c in self.num.terms.items():
            k2 = d - e
            if k2 < 0 or k2 % 2:
                continue
            k = k2 // 2
            # binomial(pole - 1 + k, k) for the geometric expansion
            b = 1
            for t in range(1, k + 1):
                b = b * (self.pole - 1 + t) // t
            if self.pole == 0:
                b = 1 if k == 0 else 0
            total += c * b
        return total

    def eq_window(self, other, lo, hi):
        return all(self.coeff(d) == other.coeff(d) for d in range(lo, hi + 1))

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        shift = QLaurent({0: 1, 2: -1})
        p = max(self.pole, other.pole)
        return self.num * shift ** (p - self.pole) == other.num * shift ** (p - other.pole)

    def __repr__(self):
        return "GradedSeries((%s)/(1-q^2)^%d)" % (self.num.to_text(), self.pole)


def series_eq_window(s1, s2, window):
    lo, hi = window
    return s1.eq_window(s2, lo, hi)


# ---------------------------------------------------------------------------
# rational functions with variable-difference denominators
# ---------------------------------------------------------------------------

class RatFunc:
    """num / prod (x(a) - x(b))^k with a < b in every denominator factor.

    Equivariant localization only ever inverts Euler classes, i.e. products
    of differences of Chern roots, so this restricted shape is closed under
    the arithmetic used here.  Equality is decided exactly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den=()):
        # den: iterable of ((a, b), mult); orientation is normalized to a < b
        # with the sign absorbed into the numerator, then common linear
        # factors are cancelled.
        norm = {}
        sign = 1
        for (a, b), k in dict(den).items():
            if k <= 0:
                raise ValueError("denominator multiplicities must be positive")
            if a == b:
                raise ValueError("zero linear form in a denominator")
            if a > b:
                a, b = b, a
                if k % 2:
                    sign = -sign
            norm[(a, b)] = norm.get((a, b), 0) + k
        if sign < 0:
            num = -num
        if num.is_zero():
            self.num = num
            self.den = ()
            return
        changed = True
        while changed and norm:
            changed = False
            for (a, b), k in list(norm.items()):
                while k > 0:
                    quo = num.div_linear(a, b)
                    if quo is None:
                        break
                    num = quo
                    k -= 1
                    changed = True
                if k:
                    norm[(a, b)] = k
                else:
                    del norm[(a, b)]
        self.num = num
        self.den = tuple(sorted(norm.items()))

    @staticmethod
    def from_poly(p):
        return RatFunc(p)

    @staticmethod
    def const(m, c):
        return RatFunc(MPoly.const(m, c))

    def is_zero(self):
        return self.num.is_zero()

    def den_poly(self):
        p = MPoly.const(self.num.m, 1)
        for (a, b), k in self.den:
            p = p * (MPoly.var(self.num.m, a) - MPoly.var(self.num.m, b)) ** k
        return p

    def __add__(self, other):
        other = self._coerce(other)
        d1, d2 = dict(self.den), dict(other.den)
        lcm = dict(d1)
        for f, k in d2.items():
            lcm[f] = max(lcm.get(f, 0), k)
        m = self.num.m
        n1, n2 = self.num, other.num
        for f, k in lcm.items():
            a, b = f
            lin = MPoly.var(m, a) - MPoly.var(m, b)
            e1, e2 = k - d1.get(f, 0), k - d2.get(f, 0)
            if e1:
                n1 = n1 * lin ** e1
            if e2:
                n2 = n2 * lin ** e2
        return RatFunc(n1 + n2, lcm)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den)
        other = self._coerce(other)
        den = dict(self.den)
        for f, k in other.den:
            den[f] = den.get(f, 0) + k
        return RatFunc(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self):
        """Invert; requires the numerator to factor into differences of variables."""
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        m = self.num.m
        num = self.num
        new_den = {}
        progressing = True
        while num.total_degree() > 0 and progressing:
            progressing = False
            for a in range(1, m + 1):
                for b in range(a + 1, m + 1):
                    quo = num.div_linear(a, b)
                    if quo is not None and not quo.is_zero():
                        num = quo
                        new_den[(a, b)] = new_den.get((a, b), 0) + 1
                        progressing = True
        if num.total_degree() != 0:
            raise ArithmeticError("numerator is not a product of variable differences")
        c = num.terms[(0,) * m]
        flat = MPoly.const(m, 1 / c)
        for f, k in self.den:
            a, b = f
            flat = flat * (MPoly.var(m, a) - MPoly.var(m, b)) ** k
        return RatFunc(flat, new_den)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc(other)
        return RatFunc(MPoly.const(self.num.m, other))

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("RatFunc is unhashable; compare with ==")

    def to_text(self, name="chi"):
        if not self.den:
            return self.num.to_text(name)
        dens = []
        for (a, b), k in self.den:
            f = "(%s(%d)-%s(%d))" % (name, a, name, b)
            dens.append(f if k == 1 else f + "^%d" % k)
        return "(%s)/(%s)" % (self.num.to_text(name), "*".join(dens))

    def __repr__(self):
        return "RatFunc(%s)" % self.to_text()
