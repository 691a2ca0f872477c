"""Exact sparse arithmetic for the generating functions of P-partitions.

Everything here is built from three layers:

  * monomials   -- exponent maps over named variables, stored as sorted
                   tuples of (name, exponent) pairs; the empty tuple is 1;
  * Polynomial  -- finitely supported map monomial -> integer coefficient
                   (arbitrary precision, no zero coefficients stored);
  * RationalFunction -- a Polynomial numerator over a *multiset* of
                   monomials, each monomial m standing for a factor (1 - m).

The denominator is never expanded: every generating function produced by
the poset transformations is a polynomial over a product of (1 - monomial)
factors, and keeping the factored form preserves both sparsity and the
cancellations that the transformation identities create.

The only substitutions ever needed are multiplicative (variable -> monomial),
so a substitution is a plain dict {name: monomial}.  The variable name "q"
is reserved for the one-variable specialization.
"""

from __future__ import annotations

import json
import re

Q = "q"


# ---------------------------------------------------------------------------
# monomials

def mono(items=()):
    """Canonical monomial from a dict or iterable of (name, exp) pairs."""
    if isinstance(items, dict):
        items = items.items()
    return tuple(sorted((v, e) for v, e in items if e))


def mono_var(name, exp=1):
    return ((name, exp),) if exp else ()


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va < vb:
            out.append(a[i])
            i += 1
        elif va > vb:
            out.append(b[j])
            j += 1
        else:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_pow(a, k):
    if k == 0 or not a:
        return ()
    return tuple((v, e * k) for v, e in a)


def mono_deg(a):
    return sum(e for _, e in a)


def mono_subst(a, sub):
    """Apply a multiplicative substitution {name: monomial} to a monomial."""
    d = {}
    for v, e in a:
        img = sub.get(v)
        if img is None:
            d[v] = d.get(v, 0) + e
        else:
            for w, f in img:
                d[w] = d.get(w, 0) + f * e
    return tuple(sorted((v, e) for v, e in d.items() if e))


_VARKEY = {}


def _varkey(name):
    # natural order: alphabetic stem, then numeric suffix ("x2" before "x10")
    k = _VARKEY.get(name)
    if k is None:
        m = re.fullmatch(r"(.*?)(\d*)", name)
        k = (m.group(1), int(m.group(2)) if m.group(2) else -1)
        _VARKEY[name] = k
    return k


def _mono_sortkey(a):
    return (mono_deg(a), tuple((_varkey(v), e) for v, e in sorted(a, key=lambda p: _varkey(p[0]))))


def mono_str(a):
    if not a:
        return "1"
    parts = []
    for v, e in sorted(a, key=lambda p: _varkey(p[0])):
        parts.append(v if e == 1 else "%s^%d" % (v, e))
    return "*".join(parts)


# ---------------------------------------------------------------------------
# polynomials

class Polynomial:
    """Sparse multivariate polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def constant(cls, c):
        return cls({(): c})

    @classmethod
    def term(cls, m, c=1):
        return cls({m: c})

    @classmethod
    def variable(cls, name):
        return cls({mono_var(name): 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Polynomial.__new__(Polynomial)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero()
            p = Polynomial.__new__(Polynomial)
            p.terms = {m: c * other for m, c in self.terms.items()}
            return p
        out = {}
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        for mb, cb in b.items():
            if not mb:
                for ma, ca in a.items():
                    s = out.get(ma, 0) + ca * cb
                    if s:
                        out[ma] = s
                    else:
                        del out[ma]
                continue
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    __rmul__ = __mul__

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((mono_deg(m) for m in self.terms), default=-1)

    def coefficient(self, m):
        return self.terms.get(m, 0)

    def variables(self):
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def substitute(self, sub):
        out = {}
        for m, c in self.terms.items():
            m2 = mono_subst(m, sub)
            s = out.get(m2, 0) + c
            if s:
                out[m2] = s
            else:
                del out[m2]
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    def truncate(self, bound):
        """Drop every term of total degree above bound."""
        p = Polynomial.__new__(Polynomial)
        p.terms = {m: c for m, c in self.terms.items() if mono_deg(m) <= bound}
        return p

    def collapse_to_q(self):
        """Send every term to q^(total degree) and merge; used by tests and CLI."""
        out = {}
        for m, c in self.terms.items():
            m2 = mono_var(Q, mono_deg(m))
            out[m2] = out.get(m2, 0) + c
        return Polynomial(out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_sortkey(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if m == ():
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono_str(m)
            else:
                body = "%d*%s" % (abs(c), mono_str(m))
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    __repr__ = __str__


def one_minus(m):
    """The polynomial 1 - m for a non-constant monomial m."""
    return Polynomial({(): 1, m: -1})


def exact_div(p, m):
    """Quotient of p by (1 - m) when the division is exact, else None.

    Works degree layer by degree layer using q = p + m*q: the lowest
    remaining layer of the work pile is forced to be part of the quotient,
    and each accepted term pushes its product with m one layer up.  A
    nonzero layer above degree(p) - degree(m) certifies inexactness.
    """
    if not m:
        raise ValueError("division by (1 - 1)")
    if p.is_zero():
        return Polynomial.zero()
    if sum(p.terms.values()):
        # (1 - m) vanishes with every variable at 1, so p(1,...,1) must be 0
        return None
    dm = mono_deg(m)
    maxd = p.degree()
    target = maxd - dm
    if target < 0:
        return None
    buckets = {}
    for mo, c in p.terms.items():
        buckets.setdefault(mono_deg(mo), {})[mo] = c
    out = {}
    d = 0
    while buckets:
        layer = buckets.pop(d, None)
        d += 1
        if not layer:
            continue
        live = {mo: c for mo, c in layer.items() if c}
        if not live:
            continue
        if d - 1 > target:
            return None
        nd = d - 1 + dm
        nxt = buckets.setdefault(nd, {})
        for mo, c in live.items():
            out[mo] = c
            mo2 = mono_mul(mo, m)
            nxt[mo2] = nxt.get(mo2, 0) + c
        if not nxt:
            del buckets[nd]
    return Polynomial(out)


# ---------------------------------------------------------------------------
# rational functions

class DenominatorCollapse(ValueError):
    """A substitution mapped a denominator monomial to 1."""


class RationalFunction:
    """numerator / product of (1 - m) over the denominator multiset.

    Normal form: zero numerator has an empty denominator, and no remaining
    denominator factor divides the numerator exactly.  Integer content of
    the numerator is preserved as-is.  Structural equality (==) compares
    normal forms; use rf_eq for equality as functions.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(), normalize=True):
        if isinstance(num, int):
            num = Polynomial.constant(num)
        den = tuple(sorted(den))
        for m in den:
            if not m:
                raise DenominatorCollapse("denominator factor (1 - 1)")
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        if self.num.is_zero():
            self.den = ()
            return
        den = list(self.den)
        num = self.num
        while den and not sum(num.terms.values()):
            for i, m in enumerate(den):
                q = exact_div(num, m)
                if q is not None:
                    num = q
                    del den[i]
                    break
            else:
                break
        self.num = num
        self.den = tuple(den)

    @classmethod
    def zero(cls):
        return cls(Polynomial.zero(), ())

    @classmethod
    def one(cls):
        return cls(Polynomial.one(), ())

    @classmethod
    def geometric(cls, m):
        """1 / (1 - m)."""
        return cls(Polynomial.one(), (m,), normalize=False)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    __hash__ = None

    def __neg__(self):
        return RationalFunction(-self.num, self.den, normalize=False)

    def __add__(self, other):
        return rf_sum([self, other])

    def __sub__(self, other):
        return rf_sum([self, -other])

    def __mul__(self, other):
        if isinstance(other, (int, Polynomial)):
            return RationalFunction(self.num * other, self.den)
        return RationalFunction(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def over(self, m):
        """Divide by (1 - m)."""
        return RationalFunction(self.num, self.den + (m,))

    def substitute(self, sub):
        """Simultaneous multiplicative substitution of variables by monomials."""
        num = self.num.substitute(sub)
        den = []
        for m in self.den:
            m2 = mono_subst(m, sub)
            if not m2:
                raise DenominatorCollapse("factor (1 - %s) collapsed" % mono_str(m))
            den.append(m2)
        return RationalFunction(num, den)

    def specialize_q(self, keep=()):
        """Send every variable outside keep (and not q itself) to q."""
        keep = set(keep)
        keep.add(Q)
        qm = mono_var(Q)
        vs = self.num.variables()
        for m in self.den:
            for v, _ in m:
                vs.add(v)
        sub = {v: qm for v in vs if v not in keep}
        return self.substitute(sub) if sub else self

    def series(self, bound):
        """Taylor expansion at 0 truncated to total degree <= bound."""
        out = self.num.truncate(bound)
        for m in self.den:
            dm = mono_deg(m)
            geo = {(): 1}
            mk = m
            k = dm
            while k <= bound:
                geo[mk] = 1
                mk = mono_mul(mk, m)
                k += dm
            out = _trunc_mul(out, Polynomial(geo), bound)
        return out

    def variables(self):
        vs = self.num.variables()
        for m in self.den:
            for v, _ in m:
                vs.add(v)
        return vs

    def __str__(self):
        num = str(self.num)
        if not self.den:
            return num
        if len(self.num.terms) > 1 or num.startswith("-"):
            num = "(%s)" % num
        factors = "".join("(1-%s)" % mono_str(m)
                          for m in sorted(self.den, key=_mono_sortkey))
        if len(self.den) > 1:
            return "%s/(%s)" % (num, factors)
        return "%s/%s" % (num, factors)

    __repr__ = __str__

    def to_json(self):
        num = [[c, {v: e for v, e in m}] for m, c in self.num.sorted_terms()]
        den = [{v: e for v, e in m} for m in sorted(self.den, key=_mono_sortkey)]
        return {"num": num, "den": den}

    @classmethod
    def from_json(cls, obj):
        num = {}
        for c, m in obj["num"]:
            num[mono(m)] = num.get(mono(m), 0) + int(c)
        den = [mono(m) for m in obj["den"]]
        return cls(Polynomial(num), den)

    def dumps(self):
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))


def _trunc_mul(a, b, bound):
    out = {}
    for ma, ca in a.terms.items():
        da = mono_deg(ma)
        for mb, cb in b.terms.items():
            if da + mono_deg(mb) > bound:
                continue
            m = mono_mul(ma, mb)
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                del out[m]
    p = Polynomial.__new__(Polynomial)
    p.terms = out
    return p


def rf_sum(terms):
    """Sum of rational functions over the least common factored denominator."""
    terms = list(terms)
    if not terms:
        return RationalFunction.zero()
    if len(terms) == 1:
        return terms[0]
    common = {}
    for f in terms:
        seen = {}
        for m in f.den:
            seen[m] = seen.get(m, 0) + 1
        for m, k in seen.items():
            if common.get(m, 0) < k:
                common[m] = k
    num = Polynomial.zero()
    for f in terms:
        part = f.num
        have = {}
        for m in f.den:
            have[m] = have.get(m, 0) + 1
        for m, k in common.items():
            for _ in range(k - have.get(m, 0)):
                part = part * one_minus(m)
        num = num + part
    den = []
    for m, k in common.items():
        den.extend([m] * k)
    return RationalFunction(num, den)


def rf_eq(a, b):
    """True iff a and b are equal as functions (cross multiplication)."""
    if a.num == b.num and a.den == b.den:
        return True
    da = {}
    for m in a.den:
        da[m] = da.get(m, 0) + 1
    db = {}
    for m in b.den:
        db[m] = db.get(m, 0) + 1
    left = a.num
    right = b.num
    for m in set(da) | set(db):
        k = db.get(m, 0) - da.get(m, 0)
        # multiply the side that lacks the factor
        for _ in range(k):
            left = left * one_minus(m)
        for _ in range(-k):
            right = right * one_minus(m)
    return left == right


# ---------------------------------------------------------------------------
# text format
#
# rf     := poly [ "/" den ]
# den    := factor+ | "(" factor+ ")"
# factor := "(" poly ")"        where the poly must have the shape 1 - monomial
# poly   := ["-"] term (("+"|"-") term)*
# term   := INT ["*" monopart] | monopart
# monopart := var ["^" INT] ("*" var ["^" INT])*
# with the usual parenthesized sub-expressions allowed inside poly.

class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError("bad character at %r" % text[pos:pos + 10])
            break
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append((m.group(3), None))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError("expected %r, got %r" % (kind, t[0]))
        return t

    def parse_poly(self):
        sign = 1
        if self.peek()[0] == "-":
            self.next()
            sign = -1
        p = self.parse_product() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            t = self.parse_product()
            p = p + t if op == "+" else p - t
        return p

    def parse_product(self):
        p = self.parse_atom()
        while True:
            k = self.peek()[0]
            if k == "*":
                self.next()
                p = p * self.parse_atom()
            elif k == "(":
                p = p * self.parse_atom()
            else:
                return p

    def parse_atom(self):
        kind, val = self.next()
        if kind == "int":
            return Polynomial.constant(val)
        if kind == "name":
            exp = 1
            if self.peek()[0] == "^":
                self.next()
                exp = self.expect("int")[1]
            return Polynomial.term(mono_var(val, exp))
        if kind == "(":
            p = self.parse_poly()
            self.expect(")")
            return p
        raise ParseError("unexpected token %r" % kind)


def parse_polynomial(text):
    p = _Parser(_tokenize(text))
    out = p.parse_poly()
    if p.peek()[0] is not None:
        raise ParseError("trailing input")
    return out


def _as_den_factor(p):
    terms = dict(p.terms)
    if terms.pop((), None) != 1:
        raise ParseError("denominator factor is not of the form (1 - monomial)")
    if len(terms) != 1:
        raise ParseError("denominator factor is not of the form (1 - monomial)")
    (m, c), = terms.items()
    if c != -1:
        raise ParseError("denominator factor is not of the form (1 - monomial)")
    return m


def parse_rational(text):
    """Parse the canonical rendering of a RationalFunction."""
    toks = _tokenize(text)
    split = None
    depth = 0
    for i, (k, _) in enumerate(toks):
        if k == "(":
            depth += 1
        elif k == ")":
            depth -= 1
        elif k == "/" and depth == 0:
            split = i
            break
    if split is None:
        return RationalFunction(parse_polynomial(text), ())
    left = _Parser(toks[:split])
    num = left.parse_poly()
    if left.peek()[0] is not None:
        raise ParseError("trailing input before /")
    rest = toks[split + 1:]
    if not rest or rest[0][0] != "(":
        raise ParseError("expected denominator factors after /")
    # strip one optional layer of outer parentheses wrapping the factor list
    depth = 0
    close = None
    for i, (k, _) in enumerate(rest):
        if k == "(":
            depth += 1
        elif k == ")":
            depth -= 1
            if depth == 0:
                close = i
                break
    if close == len(rest) - 1 and rest[1][0] == "(":
        rest = rest[1:-1]
    parser = _Parser(rest)
    den = []
    while parser.peek()[0] is not None:
        parser.expect("(")
        den.append(_as_den_factor(parser.parse_poly()))
        parser.expect(")")
    if not den:
        raise ParseError("empty denominator")
    return RationalFunction(num, den)
