"""Exact arithmetic in GF(p^h) for odd primes p.

Elements are addressed by their canonical index: the coefficient vector
(c0, ..., c_{h-1}) of the polynomial-basis representation, constant term
first, read as a base-p integer.  Index 0 is zero and index 1 is one, so
tuples of indices can be compared, hashed and packed without further
bookkeeping.  All operations are pure; a Field is immutable once built.
"""

from __future__ import annotations

# Small-field lookup tables are precomputed up to this size; beyond it the
# scalar operations fall back to polynomial arithmetic per call.
TABLE_LIMIT = 512


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense polynomials over GF(p): lists of residues, constant term first
# ---------------------------------------------------------------------------

def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, m, p):
    """Remainder of f modulo a monic polynomial m."""
    f = list(f)
    dm = len(m) - 1
    while len(f) > dm:
        c = f[-1] % p
        if c:
            shift = len(f) - 1 - dm
            for i, a in enumerate(m):
                f[shift + i] = (f[shift + i] - c * a) % p
        f.pop()
    return _ptrim(f)


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g:
        inv_lead = pow(g[-1], p - 2, p)
        monic = [(c * inv_lead) % p for c in g]
        f, g = g, _pmod(f, monic, p)
    return f


def _psub(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _ptrim([(a - b) % p for a, b in zip(f, g)])


def _xpow(e, m, p):
    """x^e modulo the monic polynomial m, by square and multiply."""
    result = [1]
    base = _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(coeffs, p) -> bool:
    """Rabin irreducibility test for a monic polynomial over GF(p).

    f of degree h is irreducible iff x^(p^h) == x (mod f) and, for every
    prime r dividing h, gcd(x^(p^(h/r)) - x, f) is constant.
    """
    h = len(coeffs) - 1
    if h < 1 or coeffs[-1] % p != 1:
        return False
    f = [c % p for c in coeffs]
    if h == 1:
        return True
    primes = []
    k, d = h, 2
    while d * d <= k:
        if k % d == 0:
            primes.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        primes.append(k)
    for r in primes:
        g = _psub(_xpow(p ** (h // r), f, p), [0, 1], p)
        if len(_pgcd(f, g, p)) > 1:
            return False
    return not _psub(_xpow(p ** h, f, p), [0, 1], p)


def least_irreducible(p: int, h: int) -> tuple:
    """Lexicographically least monic irreducible of degree h over GF(p).

    Candidates are ordered by reading the low coefficients (c0, ..., c_{h-1})
    as a base-p integer, ascending; the result is the deterministic default
    modulus for Field(p, h).
    """
    for k in range(p ** h):
        coeffs = []
        v = k
        for _ in range(h):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found; unreachable")


class Field:
    """GF(p^h) with elements addressed by canonical base-p index.

    When no modulus is supplied the lexicographically least monic
    irreducible of degree h is chosen, so identical parameters always
    produce identical arithmetic.
    """

    def __init__(self, p: int, h: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if p == 2:
            raise ValueError("p must be an odd prime")
        if not isinstance(h, int) or h < 1:
            raise ValueError(f"extension degree h must be >= 1, got {h}")
        self.p = p
        self.h = h
        self.q = p ** h
        if modulus is None:
            self.modulus = least_irreducible(p, h)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != h + 1 or modulus[-1] != 1:
                raise ValueError(
                    f"modulus must be monic of degree {h}, got {modulus}")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self._tables = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- canonical index <-> coefficient vector --------------------------

    def coeffs(self, a: int) -> tuple:
        """Coefficient vector (c0, ..., c_{h-1}) of element index a."""
        self._check(a)
        out = []
        for _ in range(self.h):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def element(self, coeffs) -> int:
        """Element index of a coefficient vector, reducing entries mod p."""
        if len(coeffs) != self.h:
            raise ValueError(f"expected {self.h} coefficients, got {len(coeffs)}")
        a = 0
        for c in reversed(coeffs):
            a = a * self.p + (int(c) % self.p)
        return a

    def elements(self) -> range:
        """All q elements in canonical index order (zero first, one second)."""
        return range(self.q)

    def _check(self, a):
        if not 0 <= a < self.q:
            raise ValueError(f"element index {a} out of range for GF({self.q})")

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._tables:
            if 0 <= a < self.q and 0 <= b < self.q:
                return self._tables["add"][a][b]
            self._check(a)
            self._check(b)
        return self._add_slow(a, b)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        self._check(a)
        if self._tables:
            return self._tables["neg"][a]
        p = self.p
        out, mult = 0, 1
        for _ in range(self.h):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if self._tables:
            if 0 <= a < self.q and 0 <= b < self.q:
                return self._tables["mul"][a][b]
            self._check(a)
            self._check(b)
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self._tables:
            return self._tables["inv"][a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        self._check(a)
        if e == 0:
            return 1
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int, i: int) -> int:
        """a^(p^i); the i-th power of the field automorphism x -> x^p."""
        if not 0 <= i < self.h:
            raise ValueError(f"Frobenius exponent {i} not in [0, {self.h})")
        if self._tables:
            return self._tables["frob"][i][a]
        return self.pow(a, self.p ** i)

    def is_square(self, a: int) -> bool:
        """True iff a is a square, with zero counted as a square."""
        if self._tables:
            return self._tables["sq"][a]
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def primitive_element(self) -> int:
        """Least element generating the multiplicative group."""
        target = self.q - 1
        for g in range(2, self.q):
            x, order = g, 1
            while x != 1:
                x = self.mul(x, g)
                order += 1
            if order == target:
                return g
        raise AssertionError("multiplicative group has no generator; unreachable")

    # -- internals --------------------------------------------------------

    def _add_slow(self, a, b):
        self._check(a)
        self._check(b)
        p = self.p
        out, mult = 0, 1
        for _ in range(self.h):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def _mul_slow(self, a, b):
        self._check(a)
        self._check(b)
        fa = _ptrim([(a // self.p ** i) % self.p for i in range(self.h)])
        fb = _ptrim([(b // self.p ** i) % self.p for i in range(self.h)])
        fc = _pmod(_pmul(fa, fb, self.p), list(self.modulus), self.p)
        out = 0
        for c in reversed(fc):
            out = out * self.p + c
        return out

    def _build_tables(self):
        q = self.q
        add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        neg = [add[a].index(0) for a in range(q)]
        inv = [0] + [mul[a].index(1) for a in range(1, q)]
        self._tables = {"add": add, "mul": mul, "neg": neg, "inv": inv}
        half = (q - 1) // 2
        sq = [True] + [self.pow(a, half) == 1 for a in range(1, q)]
        frob = [[self.pow(a, self.p ** i) for a in range(q)]
                for i in range(self.h)]
        self._tables["sq"] = sq
        self._tables["frob"] = frob

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.h, self.modulus) == (other.p, other.h, other.modulus)

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))

    def __repr__(self):
        poly = poly_str(self.modulus)
        return f"Field({self.p}, {self.h}, modulus={poly})"


def poly_str(coeffs) -> str:
    """Human-readable form of a coefficient vector, e.g. x^2 + 1."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            x = "x" if e == 1 else f"x^{e}"
            terms.append(x if c == 1 else f"{c}{x}")
    return " + ".join(terms) if terms else "0"


def make_field(p: int, h: int = 1, modulus=None) -> Field:
    """Construct GF(p^h); alias for the Field constructor."""
    return Field(p, h, modulus)
