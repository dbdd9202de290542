"""Number fields via a monic irreducible defining polynomial.

Prime-ideal splitting is read off the factorization of the polynomial
mod p (Dedekind's theorem).  Primes dividing the index [O_K : Z[theta]]
are rejected with UnsupportedPrimeError rather than handled; the shipped
presets are all monogenic, so this only bites user-supplied polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import numpy as np

from . import fppoly, sieve
from .errors import UnsupportedPrimeError


def _poly_degree(c):
    d = len(c) - 1
    while d >= 0 and c[d] == 0:
        d -= 1
    return d


def _frac_mod(a, b):
    """Remainder of a by b over Q (lists of Fractions, constant first)."""
    a = list(a)
    db = _poly_degree(b)
    lead = b[db]
    while _poly_degree(a) >= db:
        da = _poly_degree(a)
        factor = a[da] / lead
        for i in range(db + 1):
            a[da - db + i] -= factor * b[i]
        a[da] = Fraction(0)
    return a[: max(_poly_degree(a) + 1, 0)]


def _resultant(f, g):
    """res(f, g) over Q, exact."""
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    sign = 1
    res = Fraction(1)
    while True:
        df, dg = _poly_degree(f), _poly_degree(g)
        if dg < 0:
            return Fraction(0)
        if dg == 0:
            return sign * res * g[0] ** max(df, 0)
        r = _frac_mod(f, g)
        dr = _poly_degree(r)
        if dr < 0:
            return Fraction(0)
        res *= g[dg] ** (df - dr)
        if df % 2 == 1 and dg % 2 == 1:
            sign = -sign
        f, g = g, r


def poly_discriminant(coefficients) -> int:
    """disc(f) = (-1)^(n(n-1)/2) * res(f, f') for monic integer f."""
    coeffs = [int(c) for c in coefficients]
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic of degree >= 1")
    if n == 1:
        return 1
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    res = _resultant(coeffs, deriv)
    if res.denominator != 1:
        raise ValueError("non-integral resultant for integer polynomial")
    return (-1) ** (n * (n - 1) // 2) * res.numerator


def _is_irreducible(coeffs) -> bool:
    from sympy import Poly, Symbol  # heavyweight; imported on demand
    x = Symbol("x")
    poly = Poly(list(reversed(coeffs)), x, domain="QQ")
    return poly.is_irreducible


def factor_degrees_mod_p(coefficients, p: int):
    """Multiset of (degree, multiplicity) for the irreducible factors of
    f mod p, one entry per factor."""
    return fppoly.factor_degree_multiset(list(coefficients), p)


def dedekind_index_test(coefficients, p: int) -> bool:
    """True iff p does not divide the index [O_K : Z[theta]].

    Dedekind's criterion: with f = prod g_i^{e_i} mod p, g = prod g_i and
    h = f/g mod p, the test passes iff gcd(g, h, (g*h* - f)/p) = 1 in F_p,
    where g*, h* are lifts of g, h.
    """
    f = [int(c) for c in coefficients]
    factors = fppoly.factor(f, p)
    g = [1]
    h = [1]
    for irr, mult in factors:
        g = fppoly.mul(g, irr, p)
        for _ in range(mult - 1):
            h = fppoly.mul(h, irr, p)
    # integer lift with coefficients in [0, p)
    gh = _int_mul(g, h)
    diff = [a - b for a, b in _zip_longest(gh, f)]
    if any(d % p for d in diff):
        raise ArithmeticError("g*h != f mod p; factorization bug")
    fbar = [(d // p) % p for d in diff]
    cand = fppoly.gcd(fppoly.gcd(fppoly.trim(fbar), g, p), h, p)
    return fppoly.degree(cand) <= 0


def _int_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _zip_longest(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


@dataclass(frozen=True)
class SplittingType:
    """Prime ideals above p as pairs (residue degree f, ramification e)."""

    prime: int
    factors: tuple

    def norm_count(self, k: int) -> int:
        """Number of prime ideals of norm p^k."""
        return sum(1 for f, _ in self.factors if f == k)

    @property
    def degree_sum(self) -> int:
        return sum(e * f for f, e in self.factors)


@dataclass(frozen=True)
class NumberFieldSpec:
    coefficients: tuple          # monic, constant term first
    degree: int
    poly_disc: int               # signed disc(f)
    field_disc: int              # |d_K|
    validated_up_to: int
    bad_primes: frozenset        # primes dividing the index
    name: str = ""
    _split_cache: dict = field(default_factory=dict, compare=False,
                               repr=False)

    @classmethod
    def from_poly(cls, coefficients, field_disc=None, name="",
                  check_irreducible=True) -> "NumberFieldSpec":
        coeffs = tuple(int(c) for c in coefficients)
        n = len(coeffs) - 1
        if n < 1 or coeffs[-1] != 1:
            raise ValueError("defining polynomial must be monic, deg >= 1")
        if check_irreducible and not _is_irreducible(coeffs):
            raise ValueError(f"{list(coeffs)} is reducible over Q")
        disc = poly_discriminant(coeffs)
        bad = frozenset(
            p for p in _square_divisor_primes(disc)
            if not dedekind_index_test(coeffs, p))
        if bad:
            validated = min(bad) - 1
            if field_disc is None:
                raise ValueError(
                    f"index divisible by {sorted(bad)}; supply field_disc")
        else:
            validated = sieve.DEFAULT_CEILING
            if field_disc is None:
                field_disc = abs(disc)
        field_disc = int(field_disc)
        if field_disc < 1 or abs(disc) % field_disc != 0:
            raise ValueError(f"field_disc {field_disc} does not divide "
                             f"|disc(f)| = {abs(disc)}")
        quot = abs(disc) // field_disc
        if math.isqrt(quot) ** 2 != quot:
            raise ValueError(
                f"|disc(f)|/field_disc = {quot} is not a perfect square")
        return cls(coeffs, n, disc, field_disc, validated, bad, name)

    @property
    def log_disc(self) -> float:
        return math.log(self.field_disc)


def _square_divisor_primes(disc: int):
    if disc == 0:
        raise ValueError("zero discriminant")
    from sympy import factorint
    return sorted(p for p, e in factorint(abs(disc)).items() if e >= 2)


def splitting_type(fld: NumberFieldSpec, p: int) -> SplittingType:
    """Splitting of the rational prime p via Dedekind's theorem."""
    cached = fld._split_cache.get(p)
    if cached is not None:
        return cached
    if p in fld.bad_primes:
        raise UnsupportedPrimeError(p, fld.name)
    degrees = factor_degrees_mod_p(fld.coefficients, p)
    st = SplittingType(prime=p, factors=tuple((d, m) for d, m in degrees))
    if st.degree_sum != fld.degree:
        raise ArithmeticError(
            f"splitting degrees at p={p} sum to {st.degree_sum}, "
            f"expected {fld.degree}")
    fld._split_cache[p] = st
    return st


@dataclass(frozen=True)
class IdealPowerEvent:
    """A prime-ideal power P^m with N(P^m) = position."""

    position: int
    base: int                # rational prime below P
    residue_degree: int
    exponent: int
    weight: float            # log N(P) = residue_degree * log(base)


_event_cache: dict = {}


def _bucket(hi: float) -> int:
    b = 1024
    while b < hi:
        b *= 2
    return b


def _build_events(fld: NumberFieldSpec, hi: int, *, ceiling: int):
    """All ideal-power events with norm <= hi, ascending.

    Large unramified primes only ever contribute norm-p events, so for
    p > sqrt(hi) we count roots of f mod p instead of running the full
    distinct-degree factorization.
    """
    if fld.degree == 1:
        pos, base, expo, weights = sieve.event_arrays(1, hi, ceiling=ceiling)
        degrees = np.ones(len(pos), dtype=np.int64)
        return pos, base, degrees, expo, weights
    positions, bases, degrees, exponents = [], [], [], []
    split_bound = math.isqrt(hi)
    for p in sieve.sieve_primes(1, hi, ceiling=ceiling):
        p = int(p)
        if p in fld.bad_primes:
            continue  # excluded here; queries touching p raise upstream
        if p > split_bound and fld.poly_disc % p != 0:
            r = fppoly.count_roots(list(fld.coefficients), p)
            for _ in range(r):
                positions.append(p)
                bases.append(p)
                degrees.append(1)
                exponents.append(1)
            continue
        st = splitting_type(fld, p)
        for f, _e in st.factors:
            norm = p**f
            m = 1
            while norm <= hi:
                positions.append(norm)
                bases.append(p)
                degrees.append(f)
                exponents.append(m)
                norm *= p**f
                m += 1
    pos = np.array(positions, dtype=np.int64)
    base = np.array(bases, dtype=np.int64)
    deg = np.array(degrees, dtype=np.int64)
    expo = np.array(exponents, dtype=np.int64)
    order = np.argsort(pos, kind="stable")
    pos, base, deg, expo = pos[order], base[order], deg[order], expo[order]
    weights = deg * np.log(base.astype(np.float64))
    return pos, base, deg, expo, weights


def ideal_event_arrays(fld: NumberFieldSpec, lo: float, hi: float, *,
                       ceiling: int = sieve.DEFAULT_CEILING):
    """(positions, weights, exponents, first_power_mask) for events with
    norm in (lo, hi]."""
    if lo < 1:
        raise ValueError(f"lo must be >= 1, got {lo}")
    for p in sorted(fld.bad_primes):
        if p <= hi:
            raise UnsupportedPrimeError(p, fld.name)
    key = (fld.coefficients, fld.field_disc, _bucket(hi))
    cached = _event_cache.get(key)
    if cached is None:
        cached = _build_events(fld, _bucket(hi), ceiling=max(ceiling,
                                                             _bucket(hi)))
        _event_cache[key] = cached
    pos, base, deg, expo, weights = cached
    i = np.searchsorted(pos, lo, side="right")
    j = np.searchsorted(pos, hi, side="right")
    return pos[i:j], weights[i:j], expo[i:j], expo[i:j] == 1


def prime_ideal_events(fld: NumberFieldSpec, lo: float, hi: float, *,
                       ceiling: int = sieve.DEFAULT_CEILING):
    """Ascending list of IdealPowerEvent with norm in (lo, hi]."""
    if lo < 1:
        raise ValueError(f"lo must be >= 1, got {lo}")
    for p in sorted(fld.bad_primes):
        if p <= hi:
            raise UnsupportedPrimeError(p, fld.name)
    key = (fld.coefficients, fld.field_disc, _bucket(hi))
    if key not in _event_cache:
        _event_cache[key] = _build_events(fld, _bucket(hi),
                                          ceiling=max(ceiling, _bucket(hi)))
    pos, base, deg, expo, weights = _event_cache[key]
    i = np.searchsorted(pos, lo, side="right")
    j = np.searchsorted(pos, hi, side="right")
    return [IdealPowerEvent(int(n), int(p), int(f), int(m), float(w))
            for n, p, f, m, w in zip(pos[i:j], base[i:j], deg[i:j],
                                     expo[i:j], weights[i:j])]


def psi_K(fld: NumberFieldSpec, x: float, *,
          ceiling: int = sieve.DEFAULT_CEILING) -> float:
    """Sum of log N(P) over prime-ideal powers with norm <= x."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if x < 2:
        return 0.0
    _, weights, _, _ = ideal_event_arrays(fld, 1, x, ceiling=ceiling)
    return math.fsum(weights)


def pi_K(fld: NumberFieldSpec, x: float, *,
         ceiling: int = sieve.DEFAULT_CEILING) -> int:
    """Number of prime ideals with norm <= x."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if x < 2:
        return 0
    _, _, _, first = ideal_event_arrays(fld, 1, x, ceiling=ceiling)
    return int(np.count_nonzero(first))


# ---------------------------------------------------------------------------
# presets

def _preset_path():
    return resources.files("primelab") / "data" / "field_presets.txt"


def load_presets(path=None) -> dict:
    """Parse the preset file: lines `name; n_K; d_K; c_0 c_1 ... c_{n-1}`
    (monic, constant term first, leading 1 implied)."""
    out = {}
    src = open(path) if path is not None else _preset_path().open()
    with src as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [s.strip() for s in line.split(";")]
            if len(parts) != 4:
                raise ValueError(f"preset line {lineno}: expected 4 fields")
            name, n_str, d_str, coeff_str = parts
            coeffs = [int(c) for c in coeff_str.split()] + [1]
            fld = NumberFieldSpec.from_poly(coeffs, name=name)
            if fld.degree != int(n_str):
                raise ValueError(f"preset {name}: degree mismatch")
            if fld.field_disc != int(d_str):
                raise ValueError(f"preset {name}: discriminant mismatch")
            out[name] = fld
    return out


_presets_cache = None


def preset(name: str) -> NumberFieldSpec:
    global _presets_cache
    if _presets_cache is None:
        _presets_cache = load_presets()
    try:
        return _presets_cache[name]
    except KeyError:
        raise KeyError(f"unknown field preset {name!r}; have "
                       f"{sorted(_presets_cache)}") from None


def preset_names() -> list:
    global _presets_cache
    if _presets_cache is None:
        _presets_cache = load_presets()
    return sorted(_presets_cache)
