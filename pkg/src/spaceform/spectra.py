"""Spectra of spherical space forms S^(2dp-1)/rho(Gamma) for Type I groups.

The degree-2d irreducible fixed-point-free representation rho_{k,l} sends

    A -> diag(R(k/m), R(kr/m), ..., R(kr^(d-1)/m)),
    B -> block cyclic shift with corner block R(l/(n/d)),

so rho_{k,l}(A^a B^b) is (complex-form) a monomial matrix.  Its eigenvalues
are roots of unity; we track them as exponents of a fixed primitive L-th root
with L = m*n (every element order divides gcd(r^c-1,m)*n/c, which divides
m*n).  Per permutation cycle of length e = d/gcd(b,d) the characteristic
polynomial contributes a factor

    (1 - eta^M z^e)(1 - eta^(-M) z^e),
    M = [a*k*alpha(b)*r^(j-1)]_m * (L/m) + [l*b/gcd(b,d)]_(n/d) * (L*d/n),

with alpha(c) = sum_{h=1..d/gcd(d,c)} r^(gcd(d,c)*h); the e eigenvalue
exponents of each factor are the solutions of e*t = M (mod L), which are
evenly spaced.  Everything downstream (free-action checks, almost-conjugacy,
the generating function F_G(z) = (1-z^2)/|G| * sum_g det(I - gz)^-1, and the
Molien coefficients dim H^G_{q,k}) is exact arithmetic over Z or F_p.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadPrime,
    DegreeMismatch,
    GroupMismatch,
    InvalidRepresentation,
    PrimeTooSmall,
    SingularPoint,
)
from .groups import GroupElement, TypeIParams
from .numtheory import harmonic_dim, next_prime_in_progression, prime_factors

DEFAULT_PRIME_FLOOR = 10**18
DEFAULT_MOLIEN_TRUNCATION = 200

# (e, M) pairs: one (1 - eta^M z^e) factor of det(I - rho(g) z).
DetFactors = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RepParams:
    """Irreducible fixed-point-free representation rho_{k,l} of degree 2d."""

    group: TypeIParams
    k: int
    l: int

    def __post_init__(self):
        g = self.group
        object.__setattr__(self, "k", self.k % g.m)
        object.__setattr__(self, "l", self.l % g.n)
        if g.m > 1 and math.gcd(self.k, g.m) != 1:
            raise InvalidRepresentation(f"gcd(k={self.k}, m={g.m}) != 1")
        if g.n > 1 and math.gcd(self.l, g.n) != 1:
            raise InvalidRepresentation(f"gcd(l={self.l}, n={g.n}) != 1")

    @property
    def degree(self) -> int:
        return 2 * self.group.d


@dataclass(frozen=True)
class SumRep:
    """Direct sum of rho_{k,l} summands over one group; degree 2*d*p."""

    summands: tuple[RepParams, ...]

    def __post_init__(self):
        if not self.summands:
            raise InvalidRepresentation("SumRep needs at least one summand")
        g = self.summands[0].group
        if any(s.group != g for s in self.summands):
            raise GroupMismatch("SumRep summands must share one group")

    @property
    def group(self) -> TypeIParams:
        return self.summands[0].group

    @property
    def degree(self) -> int:
        return sum(s.degree for s in self.summands)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((s.k, s.l) for s in self.summands)

    @classmethod
    def from_pairs(cls, group: TypeIParams, pairs) -> "SumRep":
        return cls(tuple(RepParams(group, k, l) for k, l in pairs))

    @classmethod
    def rho11(cls, group: TypeIParams) -> "SumRep":
        return cls((RepParams(group, 1, 1),))


@dataclass(frozen=True)
class EigenExponentMultiset:
    """Multiset of exponents t: the eigenvalues are zeta_L^t, L = modulus."""

    modulus: int
    exponents: tuple[int, ...]

    @property
    def contains_zero(self) -> bool:
        return 0 in self.exponents

    def is_conjugation_closed(self) -> bool:
        negated = sorted((self.modulus - t) % self.modulus for t in self.exponents)
        return negated == list(self.exponents)

    def rescaled(self, modulus: int) -> "EigenExponentMultiset":
        if modulus % self.modulus != 0:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        f = modulus // self.modulus
        return EigenExponentMultiset(modulus, tuple(sorted(t * f for t in self.exponents)))


def _alpha(g: TypeIParams, c: int) -> int:
    """alpha(c) = sum_{h=1}^{d/gcd(d,c)} r^(gcd(d,c) h) mod m (paper convention)."""
    if g.m == 1:
        return 0
    cc = math.gcd(c, g.d)
    rc = pow(g.r, cc, g.m)
    total, t = 0, 1
    for _ in range(g.d // cc):
        t = t * rc % g.m
        total += t
    return total % g.m


def _element_det_factors(g: TypeIParams, k: int, l: int, a: int, b: int, L: int) -> DetFactors:
    """The 2*gcd(b,d) factors (e, M) of det(I - rho_{k,l}(A^a B^b) z)."""
    m, n, d = g.m, g.n, g.d
    c = math.gcd(b, d)
    e = d // c
    nd = n // d
    y = l * (b // c) % nd
    base = a * k % m * _alpha(g, b) % m if m > 1 else 0
    z_unit = L // m
    w_unit = L // nd
    factors = []
    rj = 1 % m
    for _ in range(c):
        M = (base * rj % m * z_unit + y * w_unit) % L
        factors.append((e, M))
        factors.append((e, (L - M) % L))
        if m > 1:
            rj = rj * g.r % m
    return tuple(sorted(factors))


def _factors_to_exponents(factors: DetFactors, L: int) -> tuple[int, ...]:
    """Expand each factor (e, M) into its e evenly spaced eigenvalue exponents."""
    exps = []
    for e, M in factors:
        if M % e:
            raise AssertionError(f"factor exponent {M} not divisible by cycle length {e}")
        step = L // e
        t0 = M // e
        exps.extend((t0 + i * step) % L for i in range(e))
    return tuple(sorted(exps))


def sum_rep_det_factors(rep: SumRep, x: GroupElement, L: int | None = None) -> DetFactors:
    g = rep.group
    if x.group != g:
        raise GroupMismatch(f"{x.group} vs {g}")
    L = L or g.m * g.n
    if L % (g.m * g.n):
        raise ValueError(f"modulus {L} must be a multiple of m*n = {g.m * g.n}")
    factors: list[tuple[int, int]] = []
    for s in rep.summands:
        factors.extend(_element_det_factors(g, s.k, s.l, x.a, x.b, L))
    return tuple(sorted(factors))


def char_poly_exponents(rep: RepParams, x: GroupElement, modulus: int | None = None) -> EigenExponentMultiset:
    """Eigenvalue exponents of rho_{k,l}(A^a B^b) as exponents of zeta_L."""
    g = rep.group
    if x.group != g:
        raise GroupMismatch(f"{x.group} vs {g}")
    L = modulus or g.m * g.n
    if L % (g.m * g.n):
        raise ValueError(f"modulus {L} must be a multiple of m*n = {g.m * g.n}")
    factors = _element_det_factors(g, rep.k, rep.l, x.a, x.b, L)
    return EigenExponentMultiset(L, _factors_to_exponents(factors, L))


# ----------------------------------------------------------------------
# Matrix oracle: explicit rho_{k,l} matrices over F_p, charpoly by
# Faddeev-LeVerrier.  Entirely independent of the exponent formulas above.

def _matmul(A, B, p):
    n = len(A)
    Bc = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) % p for col in Bc] for row in A]


def _matpow(A, k, p):
    n = len(A)
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    while k:
        if k & 1:
            R = _matmul(R, A, p)
        A = _matmul(A, A, p)
        k >>= 1
    return R


def _charpoly(A, p):
    """Coefficients (ascending) of det(zI - A) via Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = [[0] * n for _ in range(n)]
    ck = 1
    for k in range(1, n + 1):
        for i in range(n):
            Mk[i][i] = (Mk[i][i] + ck) % p
        Mk = _matmul(A, Mk, p)
        tr = sum(Mk[i][i] for i in range(n)) % p
        ck = -tr * pow(k, -1, p) % p
        coeffs[n - k] = ck
    return coeffs


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_from_exponents(exps: EigenExponentMultiset, p: int, root: int | None = None) -> tuple[int, ...]:
    """prod (z - eta^t) over the multiset, as ascending coefficients in F_p."""
    L = exps.modulus
    if (p - 1) % L:
        raise BadPrime(f"{L} does not divide p-1")
    eta = root if root is not None else root_of_unity(p, L)
    coeffs = [1]
    for t in exps.exponents:
        lam = pow(eta, t, p)
        coeffs = [0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] = (coeffs[i] - lam * coeffs[i + 1]) % p
    return tuple(coeffs)


def char_poly_matrix_oracle(rep: RepParams, x: GroupElement, p: int) -> tuple[int, ...]:
    """det(zI - rho_{k,l}(A^a B^b)) over F_p, built from the defining matrices.

    The real representation is pi + conj(pi); each part is the d x d complex
    matrix D^a S^b with D = diag(zeta_m^(k r^j)) and S the cyclic shift with
    corner omega^l, embedded in F_p via a primitive (m*n)-th root.
    """
    g = rep.group
    if x.group != g:
        raise GroupMismatch(f"{x.group} vs {g}")
    L = g.m * g.n
    if (p - 1) % L:
        raise BadPrime(f"L = {L} does not divide p-1 = {p - 1}")
    eta = root_of_unity(p, L)
    m, n, d = g.m, g.n, g.d
    result = [1]
    for base in (eta, pow(eta, p - 2, p)):
        zeta_m = pow(base, L // m, p)
        omega = pow(base, L // (n // d), p)
        D = [[0] * d for _ in range(d)]
        rj = 1 % m
        for j in range(d):
            D[j][j] = pow(zeta_m, rep.k * rj, p)
            rj = rj * g.r % m if m > 1 else 0
        S = [[0] * d for _ in range(d)]
        for j in range(1, d):
            S[j - 1][j] = 1
        S[d - 1][0] = pow(omega, rep.l, p)
        M = _matmul(_matpow(D, x.a, p), _matpow(S, x.b, p), p)
        result = _poly_mul(result, _charpoly(M, p), p)
    return tuple(result)


# ----------------------------------------------------------------------
# Representation equivalence and isometry.

def reps_equivalent(r1: RepParams, r2: RepParams) -> bool:
    """rho_{k,l} ~ rho_{k',l'} iff k' = eps*k*r^c mod m and l' = eps*l mod n/d."""
    if r1.group != r2.group:
        raise GroupMismatch(f"{r1.group} vs {r2.group}")
    g = r1.group
    nd = g.n // g.d
    for eps in (1, -1):
        if (r2.l - eps * r1.l) % nd:
            continue
        if g.m == 1:
            return True
        target = eps * r1.k % g.m
        for _ in range(g.d):
            if target == r2.k:
                return True
            target = target * g.r % g.m
    return False


def isometric_irreducible(r1: RepParams, r2: RepParams) -> bool:
    """True iff rho_1 ~ rho_2 after some automorphism: rho_{k,l} psi_{s,t,u} ~ rho_{sk,tl}."""
    if r1.group != r2.group:
        raise GroupMismatch(f"{r1.group} vs {r2.group}")
    g = r1.group
    s_values = [s for s in range(g.m) if math.gcd(s, g.m) == 1] or [0]
    for j in range(g.n // g.d):
        t = 1 + j * g.d
        if math.gcd(t, g.n) != 1:
            continue
        for s in s_values:
            if reps_equivalent(RepParams(g, s * r1.k, t * r1.l), r2):
                return True
    return False


def natural_bijection(g1: TypeIParams, g2: TypeIParams):
    """A_1^a B_1^b -> A_2^a B_2^b for groups sharing (m, n)."""
    if (g1.m, g1.n) != (g2.m, g2.n):
        raise GroupMismatch("natural bijection needs equal (m, n)")
    return lambda x: GroupElement(g2, x.a, x.b)


def almost_conjugate(rep1: SumRep, rep2: SumRep, bijection=None) -> bool:
    """True iff eigenvalue multisets agree element-by-element under the bijection.

    This is the almost-conjugacy test; success implies strong isospectrality
    of the two space forms.
    """
    g1, g2 = rep1.group, rep2.group
    if g1.order != g2.order:
        raise GroupMismatch(f"|G1| = {g1.order} != |G2| = {g2.order}")
    if rep1.degree != rep2.degree:
        raise DegreeMismatch(f"degrees {rep1.degree} != {rep2.degree}")
    if bijection is None:
        bijection = natural_bijection(g1, g2)
    L = math.lcm(g1.m * g1.n, g2.m * g2.n)
    for x in g1.elements():
        f1 = sum_rep_det_factors(rep1, x, L)
        f2 = sum_rep_det_factors(rep2, bijection(x), L)
        if f1 != f2 and _factors_to_exponents(f1, L) != _factors_to_exponents(f2, L):
            return False
    return True


# ----------------------------------------------------------------------
# Determinant classes and the generating function F_G(z) over F_p.

def det_classes(rep: SumRep, L: int | None = None) -> tuple[tuple[DetFactors, int], ...]:
    """Group elements bucketed by their det(I - gz) factorization, with counts."""
    g = rep.group
    L = L or g.m * g.n
    counts: dict[DetFactors, int] = {}
    for a in range(g.m):
        for b in range(g.n):
            factors: list[tuple[int, int]] = []
            for s in rep.summands:
                factors.extend(_element_det_factors(g, s.k, s.l, a, b, L))
            key = tuple(sorted(factors))
            counts[key] = counts.get(key, 0) + 1
    return tuple(sorted(counts.items()))


def degree_bound_from_classes(classes, degree: int) -> int:
    """Numerator/denominator degree bound for F_G over the product of the
    distinct determinant polynomials: 2 + (#classes) * (2dp)."""
    return 2 + len(classes) * degree


def degree_bound(rep: SumRep, L: int | None = None) -> int:
    return degree_bound_from_classes(det_classes(rep, L), rep.degree)


def prime_seed_offset() -> int:
    """SPACEFORM_PRIME_SEED shifts the prime scan start (breaks reproducibility)."""
    seed = os.environ.get("SPACEFORM_PRIME_SEED")
    if not seed:
        return 0
    return random.Random(int(seed)).randrange(1, 1_000_000)


@lru_cache(maxsize=None)
def choose_prime(L: int, floor: int = DEFAULT_PRIME_FLOOR) -> int:
    """Smallest prime p = 1 + t*L with p > floor (deterministic policy)."""
    return next_prime_in_progression(L, floor, prime_seed_offset())


@lru_cache(maxsize=None)
def root_of_unity(p: int, L: int) -> int:
    """Deterministic element of exact multiplicative order L in F_p."""
    if (p - 1) % L:
        raise BadPrime(f"L = {L} does not divide p-1 = {p - 1}")
    if L == 1:
        return 1
    qs = prime_factors(L)
    x = 2
    while True:
        eta = pow(x, (p - 1) // L, p)
        if eta != 1 and all(pow(eta, L // q, p) != 1 for q in qs):
            return eta
        x += 1


def select_points(p: int, L: int, count: int) -> tuple[int, ...]:
    """First `count` integers z >= 2 that are not L-th roots of unity in F_p.

    Every pole of a det(I - gz)^-1 term is an L-th root of unity, so these
    points are never singular; the rule is group-independent, which keeps
    point lists shared across any groups of the same order.
    """
    points = []
    z = 2
    while len(points) < count:
        if pow(z, L, p) != 1:
            points.append(z)
        z += 1
    return tuple(points)


def _class_field_data(classes, p: int, root: int):
    """Per class: (count, [(e, det coefficients ascending in X = z^e), ...]).

    All factors of one element share e (the permutation-cycle length depends
    only on b), so the group list normally has a single entry; the general
    grouping is kept for safety.  Expanding the product once lets each point
    be evaluated by Horner with one multiplication per factor.
    """
    data = []
    for factors, count in classes:
        by_e: dict[int, list[int]] = {}
        for e, M in factors:
            by_e.setdefault(e, []).append(pow(root, M, p))
        groups = []
        for e in sorted(by_e):
            coeffs = [1]  # ascending in X
            for em in by_e[e]:
                coeffs.append(0)
                for i in range(len(coeffs) - 1, 0, -1):
                    coeffs[i] = (coeffs[i] - em * coeffs[i - 1]) % p
            groups.append((e, tuple(coeffs)))
        data.append((count, tuple(groups)))
    return data


def _evaluate_sum(class_data, group_order: int, p: int, points) -> tuple[int, ...]:
    """F_G(z_i) = (1-z^2)/|G| * sum_g det(I - g z)^-1 at each point, over F_p."""
    es = sorted({e for _, groups in class_data for e, _ in groups})
    inv_order = pow(group_order, p - 2, p)
    ncl = len(class_data)
    dets = [0] * ncl
    prefix = [0] * ncl
    values = []
    for z in points:
        zp = {e: pow(z, e, p) for e in es}
        for i, (_, groups) in enumerate(class_data):
            acc = 1
            for e, coeffs in groups:
                x = zp[e]
                h = coeffs[-1]
                for c in coeffs[-2::-1]:
                    h = (h * x + c) % p
                acc = acc * h % p if acc != 1 else h
            dets[i] = acc
        # Batched inversion: one modular exponentiation for all classes.
        acc = 1
        for i in range(ncl):
            prefix[i] = acc
            acc = acc * dets[i] % p
        if acc == 0:
            raise SingularPoint(f"z = {z} is a pole of some det(I - gz)")
        inv_acc = pow(acc, p - 2, p)
        total = 0
        for i in range(ncl - 1, -1, -1):
            total += class_data[i][0] * (inv_acc * prefix[i] % p)
            inv_acc = inv_acc * dets[i] % p
        values.append((1 - z * z) * inv_order % p * (total % p) % p)
    return tuple(values)


def evaluate_f_values(classes, group_order: int, p: int, root: int, points) -> tuple[int, ...]:
    """Exact values of F_G at the given points (classes from det_classes)."""
    return _evaluate_sum(_class_field_data(classes, p, root), group_order, p, points)


@dataclass(frozen=True)
class SpectrumFingerprint:
    """Deterministic evaluation record of F_G(z) over F_p."""

    m: int
    n: int
    d: int
    r: int
    reps: tuple[tuple[int, int], ...]
    p: int
    root: int
    degree_bound: int
    points: tuple[int, ...]
    values: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "d": self.d, "r": self.r,
            "reps": [list(kl) for kl in self.reps],
            "p": self.p, "root": self.root, "degree_bound": self.degree_bound,
            "points": list(self.points), "values": list(self.values),
        }

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")).encode()

    def evidence_dict(self) -> dict:
        """Group-independent part shared by both members of an isospectral pair."""
        shared = {
            "m": self.m, "n": self.n, "d": self.d,
            "reps": [list(kl) for kl in self.reps],
            "p": self.p, "root": self.root, "degree_bound": self.degree_bound,
            "points": list(self.points), "values": list(self.values),
        }
        blob = json.dumps(shared, sort_keys=True, separators=(",", ":")).encode()
        return {
            "m": self.m, "n": self.n, "d": self.d,
            "reps": [list(kl) for kl in self.reps],
            "p": self.p, "root": self.root, "degree_bound": self.degree_bound,
            "num_points": len(self.points),
            "sha256": hashlib.sha256(blob).hexdigest(),
            "values_preview": list(self.values[:4]),
        }


def fingerprint(rep: SumRep, p: int | None = None, points=None,
                prime_floor: int = DEFAULT_PRIME_FLOOR) -> SpectrumFingerprint:
    """Evaluate F_G at deterministic points; see select_points for the rule."""
    fps = shared_fingerprints([rep], p=p, points=points, prime_floor=prime_floor)
    return fps[0]


def shared_fingerprints(reps: list[SumRep], p: int | None = None, points=None,
                        prime_floor: int = DEFAULT_PRIME_FLOOR) -> list[SpectrumFingerprint]:
    """Fingerprints of several same-order groups on one shared (p, root, points).

    The shared degree bound is the max of the per-group bounds, so equality of
    two value vectors proves equality of the generating functions.
    """
    orders = {sr.group.m * sr.group.n for sr in reps}
    if len(orders) != 1:
        raise GroupMismatch("shared fingerprints require equal group order")
    L = orders.pop()
    all_classes = [det_classes(sr, L) for sr in reps]
    db = max(degree_bound_from_classes(cl, sr.degree) for cl, sr in zip(all_classes, reps))
    if p is None:
        p = choose_prime(L, prime_floor)
    elif (p - 1) % L:
        raise BadPrime(f"L = {L} does not divide p-1 = {p - 1}")
    root = root_of_unity(p, L)
    if points is None:
        points = select_points(p, L, 2 * db + 1)
    else:
        points = tuple(points)
    out = []
    for sr, classes in zip(reps, all_classes):
        g = sr.group
        values = evaluate_f_values(classes, g.order, p, root, points)
        out.append(SpectrumFingerprint(g.m, g.n, g.d, g.r, sr.pairs, p, root, db, points, values))
    return out


@dataclass(frozen=True)
class MolienSeries:
    """First truncation+1 coefficients dim H^G_{q,k} of F_G."""

    truncation: int
    coefficients: tuple[int, ...]


def molien_coefficients(rep: SumRep, truncation: int = DEFAULT_MOLIEN_TRUNCATION,
                        p: int | None = None,
                        prime_floor: int = DEFAULT_PRIME_FLOOR) -> MolienSeries:
    """Power-series coefficients of F_G, lifted from F_p to integers.

    Each class determinant is inverted as a truncated power series; the prime
    must exceed dim H_{q,K} so the lift is unique.
    """
    g = rep.group
    L = g.m * g.n
    q = rep.degree - 1
    coeff_bound = max(harmonic_dim(q, k) for k in range(truncation + 1))
    if p is None:
        p = choose_prime(L, max(prime_floor, coeff_bound))
    else:
        if (p - 1) % L:
            raise BadPrime(f"L = {L} does not divide p-1 = {p - 1}")
        if p <= coeff_bound:
            raise PrimeTooSmall(f"p = {p} <= dim H_({q},{truncation}) = {coeff_bound}")
    root = root_of_unity(p, L)
    coeffs = _molien_from_classes(det_classes(rep, L), rep.degree, g.order, truncation, p, root)
    return MolienSeries(truncation, tuple(coeffs))


def _molien_from_classes(classes, degree: int, group_order: int, K: int, p: int, root: int) -> list[int]:
    """Lifted coefficients of (1-z^2)/|G| * sum_C count/det_C as a power series."""
    total = [0] * (K + 1)
    for factors, count in classes:
        det = [0] * (degree + 1)
        det[0] = 1
        deg = 0
        for e, M in factors:
            em = pow(root, M, p)
            for i in range(deg, -1, -1):
                det[i + e] = (det[i + e] - em * det[i]) % p
            deg += e
        inv = [0] * (K + 1)
        inv[0] = 1
        for t in range(1, K + 1):
            s = 0
            for j in range(1, min(t, deg) + 1):
                if det[j]:
                    s += det[j] * inv[t - j]
            inv[t] = -s % p
        for t in range(K + 1):
            total[t] = (total[t] + count * inv[t]) % p
    inv_order = pow(group_order, p - 2, p)
    return [(total[k] - (total[k - 2] if k >= 2 else 0)) * inv_order % p for k in range(K + 1)]
