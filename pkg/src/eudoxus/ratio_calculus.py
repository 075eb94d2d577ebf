"""Ratios of geometric quantities and their operator form.

A ratio antecedent:consequent (consequent an order unit) is carried with
a decomposition of the consequent into pairwise-incomparable components,
a real multiplier lambda per component and its exact rational bracket.
Every ratio corresponds to a unique self-adjoint cone derivation mapping
consequent to antecedent, and every self-adjoint derivation arises this
way from its spectral faces; composition and addition of ratios are
operator composition and sum, with the Jordan symmetrized product as
the fallback when a product leaves the self-adjoint world.

The classical one-dimensional theory (iteration, partition, cut classes,
ex aequali, compositio, step-figure quadrature) runs on exact rationals.
"""

from fractions import Fraction

import numpy as np

from eudoxus.cone_space import TOL, Membership
from eudoxus.exact_rational import (
    CLASS_ABOVE,
    CLASS_BELOW,
    CLASS_EQUAL,
    CutOracle,
    FractionCutOracle,
    classify_fraction,
    stern_brocot_bracket,
)
from eudoxus.face_lattice import face_of, facial_derivative, minimal_decomposition
from eudoxus.derivation_algebra import (
    Derivation,
    is_derivation,
    reconstruct_from_faces,
    selfadjoint_derivations,
    spectral_faces,
)


class NotAnOrderUnit(ValueError):
    pass


class NotComparable(ValueError):
    pass


# ---------------------------------------------------------------------------
# classical one-dimensional operations

def iterate(n, a):
    """n-fold sum of a quantity, n >= 1."""
    if n < 1:
        raise ValueError("iteration count must be >= 1")
    return n * a


def partition(a, n):
    """The unique x with n x = a, n >= 1."""
    if n < 1:
        raise ValueError("partition count must be >= 1")
    if isinstance(a, (int, Fraction)):
        return Fraction(a, n)
    return a / n


def apply_fraction(q, a):
    """Act by a fraction: iterate by the numerator, partition by the
    denominator.  Representation-free: equal fractions act identically."""
    q = Fraction(q)
    return partition(iterate(q.numerator, a), q.denominator)


def archimedes_check(space, a, b, N):
    """Is there n <= N with n a > b?  Monotone in n, so testing n = N
    suffices."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if space is None:
        return N * a > b
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return space.lt(b, N * a)


# ---------------------------------------------------------------------------
# the cone-order cut oracle

class RayCutOracle(CutOracle):
    """Cut oracle for the ratio of two parallel cone elements.

    strict_above(m, n) decides m a - n a' in the (relative) interior of
    the ray order; on a ray this is a scalar comparison, with the
    membership tolerance band reported as an exact hit.
    """

    def __init__(self, a_prime, a):
        a = np.asarray(a, dtype=float)
        a_prime = np.asarray(a_prime, dtype=float)
        na = np.dot(a, a)
        if na <= 0:
            raise ValueError("consequent component is zero")
        self.scale = np.sqrt(na)
        self.t_a = self.scale
        self.t_ap = float(np.dot(a_prime, a)) / self.scale

    def strict_above(self, m, n):
        diff = m * self.t_a - n * self.t_ap
        return diff > TOL * (abs(m) * self.t_a + abs(n) * abs(self.t_ap))

    def exact_hit(self, m, n):
        diff = m * self.t_a - n * self.t_ap
        return abs(diff) <= TOL * (abs(m) * self.t_a + abs(n) * abs(self.t_ap))


# ---------------------------------------------------------------------------
# ratios

class Ratio:
    """antecedent : consequent with its incomparable decomposition.

    decomposition entries are (lam, bracket, component): the consequent
    is the sum of the components, the antecedent acts as lam on each,
    and bracket is the exact rational Stern-Brocot bracket of lam (None
    when lam is not positive, which is admitted but flagged).
    """

    def __init__(self, host, antecedent, consequent, decomposition):
        self.host = host
        self.antecedent = np.asarray(antecedent, dtype=float)
        self.consequent = np.asarray(consequent, dtype=float)
        self.decomposition = decomposition
        self.has_negative = any(lam < -TOL for lam, _, _ in decomposition)

    def lambdas(self):
        return [lam for lam, _, _ in self.decomposition]

    def __repr__(self):
        return "Ratio(lambdas=%s over %r)" % (
            ["%.6g" % lam for lam in self.lambdas()], self.host)


def _solve_selfadjoint_derivation(space, a, a_prime):
    """The self-adjoint derivation with delta a = a_prime, if one exists.
    Order units separate derivations, so it is unique when it exists."""
    basis = selfadjoint_derivations(space)
    A = np.array([b.mat @ a for b in basis]).T
    coef, _, _, _ = np.linalg.lstsq(A, a_prime, rcond=None)
    resid = np.linalg.norm(A @ coef - a_prime)
    if resid > 1e-8 * max(1.0, np.linalg.norm(a_prime)):
        return None
    mat = sum(c * b.mat for c, b in zip(coef, basis))
    return Derivation(space, mat)


def ratio_from_pair(space, a_prime, a, max_den=10**6):
    """Compose the ratio a_prime : a over an order-unit consequent.

    The consequent must be interior; the antecedent must act
    face-diagonally on some incomparable decomposition of the consequent
    (equivalently, some self-adjoint derivation maps a to a_prime).
    """
    a = np.asarray(a, dtype=float)
    a_prime = np.asarray(a_prime, dtype=float)
    if not space.is_order_unit(a):
        raise NotAnOrderUnit("consequent is not an order unit")
    delta = _solve_selfadjoint_derivation(space, a, a_prime)
    if delta is None:
        raise NotComparable("antecedent is not face-diagonal over the consequent")
    return _ratio_from_derivation_and_unit(space, delta, a, max_den)


def _ratio_from_derivation_and_unit(space, delta, a, max_den):
    family = spectral_faces(space, delta)
    decomposition = []
    recovered = np.zeros(space.dim)
    for lam, F in family.nonzero_entries():
        aF = F.projector @ a
        recovered = recovered + aF
        for coeff, comp in minimal_decomposition(space, aF):
            piece = coeff * comp
            bracket = None
            if lam > TOL:
                oracle = RayCutOracle(lam * piece, piece)
                bracket = stern_brocot_bracket(oracle, max_den)
            decomposition.append((float(lam), bracket, piece))
    # the consequent must split along the spectral faces, otherwise the
    # antecedent is not face-diagonal over any decomposition of it
    if np.linalg.norm(recovered - a) > 1e-7 * max(1.0, np.linalg.norm(a)):
        raise NotComparable("consequent does not decompose along the "
                            "antecedent's spectral faces")
    antecedent = delta.mat @ a
    return Ratio(space, antecedent, a, decomposition)


def to_derivation(r):
    """The unique self-adjoint derivation mapping consequent to
    antecedent: the lam-weighted sum of the facial derivatives of the
    decomposition component faces.

    For a complete pairwise-incomparable family the facial derivatives
    act as identity on their own face, zero on its orthogonal face and
    one half in between, so the cross directions automatically pick up
    the mean of the adjacent multipliers.
    """
    space = r.host
    total = np.zeros((space.dim, space.dim))
    for lam, _, piece in r.decomposition:
        F = face_of(space, piece)
        total = total + lam * facial_derivative(F).mat
    return Derivation(space, total)


def from_derivation(space, delta, max_den=10**6):
    """The ratio of a self-adjoint derivation: consequent is the sum of
    the units of its nonzero spectral faces, antecedent its image."""
    if not isinstance(delta, Derivation):
        delta = Derivation(space, delta)
    verdict = is_derivation(space, delta.mat)
    if not verdict:
        raise ValueError("not a derivation: %r" % verdict)
    family = spectral_faces(space, delta)
    a = np.zeros(space.dim)
    for lam, F in family.nonzero_entries():
        a = a + F.witness
    if space.membership(a) is not Membership.INTERIOR:
        raise ValueError("spectral-face units do not sum to an order unit")
    return _ratio_from_derivation_and_unit(space, delta, a, max_den)


# ---------------------------------------------------------------------------
# equality

def _comparable(r, s):
    if r.host is not s.host and (
            r.host.kind != s.host.kind or r.host.dim != s.host.dim):
        return False
    dr = to_derivation(r).mat
    ds = to_derivation(s).mat
    scale = max(np.linalg.norm(dr) * np.linalg.norm(ds), 1.0)
    return np.linalg.norm(dr @ ds - ds @ dr) <= 1e-8 * scale


def ratio_equal(r, s, max_den=None):
    """Generalized cut equality of two ratios.

    Comparability requires commuting derivations (a matched common
    decomposition); incomparable ratios raise NotComparable, which is a
    different outcome from inequality.  With max_den the test runs on
    the exact rational brackets of the matched multipliers (both the
    three-class and the two-condition cut criteria, which must agree);
    without it, matched multipliers are compared at tolerance.
    """
    if not _comparable(r, s):
        raise NotComparable("ratios do not admit a matched decomposition")
    dr = to_derivation(r)
    ds = to_derivation(s)
    if max_den is None:
        scale = max(dr.norm(), ds.norm(), 1.0)
        return np.linalg.norm(dr.mat - ds.mat, 2) <= 1e-8 * scale
    for lam_r, lam_s in _joint_eigenvalues(dr.mat, ds.mat):
        if lam_r <= TOL or lam_s <= TOL:
            if abs(lam_r - lam_s) > 1e-8 * max(1.0, abs(lam_r), abs(lam_s)):
                return False
            continue
        if not cuts_equal(RealOracleFromValue(lam_r), RealOracleFromValue(lam_s), max_den):
            return False
    return True


def _joint_eigenvalues(A, B):
    """Paired eigenvalues of two commuting symmetric matrices along a
    joint eigenbasis: diagonalize A, then B within each eigenspace."""
    w, V = np.linalg.eigh(A)
    pairs = []
    i = 0
    n = len(w)
    while i < n:
        j = i
        while j + 1 < n and w[j + 1] - w[i] <= 1e-8 * max(1.0, abs(w[i])):
            j += 1
        Vc = V[:, i:j + 1]
        sub = Vc.T @ B @ Vc
        wb = np.linalg.eigvalsh(sub)
        for lb in wb:
            pairs.append((float(w[i]), float(lb)))
        i = j + 1
    return pairs


class RealOracleFromValue(CutOracle):
    """Banded oracle for a floating multiplier, mirroring RayCutOracle."""

    def __init__(self, value):
        self.value = float(value)

    def strict_above(self, m, n):
        return m - n * self.value > TOL * (abs(m) + abs(n * self.value))

    def exact_hit(self, m, n):
        return abs(m - n * self.value) <= TOL * (abs(m) + abs(n * self.value))


def cuts_equal(o1, o2, max_den):
    """Do two cuts agree at denominator resolution max_den?  True iff
    their Stern-Brocot brackets overlap."""
    lo1, hi1 = stern_brocot_bracket(o1, max_den)
    lo2, hi2 = stern_brocot_bracket(o2, max_den)
    return not (hi1 < lo2 or hi2 < lo1)


def eudoxus_equal_three(o1, o2, fractions):
    """Three-class equality criterion: every test fraction falls in the
    same class (below/equal/above) for both cuts."""
    return all(classify_fraction(q, o1) == classify_fraction(q, o2)
               for q in fractions)


def eudoxus_equal_two(o1, o2, fractions):
    """Two-condition variant: agreement of the below class and of the
    not-above (below-or-equal) class."""
    for q in fractions:
        c1 = classify_fraction(q, o1)
        c2 = classify_fraction(q, o2)
        if (c1 == CLASS_BELOW) != (c2 == CLASS_BELOW):
            return False
        if (c1 != CLASS_ABOVE) != (c2 != CLASS_ABOVE):
            return False
    return True


# ---------------------------------------------------------------------------
# composition and addition

class JordanOnly:
    """Marker result: the operator product left the self-adjoint
    derivations, so only the symmetrized product is returned."""

    def __init__(self, derivation):
        self.derivation = derivation
        self.jb_only = True


def compose(r, s, max_den=10**6):
    """Operator composition of ratios.  For comparable (commuting)
    ratios the product is again a self-adjoint derivation and a Ratio is
    returned; otherwise the Jordan symmetrized product is returned,
    flagged."""
    dr = to_derivation(r)
    ds = to_derivation(s)
    prod = dr.mat @ ds.mat
    scale = max(np.linalg.norm(prod), 1.0)
    if np.linalg.norm(prod - prod.T) <= 1e-8 * scale and is_derivation(r.host, prod):
        return from_derivation(r.host, prod, max_den=max_den)
    return JordanOnly(jordan_compose(r, s))


def jordan_compose(r, s):
    """The symmetrized product (dr ds + ds dr) / 2, always defined."""
    dr = to_derivation(r)
    ds = to_derivation(s)
    return Derivation(r.host, 0.5 * (dr.mat @ ds.mat + ds.mat @ dr.mat))


def add(r, s, max_den=10**6):
    """Sum of ratios: derivations add (the derivation space is linear)."""
    dr = to_derivation(r)
    ds = to_derivation(s)
    return from_derivation(r.host, dr.mat + ds.mat, max_den=max_den)


# ---------------------------------------------------------------------------
# classical checks on exact rationals

def classic_ratio_equal(a_prime, a, c_prime, c):
    """Exact equality of segment ratios a':a and c':c."""
    return Fraction(a_prime) * Fraction(c) == Fraction(c_prime) * Fraction(a)


def ex_aequali_check(a, b, c, a_prime, b_prime, c_prime):
    """The perturbed ex aequali law: from a:b = b':c' and b:c = a':b'
    conclude a:c = a':c'.  Exact rationals; Vacuous when the hypothesis
    fails."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    ap, bp, cp = Fraction(a_prime), Fraction(b_prime), Fraction(c_prime)
    if not (classic_ratio_equal(a, b, bp, cp) and classic_ratio_equal(b, c, ap, bp)):
        return "Vacuous"
    return classic_ratio_equal(a, c, ap, cp)


def compositio_check(a_prime, a, b_prime, b):
    """From a':a = b':b conclude (a'+b'):(a+b) equals both.  Exact
    rationals; Vacuous when the hypothesis fails."""
    ap, a = Fraction(a_prime), Fraction(a)
    bp, b = Fraction(b_prime), Fraction(b)
    if not classic_ratio_equal(ap, a, bp, b):
        return "Vacuous"
    return (classic_ratio_equal(ap + bp, a + b, ap, a)
            and classic_ratio_equal(ap + bp, a + b, bp, b))


def classic_add(a_prime, a, c_prime, c):
    """Sum of segment ratios by the common-consequent construction:
    bring both to the consequent b' = a c and add antecedents."""
    ap, a = Fraction(a_prime), Fraction(a)
    cp, c = Fraction(c_prime), Fraction(c)
    b = a * c
    return (ap * c + cp * a), b


def classic_compose(a_prime, a, c_prime, c):
    """Product of segment ratios via the chain construction."""
    ap, a = Fraction(a_prime), Fraction(a)
    cp, c = Fraction(c_prime), Fraction(c)
    return ap * cp, a * c


# ---------------------------------------------------------------------------
# quadrature demos

def quadrature_demo(f, k):
    """Inscribed and circumscribed step sums of a monotone f on [0, 1]
    with k equal bases.

    Returns (lower, upper, ultimate_ratio_gap) where the gap is
    upper/lower - 1; with a rational-valued f everything is exact.  The
    bracket width upper - lower equals (f(1) - f(0))/k.
    """
    if k < 1:
        raise ValueError("need at least one subdivision")
    xs = [Fraction(i, k) for i in range(k + 1)]
    vals = [f(x) for x in xs]
    increasing = all(b >= a for a, b in zip(vals, vals[1:]))
    decreasing = all(b <= a for a, b in zip(vals, vals[1:]))
    if not (increasing or decreasing):
        raise ValueError("samples are not monotone")
    base = Fraction(1, k)
    lower = sum(min(u, v) for u, v in zip(vals, vals[1:])) * base
    upper = sum(max(u, v) for u, v in zip(vals, vals[1:])) * base
    gap = upper / lower - 1 if lower != 0 else Fraction(0)
    return lower, upper, gap


def quadrature_ratio_demo(f, g, k):
    """Two step figures whose columns are in a fixed ratio rho have
    areas in that same ratio, exactly, at every subdivision count.

    Returns (rho, lower_ratio_holds, upper_ratio_holds).
    """
    lf, uf, _ = quadrature_demo(f, k)
    lg, ug, _ = quadrature_demo(g, k)
    rhos = set()
    for i in range(k + 1):
        x = Fraction(i, k)
        fv, gv = f(x), g(x)
        if fv != 0:
            rhos.add(Fraction(gv) / Fraction(fv))
    if len(rhos) != 1:
        raise ValueError("columns are not in a single fixed ratio")
    rho = rhos.pop()
    return rho, lg == rho * lf, ug == rho * uf
