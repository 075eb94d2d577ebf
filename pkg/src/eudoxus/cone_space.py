"""Finite-dimensional inner-product spaces ordered by a self-dual cone.

Built-in cone kinds (nonnegative orthant, second-order cone, real
symmetric and complex Hermitian positive semidefinite cones) plus
finitely generated polyhedral cones.  Matrix cones are carried in
isometric vectorization so that the trace inner product coincides with
the Euclidean one on coordinates and every linear operator is a plain
matrix.

The single tolerance knob TOL classifies membership: Boundary is a band
of relative width TOL around the topological boundary, and every strict
comparison downstream routes through it.
"""

import itertools
from enum import Enum

import numpy as np
from scipy.optimize import linprog, nnls

TOL = 1e-9

SQRT2 = np.sqrt(2.0)


class Membership(Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


# ---------------------------------------------------------------------------
# isometric vectorizations

def sym_to_vec(A):
    """Symmetric k x k matrix -> vector of length k(k+1)/2.

    Off-diagonal entries scaled by sqrt(2) so <A,B>_F = <vec A, vec B>.
    """
    A = np.asarray(A, dtype=float)
    k = A.shape[0]
    out = []
    for i in range(k):
        out.append(A[i, i])
        for j in range(i + 1, k):
            out.append(SQRT2 * A[i, j])
    return np.array(out)


def vec_to_sym(v):
    v = np.asarray(v, dtype=float)
    d = len(v)
    k = int(round((np.sqrt(8 * d + 1) - 1) / 2))
    if k * (k + 1) // 2 != d:
        raise ValueError("length is not a triangular number")
    A = np.zeros((k, k))
    idx = 0
    for i in range(k):
        A[i, i] = v[idx]
        idx += 1
        for j in range(i + 1, k):
            A[i, j] = A[j, i] = v[idx] / SQRT2
            idx += 1
    return A


def herm_to_vec(A):
    """Hermitian k x k matrix -> real vector of length k^2 (isometric)."""
    A = np.asarray(A, dtype=complex)
    k = A.shape[0]
    out = []
    for i in range(k):
        out.append(A[i, i].real)
        for j in range(i + 1, k):
            out.append(SQRT2 * A[i, j].real)
            out.append(SQRT2 * A[i, j].imag)
    return np.array(out)


def vec_to_herm(v):
    v = np.asarray(v, dtype=float)
    d = len(v)
    k = int(round(np.sqrt(d)))
    if k * k != d:
        raise ValueError("length is not a perfect square")
    A = np.zeros((k, k), dtype=complex)
    idx = 0
    for i in range(k):
        A[i, i] = v[idx]
        idx += 1
        for j in range(i + 1, k):
            re = v[idx] / SQRT2
            im = v[idx + 1] / SQRT2
            idx += 2
            A[i, j] = re + 1j * im
            A[j, i] = re - 1j * im
    return A


# ---------------------------------------------------------------------------
# polyhedral helpers

def _conic_residual(G, x):
    """Distance from x to cone(columns of G) via nonnegative least squares."""
    coeff, res = nnls(G, x)
    return res


def polyhedral_dual_generators(G):
    """Extreme rays of {y : G^T y >= 0} for full-dimensional cone(G).

    Facet enumeration by brute force over generator subsets; adequate for
    the low dimensions polyhedral cones are used in here.
    """
    G = np.asarray(G, dtype=float)
    dim, m = G.shape
    if dim == 1:
        return np.array([[1.0]]) if np.all(G > 0) else np.array([[-1.0]])
    rays = []
    for subset in itertools.combinations(range(m), dim - 1):
        A = G[:, subset].T
        # null space of the chosen generators
        _, s, vt = np.linalg.svd(A, full_matrices=True)
        rank = int(np.sum(s > 1e-10)) if len(s) else 0
        if rank != dim - 1:
            continue
        y = vt[-1]
        pair = G.T @ y
        scale = max(np.max(np.abs(pair)), 1.0)
        if np.all(pair >= -1e-10 * scale):
            cand = y
        elif np.all(pair <= 1e-10 * scale):
            cand = -y
        else:
            continue
        cand = cand / np.linalg.norm(cand)
        if not any(np.allclose(cand, r, atol=1e-9) for r in rays):
            rays.append(cand)
    if not rays:
        raise ValueError("could not enumerate dual generators; cone degenerate?")
    return np.column_stack(rays)


def _is_pointed(G):
    """cone(G) pointed iff 0 is not a nontrivial nonnegative combination."""
    dim, m = G.shape
    res = linprog(
        c=np.zeros(m),
        A_eq=np.vstack([G, np.ones((1, m))]),
        b_eq=np.concatenate([np.zeros(dim), [1.0]]),
        bounds=[(0, None)] * m,
        method="highs",
    )
    return not res.success


# ---------------------------------------------------------------------------

class ConeSpace:
    """An inner-product space R^dim together with a closed pointed cone.

    Construct through the classmethods orthant / lorentz / psd_real /
    hermitian / polyhedral.  Immutable after construction; all queries
    are pure.
    """

    def __init__(self, kind, dim, param=None, generators=None, dual_generators=None):
        self.kind = kind
        self.dim = dim
        self.param = param
        self.generators = generators
        self.dual_generators = dual_generators

    # -- constructors -------------------------------------------------------

    @classmethod
    def orthant(cls, n):
        if n < 1:
            raise ValueError("orthant dimension must be >= 1")
        return cls("orthant", n, param=n)

    @classmethod
    def lorentz(cls, n):
        if n < 2:
            raise ValueError("lorentz cone needs ambient dimension >= 2")
        return cls("lorentz", n, param=n)

    @classmethod
    def psd_real(cls, k):
        if k < 1:
            raise ValueError("matrix size must be >= 1")
        return cls("psd_real", k * (k + 1) // 2, param=k)

    @classmethod
    def hermitian(cls, k):
        if k < 1:
            raise ValueError("matrix size must be >= 1")
        return cls("hermitian", k * k, param=k)

    @classmethod
    def polyhedral(cls, generators):
        G = np.column_stack([np.asarray(g, dtype=float) for g in generators])
        dim = G.shape[0]
        norms = np.linalg.norm(G, axis=0)
        if np.any(norms < 1e-12):
            raise ValueError("zero generator")
        if np.linalg.matrix_rank(G, tol=1e-10) < dim:
            raise ValueError("generators do not span the space; cone has empty interior")
        if not _is_pointed(G):
            raise ValueError("cone contains a line")
        D = polyhedral_dual_generators(G)
        return cls("polyhedral", dim, generators=G, dual_generators=D)

    def __repr__(self):
        if self.kind == "polyhedral":
            return "ConeSpace(polyhedral, dim=%d, %d generators)" % (
                self.dim, self.generators.shape[1])
        return "ConeSpace(%s, param=%d, dim=%d)" % (self.kind, self.param, self.dim)

    # -- basic geometry -----------------------------------------------------

    def _check_dim(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError("dimension mismatch: expected %d, got %s" % (self.dim, x.shape))
        return x

    def margin(self, x):
        """Signed distance-like quantity: positive inside, negative outside.

        orthant: min coordinate; lorentz: t - ||z||; matrix cones: minimal
        eigenvalue; polyhedral: minimal pairing with normalized dual rays.
        """
        x = self._check_dim(x)
        if self.kind == "orthant":
            return float(np.min(x))
        if self.kind == "lorentz":
            return float(x[0] - np.linalg.norm(x[1:]))
        if self.kind == "psd_real":
            return float(np.min(np.linalg.eigvalsh(vec_to_sym(x))))
        if self.kind == "hermitian":
            return float(np.min(np.linalg.eigvalsh(vec_to_herm(x))))
        if self.kind == "polyhedral":
            return float(np.min(self.dual_generators.T @ x))
        raise AssertionError(self.kind)

    def membership(self, x):
        x = self._check_dim(x)
        nrm = np.linalg.norm(x)
        if nrm == 0.0:
            return Membership.BOUNDARY
        m = self.margin(x)
        # absolute floor so roundoff-sized vectors stay on the boundary
        band = TOL * max(nrm, 1.0)
        if m > band:
            return Membership.INTERIOR
        if m < -band:
            return Membership.OUTSIDE
        return Membership.BOUNDARY

    def contains(self, x):
        return self.membership(x) is not Membership.OUTSIDE

    def leq(self, x, y):
        return self.contains(np.asarray(y, dtype=float) - np.asarray(x, dtype=float))

    def lt(self, x, y):
        d = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
        return self.contains(d) and np.linalg.norm(d) > TOL * max(1.0, np.linalg.norm(y))

    def lt_int(self, x, y):
        d = np.asarray(y, dtype=float) - np.asarray(x, dtype=float)
        return self.membership(d) is Membership.INTERIOR

    def is_self_dual(self):
        if self.kind != "polyhedral":
            return True
        G, D = self.generators, self.dual_generators
        for g in G.T:
            if _conic_residual(D, g) > TOL * max(1.0, np.linalg.norm(g)):
                return False
        for d in D.T:
            if _conic_residual(G, d) > TOL * max(1.0, np.linalg.norm(d)):
                return False
        return True

    def is_order_unit(self, u):
        return self.membership(u) is Membership.INTERIOR

    def canonical_unit(self):
        """A distinguished order unit: all-ones / apex direction / identity
        matrix / sum of normalized generators."""
        if self.kind == "orthant":
            return np.ones(self.dim)
        if self.kind == "lorentz":
            u = np.zeros(self.dim)
            u[0] = 1.0
            return u
        if self.kind == "psd_real":
            return sym_to_vec(np.eye(self.param))
        if self.kind == "hermitian":
            return herm_to_vec(np.eye(self.param))
        if self.kind == "polyhedral":
            G = self.generators
            return np.sum(G / np.linalg.norm(G, axis=0), axis=1)
        raise AssertionError(self.kind)

    # -- Jordan / Moreau decomposition --------------------------------------

    def project(self, x):
        """Nearest point of the cone (metric projection)."""
        x = self._check_dim(x)
        if self.kind == "orthant":
            return np.maximum(x, 0.0)
        if self.kind == "lorentz":
            t, z = x[0], x[1:]
            nz = np.linalg.norm(z)
            if t >= nz:
                return x.copy()
            if t <= -nz:
                return np.zeros(self.dim)
            alpha = (t + nz) / 2.0
            out = np.empty(self.dim)
            out[0] = alpha
            out[1:] = alpha * z / nz
            return out
        if self.kind == "psd_real":
            A = vec_to_sym(x)
            w, V = np.linalg.eigh(A)
            return sym_to_vec(V @ np.diag(np.maximum(w, 0.0)) @ V.T)
        if self.kind == "hermitian":
            A = vec_to_herm(x)
            w, V = np.linalg.eigh(A)
            return herm_to_vec(V @ np.diag(np.maximum(w, 0.0)) @ V.conj().T)
        if self.kind == "polyhedral":
            if not self.is_self_dual():
                raise ValueError("Jordan decomposition needs a self-dual cone")
            coeff, _ = nnls(self.generators, x)
            return self.generators @ coeff
        raise AssertionError(self.kind)

    def jordan_decompose(self, x):
        """x = x_plus - x_minus with both parts in the cone and orthogonal."""
        x = self._check_dim(x)
        x_plus = self.project(x)
        x_minus = x_plus - x
        return x_plus, x_minus

    # -- order-unit norm -----------------------------------------------------

    def order_unit_norm(self, x, u=None):
        """inf {t >= 0 : -t u <= x <= t u} for an order unit u."""
        x = self._check_dim(x)
        if u is None:
            u = self.canonical_unit()
        u = self._check_dim(u)
        if not self.is_order_unit(u):
            raise ValueError("u is not an order unit")
        if np.linalg.norm(x) == 0.0:
            return 0.0
        if self.kind == "orthant":
            return float(np.max(np.abs(x) / u))
        if self.kind == "psd_real":
            from scipy.linalg import eigh
            w = eigh(vec_to_sym(x), vec_to_sym(u), eigvals_only=True)
            return float(np.max(np.abs(w)))
        if self.kind == "hermitian":
            from scipy.linalg import eigh
            w = eigh(vec_to_herm(x), vec_to_herm(u), eigvals_only=True)
            return float(np.max(np.abs(w)))
        if self.kind == "lorentz" and np.allclose(u, self.canonical_unit()):
            t, nz = x[0], np.linalg.norm(x[1:])
            return float(max(abs(t + nz), abs(t - nz)))
        return self._norm_by_bisection(x, u)

    def _norm_by_bisection(self, x, u):
        hi = 1.0
        while not (self.leq(-hi * u, x) and self.leq(x, hi * u)):
            hi *= 2.0
            if hi > 1e18:
                raise ArithmeticError("order-unit norm did not bracket")
        lo = 0.0
        for _ in range(80):
            mid = (lo + hi) / 2.0
            if self.leq(-mid * u, x) and self.leq(x, mid * u):
                hi = mid
            else:
                lo = mid
        return hi

    # -- sampling ------------------------------------------------------------

    def sample_vector(self, rng):
        return rng.standard_normal(self.dim)

    def sample_cone_point(self, rng):
        """A random point of the cone (projection of a Gaussian; random
        conic combination of generators for polyhedral kinds, which may
        not support projection)."""
        if self.kind == "polyhedral":
            m = self.generators.shape[1]
            return self.generators @ rng.exponential(size=m)
        return self.project(rng.standard_normal(self.dim))

    def sample_interior_point(self, rng):
        x = self.sample_cone_point(rng)
        u = self.canonical_unit()
        return x + (0.1 + 0.1 * np.linalg.norm(x)) * u / np.linalg.norm(u)
