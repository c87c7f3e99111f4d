"""Linear maps on matrix subspaces: complete positivity via Choi matrices,
randomized accretivity-preservation checks at matrix levels, extension of a
map on a unital subspace A to the operator system A + A*, Stinespring
factorization of CP maps, and empirical estimation of the best constant c
with T(F) contained in c*F at every level.

Conventions (fixed throughout):

* a subspace of M_d is given by a linearly independent basis, vectorized
  row-major;
* the Choi matrix of T : M_d -> M_k is C = sum_ij E_ij (x) T(E_ij), so
  C[(i,a),(j,b)] = T(E_ij)[a,b] with composite row index i*k + a;
* Kraus operators are recovered from the eigendecomposition of C, with
  T(x) = sum_r K_r x K_r*, and the Stinespring isometry-like block V
  stacks the K_r* vertically so that T(x) = V* (I_r (x) x) V and
  V*V = T(I_d).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainNotFull,
    IllDefinedExtension,
    InputParseError,
    NotCP,
)
from .matcore import (
    TolerancePolicy,
    as_matrix,
    dagger,
    hermitian_part,
    identity,
    is_hermitian,
    is_psd,
    matrix_digest,
    matrix_from_json,
    matrix_to_json,
    operator_norm,
)
from .reporting import MarginLedger, PropertyReport
from .rng import complex_gaussian, trial_rng

__all__ = [
    "MatrixSubspace",
    "SubspaceMap",
    "ChoiMatrix",
    "StinespringFactorization",
    "matrix_subspace",
    "full_algebra",
    "matrix_units",
    "map_from_function",
    "map_from_blocks",
    "subspace_map",
    "map_to_json",
    "map_from_json",
    "choi",
    "is_cp",
    "rcp_check",
    "ikhuh_check",
    "extend_to_selfadjoint",
    "stinespring",
    "ocp_constant_estimate",
]

INDEPENDENCE_TOL = 1e-10


def _vec(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=complex).reshape(-1)


@dataclass(frozen=True, eq=False)
class MatrixSubspace:
    """A linear subspace of M_d with a fixed, independent basis.

    :param selfadjoint_part_basis: Hermitian basis of the *-invariant part
        A intersect A* (the largest subspace on which both a map and its
        adjoint-composed counterpart are defined).
    """

    ambient_dim: int
    basis: tuple[np.ndarray, ...]
    contains_identity: bool
    selfadjoint_part_basis: tuple[np.ndarray, ...]
    # precomputed by the factory: column-stacked vec'd basis, its
    # pseudo-inverse, and whether the basis is exactly the matrix units
    # (whose coefficient map is just vec, no solve needed)
    basis_stack: np.ndarray | None = None
    solver: np.ndarray | None = None
    is_matrix_units: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _stack(self) -> np.ndarray:
        if self.basis_stack is not None:
            return self.basis_stack
        return np.stack([_vec(b) for b in self.basis], axis=1)

    def coefficient_block(self, vecs: np.ndarray) -> np.ndarray:
        """Coefficients for a batch: vecs has one vec'd matrix per row.

        Returns the (rows, dim) coefficient array and raises if any row
        leaves the span.
        """
        if self.is_matrix_units:
            return vecs
        B = self._stack()
        if self.solver is not None:
            coeffs = vecs @ self.solver.T
        else:
            coeffs = np.linalg.lstsq(B, vecs.T, rcond=None)[0].T
        resid = np.linalg.norm(vecs - coeffs @ B.T, axis=1)
        allowed = 100 * INDEPENDENCE_TOL * np.maximum(
            1.0, np.linalg.norm(vecs, axis=1))
        if np.any(resid > allowed):
            worst = float(np.max(resid))
            raise InputParseError(
                f"matrix is not in the subspace (residual {worst:.3g})"
            )
        return coeffs

    def coefficients(self, x, tol: TolerancePolicy | None = None) -> np.ndarray:
        """Coefficients of x in the basis; raises if x is not in the span."""
        x = as_matrix(x)
        return self.coefficient_block(_vec(x)[None, :])[0]


def _orthonormal_columns(vectors: list[np.ndarray]) -> np.ndarray:
    stack = np.stack(vectors, axis=1)
    q, r = np.linalg.qr(stack)
    keep = np.abs(np.diag(r)) > INDEPENDENCE_TOL * max(1.0, float(np.max(np.abs(r))))
    return q[:, keep]


def _intersection(space_a: np.ndarray, space_b: np.ndarray) -> list[np.ndarray]:
    """Orthonormal basis vectors of the intersection of two column spans."""
    if space_a.shape[1] == 0 or space_b.shape[1] == 0:
        return []
    overlap = dagger(space_a) @ space_b
    u, s, vh = np.linalg.svd(overlap)
    hits = s > 1.0 - 1e-10
    return [space_a @ u[:, j] for j in range(u.shape[1]) if j < len(s) and hits[j]]


def matrix_subspace(basis, tol: TolerancePolicy | None = None) -> MatrixSubspace:
    """Build a :class:`MatrixSubspace` from a basis of d x d matrices.

    Validates linear independence, detects whether the identity lies in
    the span, and derives a Hermitian basis of A intersect A*.

    :raises InputParseError: empty, mismatched, or dependent basis.
    """
    tol = tol or TolerancePolicy.default()
    mats = [as_matrix(b) for b in basis]
    if not mats:
        raise InputParseError("a subspace needs at least one basis matrix")
    d = mats[0].shape[0]
    if any(m.shape[0] != d for m in mats):
        raise InputParseError("basis matrices must share one ambient dimension")
    B = np.stack([_vec(m) for m in mats], axis=1)
    gram = dagger(B) @ B
    if float(np.min(np.linalg.eigvalsh(hermitian_part(gram)))) <= INDEPENDENCE_TOL:
        raise InputParseError("basis is linearly dependent within tolerance")

    eye_vec = _vec(identity(d))
    coeffs, *_ = np.linalg.lstsq(B, eye_vec, rcond=None)
    has_identity = bool(
        np.linalg.norm(B @ coeffs - eye_vec) <= 1e-10 * math.sqrt(d)
    )
    is_units = len(mats) == d * d and all(
        np.count_nonzero(m) == 1 and m[divmod(idx, d)] == 1.0
        for idx, m in enumerate(mats)
    )

    # A ∩ A*: intersect the span with the span of the adjoints, then pick
    # a real-linearly independent Hermitian basis of that *-closed space.
    span_a = _orthonormal_columns([_vec(m) for m in mats])
    span_b = _orthonormal_columns([_vec(dagger(m)) for m in mats])
    common = _intersection(span_a, span_b)
    herm: list[np.ndarray] = []
    real_stack: list[np.ndarray] = []
    for v in common:
        m = v.reshape(d, d)
        for cand in ((m + dagger(m)) / 2.0, (m - dagger(m)) / 2.0j):
            if float(np.linalg.norm(cand)) < 1e-12:
                continue
            rv = np.concatenate([_vec(cand).real, _vec(cand).imag])
            if real_stack:
                existing = np.stack(real_stack, axis=1)
                resid = rv - existing @ np.linalg.lstsq(existing, rv, rcond=None)[0]
            else:
                resid = rv
            if np.linalg.norm(resid) > 1e-8 * np.linalg.norm(rv):
                herm.append(cand)
                real_stack.append(rv)
    return MatrixSubspace(
        ambient_dim=d,
        basis=tuple(mats),
        contains_identity=has_identity,
        selfadjoint_part_basis=tuple(herm),
        basis_stack=B,
        solver=np.linalg.pinv(B),
        is_matrix_units=is_units,
    )


def matrix_units(d: int) -> list[np.ndarray]:
    """The d^2 matrix units E_ij in row-major (i, j) order."""
    units = []
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            units.append(e)
    return units


def full_algebra(d: int) -> MatrixSubspace:
    """All of M_d, with the matrix-unit basis."""
    return matrix_subspace(matrix_units(d))


@dataclass(frozen=True, eq=False)
class SubspaceMap:
    """A linear map A -> M_k given by images of the domain basis."""

    domain: MatrixSubspace
    codomain_dim: int
    images: tuple[np.ndarray, ...]
    image_stack: np.ndarray | None = None

    def _images(self) -> np.ndarray:
        if self.image_stack is not None:
            return self.image_stack
        return np.stack(self.images, axis=0)

    def apply(self, x, tol: TolerancePolicy | None = None) -> np.ndarray:
        coeffs = self.domain.coefficients(x, tol)
        return np.tensordot(coeffs, self._images(), axes=(0, 0))

    def apply_block(self, X, tol: TolerancePolicy | None = None) -> np.ndarray:
        """Entrywise amplification: apply the map to each d x d block."""
        X = as_matrix(X)
        d = self.domain.ambient_dim
        k = self.codomain_dim
        if X.shape[0] % d:
            raise InputParseError(
                f"block matrix size {X.shape[0]} is not a multiple of {d}"
            )
        n = X.shape[0] // d
        blocks = X.reshape(n, d, n, d).transpose(0, 2, 1, 3).reshape(n * n, d * d)
        coeffs = self.domain.coefficient_block(blocks)
        out_blocks = np.tensordot(coeffs, self._images(), axes=(1, 0))
        return out_blocks.reshape(n, n, k, k).transpose(0, 2, 1, 3).reshape(
            n * k, n * k)


def subspace_map(domain: MatrixSubspace, images, codomain_dim: int | None = None) -> SubspaceMap:
    """Assemble a :class:`SubspaceMap`, validating image shapes."""
    imgs = tuple(as_matrix(m) for m in images)
    if len(imgs) != domain.dim:
        raise InputParseError("one image per basis element is required")
    k = codomain_dim if codomain_dim is not None else (imgs[0].shape[0] if imgs else 0)
    if any(m.shape[0] != k for m in imgs):
        raise InputParseError("images must all be k x k")
    return SubspaceMap(domain=domain, codomain_dim=k, images=imgs,
                       image_stack=np.stack(imgs, axis=0))


def map_from_function(d: int, fn, codomain_dim: int | None = None) -> SubspaceMap:
    """The map on all of M_d defined by x -> fn(x) (fn assumed linear)."""
    dom = full_algebra(d)
    images = [as_matrix(fn(e)) for e in dom.basis]
    k = codomain_dim if codomain_dim is not None else images[0].shape[0]
    return subspace_map(dom, images, k)


def map_from_blocks(C, d: int, k: int) -> SubspaceMap:
    """The map on M_d whose Choi matrix is C (blocks C[(i,:),(j,:)])."""
    C = as_matrix(C)
    if C.shape[0] != d * k:
        raise InputParseError(f"expected a {d * k} x {d * k} block matrix")
    dom = full_algebra(d)
    images = []
    for i in range(d):
        for j in range(d):
            images.append(C[i * k:(i + 1) * k, j * k:(j + 1) * k].copy())
    return subspace_map(dom, images, k)


def map_to_json(T: SubspaceMap) -> dict:
    return {
        "ambient_dim": T.domain.ambient_dim,
        "codomain_dim": T.codomain_dim,
        "basis": [matrix_to_json(b) for b in T.domain.basis],
        "images": [matrix_to_json(m) for m in T.images],
    }


def map_from_json(payload: dict) -> SubspaceMap:
    try:
        d = int(payload["ambient_dim"])
        k = int(payload["codomain_dim"])
        basis = [matrix_from_json(b) for b in payload["basis"]]
        images = [matrix_from_json(m) for m in payload["images"]]
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"bad map payload: {exc}") from exc
    if basis and basis[0].shape[0] != d:
        raise InputParseError("basis dimension disagrees with ambient_dim")
    return subspace_map(matrix_subspace(basis), images, k)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """Choi matrix of a map defined on all of M_d."""

    matrix: np.ndarray
    source_map: SubspaceMap


def choi(T: SubspaceMap) -> ChoiMatrix:
    """Assemble sum_ij E_ij (x) T(E_ij).

    :raises DomainNotFull: when the domain is a proper subspace of M_d.
    """
    d = T.domain.ambient_dim
    if T.domain.dim != d * d:
        raise DomainNotFull("the Choi matrix needs a map defined on all of M_d")
    k = T.codomain_dim
    C = np.zeros((d * k, d * k), dtype=complex)
    units = matrix_units(d)
    for idx, e in enumerate(units):
        i, j = divmod(idx, d)
        C[i * k:(i + 1) * k, j * k:(j + 1) * k] = T.apply(e)
    return ChoiMatrix(matrix=C, source_map=T)


def is_cp(c: ChoiMatrix, tol: TolerancePolicy | None = None) -> bool:
    """Complete positivity test: the Choi matrix is Hermitian PSD."""
    tol = tol or TolerancePolicy.default()
    if not is_hermitian(c.matrix, tol):
        return False
    return is_psd(hermitian_part(c.matrix), tol)


def _sample_accretive_in_subspace(space: MatrixSubspace, n: int, rng,
                                  max_redraws: int = 64) -> np.ndarray | None:
    """A random accretive element of M_n(A), or None if sampling failed.

    With the identity available the standard shift device is used: any
    element becomes accretive after adding t*I with t at least the most
    negative eigenvalue of its Hermitian part.  Identityless subspaces
    fall back to rejection sampling.
    """
    d = space.ambient_dim
    for _ in range(max_redraws):
        Y = np.zeros((n * d, n * d), dtype=complex)
        for b in space.basis:
            Y += np.kron(complex_gaussian(rng, n), b)
        lam = float(np.min(np.linalg.eigvalsh(hermitian_part(Y))))
        if space.contains_identity:
            shift = max(0.0, -lam) + float(rng.uniform(0.0, 0.5))
            return Y + shift * np.eye(n * d, dtype=complex)
        if lam >= 0.0:
            return Y
    return None


def rcp_check(T: SubspaceMap, levels: int, trials: int, seed: int,
              tol: TolerancePolicy | None = None) -> PropertyReport:
    """Randomized test that every amplification of T preserves accretivity.

    Levels n = 1..levels are exercised with `trials` accretive samples of
    M_n(A) each; the margin of a trial is the smallest eigenvalue of the
    Hermitian part of the image.  When the domain is all of M_d and the
    level reaches d, trial 0 is replaced by a deterministic probe (the
    positive block matrix sum_ij E_ij (x) E_ij, whose image is exactly the
    Choi matrix) — for maps that are not completely positive this probe is
    very often an immediate witness.

    A "pass" means no violation was found, not a proof of the property.
    """
    if levels < 1:
        raise ValueError("at least one matrix level is required")
    tol = tol or TolerancePolicy.default()
    ledger = MarginLedger()
    executed = 0
    d = T.domain.ambient_dim
    domain_full = T.domain.dim == d * d
    stop = False
    for n in range(1, levels + 1):
        if stop:
            break
        for trial in range(trials):
            rng = trial_rng(seed, f"rcp:n={n}", trial)
            if trial == 0 and domain_full and n == d:
                X = np.zeros((d * d, d * d), dtype=complex)
                for idx, e in enumerate(matrix_units(d)):
                    i, j = divmod(idx, d)
                    X[i * d:(i + 1) * d, j * d:(j + 1) * d] = e
            else:
                X = _sample_accretive_in_subspace(T.domain, n, rng)
            executed += 1
            if X is None:
                continue
            image = T.apply_block(X, tol)
            margin = float(np.min(np.linalg.eigvalsh(hermitian_part(image))))
            tol_used = tol.psd_tol * max(1.0, operator_norm(image))
            ledger.add(matrix_digest(X), margin, tol_used)
            if ledger.worst_normalized < -10.0:
                stop = True
                break
    return ledger.report("rcp-check", executed)


def ikhuh_check(x, z_grid: int = 33, tol: TolerancePolicy | None = None) -> bool:
    """Positivity via rotations: x is PSD iff z*x is accretive for every z
    in the scalar half-F disk.

    Tests z = cos(theta) e^{i theta} on a grid of theta interior to
    (-pi/2, pi/2); the grid contains theta = 0 whenever z_grid is odd.

    :param z_grid: number of grid angles, at least 8.
    """
    if z_grid < 8:
        raise ValueError("at least 8 grid angles are required")
    tol = tol or TolerancePolicy.default()
    x = as_matrix(x)
    for j in range(z_grid):
        theta = -math.pi / 2.0 + math.pi * (j + 1) / (z_grid + 1)
        z = math.cos(theta) * complex(math.cos(theta), math.sin(theta))
        zx = z * x
        lam = float(np.min(np.linalg.eigvalsh(hermitian_part(zx))))
        if lam < -tol.psd_tol * max(1.0, operator_norm(zx)):
            return False
    return True


def extend_to_selfadjoint(T: SubspaceMap,
                          tol: TolerancePolicy | None = None) -> SubspaceMap:
    """Extend T from a unital subspace A to A + A* by a + b* -> T(a) + T(b)*.

    The extension is well defined exactly when T is adjoint-consistent on
    A intersect A* (T(h*) = T(h)* there); that consistency is verified on
    the stored Hermitian basis and its failure raises, which is the
    algebraic signature of T not preserving accretivity.

    :raises IllDefinedExtension: adjoint-consistency fails on A ∩ A*.
    :raises ValueError: domain does not contain the identity.
    """
    tol = tol or TolerancePolicy.default()
    if not T.domain.contains_identity:
        raise ValueError("the extension needs a unital domain")
    scale = max([1.0] + [operator_norm(m) for m in T.images])
    for h in T.domain.selfadjoint_part_basis:
        lhs = T.apply(dagger(h), tol)
        rhs = dagger(T.apply(h, tol))
        if operator_norm(lhs - rhs) > 1e-9 * scale:
            raise IllDefinedExtension(
                "map is not adjoint-consistent on A ∩ A*"
            )
    candidates = [(b, img) for b, img in zip(T.domain.basis, T.images)]
    candidates += [(dagger(b), dagger(img)) for b, img in zip(T.domain.basis, T.images)]
    kept: list[tuple[np.ndarray, np.ndarray]] = []
    ortho: list[np.ndarray] = []
    for mat, img in candidates:
        v = _vec(mat)
        resid = v.copy()
        for q in ortho:
            resid = resid - (np.conj(q) @ resid) * q
        if np.linalg.norm(resid) > INDEPENDENCE_TOL * max(1.0, np.linalg.norm(v)):
            ortho.append(resid / np.linalg.norm(resid))
            kept.append((mat, img))
    new_domain = matrix_subspace([m for m, _ in kept], tol)
    return subspace_map(new_domain, [img for _, img in kept], T.codomain_dim)


@dataclass(frozen=True, eq=False)
class StinespringFactorization:
    """Factorization T(x) = V* (I_r (x) x) V of a CP map.

    :param V: (r*d) x k block column, stacking the adjoints of the Kraus
        operators; V*V = T(I_d).
    :param kraus: the r Kraus operators K_j (each k x d).
    :param pi_copies: multiplicity r of the representation x -> I_r (x) x.
    :param cb_norm: ||V||^2, which equals ||T(I_d)|| (the completely
        bounded norm of a CP map on a unital domain).
    """

    V: np.ndarray
    kraus: tuple[np.ndarray, ...]
    pi_copies: int
    cb_norm: float

    def pi(self, x) -> np.ndarray:
        """The representation I_r (x) x."""
        return np.kron(np.eye(self.pi_copies, dtype=complex), as_matrix(x))

    def reconstruct(self, x) -> np.ndarray:
        """V* pi(x) V — should reproduce the source map."""
        return dagger(self.V) @ self.pi(x) @ self.V


def stinespring(c: ChoiMatrix, tol: TolerancePolicy | None = None) -> StinespringFactorization:
    """Kraus/Stinespring data from a PSD Choi matrix.

    :raises NotCP: when the Choi matrix is not PSD within tolerance.
    """
    tol = tol or TolerancePolicy.default()
    if not is_cp(c, tol):
        raise NotCP("the map is not completely positive")
    T = c.source_map
    d = T.domain.ambient_dim
    k = T.codomain_dim
    evals, evecs = np.linalg.eigh(hermitian_part(c.matrix))
    thr = tol.psd_tol * max(1.0, float(np.max(np.abs(evals))) if evals.size else 0.0)
    kraus: list[np.ndarray] = []
    for idx in range(len(evals) - 1, -1, -1):
        w = float(evals[idx])
        if w <= thr:
            break
        v = evecs[:, idx]
        kraus.append(math.sqrt(w) * v.reshape(d, k).T)
    if not kraus:
        # the zero map: one zero Kraus block keeps the shapes meaningful
        kraus = [np.zeros((k, d), dtype=complex)]
    V = np.vstack([dagger(K) for K in kraus])
    # V is an (r*d) x k block column, not square; take the spectral norm
    # directly rather than routing through the square-matrix coercion.
    cb = float(np.linalg.norm(V, 2) ** 2)
    return StinespringFactorization(
        V=V, kraus=tuple(kraus), pi_copies=len(kraus), cb_norm=cb
    )


def _min_scaling_constant(g: np.ndarray, tol: TolerancePolicy) -> float:
    """Smallest c with ||c*I - g|| <= c, or +inf when no finite c works."""
    k = g.shape[0]
    scale = max(1.0, operator_norm(g))
    lam = float(np.min(np.linalg.eigvalsh(hermitian_part(g))))
    if lam < -10.0 * tol.psd_tol * scale:
        return math.inf
    slack = 1e-11 * scale
    eye = identity(k)

    def excess(cval: float) -> float:
        return operator_norm(cval * eye - g) - cval

    hi = scale
    doublings = 0
    while excess(hi) > slack:
        hi *= 2.0
        doublings += 1
        if doublings > 50:
            return math.inf
    lo = 0.0
    for _ in range(80):
        mid = (lo + hi) / 2.0
        if excess(mid) <= slack:
            hi = mid
        else:
            lo = mid
    return hi


def ocp_constant_estimate(T: SubspaceMap, levels: int, trials: int, seed: int,
                          tol: TolerancePolicy | None = None) -> float:
    """Empirical supremum of the minimal c with T_n(f) in c*F over random
    f in F at matrix levels n = 1..levels.

    For unital domains, trial 0 of each level probes f = 2I (a boundary
    point of F whose image pins the scaling exactly for simple maps);
    remaining samples take f = I - C for contractions C in M_n(A).
    Returns +inf as soon as some sampled image admits no finite constant.
    A finite value is an observed lower bound for the true supremum, not a
    certificate.
    """
    if levels < 1:
        raise ValueError("at least one matrix level is required")
    tol = tol or TolerancePolicy.default()
    d = T.domain.ambient_dim
    best = 0.0
    for n in range(1, levels + 1):
        eye_n = np.eye(n * d, dtype=complex)
        for trial in range(trials):
            rng = trial_rng(seed, f"ocp:n={n}", trial)
            if trial == 0 and T.domain.contains_identity:
                f = 2.0 * eye_n
            elif T.domain.contains_identity:
                Z = np.zeros((n * d, n * d), dtype=complex)
                for b in T.domain.basis:
                    Z += np.kron(complex_gaussian(rng, n), b)
                znorm = operator_norm(Z)
                if znorm < 1e-14:
                    continue
                f = eye_n - (float(rng.uniform(0.0, 1.0)) / znorm) * Z
            else:
                f = _sample_f_without_identity(T.domain, n, rng)
                if f is None:
                    continue
            image = T.apply_block(f, tol)
            c = _min_scaling_constant(image, tol)
            if math.isinf(c):
                return math.inf
            best = max(best, c)
    return best


def _sample_f_without_identity(space: MatrixSubspace, n: int, rng,
                               max_redraws: int = 32) -> np.ndarray | None:
    """Rejection sampling of f in F ∩ M_n(A) when I is not available."""
    d = space.ambient_dim
    eye = np.eye(n * d, dtype=complex)
    for _ in range(max_redraws):
        Z = np.zeros((n * d, n * d), dtype=complex)
        for b in space.basis:
            Z += np.kron(complex_gaussian(rng, n), b)
        for t in np.geomspace(1e-3, 1e3, 25):
            if operator_norm(eye - t * Z) <= 1.0:
                return t * Z
    return None
