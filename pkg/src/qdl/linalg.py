"""Dense complex linear algebra for small multi-qubit operators (dims 2..16).

Everything here is a pure function of immutable inputs.  The eigensolver is a
cyclic complex Jacobi iteration, deliberately self-contained so the rest of
the package does not depend on LAPACK behaviour for its contractual results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 16

HERMITICITY_TOL = 1e-10
JACOBI_OFFDIAG_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

KET_UP = np.array([1, 0], dtype=complex)
KET_DOWN = np.array([0, 1], dtype=complex)


def _as_square(m, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains NaN/Inf entries")
    return m


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def is_hermitian(m, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.max(np.abs(m - m.conj().T)) < tol)


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i,j) of the result is a[i,j] * b."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise ValueError(
            f"result dimension {a.shape[0] * b.shape[0]} exceeds supported maximum {MAX_DIM}"
        )
    return np.kron(a, b)


def hermitian_eigensystem(
    m,
    offdiag_tol: float = JACOBI_OFFDIAG_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Cyclic Jacobi with complex plane rotations; a sweep visits every
    off-diagonal pivot once and iteration stops when the off-diagonal
    Frobenius norm drops below ``offdiag_tol``.  Column k of the returned
    vector matrix is the eigenvector for the k-th eigenvalue.
    """
    a = _as_square(m, "m").copy()
    n = a.shape[0]
    dev = np.max(np.abs(a - a.conj().T))
    if dev >= HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (max |m - m^dag| = {dev:.3e})")
    a = (a + a.conj().T) / 2.0
    vecs = np.eye(n, dtype=complex)

    def offdiag_norm():
        off = a - np.diag(np.diag(a))
        return float(np.linalg.norm(off))

    sweeps = 0
    while offdiag_norm() >= offdiag_tol:
        if sweeps >= max_sweeps:
            raise ArithmeticError(
                f"Jacobi iteration failed to converge in {max_sweeps} sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                if abs(z) == 0.0:
                    continue
                # Absorb the phase of a[p,q] so the 2x2 pivot block is real,
                # then apply the standard symmetric Jacobi rotation.
                phase = z.conjugate() / abs(z)
                app, aqq, h = a[p, p].real, a[q, q].real, abs(z)
                tau = (aqq - app) / (2.0 * h)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) if tau != 0.0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Unitary columns: U[:,p] = (c, -s*phase), U[:,q] = (s, c*phase)
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * phase * col_q
                a[:, q] = s * col_p + c * phase * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase.conjugate() * row_q
                a[q, :] = s * row_p + c * phase.conjugate() * row_q
                a[p, p] = app - t * h
                a[q, q] = aqq + t * h
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcol_p = vecs[:, p].copy()
                vcol_q = vecs[:, q].copy()
                vecs[:, p] = c * vcol_p - s * phase * vcol_q
                vecs[:, q] = s * vcol_p + c * phase * vcol_q
        sweeps += 1

    values = np.real(np.diag(a))
    order = np.argsort(values)[::-1]
    return values[order], vecs[:, order]


def hermitian_eigenvalues(m, **kwargs) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, sorted descending."""
    values, _ = hermitian_eigensystem(m, **kwargs)
    return values


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over a labeled product of qubits.

    ``labels`` names the factors in tensor order, e.g. ("A", "B", "ES").
    """

    amps: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(self.labels):
            raise ValueError(
                f"amplitude length {amps.size} does not match {len(self.labels)} qubit labels"
            )
        if not np.all(np.isfinite(amps.real)) or not np.all(np.isfinite(amps.imag)):
            raise ValueError("amplitudes contain NaN/Inf")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm} is not 1 within 1e-12")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dims(self) -> tuple[int, ...]:
        return (2,) * len(self.labels)

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    def axis_of(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.num_qubits:
                raise ValueError(f"subsystem index {label} out of range")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"no subsystem labeled {label!r} in {self.labels}") from None


def partial_trace(state, keep) -> np.ndarray:
    """Reduced density matrix on the kept factors.

    ``state`` is a PureState or a 4x4 density matrix on A (tensor) B; ``keep``
    is a sequence of labels or axis indices, in the order the kept factors
    should appear in the result.
    """
    if isinstance(state, PureState):
        axes = [state.axis_of(k) for k in keep]
        if len(set(axes)) != len(axes):
            raise ValueError("duplicate subsystem in keep")
        n = state.num_qubits
        rest = [i for i in range(n) if i not in axes]
        psi = state.amps.reshape((2,) * n).transpose(axes + rest).reshape(2 ** len(axes), -1)
        return psi @ psi.conj().T
    rho = _as_square(state, "rho")
    if rho.shape[0] != 4:
        raise ValueError("density-matrix partial trace expects a 4x4 A(x)B operator")
    labels = ("A", "B")
    axes = []
    for k in keep:
        if isinstance(k, int):
            if k not in (0, 1):
                raise ValueError(f"subsystem index {k} out of range")
            axes.append(k)
        elif k in labels:
            axes.append(labels.index(k))
        else:
            raise ValueError(f"no subsystem labeled {k!r} in {labels}")
    if len(set(axes)) != len(axes):
        raise ValueError("duplicate subsystem in keep")
    r = rho.reshape(2, 2, 2, 2)
    if axes == [0, 1]:
        return rho.copy()
    if axes == [1, 0]:
        return r.transpose(1, 0, 3, 2).reshape(4, 4)
    if axes == [0]:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def partial_transpose(rho) -> np.ndarray:
    """Transpose the second (B) factor in the computational product basis."""
    rho = _as_square(rho, "rho")
    if rho.shape[0] != 4:
        raise ValueError("partial transpose expects a 4x4 A(x)B operator")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def check_density_matrix(rho, psd_tol: float = 1e-10) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; returns rho unchanged."""
    rho = _as_square(rho, "rho")
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev >= 1e-12:
        raise ValueError(f"density matrix not Hermitian (max deviation {dev:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-12:
        raise ValueError(f"density matrix trace {tr} is not 1 within 1e-12")
    evals = hermitian_eigenvalues(rho)
    if evals[-1] < -psd_tol:
        raise ValueError(f"density matrix has eigenvalue {evals[-1]:.3e} below -{psd_tol:.0e}")
    return rho
