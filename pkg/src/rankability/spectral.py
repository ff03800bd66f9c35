"""Dense non-symmetric eigenvalues and distances between spectra.

The eigensolver is the classical pipeline for real matrices: diagonal
balancing, Householder reduction to upper Hessenberg form, then implicit
Francis double-shift QR on the Hessenberg matrix until it deflates to a
quasi-triangular real Schur form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from rankability.errors import ConvergenceError, InputError

RADIX = 2.0
SWEEPS_PER_DIM = 30
EPS = float(np.finfo(float).eps)
SAFE_MIN = float(np.finfo(float).tiny)


def imag_tolerance(m: np.ndarray) -> float:
    return 1e-8 * max(1.0, _inf_norm(m))


def mult_tolerance(m: np.ndarray) -> float:
    return 1e-6 * max(1.0, _inf_norm(m))


def _inf_norm(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.abs(m).sum(axis=1).max()) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class Spectrum:
    """A multiset of eigenvalues, sorted by real part then imaginary part, both descending."""

    values: np.ndarray
    source_dim: int

    @classmethod
    def from_values(cls, values: Iterable[complex], imag_tol: float = 0.0) -> "Spectrum":
        vals = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=complex).ravel()
        if vals.size == 0:
            raise InputError("a spectrum needs at least one value")
        vals = np.where(np.abs(vals.imag) <= imag_tol, vals.real + 0j, vals)
        order = np.lexsort((-vals.imag, -vals.real))
        vals = vals[order]
        vals.setflags(write=False)
        return cls(vals, vals.size)

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    def __len__(self) -> int:
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def zero_multiplicity(self, tol: float) -> int:
        return int(np.count_nonzero(np.abs(self.values) < tol))

    def __repr__(self) -> str:
        parts = [f"{v.real:.6g}" if v.imag == 0 else f"{v.real:.6g}{v.imag:+.6g}j" for v in self.values]
        return f"Spectrum([{', '.join(parts)}])"


@dataclass(frozen=True)
class HausdorffResult:
    distance: float
    sv_forward: float
    sv_backward: float
    argmax_pair: tuple[complex, complex]


def balance(m: np.ndarray) -> np.ndarray:
    """Scale rows and columns by powers of two so their norms are comparable.

    The result is similar to ``m`` (same eigenvalues) and exactly
    representable, since only powers of the radix are used.
    """
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    sqrdx = RADIX * RADIX
    done = False
    while not done:
        done = True
        for i in range(n):
            c = np.abs(a[:, i]).sum() - abs(a[i, i])
            r = np.abs(a[i, :]).sum() - abs(a[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / RADIX
            f = 1.0
            s = c + r
            while c < g:
                f *= RADIX
                c *= sqrdx
            g = r * RADIX
            while c > g:
                f /= RADIX
                c /= sqrdx
            if (c + r) / f < 0.95 * s:
                done = False
                a[i, :] /= f
                a[:, i] *= f
    return a


def hessenberg(m: np.ndarray) -> np.ndarray:
    """Orthogonal similarity reduction to upper Hessenberg form (Householder)."""
    a = np.array(m, dtype=float, copy=True)
    n = a.shape[0]
    for k in range(n - 2):
        peak = np.max(np.abs(a[k + 1 :, k]))
        if peak == 0.0:
            continue
        # unit-scale copy so squaring cannot underflow or overflow
        v = a[k + 1 :, k] / peak
        v[0] += math.copysign(np.linalg.norm(v), v[0])
        v /= np.linalg.norm(v)
        a[k + 1 :, k:] -= 2.0 * np.outer(v, v @ a[k + 1 :, k:])
        a[:, k + 1 :] -= 2.0 * np.outer(a[:, k + 1 :] @ v, v)
        a[k + 2 :, k] = 0.0
    return a


def hqr(h: np.ndarray, max_sweeps: int | None = None) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR.

    Raises
    ------
    ConvergenceError
        If the total number of QR sweeps exceeds ``max_sweeps``
        (default ``30 * n``).
    """
    a = np.array(h, dtype=float, copy=True)
    n = a.shape[0]
    if max_sweeps is None:
        max_sweeps = SWEEPS_PER_DIM * max(n, 1)
    wr = np.zeros(n)
    wi = np.zeros(n)
    anorm = float(np.abs(np.triu(a, -1)).sum())
    # below this a subdiagonal is within backward error of zero
    negligible = max(SAFE_MIN * (n / EPS), EPS * anorm)
    nn = n - 1
    shift = 0.0
    its = 0
    sweeps = 0
    while nn >= 0:
        # look for a negligible subdiagonal element
        l = nn
        while l >= 1:
            s = abs(a[l - 1, l - 1]) + abs(a[l, l])
            if s == 0.0:
                s = anorm
            if abs(a[l, l - 1]) <= negligible or abs(a[l, l - 1]) + s == s:
                a[l, l - 1] = 0.0
                break
            l -= 1
        x = a[nn, nn]
        if l == nn:
            wr[nn] = x + shift
            nn -= 1
            its = 0
            continue
        y = a[nn - 1, nn - 1]
        w = a[nn, nn - 1] * a[nn - 1, nn]
        if l == nn - 1:
            p = 0.5 * (y - x)
            q = p * p + w
            z = math.sqrt(abs(q))
            x += shift
            if q >= 0.0:
                z = p + math.copysign(z, p)
                wr[nn - 1] = wr[nn] = x + z
                if z != 0.0:
                    wr[nn] = x - w / z
            else:
                wr[nn - 1] = wr[nn] = x + p
                wi[nn - 1] = z
                wi[nn] = -z
            nn -= 2
            its = 0
            continue

        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"QR iteration did not converge for {n}x{n} matrix after {sweeps} sweeps "
                f"(active block {l}..{nn})"
            )
        if its in (10, 20):
            # exceptional shift to break cycling
            shift += x
            idx = np.arange(nn + 1)
            a[idx, idx] -= x
            s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
            x = y = 0.75 * s
            w = -0.4375 * s * s
        its += 1
        sweeps += 1

        # find two consecutive small subdiagonal elements
        m = nn - 2
        while True:
            z = a[m, m]
            r = x - z
            s = y - z
            p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
            q = a[m + 1, m + 1] - z - r - s
            r = a[m + 2, m + 1]
            s = abs(p) + abs(q) + abs(r)
            p /= s
            q /= s
            r /= s
            if m == l:
                break
            u = abs(a[m, m - 1]) * (abs(q) + abs(r))
            v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
            if u + v == v:
                break
            m -= 1
        for i in range(m + 2, nn + 1):
            a[i, i - 2] = 0.0
            if i != m + 2:
                a[i, i - 3] = 0.0

        # chase the bulge down rows m..nn
        for k in range(m, nn):
            if k != m:
                p = a[k, k - 1]
                q = a[k + 1, k - 1]
                r = a[k + 2, k - 1] if k != nn - 1 else 0.0
                x = abs(p) + abs(q) + abs(r)
                if x != 0.0:
                    p /= x
                    q /= x
                    r /= x
            s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
            if s == 0.0:
                continue
            if k == m:
                if l != m:
                    a[k, k - 1] = -a[k, k - 1]
            else:
                a[k, k - 1] = -s * x
            p += s
            x = p / s
            y = q / s
            z = r / s
            q /= p
            r /= p
            cols = slice(k, nn + 1)
            rows = slice(l, min(nn, k + 3) + 1)
            if k != nn - 1:
                pr = a[k, cols] + q * a[k + 1, cols] + r * a[k + 2, cols]
                a[k + 2, cols] -= pr * z
            else:
                pr = a[k, cols] + q * a[k + 1, cols]
            a[k + 1, cols] -= pr * y
            a[k, cols] -= pr * x
            if k != nn - 1:
                pc = x * a[rows, k] + y * a[rows, k + 1] + z * a[rows, k + 2]
                a[rows, k + 2] -= pc * r
            else:
                pc = x * a[rows, k] + y * a[rows, k + 1]
            a[rows, k + 1] -= pc * q
            a[rows, k] -= pc
    return wr + 1j * wi


def _enforce_conjugate_pairs(vals: np.ndarray, tol: float) -> np.ndarray:
    """Snap near-real values to the axis and make complex pairs exact conjugates."""
    vals = vals.copy()
    near_real = np.abs(vals.imag) <= tol
    vals[near_real] = vals[near_real].real
    upper = [i for i in range(vals.size) if vals[i].imag > tol]
    lower = [i for i in range(vals.size) if vals[i].imag < -tol]
    if len(upper) != len(lower):
        raise ConvergenceError(f"eigenvalues are not closed under conjugation: {vals}")
    free = set(lower)
    for i in sorted(upper, key=lambda k: (-vals[k].imag, -vals[k].real)):
        target = np.conj(vals[i])
        j = min(free, key=lambda k: abs(vals[k] - target))
        if abs(vals[j] - target) > max(tol, 1e-8 * abs(target)) * 1e2:
            raise ConvergenceError(f"no conjugate partner for eigenvalue {vals[i]}")
        free.discard(j)
        avg = 0.5 * (vals[i] + np.conj(vals[j]))
        vals[i] = avg
        vals[j] = np.conj(avg)
    return vals


def _unit_exponent(a: np.ndarray) -> int:
    peak = float(np.abs(a).max())
    return -math.frexp(peak)[1] if peak > 0 else 0


def eigenvalues(m: np.ndarray) -> Spectrum:
    """All eigenvalues of a real square matrix.

    Values with ``|imag| <= 1e-8 * max(1, ||m||_inf)`` are snapped to the real
    axis and complex values are returned in exact conjugate pairs.

    Raises
    ------
    InputError
        For non-square, empty or non-finite input.
    ConvergenceError
        If QR iteration exceeds its sweep budget.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InputError(f"eigenvalues need a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    tol = imag_tolerance(a)
    # power-of-two rescaling keeps QR away from underflow and is exact
    # power-of-two rescaling (before and after balancing) keeps QR away
    # from underflow and overflow and is exact
    first = _unit_exponent(a)
    b = balance(np.ldexp(a, first))
    second = _unit_exponent(b)
    vals = hqr(hessenberg(np.ldexp(b, second)))
    total = first + second
    vals = np.ldexp(vals.real, -total) + 1j * np.ldexp(vals.imag, -total)
    return Spectrum.from_values(_enforce_conjugate_pairs(vals, tol), imag_tol=tol)


def _as_values(s: Spectrum | Iterable[complex]) -> np.ndarray:
    vals = s.values if isinstance(s, Spectrum) else np.asarray(list(s), dtype=complex)
    if vals.size == 0:
        raise InputError("spectral distances need non-empty spectra")
    return vals


def spectral_variation(a: Spectrum, b: Spectrum) -> float:
    """Largest distance from a value of ``b`` to its nearest value in ``a``.

    The second argument plays the role of the perturbed spectrum: this is
    ``max_i min_j |b_i - a_j|``.
    """
    av, bv = _as_values(a), _as_values(b)
    return float(np.abs(bv[:, None] - av[None, :]).min(axis=1).max())


def hausdorff(a: Spectrum, b: Spectrum) -> HausdorffResult:
    """Hausdorff distance between two eigenvalue multisets."""
    av, bv = _as_values(a), _as_values(b)
    dist = np.abs(bv[:, None] - av[None, :])
    near_a = dist.min(axis=1)  # for each value of b
    near_b = dist.min(axis=0)  # for each value of a
    forward = float(near_a.max())
    backward = float(near_b.max())
    if forward >= backward:
        i = int(near_a.argmax())
        pair = (complex(av[int(dist[i].argmin())]), complex(bv[i]))
    else:
        j = int(near_b.argmax())
        pair = (complex(av[j]), complex(bv[int(dist[:, j].argmin())]))
    return HausdorffResult(max(forward, backward), forward, backward, pair)


def dominance_eigenvectors(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Right and left eigenvectors of a dominance Laplacian in ranking order.

    Column ``i`` of the first matrix is ``e_1 + ... + e_{i+1}``; row ``i`` of
    the second (its inverse) is ``e_{i+1} - e_{i+2}``, or ``e_n`` for the last.
    Both belong to eigenvalue ``n - 1 - i``. Integer arrays, exact.
    """
    right = np.triu(np.ones((n, n), dtype=np.int64))
    left = np.eye(n, dtype=np.int64) - np.eye(n, k=1, dtype=np.int64)
    return right, left


def _condition(right: np.ndarray, left: np.ndarray) -> np.ndarray:
    v = np.asarray(right, dtype=complex)
    w = np.asarray(left, dtype=complex)
    dots = np.abs(np.einsum("ij,ji->i", w, v))
    return np.linalg.norm(v, axis=0) * np.linalg.norm(w, axis=1) / dots


def eigen_condition_numbers(g, method: str = "closed_form") -> np.ndarray:
    """Eigenvalue condition numbers of a complete dominance graph's Laplacian.

    Entry ``i`` belongs to eigenvalue ``n - 1 - i``. ``closed_form`` uses the
    cumulative-basis right eigenvectors and their bidiagonal inverse; the
    ``numerical`` variant takes eigenvectors of the Laplacian from LAPACK as a
    cross-check. The last entry (eigenvalue 0) comes out as ``sqrt(n)``: its
    left eigenvector is a single basis vector.
    """
    from rankability.digraph import laplacian, out_degrees
    from rankability.measures import is_complete_dominance

    if not is_complete_dominance(g):
        raise InputError("condition numbers are only defined here for complete dominance graphs")
    n = g.n
    if method == "closed_form":
        right, left = dominance_eigenvectors(n)
        return _condition(right, left)
    if method == "numerical":
        import scipy.linalg

        vals, wl, vr = scipy.linalg.eig(laplacian(g), left=True, right=True)
        order = np.argsort(-vals.real)
        vals, wl, vr = vals[order], wl[:, order], vr[:, order]
        expected = np.sort(out_degrees(g))[::-1]
        if np.max(np.abs(vals - expected)) > 1e-8 * max(1, n):
            raise ConvergenceError(f"unexpected dominance spectrum {vals}")
        return _condition(vr, wl.conj().T)
    raise InputError(f"unknown method {method!r}")
