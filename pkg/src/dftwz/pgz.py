"""Real-field Peterson-Gorenstein-Zierler decoding.

Works on the complex syndrome s = H r, whose m-th component rides the
DFT row zero_rows[m]. Because the zero rows are contiguous, an error
pattern e with nu nonzeros produces syndrome components obeying a
length-nu linear recurrence, which is what the classical PGZ steps
exploit: rank of the Hankel syndrome matrix -> nu; key-equation solve ->
locator coefficients; evaluation of the locator on the unit-circle grid
-> locations; linear solve -> magnitudes.

All steps tolerate an additive perturbation on the syndrome (here:
quantization noise) via a relative rank tolerance, an absolute noise
floor, and least-squares fits over all 2t syndrome components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .codes import DftCode

__all__ = [
    "Syndrome",
    "ErrorEstimate",
    "PgzDiagnostics",
    "compute_syndrome",
    "estimate_error_count",
    "solve_error_locator",
    "locate_errors",
    "estimate_magnitudes",
    "pgz_decode",
]

# Relative rank tolerance used when the syndrome carries quantization
# noise; noiseless tests override with 1e-10.
DEFAULT_REL_TOL = 1e-2

# Relative floor under which the locator system counts as singular.
_LOCATOR_SINGULAR_RTOL = 1e-10


@dataclass(frozen=True)
class Syndrome:
    """Complex syndrome vector of length n - k = 2t, in zero_rows order."""

    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PgzDiagnostics:
    """Per-decode numerical health record."""

    singular_values: np.ndarray
    locator_residual: float
    magnitude_residual: float
    retries: int


_EMPTY_DIAG = PgzDiagnostics(np.zeros(0), 0.0, 0.0, 0)


@dataclass(frozen=True)
class ErrorEstimate:
    """Decoder output: nu errors at ``locations`` with ``magnitudes``."""

    count: int
    locations: tuple[int, ...]
    magnitudes: np.ndarray
    locator_coeffs: np.ndarray
    diagnostics: PgzDiagnostics = field(default=_EMPTY_DIAG, compare=False)


def _syndrome_values(s: Syndrome | np.ndarray) -> np.ndarray:
    values = np.asarray(getattr(s, "values", s), dtype=np.complex128)
    if values.ndim != 1:
        raise ValueError(f"syndrome must be a vector, got shape {values.shape}")
    return values


def compute_syndrome(H: np.ndarray, r: np.ndarray) -> Syndrome:
    """s = H r. For r = codeword + e the syndrome depends only on e."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (H.shape[1],):
        raise ValueError(f"received vector length {r.shape} does not match n = {H.shape[1]}")
    return Syndrome(values=H @ r)


def estimate_error_count(
    s: Syndrome | np.ndarray,
    t: int,
    rel_tol: float = DEFAULT_REL_TOL,
    noise_floor: float = 0.0,
) -> int:
    """Number of errors nu via the rank of the t x t Hankel matrix
    S[a, b] = s[a + b].

    A syndrome whose components all sit below ``noise_floor`` is declared
    clean (nu = 0) before any rank logic runs; the floor is the caller's
    bound on syndrome-domain quantization noise.
    """
    values = _syndrome_values(s)
    if len(values) != 2 * t:
        raise ValueError(f"syndrome length {len(values)} does not match 2t = {2 * t}")
    if t == 0 or np.abs(values).max(initial=0.0) <= noise_floor:
        return 0
    hankel = np.empty((t, t), dtype=np.complex128)
    for a in range(t):
        hankel[a, :] = values[a : a + t]
    sing = np.linalg.svd(hankel, compute_uv=False)
    if sing[0] == 0.0:
        return 0
    return int(np.sum(sing >= rel_tol * sing[0]))


def solve_error_locator(s: Syndrome | np.ndarray, nu: int) -> np.ndarray:
    """Coefficients Lambda_1..Lambda_nu of Lambda(x) = 1 - sum Lambda_j x^j.

    The syndrome recurrence s[m + nu] = sum_j Lambda_j s[m + nu - j]
    yields 2t - nu equations; they are solved in the least-squares sense
    so every syndrome component contributes. A rank-deficient system
    signals an over-estimated nu and raises LinAlgError for the caller's
    retry ladder.
    """
    values = _syndrome_values(s)
    two_t = len(values)
    if not 1 <= nu <= two_t // 2:
        raise ValueError(f"nu must be in 1..t = {two_t // 2}, got {nu}")
    rows = two_t - nu
    a = np.empty((rows, nu), dtype=np.complex128)
    b = np.empty(rows, dtype=np.complex128)
    for m in range(rows):
        for j in range(1, nu + 1):
            a[m, j - 1] = values[m + nu - j]
        b[m] = values[m + nu]
    sing = np.linalg.svd(a, compute_uv=False)
    if sing[0] == 0.0 or sing[-1] < _LOCATOR_SINGULAR_RTOL * sing[0]:
        raise np.linalg.LinAlgError(
            f"locator system is rank deficient for nu = {nu}; retry with fewer errors"
        )
    coeffs, *_ = np.linalg.lstsq(a, b, rcond=None)
    return coeffs


def _locator_poly(locator_coeffs: np.ndarray) -> np.ndarray:
    # np.polyval convention, highest degree first: Lambda(x) = 1 - sum_j L_j x^j.
    return np.concatenate([-locator_coeffs[::-1], [1.0]])


def locate_errors(
    locator_coeffs: np.ndarray,
    n: int,
    nu: int,
    candidate_set: "list[int] | tuple[int, ...] | np.ndarray | None" = None,
) -> tuple[int, ...]:
    """The nu candidate indices minimizing |Lambda(alpha^{-i})|.

    Grid evaluation over the candidate set replaces polynomial root
    extraction: exact when the syndrome is exact, and under noise it
    degrades gracefully by picking the nearest grid cells. Ties break
    toward the smaller index.
    """
    if candidate_set is None:
        candidate_set = range(n)
    cands = np.asarray(sorted(set(int(i) for i in candidate_set)), dtype=np.int64)
    if np.any(cands < 0) or np.any(cands >= n):
        raise ValueError("candidate indices must lie in 0..n-1")
    if len(cands) < nu:
        raise ValueError(f"need at least nu = {nu} candidates, got {len(cands)}")
    alpha_inv = np.exp(2j * np.pi * cands / n)  # alpha^{-i}, alpha = e^{-j 2 pi / n}
    scores = np.abs(np.polyval(_locator_poly(np.asarray(locator_coeffs)), alpha_inv))
    order = np.lexsort((cands, scores))
    chosen = np.sort(cands[order[:nu]])
    return tuple(int(i) for i in chosen)


def estimate_magnitudes(
    code: DftCode,
    s: Syndrome | np.ndarray,
    locations: "list[int] | tuple[int, ...]",
    method: str = "ls",
) -> np.ndarray:
    """Real error magnitudes at the given locations.

    Solves s_m = sum_l e_l (1/sqrt(n)) alpha^{zero_rows[m] i_l}.
    method="ls" (default) stacks real and imaginary parts of all 2t
    equations into one real least-squares fit; method="exact" solves the
    square complex subsystem of the first nu equations and keeps the real
    part.
    """
    values = _syndrome_values(s)
    locs = list(locations)
    if len(set(locs)) != len(locs):
        raise np.linalg.LinAlgError(f"repeated error locations {locations}")
    if not locs:
        return np.zeros(0)
    a = code.H[:, locs]
    if method == "exact":
        nu = len(locs)
        return np.asarray(np.linalg.solve(a[:nu, :], values[:nu]).real, dtype=np.float64)
    if method != "ls":
        raise ValueError(f"unknown magnitude method {method!r}")
    a_real = np.vstack([a.real, a.imag])
    b_real = np.concatenate([values.real, values.imag])
    mags, *_ = np.linalg.lstsq(a_real, b_real, rcond=None)
    return np.asarray(mags, dtype=np.float64)


def _empty_estimate(diag: PgzDiagnostics) -> ErrorEstimate:
    return ErrorEstimate(
        count=0,
        locations=(),
        magnitudes=np.zeros(0),
        locator_coeffs=np.zeros(0, dtype=np.complex128),
        diagnostics=diag,
    )


def pgz_decode(
    code: DftCode,
    s: Syndrome | np.ndarray,
    candidate_set: "list[int] | tuple[int, ...] | np.ndarray | None" = None,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    noise_floor: float = 0.0,
    magnitude_method: str = "ls",
) -> ErrorEstimate:
    """Full PGZ chain with a retry ladder.

    estimate_error_count -> solve_error_locator -> locate_errors ->
    estimate_magnitudes; a singular locator system decrements nu and
    tries again, bottoming out at the empty estimate. Never raises for
    numerical reasons: worst cases surface as poor estimates, which the
    Monte-Carlo metrics then record.
    """
    values = _syndrome_values(s)
    t = code.t
    nu0 = estimate_error_count(values, t, rel_tol=rel_tol, noise_floor=noise_floor)
    if t > 0:
        hankel = np.empty((t, t), dtype=np.complex128)
        for a_ in range(t):
            hankel[a_, :] = values[a_ : a_ + t]
        sing = np.linalg.svd(hankel, compute_uv=False)
    else:
        sing = np.zeros(0)

    retries = 0
    nu = nu0
    while nu >= 1:
        try:
            coeffs = solve_error_locator(values, nu)
            locs = locate_errors(coeffs, code.n, nu, candidate_set)
            mags = estimate_magnitudes(code, values, locs, method=magnitude_method)
        except np.linalg.LinAlgError:
            nu -= 1
            retries += 1
            continue
        a = code.H[:, list(locs)]
        mag_residual = float(np.linalg.norm(a @ mags - values))
        poly_pred = np.array(
            [values[m] - coeffs @ values[m - 1 :: -1][:nu] for m in range(nu, 2 * t)]
        )
        loc_residual = float(np.linalg.norm(poly_pred)) if len(poly_pred) else 0.0
        return ErrorEstimate(
            count=len(locs),
            locations=locs,
            magnitudes=mags,
            locator_coeffs=coeffs,
            diagnostics=PgzDiagnostics(
                singular_values=sing,
                locator_residual=loc_residual,
                magnitude_residual=mag_residual,
                retries=retries,
            ),
        )
    return _empty_estimate(PgzDiagnostics(sing, 0.0, 0.0, retries))
