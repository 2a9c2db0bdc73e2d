"""XY spin chain with DM interaction, magnetic field, and per-site baths.

Basis convention (fixed for the whole package):

* basis index bit ``b_j = 1``  <=>  ``sigma_j^z`` eigenvalue +1 (excited),
* site 1 is the most significant bit of the basis index,
* ``sigma^-`` lowers, mapping ``b_j = 1`` to ``b_j = 0``.

With this ordering the single-site matrices below differ from the textbook
typesetting (``SIGMA_Z = diag(-1, +1)``), but all Pauli algebra holds
unchanged and the dissipative fixed point of ``L = sigma^-`` is the
all-zeros basis state.  The state ``|1000>`` is then a single-excitation
state, which is what makes the uniform one-excitation superposition used
by the pseudo-pure initial state behave sensibly under decay.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import PSD_TOL
from .errors import UnsupportedConfigError
from .linalg import expm_hermitian, kron, spectral_norm_hermitian

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA_Y = np.array([[0.0, 1.0j], [-1.0j, 0.0]], dtype=np.complex128)
SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=np.complex128)
# (SIGMA_X - 1j*SIGMA_Y)/2 and its adjoint
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=np.complex128)


@dataclass(frozen=True)
class ChainSpec:
    """Chain geometry and couplings.  Energies are in units of the XY coupling."""

    n_sites: int = 4
    j_coupling: float = 1.0
    dm_strength: float = 0.0
    field_strength: float = 0.0
    boundary: str = "periodic"

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"n_sites must be >= 2, got {self.n_sites}")
        if self.boundary not in ("periodic", "open"):
            raise ValueError(f"boundary must be 'periodic' or 'open', got {self.boundary!r}")
        if self.j_coupling <= 0:
            warnings.warn(
                f"j_coupling = {self.j_coupling:g} is outside the antiferromagnetic regime (J > 0)",
                stacklevel=2,
            )
        if not 0.0 <= self.dm_strength <= 1.0:
            warnings.warn(
                f"dm_strength = {self.dm_strength:g} is outside the studied range [0, 1]",
                stacklevel=2,
            )

    @property
    def dim(self) -> int:
        return 2**self.n_sites


@dataclass(frozen=True)
class BathSpec:
    """One bath: overall coupling, inverse memory time, and temperature.

    ``memory_rate`` is the width of the Lorentzian spectral density; its
    inverse is the bath memory time, so small values mean strongly
    non-Markovian noise and large values approach the white-noise limit.
    """

    coupling_strength: float = 0.003
    memory_rate: float = 5.0
    bath_temperature: float = 80.0

    def __post_init__(self):
        if self.coupling_strength < 0:
            raise ValueError(f"coupling_strength must be >= 0, got {self.coupling_strength}")
        if self.memory_rate <= 0:
            raise ValueError(f"memory_rate must be > 0, got {self.memory_rate}")
        if self.bath_temperature < 0:
            raise ValueError(f"bath_temperature must be >= 0, got {self.bath_temperature}")


@dataclass(frozen=True)
class InitSpec:
    """Initial-state family and its temperature.

    ``epsilon_sign = 'paper'`` keeps the as-written pseudo-pure weight
    epsilon = -3/T_s, which is not positive semidefinite for small T_s; the
    linear master equation evolves such matrices without complaint, so the
    sign is configurable rather than silently corrected.  'positive' flips it.
    """

    system_temperature: float = 10.0
    mode: str = "pseudo_pure"
    epsilon_sign: str = "paper"

    def __post_init__(self):
        if self.system_temperature <= 0:
            raise ValueError(f"system_temperature must be > 0, got {self.system_temperature}")
        if self.mode not in ("pseudo_pure", "high_temp_linear", "gibbs"):
            raise ValueError(f"unknown init mode {self.mode!r}")
        if self.epsilon_sign not in ("paper", "positive"):
            raise ValueError(f"epsilon_sign must be 'paper' or 'positive', got {self.epsilon_sign!r}")


def site_operator(n: int, j: int, p: np.ndarray) -> np.ndarray:
    """Embed the 2x2 matrix ``p`` on site j (1-based) of an n-site register."""
    if not 1 <= j <= n:
        raise ValueError(f"site index {j} out of range 1..{n}")
    out = np.array([[1.0 + 0.0j]])
    for k in range(1, n + 1):
        out = kron(out, p if k == j else IDENTITY_2)
    return out


def build_hamiltonian(c: ChainSpec) -> np.ndarray:
    """Chain Hamiltonian: isotropic XY exchange + z-axis DM term + uniform field.

    Periodic chains sum bonds (j, j+1 mod N) for j = 1..N; open chains stop
    at N-1.  For N = 2 periodic this counts the single physical bond twice
    ((1,2) and (2,1)); the literal bond sum is kept rather than special-cased,
    so the N = 2 periodic spectrum carries a factor 2 on the exchange part.
    """
    n = c.n_sites
    h = np.zeros((c.dim, c.dim), dtype=np.complex128)
    n_bonds = n if c.boundary == "periodic" else n - 1
    for j in range(1, n_bonds + 1):
        jn = j % n + 1
        sxj = site_operator(n, j, SIGMA_X)
        syj = site_operator(n, j, SIGMA_Y)
        sxn = site_operator(n, jn, SIGMA_X)
        syn = site_operator(n, jn, SIGMA_Y)
        h += c.j_coupling * (sxj @ sxn + syj @ syn)
        h += c.dm_strength * (sxj @ syn - syj @ sxn)
    for j in range(1, n + 1):
        h += c.field_strength * site_operator(n, j, SIGMA_Z)
    return h


def lindblad_operators(n: int) -> list[np.ndarray]:
    """Per-site lowering operators (quantum dissipation channel)."""
    return [site_operator(n, j, SIGMA_MINUS) for j in range(1, n + 1)]


def build_lindblads(c: ChainSpec) -> list[np.ndarray]:
    return lindblad_operators(c.n_sites)


def _single_excitation_uniform(n: int) -> np.ndarray:
    """Normalized uniform superposition of all one-excitation basis states."""
    v = np.zeros(2**n, dtype=np.complex128)
    for j in range(n):
        v[1 << j] = 1.0
    return v / np.sqrt(n)


def pseudo_pure_state(c: ChainSpec, t_s: float, epsilon_sign: str = "paper") -> tuple[np.ndarray, bool]:
    """Pseudo-pure initial state: (1-eps)/2^N * I + eps |phi><phi|.

    ``phi`` is the uniform single-excitation superposition (defined for
    N = 4 only) and eps = -3/T_s with the default sign.  Returns the
    matrix and a positivity flag; the flag is False for small T_s where the
    default sign makes the matrix indefinite (eps < 0 puts negative weight
    on the phi direction once |eps| is large enough).
    """
    if t_s <= 0:
        raise ValueError(f"t_s must be > 0, got {t_s}")
    if c.n_sites != 4:
        raise UnsupportedConfigError(
            f"pseudo_pure initial state is defined for a 4-site chain, got n_sites = {c.n_sites}"
        )
    sign = -1.0 if epsilon_sign == "paper" else 1.0
    eps = sign * 3.0 / t_s
    v = _single_excitation_uniform(c.n_sites)
    rho = (1.0 - eps) / c.dim * np.eye(c.dim, dtype=np.complex128) + eps * np.outer(v, v.conj())
    min_eig = float(np.linalg.eigvalsh(rho).min())
    return rho, min_eig >= PSD_TOL


def high_temp_state(c: ChainSpec, t_s: float) -> np.ndarray:
    """First-order high-temperature expansion (I - H/T_s)/2^N; trace 1 exactly."""
    if t_s <= 0:
        raise ValueError(f"t_s must be > 0, got {t_s}")
    h = build_hamiltonian(c)
    return (np.eye(c.dim, dtype=np.complex128) - h / t_s) / c.dim


def gibbs_state(c: ChainSpec, t_s: float) -> np.ndarray:
    """Exact thermal state exp(-H/T_s) / Z."""
    if t_s <= 0:
        raise ValueError(f"t_s must be > 0, got {t_s}")
    w = expm_hermitian(build_hamiltonian(c), -1.0 / t_s)
    return w / np.trace(w).real


def initial_state(c: ChainSpec, init: InitSpec) -> tuple[np.ndarray, bool]:
    """Build the configured initial state; returns (rho, positivity flag)."""
    if init.mode == "pseudo_pure":
        return pseudo_pure_state(c, init.system_temperature, init.epsilon_sign)
    if init.mode == "high_temp_linear":
        rho = high_temp_state(c, init.system_temperature)
    else:
        rho = gibbs_state(c, init.system_temperature)
    return rho, bool(np.linalg.eigvalsh(rho).min() >= PSD_TOL)


def validity_ratio(c: ChainSpec, t_s: float) -> float:
    """||H|| / T_s; the high-temperature forms are trustworthy when << 1."""
    if t_s <= 0:
        raise ValueError(f"t_s must be > 0, got {t_s}")
    return spectral_norm_hermitian(build_hamiltonian(c)) / t_s


def spectral_density(omega: float, b: BathSpec) -> float:
    """Lorentzian bath spectrum (coupling/pi) * omega / (1 + (omega/rate)^2).

    Diagnostic only: the propagator consumes the bath through the memory-
    operator ODE coefficients, never through this function.
    """
    x = omega / b.memory_rate
    return b.coupling_strength / np.pi * omega / (1.0 + x * x)


def cyclic_shift_permutation(n: int) -> np.ndarray:
    """Permutation matrix rotating site contents j -> j+1 (mod n).

    The periodic Hamiltonian commutes with it; used by invariant tests.
    """
    d = 2**n
    p = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        bits = [(i >> (n - j)) & 1 for j in range(1, n + 1)]
        rotated = [bits[-1]] + bits[:-1]
        k = 0
        for j, b in enumerate(rotated, start=1):
            k |= b << (n - j)
        p[k, i] = 1.0
    return p


def total_sigma_z(n: int) -> np.ndarray:
    out = np.zeros((2**n, 2**n), dtype=np.complex128)
    for j in range(1, n + 1):
        out += site_operator(n, j, SIGMA_Z)
    return out


__all__ = [
    "IDENTITY_2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SIGMA_MINUS",
    "SIGMA_PLUS",
    "ChainSpec",
    "BathSpec",
    "InitSpec",
    "site_operator",
    "build_hamiltonian",
    "lindblad_operators",
    "build_lindblads",
    "pseudo_pure_state",
    "high_temp_state",
    "gibbs_state",
    "initial_state",
    "validity_ratio",
    "spectral_density",
    "cyclic_shift_permutation",
    "total_sigma_z",
]
