import numpy as np
import pytest

from spinbath.model import BathSpec, ChainSpec, InitSpec


def brute_force_hamiltonian(n, j_coupling, dm, field, periodic=True):
    """Bit-level construction of the chain Hamiltonian, independent of the
    kron-product path in the package.

    Works directly on basis indices: bit b_j = 1 means site j excited
    (sigma_z = +1), site 1 is the most significant bit.  Exchange bonds move
    an excitation between antiparallel neighbours with amplitude 2J; the DM
    term adds the antisymmetric imaginary part; the field term is diagonal.
    """
    d = 2**n
    h = np.zeros((d, d), dtype=np.complex128)

    def bit(i, j):
        return (i >> (n - j)) & 1

    n_bonds = n if periodic else n - 1
    for i in range(d):
        h[i, i] += field * (2 * bin(i).count("1") - n)
        for j in range(1, n_bonds + 1):
            jn = j % n + 1
            bj, bn = bit(i, j), bit(i, jn)
            if bj != bn:
                k = i ^ (1 << (n - j)) ^ (1 << (n - jn))
                h[k, i] += 2 * j_coupling
                # sigma_y amplitude on a flip is -i from |0> and +i from |1>
                amp_y_n = -1j if bn == 0 else 1j
                amp_y_j = -1j if bj == 0 else 1j
                h[k, i] += dm * (amp_y_n - amp_y_j)
    return h


def random_hermitian(dim, rng, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_complex(dim, rng, scale=1.0):
    return scale * (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def xy_chain():
    """4-site periodic XY ring, no DM term, no field."""
    return ChainSpec(n_sites=4, j_coupling=1.0, dm_strength=0.0, field_strength=0.0)


@pytest.fixture
def warm_bath():
    return BathSpec(coupling_strength=0.003, memory_rate=5.0, bath_temperature=80.0)


@pytest.fixture
def cool_system_init():
    return InitSpec(system_temperature=10.0, mode="pseudo_pure")
