import numpy as np
import pytest

from coherent_readout import channels, povm
from coherent_readout.channels import (
    amplitude_damping,
    dephasing,
    identity,
    pauli_channel,
    random_channel,
    rotation_y,
)


def unit(dim, i, j):
    m = np.zeros((dim, dim), dtype=complex)
    m[i, j] = 1.0
    return m


def test_identity_povm_is_basis_projectors():
    p = povm.effective_povm(identity(2))
    assert np.array_equal(p.elements[0], np.diag([1.0, 0.0]))
    assert np.array_equal(p.elements[1], np.diag([0.0, 1.0]))


def test_amplitude_damping_povm():
    p = povm.effective_povm(amplitude_damping(0.3))
    assert np.max(np.abs(p.elements[0] - np.diag([1.0, 0.3]))) < 1e-15
    assert np.max(np.abs(p.elements[1] - np.diag([0.0, 0.7]))) < 1e-15


@pytest.mark.parametrize("theta", [0.3, np.pi / 2, 2.5])
def test_rotation_povm_closed_form(theta):
    p = povm.effective_povm(rotation_y(theta))
    c2 = np.cos(theta / 2.0) ** 2
    s2 = np.sin(theta / 2.0) ** 2
    half_sin = np.sin(theta) / 2.0
    f0 = np.array([[c2, half_sin], [half_sin, s2]])
    f1 = np.array([[s2, -half_sin], [-half_sin, c2]])
    assert np.max(np.abs(p.elements[0] - f0)) < 1e-12
    assert np.max(np.abs(p.elements[1] - f1)) < 1e-12


def test_povm_rejects_wrong_element_count():
    with pytest.raises(ValueError, match="expected 2"):
        povm.Povm(2, (np.eye(2),))


def test_povm_rejects_broken_completeness():
    with pytest.raises(ValueError, match="completeness"):
        povm.Povm(2, (np.eye(2), np.eye(2)))


def test_povm_rejects_nonhermitian_element():
    e0 = np.array([[0.5, 0.3], [0.0, 0.5]], dtype=complex)
    with pytest.raises(ValueError, match="hermiticity"):
        povm.Povm(2, (e0, np.eye(2) - e0))


def test_povm_rejects_negative_element():
    e0 = np.diag([-0.2, 0.5]).astype(complex)
    with pytest.raises(ValueError, match="positivity"):
        povm.Povm(2, (e0, np.eye(2) - e0))


def test_kernel_identity_channel_returns_units():
    ch = identity(2)
    for s in range(2):
        for t in range(2):
            assert np.array_equal(povm.kernel(ch, s, t), unit(2, s, t))


@pytest.mark.parametrize("lam", [0.0, 0.4, 1.0])
def test_kernel_dephasing_scales_unit(lam):
    out = povm.kernel(dephasing(lam), 0, 1)
    assert np.max(np.abs(out - lam * unit(2, 0, 1))) < 1e-15


def test_kernel_amplitude_damping_population_transfer():
    out = povm.kernel(amplitude_damping(0.3), 1, 1)
    assert np.max(np.abs(out - np.diag([0.3, 0.7]))) < 1e-15


def test_kernel_rejects_bad_indices():
    with pytest.raises(ValueError):
        povm.kernel(identity(2), 0, 2)
    with pytest.raises(ValueError):
        povm.kernel(identity(2), -1, 0)


def test_kernel_diag_defect_classical_channels():
    assert povm.kernel_diag_defect(dephasing(0.5)) == 0.0
    assert povm.kernel_diag_defect(amplitude_damping(0.3)) == 0.0


@pytest.mark.parametrize("theta", [0.3, 1.0, np.pi / 2, 3.0])
def test_kernel_diag_defect_rotation(theta):
    defect = povm.kernel_diag_defect(rotation_y(theta))
    assert defect == pytest.approx(abs(np.sin(theta)) / 2.0, abs=1e-12)


def test_offdiag_defect_identity_zero():
    assert povm.offdiag_defect(povm.effective_povm(identity(2))) == 0.0


@pytest.mark.parametrize("theta", [0.3, 1.0, 2.8])
def test_offdiag_defect_rotation(theta):
    p = povm.effective_povm(rotation_y(theta))
    assert povm.offdiag_defect(p) == pytest.approx(abs(np.sin(theta)) / 2.0, abs=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_pauli_povm_is_diagonal(seed):
    probs = np.random.default_rng(seed).dirichlet(np.ones(16))
    p = povm.effective_povm(pauli_channel(probs))
    assert povm.offdiag_defect(p) < 1e-12


@pytest.mark.parametrize("dim,seed", [(2, 0), (2, 1), (4, 2), (4, 3), (8, 4)])
def test_kernel_diagonal_matches_povm_entry(dim, seed):
    # <k| E(|l><r|) |k> = <r| F_k |l>: Heisenberg/Schroedinger consistency.
    ch = random_channel(dim, 3, seed)
    p = povm.effective_povm(ch)
    for l in range(dim):
        for r in range(dim):
            if l == r:
                continue
            k_img = povm.kernel(ch, l, r)
            for k in range(dim):
                assert abs(k_img[k, k] - p.elements[k][r, l]) < 1e-12


@pytest.mark.parametrize("dim,seed", [(2, 10), (4, 11), (8, 12)])
def test_defect_measures_agree(dim, seed):
    ch = random_channel(dim, 4, seed)
    p = povm.effective_povm(ch)
    assert povm.kernel_diag_defect(ch) == pytest.approx(povm.offdiag_defect(p), abs=1e-12)


@pytest.mark.parametrize("dim,seed", [(2, 20), (4, 21), (8, 22)])
def test_povm_completeness_sums(dim, seed):
    p = povm.effective_povm(random_channel(dim, 3, seed))
    total = sum(p.elements)
    assert np.max(np.abs(total - np.eye(dim))) < 1e-12


def test_effective_povm_of_composite_channel():
    # For a product channel the POVM factorizes; cross-check against the
    # direct Heisenberg-picture computation.
    ch_a = amplitude_damping(0.3)
    ch_b = identity(2)
    joint = channels.tensor(ch_a, ch_b)
    p = povm.effective_povm(joint)
    p_a = povm.effective_povm(ch_a)
    p_b = povm.effective_povm(ch_b)
    for j in range(2):
        for k in range(2):
            expected = np.kron(p_a.elements[j], p_b.elements[k])
            direct = channels.adjoint_apply(joint, unit(4, 2 * j + k, 2 * j + k))
            assert np.max(np.abs(p.elements[2 * j + k] - expected)) < 1e-14
            assert np.max(np.abs(p.elements[2 * j + k] - direct)) < 1e-14
