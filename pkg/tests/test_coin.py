import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import ortho_group

from honeywalk.coin import (
    CoinOperator,
    CoinPair,
    check_localization_condition,
    coin_from_name,
    dft3,
    grover,
    load_coin,
    machida_coin,
    row_mask,
    save_coin,
)
from honeywalk.momentum import evolution_operator_3


def test_grover_entries():
    g3 = grover(3).matrix
    assert np.allclose(np.diag(g3), -1 / 3)
    assert np.allclose(g3[~np.eye(3, dtype=bool)], 2 / 3)
    g4 = grover(4).matrix
    assert np.allclose(np.diag(g4), -0.5)
    assert np.allclose(g4[~np.eye(4, dtype=bool)], 0.5)


def test_grover_is_real_symmetric_involution():
    for d in (3, 4):
        g = grover(d).matrix
        assert np.allclose(g, g.T) and np.allclose(g.imag, 0)
        assert np.allclose(g @ g, np.eye(d), atol=1e-14)


def test_dft_entries_and_spectrum():
    h = dft3().matrix
    w = np.exp(2j * np.pi / 3)
    assert h[1, 2] == pytest.approx(w**2 / math.sqrt(3), abs=1e-15)
    assert h[2, 2] == pytest.approx(w / math.sqrt(3), abs=1e-15)
    ev = np.linalg.eigvals(h)
    for target in (1, -1, 1j):
        assert np.abs(ev - target).min() < 1e-12


def test_machida_coin_reduces_to_grover_at_arccos():
    eps = math.acos(-1 / 3)
    assert np.abs(machida_coin(eps).matrix - grover(3).matrix).max() < 1e-14
    # the arcsin reading of the same number gives a different coin
    assert np.abs(machida_coin(math.asin(-1 / 3)).matrix - grover(3).matrix).max() > 0.5


@given(st.floats(min_value=-math.pi, max_value=math.pi))
def test_machida_coin_unitary(eps):
    m = machida_coin(eps).matrix
    assert np.abs(m.conj().T @ m - np.eye(3)).max() < 1e-12


def test_non_unitary_and_bad_dimension_rejected():
    with pytest.raises(ValueError):
        CoinOperator(np.ones((3, 3)))
    with pytest.raises(ValueError):
        CoinOperator(np.eye(2))


def test_matrix_is_read_only():
    g = grover(3)
    with pytest.raises(ValueError):
        g.matrix[0, 0] = 1.0


def test_row_mask_examples():
    g = grover(3)
    m = row_mask(g, 2)
    assert np.allclose(m[1], g.matrix[1])
    assert np.allclose(np.delete(m, 1, axis=0), 0)
    with pytest.raises(IndexError):
        row_mask(g, 0)
    with pytest.raises(IndexError):
        row_mask(g, 4)


@pytest.mark.parametrize("name", ["grover3", "grover4", "dft3"])
def test_row_masks_partition_coin(name):
    c = coin_from_name(name)
    total = sum(row_mask(c, j) for j in range(1, c.dim + 1))
    assert np.array_equal(total, c.matrix)


def test_dagger_name_round_trip():
    h = dft3()
    assert h.dagger().name == "dft3-dagger"
    assert h.dagger().dagger().name == "dft3"
    assert np.allclose(h.dagger().matrix, h.matrix.conj().T)


def test_condition_holds_for_grover(grover_pair):
    report = check_localization_condition(grover_pair)
    assert report.holds and report.adjoint_ok and report.real_eigenvectors_ok
    assert report.degenerate_eigenspaces == 1
    assert not report.inconclusive


def test_condition_holds_for_dft_pair(dft_pair):
    report = check_localization_condition(dft_pair)
    assert report.holds, report.summary()


def test_condition_fails_adjoint_clause_for_dft_twice():
    h = dft3()
    report = check_localization_condition(CoinPair(h, h))
    assert not report.holds
    assert not report.adjoint_ok
    assert "D != C^dagger" in report.failed
    assert "holds: False" in report.summary()


def test_condition_holds_for_machida_pair():
    c = machida_coin(1.0)
    assert check_localization_condition(CoinPair(c, c.dagger())).holds


def test_condition_fails_for_complex_eigenvectors():
    # diagonal phases in a complex basis: D = C^dagger but eigenvectors are not real
    h = dft3().matrix
    c = h @ np.diag(np.exp(1j * np.array([0.3, 1.1, 2.0]))) @ h.conj().T
    pair = CoinPair(CoinOperator(c), CoinOperator(c.conj().T))
    report = check_localization_condition(pair)
    assert report.adjoint_ok
    assert not report.real_eigenvectors_ok
    assert not report.holds


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_real_eigenbasis_pairs_have_flat_unit_eigenvalue(seed):
    rng = np.random.default_rng(seed)
    o = ortho_group.rvs(3, random_state=rng)
    c = o @ np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, 3))) @ o.T
    pair = CoinPair(CoinOperator(c), CoinOperator(c.conj().T))
    assert check_localization_condition(pair).holds
    k, l = rng.uniform(-np.pi, np.pi, size=(2, 100))
    ev = np.linalg.eigvals(evolution_operator_3(pair, k, l))
    assert np.abs(ev - 1).min(axis=1).max() < 1e-10


def test_catalog_and_machida_names():
    assert coin_from_name("grover3").dim == 3
    assert coin_from_name("grover4").dim == 4
    c = coin_from_name("machida:0.5-dagger")
    assert np.allclose(c.matrix, machida_coin(0.5).matrix.conj().T)
    with pytest.raises(KeyError):
        coin_from_name("nonsense")


def test_json_round_trip(tmp_path):
    path = tmp_path / "h.json"
    save_coin(dft3(), path)
    back = load_coin(path)
    assert np.array_equal(back.matrix, dft3().matrix)
    assert coin_from_name(str(path)).dim == 3


def test_malformed_coin_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        load_coin(bad)
    nonunitary = tmp_path / "nu.json"
    nonunitary.write_text(json.dumps({"dim": 3, "re": np.ones((3, 3)).tolist(),
                                      "im": np.zeros((3, 3)).tolist()}))
    with pytest.raises(ValueError):
        load_coin(nonunitary)
    wrongdim = tmp_path / "wd.json"
    wrongdim.write_text(json.dumps({"dim": 4, "re": np.eye(3).tolist(), "im": np.zeros((3, 3)).tolist()}))
    with pytest.raises(ValueError):
        load_coin(wrongdim)
