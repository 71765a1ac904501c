import math

import pytest

import _sturmspec as ss


def test_evaluate():
    assert ss.evaluate([0, 0, 1, 1]) == (1, 2)
    assert ss.evaluate([0, 0, 1, -1]) is None
    with pytest.raises(ValueError):
        ss.evaluate([0, 0, 0, 2])


def test_words():
    assert ss.word_period([0, 0, 2]) == [0, 1]
    assert ss.mechanical_word(1, 2, 1) == 1
    assert ss.mechanical_word(1, 2, 2) == 0
    assert ss.substitution_word([1, 1], 1) == [1]


def test_traces():
    assert ss.trace_poly([0, 0, 2], 1.0) == ["-2", "-1", "1"]
    assert ss.trace_eval([0, 0, 2], 1.0, 1.0) == pytest.approx(-2.0)
    assert abs(ss.fricke_vogt_residual([0, 0, 1], 2, 0.3, 1.7)) < 1e-9


def test_bands():
    bands = ss.spectrum_bands([0, 0, 2], 1.0)
    assert len(bands) == 2
    assert bands[0]["left"] == pytest.approx(0.5 - math.sqrt(4.25))
    assert bands[0]["type"] == "A"
    assert bands[1]["type"] == "B"
    assert ss.zentrum([0, 0, 2], 0, 1.0) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        ss.spectrum_bands([0, 0, 2], 0.0)


def test_exact_path_agrees():
    fl = ss.spectrum_bands([0, 0, 1, 1, 1], 1.0)
    ex = ss.spectrum_bands([0, 0, 1, 1, 1], 1.0, exact=True)
    for a, b in zip(fl, ex):
        assert a["left"] == pytest.approx(b["left"], abs=1e-9)
        assert a["right"] == pytest.approx(b["right"], abs=1e-9)


def test_floquet():
    m = ss.build_floquet([0, 0, 2], 1.0, 0.0)
    assert m == [[0.0, 2.0], [2.0, 1.0]]
    ev = ss.floquet_eigenvalues([0, 0, 2], 1.0, 0.0)
    assert ev[1] == pytest.approx((1 + math.sqrt(17)) / 2)
    assert ss.counting([0, 0], 1.0, 0.0, 1, 2.0) == 0
    assert ss.admissible(0, 0, 1, 0, 1, 0, 1)


def test_classify():
    assert ss.classify([0, 0, 3], [0.5, 1.0, 4.5]) == ["A", "A", "B"]
    flags = ss.backward_type([0, 0, 1], 0, 1.0)
    assert flags["B"] and not flags["weakA"]


def test_tree_and_ids():
    tree = ss.SpectralTree([1, 1, 1, 1], 3)
    assert tree.psi(tree.level(0)[0], 1.0)["left"] == pytest.approx(-2.0)
    assert "vertices" in tree.to_json()

    tail = [1] * 12
    e = ss.boundary_energy(tail, [0] * 6, 1.0, 1e-6)
    value = e if isinstance(e, float) else 0.5 * (e[0] + e[1])
    assert -2.1 < value < -1.0
    v, bound = ss.ids_path(tail, [0] * 6)
    assert abs(v) <= bound + 1e-12
    assert ss.ids_bruteforce(tail, 1.0, 4.0, 100) == 1.0
    rep = ss.dry_tmp_verify(tail, 6, 1.0, 3)
    assert rep["all_labels_matched"]
    assert rep["every_l_realized"]


def test_interlace():
    d = ss.rank2_decomposition([0, 0, 2], 1, 1, 1.0, 0.0, 0.0, 0.0)
    assert d["residual"] < 1e-12
    assert abs(d["trace"]) < 1e-12
    holds, strict = ss.interlacing_check([0, 0, 2], 1, 1, 1.0, 0.0, 0.0, 0.0)
    assert holds


def test_verify_suite():
    ok, detail = ss.verify_suite("traces")
    assert ok, detail
