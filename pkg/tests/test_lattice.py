"""Lattice construction, enumeration and pair geometry."""

import math

import numpy as np
import pytest

from rddi.lattice import (
    AtomSites,
    IndexOrder,
    LatticeSpec,
    build,
    load_sites,
    pair_geometry,
    save_sites,
)

XHAT = np.array([1.0, 0.0])


def test_single_site_at_origin():
    sites = build(LatticeSpec(1, 1, 2.0))
    assert sites.n == 1
    assert np.array_equal(sites.positions, [[0.0, 0.0]])


def test_z_major_enumeration():
    sites = build(LatticeSpec(2, 2, 1.0))
    assert sites.positions.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


def test_x_major_enumeration():
    sites = build(LatticeSpec(2, 2, 1.0, index_order=IndexOrder.X_MAJOR))
    assert sites.positions.tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]


def test_ten_by_ten_extent():
    sites = build(LatticeSpec(10, 10, 1.0))
    assert sites.n == 100
    d = sites.positions[:, None, :] - sites.positions[None, :, :]
    xi_max = np.hypot(d[..., 0], d[..., 1]).max()
    assert xi_max == pytest.approx(9.0 * math.sqrt(2.0))


def test_site_count_cap():
    with pytest.raises(ValueError):
        build(LatticeSpec(101, 101, 1.0))
    build(LatticeSpec(101, 101, 1.0, max_sites=20_000))  # raised cap is fine


def test_spec_validation():
    with pytest.raises(ValueError):
        LatticeSpec(0, 1, 1.0)
    with pytest.raises(ValueError):
        LatticeSpec(1, 1, 0.0)
    with pytest.raises(ValueError):
        LatticeSpec(1, 1, 1.0, drive=(1.0, 1.0))


def test_unit_vectors_from_spec():
    spec = LatticeSpec(1, 1, 1.0, polarization_angle=math.pi / 2.0)
    assert spec.p_hat == pytest.approx([0.0, 1.0])
    assert spec.k_hat == pytest.approx([0.0, 1.0])


class TestPairGeometry:
    def setup_method(self):
        self.sites = build(LatticeSpec(2, 2, 1.0))  # [(0,0),(0,1),(1,0),(1,1)]

    def test_parallel_projection(self):
        geom = pair_geometry(self.sites, 0, 2, XHAT)  # separation along x
        assert geom.xi == pytest.approx(1.0)
        assert geom.c2 == pytest.approx(1.0)

    def test_perpendicular_projection(self):
        geom = pair_geometry(self.sites, 0, 1, XHAT)  # separation along z
        assert geom.c2 == pytest.approx(0.0)

    def test_diagonal_projection(self):
        geom = pair_geometry(self.sites, 0, 3, XHAT)
        assert geom.xi == pytest.approx(math.sqrt(2.0))
        assert geom.c2 == pytest.approx(0.5)

    def test_exchange_symmetry(self):
        for i, j in ((0, 1), (0, 3), (1, 2)):
            a = pair_geometry(self.sites, i, j, XHAT)
            b = pair_geometry(self.sites, j, i, XHAT)
            assert a.xi == b.xi and a.c2 == b.c2

    def test_rejects_identical_indices(self):
        with pytest.raises(ValueError):
            pair_geometry(self.sites, 1, 1, XHAT)


def test_enumeration_change_permutes_pair_multiset():
    a = build(LatticeSpec(3, 4, 0.7))
    b = build(LatticeSpec(3, 4, 0.7, index_order=IndexOrder.X_MAJOR))

    def multiset(sites):
        pairs = [
            (round(g.xi, 12), round(g.c2, 12))
            for i in range(sites.n)
            for j in range(i + 1, sites.n)
            for g in [pair_geometry(sites, i, j, XHAT)]
        ]
        return sorted(pairs)

    assert multiset(a) == multiset(b)


def test_duplicate_sites_rejected():
    with pytest.raises(ValueError):
        AtomSites.from_positions([[0.0, 0.0], [0.0, 0.0]])


def test_site_file_round_trip(tmp_path):
    sites = build(LatticeSpec(3, 2, 1.25))
    path = tmp_path / "sites.txt"
    save_sites(sites, path)
    text = path.read_text()
    assert text.splitlines()[0] == "index, xi_x, xi_z"
    loaded = load_sites(path)
    assert np.array_equal(loaded.positions, sites.positions)


def test_explicit_positions_escape_hatch(tmp_path):
    ring = [[math.cos(a), math.sin(a)] for a in np.linspace(0, 2 * math.pi, 7)[:-1]]
    sites = AtomSites.from_positions(ring)
    assert sites.n == 6
    path = tmp_path / "ring.txt"
    save_sites(sites, path)
    assert load_sites(path).n == 6


def test_load_rejects_garbage(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("index, xi_x, xi_z\n1, 2\n")
    with pytest.raises(ValueError):
        load_sites(path)
    path.write_text("")
    with pytest.raises(ValueError):
        load_sites(path)
