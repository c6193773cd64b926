import pytest

from ivgibbs import (
    Configuration,
    DomainError,
    EnumerationCapError,
    build_tree,
    concat,
    enumerate_configs,
    volume_size,
)
from ivgibbs.lattice import config_from_mask


@pytest.mark.parametrize("k,n,nv,ne,npr", [
    (2, 2, 7, 6, 4),
    (2, 3, 15, 14, 12),
    (3, 2, 13, 12, 9),
])
def test_counts(k, n, nv, ne, npr):
    tree = build_tree(k, n)
    assert tree.num_vertices == nv
    assert len(tree.nn_edges) == ne
    assert len(tree.prolonged_pairs) == npr


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_closed_form_invariants(k, n):
    tree = build_tree(k, n)
    for m in range(n + 1):
        assert len(tree.level_vertices(m)) == k ** m
    expected_v = n + 1 if k == 1 else (k ** (n + 1) - 1) // (k - 1)
    assert tree.num_vertices == expected_v == volume_size(k, n)
    assert len(tree.nn_edges) == tree.num_vertices - 1
    expected_p = volume_size(k, n - 2) * k * k if n >= 2 else 0
    assert len(tree.prolonged_pairs) == expected_p


def test_semi_infinite_convention():
    tree = build_tree(3, 3)
    assert len(tree.successors[0]) == 3
    parents_of = {}
    for x, y in tree.nn_edges:
        assert y not in parents_of
        parents_of[y] = x
    assert set(parents_of) == set(range(1, tree.num_vertices))


def test_bfs_numbering_is_level_contiguous():
    tree = build_tree(2, 3)
    assert list(tree.levels) == sorted(tree.levels)
    assert list(tree.level_vertices(2)) == [3, 4, 5, 6]
    assert tree.shell_edges(1) == ((0, 1), (0, 2))


def test_prolonged_pairs_are_grandparent_grandchild():
    tree = build_tree(2, 2)
    assert set(tree.prolonged_pairs) == {(0, 3), (0, 4), (0, 5), (0, 6)}


@pytest.mark.parametrize("k,n,region,count", [
    (2, 2, "full", 128),
    (2, 1, "boundary_shell", 4),
    (2, 3, "full", 32768),
])
def test_enumeration_counts(k, n, region, count):
    tree = build_tree(k, n)
    assert sum(1 for _ in enumerate_configs(tree, region)) == count


def test_enumeration_order_and_uniqueness():
    tree = build_tree(2, 1)
    configs = list(enumerate_configs(tree, "full"))
    assert configs[0].spins == (-1, -1, -1)
    assert configs[-1].spins == (1, 1, 1)
    assert len({c.spins for c in configs}) == 8
    # vertex i is bit i
    assert configs[0b101].spins == (1, -1, 1)


def test_enumeration_cap():
    tree = build_tree(2, 4)          # 31 vertices
    with pytest.raises(EnumerationCapError):
        next(enumerate_configs(tree, "full"))
    # shell alone is fine (16 vertices)
    assert sum(1 for _ in enumerate_configs(tree, "boundary_shell")) == 2 ** 16
    with pytest.raises(EnumerationCapError):
        next(enumerate_configs(build_tree(2, 2), "full", cap=5))


def test_enumeration_bad_region():
    with pytest.raises(DomainError):
        next(enumerate_configs(build_tree(2, 1), "everything"))


def test_build_tree_rejects_bad_inputs():
    with pytest.raises(DomainError):
        build_tree(0, 2)
    with pytest.raises(DomainError):
        build_tree(-1, 2)
    with pytest.raises(DomainError):
        build_tree(2, -1)


def test_concat_all_plus():
    tree = build_tree(2, 2)
    sigma = config_from_mask(tree.volume_vertices(1), 0b111)
    omega = config_from_mask(tree.level_vertices(2), 0b1111)
    joined = concat(sigma, omega)
    assert joined.spins == (1,) * 7

    omega_minus = config_from_mask(tree.level_vertices(2), 0)
    mixed = concat(sigma, omega_minus)
    assert mixed.restrict(tree.volume_vertices(1)).spins == sigma.spins
    assert mixed.restrict(tree.level_vertices(2)).spins == omega_minus.spins


@pytest.mark.parametrize("n", [1, 2, 3])
def test_concat_restriction_roundtrip_exhaustive(n):
    tree = build_tree(2, n)
    inner = tree.volume_vertices(n - 1)
    shell = tree.level_vertices(n)
    for mask_in in range(1 << len(inner)):
        sigma = config_from_mask(inner, mask_in)
        for mask_out in range(1 << len(shell)):
            omega = config_from_mask(shell, mask_out)
            joined = concat(sigma, omega)
            assert joined.restrict(inner) == sigma
            assert joined.restrict(shell) == omega


def test_concat_rejects_mismatched_domains():
    tree = build_tree(2, 2)
    sigma = config_from_mask(tree.volume_vertices(1), 0)
    not_shell = config_from_mask(range(5, 9), 0)   # wrong starting offset
    with pytest.raises(DomainError):
        concat(sigma, not_shell)
    with pytest.raises(DomainError):
        concat(not_shell, sigma)


def test_configuration_validation():
    with pytest.raises(DomainError):
        Configuration((0, 1), (1, 2))
    with pytest.raises(DomainError):
        Configuration((0, 0), (1, 1))
    with pytest.raises(DomainError):
        Configuration((0,), (1, -1))
    conf = Configuration((3, 5), (1, -1))
    assert conf.spin(5) == -1
    with pytest.raises(DomainError):
        conf.spin(4)
