import numpy as np
import pytest

from masseyvar.groups import FiniteGroup, GroupTableError, cyclic, dihedral, quaternion, zoo


def test_zoo_orders_and_exponents():
    g = zoo()
    assert {k: v.order for k, v in g.items()} == {
        "Z2": 2, "Z4": 4, "Z8": 8, "Z2xZ2": 4, "Z2^3": 8, "Z2xZ4": 8, "D4": 8, "Q8": 8,
    }
    assert max(quaternion().element_order(x) for x in range(8)) == 4
    assert sum(quaternion().element_order(x) == 2 for x in range(8)) == 1
    assert sum(dihedral(4).element_order(x) == 2 for x in range(8)) == 5
    assert not np.array_equal(dihedral(4).table, dihedral(4).table.T)


def test_text_roundtrip(tmp_path):
    G = quaternion()
    path = tmp_path / "q8.txt"
    path.write_text(G.to_text())
    H = FiniteGroup.load(path)
    assert np.array_equal(H.table, G.table) and H.generators == G.generators and H.name == "q8"


@pytest.mark.parametrize(
    "text",
    [
        "2\n1\n0 1\n1 1\n",  # not a Latin square
        "3\n1\n0 1 2\n1 2 0\n2 1 0\n",  # not associative / Latin
        "2\n0\n0 1\n1 0\n",  # generator does not generate
        "2\n1\n0 1\n",  # missing row
        "2\n1\n0 x\n1 0\n",
    ],
)
def test_bad_tables_rejected(text):
    with pytest.raises(GroupTableError):
        FiniteGroup.from_text(text)


def test_non_associative_latin_square_rejected():
    # a Latin square with identity 0 that is not a group table (loop of order 5)
    t = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(GroupTableError, match="associative"):
        FiniteGroup(t, (1, 2))


def test_inverse():
    G = cyclic(8)
    assert all(G.mul(g, G.inverse(g)) == 0 for g in range(8))
