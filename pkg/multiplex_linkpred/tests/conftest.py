import io

import pytest

from multiplex_linkpred.multiplex.loader import load_multiplex
from multiplex_linkpred.tests.factories import multiplex_from_edges, random_multiplex


@pytest.fixture
def path_layer_net():
	"""
	0 - 2 - 1 in one layer: the pair (0, 1) closes through node 2
	"""
	return multiplex_from_edges(3, [[(0, 2), (2, 1)]])


@pytest.fixture
def two_layer_net():
	"""
	Layer L1 = {ab, bc}, layer L2 = {bc, cd} over nodes a, b, c, d
	"""
	text = "L1 a b\nL1 b c\nL2 b c\nL2 c d\n"
	return load_multiplex(io.StringIO(text))


@pytest.fixture
def random_net():
	return random_multiplex(seed=7, n_nodes=30, n_layers=3, density=0.15)
