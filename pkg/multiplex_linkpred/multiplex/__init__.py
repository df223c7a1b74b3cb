from multiplex_linkpred.multiplex.loader import (
	EdgeListFormat,
	dump_multiplex,
	load_cns,
	load_layer_names,
	load_multiplex,
)
from multiplex_linkpred.multiplex.network import Layer, MultiplexNetwork, aggregate, build_layer
from multiplex_linkpred.multiplex.triads import (
	TriadIndex,
	TriadMatrix,
	build_triad_index,
	load_or_build_index,
	triad_matrix,
	triad_members,
)
