from multiplex_linkpred.sweep.export import export_grid, write_summary
from multiplex_linkpred.sweep.grid import SimplexGrid, barycentric, default_step, grid_size, simplex_grid
from multiplex_linkpred.sweep.search import GridAccumulator, SweepResult, sweep
