"""High-order FEM field transformation and level-set topology."""

try:
    from . import _hotopo as _ext
except ImportError:  # build-tree layout: extension next to the package
    import _hotopo as _ext

HighOrderField = _ext.HighOrderField
HotopoError = _ext.HotopoError
Mesh = _ext.Mesh
PersistencePair = _ext.PersistencePair
PLField = _ext.PLField
ScalarGrid = _ext.ScalarGrid
lsiac_grid = _ext.lsiac_grid
make_demo_mesh = _ext.make_demo_mesh
normalize = _ext.normalize
num_leaf_segments = _ext.num_leaf_segments
persistence_pairs = _ext.persistence_pairs
project = _ext.project
sample_grid = _ext.sample_grid
simplify = _ext.simplify
subdivide = _ext.subdivide

__all__ = [
    "HighOrderField",
    "HotopoError",
    "Mesh",
    "PersistencePair",
    "PLField",
    "ScalarGrid",
    "lsiac_grid",
    "make_demo_mesh",
    "normalize",
    "num_leaf_segments",
    "persistence_pairs",
    "project",
    "sample_grid",
    "simplify",
    "subdivide",
]
