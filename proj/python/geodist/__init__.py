"""Geodesic distance fields on triangle meshes.

Approximate geodesic distance maps via banded, data-parallel front
propagation over topological level sets, with fast marching and Dijkstra
baselines, farthest point sampling and geodesic Voronoi labeling.
"""

from ._core import (
    Mesh,
    farthest_point_sampling,
    generate_grid,
    generate_icosphere,
    geodesics,
    grid_reference,
    load_mesh,
    mape,
    mesh_from_arrays,
    sphere_reference,
    toplesets,
    voronoi,
    write_distance_ply,
)

__all__ = [
    "Mesh",
    "farthest_point_sampling",
    "generate_grid",
    "generate_icosphere",
    "geodesics",
    "grid_reference",
    "load_mesh",
    "mape",
    "mesh_from_arrays",
    "sphere_reference",
    "toplesets",
    "voronoi",
    "write_distance_ply",
]

__version__ = "0.1.0"
