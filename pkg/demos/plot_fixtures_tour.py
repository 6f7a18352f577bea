"""
A tour of the built-in triangulations
=====================================

Four small triangulations ship with the package.  We look at their
skeleta, vertex links and Z/2 homology.
"""

from pachner import fixtures, validate, vertex_links, z2_homology_ranks

for name in ("double_tetrahedron", "projective_space", "figure_eight", "reversed_edge"):
    tri = getattr(fixtures, name)()
    report = validate(tri)
    print(f"{name}: {tri.size} tetrahedra, signature {tri.signature()}")
    print("  vertices, edges, triangles, tetrahedra:", tri.skeleton().counts)

    # The reversed edge is glued back onto itself, so its links are not surfaces.
    if report.invalid_edges:
        print("  invalid edges:", report.invalid_edges)
        continue

    for link in vertex_links(tri):
        kind = "sphere" if link.is_sphere else f"chi={link.euler_characteristic}"
        print(f"  vertex {link.vertex_class}: {link.triangles} link triangles, {kind}")
    print("  closed 3-manifold:", report.is_closed_3_manifold)
    print("  Z/2 Betti numbers:", z2_homology_ranks(tri))
