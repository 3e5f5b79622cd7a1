"""
Faces, nesting and addable pairs
================================

"""

from plansat import AddablePair, PlaneEmbedding, addable_pairs, cycle, delete_edges, insert_edge, octahedron

# a 4-cycle bounds two faces, each a single walk of length four
c4 = cycle(4)
for f in c4.faces:
    print(f.id, [d for w in f.walks for d in w])

# opposite corners share both faces, so each diagonal is listed twice
print(addable_pairs(c4))

# drawing a diagonal splits one face into two triangles
split = insert_edge(c4, AddablePair(0, 2, c4.faces[0].id))
print(sorted(f.length for f in split.faces))

# removing all edges at a vertex leaves it isolated inside the merged face
o = octahedron()
hole = delete_edges(o, [(0, w) for w in o.rotation[0]])
print(hole.face_of_isolated(0))

# isolated vertices with no edges anywhere share one open region
print(PlaneEmbedding.edgeless(3).faces)
