"""The shipped test corpus: small simple lattice polytopes, smooth and
singular, in dimensions one to three."""

from __future__ import annotations

from .document import PolytopeDocument

_ENTRIES = [
    ("segment1", [[0], [1]], None, ["delzant", "1d"]),
    ("segment2", [[0], [2]], None, ["delzant", "1d"]),
    ("std_triangle", [[0, 0], [1, 0], [0, 1]], None, ["delzant"]),
    ("mult2_triangle", [[0, 0], [1, 0], [0, 2]], None, ["singular"]),
    ("mult3_triangle", [[0, 0], [1, 0], [0, 3]], None, ["singular"]),
    ("unit_square", [[0, 0], [1, 0], [0, 1], [1, 1]], [[0, 0], [1, 0]], ["delzant", "summand"]),
    ("square2", [[0, 0], [2, 0], [0, 2], [2, 2]], None, ["delzant"]),
    ("hirzebruch_trapezoid", [[0, 0], [2, 0], [1, 1], [0, 1]], None, ["delzant"]),
    ("kite", [[0, 0], [2, 0], [1, 2], [0, 2]], None, ["singular"]),
    ("cube", [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)], None, ["delzant", "3d"]),
    ("std_tetra", [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], None, ["delzant", "3d"]),
    ("reeve2", [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]], None, ["singular", "3d"]),
]


def corpus_names():
    return [e[0] for e in _ENTRIES]


def corpus_document(name: str) -> PolytopeDocument:
    for entry, verts, summand, tags in _ENTRIES:
        if entry == name:
            return PolytopeDocument(entry, len(verts[0]), [list(v) for v in verts], None,
                                    [list(q) for q in summand] if summand else None, list(tags))
    raise KeyError(f"no corpus entry {name!r}; known: {', '.join(corpus_names())}")


def corpus_documents(name: str = "default"):
    """``"default"`` selects the whole corpus, anything else one entry."""
    if name in ("default", "all"):
        return [corpus_document(n) for n in corpus_names()]
    return [corpus_document(name)]


def corpus_polytopes():
    return [d.polytope() for d in corpus_documents()]
