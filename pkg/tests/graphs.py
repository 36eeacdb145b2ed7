"""Synthetic labeled graphs in the ball-export schema, used as negative controls.

Each builder returns a dict that import_ball() accepts at face value; the
graphs are deliberately *not* Cayley balls, so specific structure checks must
reject them with witnesses.
"""

from cactuskit import affine, ball, export_obj


def shared_wedge_graph() -> dict:
    """Two 4-cycles through the path e -> 1,2 -> 1,3: a forbidden shared wedge.

    All squares in it are embedded, so only the consecutive-edges condition
    breaks.
    """
    return {
        "spec": {"family": "affine", "n": 3},
        "radius": 2,
        "vertices": [
            {"word": "e", "depth": 0},
            {"word": "1,2", "depth": 1},
            {"word": "2,3", "depth": 1},
            {"word": "3,1", "depth": 1},
            {"word": "1,3", "depth": 2},
        ],
        "edges": [
            {"from": "e", "to": "1,2", "generator": "1,2"},
            {"from": "1,2", "to": "1,3", "generator": "2,3"},
            {"from": "1,3", "to": "2,3", "generator": "1,2"},
            {"from": "2,3", "to": "e", "generator": "2,3"},
            {"from": "1,3", "to": "3,1", "generator": "3,2"},
            {"from": "3,1", "to": "e", "generator": "3,1"},
        ],
    }


def missing_cube_corner_graph() -> dict:
    """A degree-4 radius-3 ball with one cube's eighth corner deleted.

    The cycle of three squares at the identity labeled 1,2 / 3,4 / 1,4 can
    no longer close into a cube skeleton.
    """
    obj = export_obj(ball(affine(4), 3))
    gone = "1,4;1,2;3,4"
    assert any(r["word"] == gone for r in obj["vertices"])
    return {
        "spec": obj["spec"],
        "radius": obj["radius"],
        "vertices": [r for r in obj["vertices"] if r["word"] != gone],
        "edges": [r for r in obj["edges"] if gone not in (r["from"], r["to"])],
    }
