import random

import pytest

from divlat.dualgraph import (
    CurveConfiguration,
    SingularPoint,
    betti1,
    build_graph,
    connected_component_count,
)
from divlat.errors import LatticeError
from divlat.modelio import load_dualgraph


def config(components, points):
    return CurveConfiguration(
        tuple(components),
        tuple(SingularPoint(n, tuple(b)) for n, b in points),
    )


class TestFrozenExamples:
    def test_nodal_cubic(self):
        g = load_dualgraph("corpus:nodal_cubic").graph
        assert g.vertex_count == 2 and g.edge_count == 2
        assert betti1(g) == 1

    def test_triangle(self):
        g = load_dualgraph("corpus:triangle").graph
        assert g.vertex_count == 6 and g.edge_count == 6
        assert connected_component_count(g) == 1
        assert betti1(g) == 1

    def test_chain_is_a_tree(self):
        # A_n style chain: curves meeting the next one transversally
        n = 5
        comps = [f"E{i}" for i in range(n)]
        points = [(f"p{i}", (f"E{i}", f"E{i+1}")) for i in range(n - 1)]
        g = build_graph(config(comps, points))
        assert betti1(g) == 0

    def test_two_cycles_share_a_curve(self):
        comps = ["A", "B", "C"]
        points = [
            ("p", ("A", "B")), ("q", ("A", "B")),
            ("r", ("B", "C")), ("s", ("B", "C")),
        ]
        assert betti1(build_graph(config(comps, points))) == 2

    def test_tacnode_two_branches_same_curve(self):
        # one curve touching itself: both branches on the same component
        g = build_graph(config(["A"], [("p", ("A", "A"))]))
        assert g.edge_count == 2
        assert betti1(g) == 1


class TestStructure:
    def test_disconnected(self):
        g = build_graph(config(["A", "B"], []))
        assert connected_component_count(g) == 2
        assert betti1(g) == 0

    def test_deterministic_edge_order(self):
        c = config(["B", "A"], [("q", ("A", "B")), ("p", ("B", "A", "A"))])
        g1 = build_graph(c)
        g2 = build_graph(c)
        assert g1 == g2
        assert g1.edges[0][0] == "p"

    def test_validation(self):
        with pytest.raises(LatticeError):
            config([], [])
        with pytest.raises(LatticeError):
            config(["A", "A"], [])
        with pytest.raises(LatticeError):
            config(["A"], [("p", ("A", "Z"))])
        with pytest.raises(LatticeError):
            SingularPoint("p", ())


class TestClosedFormula:
    def test_randomized_connected_configurations(self):
        """Cycle rank against the branch-count formula on connected graphs."""
        rng = random.Random(71)
        done = 0
        while done < 120:
            r = rng.randint(1, 6)
            comps = [f"C{i}" for i in range(r)]
            points = []
            # a spanning chain keeps the configuration connected
            for i in range(r - 1):
                points.append((f"chain{i}", (comps[i], comps[i + 1])))
            for k in range(rng.randint(0, 5)):
                size = rng.randint(2, 4)
                points.append(
                    (f"x{k}", tuple(rng.choice(comps) for _ in range(size)))
                )
            if r == 1 and not points:
                points = [("solo", (comps[0], comps[0]))]
            g = build_graph(config(comps, points))
            if connected_component_count(g) != 1:
                continue
            want = sum(len(b) - 1 for _, b in points) - r + 1
            assert betti1(g) == want, (comps, points)
            done += 1
