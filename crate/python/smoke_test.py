"""Smoke test for the pycoxeter extension.

Build and install first:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/pycoxeter-*.whl
"""

import pycoxeter as pc
from pycoxeter import Cyclotomic, NumbersGame, WeightedGraph


def check_arithmetic():
    z = Cyclotomic.zeta(3)
    assert z ** 3 == 1
    assert 1 + z + z * z == 0
    assert z.order() == 3
    assert Cyclotomic(2).order() is None
    assert (z + z.conj()) == -1
    assert Cyclotomic("zeta(8) + zeta(8)^7") ** 2 == 2
    assert Cyclotomic("-1/2").sign() == -1
    assert Cyclotomic("1/3") * 3 == 1
    assert {Cyclotomic("zeta(4)^2"), Cyclotomic(-1)} == {Cyclotomic(-1)}
    try:
        Cyclotomic(1) / 0
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("division by zero did not raise")


def check_graphs():
    six = WeightedGraph.preset("six-vertex-signed")
    assert six.vertex_count == 6
    assert six.validate() == []
    assert [str(p) for p in six.potentials()] == ["1", "-1", "1", "-1", "-1", "-1"]
    assert six.classify()["verdict"] == "faithful_balanced"
    assert six.verify_relations()

    square = WeightedGraph("vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 1 w=-1\n")
    verdict = square.classify()
    assert verdict["verdict"] == "not_faithful"
    assert verdict["quotient_order"] == pc.quotient_order(4, 2) == 192
    assert square.potentials() is None

    s4 = WeightedGraph.preset("s4-chain")
    assert s4.enumerate()["order"] == 24
    omega = WeightedGraph("vertices 3\nedge 1 2 w=zeta(5)\nedge 2 3 w=-2\n").generators()
    assert omega[0][0][1] == Cyclotomic.zeta(5)
    assert omega[1][1][0] == Cyclotomic.zeta(5).inverse()

    bad = WeightedGraph("weights directed\nvertices 2\nedge 1 2 w=2\n")
    assert len(bad.validate()) == 1


def check_games():
    a2 = NumbersGame(WeightedGraph.preset("a2"))
    assert a2.mode == "classical"
    record = a2.play([1, 2, 1])
    assert [p["exact"] for p in record["positions"][-1]] == ["-1", "-1"]
    assert a2.is_reduced([1, 2, 1]) and not a2.is_reduced([1, 1])
    assert a2.descent_set([1]) == [1]
    assert a2.orbit_size() == 6

    signed = NumbersGame(WeightedGraph.preset("six-vertex-signed"))
    assert signed.mode == "generalized"
    p = signed.unit_start()
    assert signed.move_class(p, 2) == "pseudo-positive"
    q = signed.fire(p, 2)
    assert signed.move_class(q, 2) == "pseudo-negative"

    terminated, steps = pc.imo_pentagon([-1, 2, 2, 2, 2])
    assert terminated and steps > 0
    assert "imo-pentagon" in pc.presets()


if __name__ == "__main__":
    check_arithmetic()
    check_graphs()
    check_games()
    print("pycoxeter smoke test passed")
