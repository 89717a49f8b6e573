"""Smoke test for the sqfree extension module.

Build with `cargo build --release -p sqfree-python --features extension-module`
and copy target/release/libsqfree_py.so next to this file as sqfree.so.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import sqfree


def main():
    two_points = sqfree.SimplicialComplex(2, [[1], [2]])
    assert two_points.facets() == [[1], [2]]
    assert two_points.reduced_homology() == {0: 1}
    assert two_points.alexander_dual().facets() == [[]]
    assert two_points.link([1]).facets() == [[]]

    ring = sqfree.Module.stanley_reisner_ring(two_points)
    assert ring.dim([1]) == 1 and ring.dim([1, 2]) == 0
    assert ring.krull_dim() == 1
    assert ring.proj_dim() == 1
    assert ring.is_cohen_macaulay()
    assert ring.alexander().alexander() == ring

    betti = ring.betti()
    assert (0, [], 1) in betti and (1, [1, 2], 1) in betti

    assert sqfree.hochster(two_points, 1, []) == 1
    assert dict((tuple(f), e) for f, e in sqfree.char_cycle(two_points, 1)) == {(): 1, (1,): 1, (2,): 1}

    again = sqfree.Module.from_json(ring.to_json())
    assert again == ring
    gf2 = sqfree.Module.stanley_reisner_ring(two_points, "fp:2")
    assert gf2.field == "fp:2"
    assert gf2.betti() == betti

    free = sqfree.Module.free(3, [1, 2])
    assert sorted(f for _, f, _ in free.ext_table()) == [[1, 2, 3], [1, 3], [2, 3], [3]]

    ok, report = sqfree.check(seed=0, max_n=3, cases=4)
    assert ok, report
    json.loads(report)

    try:
        sqfree.SimplicialComplex(2, [[3]])
    except ValueError:
        pass
    else:
        raise AssertionError("vertex outside range accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
