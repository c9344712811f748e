import dataclasses

import pytest

from cayleydiff.cayley import (
    CayleyGraph,
    IntegerDiffSpace,
    IntegerMap,
    IntegerPlaneMap,
    cayley_graph,
    diff_space,
    group_multiplication_map,
    integers_diff_space,
    integers_plane_diff_space,
    is_isolated,
    left_mult_automorphism_check,
    plane_member_as_cyclic_map,
)
from cayleydiff.errors import (
    CrossCheckMismatch,
    DimMismatch,
    NotGenerating,
    Redundant,
)
from cayleydiff.groups import (
    GeneratingSet,
    cyclic_group,
    symmetric_group,
    z2_power_group,
)
from cayleydiff.spaces import (
    ReflexiveDigraph,
    box_product,
    is_continuous,
    space_properties,
)


def test_s3_neighborhoods():
    c = cayley_graph(symmetric_group(3), GeneratingSet((1, 3)))
    assert c.digraph.nbhd[0] == frozenset({0, 1, 3})
    # right multiplication: N(g) = {g} | {g*s}
    g = 4  # tr
    s3 = c.group
    assert c.digraph.nbhd[g] == frozenset({g, s3.table[g][1], s3.table[g][3]})


def test_hypercube_neighborhoods():
    c = cayley_graph(z2_power_group(3), GeneratingSet((1, 2, 4)))
    for v in range(8):
        assert c.digraph.nbhd[v] == frozenset({v, v ^ 1, v ^ 2, v ^ 4})


def test_generating_set_validation_happens():
    s3 = symmetric_group(3)
    with pytest.raises(NotGenerating):
        cayley_graph(s3, (1,))
    with pytest.raises(Redundant):
        cayley_graph(cyclic_group(6), (1, 3))
    # a pre-validated GeneratingSet is accepted as-is
    gens = GeneratingSet((1, 3))
    assert cayley_graph(s3, gens).gens is gens


def test_cayley_graph_dim_check():
    c = cayley_graph(cyclic_group(3), GeneratingSet((1,)))
    with pytest.raises(DimMismatch):
        CayleyGraph(c.group, c.gens, ReflexiveDigraph((frozenset({0}),)))


def test_left_multiplication_is_automorphism():
    for c in (
        cayley_graph(cyclic_group(5), GeneratingSet((1,))),
        cayley_graph(symmetric_group(3), GeneratingSet((1, 3))),
        cayley_graph(z2_power_group(2), GeneratingSet((1, 2))),
    ):
        check = left_mult_automorphism_check(c)
        assert check.ok
        assert check.witness is None


def test_left_multiplication_check_detects_corruption():
    c = cayley_graph(symmetric_group(3), GeneratingSet((1, 3)))
    # tamper with one neighborhood; the carrier keeps its size
    broken_nbhd = list(c.digraph.nbhd)
    broken_nbhd[2] = frozenset({2, 3})
    broken = CayleyGraph(
        c.group, c.gens, ReflexiveDigraph(tuple(broken_nbhd))
    )
    check = left_mult_automorphism_check(broken)
    assert not check.ok
    assert check.witness


def test_diff_space_s3_endomorphisms():
    c = cayley_graph(symmetric_group(3), GeneratingSet((1, 3)))
    space = diff_space(c, c, cross_check=True)
    values = [m.values for m in space.maps]
    assert values == [
        (0, 0, 0, 0, 0, 0),
        (0, 0, 0, 3, 3, 3),
        (0, 1, 2, 3, 4, 5),
    ]
    assert space.nbhd == (
        frozenset({0, 1}),
        frozenset({0, 1}),
        frozenset({2}),
    )
    assert not is_isolated(space, 0)
    assert not is_isolated(space, 1)
    assert is_isolated(space, 2)


def test_diff_space_z4_to_z2():
    dom = cayley_graph(cyclic_group(4), GeneratingSet((1,)))
    cod = cayley_graph(cyclic_group(2), GeneratingSet((1,)))
    space = diff_space(dom, cod, cross_check=True)
    assert [m.values for m in space.maps] == [(0, 0, 0, 0), (0, 1, 0, 1)]
    # the two maps converge to each other
    assert space.nbhd == (frozenset({0, 1}), frozenset({0, 1}))


def test_diff_space_cross_check_sample():
    specs = (
        (cyclic_group(3), (1,)),
        (cyclic_group(4), (1,)),
        (z2_power_group(2), (1, 2)),
        (symmetric_group(3), (1, 3)),
    )
    graphs = [cayley_graph(g, GeneratingSet(s)) for g, s in specs]
    for dom in graphs:
        for cod in graphs:
            diff_space(dom, cod, cross_check=True)


def test_order_two_exception():
    two = cayley_graph(cyclic_group(2), GeneratingSet((1,)))
    props = space_properties(two.digraph)
    assert props.is_topological
    assert not props.is_T0
    for n in (3, 4, 5, 6):
        c = cayley_graph(cyclic_group(n), GeneratingSet((1,)))
        p = space_properties(c.digraph)
        assert p.is_T0 and not p.is_topological


def test_multiplication_continuity_on_box_product():
    # abelian: continuous; the smallest nonabelian case is not
    for n in (3, 4, 5, 6):
        c = cayley_graph(cyclic_group(n), GeneratingSet((1,)))
        box = box_product(c.digraph, c.digraph)
        assert is_continuous(box, c.digraph, group_multiplication_map(c))
    s3 = cayley_graph(symmetric_group(3), GeneratingSet((1, 3)))
    box = box_product(s3.digraph, s3.digraph)
    assert not is_continuous(box, s3.digraph, group_multiplication_map(s3))


def test_integer_line_space():
    space = integers_diff_space()
    assert space.members == (IntegerMap.ZERO, IntegerMap.IDENTITY)
    for m in space.members:
        assert space.is_isolated(m)
        assert space.neighbors(m) == (m,)
    assert IntegerMap.ZERO.evaluate(17) == 0
    assert IntegerMap.IDENTITY.evaluate(17) == 17
    compose = IntegerDiffSpace.compose
    assert compose(IntegerMap.IDENTITY, IntegerMap.IDENTITY) is IntegerMap.IDENTITY
    assert compose(IntegerMap.ZERO, IntegerMap.IDENTITY) is IntegerMap.ZERO
    assert compose(IntegerMap.IDENTITY, IntegerMap.ZERO) is IntegerMap.ZERO


def test_integer_plane_space():
    space = integers_plane_diff_space()
    assert len(space.members) == 4
    evals = {m: m.evaluate(2, 5) for m in space.members}
    assert evals[IntegerPlaneMap.ZERO] == 0
    assert evals[IntegerPlaneMap.PROJ1] == 2
    assert evals[IntegerPlaneMap.PROJ2] == 5
    assert evals[IntegerPlaneMap.SUM] == 7
    for m in space.members:
        assert space.is_isolated(m)


def test_plane_members_materialize_continuously():
    c6 = cayley_graph(cyclic_group(6), GeneratingSet((1,)))
    box = box_product(c6.digraph, c6.digraph)
    for member in integers_plane_diff_space().members:
        f = plane_member_as_cyclic_map(member, 6)
        assert is_continuous(box, c6.digraph, f)
    assert plane_member_as_cyclic_map(IntegerPlaneMap.SUM, 6).values == (
        group_multiplication_map(c6).values
    )


def test_diff_space_is_frozen():
    c = cayley_graph(cyclic_group(3), GeneratingSet((1,)))
    space = diff_space(c, c)
    with pytest.raises(dataclasses.FrozenInstanceError):
        space.maps = ()
