import pytest

from kempe_recon import reconfiguration
from kempe_recon.exceptions import ContractError, ReplayError
from kempe_recon.graphs import Coloring, KempeExchange, VertexOrdering, degeneracy, is_proper
from kempe_recon.oracle import enumerate_colorings
from kempe_recon.reconfiguration import (
    ExchangePlan,
    compact_plan,
    kempe_adjacent,
    kempe_reconfigure,
    read_plan,
    replay,
    verify_plan,
    write_plan,
)
from kempe_recon.reduction import build_reduced, fixed_set, lift_list_coloring
from kempe_recon.subdegeneracy import subdeg_ub

from conftest import U, V, W, random_graph, random_lists, random_proper_coloring

K2_ORDER = VertexOrdering.of([0, 1])


def test_identity_plan_on_k2(k2):
    c = Coloring((1, 2), 2)
    plan = kempe_reconfigure(k2, K2_ORDER, c, c, 2)
    assert plan.succeeded
    assert replay(k2, c, plan)[0] == c


def test_swap_on_k2(k2):
    source, target = Coloring((1, 2), 2), Coloring((2, 1), 2)
    plan = kempe_reconfigure(k2, K2_ORDER, source, target, 2)
    assert plan.exchanges == (KempeExchange(2, 1, 0),)
    final, trace = replay(k2, source, plan)
    assert final == target
    assert len(trace) == 2

    verdict = verify_plan(k2, source, target, plan)
    assert verdict.ok
    assert verdict.fixed_untouched is None
    assert verdict.colors_used <= 2


def test_verify_plan_flags_touched_fixed_vertices(k2):
    source, target = Coloring((1, 2), 2), Coloring((2, 1), 2)
    plan = kempe_reconfigure(k2, K2_ORDER, source, target, 2)
    verdict = verify_plan(k2, source, target, plan, fixed={0})
    assert verdict.reaches_target
    assert verdict.fixed_untouched is False
    assert not verdict.ok


def test_corrupted_plan_misses_target(k2):
    source, target = Coloring((1, 2), 2), Coloring((2, 1), 2)
    plan = kempe_reconfigure(k2, K2_ORDER, source, target, 2)
    verdict = verify_plan(k2, source, target, plan.exchanges[1:])
    assert not verdict.reaches_target
    assert verdict.all_proper


def test_verify_plan_records_failed_step(k2):
    source = Coloring((1, 2), 3)
    verdict = verify_plan(k2, source, source, [KempeExchange(1, 3, 1)])
    assert verdict.failed_step == 1
    assert not verdict.reaches_target


def test_reconfigure_rejects_bad_input(k2):
    good = Coloring((1, 2), 2)
    with pytest.raises(ContractError):
        kempe_reconfigure(k2, K2_ORDER, Coloring((1, 1), 2), good, 2)
    with pytest.raises(ContractError):
        kempe_reconfigure(k2, VertexOrdering.of([0]), good, good, 2)
    with pytest.raises(ContractError):
        kempe_reconfigure(k2, K2_ORDER, Coloring((1, 3), 3), good, 2)


def test_small_palette_reports_stuck_vertex(path_uvw):
    ordering = VertexOrdering.of([U, W, V])
    source, target = Coloring((1, 2, 1), 2), Coloring((2, 1, 2), 2)
    plan = kempe_reconfigure(path_uvw, ordering, source, target, 2)
    assert not plan.succeeded
    assert plan.failure.vertex == V
    assert plan.failure.stage == 3
    assert len(plan) == 2

    plan = kempe_reconfigure(path_uvw, ordering, source, target, 3)
    assert plan.succeeded
    assert verify_plan(path_uvw, source, target, plan).ok


@pytest.mark.slow
def test_plans_along_degeneracy_order_always_succeed(rng):
    checked = 0
    while checked < 500:
        graph = random_graph(rng, rng.randint(1, 7), rng.random())
        value, ordering = degeneracy(graph)
        k = value + 1
        if k > 5:
            continue
        for _ in range(20):
            source = random_proper_coloring(rng, graph, k)
            target = random_proper_coloring(rng, graph, k)
            plan = kempe_reconfigure(graph, ordering, source, target, k)
            assert plan.succeeded
            verdict = verify_plan(graph, source, target, plan)
            assert verdict.ok
            assert verdict.colors_used <= k
        checked += 1


@pytest.fixture
def corrective_picks(monkeypatch):
    """Records every (vertex, color) chosen to move a vertex out of a merging exchange."""
    picks = []
    free_color = reconfiguration._free_color

    def recording_free_color(graph, colors, v, inside, k):
        color = free_color(graph, colors, v, inside, k)
        picks.append((v, color))
        return color

    monkeypatch.setattr(reconfiguration, "_free_color", recording_free_color)
    return picks


@pytest.mark.slow
def test_plans_on_reduced_graphs_leave_fixed_set_alone(rng, corrective_picks):
    plans = corrections = 0
    for _ in range(200):
        n, p = rng.randint(1, 6), rng.randint(2, 5)
        graph = random_graph(rng, n, 0.4)
        lists = random_lists(rng, n, p)
        list_colorings = enumerate_colorings(graph, p, lists)
        if not list_colorings:
            continue
        reduced = build_reduced(graph, p, lists)
        fixed = fixed_set(reduced)
        result = subdeg_ub(reduced.graph, fixed)
        if p <= result.value:
            continue
        for _ in range(5):
            source = lift_list_coloring(reduced, rng.choice(list_colorings))
            target = lift_list_coloring(reduced, rng.choice(list_colorings))
            corrective_picks.clear()
            plan = kempe_reconfigure(reduced.graph, result.ordering, source, target, p)
            assert plan.succeeded
            verdict = verify_plan(reduced.graph, source, target, plan, fixed=fixed)
            assert verdict.ok
            assert verdict.fixed_untouched
            assert verdict.colors_used <= p
            for v, color in corrective_picks:
                assert v not in fixed
                assert color <= result.value + 1
            corrections += len(corrective_picks)
            plans += 1
    assert plans > 100
    assert corrections > 0


def _toy_list_coloring(reduced, largest):
    colors = [0] * reduced.original_count
    for v in range(reduced.original_count):
        taken = {colors[w] for w in reduced.graph.neighbors(v) if w < v}
        free = sorted(reduced.color_list(v) - taken)
        colors[v] = free[-1] if largest else free[0]
    return lift_list_coloring(reduced, Coloring(tuple(colors), reduced.p))


def test_toy_plan_keeps_timeslot_clique(toy_reduced, toy_fixed):
    source = _toy_list_coloring(toy_reduced, largest=False)
    target = _toy_list_coloring(toy_reduced, largest=True)
    ordering = subdeg_ub(toy_reduced.graph, toy_fixed).ordering
    plan = kempe_reconfigure(toy_reduced.graph, ordering, source, target, 20)
    assert plan.succeeded
    verdict = verify_plan(toy_reduced.graph, source, target, plan, fixed=toy_fixed)
    assert verdict.ok
    assert verdict.fixed_untouched
    assert verdict.colors_used <= 20


def test_replay_examples(k2):
    c = Coloring((1, 2), 2)
    assert replay(k2, c, []) == (c, [c])
    assert replay(k2, c, [KempeExchange(1, 2, 0)])[0].colors == (2, 1)


def test_replay_then_reverse_is_identity(rng):
    graph = random_graph(rng, 7, 0.5)
    k = degeneracy(graph)[0] + 2
    source = random_proper_coloring(rng, graph, k)
    target = random_proper_coloring(rng, graph, k)
    plan = kempe_reconfigure(graph, degeneracy(graph)[1], source, target, k)
    final, trace = replay(graph, source, plan)
    assert final == target
    assert all(is_proper(graph, c) for c in trace)
    assert replay(graph, final, list(reversed(plan.exchanges)))[0] == source


def test_replay_errors(k2):
    with pytest.raises(ReplayError, match="step 1"):
        replay(k2, Coloring((1, 2), 4), [KempeExchange(3, 4, 0)])
    with pytest.raises(ReplayError, match="step 2"):
        replay(k2, Coloring((1, 2), 2), [KempeExchange(1, 2, 0), KempeExchange(1, 2, 5)])
    with pytest.raises(ContractError):
        replay(k2, Coloring((1, 1), 2), [])


def test_compact_plan_erases_loops(k2):
    source = Coloring((1, 2), 2)
    swap = KempeExchange(1, 2, 0)
    assert len(compact_plan(k2, ExchangePlan((swap, swap), source, source, None, 2))) == 0
    compacted = compact_plan(k2, ExchangePlan((swap, swap, swap), source, Coloring((2, 1), 2), None, 2))
    assert compacted.exchanges == (swap,)
    assert verify_plan(k2, compacted.source, compacted.target, compacted).ok


def test_compact_plan_keeps_target(rng):
    graph = random_graph(rng, 8, 0.4)
    value, ordering = degeneracy(graph)
    source = random_proper_coloring(rng, graph, value + 1)
    target = random_proper_coloring(rng, graph, value + 1)
    plan = kempe_reconfigure(graph, ordering, source, target, value + 1)
    compacted = compact_plan(graph, plan)
    assert len(compacted) <= len(plan)
    assert verify_plan(graph, source, target, compacted).ok


def test_kempe_adjacent(k2, path_uvw):
    assert kempe_adjacent(k2, Coloring((1, 2), 2), Coloring((2, 1), 2)) == KempeExchange(1, 2, 0)
    assert kempe_adjacent(k2, Coloring((1, 2), 3), Coloring((1, 3), 3)) == KempeExchange(2, 3, 1)
    assert kempe_adjacent(path_uvw, Coloring((1, 2, 1), 3), Coloring((2, 3, 2), 3)) is None
    assert kempe_adjacent(k2, Coloring((1, 2), 2), Coloring((1, 2), 2)) is None


def test_plan_text(k2):
    plan = kempe_reconfigure(k2, K2_ORDER, Coloring((1, 2), 2), Coloring((2, 1), 2), 2)
    text = write_plan(plan)
    assert text == "k 2\nx 2 1 1\n"
    assert read_plan("# swap\n" + text) == (2, [KempeExchange(2, 1, 0)])


@pytest.mark.parametrize(
    "text, message",
    [
        ("x 1 2 1\n", "no 'k"),
        ("k 2\nx 1 1 1\n", "distinct"),
        ("k 2\nx 1 2 a\n", "line 2"),
        ("k 2\ny 1\n", "line 2"),
    ],
)
def test_read_plan_errors(text, message):
    with pytest.raises(ContractError, match=message):
        read_plan(text)
